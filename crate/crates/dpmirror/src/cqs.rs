//! Arithmetic of a cyclic quotient singularity 1/n(1,q).
//!
//! Every quantity here is bounded by `n`, so fixed-width integers are exact;
//! the Hirzebruch–Jung identity itself is checked over big rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CqsError {
    #[error("need 1 <= q < n, got n={n}, q={q}")]
    Range { n: u64, q: u64 },
    #[error("gcd({n}, {q}) = {g}, expected 1")]
    NotCoprime { n: u64, q: u64, g: u64 },
    #[error("residue {d} is special for 1/{n}(1,{q})")]
    SpecialResidue { n: u64, q: u64, d: u64 },
    #[error("residue {d} out of range for n={n}")]
    ResidueRange { n: u64, d: u64 },
    #[error("order map not order-preserving for 1/{n}(1,{q}) at {a} -> {image}")]
    OrderViolation { n: u64, q: u64, a: u64, image: u64 },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn validate(n: u64, q: u64) -> Result<(), CqsError> {
    if q == 0 || q >= n {
        return Err(CqsError::Range { n, q });
    }
    let g = gcd(n, q);
    if g != 1 {
        return Err(CqsError::NotCoprime { n, q, g });
    }
    Ok(())
}

/// Inverse of `q` modulo `n` (both coprime, `n >= 2`).
pub fn mod_inverse(q: u64, n: u64) -> u64 {
    let (mut r0, mut r1) = (n as i128, (q % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(n as i128) as u64
}

/// Hirzebruch–Jung expansion `n/q = b_1 - 1/(b_2 - ...)` with every `b_t >= 2`.
pub fn hj_expand(n: u64, q: u64) -> Result<Vec<u64>, CqsError> {
    validate(n, q)?;
    let (mut a, mut c) = (n, q);
    let mut b = Vec::new();
    while c != 0 {
        let bt = a.div_ceil(c);
        b.push(bt);
        (a, c) = (c, bt * c - a);
    }
    Ok(b)
}

/// Evaluates the continued fraction `b_1 - 1/(b_2 - ... - 1/b_r)` exactly.
pub fn hj_value(b: &[u64]) -> BigRational {
    let mut acc: Option<BigRational> = None;
    for &bt in b.iter().rev() {
        let v = BigRational::from_integer(BigInt::from(bt));
        acc = Some(match acc {
            None => v,
            Some(x) => v - x.recip(),
        });
    }
    acc.unwrap_or_else(BigRational::zero)
}

/// Special I-series without its leading `n`: `[i_1 = q, i_2, ..., i_{r+1} = 0]`.
pub fn i_series(n: u64, q: u64) -> Result<Vec<u64>, CqsError> {
    let b = hj_expand(n, q)?;
    let mut out = vec![q];
    let (mut prev, mut cur) = (n, q);
    for &bt in &b {
        let next = bt * cur - prev;
        out.push(next);
        (prev, cur) = (cur, next);
    }
    Ok(out)
}

/// Dual series `[j_1, ..., j_{r+1}]` with `j_0 = 0`, `j_1 = 1` and
/// `j_t = b_{t-1} j_{t-1} - j_{t-2}`.
pub fn j_series(n: u64, q: u64) -> Result<Vec<u64>, CqsError> {
    let b = hj_expand(n, q)?;
    let mut out = vec![1u64];
    let (mut prev, mut cur) = (0u64, 1u64);
    for &bt in &b {
        let next = bt * cur - prev;
        out.push(next);
        (prev, cur) = (cur, next);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CQSDescriptor {
    pub n: u64,
    pub q: u64,
    pub b: Vec<u64>,
    pub i_series: Vec<u64>,
    pub j_series: Vec<u64>,
}

impl CQSDescriptor {
    pub fn new(n: u64, q: u64) -> Result<Self, CqsError> {
        Ok(Self { n, q, b: hj_expand(n, q)?, i_series: i_series(n, q)?, j_series: j_series(n, q)? })
    }

    /// Checks the HJ identity and the two recursions from scratch.
    pub fn check_invariants(&self) -> bool {
        let target = BigRational::new(BigInt::from(self.n), BigInt::from(self.q));
        if hj_value(&self.b) != target || self.b.iter().any(|&x| x < 2) {
            return false;
        }
        let r = self.b.len();
        if self.i_series.len() != r + 1 || self.j_series.len() != r + 1 {
            return false;
        }
        let mut i_full = vec![self.n as i128];
        i_full.extend(self.i_series.iter().map(|&x| x as i128));
        let ok_i = (1..=r).all(|t| i_full[t + 1] == self.b[t - 1] as i128 * i_full[t] - i_full[t - 1])
            && i_full.windows(2).all(|w| w[0] > w[1])
            && i_full[r + 1] == 0;
        let mut j_full = vec![0i128];
        j_full.extend(self.j_series.iter().map(|&x| x as i128));
        let ok_j =
            j_full[1] == 1 && (2..=r + 1).all(|t| j_full[t] == self.b[t - 2] as i128 * j_full[t - 1] - j_full[t - 2]);
        ok_i && ok_j
    }

    /// Residues in `[0, n)` that do not occur in the I-series.
    pub fn non_special(&self) -> Vec<u64> {
        (0..self.n).filter(|d| !self.i_series.contains(d)).collect()
    }

    /// The index `t` with `i_{t-1} > d > i_t` (with `i_0 = n`).
    pub fn bracket(&self, d: u64) -> Option<usize> {
        let mut prev = self.n;
        for (idx, &cur) in self.i_series.iter().enumerate() {
            if prev > d && d > cur {
                return Some(idx + 1);
            }
            prev = cur;
        }
        None
    }
}

/// The residue-level gluing `a -> -a q^{-1} mod n`.
pub fn gluing_image(n: u64, q: u64, a: u64) -> u64 {
    let qi = mod_inverse(q, n) as u128;
    let prod = (a as u128 * qi) % n as u128;
    ((n as u128 - prod) % n as u128) as u64
}

/// The order map on `I'`, as pairs `(i_j, image)` in I-series order.
///
/// Errors if the images fail to be strictly decreasing along the series.
pub fn order_map(n: u64, q: u64) -> Result<Vec<(u64, u64)>, CqsError> {
    let series = i_series(n, q)?;
    let pairs: Vec<(u64, u64)> = series.iter().map(|&a| (a, gluing_image(n, q, a))).collect();
    for w in pairs.windows(2) {
        if w[0].1 <= w[1].1 {
            return Err(CqsError::OrderViolation { n, q, a: w[1].0, image: w[1].1 });
        }
    }
    Ok(pairs)
}

/// The sequence `P_0 = 1, P_1 = b_1, P_i = b_i P_{i-1} - P_{i-2}`, one entry per
/// element of `I'`; the element `i_{j+1}` maps to `n - P_j`.
pub fn p_sequence(n: u64, q: u64) -> Result<Vec<u64>, CqsError> {
    let b = hj_expand(n, q)?;
    let mut p: Vec<i128> = vec![1];
    for (idx, &bt) in b.iter().enumerate() {
        let prev2 = if idx == 0 { 0 } else { p[idx - 1] };
        p.push(bt as i128 * p[idx] - prev2);
    }
    Ok(p.into_iter().map(|x| x as u64).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandleSchedule {
    pub n: u64,
    pub q: u64,
    /// `(a, image)` meaning handle `a/n` on the positive boundary is glued to
    /// `image/n` on the negative boundary.
    pub gluings: Vec<(u64, u64)>,
    /// Residues of the special handles, in I-series order.
    pub special_subset: Vec<u64>,
    /// Residues of the remaining handles.
    pub non_special: Vec<u64>,
}

pub fn handle_schedule(n: u64, q: u64) -> Result<HandleSchedule, CqsError> {
    let desc = CQSDescriptor::new(n, q)?;
    Ok(HandleSchedule {
        n,
        q,
        gluings: (0..n).map(|a| (a, gluing_image(n, q, a))).collect(),
        special_subset: desc.i_series.clone(),
        non_special: desc.non_special(),
    })
}

/// Which end of a core an arc attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum End {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Core {
    pub residue: u64,
    /// 0 for the original core, `m > 0` for the m-th parallel translate above it.
    pub translate: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Join {
    /// Index into `cores`.
    pub from: usize,
    pub from_end: End,
    pub to: usize,
    pub to_end: End,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSchedule {
    pub d: u64,
    pub t: usize,
    /// In the order `1+d+q, 1+d+q-j_t q, d+q, d+q-j_t q`.
    pub cores: Vec<Core>,
    pub joins: Vec<Join>,
}

impl CoreSchedule {
    pub fn residues(&self) -> Vec<u64> {
        self.cores.iter().map(|c| c.residue).collect()
    }

    pub fn has_duplicates(&self) -> bool {
        self.cores.iter().any(|c| c.translate > 0)
    }
}

/// Vertical order of the four cores from the top, as indices into `cores`.
pub const VERTICAL_ORDER: [usize; 4] = [0, 2, 1, 3];

pub fn core_schedule(n: u64, q: u64, d: u64) -> Result<CoreSchedule, CqsError> {
    let desc = CQSDescriptor::new(n, q)?;
    if d >= n {
        return Err(CqsError::ResidueRange { n, d });
    }
    let t = desc.bracket(d).ok_or(CqsError::SpecialResidue { n, q, d })?;
    let jt = desc.j_series[t - 1] as i128;
    let (ni, di, qi) = (n as i128, d as i128, q as i128);
    let red = |x: i128| x.rem_euclid(ni) as u64;
    let residues = [red(1 + di + qi), red(1 + di + qi - jt * qi), red(di + qi), red(di + qi - jt * qi)];
    let mut cores: Vec<Core> = residues.iter().map(|&r| Core { residue: r, translate: 0 }).collect();
    for (pos, &idx) in VERTICAL_ORDER.iter().enumerate() {
        let below = VERTICAL_ORDER[pos + 1..].iter().filter(|&&other| residues[other] == residues[idx]).count();
        cores[idx].translate = below as u32;
    }
    let joins = vec![
        Join { from: 0, from_end: End::Minus, to: 2, to_end: End::Minus, direction: Direction::Down },
        Join { from: 0, from_end: End::Plus, to: 1, to_end: End::Plus, direction: Direction::Up },
        Join { from: 1, from_end: End::Minus, to: 3, to_end: End::Minus, direction: Direction::Down },
        Join { from: 2, from_end: End::Plus, to: 3, to_end: End::Plus, direction: Direction::Up },
    ];
    Ok(CoreSchedule { d, t, cores, joins })
}

/// All coprime pairs `(n, q)` with `2 <= n <= n_max`.
pub fn coprime_pairs(n_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=n_max).flat_map(|n| (1..n).filter(move |&q| gcd(n, q) == 1).map(move |q| (n, q)))
}

impl std::fmt::Display for CQSDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}(1,{}) b={:?} I'={:?} j={:?}", self.n, self.q, self.b, self.i_series, self.j_series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hj_examples() {
        assert_eq!(hj_expand(5, 3).unwrap(), vec![2, 3]);
        assert_eq!(hj_expand(7, 1).unwrap(), vec![7]);
        assert_eq!(hj_expand(7, 4).unwrap(), vec![2, 4]);
        assert!(matches!(hj_expand(6, 4), Err(CqsError::NotCoprime { .. })));
        assert!(matches!(hj_expand(5, 5), Err(CqsError::Range { .. })));
    }

    #[test]
    fn series_examples() {
        assert_eq!(i_series(5, 3).unwrap(), vec![3, 1, 0]);
        assert_eq!(i_series(9, 1).unwrap(), vec![1, 0]);
        assert_eq!(i_series(7, 4).unwrap(), vec![4, 1, 0]);
        assert_eq!(CQSDescriptor::new(5, 3).unwrap().non_special(), vec![2, 4]);
        assert_eq!(j_series(5, 3).unwrap(), vec![1, 2, 5]);
    }

    #[test]
    fn order_map_examples() {
        assert_eq!(order_map(5, 3).unwrap(), vec![(3, 4), (1, 3), (0, 0)]);
        assert_eq!(order_map(9, 1).unwrap(), vec![(1, 8), (0, 0)]);
    }

    #[test]
    fn handle_examples() {
        let h = handle_schedule(5, 3).unwrap();
        assert_eq!(h.gluings, vec![(0, 0), (1, 3), (2, 1), (3, 4), (4, 2)]);
        assert_eq!(handle_schedule(2, 1).unwrap().gluings, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn core_examples() {
        let c = core_schedule(5, 1, 2).unwrap();
        assert_eq!(c.residues(), vec![4, 3, 3, 2]);
        assert_eq!(c.t, 1);
        // c_{d+q} sits above c_{1+d+q-j_t q}, so it is the translate
        assert_eq!(c.cores[2].translate, 1);
        assert_eq!(c.cores[1].translate, 0);

        let c = core_schedule(5, 3, 2).unwrap();
        assert_eq!((c.t, c.residues()), (2, vec![1, 0, 0, 4]));
        assert!(c.has_duplicates());

        let c = core_schedule(5, 3, 4).unwrap();
        assert_eq!((c.t, c.residues()), (1, vec![3, 0, 2, 4]));
        assert!(!c.has_duplicates());

        assert!(matches!(core_schedule(5, 3, 1), Err(CqsError::SpecialResidue { .. })));
    }
}
