//! Exact real-root counting with Sturm sequences over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::{roots, Poly, C};
use super::LgError;

/// Polynomial with rational coefficients in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { coeffs };
        while p.coeffs.len() > 1 && p.coeffs.last().is_some_and(|c| c.is_zero()) {
            p.coeffs.pop();
        }
        if p.coeffs.is_empty() {
            p.coeffs.push(BigRational::zero());
        }
        p
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    /// Exact conversion of `f64` coefficients.
    pub fn from_f64(c: &[f64]) -> Option<Self> {
        Some(Self::new(c.iter().map(|&x| BigRational::from_float(x)).collect::<Option<Vec<_>>>()?))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("nonempty")
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Remainder of division by `d` (nonzero).
    pub fn rem(&self, d: &Self) -> Self {
        let mut r = self.coeffs.clone();
        let dl = d.leading().clone();
        let dd = d.degree();
        while r.len() > dd && !(r.len() == 1 && r[0].is_zero()) {
            let shift = r.len() - 1 - dd;
            let f = r.last().expect("nonempty").clone() / &dl;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            r.pop();
            while r.len() > 1 && r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        Self::new(r)
    }

    pub fn monic(&self) -> Self {
        let l = self.leading().clone();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        let s = if self.leading().is_positive() { 1 } else { -1 };
        if positive || self.degree().is_multiple_of(2) {
            s
        } else {
            -s
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(RatPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let s: Vec<i32> = signs.filter(|&x| x != 0).collect();
    s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots.
pub fn count_distinct_real(p: &RatPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let chain = sturm_chain(p);
    let minus = sign_changes(chain.iter().map(|q| q.sign_at_infinity(false)));
    let plus = sign_changes(chain.iter().map(|q| q.sign_at_infinity(true)));
    minus - plus
}

/// Number of real roots counted with multiplicity: a root of multiplicity
/// `m` in `p` has multiplicity `m - 1` in `gcd(p, p')`.
pub fn count_real_with_multiplicity(p: &RatPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let g = p.gcd(&p.derivative());
    count_distinct_real(p) + count_real_with_multiplicity(&g)
}

/// `h = y^k - (y - t_0)^2`.
pub fn h_poly(k: usize, t0: &BigRational) -> RatPoly {
    let mut c = vec![BigRational::zero(); k + 1];
    c[k] += BigRational::one();
    c[2] -= BigRational::one();
    c[1] += t0 * BigRational::from_integer(BigInt::from(2));
    c[0] -= t0 * t0;
    RatPoly::new(c)
}

/// Boundary of `(1/t_0)^{k-2} > ((k/(k-2))^{k-2} - 1) k²/4`.
pub fn t_double(k: usize) -> f64 {
    let kf = k as f64;
    let m = (k - 2) as f64;
    let bound = ((kf / m).powf(m) - 1.0) * kf * kf / 4.0;
    bound.powf(-1.0 / m)
}

/// The value of `t_0` at which `h` acquires a double root: `h = h' = 0`
/// forces `y^{k-2} = 4/k²` and `t_0 = ((k-2)/k) y`.
pub fn t_double_root_locus(k: usize) -> f64 {
    let kf = k as f64;
    let y = (4.0 / (kf * kf)).powf(1.0 / (kf - 2.0));
    (kf - 2.0) / kf * y
}

#[derive(Debug, Clone, Serialize)]
pub struct SturmCount {
    pub k: usize,
    pub t0: f64,
    pub distinct: usize,
    pub with_multiplicity: usize,
    pub t_double: f64,
    pub t_double_root_locus: f64,
    /// Real roots found by the numeric solver (imaginary part below `1e-9`).
    pub numeric_real: usize,
}

/// Sturm count for `h` at `t_0` (converted exactly from `f64`).
pub fn sturm_real_roots(k: usize, t0: f64) -> Result<SturmCount, LgError> {
    if !(t0 > 0.0 && t0.is_finite()) || k < 3 {
        return Err(LgError::Invalid(format!("need k ≥ 3 and t0 > 0, got k={k}, t0={t0}")));
    }
    let t = BigRational::from_float(t0).expect("finite");
    let h = h_poly(k, &t);
    let distinct = count_distinct_real(&h);
    let with_multiplicity = count_real_with_multiplicity(&h);
    let numeric = roots(&Poly::new(h.to_f64().into_iter().map(|x| C::new(x, 0.0)).collect()))?;
    let numeric_real = numeric.iter().filter(|z| z.im.abs() < 1e-9).count();
    Ok(SturmCount {
        k,
        t0,
        distinct,
        with_multiplicity,
        t_double: t_double(k),
        t_double_root_locus: t_double_root_locus(k),
        numeric_real,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_real_roots(5, 0.2).unwrap().distinct, 3);
        assert_eq!(sturm_real_roots(5, 0.5).unwrap().distinct, 1);
        assert!((t_double(5) - 0.353).abs() < 1e-3);
    }

    #[test]
    fn multiplicity_at_rational_double_root() {
        // k = 3: the double root locus is t0 = 4/27 exactly
        let t = BigRational::new(4.into(), 27.into());
        let h = h_poly(3, &t);
        assert_eq!(count_distinct_real(&h), 2);
        assert_eq!(count_real_with_multiplicity(&h), 3);
    }

    #[test]
    fn squarefree() {
        assert!(!RatPoly::from_ints(&[1, 2, 1]).is_squarefree());
        assert!(RatPoly::from_ints(&[-1, 0, 1]).is_squarefree());
    }
}
