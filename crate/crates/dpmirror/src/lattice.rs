//! The first homology of the Lefschetz fiber as an integer lattice with an
//! antisymmetric intersection form.
//!
//! For the `X_{k+1}` preset the basis is `l, l_2, ..., l_{k-1}, a, b`
//! (rank `k + 1`) and the form is
//!
//! ```text
//! <l_i, l_j> = -1 (i < j)   <l, l_i> = -1   <a, b> = -1   <b, l> = +1
//! ```
//!
//! with every other pairing of distinct basis vectors zero.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("classes live over different bases")]
    BasisMismatch,
    #[error("k must be odd and at least 3, got {0}")]
    BadK(usize),
    #[error("index {index} out of range {lo}..={hi}")]
    IndexRange { index: usize, lo: usize, hi: usize },
    #[error("unknown class name `{0}`")]
    UnknownName(String),
    #[error("cannot parse class expression `{expr}`: {reason}")]
    Parse { expr: String, reason: String },
    #[error("form is not antisymmetric with zero diagonal")]
    NotAntisymmetric,
}

/// Ordered basis symbols together with the intersection form on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberBasis {
    pub labels: Vec<String>,
    pub form: Vec<Vec<i64>>,
}

impl FiberBasis {
    pub fn new(labels: Vec<String>, form: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if form.len() != n || form.iter().any(|row| row.len() != n) {
            return Err(LatticeError::NotAntisymmetric);
        }
        for i in 0..n {
            for j in 0..n {
                if form[i][j] != -form[j][i] {
                    return Err(LatticeError::NotAntisymmetric);
                }
            }
        }
        Ok(Self { labels, form })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The basis vector with the given label.
    pub fn generator(self: &Arc<Self>, label: &str) -> Result<HomologyClass, LatticeError> {
        let idx = self.index_of(label).ok_or_else(|| LatticeError::UnknownName(label.to_string()))?;
        let mut c = HomologyClass::zero(self);
        c.coeffs[idx] = BigInt::one();
        Ok(c)
    }
}

/// Basis and form for the `X_{k+1}` fiber.
pub fn xk_fiber_basis(k: usize) -> Result<Arc<FiberBasis>, LatticeError> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(LatticeError::BadK(k));
    }
    let mut labels = vec!["l".to_string()];
    labels.extend((2..k).map(|i| format!("l_{i}")));
    labels.push("a".into());
    labels.push("b".into());
    let n = labels.len();
    let mut form = vec![vec![0i64; n]; n];
    let mut set = |i: usize, j: usize, v: i64| {
        form[i][j] = v;
        form[j][i] = -v;
    };
    // l_i sits at index i - 1
    for i in 2..k {
        for j in (i + 1)..k {
            set(i - 1, j - 1, -1);
        }
        set(0, i - 1, -1);
    }
    let (a, b) = (n - 2, n - 1);
    set(a, b, -1);
    set(b, 0, 1);
    Ok(Arc::new(FiberBasis::new(labels, form).expect("preset form is antisymmetric")))
}

/// An integer vector over a fiber basis.
#[derive(Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub basis: Arc<FiberBasis>,
    pub coeffs: Vec<BigInt>,
}

impl HomologyClass {
    pub fn zero(basis: &Arc<FiberBasis>) -> Self {
        Self { basis: basis.clone(), coeffs: vec![BigInt::zero(); basis.rank()] }
    }

    pub fn from_ints(basis: &Arc<FiberBasis>, coeffs: &[i64]) -> Result<Self, LatticeError> {
        if coeffs.len() != basis.rank() {
            return Err(LatticeError::BasisMismatch);
        }
        Ok(Self { basis: basis.clone(), coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() })
    }

    /// Parses expressions such as `b-4a-2l` or `l_3 - 2 l_4 + l`.
    pub fn parse(basis: &Arc<FiberBasis>, expr: &str) -> Result<Self, LatticeError> {
        let err = |reason: &str| LatticeError::Parse { expr: expr.to_string(), reason: reason.to_string() };
        let chars: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(err("empty expression"));
        }
        let mut out = Self::zero(basis);
        let mut pos = 0;
        if chars == ['0'] {
            return Ok(out);
        }
        while pos < chars.len() {
            let mut sign = 1i64;
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(err("expected `+` or `-` between terms"));
            }
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let coeff: BigInt = if start == pos {
                BigInt::one()
            } else {
                chars[start..pos].iter().collect::<String>().parse().map_err(|_| err("bad coefficient"))?
            };
            let lstart = pos;
            if pos >= chars.len() || !chars[pos].is_ascii_alphabetic() {
                return Err(err("expected a basis label"));
            }
            pos += 1;
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || matches!(chars[pos], '_' | '{' | '}')) {
                pos += 1;
            }
            let raw: String = chars[lstart..pos].iter().filter(|c| !matches!(c, '{' | '}')).collect();
            let idx = basis
                .index_of(&raw)
                .or_else(|| {
                    // accept `l3` for `l_3`
                    let (head, tail) = raw.split_at(1);
                    if !tail.is_empty() && tail.chars().all(|c| c.is_ascii_digit()) {
                        basis.index_of(&format!("{head}_{tail}"))
                    } else {
                        None
                    }
                })
                .ok_or_else(|| LatticeError::UnknownName(raw.clone()))?;
            out.coeffs[idx] += coeff * sign;
        }
        Ok(out)
    }

    fn check(&self, other: &Self) -> Result<(), LatticeError> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis {
            Ok(())
        } else {
            Err(LatticeError::BasisMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { basis: self.basis.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LatticeError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { basis: self.basis.clone(), coeffs })
    }

    pub fn scale(&self, m: &BigInt) -> Self {
        Self { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|c| c * m).collect() }
    }

    /// `self + m * other`.
    pub fn add_scaled(&self, m: &BigInt, other: &Self) -> Result<Self, LatticeError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + m * b).collect();
        Ok(Self { basis: self.basis.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The representative of `±self` whose first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self.sign_normalized().coeffs == other.sign_normalized().coeffs
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.coeffs.iter().zip(&self.basis.labels) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}{label}")?;
            } else {
                write!(f, "{sign}{mag}{label}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for HomologyClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            coeffs: &'a [BigInt],
            display: String,
        }
        Repr { coeffs: &self.coeffs, display: self.to_string() }.serialize(s)
    }
}

/// The intersection pairing `<x, y>`.
pub fn pair(x: &HomologyClass, y: &HomologyClass) -> Result<BigInt, LatticeError> {
    x.check(y)?;
    let form = &x.basis.form;
    let mut acc = BigInt::zero();
    for (i, xi) in x.coeffs.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = BigInt::zero();
        for (j, yj) in y.coeffs.iter().enumerate() {
            if form[i][j] != 0 && !yj.is_zero() {
                row += yj * form[i][j];
            }
        }
        acc += xi * row;
    }
    Ok(acc)
}

/// Picard–Lefschetz at homology level: `x + m <x, w> w`.
pub fn dehn_twist(x: &HomologyClass, w: &HomologyClass, m: i64) -> Result<HomologyClass, LatticeError> {
    let p = pair(x, w)?;
    x.add_scaled(&(p * m), w)
}

/// Predicted Floer dimension `|<x, y>|`.
///
/// This is the true dimension only when the two curves are in minimal
/// position, which is the situation for every pair in the preset tables.
pub fn cf_dimension(x: &HomologyClass, y: &HomologyClass) -> Result<u64, LatticeError> {
    Ok(pair(x, y)?.abs().to_u64().expect("pairing fits in u64"))
}

fn check_k(k: usize) -> Result<(), LatticeError> {
    if k < 3 || k.is_multiple_of(2) {
        Err(LatticeError::BadK(k))
    } else {
        Ok(())
    }
}

/// `[L_j] = (-1)^j ((k-1-j) l + l_j)` for `2 <= j <= k-1`.
pub fn class_l(basis: &Arc<FiberBasis>, k: usize, j: usize) -> Result<HomologyClass, LatticeError> {
    check_k(k)?;
    if !(2..=k - 1).contains(&j) {
        return Err(LatticeError::IndexRange { index: j, lo: 2, hi: k - 1 });
    }
    let l = basis.generator("l")?;
    let lj = basis.generator(&format!("l_{j}"))?;
    let c = l.scale(&BigInt::from((k - 1 - j) as i64)).add(&lj)?;
    Ok(if j.is_multiple_of(2) { c } else { c.neg() })
}

/// Classes of the left dual collection:
/// `L~_{k-1} = l_{k-1}`, `L~_{k-2} = l_{k-2} - 2 l_{k-1} + l`,
/// `L~_i = l_i - 2 l_{i+1} + l_{i+2}`.
pub fn class_l_dual(basis: &Arc<FiberBasis>, k: usize, i: usize) -> Result<HomologyClass, LatticeError> {
    check_k(k)?;
    if !(2..=k - 1).contains(&i) {
        return Err(LatticeError::IndexRange { index: i, lo: 2, hi: k - 1 });
    }
    let g = |s: String| basis.generator(&s);
    let two = BigInt::from(2);
    if i == k - 1 {
        g(format!("l_{i}"))
    } else if i == k - 2 {
        g(format!("l_{i}"))?.add_scaled(&-two, &g(format!("l_{}", i + 1))?)?.add(&g("l".into())?)
    } else {
        g(format!("l_{i}"))?.add_scaled(&-two, &g(format!("l_{}", i + 1))?)?.add(&g(format!("l_{}", i + 2))?)
    }
}

/// Named classes.
///
/// Accepted names: `P-2`, `P-1`, `P0`, `P1`, `Pt` (the mutated `P~`), `B`
/// (any `B_i`), `R_i`, `L_j`, `Lt_i` (left dual), or any linear expression
/// accepted by [`HomologyClass::parse`].
pub fn class_preset(basis: &Arc<FiberBasis>, k: usize, name: &str) -> Result<HomologyClass, LatticeError> {
    check_k(k)?;
    let expr = |e: &str| HomologyClass::parse(basis, e);
    let index = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix).and_then(|s| s.parse().ok()) };
    match name {
        "P-2" => expr("b-4a-2l"),
        "P-1" => expr("b-l-2a"),
        "P0" => expr("b"),
        "P1" => expr("b+l+2a"),
        "Pt" | "P~" => expr("2b+2a+l"),
        "B" => expr("l"),
        _ => {
            if let Some(i) = index("R_") {
                if !(2..=k - 1).contains(&i) {
                    return Err(LatticeError::IndexRange { index: i, lo: 2, hi: k - 1 });
                }
                let l = basis.generator("l")?;
                basis.generator(&format!("l_{i}"))?.add_scaled(&BigInt::from(-(i as i64 - 1)), &l)
            } else if let Some(j) = index("Lt_") {
                class_l_dual(basis, k, j)
            } else if let Some(j) = index("L_") {
                class_l(basis, k, j)
            } else if let Some(i) = index("B_") {
                if !(1..=k + 1).contains(&i) {
                    return Err(LatticeError::IndexRange { index: i, lo: 1, hi: k + 1 });
                }
                expr("l")
            } else {
                expr(name).map_err(|e| match e {
                    LatticeError::Parse { .. } | LatticeError::UnknownName(_) => LatticeError::UnknownName(name.into()),
                    other => other,
                })
            }
        }
    }
}

/// Phase-lift data at an intersection point of two graded curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradedCrossing {
    pub alpha_lower: f64,
    pub alpha_upper: f64,
    pub shift_lower: i64,
    pub shift_upper: i64,
}

/// How far the later curve's lift drops below its handle value at a
/// transverse crossing.
pub const CROSSING_OFFSET: f64 = 0.25;

impl GradedCrossing {
    /// A crossing inside a handle where the earlier curve's lift equals
    /// `lower` and the later curve arrives with lift `upper`.
    pub fn at_handle(lower: f64, upper: f64) -> Self {
        Self { alpha_lower: lower, alpha_upper: upper - CROSSING_OFFSET, shift_lower: 0, shift_upper: 0 }
    }

    /// `p_{1,i}` / `p_{2,i}`: `L~_i` has lift 1 on handle `i+1`, `L~_{i+1}` has lift 2 there.
    pub fn p_crossing() -> Self {
        Self::at_handle(1.0, 2.0)
    }

    /// `g_i`: `L~_i` has lift 0 on handle `i+2`, `L~_{i+2}` has lift 2 there.
    pub fn g_crossing() -> Self {
        Self::at_handle(0.0, 2.0)
    }

    /// Applies object shifts `[m_lower]`, `[m_upper]`; a shift `[m]` moves the lift by `-m`.
    pub fn with_object_shifts(mut self, m_lower: i64, m_upper: i64) -> Self {
        self.shift_lower -= m_lower;
        self.shift_upper -= m_upper;
        self
    }
}

/// `floor((alpha_upper + shift_upper) - (alpha_lower + shift_lower)) + 1`.
pub fn seidel_degree(c: &GradedCrossing) -> i64 {
    let diff = (c.alpha_upper + c.shift_upper as f64) - (c.alpha_lower + c.shift_lower as f64);
    diff.floor() as i64 + 1
}

/// One entry of the Floer-complex table with every index instance it covers.
#[derive(Debug, Clone, Serialize)]
pub struct CfEntry {
    pub label: String,
    pub instances: Vec<(String, String)>,
    pub expected: u64,
}

/// The fifteen entries of the definition table for the `X_{k+1}` preset.
pub fn cf_table(k: usize) -> Vec<CfEntry> {
    let entry = |label: &str, instances: Vec<(String, String)>, expected: u64| CfEntry {
        label: label.into(),
        instances,
        expected,
    };
    let one = |l: &str, r: &str| vec![(l.to_string(), r.to_string())];
    let bs = |l: &str| (1..=k + 1).map(|i| (l.to_string(), format!("B_{i}"))).collect::<Vec<_>>();
    let top = format!("Lt_{}", k - 1);
    let sub = format!("Lt_{}", k - 2);
    let mut p_b = bs("P0");
    p_b.extend(bs("P1"));
    vec![
        entry("(Lt_i, Lt_i+1)", (2..k - 1).map(|i| (format!("Lt_{i}"), format!("Lt_{}", i + 1))).collect(), 2),
        entry(
            "(Lt_i, Lt_i+2)",
            (2..k.saturating_sub(2)).map(|i| (format!("Lt_{i}"), format!("Lt_{}", i + 2))).collect(),
            1,
        ),
        entry("(P0, Pt)", one("P0", "Pt"), 3),
        entry("(Pt, P1)", one("Pt", "P1"), 3),
        entry("(P0, P1)", one("P0", "P1"), 3),
        entry("(Pj, B_i), j = 0, 1", p_b, 1),
        entry("(Pt, B_i)", bs("Pt"), 2),
        entry("(Lt_k-1, P0)", one(&top, "P0"), 0),
        entry("(Lt_k-2, P0)", one(&sub, "P0"), 1),
        entry("(Lt_k-1, Pt)", one(&top, "Pt"), 1),
        entry("(Lt_k-2, Pt)", one(&sub, "Pt"), 3),
        entry("(Lt_k-1, P1)", one(&top, "P1"), 1),
        entry("(Lt_k-2, P1)", one(&sub, "P1"), 2),
        entry("(Lt_k-1, B_i)", bs(&top), 1),
        entry("(Lt_k-2, B_i)", bs(&sub), 1),
    ]
}

/// `(label, left, right, got, expected)` for one failing table instance.
pub type CfMismatch = (String, String, String, u64, u64);

/// Evaluates every instance of every table entry and returns the mismatches.
pub fn cf_table_mismatches(k: usize) -> Result<Vec<CfMismatch>, LatticeError> {
    let basis = xk_fiber_basis(k)?;
    let mut bad = Vec::new();
    for entry in cf_table(k) {
        for (l, r) in &entry.instances {
            let got = cf_dimension(&class_preset(&basis, k, l)?, &class_preset(&basis, k, r)?)?;
            if got != entry.expected {
                bad.push((entry.label.clone(), l.clone(), r.clone(), got, entry.expected));
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_shape() {
        let b = xk_fiber_basis(5).unwrap();
        assert_eq!(b.rank(), 6);
        assert_eq!(b.labels, ["l", "l_2", "l_3", "l_4", "a", "b"]);
        assert!(xk_fiber_basis(4).is_err());
    }

    #[test]
    fn pairing_examples() {
        let b = xk_fiber_basis(5).unwrap();
        let p = |x: &str, y: &str| {
            pair(&HomologyClass::parse(&b, x).unwrap(), &HomologyClass::parse(&b, y).unwrap()).unwrap()
        };
        assert_eq!(p("l_3", "l_3"), 0.into());
        assert_eq!(p("l_4", "l"), 1.into());
        assert_eq!(p("b", "b+2a+l"), 3.into());
        assert_eq!(p("b-2a", "l_2"), 0.into());
    }

    #[test]
    fn parse_and_display() {
        let b = xk_fiber_basis(7).unwrap();
        let c = HomologyClass::parse(&b, "b - 4a - 2l").unwrap();
        assert_eq!(c.to_string(), "-2l-4a+b");
        assert_eq!(HomologyClass::parse(&b, "l3-2l_{4}+l").unwrap().to_string(), "l+l_3-2l_4");
        assert!(HomologyClass::parse(&b, "c").is_err());
        assert!(HomologyClass::parse(&b, "2").is_err());
    }

    #[test]
    fn class_examples() {
        let b = xk_fiber_basis(7).unwrap();
        assert_eq!(class_l(&b, 7, 6).unwrap(), b.generator("l_6").unwrap());
        assert_eq!(class_l(&b, 7, 2).unwrap().to_string(), "4l+l_2");
        assert_eq!(class_preset(&b, 7, "Pt").unwrap().to_string(), "l+2a+2b");
        assert_eq!(class_preset(&b, 7, "R_4").unwrap().to_string(), "-3l+l_4");
        assert!(class_preset(&b, 7, "Q").is_err());
        assert!(class_l(&b, 7, 7).is_err());
    }

    #[test]
    fn twist_examples() {
        let b = xk_fiber_basis(5).unwrap();
        let bb = b.generator("b").unwrap();
        let l = b.generator("l").unwrap();
        assert_eq!(dehn_twist(&bb, &l, 1).unwrap().to_string(), "l+b");
        assert_eq!(dehn_twist(&bb, &l, 0).unwrap(), bb);
    }

    #[test]
    fn cf_table_k5() {
        let t = cf_table(5);
        assert_eq!(t.len(), 15);
        assert!(t.iter().all(|e| !e.instances.is_empty()));
        assert!(cf_table_mismatches(5).unwrap().is_empty());
    }

    #[test]
    fn seidel_examples() {
        let flat = GradedCrossing { alpha_lower: 0.3, alpha_upper: 0.3, shift_lower: 0, shift_upper: 0 };
        assert_eq!(seidel_degree(&flat), 1);
        assert_eq!(seidel_degree(&GradedCrossing::p_crossing()), 1);
        assert_eq!(seidel_degree(&GradedCrossing::g_crossing()), 2);
        // objects L~_j shifted by [j - k]
        let k = 7i64;
        let i = 3i64;
        let p = GradedCrossing::p_crossing().with_object_shifts(i - k, i + 1 - k);
        let g = GradedCrossing::g_crossing().with_object_shifts(i - k, i + 2 - k);
        assert_eq!((seidel_degree(&p), seidel_degree(&g)), (0, 0));
    }
}
