//! Directed quivers with relations, their hom-dimension matrices, and the
//! monomial bookkeeping that matches the A-side constants with the B-side
//! relations.
//!
//! Paths are stored in traversal order (first arrow first) and displayed in
//! composition order, so the path `[x_0, y_1]` prints as `y_1∘x_0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mutation::GramMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuiverError {
    #[error("k must be odd and at least {min}, got {k}")]
    BadK { k: usize, min: usize },
    #[error("invalid points: {0}")]
    Points(String),
    #[error("arrow {0} does not go forward in vertex order")]
    NotDirected(String),
    #[error("malformed relation {0}")]
    BadRelation(String),
    #[error("arrow {0} has nonzero degree")]
    NonzeroDegree(String),
    #[error("symbol {0} has no value in the specialization")]
    Unspecialized(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("rescaling system has no solution: {0}")]
    Unsolvable(String),
    #[error("relations fail to normalize: {0:?}")]
    Mismatch(Vec<String>),
}

/// A signed Laurent monomial in named constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialCoeff {
    pub sign: i8,
    pub exponents: BTreeMap<String, i64>,
}

impl Default for MonomialCoeff {
    fn default() -> Self {
        Self::one()
    }
}

impl MonomialCoeff {
    pub fn one() -> Self {
        Self { sign: 1, exponents: BTreeMap::new() }
    }

    pub fn minus_one() -> Self {
        Self { sign: -1, exponents: BTreeMap::new() }
    }

    pub fn symbol(name: &str) -> Self {
        Self::one().with(name, 1)
    }

    /// Multiplies in `name^e`.
    pub fn with(mut self, name: &str, e: i64) -> Self {
        let entry = self.exponents.entry(name.to_string()).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.exponents.remove(name);
        }
        self
    }

    pub fn ratio(num: &str, den: &str) -> Self {
        Self::symbol(num).with(den, -1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sign *= other.sign;
        for (k, e) in &other.exponents {
            out = out.with(k, *e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self { sign: self.sign, exponents: self.exponents.iter().map(|(k, e)| (k.clone(), -e)).collect() }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        Self {
            sign: if e.rem_euclid(2) == 0 { 1 } else { self.sign },
            exponents: self.exponents.iter().map(|(k, x)| (k.clone(), x * e)).filter(|(_, x)| *x != 0).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self { sign: -self.sign, exponents: self.exponents.clone() }
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.exponents.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn evaluate(&self, values: &HashMap<String, BigRational>) -> Result<BigRational, QuiverError> {
        let mut acc = BigRational::from_integer(BigInt::from(self.sign));
        for (k, e) in &self.exponents {
            let v = values.get(k).ok_or_else(|| QuiverError::Unspecialized(k.clone()))?;
            let p = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
            acc = if *e >= 0 { acc * p } else { acc / p };
        }
        Ok(acc)
    }
}

impl fmt::Display for MonomialCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign < 0 { "-" } else { "" };
        if self.exponents.is_empty() {
            return write!(f, "{sign}1");
        }
        let part = |pos: bool| {
            self.exponents
                .iter()
                .filter(|(_, e)| (**e > 0) == pos)
                .map(|(k, e)| if e.abs() == 1 { k.clone() } else { format!("{k}^{}", e.abs()) })
                .collect::<Vec<_>>()
                .join("·")
        };
        let (num, den) = (part(true), part(false));
        let num = if num.is_empty() { "1".to_string() } else { num };
        if den.is_empty() {
            write!(f, "{sign}{num}")
        } else {
            write!(f, "{sign}{num}/({den})")
        }
    }
}

/// A coefficient: rational scalar times a monomial in constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeff {
    pub scalar: BigRational,
    pub mono: MonomialCoeff,
}

impl Coeff {
    pub fn one() -> Self {
        Self::from_mono(MonomialCoeff::one())
    }

    pub fn minus_one() -> Self {
        Self::from_mono(MonomialCoeff::minus_one())
    }

    pub fn from_mono(mono: MonomialCoeff) -> Self {
        Self { scalar: BigRational::one(), mono }
    }

    pub fn from_scalar(scalar: BigRational) -> Self {
        Self { scalar, mono: MonomialCoeff::one() }
    }

    pub fn mul_mono(&self, m: &MonomialCoeff) -> Self {
        Self { scalar: self.scalar.clone(), mono: self.mono.mul(m) }
    }

    pub fn neg(&self) -> Self {
        Self { scalar: -self.scalar.clone(), mono: self.mono.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// The coefficient as a single signed monomial, if its scalar is `±1`.
    pub fn as_monomial(&self) -> Option<MonomialCoeff> {
        if self.scalar.is_one() {
            Some(self.mono.clone())
        } else if (-self.scalar.clone()).is_one() {
            Some(self.mono.neg())
        } else {
            None
        }
    }

    pub fn evaluate(&self, values: &HashMap<String, BigRational>) -> Result<BigRational, QuiverError> {
        Ok(&self.scalar * self.mono.evaluate(values)?)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_constant() {
            let s = BigRational::from_integer(BigInt::from(self.mono.sign)) * &self.scalar;
            write!(f, "{s}")
        } else if self.scalar.is_one() {
            write!(f, "{}", self.mono)
        } else {
            write!(f, "({})·{}", self.scalar, self.mono)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
    /// Degree after the shifts that concentrate all homs in degree 0.
    pub degree: i32,
    /// Degree before those shifts.
    pub pre_shift_degree: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Coeff,
    /// Arrow indices in traversal order.
    pub path: Vec<usize>,
}

/// A relation `Σ terms = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, relations: Vec<Relation>) -> Result<Self, QuiverError> {
        let q = Quiver { vertices, arrows, relations };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<(), QuiverError> {
        for a in &self.arrows {
            if a.source >= a.target || a.target >= self.vertices.len() {
                return Err(QuiverError::NotDirected(a.label.clone()));
            }
        }
        for r in &self.relations {
            let bad = || QuiverError::BadRelation(r.name.clone());
            let mut ends = None;
            for t in &r.terms {
                let e = self.path_ends(&t.path).ok_or_else(bad)?;
                if ends.is_some_and(|x| x != e) {
                    return Err(bad());
                }
                ends = Some(e);
            }
            if ends.is_none() {
                return Err(bad());
            }
        }
        Ok(())
    }

    /// Source and target of a composable nonempty path.
    pub fn path_ends(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut at = first.target;
        for &i in &path[1..] {
            let a = self.arrows.get(i)?;
            if a.source != at {
                return None;
            }
            at = a.target;
        }
        Some((first.source, at))
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| QuiverError::UnknownVertex(name.into()))
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn path_label(&self, path: &[usize]) -> String {
        path.iter().rev().map(|&i| self.arrows[i].label.as_str()).collect::<Vec<_>>().join("∘")
    }

    pub fn relation_string(&self, r: &Relation) -> String {
        let parts: Vec<String> =
            r.terms.iter().map(|t| format!("({})·{}", t.coeff, self.path_label(&t.path))).collect();
        format!("{}: {} = 0", r.name, parts.join(" + "))
    }

    /// All constant symbols appearing in relation coefficients.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .relations
            .iter()
            .flat_map(|r| r.terms.iter().flat_map(|t| t.coeff.mono.exponents.keys().cloned()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Substitutes values for every constant symbol.
    pub fn specialize(&self, values: &HashMap<String, BigRational>) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for r in &mut q.relations {
            for t in &mut r.terms {
                t.coeff = Coeff::from_scalar(t.coeff.evaluate(values)?);
            }
        }
        Ok(q)
    }

    /// Specializes every symbol to a random nonzero rational drawn from `seed`.
    pub fn specialize_random(&self, seed: u64) -> Result<Quiver, QuiverError> {
        self.specialize(&random_values(&self.symbols(), seed))
    }

    fn is_numeric(&self) -> bool {
        self.relations.iter().all(|r| r.terms.iter().all(|t| t.coeff.mono.is_constant()))
    }

    fn numeric(&self) -> Result<Quiver, QuiverError> {
        if self.is_numeric() {
            Ok(self.clone())
        } else {
            self.specialize_random(DEFAULT_SEED)
        }
    }
}

const DEFAULT_SEED: u64 = 0x5eed;

/// Random nonzero rationals `±p/q` with `1 ≤ p, q ≤ 97`.
pub fn random_values(symbols: &[String], seed: u64) -> HashMap<String, BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    symbols
        .iter()
        .map(|s| {
            let p: i64 = rng.random_range(1..=97);
            let q: i64 = rng.random_range(1..=97);
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            (s.clone(), BigRational::new(BigInt::from(sign * p), BigInt::from(q)))
        })
        .collect()
}

struct Builder {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

impl Builder {
    fn new(vertices: Vec<String>) -> Self {
        Self { vertices, arrows: Vec::new(), relations: Vec::new() }
    }

    fn v(&self, name: &str) -> usize {
        self.vertices.iter().position(|v| v == name).expect("known vertex")
    }

    fn arrow(&mut self, src: &str, tgt: &str, label: &str, pre_shift_degree: i32) {
        let (source, target) = (self.v(src), self.v(tgt));
        self.arrows.push(Arrow { source, target, label: label.into(), degree: 0, pre_shift_degree });
    }

    fn a(&self, label: &str) -> usize {
        self.arrows.iter().position(|a| a.label == label).expect("known arrow")
    }

    /// Adds `Σ c · path`, paths given in composition order (last arrow first).
    fn rel(&mut self, name: String, terms: Vec<(Coeff, &[&str])>) {
        let terms = terms
            .into_iter()
            .map(|(coeff, labels)| Term { coeff, path: labels.iter().rev().map(|l| self.a(l)).collect() })
            .collect();
        self.relations.push(Relation { name, terms });
    }

    fn zero(&mut self, name: String, labels: &[&str]) {
        self.rel(name, vec![(Coeff::one(), labels)]);
    }

    fn build(self) -> Result<Quiver, QuiverError> {
        Quiver::new(self.vertices, self.arrows, self.relations)
    }
}

fn e(i: usize) -> String {
    format!("e_{i}")
}

fn p(j: usize, i: usize) -> String {
    format!("p_{{{j},{i}}}")
}

/// Adds the McKay vertices, the double arrows and the chain relations
/// `p_{1,i+1}∘p_{1,i} - c_i p_{2,i+1}∘p_{2,i} = 0` plus the mixed zero relations.
fn add_mckay(b: &mut Builder, k: usize, chain: impl Fn(usize) -> Coeff) {
    for i in 2..k - 1 {
        b.arrow(&e(i), &e(i + 1), &p(1, i), 1);
        b.arrow(&e(i), &e(i + 1), &p(2, i), 1);
    }
    for i in 2..k.saturating_sub(2) {
        let (p1i, p1n, p2i, p2n) = (p(1, i), p(1, i + 1), p(2, i), p(2, i + 1));
        b.rel(format!("chain_{i}"), vec![(Coeff::one(), &[&p1n, &p1i]), (chain(i).neg(), &[&p2n, &p2i])]);
        b.zero(format!("mixed12_{i}"), &[&p1n, &p2i]);
        b.zero(format!("mixed21_{i}"), &[&p2n, &p1i]);
    }
}

/// The McKay quiver of a `1/k(1,1)` point: `e_2, ..., e_{k-1}` with double arrows.
pub fn mckay_quiver(k: usize) -> Result<Quiver, QuiverError> {
    if k < 3 {
        return Err(QuiverError::BadK { k, min: 3 });
    }
    let mut b = Builder::new((2..k).map(e).collect());
    add_mckay(&mut b, k, |_| Coeff::minus_one());
    b.build()
}

const PO: &str = "PhiO";
const PT: &str = "PhiT(-H)";
const PH: &str = "PhiO(H)";

fn bi(i: usize) -> String {
    format!("PhiO_B{i}")
}

fn r(i: usize) -> String {
    format!("r_{{H,{i}}}")
}

/// Coefficients of the relations outside the McKay chain, so that the
/// B-side and A-side quivers share one construction.
struct Constants {
    chain: Box<dyn Fn(usize) -> Coeff>,
    /// `y_1∘x_0 = c · x_1∘y_0`, `z_1∘x_0 = c · x_1∘z_0`, `z_1∘y_0 = c · y_1∘z_0`.
    xy: Coeff,
    xz: Coeff,
    yz: Coeff,
    /// `r_i∘(a_i x_1 + b_i y_1) = 0`.
    kernel: Vec<(Coeff, Coeff)>,
    /// `x_0∘δ' = c · δ̃∘p_{2,k-2}` and `y_0∘δ' = c · δ̃∘p_{1,k-2}`.
    glue_x: Coeff,
    glue_y: Coeff,
}

fn check_k(k: usize) -> Result<(), QuiverError> {
    if k < 5 || k.is_multiple_of(2) {
        Err(QuiverError::BadK { k, min: 5 })
    } else {
        Ok(())
    }
}

fn build_xk(k: usize, c: Constants) -> Result<Quiver, QuiverError> {
    let mut vertices: Vec<String> = (2..k).map(e).collect();
    vertices.extend([PO, PT, PH].map(String::from));
    vertices.extend((1..=k + 1).map(bi));
    let mut b = Builder::new(vertices);
    add_mckay(&mut b, k, &c.chain);
    b.arrow(&e(k - 2), PO, "delta'", 0);
    b.arrow(&e(k - 1), PT, "delta~", 0);
    for g in ["x", "y", "z"] {
        b.arrow(PO, PT, &format!("{g}_0"), 0);
    }
    for g in ["x", "y", "z"] {
        b.arrow(PT, PH, &format!("{g}_1"), 0);
    }
    for i in 1..=k + 1 {
        b.arrow(PH, &bi(i), &r(i), 0);
    }
    if k >= 5 {
        let (p1, p2) = (p(1, k - 3), p(2, k - 3));
        b.zero("delta'_p1".into(), &["delta'", &p1]);
        b.zero("delta'_p2".into(), &["delta'", &p2]);
    }
    b.rel("xy".into(), vec![(Coeff::one(), &["y_1", "x_0"]), (c.xy.neg(), &["x_1", "y_0"])]);
    b.rel("xz".into(), vec![(Coeff::one(), &["z_1", "x_0"]), (c.xz.neg(), &["x_1", "z_0"])]);
    b.rel("yz".into(), vec![(Coeff::one(), &["z_1", "y_0"]), (c.yz.neg(), &["y_1", "z_0"])]);
    for g in ["x", "y", "z"] {
        let (g1, g0) = (format!("{g}_1"), format!("{g}_0"));
        b.zero(format!("{g}{g}"), &[&g1, &g0]);
    }
    for (i, (a, bb)) in c.kernel.into_iter().enumerate() {
        let ri = r(i + 1);
        b.rel(format!("kernel_{}", i + 1), vec![(a, &[&ri, "x_1"]), (bb, &[&ri, "y_1"])]);
    }
    b.zero("x_1_delta~".into(), &["x_1", "delta~"]);
    b.zero("y_1_delta~".into(), &["y_1", "delta~"]);
    let (p1, p2) = (p(1, k - 2), p(2, k - 2));
    b.rel("glue_x".into(), vec![(Coeff::one(), &["x_0", "delta'"]), (c.glue_x.neg(), &["delta~", &p2])]);
    b.rel("glue_y".into(), vec![(Coeff::one(), &["y_0", "delta'"]), (c.glue_y.neg(), &["delta~", &p1])]);
    b.build()
}

/// The quiver of `<e_2, ..., e_{k-1}, ΦO, ΦT(-H), ΦO(H), ΦO_{B_1}, ..., ΦO_{B_{k+1}}>`
/// for blown-up points `[a_i : b_i : 0]`.
pub fn xk_quiver(k: usize, points: &[(BigRational, BigRational)]) -> Result<Quiver, QuiverError> {
    check_k(k)?;
    validate_points(k, points)?;
    let kernel = points.iter().map(|(a, b)| (Coeff::from_scalar(a.clone()), Coeff::from_scalar(b.clone()))).collect();
    build_xk(k, b_side_constants(kernel))
}

fn b_side_constants(kernel: Vec<(Coeff, Coeff)>) -> Constants {
    Constants {
        chain: Box::new(|_| Coeff::minus_one()),
        xy: Coeff::minus_one(),
        xz: Coeff::minus_one(),
        yz: Coeff::minus_one(),
        kernel,
        glue_x: Coeff::one(),
        glue_y: Coeff::one(),
    }
}

/// Checks there are `k + 1` points, none zero, pairwise non-proportional.
pub fn validate_points(k: usize, points: &[(BigRational, BigRational)]) -> Result<(), QuiverError> {
    if points.len() != k + 1 {
        return Err(QuiverError::Points(format!("expected {} points, got {}", k + 1, points.len())));
    }
    for (i, (a, b)) in points.iter().enumerate() {
        if a.is_zero() && b.is_zero() {
            return Err(QuiverError::Points(format!("point {} is zero", i + 1)));
        }
        for (j, (c, d)) in points.iter().enumerate().skip(i + 1) {
            if a * d == b * c {
                return Err(QuiverError::Points(format!("points {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Integer points `[1 : -q_i]` from a list of `q_{1,i}` values.
pub fn points_from_q(q: &[BigRational]) -> Vec<(BigRational, BigRational)> {
    q.iter().map(|x| (BigRational::one(), -x.clone())).collect()
}

/// The B-side quiver with points `[1 : -q_{1,i} : 0]` kept symbolic.
pub fn xk_quiver_symbolic(k: usize) -> Result<Quiver, QuiverError> {
    check_k(k)?;
    let kernel = (1..=k + 1).map(|i| (Coeff::one(), Coeff::from_mono(q_sym(1, i).neg()))).collect();
    build_xk(k, b_side_constants(kernel))
}

fn q_sym(i: usize, j: usize) -> MonomialCoeff {
    if i == j {
        MonomialCoeff::one()
    } else {
        MonomialCoeff::symbol(&format!("q_{i}_{j}"))
    }
}

/// Which form of the ratios for `z_1∘x_0` and `z_1∘y_0` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FukayaForm {
    /// Ratios obtained from the triangle products `μ²(z_1,x_0) = α_{x,z} y` etc.
    Derived,
    /// Ratios in the inverted orientation: `α_{z,x}/α_{x,z}`
    /// and `α_{z,y}/α_{y,z}`.
    AsListed,
}

fn alpha(a: &str, b: &str) -> String {
    format!("alpha_{a}{b}")
}

/// The A-side quiver with constants as formal monomials; constant identities
/// are imposed through [`reduce_constants`].
pub fn fukaya_quiver(k: usize, form: FukayaForm) -> Result<Quiver, QuiverError> {
    check_k(k)?;
    let al = |a: &str, b: &str| MonomialCoeff::symbol(&alpha(a, b));
    let (xz, yz) = match form {
        FukayaForm::Derived => (al("x", "z").div(&al("z", "x")), al("y", "z").div(&al("z", "y"))),
        FukayaForm::AsListed => (al("z", "x").div(&al("x", "z")), al("z", "y").div(&al("y", "z"))),
    };
    let kernel = (1..=k + 1)
        .map(|i| {
            let ey = MonomialCoeff::symbol(&format!("eta_y_{i}"));
            let ex = MonomialCoeff::symbol(&format!("eta_x_{i}"));
            (Coeff::from_mono(reduce_constants(&ey)), Coeff::from_mono(reduce_constants(&ex).neg()))
        })
        .collect();
    let c = Constants {
        chain: Box::new(|i| Coeff::from_mono(MonomialCoeff::ratio(&format!("theta1_{i}"), &format!("theta2_{i}")))),
        xy: Coeff::from_mono(al("x", "y").div(&al("y", "x"))),
        xz: Coeff::from_mono(reduce_constants(&xz)),
        yz: Coeff::from_mono(yz),
        kernel,
        glue_x: Coeff::from_mono(MonomialCoeff::ratio("alpha_d_x0", "alpha_p2_dt")),
        glue_y: Coeff::from_mono(MonomialCoeff::ratio("alpha_d_y0", "alpha_p1_dt")),
    };
    build_xk(k, c)
}

/// Rewrites a monomial in terms of independent constants:
///
/// - `α_{x,z} = -α_{x,y}α_{y,z}α_{z,x}/(α_{y,x}α_{z,y})` (the triangle constraint at `q_C = 1`)
/// - `η_{y,i} = η_{y,1}η_{x,i}/(η_{x,1} q_{1,i})` (the cross-ratio constraint)
/// - `q_{i,j} = q_{1,j}/q_{1,i}`, `q_{1,1} = 1`, `q_C = 1`
pub fn reduce_constants(m: &MonomialCoeff) -> MonomialCoeff {
    let mut out = MonomialCoeff { sign: m.sign, exponents: BTreeMap::new() };
    for (name, &e) in &m.exponents {
        let sub = rewrite_symbol(name);
        out = out.mul(&sub.pow(e));
    }
    out
}

fn rewrite_symbol(name: &str) -> MonomialCoeff {
    if name == "q_C" {
        return MonomialCoeff::one();
    }
    if name == alpha("x", "z") {
        return MonomialCoeff::symbol(&alpha("x", "y"))
            .with(&alpha("y", "z"), 1)
            .with(&alpha("z", "x"), 1)
            .with(&alpha("y", "x"), -1)
            .with(&alpha("z", "y"), -1)
            .neg();
    }
    if let Some(i) = name.strip_prefix("eta_y_").and_then(|s| s.parse::<usize>().ok()) {
        if i != 1 {
            return MonomialCoeff::symbol("eta_y_1")
                .with(&format!("eta_x_{i}"), 1)
                .with("eta_x_1", -1)
                .mul(&q_sym(1, i).inv());
        }
    }
    if let Some(rest) = name.strip_prefix("q_") {
        let parts: Vec<usize> = rest.split('_').filter_map(|s| s.parse().ok()).collect();
        if let [i, j] = parts[..] {
            if i == j {
                return MonomialCoeff::one();
            }
            if i != 1 {
                return q_sym(1, j).div(&q_sym(1, i));
            }
        }
    }
    MonomialCoeff::symbol(name)
}

/// Per-generator rescaling `g_new = factor · g_old`.
pub type Rescaling = BTreeMap<String, MonomialCoeff>;

/// Convention for interpreting a rescaling formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RescaleConvention {
    /// `g^{resc} := c·g` is the new generator.
    NewIsFactorTimesOld,
    /// `g = c·g^{resc}`.
    OldIsFactorTimesNew,
}

/// Rewrites a quiver in rescaled generators. With `g_new = c g_old`, the
/// coefficient of a path is divided by the product of its factors.
pub fn apply_rescaling(q: &Quiver, resc: &Rescaling, conv: RescaleConvention) -> Quiver {
    let mut out = q.clone();
    for r in &mut out.relations {
        for t in &mut r.terms {
            let mut f = MonomialCoeff::one();
            for &a in &t.path {
                if let Some(c) = resc.get(&q.arrows[a].label) {
                    f = f.mul(c);
                }
            }
            let f = match conv {
                RescaleConvention::NewIsFactorTimesOld => f.inv(),
                RescaleConvention::OldIsFactorTimesNew => f,
            };
            t.coeff = Coeff { scalar: t.coeff.scalar.clone(), mono: reduce_constants(&t.coeff.mono.mul(&f)) };
        }
    }
    out
}

/// The reference rescaling of the generators, as stated.
pub fn displayed_rescaling(k: usize) -> Rescaling {
    let al = |a: &str, b: &str| MonomialCoeff::symbol(&alpha(a, b));
    let rho_inv = MonomialCoeff::ratio("eta_x_1", "eta_y_1");
    let mut m = Rescaling::new();
    for i in 2..k - 2 {
        m.insert(p(1, i), MonomialCoeff::ratio(&format!("theta2_{i}"), &format!("theta1_{i}")).neg());
    }
    m.insert(
        p(1, k - 2),
        MonomialCoeff::ratio("alpha_p1_dt", "alpha_d_y0").mul(&MonomialCoeff::ratio("alpha_d_x0", "alpha_p2_dt")),
    );
    m.insert("delta~".into(), MonomialCoeff::ratio("alpha_p2_dt", "alpha_d_x0"));
    m.insert("x_1".into(), rho_inv.clone());
    m.insert("y_1".into(), al("y", "x").div(&al("x", "y")).mul(&rho_inv.inv()).neg());
    m.insert("z_1".into(), al("y", "z").div(&al("z", "y")).mul(&al("x", "y").div(&al("y", "x"))).mul(&rho_inv));
    m
}

/// Compares relations name by name: each pair must agree up to an overall
/// factor. Returns the names of relations that do not.
pub fn relation_mismatches(a: &Quiver, b: &Quiver) -> Vec<String> {
    let mut bad = Vec::new();
    for rb in &b.relations {
        let Some(ra) = a.relation(&rb.name) else {
            bad.push(rb.name.clone());
            continue;
        };
        if !proportional(a, ra, b, rb) {
            bad.push(rb.name.clone());
        }
    }
    for ra in &a.relations {
        if b.relation(&ra.name).is_none() {
            bad.push(ra.name.clone());
        }
    }
    bad
}

fn path_key(q: &Quiver, path: &[usize]) -> Vec<String> {
    path.iter().map(|&i| q.arrows[i].label.clone()).collect()
}

fn proportional(qa: &Quiver, ra: &Relation, qb: &Quiver, rb: &Relation) -> bool {
    if ra.terms.len() != rb.terms.len() {
        return false;
    }
    let mut factor: Option<Coeff> = None;
    for tb in &rb.terms {
        let key = path_key(qb, &tb.path);
        let Some(ta) = ra.terms.iter().find(|t| path_key(qa, &t.path) == key) else {
            return false;
        };
        // ratio ta / tb
        let ratio = Coeff {
            scalar: &ta.coeff.scalar / &tb.coeff.scalar,
            mono: reduce_constants(&ta.coeff.mono.div(&tb.coeff.mono)),
        };
        let ratio = normalize_coeff(ratio);
        match &factor {
            None => factor = Some(ratio),
            Some(f) if *f != ratio => return false,
            _ => {}
        }
    }
    true
}

/// Moves the monomial sign into the scalar.
fn normalize_coeff(c: Coeff) -> Coeff {
    let scalar = c.scalar * BigRational::from_integer(BigInt::from(c.mono.sign));
    Coeff { scalar, mono: MonomialCoeff { sign: 1, exponents: c.mono.exponents } }
}

/// Generators left unscaled by [`solve_rescaling`].
pub const FIXED_GENERATORS: [&str; 3] = ["x_0", "z_0", "delta'"];

fn is_fixed(label: &str) -> bool {
    FIXED_GENERATORS.contains(&label) || label.starts_with("p_{2,") || label.starts_with("r_{H,")
}

/// Solves for monomial factors turning `fq` into `target` relation by relation.
///
/// Each two-term relation gives one multiplicative equation on the factors;
/// exponents are solved over the rationals (then checked integral) and signs
/// over GF(2). The generators in [`FIXED_GENERATORS`], the `p_{2,i}` and the
/// `r_{H,i}` are held at 1; `y_0` is free, which is the coordinate rescaling
/// of `y` on the B-side.
pub fn solve_rescaling(fq: &Quiver, target: &Quiver) -> Result<Rescaling, QuiverError> {
    let unknowns: Vec<String> = fq.arrows.iter().map(|a| a.label.clone()).filter(|l| !is_fixed(l)).collect();
    let col = |l: &str| unknowns.iter().position(|u| u == l);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<MonomialCoeff> = Vec::new();
    for rt in &target.relations {
        let ra = fq.relation(&rt.name).ok_or_else(|| QuiverError::Unsolvable(format!("missing {}", rt.name)))?;
        if rt.terms.len() != ra.terms.len() {
            return Err(QuiverError::Unsolvable(format!("shape of {}", rt.name)));
        }
        if rt.terms.len() < 2 {
            continue;
        }
        if rt.terms.len() > 2 {
            return Err(QuiverError::Unsolvable(format!("{} has more than two terms", rt.name)));
        }
        let find = |key: &[String]| ra.terms.iter().find(|t| path_key(fq, &t.path) == key);
        let (t1, t2) = (&rt.terms[0], &rt.terms[1]);
        let a1 = find(&path_key(target, &t1.path)).ok_or_else(|| QuiverError::Unsolvable(rt.name.clone()))?;
        let a2 = find(&path_key(target, &t2.path)).ok_or_else(|| QuiverError::Unsolvable(rt.name.clone()))?;
        let m = |c: &Coeff| {
            c.as_monomial().ok_or_else(|| QuiverError::Unsolvable(format!("{} has a non-unit scalar", rt.name)))
        };
        // with g_new = c g_old: (κ1/c(P1)) / (κ2/c(P2)) = τ1/τ2
        //   => c(P2)/c(P1) = τ1 κ2 / (τ2 κ1)
        let value = reduce_constants(&m(&t1.coeff)?.mul(&m(&a2.coeff)?).div(&m(&t2.coeff)?).div(&m(&a1.coeff)?));
        let mut row = vec![0i64; unknowns.len()];
        for &i in &t2.path {
            if let Some(c) = col(&fq.arrows[i].label) {
                row[c] += 1;
            }
        }
        for &i in &t1.path {
            if let Some(c) = col(&fq.arrows[i].label) {
                row[c] -= 1;
            }
        }
        if row.iter().all(|&x| x == 0) {
            if !value.is_one() {
                return Err(QuiverError::Unsolvable(format!("{}: fixed generators need factor {value}", rt.name)));
            }
            continue;
        }
        rows.push(row);
        rhs.push(value);
    }
    let symbols: Vec<String> = {
        let mut s: Vec<String> = rhs.iter().flat_map(|m| m.exponents.keys().cloned()).collect();
        s.sort();
        s.dedup();
        s
    };
    let n = unknowns.len();
    // exponents: one augmented system with all symbol columns at once
    let mut aug: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(&rhs)
        .map(|(row, m)| {
            let mut v: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            v.extend(symbols.iter().map(|s| BigRational::from_integer((*m.exponents.get(s).unwrap_or(&0)).into())));
            v
        })
        .collect();
    let pivots = rref(&mut aug, n);
    for row in &aug[pivots.len()..] {
        if row[n..].iter().any(|x| !x.is_zero()) {
            return Err(QuiverError::Unsolvable("exponent equations are inconsistent".into()));
        }
    }
    let mut exps = vec![BTreeMap::<String, i64>::new(); n];
    for (r, &c) in pivots.iter().enumerate() {
        for (s, sym) in symbols.iter().enumerate() {
            let v = &aug[r][n + s];
            if !v.is_integer() {
                return Err(QuiverError::Unsolvable(format!("{} needs a fractional power of {sym}", unknowns[c])));
            }
            let v: i64 = v.to_integer().try_into().map_err(|_| QuiverError::Unsolvable("exponent overflow".into()))?;
            if v != 0 {
                exps[c].insert(sym.clone(), v);
            }
        }
    }
    // signs over GF(2)
    let mut gf: Vec<Vec<bool>> = rows
        .iter()
        .zip(&rhs)
        .map(|(row, m)| {
            let mut v: Vec<bool> = row.iter().map(|x| x.rem_euclid(2) == 1).collect();
            v.push(m.sign < 0);
            v
        })
        .collect();
    let gpiv = rref_gf2(&mut gf, n);
    if gf[gpiv.len()..].iter().any(|row| row[n]) {
        return Err(QuiverError::Unsolvable("sign equations are inconsistent".into()));
    }
    let mut signs = vec![false; n];
    for (r, &c) in gpiv.iter().enumerate() {
        signs[c] = gf[r][n];
    }
    Ok(unknowns
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, MonomialCoeff { sign: if signs[i] { -1 } else { 1 }, exponents: exps[i].clone() }))
        .filter(|(_, m)| !m.is_one())
        .collect())
}

/// Result of normalizing the A-side constants.
#[derive(Debug, Clone, Serialize)]
pub struct Normalization {
    pub rescaling: Rescaling,
    pub quiver: Quiver,
    /// Kernel points `(a_i, b_i)` read off the normalized relations.
    pub points: Vec<(MonomialCoeff, MonomialCoeff)>,
}

/// Solves for a rescaling, applies it and checks every relation against the
/// symbolic B-side quiver. Relation coefficients are then scaled to agree
/// with the B-side exactly.
pub fn normalize_constants(fq: &Quiver) -> Result<Normalization, QuiverError> {
    let k = fq.vertices.iter().filter(|v| v.starts_with("e_")).count() + 2;
    let target = xk_quiver_symbolic(k)?;
    let rescaling = solve_rescaling(fq, &target)?;
    let rescaled = apply_rescaling(fq, &rescaling, RescaleConvention::NewIsFactorTimesOld);
    let bad = relation_mismatches(&rescaled, &target);
    if !bad.is_empty() {
        return Err(QuiverError::Mismatch(bad));
    }
    let mut quiver = rescaled;
    for r in &mut quiver.relations {
        let rt = target.relation(&r.name).expect("matched above");
        let key0 = path_key(&target, &rt.terms[0].path);
        let t0 = r.terms.iter().find(|t| path_key(fq, &t.path) == key0).expect("matched above").coeff.clone();
        let fix = rt.terms[0].coeff.mono.div(&t0.mono);
        for t in &mut r.terms {
            let scalar = &t.coeff.scalar * &rt.terms[0].coeff.scalar / &t0.scalar;
            t.coeff = Coeff { scalar, mono: reduce_constants(&t.coeff.mono.mul(&fix)) };
        }
        // same term order as the target
        let order: Vec<Vec<String>> = rt.terms.iter().map(|t| path_key(&target, &t.path)).collect();
        r.terms.sort_by_key(|t| order.iter().position(|o| *o == path_key(fq, &t.path)));
    }
    let points = kernel_points(&quiver, k)?;
    Ok(Normalization { rescaling, quiver, points })
}

/// Reads `(a_i, b_i)` from the relations `r_i∘(a_i x_1 + b_i y_1) = 0`.
pub fn kernel_points(q: &Quiver, k: usize) -> Result<Vec<(MonomialCoeff, MonomialCoeff)>, QuiverError> {
    (1..=k + 1)
        .map(|i| {
            let name = format!("kernel_{i}");
            let rel = q.relation(&name).ok_or_else(|| QuiverError::BadRelation(name.clone()))?;
            let coeff_of = |g: &str| {
                rel.terms
                    .iter()
                    .find(|t| t.path.first().is_some_and(|&a| q.arrows[a].label == g))
                    .and_then(|t| t.coeff.as_monomial())
                    .ok_or_else(|| QuiverError::BadRelation(name.clone()))
            };
            Ok((coeff_of("x_1")?, coeff_of("y_1")?))
        })
        .collect()
}

/// Row-reduces the first `ncols` columns in place; returns pivot columns.
pub(crate) fn rref(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[c].is_zero() {
                let f = other[c].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rref_gf2(m: &mut [Vec<bool>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| m[r][c]) else { continue };
        m.swap(row, p);
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && other[c] {
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    *x ^= *y;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rank(rows: Vec<Vec<BigRational>>, ncols: usize) -> usize {
    let mut m = rows;
    if m.is_empty() {
        return 0;
    }
    rref(&mut m, ncols).len()
}

/// Matrix `D[s][t] = dim e_t A e_s` of the path algebra modulo relations.
///
/// Symbolic coefficients are first specialized to generic rationals.
pub fn hom_dims(q: &Quiver) -> Result<Vec<Vec<usize>>, QuiverError> {
    let q = q.numeric()?;
    Ok((0..q.vertices.len()).map(|s| HomFromSource::build(&q, s).dims).collect())
}

/// Same as [`hom_dims`] with an explicit specialization seed.
pub fn hom_dims_with_seed(q: &Quiver, seed: u64) -> Result<Vec<Vec<usize>>, QuiverError> {
    let q = q.specialize_random(seed)?;
    Ok((0..q.vertices.len()).map(|s| HomFromSource::build(&q, s).dims).collect())
}

type Mat = Vec<Vec<BigRational>>;

/// Quotient spaces `A(s, v)` for a fixed source, built vertex by vertex in
/// order: the space at `v` is the direct sum over incoming arrows of the
/// spaces at their sources, modulo every relation ending at `v` precomposed
/// with a basis of the space at its source.
struct HomFromSource {
    dims: Vec<usize>,
}

impl HomFromSource {
    fn build(q: &Quiver, s: usize) -> Self {
        let n = q.vertices.len();
        let mut dims = vec![0usize; n];
        let mut maps: Vec<Option<Mat>> = vec![None; q.arrows.len()];
        dims[s] = 1;
        for v in (s + 1)..n {
            let incoming: Vec<usize> =
                (0..q.arrows.len()).filter(|&a| q.arrows[a].target == v && q.arrows[a].source >= s).collect();
            let mut offset = HashMap::new();
            let mut width = 0;
            for &a in &incoming {
                offset.insert(a, width);
                width += dims[q.arrows[a].source];
            }
            if width == 0 {
                continue;
            }
            let mut rows: Mat = Vec::new();
            for rel in &q.relations {
                let Some((src, tgt)) = q.path_ends(&rel.terms[0].path) else { continue };
                if tgt != v || src < s || dims[src] == 0 {
                    continue;
                }
                for w in 0..dims[src] {
                    let mut row = vec![BigRational::zero(); width];
                    for t in &rel.terms {
                        let mut vec = unit(dims[src], w);
                        for &a in &t.path[..t.path.len() - 1] {
                            vec = apply(maps[a].as_ref(), &vec, dims[q.arrows[a].target]);
                        }
                        let last = *t.path.last().expect("nonempty path");
                        let off = offset[&last];
                        let c = &t.coeff.scalar * BigRational::from_integer(BigInt::from(t.coeff.mono.sign));
                        for (j, x) in vec.iter().enumerate() {
                            if !x.is_zero() {
                                row[off + j] += &c * x;
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows, width) };
            let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
            dims[v] = free.len();
            // projection of unit column c onto the free basis
            let project = |c: usize| -> Vec<BigRational> {
                let mut out = vec![BigRational::zero(); free.len()];
                if let Some(r) = pivots.iter().position(|&p| p == c) {
                    for (j, &f) in free.iter().enumerate() {
                        out[j] = -rows[r][f].clone();
                    }
                } else {
                    let j = free.iter().position(|&f| f == c).expect("free column");
                    out[j] = BigRational::one();
                }
                out
            };
            for &a in &incoming {
                let du = dims[q.arrows[a].source];
                let cols: Vec<Vec<BigRational>> = (0..du).map(|j| project(offset[&a] + j)).collect();
                let mat: Mat = (0..free.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
                maps[a] = Some(mat);
            }
        }
        Self { dims }
    }
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

fn apply(m: Option<&Mat>, v: &[BigRational], out_dim: usize) -> Vec<BigRational> {
    let Some(m) = m else { return vec![BigRational::zero(); out_dim] };
    m.iter().map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
}

/// Brute-force description of `e_t A e_s`: every path from `s` to `t` and
/// the two-sided ideal spanned by `u·ρ·v` for all relations `ρ`.
#[derive(Debug, Clone)]
pub struct PathSpace {
    pub paths: Vec<Vec<usize>>,
    /// Reduced row echelon basis of the ideal, over the path basis.
    pub ideal: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
}

/// Paths from `s` to `t` in traversal order; the empty path when `s == t`.
pub fn enumerate_paths(q: &Quiver, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(q: &Quiver, at: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if at == t {
            out.push(cur.clone());
            return;
        }
        for (i, a) in q.arrows.iter().enumerate() {
            if a.source == at && a.target <= t {
                cur.push(i);
                go(q, a.target, t, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if s <= t {
        go(q, s, t, &mut Vec::new(), &mut out);
    }
    out
}

impl PathSpace {
    pub fn new(q: &Quiver, s: usize, t: usize) -> Result<Self, QuiverError> {
        let q = q.numeric()?;
        let paths = enumerate_paths(&q, s, t);
        let index: HashMap<Vec<usize>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut rows = Vec::new();
        for rel in &q.relations {
            let Some((rs, rt)) = q.path_ends(&rel.terms[0].path) else { continue };
            if rs < s || rt > t {
                continue;
            }
            for u in enumerate_paths(&q, s, rs) {
                for v in enumerate_paths(&q, rt, t) {
                    let mut row = vec![BigRational::zero(); paths.len()];
                    for term in &rel.terms {
                        let full: Vec<usize> = u.iter().chain(&term.path).chain(&v).copied().collect();
                        let c = &term.coeff.scalar * BigRational::from_integer(BigInt::from(term.coeff.mono.sign));
                        row[index[&full]] += c;
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows, paths.len()) };
        rows.truncate(pivots.len());
        Ok(Self { paths, ideal: rows, pivots })
    }

    pub fn dim(&self) -> usize {
        self.paths.len() - self.pivots.len()
    }

    /// Canonical normal form of a vector: eliminate pivot coordinates, in the given order.
    pub fn reduce_in_order(&self, v: &[BigRational], order: &[usize]) -> Vec<BigRational> {
        let mut out = v.to_vec();
        for &r in order {
            let c = self.pivots[r];
            if !out[c].is_zero() {
                let f = out[c].clone();
                for (x, y) in out.iter_mut().zip(&self.ideal[r]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        out
    }

    pub fn normal_form(&self, v: &[BigRational]) -> Vec<BigRational> {
        let order: Vec<usize> = (0..self.pivots.len()).collect();
        self.reduce_in_order(v, &order)
    }

    /// Dimension of the image of the paths passing through `mid`.
    pub fn span_through(&self, q: &Quiver, mid: usize) -> usize {
        let through: Vec<Vec<BigRational>> = self
            .paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.iter().any(|&a| q.arrows[a].target == mid))
            .map(|(i, _)| self.normal_form(&unit(self.paths.len(), i)))
            .collect();
        rank(through, self.paths.len())
    }
}

/// Hom dimensions computed by [`PathSpace`] for every pair.
pub fn hom_dims_bruteforce(q: &Quiver) -> Result<Vec<Vec<usize>>, QuiverError> {
    let n = q.vertices.len();
    let q = q.numeric()?;
    (0..n).map(|s| (0..n).map(|t| Ok(PathSpace::new(&q, s, t)?.dim())).collect()).collect()
}

/// Euler pairing of a strong exceptional collection, from hom dimensions.
pub fn euler_gram(q: &Quiver) -> Result<GramMatrix, QuiverError> {
    if let Some(a) = q.arrows.iter().find(|a| a.degree != 0) {
        return Err(QuiverError::NonzeroDegree(a.label.clone()));
    }
    let d = hom_dims(q)?;
    Ok(GramMatrix { entries: d.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect() })
}

/// Restricts a quiver to a set of vertices (arrows and relations among them).
pub fn full_subquiver(q: &Quiver, keep: &[usize]) -> Result<Quiver, QuiverError> {
    let map: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut amap = HashMap::new();
    let mut arrows = Vec::new();
    for (i, a) in q.arrows.iter().enumerate() {
        if let (Some(&s), Some(&t)) = (map.get(&a.source), map.get(&a.target)) {
            amap.insert(i, arrows.len());
            arrows.push(Arrow { source: s, target: t, ..a.clone() });
        }
    }
    let relations = q
        .relations
        .iter()
        .filter(|r| r.terms.iter().all(|t| t.path.iter().all(|a| amap.contains_key(a))))
        .map(|r| Relation {
            name: r.name.clone(),
            terms: r
                .terms
                .iter()
                .map(|t| Term { coeff: t.coeff.clone(), path: t.path.iter().map(|a| amap[a]).collect() })
                .collect(),
        })
        .collect();
    Quiver::new(keep.iter().map(|&v| q.vertices[v].clone()).collect(), arrows, relations)
}

/// `(1 + i)` for `i = 1..=k+1` is a convenient set of distinct points.
pub fn default_points(k: usize) -> Vec<(BigRational, BigRational)> {
    points_from_q(&(1..=k + 1).map(|i| BigRational::from_integer(BigInt::from(i as i64))).collect::<Vec<_>>())
}

/// Specialization values with `q_{1,j}` set explicitly and every other
/// independent constant drawn from `seed`.
pub fn values_with_q(q: &Quiver, q1: &[BigRational], seed: u64) -> HashMap<String, BigRational> {
    let mut vals = random_values(&q.symbols(), seed);
    for (j, v) in q1.iter().enumerate().skip(1) {
        vals.insert(format!("q_1_{}", j + 1), v.clone());
    }
    vals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn mckay_dims() {
        let d = hom_dims(&mckay_quiver(7).unwrap()).unwrap();
        for i in 0..5 {
            assert_eq!(d[i][i], 1);
            if i + 1 < 5 {
                assert_eq!(d[i][i + 1], 2);
            }
            if i + 2 < 5 {
                assert_eq!(d[i][i + 2], 1);
            }
            for j in i + 3..5 {
                assert_eq!(d[i][j], 0);
            }
        }
        assert_eq!(hom_dims(&mckay_quiver(3).unwrap()).unwrap(), vec![vec![1]]);
        let g = euler_gram(&mckay_quiver(5).unwrap()).unwrap();
        assert_eq!(g.to_i64(), vec![vec![1, 2, 1], vec![0, 1, 2], vec![0, 0, 1]]);
    }

    #[test]
    fn xk_dims() {
        for k in [5, 7] {
            let q = xk_quiver(k, &default_points(k)).unwrap();
            let d = hom_dims(&q).unwrap();
            let at = |s: &str, t: &str| d[q.vertex_index(s).unwrap()][q.vertex_index(t).unwrap()];
            let row = |s: &str| [PO, PT, PH, &bi(1)].map(|t| at(s, t));
            assert_eq!(row(&e(k - 2)), [1, 3, 2, 1]);
            assert_eq!(row(&e(k - 1)), [0, 1, 1, 1]);
            assert_eq!(at(PT, &bi(3)), 2);
            assert_eq!(at(PO, PH), 3);
            assert_eq!(at(PO, &bi(2)), 1);
        }
    }

    #[test]
    fn coincident_points_rejected() {
        let mut pts = default_points(5);
        pts[1] = (ri(2), ri(-2));
        assert!(matches!(xk_quiver(5, &pts), Err(QuiverError::Points(_))));
    }

    #[test]
    fn fukaya_has_expected_relations() {
        let f = fukaya_quiver(5, FukayaForm::Derived).unwrap();
        assert_eq!(f.relation("xx").unwrap().terms.len(), 1);
        let k2 = f.relation("kernel_2").unwrap();
        assert!(f.relation_string(k2).contains("eta_y_1"));
    }

    #[test]
    fn constants_rewrite() {
        let prod = MonomialCoeff::symbol("alpha_xy")
            .with("alpha_yz", 1)
            .with("alpha_zx", 1)
            .with("alpha_yx", -1)
            .with("alpha_zy", -1)
            .with("alpha_xz", -1);
        assert_eq!(reduce_constants(&prod), MonomialCoeff::minus_one());
        let cross = MonomialCoeff::ratio("eta_y_2", "eta_x_2").div(&MonomialCoeff::ratio("eta_y_3", "eta_x_3"));
        assert_eq!(reduce_constants(&cross), reduce_constants(&MonomialCoeff::symbol("q_2_3")));
    }

    #[test]
    fn normalization_matches_b_side() {
        for k in [5, 7] {
            let f = fukaya_quiver(k, FukayaForm::Derived).unwrap();
            let n = normalize_constants(&f).unwrap();
            assert_eq!(n.quiver.relations, xk_quiver_symbolic(k).unwrap().relations);
            assert!(n.points[0].1 == MonomialCoeff::minus_one());
        }
        let listed = fukaya_quiver(5, FukayaForm::AsListed).unwrap();
        assert!(normalize_constants(&listed).is_err());
    }

    #[test]
    fn displayed_rescaling_reports_failures() {
        let f = fukaya_quiver(5, FukayaForm::Derived).unwrap();
        let t = xk_quiver_symbolic(5).unwrap();
        for conv in [RescaleConvention::NewIsFactorTimesOld, RescaleConvention::OldIsFactorTimesNew] {
            let bad = relation_mismatches(&apply_rescaling(&f, &displayed_rescaling(5), conv), &t);
            assert!(!bad.is_empty());
        }
    }

    #[test]
    fn dp_matches_bruteforce() {
        let q = xk_quiver(5, &default_points(5)).unwrap();
        assert_eq!(hom_dims(&q).unwrap(), hom_dims_bruteforce(&q).unwrap());
    }

    #[test]
    fn composite_span_through_e_k_minus_one() {
        let q = xk_quiver(5, &default_points(5)).unwrap();
        let (s, t) = (q.vertex_index(&e(3)).unwrap(), q.vertex_index(PT).unwrap());
        let space = PathSpace::new(&q, s, t).unwrap();
        assert_eq!(space.dim(), 3);
        assert_eq!(space.span_through(&q, q.vertex_index(&e(4)).unwrap()), 2);
        assert_eq!(space.span_through(&q, q.vertex_index(PO).unwrap()), 3);
    }
}
