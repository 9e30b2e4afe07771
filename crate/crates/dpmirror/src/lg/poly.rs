//! Dense complex polynomials and a simultaneous root solver.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::LgError;

pub type C = Complex64;

/// Polynomial with complex coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<C>,
}

impl Poly {
    pub fn new(coeffs: Vec<C>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_real(c: &[f64]) -> Self {
        Self::new(c.iter().map(|&x| C::new(x, 0.0)).collect())
    }

    pub fn monomial(c: C, n: usize) -> Self {
        let mut v = vec![C::new(0.0, 0.0); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `Π (y + q_i)`.
    pub fn from_negated_roots(q: &[C]) -> Self {
        q.iter().fold(Self::constant(C::new(1.0, 0.0)), |acc, &qi| acc.mul(&Self::new(vec![qi, C::new(1.0, 0.0)])))
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| *c == C::new(0.0, 0.0)) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(C::new(0.0, 0.0));
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: C) -> C {
        self.coeffs.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_d(&self, z: C) -> (C, C) {
        let mut p = C::new(0.0, 0.0);
        let mut d = C::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    }

    /// `Σ |a_i| |z|^i`, the scale for backward-error tests.
    pub fn abs_eval(&self, z: C) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::constant(C::new(0.0, 0.0));
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).copied().unwrap_or_default();
        Self::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![C::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn powi(&self, n: usize) -> Self {
        (0..n).fold(Self::constant(C::new(1.0, 0.0)), |acc, _| acc.mul(self))
    }

    pub fn leading(&self) -> C {
        *self.coeffs.last().expect("nonempty")
    }
}

/// Relative tolerance for the simultaneous iteration.
pub const ROOT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 600;

/// All roots of `p`, by Aberth–Ehrlich iteration started on Newton-polygon
/// circles, falling back to companion-matrix eigenvalues.
pub fn roots(p: &Poly) -> Result<Vec<C>, LgError> {
    roots_from(p, &initial_guesses(p))
}

/// Aberth–Ehrlich iteration from the given starting points.
pub fn roots_from(p: &Poly, init: &[C]) -> Result<Vec<C>, LgError> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    if init.len() != n {
        return Err(LgError::Invalid(format!("{} starting points for degree {n}", init.len())));
    }
    if let Some(z) = aberth(p, init) {
        return Ok(z);
    }
    let z = companion_roots(p)?;
    let z: Vec<C> = z.into_iter().map(|r| polish(p, r)).collect();
    if backward_ok(p, &z) {
        Ok(z)
    } else {
        Err(LgError::NonConvergence { degree: n })
    }
}

fn aberth(p: &Poly, init: &[C]) -> Option<Vec<C>> {
    let n = init.len();
    let mut z = init.to_vec();
    // perturb coincident starting points
    for i in 0..n {
        for j in 0..i {
            if (z[i] - z[j]).norm() <= 1e-14 * (1.0 + z[i].norm()) {
                let bump = C::new(1e-7, 1e-7) * (1.0 + z[i].norm()) * (i as f64 + 1.0);
                z[i] += bump;
            }
        }
    }
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (v, d) = p.eval_d(z[i]);
            if v == C::new(0.0, 0.0) {
                done[i] = true;
                continue;
            }
            let ratio = v / d;
            let mut sum = C::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    sum += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (C::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                return None;
            }
            z[i] -= w;
            if w.norm() <= ROOT_TOL * z[i].norm().max(f64::MIN_POSITIVE) * 1e-2
                || v.norm() <= 4.0 * f64::EPSILON * p.abs_eval(z[i])
            {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    backward_ok(p, &z).then_some(z)
}

/// Residual test `|p(z)| ≤ τ Σ|a_i||z|^i` with a loose `τ`.
fn backward_ok(p: &Poly, z: &[C]) -> bool {
    z.iter().all(|&r| {
        r.re.is_finite() && r.im.is_finite() && p.eval(r).norm() <= 1e-9 * p.abs_eval(r).max(f64::MIN_POSITIVE)
    })
}

fn polish(p: &Poly, mut z: C) -> C {
    for _ in 0..8 {
        let (v, d) = p.eval_d(z);
        if d == C::new(0.0, 0.0) {
            break;
        }
        let step = v / d;
        z -= step;
        if step.norm() <= 1e-16 * z.norm() {
            break;
        }
    }
    z
}

/// Eigenvalues of the companion matrix, via a complex Schur decomposition.
pub fn companion_roots(p: &Poly) -> Result<Vec<C>, LgError> {
    let n = p.degree();
    let lead = p.leading();
    let mut m = DMatrix::<C>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p.coeffs[i] / lead;
    }
    let schur =
        nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000).ok_or(LgError::NonConvergence { degree: n })?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(i, log|a_i|)`.
pub fn initial_guesses(p: &Poly) -> Vec<C> {
    let n = p.degree();
    let pts: Vec<(usize, f64)> =
        p.coeffs.iter().enumerate().filter(|(_, c)| c.norm() > 0.0).map(|(i, c)| (i, c.norm().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    // roots of z^low factor (zero coefficients at the bottom) sit at 0
    let low = pts.first().map(|p| p.0).unwrap_or(0);
    for i in 0..low {
        out.push(C::new(1e-30 * (i as f64 + 1.0), 0.0));
    }
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let m = b.0 - a.0;
        let r = ((a.1 - b.1) / m as f64).exp();
        for j in 0..m {
            let ang = std::f64::consts::TAU * (j as f64 + 0.5) / m as f64 + 0.4 + 0.17 * a.0 as f64;
            out.push(C::from_polar(r, ang));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots() {
        let p = Poly::from_negated_roots(&[C::new(1.0, 0.0), C::new(-2.0, 0.0), C::new(0.0, 3.0)]);
        let mut r = roots(&p).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - C::new(-1.0, 0.0)).norm() < 1e-12);
        assert!((r[2] - C::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn companion_agrees() {
        let p = Poly::from_real(&[2.0, -3.0, 0.5, 1.0, 1.0]);
        let mut a = roots(&p).unwrap();
        let mut b = companion_roots(&p).unwrap();
        let key = |z: &C| (z.re * 1e6).round() as i64 * 1_000_000 + (z.im * 1e6).round() as i64;
        a.sort_by_key(key);
        b.sort_by_key(key);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-8);
        }
    }

    #[test]
    fn wide_dynamic_range() {
        // y^6 - 2.5e13 y^3 + 1: roots near 0 (cube roots of 4e-14) and far out
        let p = Poly::from_real(&[1.0, 0.0, 0.0, -2.5e13, 0.0, 0.0, 1.0]);
        let r = roots(&p).unwrap();
        let small = r.iter().filter(|z| z.norm() < 1.0).count();
        assert_eq!(small, 3);
        for z in &r {
            assert!(p.eval(*z).norm() <= 1e-9 * p.abs_eval(*z));
        }
    }
}
