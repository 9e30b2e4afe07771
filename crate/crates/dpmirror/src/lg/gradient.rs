//! Sampling of the gradient bound on the hypersurface `zx = P(y)`.
//!
//! With `v = (s, y T'(y) - z/y, 1/y)` and `w = (z, -y P'(y), x)`, the squared
//! norm of the gradient of `z/y + s x + T(y)` restricted to the hypersurface
//! (in logarithmic coordinates) is `|v|² - |⟨v, w⟩|²/|w|²`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::C;
use super::{LGSpec, LgError};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Sample {
    pub x: C,
    pub y: C,
    pub z: C,
    pub value: f64,
    /// `|zx - P(y)| / |P(y)|`.
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PalaisSmale {
    pub k: usize,
    pub s: f64,
    pub radius: f64,
    pub n: usize,
    pub seed: u64,
    pub min_value: f64,
    pub argmin: Sample,
    /// `s²/2`.
    pub bound: f64,
    pub max_residual: f64,
    /// Number of samples below `bound`.
    pub below_bound: usize,
}

impl PalaisSmale {
    pub fn passes_bound(&self) -> bool {
        self.min_value >= self.bound
    }
}

/// Squared gradient norm at a point of the hypersurface.
pub fn gradient_expression(spec: &LGSpec, x: C, y: C, z: C) -> f64 {
    let tp = spec.t_poly().derivative().eval(y);
    let pd = spec.p_poly().derivative().eval(y);
    let v = [C::new(spec.s, 0.0), y * tp - z / y, y.inv()];
    let w = [z, -y * pd, x];
    let vv: f64 = v.iter().map(|a| a.norm_sqr()).sum();
    let ww: f64 = w.iter().map(|a| a.norm_sqr()).sum();
    let vw: C = v.iter().zip(&w).map(|(a, b)| a * b.conj()).sum();
    // |v - (⟨v,w⟩/|w|²) w|² avoids cancellation in |v|² - |⟨v,w⟩|²/|w|²
    let c = vw / ww;
    let r: f64 = v.iter().zip(&w).map(|(a, b)| (a - c * b).norm_sqr()).sum();
    if r.is_finite() {
        r
    } else {
        vv
    }
}

/// Minimum of the gradient expression over `n` samples with `|y|, |x|, |z| ≥ radius`.
///
/// `|y| = radius·e^u` with `u` uniform in `[0, 2]`, `|x|` log-uniform in
/// `[radius, |P(y)|/radius]` and `z = P(y)/x`, with uniform arguments.
pub fn palais_smale_sample(spec: &LGSpec, radius: f64, n: usize, seed: u64) -> Result<PalaisSmale, LgError> {
    if radius.is_nan() || radius <= 1.0 || n == 0 {
        return Err(LgError::Invalid(format!("need radius > 1 and n > 0, got {radius}, {n}")));
    }
    let ps = spec.clone();
    if spec.s != 0.0 {
        ps.validate()?;
    }
    let p = ps.p_poly();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Sample> = None;
    let mut max_residual: f64 = 0.0;
    let bound = 0.5 * spec.s * spec.s;
    let mut below = 0;
    let mut taken = 0;
    while taken < n {
        let y =
            C::from_polar(radius * rng.random_range(0.0..2.0f64).exp(), rng.random_range(0.0..std::f64::consts::TAU));
        let py = p.eval(y);
        let hi = py.norm() / radius;
        if hi <= radius {
            continue;
        }
        let lx = rng.random_range(radius.ln()..hi.ln());
        let x = C::from_polar(lx.exp(), rng.random_range(0.0..std::f64::consts::TAU));
        let z = py / x;
        let residual = (z * x - py).norm() / py.norm();
        if residual > 1e-9 {
            return Err(LgError::OffHypersurface(residual));
        }
        max_residual = max_residual.max(residual);
        let value = gradient_expression(&ps, x, y, z);
        if value < bound {
            below += 1;
        }
        if best.is_none_or(|b| value < b.value) {
            best = Some(Sample { x, y, z, value, residual });
        }
        taken += 1;
    }
    let argmin = best.expect("n > 0");
    Ok(PalaisSmale {
        k: spec.k,
        s: spec.s,
        radius,
        n,
        seed,
        min_value: argmin.value,
        argmin,
        bound,
        max_residual,
        below_bound: below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonnegative_at_zero_s() {
        let mut spec = LGSpec::new(5, 1e-2, 1e-2).unwrap();
        spec.s = 0.0;
        let r = palais_smale_sample(&spec, 1e3, 2000, 1).unwrap();
        assert!(r.min_value >= 0.0);
        assert!(r.max_residual < 1e-9);
    }

    #[test]
    fn deterministic_given_seed() {
        let spec = LGSpec::new(5, 1e-2, 1e-2).unwrap();
        let a = palais_smale_sample(&spec, 1e3, 500, 7).unwrap();
        let b = palais_smale_sample(&spec, 1e3, 500, 7).unwrap();
        assert_eq!(a.min_value, b.min_value);
    }
}
