//! Numerics for the Landau–Ginzburg model
//! `f_s = P(y)/(xy) + s x + T(y)` with `T(y) = τ_1 y + τ_2 y² + ...`.
//!
//! On the hypersurface `zx = P(y)` the potential reads `z/y + s x + T(y)`.

pub mod branch;
pub mod critical;
pub mod gradient;
pub mod newton;
pub mod poly;
pub mod sturm;
pub mod track;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use branch::{branch_points, radial_collision, BranchPoints, RadialCollision};
pub use critical::{critical_set, CriticalClass, CriticalPoint, CriticalSet};
pub use gradient::{palais_smale_sample, PalaisSmale};
pub use newton::{newton_polygon_count, NewtonCount};
pub use poly::{roots, Poly, C};
pub use sturm::{sturm_real_roots, SturmCount};
pub use track::{track_roots, Collision, RootTrajectory, TrackOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LgError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("P has a repeated root")]
    DoubleRoot,
    #[error("root solver did not converge (degree {degree})")]
    NonConvergence { degree: usize },
    #[error("unexpected cluster counts: expected {expected}, got {got}")]
    ClusterCounts { expected: String, got: String },
    #[error("ambiguous root matching at step {step} (t = {t}): {detail}")]
    Ambiguous { step: usize, t: String, detail: String },
    #[error("sample off the hypersurface by {0:e}")]
    OffHypersurface(f64),
}

/// How `P` is specified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolySpec {
    /// `P(y) = (1 + y)^{k+1} + delta`.
    Perturbed { delta: f64 },
    /// `P(y) = Π (y + q_i)`.
    Roots(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LGSpec {
    pub k: usize,
    pub s: f64,
    pub p: PolySpec,
    /// `τ_1, τ_2, ...`.
    pub tau: Vec<f64>,
}

pub const DEFAULT_S: f64 = 1e-2;
pub const DEFAULT_DELTA: f64 = 1e-2;

impl LGSpec {
    pub fn new(k: usize, s: f64, delta: f64) -> Result<Self, LgError> {
        let spec = Self { k, s, p: PolySpec::Perturbed { delta }, tau: vec![1.0] };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_roots(k: usize, s: f64, q: Vec<f64>) -> Result<Self, LgError> {
        let spec = Self { k, s, p: PolySpec::Roots(q), tau: vec![1.0] };
        spec.validate()?;
        Ok(spec)
    }

    /// `q_i = 1 + (i - 1)·10⁻³`.
    pub fn default_roots(k: usize) -> Vec<f64> {
        (0..=k).map(|i| 1.0 + i as f64 * 1e-3).collect()
    }

    pub fn with_s(&self, s: f64) -> Self {
        Self { s, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), LgError> {
        if self.k < 3 || self.k.is_multiple_of(2) {
            return Err(LgError::Invalid(format!("k must be odd and at least 3, got {}", self.k)));
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(LgError::Invalid(format!("s must be positive, got {}", self.s)));
        }
        if let PolySpec::Roots(q) = &self.p {
            if q.len() != self.k + 1 {
                return Err(LgError::Invalid(format!("need {} roots, got {}", self.k + 1, q.len())));
            }
        }
        if self.tau.is_empty() || self.tau.iter().any(|t| !t.is_finite()) {
            return Err(LgError::Invalid("tau must be a nonempty list of finite reals".into()));
        }
        let coeffs: Vec<f64> = self.p_poly().coeffs.iter().map(|c| c.re).collect();
        let exact = sturm::RatPoly::from_f64(&coeffs).ok_or_else(|| LgError::Invalid("non-finite P".into()))?;
        if !exact.is_squarefree() {
            return Err(LgError::DoubleRoot);
        }
        Ok(())
    }

    pub fn is_default_tau(&self) -> bool {
        self.tau[0] == 1.0 && self.tau[1..].iter().all(|&t| t == 0.0)
    }

    pub fn p_poly(&self) -> Poly {
        match &self.p {
            PolySpec::Perturbed { delta } => {
                Poly::from_real(&[1.0, 1.0]).powi(self.k + 1).add(&Poly::constant(C::new(*delta, 0.0)))
            }
            PolySpec::Roots(q) => Poly::from_negated_roots(&q.iter().map(|&x| C::new(x, 0.0)).collect::<Vec<_>>()),
        }
    }

    pub fn p_roots(&self) -> Result<Vec<C>, LgError> {
        roots(&self.p_poly())
    }

    pub fn t_poly(&self) -> Poly {
        let mut c = vec![0.0];
        c.extend(&self.tau);
        Poly::from_real(&c)
    }

    /// `(P - yP')² - P y³ T'²/s`, whose roots are the `y`-coordinates of the critical points.
    pub fn critical_poly(&self) -> Poly {
        let p = self.p_poly();
        let y = Poly::from_real(&[0.0, 1.0]);
        let a = p.sub(&y.mul(&p.derivative()));
        let tp = self.t_poly().derivative();
        a.mul(&a).sub(&p.mul(&y.powi(3)).mul(&tp.mul(&tp)).scale(C::new(1.0 / self.s, 0.0)))
    }

    /// `P - y (T(y) - t)²/(4s)`, whose roots are the branch points of the
    /// projection of the fiber over `t` to the `y`-line.
    pub fn branch_poly(&self, t: C) -> Poly {
        let y = Poly::from_real(&[0.0, 1.0]);
        let d = self.t_poly().sub(&Poly::constant(t));
        self.p_poly().sub(&y.mul(&d.mul(&d)).scale(C::new(1.0 / (4.0 * self.s), 0.0)))
    }

    /// `x` and `t` for a critical `y`.
    pub fn critical_xt(&self, y: C) -> (C, C) {
        let p = self.p_poly();
        let (pv, pd) = p.eval_d(y);
        let tp = self.t_poly().derivative().eval(y);
        let x = (pv - y * pd) / (y * y * tp);
        let t = 2.0 * self.s * x + self.t_poly().eval(y);
        (x, t)
    }

    /// The delta of a perturbed `P`, or `None` for explicit roots.
    pub fn delta(&self) -> Option<f64> {
        match self.p {
            PolySpec::Perturbed { delta } => Some(delta),
            PolySpec::Roots(_) => None,
        }
    }
}

/// Exact rational of an `f64`.
pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(LGSpec::new(5, 1e-2, 1e-2).is_ok());
        assert!(LGSpec::new(4, 1e-2, 1e-2).is_err());
        assert!(LGSpec::new(5, -1.0, 1e-2).is_err());
        assert_eq!(LGSpec::new(5, 1e-2, 0.0), Err(LgError::DoubleRoot));
        assert_eq!(LGSpec::with_roots(3, 1e-2, vec![1.0, 1.0, 2.0, 3.0]), Err(LgError::DoubleRoot));
        assert!(LGSpec::with_roots(5, 1e-2, LGSpec::default_roots(5)).is_ok());
    }

    #[test]
    fn critical_polynomial_degree() {
        for k in [3, 5, 7] {
            assert_eq!(LGSpec::new(k, 1e-2, 1e-2).unwrap().critical_poly().degree(), 2 * k + 2);
            assert_eq!(LGSpec::new(k, 1e-2, 1e-2).unwrap().branch_poly(C::new(1.0, 0.0)).degree(), k + 1);
        }
    }
}
