//! Critical points and critical values of `f_s`.
//!
//! Critical points are classified at a small anchor value of `s`, where the
//! three clusters are separated by orders of magnitude, and the labels are
//! carried to the requested `s` by continuation in `log s`.

use serde::Serialize;

use super::poly::{roots, C};
use super::track::{track_family, TrackOptions};
use super::{LGSpec, LgError};

/// Anchor value of `s` for classification.
pub const S_ANCHOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CriticalClass {
    /// `|y|` large, near the roots of `y^{k-2} = 1/(k² s)`.
    I,
    /// `|y|` small, near the roots of `y³ = s P(0)`.
    II,
    /// Near the roots of `P`.
    III,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    pub y: C,
    pub x: C,
    pub t: C,
    pub class: CriticalClass,
    /// Class under the fixed thresholds `|t| < 0.1·r_I` (II) and `|t + 1| < 0.3` (III).
    pub threshold_class: CriticalClass,
}

/// Comparison of the type-I points with their asymptotic descriptions.
#[derive(Debug, Clone, Serialize)]
pub struct TypeIAsymptotics {
    /// `((k-2)/k)(1/s)^{1/(k-2)}`.
    pub radius_uncorrected: f64,
    /// `((k-2)/k)(1/(k² s))^{1/(k-2)}`.
    pub radius: f64,
    /// Largest `| |t|/radius_uncorrected - 1 |`.
    pub max_rel_err_uncorrected: f64,
    /// Largest `| |t|/radius - 1 |`.
    pub max_rel_err: f64,
    /// Largest `|y + k s x| / |y|`.
    pub max_y_plus_ksx: f64,
    /// Largest `|t - ((k-2)/k) y| / |t|`.
    pub max_t_vs_y: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalSet {
    pub k: usize,
    pub s: f64,
    pub points: Vec<CriticalPoint>,
    /// Counts of types I, II, III.
    pub counts: [usize; 3],
    pub threshold_counts: [usize; 3],
    /// Points with `y` real and positive (then `x` and `t` are real).
    pub real_positive: usize,
    pub type_i: TypeIAsymptotics,
    /// Value of `s` at which the classes were assigned.
    pub anchor_s: f64,
}

impl CriticalSet {
    pub fn of_class(&self, c: CriticalClass) -> impl Iterator<Item = &CriticalPoint> {
        self.points.iter().filter(move |p| p.class == c)
    }

    pub fn expected_counts(k: usize) -> [usize; 3] {
        [k - 2, 3, k + 1]
    }
}

fn class_index(c: CriticalClass) -> usize {
    match c {
        CriticalClass::I => 0,
        CriticalClass::II => 1,
        CriticalClass::III => 2,
    }
}

/// `((k-2)/k)(1/(k² s))^{1/(k-2)}`.
pub fn type_i_radius(k: usize, s: f64) -> f64 {
    let kf = k as f64;
    (kf - 2.0) / kf * (1.0 / (kf * kf * s)).powf(1.0 / (kf - 2.0))
}

/// `((k-2)/k)(1/s)^{1/(k-2)}`.
pub fn type_i_radius_uncorrected(k: usize, s: f64) -> f64 {
    let kf = k as f64;
    (kf - 2.0) / kf * (1.0 / s).powf(1.0 / (kf - 2.0))
}

/// Classifies critical `y` values at a small `s` by modulus and checks each
/// against its anchor with relative tolerance `tol`.
fn classify_at_anchor(spec: &LGSpec, ys: &[C], tol: f64) -> Result<Vec<CriticalClass>, LgError> {
    let k = spec.k;
    let mut order: Vec<usize> = (0..ys.len()).collect();
    order.sort_by(|&a, &b| ys[a].norm().total_cmp(&ys[b].norm()));
    let mut classes = vec![CriticalClass::III; ys.len()];
    for (rank, &i) in order.iter().enumerate() {
        if rank < 3 {
            classes[i] = CriticalClass::II;
        } else if rank >= ys.len() - (k - 2) {
            classes[i] = CriticalClass::I;
        }
    }
    let kf = k as f64;
    let p = spec.p_poly();
    let p_roots = spec.p_roots()?;
    let r1 = (1.0 / (kf * kf * spec.s)).powf(1.0 / (kf - 2.0));
    let r2 = (spec.s * p.eval(C::new(0.0, 0.0)).norm()).powf(1.0 / 3.0);
    let bad = |i: usize, what: &str| LgError::ClusterCounts {
        expected: format!("{what} near its anchor"),
        got: format!("y = {}", ys[i]),
    };
    for (i, (&y, &c)) in ys.iter().zip(&classes).enumerate() {
        match c {
            CriticalClass::I if (y.norm() / r1 - 1.0).abs() > tol => return Err(bad(i, "type I")),
            CriticalClass::II if (y.norm() / r2 - 1.0).abs() > tol => return Err(bad(i, "type II")),
            CriticalClass::III => {
                let d = p_roots.iter().map(|r| (y - r).norm()).fold(f64::INFINITY, f64::min);
                if d >= y.norm() || d >= r1 - y.norm() {
                    return Err(bad(i, "type III"));
                }
            }
            _ => {}
        }
    }
    Ok(classes)
}

/// Critical points of `f_s` with continuation-based classification.
///
/// `tol` is the relative tolerance of the anchor checks. Requires the
/// default `T(y) = y`.
pub fn critical_set(spec: &LGSpec, tol: f64) -> Result<CriticalSet, LgError> {
    spec.validate()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(LgError::Invalid(format!("tol must be positive, got {tol}")));
    }
    if !spec.is_default_tau() {
        return Err(LgError::Invalid("classification requires T(y) = y".into()));
    }
    let k = spec.k;
    let n = 2 * k + 2;
    let anchor_s = spec.s.min(S_ANCHOR);
    let anchor = spec.with_s(anchor_s);
    let ys0 = roots(&anchor.critical_poly())?;
    if ys0.len() != n {
        return Err(LgError::ClusterCounts { expected: n.to_string(), got: ys0.len().to_string() });
    }
    let classes = classify_at_anchor(&anchor, &ys0, tol)?;
    let ys = if anchor_s == spec.s {
        ys0
    } else {
        let (l0, l1) = (anchor_s.ln(), spec.s.ln());
        let family = |lam: C| spec.with_s((l0 + lam.re * (l1 - l0)).exp()).critical_poly();
        let opts = TrackOptions { max_step: 2e-3, ..Default::default() };
        let tr = track_family(&family, &[C::new(0.0, 0.0), C::new(1.0, 0.0)], ys0, &opts)?;
        tr.end().to_vec()
    };

    let kf = k as f64;
    let r_unc = type_i_radius_uncorrected(k, spec.s);
    let mut points = Vec::with_capacity(n);
    let mut counts = [0; 3];
    let mut threshold_counts = [0; 3];
    let mut real_positive = 0;
    let mut ti = TypeIAsymptotics {
        radius_uncorrected: r_unc,
        radius: type_i_radius(k, spec.s),
        max_rel_err_uncorrected: 0.0,
        max_rel_err: 0.0,
        max_y_plus_ksx: 0.0,
        max_t_vs_y: 0.0,
    };
    for (&y, &class) in ys.iter().zip(&classes) {
        let (x, t) = spec.critical_xt(y);
        let threshold_class = if t.norm() < 0.1 * r_unc {
            CriticalClass::II
        } else if (t + 1.0).norm() < 0.3 {
            CriticalClass::III
        } else {
            CriticalClass::I
        };
        counts[class_index(class)] += 1;
        threshold_counts[class_index(threshold_class)] += 1;
        if y.im.abs() <= 1e-9 * y.norm() && y.re > 0.0 {
            real_positive += 1;
        }
        if class == CriticalClass::I {
            ti.max_rel_err_uncorrected = ti.max_rel_err_uncorrected.max((t.norm() / r_unc - 1.0).abs());
            ti.max_rel_err = ti.max_rel_err.max((t.norm() / ti.radius - 1.0).abs());
            ti.max_y_plus_ksx = ti.max_y_plus_ksx.max((y + kf * spec.s * x).norm() / y.norm());
            ti.max_t_vs_y = ti.max_t_vs_y.max((t - (kf - 2.0) / kf * y).norm() / t.norm());
        }
        points.push(CriticalPoint { y, x, t, class, threshold_class });
    }
    if counts != CriticalSet::expected_counts(k) {
        return Err(LgError::ClusterCounts {
            expected: format!("{:?}", CriticalSet::expected_counts(k)),
            got: format!("{counts:?}"),
        });
    }
    Ok(CriticalSet { k, s: spec.s, points, counts, threshold_counts, real_positive, type_i: ti, anchor_s })
}

/// The real positive type-I critical value.
pub fn real_type_i_value(set: &CriticalSet) -> Option<f64> {
    set.of_class(CriticalClass::I).find(|p| p.y.re > 0.0 && p.y.im.abs() <= 1e-9 * p.y.norm()).map(|p| p.t.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_critical_equations() {
        for k in [3, 5, 7] {
            for s in [1e-2, 1e-3] {
                let spec = LGSpec::new(k, s, 1e-2).unwrap();
                let set = critical_set(&spec, 0.25).unwrap();
                assert_eq!(set.points.len(), 2 * k + 2);
                assert_eq!(set.counts, [k - 2, 3, k + 1]);
                assert_eq!(set.real_positive, 2);
                for p in &set.points {
                    // ∂_x: s x² y = P(y); ∂_y: (y P' - P)/(x y²) + 1 = 0
                    let pv = spec.p_poly().eval(p.y);
                    assert!((s * p.x * p.x * p.y - pv).norm() <= 1e-8 * pv.norm().max(1e-300) + 1e-12);
                    let (v, d) = spec.p_poly().eval_d(p.y);
                    let dy = (p.y * d - v) / (p.x * p.y * p.y) + 1.0;
                    assert!(dy.norm() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn type_i_matches_corrected_radius() {
        let spec = LGSpec::new(5, 1e-12, 1e-2).unwrap();
        let set = critical_set(&spec, 0.25).unwrap();
        assert!(set.type_i.max_rel_err < 0.01);
        assert!(set.type_i.max_t_vs_y < 0.01);
        assert!(set.type_i.max_rel_err_uncorrected > 0.5);
        assert!(set.type_i.max_y_plus_ksx < 0.05);
    }
}
