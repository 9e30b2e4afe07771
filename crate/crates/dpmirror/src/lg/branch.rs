//! Branch points of the projection of a fiber `f_s = t` to the `y`-line and
//! their monodromy as `t` moves.

use std::f64::consts::TAU;

use serde::Serialize;

use super::critical::{critical_set, real_type_i_value};
use super::poly::C;
use super::track::{arc, canonical_roots, compose, identify, track_family, track_roots, RootTrajectory, TrackOptions};
use super::{LGSpec, LgError};

#[derive(Debug, Clone, Serialize)]
pub struct BranchPoints {
    pub t: C,
    /// Roots of `P - y(T - t)²/(4s)`, sorted by real then imaginary part.
    pub roots: Vec<C>,
    pub near_zero: usize,
    /// Indices of the two roots nearest to `t`, the first with smaller real part.
    pub twins: [usize; 2],
    pub outer: Vec<usize>,
    /// Geometric mean of the outer moduli.
    pub outer_radius: f64,
    /// `(1/(4s))^{1/(k-2)}`.
    pub predicted_outer_radius: f64,
    /// Whether the clusters are separated by modulus (near-zero < twins < outer).
    pub separated: bool,
    /// Whether `1/s ≫ |t| ≫ 0` holds by two orders of magnitude.
    pub in_regime: bool,
}

pub fn predicted_outer_radius(k: usize, s: f64) -> f64 {
    (1.0 / (4.0 * s)).powf(1.0 / (k as f64 - 2.0))
}

/// Classifies a root list of the branch polynomial at `t`.
pub fn classify_branch(spec: &LGSpec, t: C, roots: Vec<C>) -> Result<BranchPoints, LgError> {
    let k = spec.k;
    if roots.len() != k + 1 {
        return Err(LgError::ClusterCounts { expected: (k + 1).to_string(), got: roots.len().to_string() });
    }
    let near_zero = (0..roots.len()).min_by(|&a, &b| roots[a].norm().total_cmp(&roots[b].norm())).expect("roots");
    let mut rest: Vec<usize> = (0..roots.len()).filter(|&i| i != near_zero).collect();
    rest.sort_by(|&a, &b| (roots[a] - t).norm().total_cmp(&(roots[b] - t).norm()));
    let mut twins = [rest[0], rest[1]];
    if roots[twins[0]].re > roots[twins[1]].re {
        twins.swap(0, 1);
    }
    let outer: Vec<usize> = rest[2..].to_vec();
    let outer_radius = (outer.iter().map(|&i| roots[i].norm().ln()).sum::<f64>() / outer.len() as f64).exp();
    let twin_max = twins.iter().map(|&i| roots[i].norm()).fold(0.0, f64::max);
    let twin_min = twins.iter().map(|&i| roots[i].norm()).fold(f64::INFINITY, f64::min);
    let outer_min = outer.iter().map(|&i| roots[i].norm()).fold(f64::INFINITY, f64::min);
    let separated = roots[near_zero].norm() < twin_min && twin_max < outer_min;
    let in_regime = t.norm() * 100.0 < 1.0 / spec.s && t.norm() > 100.0 * roots[near_zero].norm();
    Ok(BranchPoints {
        t,
        roots,
        near_zero,
        twins,
        outer,
        outer_radius,
        predicted_outer_radius: predicted_outer_radius(k, spec.s),
        separated,
        in_regime,
    })
}

pub fn branch_points(spec: &LGSpec, t: C) -> Result<BranchPoints, LgError> {
    spec.validate()?;
    let roots = canonical_roots(&spec.branch_poly(t))?;
    classify_branch(spec, t, roots)
}

/// Outer radius measured at `t = sqrt(R)` with `R = (1/(4s))^{1/(k-2)}`,
/// which keeps `|t|` away from both ends of the regime.
pub fn outer_radius_check(spec: &LGSpec) -> Result<BranchPoints, LgError> {
    let r = predicted_outer_radius(spec.k, spec.s);
    branch_points(spec, C::new(r.sqrt(), 0.0))
}

/// Parameters for monodromy around the origin.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MonodromyRegime {
    pub s: f64,
    /// `|t|` as a fraction of the type-I critical radius.
    pub fraction: f64,
    /// Points per sector.
    pub samples: usize,
}

impl Default for MonodromyRegime {
    fn default() -> Self {
        Self { s: 1e-14, fraction: 0.3, samples: 256 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SectorMonodromy {
    pub k: usize,
    pub t0: C,
    pub start: BranchPoints,
    /// Label `i` ends near `ω · start[perm[i]]`, `ω = e^{-2πi/(k-2)}`.
    pub rotated_permutation: Vec<usize>,
    pub twins_swapped: bool,
    pub near_zero_fixed: bool,
    /// Outer roots map to outer roots by a single cycle.
    pub outer_cyclic: bool,
    pub steps: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullMonodromy {
    pub k: usize,
    pub t0: C,
    pub start: BranchPoints,
    /// Tracked permutation of the full loop.
    pub permutation: Vec<usize>,
    /// Composition of the tracked sector permutations.
    pub composed: Vec<usize>,
    /// Half-turns of `(y_b - y_a)/t` for the twin pair along the loop; each
    /// half-turn is one interchange of the twins relative to `t`.
    pub twin_half_turns: f64,
    pub sectors: usize,
    /// Twins transposed and every other root fixed.
    pub is_twin_transposition: bool,
    /// Reversed loop yields the inverse permutation.
    pub reverse_is_inverse: bool,
    pub steps: usize,
}

fn regime_spec(spec: &LGSpec, reg: &MonodromyRegime) -> Result<(LGSpec, f64), LgError> {
    let sp = spec.with_s(reg.s);
    sp.validate()?;
    let k = sp.k as f64;
    let r_i = (k - 2.0) / k * (1.0 / (k * k * reg.s)).powf(1.0 / (k - 2.0));
    Ok((sp, reg.fraction * r_i))
}

fn opts() -> TrackOptions {
    TrackOptions { max_step: f64::INFINITY, ..Default::default() }
}

/// Tracks `t ↦ t e^{-iθ}` for `θ` from 0 to `2π/(k-2)` and identifies end roots
/// with start roots after undoing the rotation.
pub fn sector_monodromy(spec: &LGSpec, reg: &MonodromyRegime) -> Result<SectorMonodromy, LgError> {
    let (sp, r) = regime_spec(spec, reg)?;
    let k = sp.k;
    let theta = TAU / (k as f64 - 2.0);
    let path = arc(r, 0.0, -theta, reg.samples);
    let tr = track_roots(&sp, &path, &opts())?;
    let start = classify_branch(&sp, path[0], tr.start().to_vec())?;
    let w = C::from_polar(1.0, theta);
    let perm = tr.identify(tr.start(), |z| z * w).ok_or_else(|| LgError::Ambiguous {
        step: tr.roots.len(),
        t: format!("{}", path[reg.samples]),
        detail: "rotated end roots do not match start roots".into(),
    })?;
    let [a, b] = start.twins;
    let twins_swapped = perm[a] == b && perm[b] == a;
    let near_zero_fixed = perm[start.near_zero] == start.near_zero;
    let outer_cyclic = {
        let o = &start.outer;
        let maps_outer = o.iter().all(|i| o.contains(&perm[*i]));
        let mut len = 1;
        let mut j = perm[o[0]];
        while j != o[0] && len <= o.len() {
            j = perm[j];
            len += 1;
        }
        maps_outer && len == o.len()
    };
    Ok(SectorMonodromy {
        k,
        t0: path[0],
        start,
        rotated_permutation: perm,
        twins_swapped,
        near_zero_fixed,
        outer_cyclic,
        steps: tr.roots.len(),
    })
}

/// Full loop `|t| = r`, tracked once and as `k - 2` sectors whose permutations are composed.
pub fn full_monodromy(spec: &LGSpec, reg: &MonodromyRegime) -> Result<FullMonodromy, LgError> {
    let (sp, r) = regime_spec(spec, reg)?;
    let k = sp.k;
    let sectors = k - 2;
    let theta = TAU / sectors as f64;
    let family = |t: C| sp.branch_poly(t);

    let path = arc(r, 0.0, -TAU, reg.samples * sectors);
    let tr = track_roots(&sp, &path, &opts())?;
    let start = classify_branch(&sp, path[0], tr.start().to_vec())?;

    let mut composed: Vec<usize> = (0..k + 1).collect();
    let mut steps = tr.roots.len();
    let mut boundary = tr.start().to_vec();
    for j in 0..sectors {
        let seg = arc(r, -theta * j as f64, -theta * (j + 1) as f64, reg.samples);
        let seg_tr: RootTrajectory = track_family(&family, &seg, boundary.clone(), &opts())?;
        steps += seg_tr.roots.len();
        let next = if j + 1 == sectors { tr.start().to_vec() } else { canonical_roots(&family(seg[reg.samples]))? };
        let p = identify(seg_tr.end(), &next, |z| z).ok_or_else(|| LgError::Ambiguous {
            step: j,
            t: format!("{}", seg[reg.samples]),
            detail: "sector boundary identification".into(),
        })?;
        composed = compose(&p, &composed);
        boundary = next;
    }

    let rev: Vec<C> = path.iter().rev().copied().collect();
    let rev_tr = track_family(&family, &rev, tr.start().to_vec(), &opts())?;
    steps += rev_tr.roots.len();
    let perm = tr.permutation.clone();
    let reverse_is_inverse = !perm.is_empty() && compose(&rev_tr.permutation, &perm) == (0..k + 1).collect::<Vec<_>>();
    let [a, b] = start.twins;
    let mut winding = 0.0;
    let rel = |i: usize| (tr.roots[i][b] - tr.roots[i][a]) / tr.t_path[i];
    for i in 1..tr.roots.len() {
        winding += (rel(i) / rel(i - 1)).arg();
    }
    let twin_half_turns = winding / std::f64::consts::PI;
    let is_twin_transposition =
        perm.len() == k + 1 && perm[a] == b && perm[b] == a && (0..k + 1).all(|i| i == a || i == b || perm[i] == i);
    Ok(FullMonodromy {
        k,
        t0: path[0],
        start,
        permutation: perm,
        composed,
        twin_half_turns,
        sectors,
        is_twin_transposition,
        reverse_is_inverse,
        steps,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RadialCollision {
    pub k: usize,
    pub s: f64,
    pub t0: f64,
    /// Real positive type-I critical value.
    pub t_critical: f64,
    /// `t` values approaching `t_critical` geometrically.
    pub t_samples: Vec<f64>,
    /// Distance from the larger twin to the outer real branch point at each sample.
    pub distances: Vec<f64>,
    pub monotone: bool,
    /// First `t` at which the distance fell below `dist_tol`.
    pub t_detected: Option<f64>,
    /// `|t_detected - t_critical| / |t_critical - t0|`.
    pub detection_gap: Option<f64>,
    /// Largest imaginary part of the twins and the target along the path.
    pub max_imag: f64,
    /// Smaller twin stayed below the larger one.
    pub order_kept: bool,
    pub dist_tol: f64,
}

/// Tracks along the real axis from `t0` towards the real type-I critical value.
pub fn radial_collision(spec: &LGSpec, t0: f64) -> Result<RadialCollision, LgError> {
    let set = critical_set(spec, 0.25)?;
    let tc = real_type_i_value(&set).ok_or_else(|| LgError::Invalid("no real type-I critical value".into()))?;
    if !(t0 > 0.0 && t0 < tc) {
        return Err(LgError::Invalid(format!("t0 must lie in (0, {tc}), got {t0}")));
    }
    let start = branch_points(spec, C::new(t0, 0.0))?;
    let mut t_samples = vec![t0];
    let mut j = 1;
    loop {
        let t = tc - (tc - t0) * 0.5f64.powi(j);
        t_samples.push(t);
        if (tc - t) <= 1e-7 * (tc - t0) {
            break;
        }
        j += 1;
    }
    let path: Vec<C> = t_samples.iter().map(|&t| C::new(t, 0.0)).collect();
    let opts = TrackOptions { max_step: f64::INFINITY, abort_on_collision: false, ..Default::default() };
    let tr = track_family(&|t| spec.branch_poly(t), &path, start.roots.clone(), &opts)?;
    let [small, large] = start.twins;
    let target = *start
        .outer
        .iter()
        .max_by(|&&a, &&b| start.roots[a].re.total_cmp(&start.roots[b].re))
        .ok_or_else(|| LgError::ClusterCounts { expected: "an outer root".into(), got: "none".into() })?;

    // the tracker inserts intermediate steps; sample at the requested t values
    let mut distances = Vec::new();
    let mut max_imag: f64 = 0.0;
    let mut order_kept = true;
    let mut next = 0;
    for (t, row) in tr.t_path.iter().zip(&tr.roots) {
        max_imag = max_imag.max(row[small].im.abs()).max(row[large].im.abs()).max(row[target].im.abs());
        order_kept &= row[small].re < row[large].re;
        if next < t_samples.len() && (t.re - t_samples[next]).abs() <= 1e-12 * tc {
            distances.push((row[large] - row[target]).norm());
            next += 1;
        }
    }
    let monotone = distances.windows(2).all(|w| w[1] < w[0]);
    let dist_tol = 1e-2 * distances[0];
    let t_detected = distances.iter().position(|&d| d < dist_tol).map(|i| t_samples[i]);
    let detection_gap = t_detected.map(|t| (tc - t).abs() / (tc - t0));
    Ok(RadialCollision {
        k: spec.k,
        s: spec.s,
        t0,
        t_critical: tc,
        t_samples,
        distances,
        monotone,
        t_detected,
        detection_gap,
        max_imag,
        order_kept,
        dist_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_counts() {
        for k in [3, 5, 7] {
            let spec = LGSpec::new(k, 1e-3, 1e-2).unwrap();
            let bp = branch_points(&spec, C::new(2.0, 0.5)).unwrap();
            assert_eq!(bp.roots.len(), k + 1);
            assert_eq!(bp.outer.len(), k - 2);
        }
    }

    #[test]
    fn sector_swaps_twins() {
        let spec = LGSpec::new(5, 1e-2, 1e-2).unwrap();
        let m = sector_monodromy(&spec, &MonodromyRegime::default()).unwrap();
        assert!(m.twins_swapped && m.near_zero_fixed && m.outer_cyclic, "{:?}", m.rotated_permutation);
    }
}
