//! Continuation of polynomial roots along a path in parameter space.

use serde::Serialize;

use super::poly::{roots, roots_from, Poly, C};
use super::{LGSpec, LgError};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrackOptions {
    /// Largest step in the parameter.
    pub max_step: f64,
    /// Below this step size a failed separation test is recorded as a collision.
    pub min_step: f64,
    /// A step is accepted when each root's distance to its nearest neighbour
    /// exceeds `safety` times its displacement.
    pub safety: f64,
    /// Fail instead of recording collisions.
    pub abort_on_collision: bool,
    pub max_steps: usize,
}

impl Default for TrackOptions {
    fn default() -> Self {
        Self { max_step: 1e-2, min_step: 1e-12, safety: 4.0, abort_on_collision: true, max_steps: 2_000_000 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Collision {
    pub step: usize,
    pub t: [f64; 2],
    pub pair: (usize, usize),
    pub separation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootTrajectory {
    /// Parameter values at accepted steps.
    pub t_path: Vec<C>,
    /// `roots[step][label]`, labels fixed by the starting order.
    pub roots: Vec<Vec<C>>,
    /// Label `i` ends at the position of start root `permutation[i]` (for
    /// closed paths) or end root `permutation[i]` of the canonical ordering.
    pub permutation: Vec<usize>,
    pub collisions: Vec<Collision>,
    /// Rows that sit exactly on a vertex of the requested path.
    pub nodes: Vec<usize>,
}

impl RootTrajectory {
    pub fn start(&self) -> &[C] {
        &self.roots[0]
    }

    pub fn end(&self) -> &[C] {
        self.roots.last().expect("nonempty trajectory")
    }

    /// For each label, the index of the target root nearest to `map(end)`.
    /// `None` when the nearest match is not clearly separated or not bijective.
    pub fn identify(&self, targets: &[C], map: impl Fn(C) -> C) -> Option<Vec<usize>> {
        identify(self.end(), targets, map)
    }

    /// Wide CSV: `step, t_re, t_im, root_0_re, root_0_im, ...`, preceded by a
    /// `# permutation=...` comment line.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> csv::Result<()> {
        let perm: Vec<String> = self.permutation.iter().map(|p| p.to_string()).collect();
        writeln!(w, "# permutation={}", perm.join(" "))?;
        let mut wr = csv::Writer::from_writer(w);
        let n = self.roots.first().map_or(0, |r| r.len());
        let mut header = vec!["step".to_string(), "t_re".into(), "t_im".into()];
        for i in 0..n {
            header.push(format!("root_{i}_re"));
            header.push(format!("root_{i}_im"));
        }
        wr.write_record(&header)?;
        for (step, (t, row)) in self.t_path.iter().zip(&self.roots).enumerate() {
            let mut rec = vec![step.to_string(), format!("{:e}", t.re), format!("{:e}", t.im)];
            for z in row {
                rec.push(format!("{:e}", z.re));
                rec.push(format!("{:e}", z.im));
            }
            wr.write_record(&rec)?;
        }
        wr.flush()?;
        Ok(())
    }
}

/// Nearest-neighbour identification with a margin test.
pub fn identify(points: &[C], targets: &[C], map: impl Fn(C) -> C) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(points.len());
    for &z in points {
        let w = map(z);
        let mut d: Vec<(f64, usize)> = targets.iter().enumerate().map(|(j, &t)| ((t - w).norm(), j)).collect();
        d.sort_by(|a, b| a.0.total_cmp(&b.0));
        if d.len() > 1 && d[0].0 > 0.25 * d[1].0 {
            return None;
        }
        out.push(d[0].1);
    }
    let mut seen = out.clone();
    seen.sort_unstable();
    seen.dedup();
    (seen.len() == out.len()).then_some(out)
}

/// Roots sorted by real part, then imaginary part.
pub fn canonical_roots(p: &Poly) -> Result<Vec<C>, LgError> {
    let mut r = roots(p)?;
    r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(r)
}

/// Greedy matching of `new` to `old` by increasing distance.
fn match_roots(old: &[C], new: &[C]) -> Vec<C> {
    let n = old.len();
    let mut pairs: Vec<(f64, usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| ((old[i] - new[j]).norm(), i, j)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = vec![None; n];
    let mut used = vec![false; n];
    for (_, i, j) in pairs {
        if out[i].is_none() && !used[j] {
            out[i] = Some(new[j]);
            used[j] = true;
        }
    }
    out.into_iter().map(|z| z.expect("complete matching")).collect()
}

/// Every root must move less than `1/safety` of its distance to the nearest
/// other root. Returns the verdict and the worst pair with its separation.
fn step_is_safe(old: &[C], new: &[C], safety: f64) -> (bool, f64, (usize, usize)) {
    let mut ok = true;
    let mut worst = (f64::INFINITY, 0.0, (0, 0));
    for i in 0..old.len() {
        let (sep, j) = (0..old.len())
            .filter(|&j| j != i)
            .map(|j| ((old[i] - old[j]).norm(), j))
            .fold((f64::INFINITY, i), |a, b| if b.0 < a.0 { b } else { a });
        let disp = (new[i] - old[i]).norm();
        if sep <= safety * disp {
            ok = false;
        }
        let ratio = disp / sep;
        if ratio > worst.1 || worst.0 == f64::INFINITY {
            worst = (sep, ratio, (i.min(j), i.max(j)));
        }
    }
    (ok, worst.0, worst.2)
}

/// Tracks the roots of `family(t)` along the polyline `path`, starting from `start`.
pub fn track_family(
    family: &dyn Fn(C) -> Poly,
    path: &[C],
    start: Vec<C>,
    opts: &TrackOptions,
) -> Result<RootTrajectory, LgError> {
    if path.is_empty() {
        return Err(LgError::Invalid("empty path".into()));
    }
    let mut cur = start;
    let mut t_path = vec![path[0]];
    let mut all = vec![cur.clone()];
    let mut collisions = Vec::new();
    let mut steps = 0usize;
    let mut nodes = vec![0];
    for seg in path.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let len = (b - a).norm();
        if len == 0.0 {
            t_path.push(b);
            all.push(cur.clone());
            nodes.push(all.len() - 1);
            continue;
        }
        let hmax = (opts.max_step / len).min(1.0);
        let mut h = hmax;
        let mut lam = 0.0;
        while lam < 1.0 {
            steps += 1;
            if steps > opts.max_steps {
                return Err(LgError::Ambiguous {
                    step: all.len(),
                    t: format!("{}", a + (b - a) * lam),
                    detail: "step budget exhausted".into(),
                });
            }
            let nl = (lam + h).min(1.0);
            let t = if nl == 1.0 { b } else { a + (b - a) * nl };
            let new = match_roots(&cur, &roots_from(&family(t), &cur)?);
            let (ok, sep, pair) = step_is_safe(&cur, &new, opts.safety);
            if ok || (nl - lam) * len <= opts.min_step {
                if !ok {
                    if opts.abort_on_collision {
                        return Err(LgError::Ambiguous {
                            step: all.len(),
                            t: format!("{t}"),
                            detail: format!("roots {} and {} within {sep:e}", pair.0, pair.1),
                        });
                    }
                    collisions.push(Collision { step: all.len(), t: [t.re, t.im], pair, separation: sep });
                }
                cur = new;
                t_path.push(t);
                all.push(cur.clone());
                lam = nl;
                h = (h * 2.0).min(hmax);
                if lam == 1.0 {
                    nodes.push(all.len() - 1);
                }
            } else {
                h /= 2.0;
            }
        }
    }
    let end = *t_path.last().expect("nonempty");
    let targets = if (end - path[0]).norm() <= 1e-12 * (1.0 + end.norm()) {
        all[0].clone()
    } else {
        canonical_roots(&family(end))?
    };
    let permutation = identify(&cur, &targets, |z| z).unwrap_or_default();
    Ok(RootTrajectory { t_path, roots: all, permutation, collisions, nodes })
}

/// Tracks the branch points of the fiber over `t` along `t_path`.
pub fn track_roots(spec: &LGSpec, t_path: &[C], opts: &TrackOptions) -> Result<RootTrajectory, LgError> {
    let start = canonical_roots(&spec.branch_poly(t_path[0]))?;
    track_family(&|t| spec.branch_poly(t), t_path, start, opts)
}

/// Cycle type of a permutation, sorted descending.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// `(a ∘ b)[i] = a[b[i]]`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

/// Points on the circle `|t| = r` from angle `a0` to `a1`.
pub fn arc(r: f64, a0: f64, a1: f64, n: usize) -> Vec<C> {
    (0..=n).map(|i| C::from_polar(r, a0 + (a1 - a0) * i as f64 / n as f64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_monodromy() {
        // roots of y² - t swap around the origin
        let family = |t: C| Poly::new(vec![-t, C::new(0.0, 0.0), C::new(1.0, 0.0)]);
        let path = arc(1.0, 0.0, std::f64::consts::TAU, 64);
        let start = canonical_roots(&family(path[0])).unwrap();
        let tr = track_family(&family, &path, start, &TrackOptions::default()).unwrap();
        assert_eq!(tr.permutation, vec![1, 0]);
        let half = arc(1.0, 0.0, std::f64::consts::PI, 64);
        let start = canonical_roots(&family(half[0])).unwrap();
        let tr = track_family(&family, &half, start, &TrackOptions::default()).unwrap();
        assert!(tr.collisions.is_empty());
    }

    #[test]
    fn collision_is_recorded() {
        let family = |t: C| Poly::new(vec![-t, C::new(0.0, 0.0), C::new(1.0, 0.0)]);
        let path = [C::new(1.0, 0.0), C::new(-1.0, 0.0)];
        let start = canonical_roots(&family(path[0])).unwrap();
        let opts = TrackOptions { abort_on_collision: false, min_step: 1e-6, ..Default::default() };
        let tr = track_family(&family, &path, start.clone(), &opts).unwrap();
        assert!(!tr.collisions.is_empty());
        let strict = TrackOptions { min_step: 1e-6, ..Default::default() };
        assert!(track_family(&family, &path, start, &strict).is_err());
    }

    #[test]
    fn permutation_algebra() {
        let a = vec![1, 2, 0, 3];
        assert_eq!(compose(&a, &inverse(&a)), vec![0, 1, 2, 3]);
        assert_eq!(cycle_type(&a), vec![3, 1]);
    }
}
