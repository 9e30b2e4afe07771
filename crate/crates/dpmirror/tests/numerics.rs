//! Properties of the Landau–Ginzburg numerics.

use proptest::prelude::*;

use dpmirror::lg::branch::{full_monodromy, sector_monodromy, MonodromyRegime};
use dpmirror::lg::track::{arc, compose, cycle_type, inverse};
use dpmirror::lg::{
    branch_points, critical_set, newton_polygon_count, roots, sturm_real_roots, track_roots, LGSpec, Poly,
    TrackOptions, C,
};
use dpmirror::report::{emit_trajectories, Params};

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    (1usize..10).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn inverse_composes_to_identity(p in permutation()) {
        let id: Vec<usize> = (0..p.len()).collect();
        prop_assert_eq!(compose(&p, &inverse(&p)), id.clone());
        prop_assert_eq!(compose(&inverse(&p), &p), id);
        prop_assert_eq!(cycle_type(&p).iter().sum::<usize>(), p.len());
    }

    #[test]
    fn composition_is_associative(a in permutation(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut b = a.clone();
        b.shuffle(&mut rng);
        let mut c = a.clone();
        c.shuffle(&mut rng);
        prop_assert_eq!(compose(&compose(&a, &b), &c), compose(&a, &compose(&b, &c)));
        prop_assert_eq!(inverse(&compose(&a, &b)), compose(&inverse(&b), &inverse(&a)));
    }

    #[test]
    fn branch_point_count(k in prop::sample::select(vec![3usize, 5, 7, 9]), ls in -6.0f64..-1.0, t in 0.2f64..5.0, arg in 0.0f64..std::f64::consts::TAU) {
        let spec = LGSpec::new(k, 10f64.powf(ls), 1e-2).unwrap();
        let bp = branch_points(&spec, C::from_polar(t, arg)).unwrap();
        prop_assert_eq!(bp.roots.len(), k + 1);
        prop_assert_eq!(bp.outer.len(), k - 2);
    }
}

/// Real roots of `y^k - (y - t0)²` by plain numerics: companion eigenvalues
/// with a small imaginary part.
fn numeric_real_count(k: usize, t0: f64) -> usize {
    let mut c = vec![C::new(0.0, 0.0); k + 1];
    c[k] = C::new(1.0, 0.0);
    c[2] -= 1.0;
    c[1] += 2.0 * t0;
    c[0] -= t0 * t0;
    roots(&Poly::new(c)).unwrap().iter().filter(|z| z.im.abs() < 1e-9).count()
}

#[test]
fn sturm_agrees_with_numeric_count() {
    for k in [3, 5, 7, 9, 11] {
        let locus = dpmirror::lg::sturm::t_double_root_locus(k);
        for j in 1..=40 {
            let t0 = 0.025 * j as f64;
            if (t0 / locus - 1.0).abs() < 1e-3 {
                continue;
            }
            let c = sturm_real_roots(k, t0).unwrap();
            assert_eq!(c.distinct, numeric_real_count(k, t0), "k = {k}, t0 = {t0}");
            assert_eq!(c.distinct, if t0 < locus { 3 } else { 1 }, "k = {k}, t0 = {t0}");
        }
    }
}

#[test]
fn critical_count_matches_newton_polygon() {
    for k in [3, 5, 7, 9] {
        let two_volume = newton_polygon_count(k).two_volume;
        for s in [1e-2, 3e-3, 1e-3] {
            for delta in [1e-2, 5e-2] {
                let set = critical_set(&LGSpec::new(k, s, delta).unwrap(), 0.25).unwrap();
                assert_eq!(set.points.len(), two_volume, "k = {k}, s = {s}, delta = {delta}");
                assert_eq!(set.counts, [k - 2, 3, k + 1]);
            }
        }
    }
}

#[test]
fn constant_path_is_identity() {
    let spec = LGSpec::new(5, 1e-3, 1e-2).unwrap();
    let tr = track_roots(&spec, &[C::new(0.7, 0.2); 5], &TrackOptions::default()).unwrap();
    assert_eq!(tr.permutation, (0..6).collect::<Vec<_>>());
    assert!(tr.collisions.is_empty());
}

#[test]
fn reversed_loop_inverts_permutation() {
    let spec = LGSpec::new(5, 1e-14, 1e-2).unwrap();
    let r = 0.3 * dpmirror::lg::critical::type_i_radius(5, spec.s);
    let fwd = arc(r, 0.0, -std::f64::consts::TAU, 256);
    let mut back = fwd.clone();
    back.reverse();
    let a = track_roots(&spec, &fwd, &TrackOptions::default()).unwrap();
    let b = track_roots(&spec, &back, &TrackOptions::default()).unwrap();
    assert_ne!(a.permutation, (0..6).collect::<Vec<_>>());
    assert_eq!(b.permutation, inverse(&a.permutation));
}

#[test]
fn sectors_compose_to_full_loop() {
    for k in [5, 7] {
        let spec = LGSpec::new(k, 1e-2, 1e-2).unwrap();
        let reg = MonodromyRegime::default();
        let sec = sector_monodromy(&spec, &reg).unwrap();
        let full = full_monodromy(&spec, &reg).unwrap();
        assert!(sec.twins_swapped && sec.near_zero_fixed && sec.outer_cyclic);
        assert_eq!(full.composed, full.permutation);
        assert!(full.is_twin_transposition && full.reverse_is_inverse);
        assert_eq!(cycle_type(&full.permutation).iter().filter(|&&c| c > 1).collect::<Vec<_>>(), vec![&2]);
    }
}

fn read_rows(bytes: &[u8]) -> Vec<Vec<f64>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(bytes)
        .records()
        .map(|r| r.unwrap().iter().skip(1).map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn reversed_path_file_is_forward_file_reversed() {
    let base = Params { k: Some(5), steps: Some(96), theta: Some(std::f64::consts::PI), ..Default::default() };
    let (mut f, mut b) = (Vec::new(), Vec::new());
    emit_trajectories(&base, &mut f).unwrap();
    emit_trajectories(&Params { reverse: Some(true), ..base }, &mut b).unwrap();
    let mut fwd = read_rows(&f);
    let back = read_rows(&b);
    fwd.reverse();
    assert_eq!(fwd.len(), back.len());
    let n = (fwd[0].len() - 2) / 2;
    let at = |row: &[f64], i: usize| C::new(row[2 + 2 * i], row[3 + 2 * i]);
    // columns of the reversed file are labelled by its own start point
    let cols: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .min_by(|&a, &c| {
                    (at(&fwd[0], a) - at(&back[0], i)).norm().total_cmp(&(at(&fwd[0], c) - at(&back[0], i)).norm())
                })
                .unwrap()
        })
        .collect();
    for (rf, rb) in fwd.iter().zip(&back) {
        assert!((C::new(rf[0], rf[1]) - C::new(rb[0], rb[1])).norm() <= 1e-9 * rf[0].hypot(rf[1]));
        for (i, &j) in cols.iter().enumerate() {
            let (x, y) = (at(rf, j), at(rb, i));
            assert!((x - y).norm() <= 1e-9 * x.norm().max(1.0), "{x} vs {y}");
        }
    }
}
