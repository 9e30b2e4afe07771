//! Properties of the path algebras with relations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use dpmirror::quiver::{
    default_points, fukaya_quiver, hom_dims, hom_dims_bruteforce, hom_dims_with_seed, mckay_quiver,
    normalize_constants, points_from_q, values_with_q, xk_quiver, xk_quiver_symbolic, FukayaForm, PathSpace,
};

fn ri(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn dynamic_programme_matches_bruteforce() {
    for k in [5, 7, 9] {
        let q = xk_quiver(k, &default_points(k)).unwrap();
        assert_eq!(hom_dims(&q).unwrap(), hom_dims_bruteforce(&q).unwrap(), "k = {k}");
    }
    let m = mckay_quiver(7).unwrap();
    assert_eq!(hom_dims(&m).unwrap(), hom_dims_bruteforce(&m).unwrap());
}

#[test]
fn normalization_preserves_hom_dims() {
    for k in [5, 7] {
        let f = fukaya_quiver(k, FukayaForm::Derived).unwrap();
        let n = normalize_constants(&f).unwrap();
        assert_eq!(hom_dims_with_seed(&f, 3).unwrap(), hom_dims_with_seed(&n.quiver, 3).unwrap(), "k = {k}");
    }
}

#[test]
fn explicit_constants_give_points_minus_j() {
    let f = fukaya_quiver(5, FukayaForm::Derived).unwrap();
    let n = normalize_constants(&f).unwrap();
    let q1: Vec<BigRational> = (1..=6).map(ri).collect();
    let vals = values_with_q(&n.quiver, &q1, 11);
    for (j, (a, b)) in n.points.iter().enumerate() {
        let ratio = b.evaluate(&vals).unwrap() / a.evaluate(&vals).unwrap();
        assert_eq!(ratio, ri(-(j as i64 + 1)));
    }
    let special = xk_quiver(5, &points_from_q(&q1)).unwrap();
    assert_eq!(hom_dims(&special).unwrap(), hom_dims(&xk_quiver(5, &default_points(5)).unwrap()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hom_dims_independent_of_specialization(a in 0u64..1000, b in 1000u64..2000) {
        let q = xk_quiver_symbolic(5).unwrap();
        prop_assert_eq!(hom_dims_with_seed(&q, a).unwrap(), hom_dims_with_seed(&q, b).unwrap());
    }

    /// Reducing short paths against the relation ideal gives the same normal
    /// form whatever order the eliminations are applied in.
    #[test]
    fn reduction_is_confluent(order_seed in any::<u64>(), k in prop::sample::select(vec![5usize, 7])) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let q = xk_quiver(k, &default_points(k)).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(order_seed);
        for s in 0..q.vertices.len() {
            for t in s..q.vertices.len() {
                let space = PathSpace::new(&q, s, t).unwrap();
                let mut order: Vec<usize> = (0..space.pivots.len()).collect();
                order.shuffle(&mut rng);
                for (i, p) in space.paths.iter().enumerate() {
                    if p.len() > 5 {
                        continue;
                    }
                    let mut v = vec![BigRational::zero(); space.paths.len()];
                    v[i] = ri(1);
                    prop_assert_eq!(space.reduce_in_order(&v, &order), space.normal_form(&v));
                }
            }
        }
    }
}
