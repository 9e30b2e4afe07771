//! Properties of the singularity combinatorics and the mutation calculus.

#![allow(clippy::needless_range_loop)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use dpmirror::cqs::{coprime_pairs, hj_expand, hj_value, order_map, p_sequence, CQSDescriptor};
use dpmirror::lattice::{pair, xk_fiber_basis, FiberBasis, HomologyClass};
use dpmirror::mutation::{
    l_collection, left_dual, mutate_left, mutate_right, path_sum_lemma, seifert_gram, ExceptionalSequence,
};
use dpmirror::quiver::{euler_gram, mckay_quiver};

#[test]
fn descriptors_exhaustive_to_200() {
    for (n, q) in coprime_pairs(200) {
        let d = CQSDescriptor::new(n, q).unwrap();
        assert!(d.check_invariants(), "{n}/{q}");
        assert_eq!(hj_value(&d.b), BigRational::new(BigInt::from(n), BigInt::from(q)));
        assert!(d.b.iter().all(|&b| b >= 2));
        assert_eq!(d.i_series.len(), d.b.len() + 1);
        assert!(d.i_series.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(*d.i_series.last().unwrap(), 0);
        let p = p_sequence(n, q).unwrap();
        assert!(p.iter().all(|&x| x <= n) && p.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn order_map_is_order_preserving_on_special_residues() {
    for (n, q) in coprime_pairs(200) {
        let m = order_map(n, q).unwrap();
        for a in &m {
            for b in &m {
                assert_eq!(a.0 < b.0, a.1 < b.1, "{n}/{q}: {a:?} {b:?}");
            }
        }
    }
}

#[test]
fn q_one_has_two_special_residues() {
    for n in 2..60 {
        let d = CQSDescriptor::new(n, 1).unwrap();
        assert_eq!(d.i_series, vec![1, 0]);
        assert_eq!(d.non_special(), (2..n).collect::<Vec<_>>());
    }
}

#[test]
fn hj_rejects_non_coprime() {
    assert!(hj_expand(6, 2).is_err());
    assert!(hj_expand(5, 5).is_err());
}

fn random_sequence(basis: &Arc<FiberBasis>, coeffs: &[Vec<i64>]) -> ExceptionalSequence {
    let classes = coeffs.iter().map(|c| HomologyClass::from_ints(basis, c).unwrap()).collect();
    ExceptionalSequence::new(basis, classes).unwrap()
}

fn pair_matrix(seq: &ExceptionalSequence) -> Vec<Vec<BigInt>> {
    seq.classes.iter().map(|a| seq.classes.iter().map(|b| pair(a, b).unwrap()).collect()).collect()
}

fn seq_strategy(rank: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (prop::collection::vec(prop::collection::vec(-3i64..=3, rank), 2..7)).prop_flat_map(|v| {
        let n = v.len();
        (Just(v), 1..n)
    })
}

proptest! {
    #[test]
    fn left_then_right_is_identity((coeffs, i) in seq_strategy(6)) {
        let basis = xk_fiber_basis(5).unwrap();
        let s = random_sequence(&basis, &coeffs);
        prop_assert_eq!(mutate_right(&mutate_left(&s, i).unwrap(), i).unwrap(), s.clone());
        prop_assert_eq!(mutate_left(&mutate_right(&s, i).unwrap(), i).unwrap(), s);
    }

    #[test]
    fn pairing_is_bilinear_and_antisymmetric(
        a in prop::collection::vec(-5i64..=5, 8),
        b in prop::collection::vec(-5i64..=5, 8),
        c in prop::collection::vec(-5i64..=5, 8),
        m in -4i64..=4,
    ) {
        let basis = xk_fiber_basis(7).unwrap();
        let (a, b, c) = [a, b, c].map(|v| HomologyClass::from_ints(&basis, &v).unwrap()).into();
        prop_assert_eq!(pair(&a, &b).unwrap(), -pair(&b, &a).unwrap());
        let lhs = pair(&a.add_scaled(&BigInt::from(m), &c).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, pair(&a, &b).unwrap() + BigInt::from(m) * pair(&c, &b).unwrap());
    }

    /// A left mutation at `i` changes the basis by an elementary matrix `M`;
    /// the pairing matrix becomes `M G Mᵀ` and the Seifert form is its unit
    /// upper triangle.
    #[test]
    fn seifert_form_transforms_by_conjugation((coeffs, i) in seq_strategy(6)) {
        let basis = xk_fiber_basis(5).unwrap();
        let s = random_sequence(&basis, &coeffs);
        let n = s.len();
        let g = pair_matrix(&s);
        let p = &g[i - 1][i];
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (j, row) in m.iter_mut().enumerate() {
            if j != i - 1 && j != i {
                row[j] = BigInt::one();
            }
        }
        m[i - 1][i - 1] = -p;
        m[i - 1][i] = BigInt::one();
        m[i][i - 1] = BigInt::one();
        let mg: Vec<Vec<BigInt>> = (0..n).map(|a| (0..n).map(|b| (0..n).map(|c| &m[a][c] * &g[c][b]).sum()).collect()).collect();
        let conj: Vec<Vec<BigInt>> = (0..n).map(|a| (0..n).map(|b| (0..n).map(|c| &mg[a][c] * &m[b][c]).sum()).collect()).collect();
        let mutated = mutate_left(&s, i).unwrap();
        prop_assert_eq!(&pair_matrix(&mutated), &conj);
        let sg = seifert_gram(&mutated).unwrap();
        for a in 0..n {
            for b in 0..n {
                let want = match a.cmp(&b) {
                    std::cmp::Ordering::Less => conj[a][b].clone(),
                    std::cmp::Ordering::Equal => BigInt::one(),
                    std::cmp::Ordering::Greater => BigInt::zero(),
                };
                prop_assert_eq!(&sg.entries[a][b], &want);
            }
        }
    }

    #[test]
    fn descriptor_invariants_random(n in 2u64..2000, q in 1u64..2000) {
        prop_assume!(q < n && n.gcd(&q) == 1);
        let d = CQSDescriptor::new(n, q).unwrap();
        prop_assert!(d.check_invariants());
        prop_assert_eq!(d.j_series[0], 1);
    }
}

#[test]
fn dual_gram_sign_conjugate_to_mckay() {
    for k in (3..=15).step_by(2) {
        let dual = left_dual(&l_collection(k).unwrap()).unwrap();
        let s = seifert_gram(&dual).unwrap();
        let e = euler_gram(&mckay_quiver(k).unwrap()).unwrap();
        assert!(s.is_unitriangular());
        assert!(s.sign_conjugate(&e), "k = {k}");
    }
}

#[test]
fn l_collection_first_row_alternates() {
    for k in (3..=15).step_by(2) {
        let row = seifert_gram(&l_collection(k).unwrap()).unwrap().to_i64()[0].clone();
        let want: Vec<i64> = (1..=k as i64 - 2).map(|j| if j % 2 == 1 { j } else { -j }).collect();
        assert_eq!(row, want, "k = {k}");
    }
}

#[test]
fn path_sums_are_consecutive() {
    let got: Vec<BigInt> = path_sum_lemma(20);
    assert_eq!(got, (2..=21).map(BigInt::from).collect::<Vec<_>>());
}
