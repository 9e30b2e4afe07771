//! Exceptional sequences of homology classes and their mutations.
//!
//! Positions in the public API are 1-based: `mutate_left(seq, i)` acts on
//! the pair at positions `i` and `i + 1`.
//!
//! - left mutation: `(a, b) -> (b - <a,b> a, a)`
//! - right mutation: `(c, a) -> (a, c - <c,a> a)`

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, pair, xk_fiber_basis, FiberBasis, HomologyClass, LatticeError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MutationError {
    #[error("position {i} out of range for a sequence of length {len}")]
    Position { i: usize, len: usize },
    #[error("transposition at {i} needs orthogonal classes, pairing is {pairing}")]
    NotOrthogonal { i: usize, pairing: BigInt },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("step {step} diverges from the expected list at entries {positions:?}")]
    Diverges { step: String, positions: Vec<usize> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExceptionalSequence {
    pub basis: Arc<FiberBasis>,
    pub classes: Vec<HomologyClass>,
}

impl Serialize for ExceptionalSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.display().serialize(s)
    }
}

impl ExceptionalSequence {
    pub fn new(basis: &Arc<FiberBasis>, classes: Vec<HomologyClass>) -> Result<Self, MutationError> {
        if classes.iter().any(|c| *c.basis != **basis) {
            return Err(LatticeError::BasisMismatch.into());
        }
        Ok(Self { basis: basis.clone(), classes })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn display(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.to_string()).collect()
    }

    fn check_pos(&self, i: usize) -> Result<(), MutationError> {
        if i == 0 || i >= self.len() {
            Err(MutationError::Position { i, len: self.len() })
        } else {
            Ok(())
        }
    }

    /// Entrywise comparison up to per-class sign; returns the 1-based
    /// positions that differ (a length mismatch reports every trailing slot).
    pub fn sign_mismatches(&self, expected: &[HomologyClass]) -> Vec<usize> {
        let n = self.len().max(expected.len());
        (0..n)
            .filter(|&p| match (self.classes.get(p), expected.get(p)) {
                (Some(a), Some(b)) => !a.eq_up_to_sign(b),
                _ => true,
            })
            .map(|p| p + 1)
            .collect()
    }
}

pub fn mutate_left(seq: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence, MutationError> {
    seq.check_pos(i)?;
    let (a, b) = (&seq.classes[i - 1], &seq.classes[i]);
    let p = pair(a, b)?;
    let moved = b.add_scaled(&-p, a)?;
    let mut out = seq.clone();
    out.classes[i - 1] = moved;
    out.classes[i] = a.clone();
    Ok(out)
}

pub fn mutate_right(seq: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence, MutationError> {
    seq.check_pos(i)?;
    let (c, a) = (&seq.classes[i - 1], &seq.classes[i]);
    let p = pair(c, a)?;
    let moved = c.add_scaled(&-p, a)?;
    let mut out = seq.clone();
    out.classes[i - 1] = a.clone();
    out.classes[i] = moved;
    Ok(out)
}

/// Swaps two orthogonal neighbours (the common case of both mutations).
pub fn transpose(seq: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence, MutationError> {
    seq.check_pos(i)?;
    let p = pair(&seq.classes[i - 1], &seq.classes[i])?;
    if !p.is_zero() {
        return Err(MutationError::NotOrthogonal { i, pairing: p });
    }
    let mut out = seq.clone();
    out.classes.swap(i - 1, i);
    Ok(out)
}

pub fn flip_sign(seq: &ExceptionalSequence, i: usize) -> Result<ExceptionalSequence, MutationError> {
    if i == 0 || i > seq.len() {
        return Err(MutationError::Position { i, len: seq.len() });
    }
    let mut out = seq.clone();
    out.classes[i - 1] = out.classes[i - 1].neg();
    Ok(out)
}

/// Left dual: each element in turn is left-mutated through everything before
/// it, so `E_1, ..., E_n` becomes `L^{(n-1)} E_n, ..., L^{(1)} E_2, E_1`.
pub fn left_dual(seq: &ExceptionalSequence) -> Result<ExceptionalSequence, MutationError> {
    let mut cur = seq.clone();
    for j in 2..=seq.len() {
        for pos in (1..j).rev() {
            cur = mutate_left(&cur, pos)?;
        }
    }
    Ok(cur)
}

/// Upper unitriangular Gram matrix: 1 on the diagonal, `<x_i, x_j>` above, 0 below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub entries: Vec<Vec<BigInt>>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.entries.iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()).collect()
    }

    pub fn abs(&self) -> GramMatrix {
        GramMatrix { entries: self.entries.iter().map(|r| r.iter().map(|x| x.abs()).collect()).collect() }
    }

    pub fn is_unitriangular(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            self.entries[i].len() == n && self.entries[i][i].is_one() && (0..i).all(|j| self.entries[i][j].is_zero())
        })
    }

    /// Whether `D self D = other` for some diagonal `D` with entries `±1`.
    pub fn sign_conjugate(&self, other: &GramMatrix) -> bool {
        let n = self.size();
        if other.size() != n {
            return false;
        }
        // fix d_0 = 1 and propagate signs along nonzero entries
        let mut d: Vec<Option<i8>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(1);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    let (x, y) = (&self.entries[a][b], &other.entries[a][b]);
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    if x.abs() != y.abs() {
                        return false;
                    }
                    let rel: i8 = if x == y { 1 } else { -1 };
                    let want = d[i].unwrap() * rel;
                    match d[j] {
                        None => {
                            d[j] = Some(want);
                            stack.push(j);
                        }
                        Some(v) if v != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

pub fn seifert_gram(seq: &ExceptionalSequence) -> Result<GramMatrix, MutationError> {
    let n = seq.len();
    let mut entries = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        entries[i][i] = BigInt::one();
        for j in (i + 1)..n {
            entries[i][j] = pair(&seq.classes[i], &seq.classes[j])?;
        }
    }
    Ok(GramMatrix { entries })
}

/// The collection `L_{k-1}, L_{k-2}, ..., L_2`.
pub fn l_collection(k: usize) -> Result<ExceptionalSequence, MutationError> {
    let basis = xk_fiber_basis(k)?;
    let classes = (2..k).rev().map(|j| lattice::class_l(&basis, k, j)).collect::<Result<Vec<_>, _>>()?;
    ExceptionalSequence::new(&basis, classes)
}

/// The full collection `L_{k-1}, ..., L_2, P_{-1}, P_0, P_1, B_1, ..., B_{k+1}`.
pub fn full_collection(k: usize) -> Result<ExceptionalSequence, MutationError> {
    let mut seq = l_collection(k)?;
    let basis = seq.basis.clone();
    for name in ["P-1", "P0", "P1"] {
        seq.classes.push(lattice::class_preset(&basis, k, name)?);
    }
    for _ in 0..=k {
        seq.classes.push(lattice::class_preset(&basis, k, "B")?);
    }
    Ok(seq)
}

/// Weighted path sums of the quiver on `0..=m` with arrows `i -> i-1` of
/// weight 2 and `i -> i-2` of weight 1, each path signed by `(-1)^{#(i -> i-2) steps}`.
///
/// Computed by explicit enumeration of every path from `i` to `0`.
pub fn path_sum_lemma(m: usize) -> Vec<BigInt> {
    fn walk(v: usize, weight: BigInt, sign: i32, acc: &mut BigInt) {
        if v == 0 {
            *acc += weight * sign;
            return;
        }
        walk(v - 1, &weight * 2, sign, acc);
        if v >= 2 {
            walk(v - 2, weight, -sign, acc);
        }
    }
    (1..=m)
        .map(|i| {
            let mut acc = BigInt::zero();
            walk(i, BigInt::one(), 1, &mut acc);
            acc
        })
        .collect()
}

/// Number of distinct paths from `i` to `0` (a Fibonacci number), for reporting.
pub fn path_count(i: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for _ in 1..i {
        (a, b) = (b, a + b);
    }
    if i == 0 {
        1
    } else {
        b
    }
}

/// One elementary operation of a mutation script (positions 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "at", rename_all = "snake_case")]
pub enum Move {
    Left(usize),
    Right(usize),
    Swap(usize),
    Flip(usize),
}

pub fn apply_move(seq: &ExceptionalSequence, mv: Move) -> Result<ExceptionalSequence, MutationError> {
    match mv {
        Move::Left(i) => mutate_left(seq, i),
        Move::Right(i) => mutate_right(seq, i),
        Move::Swap(i) => transpose(seq, i),
        Move::Flip(i) => flip_sign(seq, i),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStep {
    pub name: String,
    pub moves: Vec<Move>,
}

/// A mutation script: a seed (class expressions) and named steps of moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidScript {
    pub k: usize,
    pub seed: Vec<String>,
    pub steps: Vec<ScriptStep>,
}

/// Applies a block of left mutations moving the element at `from` to `to < from`.
fn carry_left(moves: &mut Vec<Move>, from: usize, to: usize) {
    for p in (to..from).rev() {
        moves.push(Move::Left(p));
    }
}

/// The six-step script for the `X_{k+1}` collection.
///
/// The seed is `P_{-2}, P_{-1}, P_0, B x (k+1), R_{k-1}, ..., R_2`.
pub fn braid_script(k: usize) -> BraidScript {
    let n = 2 * k + 2;
    let mut seed: Vec<String> = vec!["P-2".into(), "P-1".into(), "P0".into()];
    seed.extend(std::iter::repeat_n("B".to_string(), k + 1));
    seed.extend((2..k).rev().map(|i| format!("R_{i}")));
    let m = k - 2;

    // Step 1: each R_i moves left through i - 1 copies of B, giving
    // P.., B, B, B, R_{k-1}, B, R_{k-2}, ..., R_2, B; then two B's move left
    // through the three P's.
    let mut s1 = Vec::new();
    for t in 0..m {
        let from = 4 + (k + 1) + t; // 1-based position of R_{k-1-t}
        let to = 7 + 2 * t;
        carry_left(&mut s1, from, to);
    }
    carry_left(&mut s1, 4, 1);
    carry_left(&mut s1, 5, 2);

    // Step 2: P_{-2} passes the second B; each B after l_i passes l_i.
    let mut s2 = vec![Move::Left(2)];
    for t in 0..m {
        s2.push(Move::Left(7 + 2 * t));
    }

    // Step 3: gather the l_i - l to the left, then two B's move right.
    let mut s3 = Vec::new();
    for t in 1..m {
        carry_left(&mut s3, 7 + 2 * t, 7 + t);
    }
    s3.push(Move::Right(1));
    s3.push(Move::Right(3));

    // Step 4: the middle B is passed by the k - 2 classes on its right.
    let s4 = (0..m).map(|t| Move::Left(6 + t)).collect();

    // Step 5: P_0 moves to the end; b - 2a moves past l_{k-1}, ..., l_2.
    let mut s5: Vec<Move> = (5..n).map(Move::Left).collect();
    s5.extend((4..4 + m).map(Move::Right));

    // Step 6: l_{k-1}, ..., l_2 pass b - 2a - l, then the second block passes b - l.
    let mut s6: Vec<Move> = (3..3 + m).map(Move::Left).collect();
    let bl = 5 + m; // position of b - l
    s6.extend((bl..bl + m).map(Move::Left));

    let step = |name: &str, moves: Vec<Move>| ScriptStep { name: name.into(), moves };
    BraidScript {
        k,
        seed,
        steps: vec![
            step("step 1", s1),
            step("step 2", s2),
            step("step 3", s3),
            step("step 4", s4),
            step("step 5", s5),
            step("step 6", s6),
        ],
    }
}

fn l_run(k: usize, f: impl Fn(usize) -> String) -> Vec<String> {
    (2..k).rev().map(f).collect()
}

/// Reference class lists for steps 1 to 6, taken literally.
pub fn braid_displays(k: usize) -> Vec<Vec<String>> {
    let li = |i: usize| format!("l_{i}");
    let mut d1 = vec!["l", "l", "b-4a-2l", "b-2a-l", "b"].into_iter().map(String::from).collect::<Vec<_>>();
    for i in (2..k).rev() {
        d1.push(li(i));
        d1.push("l".into());
    }
    let mut d2 = vec!["l", "b-4a-l", "l", "b-2a-l", "b", "l"].into_iter().map(String::from).collect::<Vec<_>>();
    for i in (2..k).rev() {
        d2.push(format!("l_{i}-l"));
        d2.push(li(i));
    }
    let mut d3 = vec!["b-4a-l", "b-4a", "b-2a-l", "b-2a", "b", "l"].into_iter().map(String::from).collect::<Vec<_>>();
    d3.extend(l_run(k, |i| format!("l_{i}-l")));
    d3.extend(l_run(k, li));
    let mut d4 = vec!["b-4a-l", "b-4a", "b-2a-l", "b-2a", "b"].into_iter().map(String::from).collect::<Vec<_>>();
    d4.extend(l_run(k, li));
    d4.push("l".into());
    d4.extend(l_run(k, li));
    let mut d5 = vec!["b-4a-l", "b-4a", "b-2a-l"].into_iter().map(String::from).collect::<Vec<_>>();
    d5.extend(l_run(k, li));
    d5.push("b-2a".into());
    d5.push("b-l".into());
    d5.extend(l_run(k, li));
    d5.push("b".into());
    let mut d6 = vec!["b-4a-l".to_string(), "b-4a".into()];
    d6.extend(l_run(k, |i| if i == k - 1 || i == 2 { format!("b-2a-l_{i}") } else { format!("b-2a-l-l_{i}") }));
    d6.push("b-2a-l".into());
    d6.push("b-2a".into());
    d6.extend(l_run(k, |i| format!("b-l-l_{i}")));
    d6.push("b-l".into());
    d6.push("b".into());
    vec![d1, d2, d3, d4, d5, d6]
}

/// A correction to a literal display, with the reason it is needed.
#[derive(Debug, Clone, Serialize)]
pub struct Erratum {
    pub step: usize,
    pub description: String,
}

/// Reference lists with two slips repaired: Step 1 lacks the `B`
/// between `P_0` and `l_{k-1}` (the list has `2k + 1` entries instead of
/// `2k + 2`), and Step 6 drops `-l` from the first and last entries of the
/// `b - 2a - l - l_i` block.
pub fn braid_displays_corrected(k: usize) -> (Vec<Vec<String>>, Vec<Erratum>) {
    let mut d = braid_displays(k);
    d[0].insert(5, "l".into());
    for (t, i) in (2..k).rev().enumerate() {
        d[5][2 + t] = format!("b-2a-l-l_{i}");
    }
    let errata = vec![
        Erratum { step: 1, description: "insert the B between P_0 and l_{k-1}; the literal list has 2k+1 entries".into() },
        Erratum { step: 6, description: "b-2a-l_{k-1} and b-2a-l_2 read as b-2a-l-l_{k-1} and b-2a-l-l_2".into() },
    ];
    (d, errata)
}

#[derive(Debug, Clone, Serialize)]
pub struct StepOutcome {
    pub name: String,
    pub classes: ExceptionalSequence,
    /// 1-based entries that differ (up to sign) from the literal display.
    pub literal_mismatches: Vec<usize>,
    /// 1-based entries that differ (up to sign) from the corrected display.
    pub corrected_mismatches: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidReplay {
    pub k: usize,
    pub seed: ExceptionalSequence,
    pub steps: Vec<StepOutcome>,
    pub errata: Vec<Erratum>,
}

impl BraidReplay {
    pub fn matches_corrected(&self) -> bool {
        self.steps.iter().all(|s| s.corrected_mismatches.is_empty())
    }

    /// First step (1-based) differing from the literal displays.
    pub fn first_literal_divergence(&self) -> Option<usize> {
        self.steps.iter().position(|s| !s.literal_mismatches.is_empty()).map(|p| p + 1)
    }
}

fn parse_all(basis: &Arc<FiberBasis>, k: usize, names: &[String]) -> Result<Vec<HomologyClass>, MutationError> {
    Ok(names.iter().map(|s| lattice::class_preset(basis, k, s)).collect::<Result<Vec<_>, _>>()?)
}

/// Replays a script, comparing every step against the displays.
pub fn replay_script(script: &BraidScript) -> Result<BraidReplay, MutationError> {
    let k = script.k;
    let basis = xk_fiber_basis(k)?;
    let seed = ExceptionalSequence::new(&basis, parse_all(&basis, k, &script.seed)?)?;
    let literal = braid_displays(k);
    let (corrected, errata) = braid_displays_corrected(k);
    let mut cur = seed.clone();
    let mut steps = Vec::new();
    for (idx, step) in script.steps.iter().enumerate() {
        for &mv in &step.moves {
            cur = apply_move(&cur, mv)?;
        }
        let lit = literal.get(idx).map(|d| parse_all(&basis, k, d)).transpose()?.unwrap_or_default();
        let cor = corrected.get(idx).map(|d| parse_all(&basis, k, d)).transpose()?.unwrap_or_default();
        steps.push(StepOutcome {
            name: step.name.clone(),
            classes: cur.clone(),
            literal_mismatches: cur.sign_mismatches(&lit),
            corrected_mismatches: cur.sign_mismatches(&cor),
        });
    }
    Ok(BraidReplay { k, seed, steps, errata })
}

/// Replays the built-in script and fails at the first step that disagrees
/// with the corrected displays.
pub fn replay_braid(k: usize) -> Result<BraidReplay, MutationError> {
    let replay = replay_script(&braid_script(k))?;
    if let Some(bad) = replay.steps.iter().find(|s| !s.corrected_mismatches.is_empty()) {
        return Err(MutationError::Diverges { step: bad.name.clone(), positions: bad.corrected_mismatches.clone() });
    }
    Ok(replay)
}

/// Right-mutates each `L_i` of the full collection past the `P`'s and `B`'s,
/// returning the resulting classes in the order `R_{k-1}, ..., R_2`.
pub fn right_mutated_l(k: usize) -> Result<Vec<HomologyClass>, MutationError> {
    let mut seq = full_collection(k)?;
    let m = k - 2;
    let len = seq.len();
    for t in 0..m {
        let from = m - t; // 1-based position of L_{2+t}
        let end = len - t;
        for p in from..end {
            seq = mutate_right(&seq, p)?;
        }
    }
    Ok(seq.classes[len - m..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(k: usize, names: &[&str]) -> ExceptionalSequence {
        let b = xk_fiber_basis(k).unwrap();
        let c = names.iter().map(|n| lattice::class_preset(&b, k, n).unwrap()).collect();
        ExceptionalSequence::new(&b, c).unwrap()
    }

    #[test]
    fn left_examples() {
        let s = seq(5, &["l_2", "l_2"]);
        assert_eq!(mutate_left(&s, 1).unwrap(), s);
        let s = seq(7, &["L_6", "L_5"]);
        let m = mutate_left(&s, 1).unwrap();
        assert!(m.classes[0].eq_up_to_sign(&lattice::class_preset(&s.basis, 7, "l_5-2l_6+l").unwrap()));
        assert!(mutate_left(&s, 2).is_err());
        assert!(mutate_left(&s, 0).is_err());
    }

    #[test]
    fn right_examples() {
        let s = seq(5, &["P-1", "P0"]);
        let m = mutate_right(&s, 1).unwrap();
        assert!(m.classes[1].eq_up_to_sign(&lattice::class_preset(&s.basis, 5, "Pt").unwrap()));
        assert_eq!(mutate_right(&mutate_left(&s, 1).unwrap(), 1).unwrap(), s);
    }

    #[test]
    fn p_minus_two() {
        let s = seq(5, &["P-1", "P0", "P1"]);
        let m = mutate_left(&mutate_left(&s, 2).unwrap(), 1).unwrap();
        assert!(m.classes[0].eq_up_to_sign(&lattice::class_preset(&s.basis, 5, "P-2").unwrap()));
    }

    #[test]
    fn dual_examples() {
        let single = seq(5, &["L_4"]);
        assert_eq!(left_dual(&single).unwrap(), single);
        let d = left_dual(&l_collection(5).unwrap()).unwrap();
        let want = ["l_2-2l_3+l_4", "l_3-2l_4+l", "l_4"];
        assert!(d.sign_mismatches(&seq(5, &want).classes).is_empty());
    }

    #[test]
    fn seifert_first_row() {
        let g = seifert_gram(&l_collection(9).unwrap()).unwrap().to_i64();
        assert_eq!(g[0], vec![1, -2, 3, -4, 5, -6, 7]);
        let orth = seq(5, &["l_2", "a"]);
        assert_eq!(seifert_gram(&orth).unwrap().to_i64(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn path_sums() {
        let s = path_sum_lemma(7);
        assert_eq!(s.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(path_count(4), 5);
    }

    #[test]
    fn braid_k5() {
        let r = replay_braid(5).unwrap();
        let s1 = r.steps[0].classes.display();
        assert!(s1.windows(3).any(|w| w == ["-2l-4a+b", "-l-2a+b", "b"]));
        assert_eq!(&r.steps[2].classes.display()[..5], ["-l-4a+b", "-4a+b", "-l-2a+b", "-2a+b", "b"]);
        assert_eq!(r.first_literal_divergence(), Some(1));
        assert_eq!(r.steps[5].literal_mismatches, vec![3, 5]);
    }

    #[test]
    fn script_roundtrips_through_json() {
        let s = braid_script(7);
        let text = serde_json::to_string(&s).unwrap();
        let back: BraidScript = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
