//! Half-hexagon domino shuffling.
//!
//! `shuffle_forward` grows a state of order `n` into one of order `n + 1`,
//! visiting rows top to bottom. Each entry either stays (it already touches
//! the updated entry above it on the right), steps right (it touches the
//! updated entry above it on the left), or moves by one fair coin. A new
//! bottom row `1, 3, ..., 2n + 3` is then appended.
//!
//! `shuffle_reverse` is the time reversal: it replaces row `n` by the fixed
//! row `1, 3, ..., 2n + 1`, drops the old bottom row, and walks the remaining
//! rows bottom to top with the mirrored forced/free rules.
//!
//! The exact verifiers enumerate both kernels with rational probabilities and
//! check that the forward kernel is `2^-n` times the transpose of the reverse
//! kernel, which is what makes the forward map preserve the uniform measure.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{BitSource, BitStream};
use crate::enumeration::{enumerate_states, EnumerationError};
use crate::tableau::{row_offset, StaircaseTableau};

/// Largest order the exact verifiers will enumerate.
pub const MAX_VERIFY_ORDER: usize = 4;

/// How a single entry moved during one shuffle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    /// Forced to keep its position.
    Stay,
    /// Forced to step right (forward) or left (reverse).
    Push,
    /// Decided by the coin; `true` means it moved.
    Free(bool),
}

impl Move {
    pub fn is_free(self) -> bool {
        matches!(self, Move::Free(_))
    }
}

/// Per-cell record of one shuffle, in processing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub row: usize,
    pub col: usize,
    pub from: u32,
    pub to: u32,
    #[serde(rename = "move")]
    pub kind: Move,
}

fn forward_impl<B: BitSource>(
    t: StaircaseTableau,
    bits: &mut B,
    mut trace: Option<&mut Vec<TraceRecord>>,
) -> StaircaseTableau {
    let n = t.order();
    let mut e = t.into_entries();
    e.reserve(n + 2);
    for i in 0..=n {
        let off = row_offset(i);
        let above = if i > 0 { row_offset(i - 1) } else { 0 };
        for j in 0..=i {
            let g = e[off + j];
            let kind = if j < i && g == e[above + j] {
                Move::Stay
            } else if j > 0 && g == e[above + j - 1] {
                Move::Push
            } else {
                Move::Free(bits.bit(i, j))
            };
            let h = match kind {
                Move::Stay | Move::Free(false) => g,
                Move::Push | Move::Free(true) => g + 1,
            };
            e[off + j] = h;
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(TraceRecord {
                    row: i,
                    col: j,
                    from: g,
                    to: h,
                    kind,
                });
            }
        }
    }
    e.extend((0..=n as u32 + 1).map(|j| 2 * j + 1));
    let out = StaircaseTableau::from_flat_unchecked(n + 1, e);
    debug_assert!(out.is_valid(), "forward shuffle broke interlacing: {out:?}");
    out
}

/// One forward shuffle step, order `n` to `n + 1`.
pub fn shuffle_forward<B: BitSource>(t: &StaircaseTableau, bits: &mut B) -> StaircaseTableau {
    forward_impl(t.clone(), bits, None)
}

/// Forward shuffle that also returns the forced/free classification of every cell.
pub fn shuffle_forward_traced<B: BitSource>(
    t: &StaircaseTableau,
    bits: &mut B,
) -> (StaircaseTableau, Vec<TraceRecord>) {
    let mut trace = Vec::with_capacity(row_offset(t.order() + 1));
    let out = forward_impl(t.clone(), bits, Some(&mut trace));
    (out, trace)
}

fn reverse_impl<B: BitSource>(
    t: &StaircaseTableau,
    bits: &mut B,
    mut trace: Option<&mut Vec<TraceRecord>>,
) -> StaircaseTableau {
    assert!(t.order() >= 1, "cannot reverse-shuffle the order-0 state");
    let n = t.order() - 1;
    let mut e = t.entries()[..row_offset(n + 1)].to_vec();
    for j in 0..=n {
        e[row_offset(n) + j] = 2 * j as u32 + 1;
    }
    for i in (0..n).rev() {
        let off = row_offset(i);
        let below = row_offset(i + 1);
        for j in 0..=i {
            let g = e[off + j];
            let kind = if g == e[below + j] {
                Move::Stay
            } else if g == e[below + j + 1] {
                Move::Push
            } else {
                Move::Free(bits.bit(i, j))
            };
            let h = match kind {
                Move::Stay | Move::Free(false) => g,
                Move::Push | Move::Free(true) => g - 1,
            };
            e[off + j] = h;
            if let Some(trace) = trace.as_deref_mut() {
                trace.push(TraceRecord {
                    row: i,
                    col: j,
                    from: g,
                    to: h,
                    kind,
                });
            }
        }
    }
    let out = StaircaseTableau::from_flat_unchecked(n, e);
    debug_assert!(out.is_valid(), "reverse shuffle broke interlacing: {out:?}");
    out
}

/// One time-reversed shuffle step, order `n + 1` to `n`.
pub fn shuffle_reverse<B: BitSource>(t: &StaircaseTableau, bits: &mut B) -> StaircaseTableau {
    reverse_impl(t, bits, None)
}

pub fn shuffle_reverse_traced<B: BitSource>(
    t: &StaircaseTableau,
    bits: &mut B,
) -> (StaircaseTableau, Vec<TraceRecord>) {
    let mut trace = Vec::new();
    let out = reverse_impl(t, bits, Some(&mut trace));
    (out, trace)
}

/// Runs `n` forward shuffles from the order-0 state, step `t` reading the
/// coins of `stream.step(t)`.
pub fn sample_with(n: usize, stream: BitStream) -> StaircaseTableau {
    let mut t = StaircaseTableau::base();
    for step in 0..n {
        let mut bits = stream.step(step);
        t = forward_impl(t, &mut bits, None);
    }
    t
}

/// Uniform sample of order `n` (trajectory 0 of `seed`).
pub fn sample(n: usize, seed: u64) -> StaircaseTableau {
    sample_with(n, BitStream::new(seed))
}

/// `count` independent samples, trajectory `k` using stream `(seed, k)`.
pub fn sample_many(n: usize, count: usize, seed: u64) -> Vec<StaircaseTableau> {
    (0..count as u64)
        .into_par_iter()
        .map(|k| sample_with(n, BitStream::with_trajectory(seed, k)))
        .collect()
}

fn pow2_inverse(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// Exact probability that the forward shuffle maps `from` (order `n`) to
/// `to` (order `n + 1`): `2^-free` along the unique decomposition, else 0.
pub fn forward_probability(from: &StaircaseTableau, to: &StaircaseTableau) -> BigRational {
    match forward_free_count(from, to) {
        Some(k) => pow2_inverse(k),
        None => BigRational::zero(),
    }
}

/// Number of free moves in `from -> to`, or `None` when unreachable.
pub fn forward_free_count(from: &StaircaseTableau, to: &StaircaseTableau) -> Option<usize> {
    let n = from.order();
    if to.order() != n + 1 || !to.is_valid() {
        return None;
    }
    let mut free = 0;
    for i in 0..=n {
        for j in 0..=i {
            let g = from.get(i, j);
            let h = to.get(i, j);
            if j < i && g == to.get(i - 1, j) {
                if h != g {
                    return None;
                }
            } else if j > 0 && g == to.get(i - 1, j - 1) {
                if h != g + 1 {
                    return None;
                }
            } else if h == g || h == g + 1 {
                free += 1;
            } else {
                return None;
            }
        }
    }
    Some(free)
}

/// Exact probability that the reverse shuffle maps `from` (order `n + 1`)
/// to `to` (order `n`).
pub fn reverse_probability(from: &StaircaseTableau, to: &StaircaseTableau) -> BigRational {
    match reverse_free_count(from, to) {
        Some(k) => pow2_inverse(k),
        None => BigRational::zero(),
    }
}

pub fn reverse_free_count(from: &StaircaseTableau, to: &StaircaseTableau) -> Option<usize> {
    if from.order() == 0 || to.order() + 1 != from.order() || !to.is_valid() {
        return None;
    }
    let n = to.order();
    let mut free = 0;
    for i in (0..n).rev() {
        for j in 0..=i {
            let g = from.get(i, j);
            let h = to.get(i, j);
            if g == to.get(i + 1, j) {
                if h != g {
                    return None;
                }
            } else if g == to.get(i + 1, j + 1) {
                if h + 1 != g {
                    return None;
                }
            } else if h == g || h + 1 == g {
                free += 1;
            } else {
                return None;
            }
        }
    }
    Some(free)
}

/// All outcomes of one forward shuffle of `from`, with their free-move
/// counts, obtained by branching at every free cell.
pub fn forward_outcomes(from: &StaircaseTableau) -> Vec<(StaircaseTableau, usize)> {
    let n = from.order();
    let mut out = Vec::new();
    let mut e = from.entries().to_vec();
    branch_forward(n, 0, 0, 0, &mut e, &mut out);
    out
}

fn branch_forward(
    n: usize,
    i: usize,
    j: usize,
    free: usize,
    e: &mut Vec<u32>,
    out: &mut Vec<(StaircaseTableau, usize)>,
) {
    if i > n {
        let mut full = e.clone();
        full.extend((0..=n as u32 + 1).map(|j| 2 * j + 1));
        out.push((StaircaseTableau::from_flat_unchecked(n + 1, full), free));
        return;
    }
    let (ni, nj) = if j == i { (i + 1, 0) } else { (i, j + 1) };
    let off = row_offset(i);
    let g = e[off + j];
    let above = if i > 0 { row_offset(i - 1) } else { 0 };
    if j < i && g == e[above + j] {
        branch_forward(n, ni, nj, free, e, out);
    } else if j > 0 && g == e[above + j - 1] {
        e[off + j] = g + 1;
        branch_forward(n, ni, nj, free, e, out);
        e[off + j] = g;
    } else {
        branch_forward(n, ni, nj, free + 1, e, out);
        e[off + j] = g + 1;
        branch_forward(n, ni, nj, free + 1, e, out);
        e[off + j] = g;
    }
}

/// All outcomes of one reverse shuffle of `from`.
pub fn reverse_outcomes(from: &StaircaseTableau) -> Vec<(StaircaseTableau, usize)> {
    assert!(from.order() >= 1);
    let n = from.order() - 1;
    let mut e = from.entries()[..row_offset(n + 1)].to_vec();
    for j in 0..=n {
        e[row_offset(n) + j] = 2 * j as u32 + 1;
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push((StaircaseTableau::from_flat_unchecked(0, e), 0));
        return out;
    }
    branch_reverse(n, n - 1, 0, 0, &mut e, &mut out);
    out
}

fn branch_reverse(
    n: usize,
    i: usize,
    j: usize,
    free: usize,
    e: &mut Vec<u32>,
    out: &mut Vec<(StaircaseTableau, usize)>,
) {
    let next = if j < i {
        Some((i, j + 1))
    } else if i > 0 {
        Some((i - 1, 0))
    } else {
        None
    };
    let mut recurse = |e: &mut Vec<u32>, free: usize| match next {
        Some((ni, nj)) => branch_reverse(n, ni, nj, free, e, out),
        None => out.push((StaircaseTableau::from_flat_unchecked(n, e.clone()), free)),
    };
    let off = row_offset(i);
    let below = row_offset(i + 1);
    let g = e[off + j];
    if g == e[below + j] {
        recurse(e, free);
    } else if g == e[below + j + 1] {
        e[off + j] = g - 1;
        recurse(e, free);
        e[off + j] = g;
    } else {
        recurse(e, free + 1);
        e[off + j] = g - 1;
        recurse(e, free + 1);
        e[off + j] = g;
    }
}

/// Sparse exact kernel between consecutive orders.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub source_order: usize,
    pub target_order: usize,
    pub sources: Vec<StaircaseTableau>,
    pub targets: Vec<StaircaseTableau>,
    /// `rows[s]` maps target index to probability.
    pub rows: Vec<BTreeMap<usize, BigRational>>,
}

impl TransitionMatrix {
    fn build<F>(sources: Vec<StaircaseTableau>, targets: Vec<StaircaseTableau>, outcomes: F) -> Self
    where
        F: Fn(&StaircaseTableau) -> Vec<(StaircaseTableau, usize)> + Sync,
    {
        let rows = sources
            .par_iter()
            .map(|s| {
                let mut row = BTreeMap::new();
                for (t, free) in outcomes(s) {
                    let idx = targets
                        .binary_search(&t)
                        .expect("shuffle produced a state outside the enumerated set");
                    *row.entry(idx).or_insert_with(BigRational::zero) += pow2_inverse(free);
                }
                row
            })
            .collect();
        TransitionMatrix {
            source_order: sources.first().map_or(0, StaircaseTableau::order),
            target_order: targets.first().map_or(0, StaircaseTableau::order),
            sources,
            targets,
            rows,
        }
    }

    /// Forward kernel `ST(n - 1) -> ST(n)`.
    pub fn forward(n: usize) -> Result<Self, EnumerationError> {
        assert!(n >= 1);
        let sources = enumerate_states(n - 1)?;
        let targets = enumerate_states(n)?;
        Ok(Self::build(sources, targets, forward_outcomes))
    }

    /// Reverse kernel `ST(n) -> ST(n - 1)`.
    pub fn reverse(n: usize) -> Result<Self, EnumerationError> {
        assert!(n >= 1);
        let sources = enumerate_states(n)?;
        let targets = enumerate_states(n - 1)?;
        Ok(Self::build(sources, targets, reverse_outcomes))
    }

    pub fn get(&self, source: usize, target: usize) -> BigRational {
        self.rows[source].get(&target).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|r| r.values().fold(BigRational::zero(), |a, b| a + b))
            .collect()
    }

    /// `v * P` for a row vector `v` indexed by sources.
    pub fn left_multiply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.targets.len()];
        for (row, weight) in self.rows.iter().zip(v) {
            for (&t, p) in row {
                out[t] += weight * p;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointViolation {
    pub source: Vec<Vec<u32>>,
    pub target: Vec<Vec<u32>>,
    pub forward: String,
    pub reverse: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointReport {
    pub order: usize,
    pub pairs_checked: usize,
    pub nonzero_pairs: usize,
    pub violation: Option<AdjointViolation>,
}

impl AdjointReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `P(pi -> pi') = 2^-n * P'(pi' -> pi)` for every `pi` in `ST(n-1)`
/// and `pi'` in `ST(n)`. The forward side comes from the branching kernel,
/// the reverse side from the pairwise probability function.
pub fn verify_adjointness(n: usize) -> Result<AdjointReport, EnumerationError> {
    assert!(n >= 1, "adjointness is stated for n >= 1");
    if n > MAX_VERIFY_ORDER {
        return Err(EnumerationError::OrderTooLarge {
            order: n,
            max: MAX_VERIFY_ORDER,
        });
    }
    let fwd = TransitionMatrix::forward(n)?;
    let scale = pow2_inverse(n);
    let results: Vec<(usize, Option<AdjointViolation>)> = fwd
        .sources
        .par_iter()
        .enumerate()
        .map(|(s, src)| {
            let mut nonzero = 0;
            for (t, tgt) in fwd.targets.iter().enumerate() {
                let lhs = fwd.get(s, t);
                let rhs = &scale * reverse_probability(tgt, src);
                if !lhs.is_zero() {
                    nonzero += 1;
                }
                if lhs != rhs {
                    return (
                        nonzero,
                        Some(AdjointViolation {
                            source: src.to_rows(),
                            target: tgt.to_rows(),
                            forward: lhs.to_string(),
                            reverse: reverse_probability(tgt, src).to_string(),
                        }),
                    );
                }
            }
            (nonzero, None)
        })
        .collect();
    let nonzero_pairs = results.iter().map(|r| r.0).sum();
    let violation = results.into_iter().find_map(|r| r.1);
    Ok(AdjointReport {
        order: n,
        pairs_checked: fwd.sources.len() * fwd.targets.len(),
        nonzero_pairs,
        violation,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformReport {
    pub order: usize,
    pub source_states: usize,
    pub target_states: usize,
    pub row_sums_exact: bool,
    pub uniform_preserved: bool,
    /// Largest `|(mu P)_t - 1/|ST(n)||`, as an exact fraction.
    pub max_deviation: String,
    /// Common value of every column sum, when they agree.
    pub column_sum: Option<String>,
    /// `|ST(n)| / |ST(n-1)|` re-derived from the column sums.
    pub derived_ratio: Option<String>,
}

impl UniformReport {
    pub fn passed(&self) -> bool {
        self.row_sums_exact && self.uniform_preserved
    }
}

/// Pushes the uniform law on `ST(n - 1)` through the exact forward kernel.
pub fn verify_uniform_preservation(n: usize) -> Result<UniformReport, EnumerationError> {
    assert!(n >= 1);
    if n > MAX_VERIFY_ORDER {
        return Err(EnumerationError::OrderTooLarge {
            order: n,
            max: MAX_VERIFY_ORDER,
        });
    }
    let p = TransitionMatrix::forward(n)?;
    let row_sums_exact = p.row_sums().iter().all(One::is_one);
    let ns = p.sources.len();
    let nt = p.targets.len();
    let mu = vec![BigRational::new(BigInt::one(), BigInt::from(ns)); ns];
    let pushed = p.left_multiply(&mu);
    let target = BigRational::new(BigInt::one(), BigInt::from(nt));
    let max_deviation = pushed
        .iter()
        .map(|x| {
            let d = x - &target;
            if d < BigRational::zero() {
                -d
            } else {
                d
            }
        })
        .max()
        .unwrap_or_else(BigRational::zero);
    let ones = vec![BigRational::one(); ns];
    let columns = p.left_multiply(&ones);
    let column_sum = columns
        .first()
        .filter(|c| columns.iter().all(|x| x == *c))
        .cloned();
    let derived_ratio = column_sum.as_ref().map(|c| c.recip());
    Ok(UniformReport {
        order: n,
        source_states: ns,
        target_states: nt,
        row_sums_exact,
        uniform_preserved: max_deviation.is_zero(),
        max_deviation: max_deviation.to_string(),
        column_sum: column_sum.map(|c| c.to_string()),
        derived_ratio: derived_ratio.map(|r| r.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn tab(rows: &[&[u32]]) -> StaircaseTableau {
        StaircaseTableau::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn fixed(bits: &[((usize, usize), bool)]) -> impl FnMut(usize, usize) -> bool {
        let map: HashMap<_, _> = bits.iter().copied().collect();
        move |r, c| map.get(&(r, c)).copied().unwrap_or(false)
    }

    #[test]
    fn first_step() {
        let out = shuffle_forward(&StaircaseTableau::base(), &mut fixed(&[((0, 0), true)]));
        assert_eq!(out, tab(&[&[2], &[1, 3]]));
        let out = shuffle_forward(&StaircaseTableau::base(), &mut fixed(&[]));
        assert_eq!(out, tab(&[&[1], &[1, 3]]));
    }

    #[test]
    fn forced_push_trace() {
        let t = tab(&[&[2], &[1, 3]]);
        let (out, trace) =
            shuffle_forward_traced(&t, &mut fixed(&[((0, 0), true), ((1, 0), false)]));
        assert_eq!(out, tab(&[&[3], &[1, 4], &[1, 3, 5]]));
        let kinds: Vec<Move> = trace.iter().map(|r| r.kind).collect();
        assert_eq!(kinds, vec![Move::Free(true), Move::Free(false), Move::Push]);
    }

    #[test]
    fn reverse_examples() {
        let t = tab(&[&[3], &[1, 4], &[1, 3, 5]]);
        for b in [false, true] {
            let out = shuffle_reverse(&t, &mut |_: usize, _: usize| b);
            assert_eq!(out, tab(&[&[2], &[1, 3]]));
        }
        let t = tab(&[&[1], &[1, 3]]);
        assert_eq!(shuffle_reverse(&t, &mut |_: usize, _: usize| true), StaircaseTableau::base());
    }

    #[test]
    fn probabilities_of_the_worked_pair() {
        let a = tab(&[&[2], &[1, 3]]);
        let b = tab(&[&[3], &[1, 4], &[1, 3, 5]]);
        assert_eq!(forward_probability(&a, &b), BigRational::new(1.into(), 4.into()));
        assert_eq!(reverse_probability(&b, &a), BigRational::one());
        let unreachable = tab(&[&[1], &[1, 3], &[1, 3, 5]]);
        assert!(forward_probability(&a, &unreachable).is_zero());
    }

    #[test]
    fn stochastic_rows_up_to_four() {
        for n in 0..=3 {
            let targets = enumerate_states(n + 1).unwrap();
            for s in enumerate_states(n).unwrap() {
                let total = targets
                    .iter()
                    .fold(BigRational::zero(), |a, t| a + forward_probability(&s, t));
                assert!(total.is_one(), "row of {s:?} sums to {total}");
            }
        }
    }

    #[test]
    fn pairwise_agrees_with_branching() {
        for n in 1..=3 {
            let m = TransitionMatrix::forward(n).unwrap();
            for (s, src) in m.sources.iter().enumerate() {
                for (t, tgt) in m.targets.iter().enumerate() {
                    assert_eq!(m.get(s, t), forward_probability(src, tgt));
                }
            }
            let r = TransitionMatrix::reverse(n).unwrap();
            for (s, src) in r.sources.iter().enumerate() {
                for (t, tgt) in r.targets.iter().enumerate() {
                    assert_eq!(r.get(s, t), reverse_probability(src, tgt));
                }
            }
        }
    }

    #[test]
    fn support_symmetry() {
        let m = TransitionMatrix::forward(3).unwrap();
        for (s, src) in m.sources.iter().enumerate() {
            for (t, tgt) in m.targets.iter().enumerate() {
                assert_eq!(!m.get(s, t).is_zero(), !reverse_probability(tgt, src).is_zero());
            }
        }
    }

    #[test]
    fn adjointness_small() {
        for n in 1..=3 {
            let report = verify_adjointness(n).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        assert_eq!(verify_adjointness(1).unwrap().pairs_checked, 2);
    }

    #[test]
    fn uniform_order_one() {
        let report = verify_uniform_preservation(1).unwrap();
        assert!(report.passed());
        assert_eq!(report.derived_ratio.as_deref(), Some("2"));
        let p = TransitionMatrix::forward(1).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.left_multiply(&[BigRational::one()]), vec![half.clone(), half]);
    }

    #[test]
    fn uniform_order_three() {
        let report = verify_uniform_preservation(3).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.target_states, 64);
        assert_eq!(report.derived_ratio.as_deref(), Some("8"));
    }

    #[test]
    fn reverse_output_validates_for_all_bits() {
        for n in 1..=4 {
            for s in enumerate_states(n).unwrap() {
                for (t, _) in reverse_outcomes(&s) {
                    assert!(t.is_valid());
                }
            }
        }
    }

    #[test]
    fn forward_output_validates_for_all_bits() {
        for n in 0..=4 {
            for s in enumerate_states(n).unwrap() {
                for (t, _) in forward_outcomes(&s) {
                    assert!(t.is_valid());
                }
            }
        }
    }

    #[test]
    fn sample_is_reproducible() {
        assert_eq!(sample(0, 5), StaircaseTableau::base());
        assert_eq!(sample(30, 5), sample(30, 5));
        assert!(sample(30, 5).is_valid());
        let batch = sample_many(10, 4, 5);
        assert_eq!(batch[0], sample(10, 5));
    }

    #[test]
    fn order_one_sample_follows_its_coin() {
        let seed = (0..64u64)
            .find(|&s| !BitStream::new(s).bit(0, 0, 0))
            .expect("some seed has a zero first coin");
        assert_eq!(sample(1, seed), tab(&[&[1], &[1, 3]]));
    }

    #[test]
    fn verifier_guards_order() {
        assert!(verify_adjointness(5).is_err());
    }
}
