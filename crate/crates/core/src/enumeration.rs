//! Exhaustive enumeration and closed-form counts.
//!
//! Brute-force oracles (state enumeration, lattice-path families, volume
//! generating functions) live next to the closed forms they check: the
//! binomial determinant, its product evaluation, and the staircase Schur
//! product under `x_i = 1` and `x_i = q^i`.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::tableau::{row_offset, StaircaseTableau};

/// Largest order `enumerate_states` will materialise.
pub const MAX_ENUMERATION_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("order {order} exceeds the enumeration limit {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("endpoints must be strictly increasing positive integers: {0:?}")]
    NotIncreasing(Vec<u64>),
}

fn check_order(n: usize, max: usize) -> Result<(), EnumerationError> {
    if n > max {
        Err(EnumerationError::OrderTooLarge { order: n, max })
    } else {
        Ok(())
    }
}

/// Visits every staircase tableau of order `n` (rows filled bottom-up, each
/// row chosen entrywise inside the interlacing window of the row below).
/// Returns the number of states visited.
pub fn for_each_state<F>(n: usize, mut visit: F) -> u64
where
    F: FnMut(&StaircaseTableau),
{
    let mut entries = vec![0u32; row_offset(n + 1)];
    for j in 0..=n {
        entries[row_offset(n) + j] = 2 * j as u32 + 1;
    }
    let mut count = 0u64;
    fill_rows(n, 0, &mut entries, &mut |e: &[u32]| {
        count += 1;
        visit(&StaircaseTableau::from_flat_unchecked(n, e.to_vec()));
    });
    count
}

/// Fills row `r - 1` column `j` onwards, then recurses upwards.
fn fill_rows<F: FnMut(&[u32])>(r: usize, j: usize, entries: &mut [u32], emit: &mut F) {
    if r == 0 {
        emit(entries);
        return;
    }
    let row = r - 1;
    if j == r {
        fill_rows(row, 0, entries, emit);
        return;
    }
    let lo = entries[row_offset(r) + j];
    let hi = entries[row_offset(r) + j + 1];
    for value in lo..hi {
        entries[row_offset(row) + j] = value;
        fill_rows(r, j + 1, entries, emit);
    }
}

/// All states of order `n`, sorted by their row-major entries.
pub fn enumerate_states(n: usize) -> Result<Vec<StaircaseTableau>, EnumerationError> {
    check_order(n, MAX_ENUMERATION_ORDER)?;
    if n == 0 {
        return Ok(vec![StaircaseTableau::base()]);
    }
    // Split on row n - 1, whose entries are independent binary choices.
    let branches: Vec<u32> = (0..1u32 << n).collect();
    let mut states: Vec<StaircaseTableau> = branches
        .par_iter()
        .flat_map_iter(|&mask| {
            let mut entries = vec![0u32; row_offset(n + 1)];
            for j in 0..=n {
                entries[row_offset(n) + j] = 2 * j as u32 + 1;
            }
            for j in 0..n {
                entries[row_offset(n - 1) + j] = 2 * j as u32 + 1 + ((mask >> j) & 1);
            }
            let mut out = Vec::new();
            fill_rows(n - 1, 0, &mut entries, &mut |e: &[u32]| {
                out.push(StaircaseTableau::from_flat_unchecked(n, e.to_vec()));
            });
            out
        })
        .collect();
    states.par_sort_unstable();
    Ok(states)
}

/// `2^(n(n+1)/2)`.
pub fn count_closed(n: usize) -> BigUint {
    BigUint::one() << (n * (n + 1) / 2)
}

/// `binom(n, k)` as a big integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_increasing(xs: &[u64]) -> Result<(), EnumerationError> {
    let ok = xs.first().is_none_or(|&x| x > 0) && xs.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(EnumerationError::NotIncreasing(xs.to_vec()))
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// `det[binom(x_i, j)]_{1 <= i, j <= n}`: the number of non-intersecting
/// up-right path families from `(0, -x_i)` to `(i, -i)`.
pub fn nilp_count_determinant(xs: &[u64]) -> Result<BigInt, EnumerationError> {
    check_increasing(xs)?;
    let n = xs.len() as u64;
    let m = xs
        .iter()
        .map(|&x| (1..=n).map(|j| binomial(x, j)).collect())
        .collect();
    Ok(determinant(m))
}

/// Product evaluation of the same determinant:
/// `prod_{i<j} (x_j - x_i)/(j - i) * prod_i x_i / i`.
///
/// The trailing `prod_i x_i / i` factor is required; the bare Vandermonde
/// quotient undercounts (it gives 2 instead of 8 at `xs = (2, 4)`).
pub fn nilp_count_product(xs: &[u64]) -> Result<BigInt, EnumerationError> {
    check_increasing(xs)?;
    let mut acc = BigRational::one();
    for (i, &xi) in xs.iter().enumerate() {
        for (j, &xj) in xs.iter().enumerate().skip(i + 1) {
            acc *= BigRational::new(BigInt::from(xj) - BigInt::from(xi), BigInt::from(j - i));
        }
        acc *= BigRational::new(BigInt::from(xi), BigInt::from(i + 1));
    }
    debug_assert!(acc.is_integer());
    Ok(acc.to_integer())
}

/// Brute-force count of vertex-disjoint path families from `(0, -x_i)` to
/// `(i, -i)` using unit steps right and up.
pub fn nilp_count_bruteforce(xs: &[u64]) -> Result<u64, EnumerationError> {
    check_increasing(xs)?;
    let mut occupied = HashSet::new();
    Ok(count_families(xs, 0, &mut occupied))
}

fn count_families(xs: &[u64], i: usize, occupied: &mut HashSet<(i64, i64)>) -> u64 {
    if i == xs.len() {
        return 1;
    }
    let start = (0i64, -(xs[i] as i64));
    let end = (i as i64 + 1, -(i as i64 + 1));
    if end.1 < start.1 {
        return 0;
    }
    let mut total = 0;
    walk(start, end, occupied, &mut |occ| {
        total += count_families(xs, i + 1, occ);
    });
    total
}

fn walk<F: FnMut(&mut HashSet<(i64, i64)>)>(
    at: (i64, i64),
    end: (i64, i64),
    occupied: &mut HashSet<(i64, i64)>,
    done: &mut F,
) {
    if at.0 > end.0 || at.1 > end.1 || occupied.contains(&at) {
        return;
    }
    occupied.insert(at);
    if at == end {
        done(occupied);
    } else {
        walk((at.0 + 1, at.1), end, occupied, done);
        walk((at.0, at.1 + 1), end, occupied, done);
    }
    occupied.remove(&at);
}

/// Numeric staircase Schur product `prod_{1 <= i < j <= n+1} (x_i + x_j)`.
pub fn schur_staircase_product(xs: &[BigInt]) -> BigInt {
    let mut acc = BigInt::one();
    for (i, xi) in xs.iter().enumerate() {
        for xj in &xs[i + 1..] {
            acc *= xi + xj;
        }
    }
    acc
}

/// Dense polynomial in `q` with big-integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(degree: usize, coeff: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff;
        Polynomial { coeffs }.trimmed()
    }

    pub fn from_coeffs<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Polynomial {
            coeffs: coeffs.into_iter().map(BigInt::from).collect(),
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of the lowest non-zero term.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add_term(&mut self, degree: usize, coeff: &BigInt) {
        if self.coeffs.len() <= degree {
            self.coeffs.resize(degree + 1, BigInt::zero());
        }
        self.coeffs[degree] += coeff;
        let t = std::mem::take(self).trimmed();
        *self = t;
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Divides by `q^k`; `None` unless every term has degree at least `k`.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Polynomial {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = rhs.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Polynomial { coeffs }.trimmed()
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }.trimmed()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (d, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{d}")?,
                (_, false) => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Largest order accepted by the brute-force volume generating function.
pub const MAX_QENUM_BRUTEFORCE_ORDER: usize = 5;

/// `sum over ST(n) of q^volume`, by exhaustive enumeration.
pub fn q_enumerate_bruteforce(n: usize) -> Result<Polynomial, EnumerationError> {
    check_order(n, MAX_QENUM_BRUTEFORCE_ORDER)?;
    let mut counts: Vec<u64> = Vec::new();
    for_each_state(n, |t| {
        let v = t.volume() as usize;
        if counts.len() <= v {
            counts.resize(v + 1, 0);
        }
        counts[v] += 1;
    });
    Ok(Polynomial {
        coeffs: counts.into_iter().map(BigInt::from).collect(),
    }
    .trimmed())
}

/// Principal specialization `prod_{1 <= i < j <= n+1} (q^i + q^j)`.
pub fn q_enumerate_closed(n: usize) -> Polynomial {
    let mut acc = Polynomial::one();
    for j in 2..=n + 1 {
        for i in 1..j {
            let mut factor = Polynomial::monomial(i, BigInt::one());
            factor.add_term(j, &BigInt::one());
            acc = &acc * &factor;
        }
    }
    acc
}

/// Result of comparing the two volume generating functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QComparison {
    pub order: usize,
    pub bruteforce: Polynomial,
    pub closed: Polynomial,
    /// Exponent `c(n)` with `closed = q^c(n) * bruteforce`, when one exists.
    pub shift: Option<usize>,
}

impl QComparison {
    pub fn matches(&self) -> bool {
        self.shift.is_some()
    }
}

/// Compares the brute-force and closed forms up to a single monomial factor.
pub fn compare_q_enumeration(n: usize) -> Result<QComparison, EnumerationError> {
    let bruteforce = q_enumerate_bruteforce(n)?;
    let closed = q_enumerate_closed(n);
    let shift = match (closed.low_degree(), bruteforce.low_degree()) {
        (Some(c), Some(b)) if c >= b => {
            let k = c - b;
            (bruteforce.shift_up(k) == closed).then_some(k)
        }
        _ => None,
    };
    Ok(QComparison {
        order: n,
        bruteforce,
        closed,
        shift,
    })
}

/// `log2` of an exact power of two.
pub fn exact_log2(x: &BigUint) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let bits = x.bits() - 1;
    (BigUint::one() << bits == *x).then_some(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_state_counts() {
        assert_eq!(enumerate_states(0).unwrap().len(), 1);
        assert_eq!(enumerate_states(1).unwrap().len(), 2);
        assert_eq!(enumerate_states(3).unwrap().len(), 64);
        assert!(matches!(
            enumerate_states(7),
            Err(EnumerationError::OrderTooLarge { order: 7, max: 6 })
        ));
    }

    #[test]
    fn enumeration_is_sorted_valid_and_unique() {
        let states = enumerate_states(4).unwrap();
        assert!(states.windows(2).all(|w| w[0] < w[1]));
        assert!(states.iter().all(StaircaseTableau::is_valid));
    }

    #[test]
    fn visitor_agrees_with_vector() {
        let mut seen = Vec::new();
        let count = for_each_state(3, |t| seen.push(t.clone()));
        seen.sort();
        assert_eq!(count, 64);
        assert_eq!(seen, enumerate_states(3).unwrap());
    }

    #[test]
    fn closed_counts() {
        assert_eq!(count_closed(0), BigUint::from(1u32));
        assert_eq!(count_closed(3), BigUint::from(64u32));
        assert_eq!(count_closed(10), BigUint::one() << 55);
        assert_eq!(exact_log2(&count_closed(10)), Some(55));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(nilp_count_determinant(&[2]).unwrap(), BigInt::from(2));
        assert_eq!(nilp_count_determinant(&[1, 2, 3, 4]).unwrap(), BigInt::one());
        assert_eq!(nilp_count_determinant(&[2, 4]).unwrap(), BigInt::from(8));
        assert!(nilp_count_determinant(&[3, 3]).is_err());
        assert!(nilp_count_determinant(&[0, 2]).is_err());
    }

    #[test]
    fn bruteforce_paths_examples() {
        assert_eq!(nilp_count_bruteforce(&[2]).unwrap(), 2);
        assert_eq!(nilp_count_bruteforce(&[2, 4]).unwrap(), 8);
        assert_eq!(nilp_count_bruteforce(&[1, 2, 3]).unwrap(), 1);
    }

    #[test]
    fn product_formula_needs_correction() {
        assert_eq!(nilp_count_product(&[2, 4]).unwrap(), BigInt::from(8));
        assert_eq!(nilp_count_product(&[2, 4, 6]).unwrap(), BigInt::from(64));
        assert_eq!(nilp_count_product(&[1, 3, 4, 8]).unwrap(), nilp_count_determinant(&[1, 3, 4, 8]).unwrap());
    }

    #[test]
    fn bareiss_matches_hand_determinants() {
        let m = vec![big(&[0, 1]), big(&[1, 0])];
        assert_eq!(determinant(m), BigInt::from(-1));
        let m = vec![big(&[2, 0, 1]), big(&[1, 3, 2]), big(&[1, 1, 2])];
        assert_eq!(determinant(m), BigInt::from(6));
        let m = vec![big(&[0, 0, 1]), big(&[0, 2, 0]), big(&[3, 0, 0])];
        assert_eq!(determinant(m), BigInt::from(-6));
    }

    #[test]
    fn schur_products() {
        assert_eq!(schur_staircase_product(&big(&[1, 1, 1])), BigInt::from(8));
        assert_eq!(schur_staircase_product(&big(&[1, 2])), BigInt::from(3));
        assert_eq!(schur_staircase_product(&big(&[1; 6])), BigInt::from(1 << 15));
    }

    #[test]
    fn q_enumeration_order_one() {
        let cmp = compare_q_enumeration(1).unwrap();
        assert_eq!(cmp.bruteforce, Polynomial::from_coeffs([1, 1]));
        assert_eq!(cmp.closed, Polynomial::from_coeffs([0, 1, 1]));
        assert_eq!(cmp.shift, Some(1));
    }

    #[test]
    fn q_enumeration_order_zero() {
        let cmp = compare_q_enumeration(0).unwrap();
        assert_eq!(cmp.bruteforce, Polynomial::one());
        assert_eq!(cmp.closed, Polynomial::one());
        assert_eq!(cmp.shift, Some(0));
    }

    #[test]
    fn q_enumeration_order_three() {
        let cmp = compare_q_enumeration(3).unwrap();
        assert!(cmp.matches());
        assert_eq!(cmp.bruteforce.eval_at_one(), BigInt::from(64));
    }

    #[test]
    fn polynomial_display() {
        let p = Polynomial::from_coeffs([1, 0, -2, 1]);
        assert_eq!(p.to_string(), "1 - 2q^2 + q^3");
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(1));
    }
}
