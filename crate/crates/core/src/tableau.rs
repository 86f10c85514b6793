//! Staircase tableaux and their Gelfand-Tsetlin shift.
//!
//! A staircase tableau of order `n` has rows `0..=n` (top to bottom), row `r`
//! holding `r + 1` positions `g(r, 0) < ... < g(r, r)`. The bottom row is the
//! fixed row `1, 3, ..., 2n + 1` and consecutive rows interlace:
//!
//! ```text
//! g(r + 1, j) <= g(r, j) < g(r + 1, j + 1)
//! ```
//!
//! Entries are stored row-major in one flat vector; row `r` starts at offset
//! `r (r + 1) / 2`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Offset of row `r` in the flat triangular layout.
#[inline]
pub fn row_offset(r: usize) -> usize {
    r * (r + 1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("malformed shape: expected {expected} entries in row {row}, found {found}")]
    Shape {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("empty tableau (order 0 has the single row [1])")]
    Empty,
    #[error("bottom row entry g({row},{col}) = {value}, expected {expected}")]
    BottomRow {
        row: usize,
        col: usize,
        value: u32,
        expected: u32,
    },
    #[error("interlacing violated at g({row},{col}) = {value}: need {lower} <= g < {upper}")]
    Interlacing {
        row: usize,
        col: usize,
        value: u32,
        lower: u32,
        upper: u32,
    },
    #[error("row {row} is not strictly increasing at column {col}")]
    NotIncreasing { row: usize, col: usize },
    #[error("g({row},{col}) = {value} is outside 1..={max}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: u32,
        max: u32,
    },
}

/// A state of the half-hexagon model in tableau form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StaircaseTableau {
    order: usize,
    entries: Vec<u32>,
}

impl StaircaseTableau {
    /// The unique order-0 state `((1))`.
    pub fn base() -> Self {
        StaircaseTableau {
            order: 0,
            entries: vec![1],
        }
    }

    /// The minimal state: every row pushed as far left as interlacing allows.
    pub fn minimal(order: usize) -> Self {
        let mut entries = Vec::with_capacity(row_offset(order + 1));
        for r in 0..=order {
            entries.extend((0..=r as u32).map(|j| 2 * j + 1));
        }
        StaircaseTableau { order, entries }
    }

    /// Builds and validates a tableau from nested rows.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, TableauError> {
        let t = Self::from_rows_unchecked(rows)?;
        t.validate()?;
        Ok(t)
    }

    /// Checks only the staircase shape; interlacing is not checked.
    pub fn from_rows_unchecked(rows: &[Vec<u32>]) -> Result<Self, TableauError> {
        if rows.is_empty() {
            return Err(TableauError::Empty);
        }
        let order = rows.len() - 1;
        let mut entries = Vec::with_capacity(row_offset(order + 1));
        for (r, row) in rows.iter().enumerate() {
            if row.len() != r + 1 {
                return Err(TableauError::Shape {
                    row: r,
                    expected: r + 1,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(StaircaseTableau { order, entries })
    }

    pub(crate) fn from_flat_unchecked(order: usize, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), row_offset(order + 1));
        StaircaseTableau { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, r: usize, j: usize) -> u32 {
        self.entries[row_offset(r) + j]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[row_offset(r)..row_offset(r + 1)]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..=self.order).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub(crate) fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    /// Full validity check: bottom row, position bounds, strict rows and
    /// interlacing. Shape is guaranteed by construction.
    pub fn validate(&self) -> Result<(), TableauError> {
        let n = self.order;
        let max = 2 * n as u32 + 1;
        for j in 0..=n {
            let value = self.get(n, j);
            let expected = 2 * j as u32 + 1;
            if value != expected {
                return Err(TableauError::BottomRow {
                    row: n,
                    col: j,
                    value,
                    expected,
                });
            }
        }
        for r in 0..=n {
            let row = self.row(r);
            for (j, &value) in row.iter().enumerate() {
                if value == 0 || value > max {
                    return Err(TableauError::OutOfRange {
                        row: r,
                        col: j,
                        value,
                        max,
                    });
                }
            }
            if let Some(col) = row.windows(2).position(|w| w[0] >= w[1]) {
                return Err(TableauError::NotIncreasing { row: r, col });
            }
        }
        for r in 0..n {
            for j in 0..=r {
                let value = self.get(r, j);
                let lower = self.get(r + 1, j);
                let upper = self.get(r + 1, j + 1);
                if value < lower || value >= upper {
                    return Err(TableauError::Interlacing {
                        row: r,
                        col: j,
                        value,
                        lower,
                        upper,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn to_gt(&self) -> GtPattern {
        let mut entries = Vec::with_capacity(self.entries.len());
        for r in 0..=self.order {
            entries.extend(self.row(r).iter().enumerate().map(|(j, &g)| g - j as u32 - 1));
        }
        GtPattern {
            order: self.order,
            entries,
        }
    }

    pub fn from_gt(p: &GtPattern) -> Result<Self, TableauError> {
        p.validate()?;
        let mut entries = Vec::with_capacity(p.entries.len());
        for r in 0..=p.order {
            entries.extend(p.row(r).iter().enumerate().map(|(j, &h)| h + j as u32 + 1));
        }
        let t = StaircaseTableau {
            order: p.order,
            entries,
        };
        t.validate()?;
        Ok(t)
    }

    /// Sum of the Gelfand-Tsetlin entries above the frozen bottom row.
    pub fn volume(&self) -> u64 {
        let mut total = 0u64;
        for r in 0..self.order {
            for (j, &g) in self.row(r).iter().enumerate() {
                total += u64::from(g) - j as u64 - 1;
            }
        }
        total
    }
}

impl Serialize for StaircaseTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StaircaseTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(d)?;
        StaircaseTableau::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Gelfand-Tsetlin form `h(r, j) = g(r, j) - j - 1`, bottom row `0, 1, ..., n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GtPattern {
    order: usize,
    entries: Vec<u32>,
}

impl GtPattern {
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, TableauError> {
        let t = StaircaseTableau::from_rows_unchecked(rows)?;
        let p = GtPattern {
            order: t.order,
            entries: t.entries,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, r: usize, j: usize) -> u32 {
        self.entries[row_offset(r) + j]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[row_offset(r)..row_offset(r + 1)]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..=self.order).map(|r| self.row(r).to_vec()).collect()
    }

    /// Weak interlacing `h(r+1, j) <= h(r, j) <= h(r+1, j+1)` with bottom row `0..=n`.
    pub fn validate(&self) -> Result<(), TableauError> {
        let n = self.order;
        for j in 0..=n {
            let value = self.get(n, j);
            if value != j as u32 {
                return Err(TableauError::BottomRow {
                    row: n,
                    col: j,
                    value,
                    expected: j as u32,
                });
            }
        }
        for r in 0..n {
            for j in 0..=r {
                let value = self.get(r, j);
                let lower = self.get(r + 1, j);
                let upper = self.get(r + 1, j + 1);
                if value < lower || value > upper {
                    return Err(TableauError::Interlacing {
                        row: r,
                        col: j,
                        value,
                        lower,
                        upper: upper + 1,
                    });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig1() -> StaircaseTableau {
        StaircaseTableau::from_rows(&[vec![3], vec![2, 5], vec![1, 3, 6], vec![1, 3, 5, 7]]).unwrap()
    }

    #[test]
    fn figure_tableau_is_valid() {
        assert!(fig1().is_valid());
    }

    #[test]
    fn order_zero() {
        let t = StaircaseTableau::from_rows(&[vec![1]]).unwrap();
        assert_eq!(t, StaircaseTableau::base());
        assert_eq!(t.to_gt().to_rows(), vec![vec![0]]);
        assert_eq!(t.volume(), 0);
    }

    #[test]
    fn strict_upper_interlace_violation() {
        let t = StaircaseTableau::from_rows_unchecked(&[
            vec![5],
            vec![2, 5],
            vec![1, 3, 6],
            vec![1, 3, 5, 7],
        ])
        .unwrap();
        assert!(matches!(
            t.validate(),
            Err(TableauError::Interlacing { row: 0, col: 0, value: 5, .. })
        ));
    }

    #[test]
    fn malformed_shape_is_distinct_error() {
        let err = StaircaseTableau::from_rows(&[vec![1], vec![1, 3, 5]]).unwrap_err();
        assert!(matches!(err, TableauError::Shape { row: 1, .. }));
        assert_eq!(StaircaseTableau::from_rows(&[]).unwrap_err(), TableauError::Empty);
    }

    #[test]
    fn wrong_bottom_row() {
        let err = StaircaseTableau::from_rows(&[vec![2], vec![1, 4]]).unwrap_err();
        assert!(matches!(err, TableauError::BottomRow { .. }));
    }

    #[test]
    fn gt_of_figure() {
        let gt = fig1().to_gt();
        assert_eq!(
            gt.to_rows(),
            vec![vec![2], vec![1, 3], vec![0, 1, 3], vec![0, 1, 2, 3]]
        );
        assert_eq!(StaircaseTableau::from_gt(&gt).unwrap(), fig1());
    }

    #[test]
    fn bottom_row_shift() {
        let t = StaircaseTableau::minimal(3);
        assert_eq!(t.to_gt().row(3), &[0, 1, 2, 3]);
    }

    #[test]
    fn volumes() {
        let a = StaircaseTableau::from_rows(&[vec![1], vec![1, 3]]).unwrap();
        let b = StaircaseTableau::from_rows(&[vec![2], vec![1, 3]]).unwrap();
        assert_eq!(a.volume(), 0);
        assert_eq!(b.volume(), 1);
        // (2) + (1, 3) + (0, 1, 3)
        assert_eq!(fig1().volume(), 10);
    }

    #[test]
    fn minimal_is_valid() {
        for n in 0..8 {
            assert!(StaircaseTableau::minimal(n).is_valid());
        }
    }

    #[test]
    fn invalid_gt_rejected() {
        assert!(GtPattern::from_rows(&[vec![3], vec![1, 2]]).is_err());
        assert!(GtPattern::from_rows(&[vec![1], vec![0, 1]]).is_ok());
    }

    #[test]
    fn serde_round_trip() {
        let s = serde_json::to_string(&fig1()).unwrap();
        assert_eq!(s, "[[3],[2,5],[1,3,6],[1,3,5,7]]");
        let back: StaircaseTableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, fig1());
        assert!(serde_json::from_str::<StaircaseTableau>("[[5],[1,3]]").is_err());
    }
}
