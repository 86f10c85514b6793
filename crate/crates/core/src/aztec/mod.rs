//! Aztec diamond particle dynamics and the half-diamond.
//!
//! `x(j, i)` is the position of particle `i` on row `j` (both 1-based here,
//! stored 0-based). Row `j` is born at time `j` with `x(j, i) = i`. At each
//! later time every particle flips a fair coin `gamma`, then
//!
//! ```text
//! x(j,i)(t) = x + gamma - 1{x + gamma = x(j-1,i)(t-1) + 1} + 1{x + gamma = x(j-1,i-1)(t-1)}
//! ```
//!
//! with `x = x(j,i)(t-1)`; the blocking term is dropped for `i = j` and the
//! pushing term for `i = 1`. The particle is blocked by the particle above
//! and to its right and pushed by the one above and to its left. The
//! resulting configuration interlaces weakly:
//! `x(j,i) <= x(j-1,i) <= x(j,i+1)`.
//!
//! Shifting each row in time by its own index, `X(j,i)(t) = x(j,i)(t + j)`,
//! turns the simultaneous update into a top-to-bottom sweep where row `j`
//! reads the already-updated row `j - 1`, which is the half-hexagon shuffle.
//! Its fixed bottom row comes from the half-diamond: at time `2m + 1` the
//! centre row `m + 1` is forced to the equally spaced positions
//! `1, 3, ..., 2m + 1`, and rows below the centre are not part of the region.

pub mod domino;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{BitSource, BitStream};
use crate::enumeration::{enumerate_states, EnumerationError};
use crate::shuffle::TransitionMatrix;
use crate::tableau::StaircaseTableau;

pub use domino::{
    boundary_height, height_of_tiling, region_membership, Domino, DominoError, DominoTiling, HeightField,
    Orientation, PlanarRegion, RegionKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AztecError {
    #[error("row {row} at time {time} is not in the trajectory")]
    Missing { row: usize, time: usize },
    #[error("interlacing fails between rows {upper} and {lower}")]
    Interlacing { upper: usize, lower: usize },
    #[error("particle ({row}, {index}) at {position} is outside [{min}, {max}]")]
    Bounds {
        row: usize,
        index: usize,
        position: u32,
        min: u32,
        max: u32,
    },
}

/// One row update. `above` holds the previous-time positions of row `j - 1`
/// (empty for the top row); `coin(i)` is the fair bit of particle `i`.
pub fn update_row(row: &mut [u32], above: &[u32], mut coin: impl FnMut(usize) -> bool) {
    let len = row.len();
    debug_assert_eq!(above.len() + 1, len);
    for i in 0..len {
        let x = row[i];
        let tentative = x + u32::from(coin(i));
        let mut next = tentative;
        if i + 1 < len && tentative == above[i] + 1 {
            next -= 1;
        }
        if i > 0 && tentative == above[i - 1] {
            next += 1;
        }
        row[i] = next;
    }
}

/// Particle configuration of the Aztec diamond at time `t`: rows `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AztecParticles {
    pub time: usize,
    /// `rows[j - 1][i - 1] = x(j, i)`.
    pub rows: Vec<Vec<u32>>,
}

impl AztecParticles {
    /// The configuration at time 1: a single particle at 1.
    pub fn initial() -> Self {
        AztecParticles {
            time: 1,
            rows: vec![vec![1]],
        }
    }

    pub fn particle_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Checks the row sizes, the bounds `i <= x(j,i) <= i + t - j` and weak
    /// interlacing between consecutive rows.
    pub fn validate(&self) -> Result<(), AztecError> {
        let t = self.time;
        for (jj, row) in self.rows.iter().enumerate() {
            let j = jj + 1;
            assert_eq!(row.len(), j, "row {j} has the wrong length");
            for (ii, &x) in row.iter().enumerate() {
                let i = ii + 1;
                let (min, max) = (i as u32, (i + t - j) as u32);
                if x < min || x > max {
                    return Err(AztecError::Bounds {
                        row: j,
                        index: i,
                        position: x,
                        min,
                        max,
                    });
                }
            }
            if jj > 0 && !weakly_interlaced(&self.rows[jj - 1], row) {
                return Err(AztecError::Interlacing { upper: jj, lower: j });
            }
        }
        Ok(())
    }

    /// Advances from time `t` to `t + 1`; `coin(j, i)` (1-based) supplies `gamma(j, i)(t + 1)`.
    pub fn ad_step(&self, mut coin: impl FnMut(usize, usize) -> bool) -> AztecParticles {
        let mut rows = self.rows.clone();
        for j in 1..=rows.len() {
            let above: &[u32] = if j > 1 { &self.rows[j - 2] } else { &[] };
            update_row(&mut rows[j - 1], above, |i| coin(j, i + 1));
        }
        let t = self.time + 1;
        rows.push((1..=t as u32).collect());
        AztecParticles { time: t, rows }
    }
}

/// `lower` (row `j`) and `upper` (row `j - 1`) satisfy
/// `lower[i] <= upper[i] <= lower[i + 1]`.
pub fn weakly_interlaced(upper: &[u32], lower: &[u32]) -> bool {
    lower.len() == upper.len() + 1
        && upper
            .iter()
            .enumerate()
            .all(|(i, &u)| lower[i] <= u && u <= lower[i + 1])
}

/// Sets the centre row `m + 1` to `1, 3, ..., 2m + 1` and drops the rows
/// below it. Used at time `2m + 1`.
pub fn half_diamond_constraint(p: &mut AztecParticles, m: usize) {
    assert_eq!(p.time, 2 * m + 1, "the constraint applies at time 2m + 1");
    p.rows.truncate(m);
    p.rows.push((0..=m as u32).map(|i| 2 * i + 1).collect());
    debug_assert!(p.rows.len() < 2 || weakly_interlaced(&p.rows[m - 1], &p.rows[m]));
}

/// The half-diamond process run in natural time, with every row recorded at
/// every time it exists.
#[derive(Debug, Clone)]
pub struct HalfDiamondTrajectory {
    /// `snapshots[s - 1]` holds rows `1..=(s + 1) / 2` at time `s`.
    pub snapshots: Vec<AztecParticles>,
}

impl HalfDiamondTrajectory {
    /// Runs to time `2 order + 1`. `coin(s, j, i)` is `gamma(j, i)(s)`.
    pub fn run(order: usize, mut coin: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut p = AztecParticles::initial();
        let mut snapshots = vec![p.clone()];
        for s in 2..=2 * order + 1 {
            let mut rows = p.rows.clone();
            for j in 1..=rows.len() {
                let above: &[u32] = if j > 1 { &p.rows[j - 2] } else { &[] };
                update_row(&mut rows[j - 1], above, |i| coin(s, j, i + 1));
            }
            p = AztecParticles { time: s, rows };
            if s % 2 == 1 {
                half_diamond_constraint(&mut p, (s - 1) / 2);
            }
            snapshots.push(p.clone());
        }
        HalfDiamondTrajectory { snapshots }
    }

    /// The bit-aligned run: `gamma(j, i)(s)` is coin `(j - 1, i - 1)` of
    /// shuffle step `s - j - 1`.
    pub fn from_stream(order: usize, stream: BitStream) -> Self {
        let mut cache: BTreeMap<usize, crate::bits::StepBits> = BTreeMap::new();
        Self::run(order, |s, j, i| {
            cache
                .entry(s - j - 1)
                .or_insert_with(|| stream.step(s - j - 1))
                .bit(j - 1, i - 1)
        })
    }

    pub fn final_time(&self) -> usize {
        self.snapshots.len()
    }

    /// `x(j, ·)(s)`.
    pub fn row(&self, j: usize, s: usize) -> Result<&[u32], AztecError> {
        self.snapshots
            .get(s.wrapping_sub(1))
            .and_then(|p| p.rows.get(j.wrapping_sub(1)))
            .map(Vec::as_slice)
            .ok_or(AztecError::Missing { row: j, time: s })
    }
}

/// The shifted view `X(j, ·)(t) = x(j, ·)(t + j)` at shifted time `t`, as a
/// staircase tableau of order `t` (row `r` is `X(r + 1, ·)(t)`).
pub fn change_of_variables(traj: &HalfDiamondTrajectory, t: usize) -> Result<StaircaseTableau, AztecError> {
    let rows = (1..=t + 1)
        .map(|j| traj.row(j, t + j).map(<[u32]>::to_vec))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(StaircaseTableau::from_rows(&rows).expect("shifted half-diamond rows interlace strictly"))
}

/// Runs the half-diamond dynamics and the forward shuffle on the same coins
/// and reports whether the order-`order` states agree.
pub fn bit_aligned_agreement(order: usize, stream: BitStream) -> Result<bool, AztecError> {
    let traj = HalfDiamondTrajectory::from_stream(order, stream);
    Ok(change_of_variables(&traj, order)? == crate::shuffle::sample_with(order, stream))
}

/// One step of the shifted dynamics: rows are updated top to bottom with the
/// same row update, row `j` reading the new row `j - 1`, then the centre row
/// of the next half-diamond is appended.
pub fn x_view_step<B: BitSource>(t: &StaircaseTableau, bits: &mut B) -> StaircaseTableau {
    let n = t.order();
    let mut rows = t.to_rows();
    for r in 0..=n {
        let (upper, lower) = rows.split_at_mut(r);
        let above: &[u32] = upper.last().map_or(&[], Vec::as_slice);
        update_row(&mut lower[0], above, |i| bits.bit(r, i));
    }
    rows.push((0..=n as u32 + 1).map(|i| 2 * i + 1).collect());
    StaircaseTableau::from_rows(&rows).expect("shifted dynamics keeps interlacing")
}

/// Exact kernel `ST(n - 1) -> ST(n)` of the shifted dynamics, summing over
/// every assignment of the coins with weight `2^-cells`.
pub fn x_view_kernel(n: usize) -> Result<TransitionMatrix, EnumerationError> {
    assert!(n >= 1);
    let sources = enumerate_states(n - 1)?;
    let targets = enumerate_states(n)?;
    let cells = n * (n + 1) / 2;
    let weight = BigRational::new(BigInt::from(1), BigInt::from(1u64) << cells);
    let rows = sources
        .par_iter()
        .map(|s| {
            let mut row = BTreeMap::new();
            for mask in 0u64..1 << cells {
                let mut bits = |r: usize, i: usize| mask >> (r * (r + 1) / 2 + i) & 1 == 1;
                let out = x_view_step(s, &mut bits);
                let idx = targets.binary_search(&out).expect("target enumerated");
                *row.entry(idx).or_insert_with(BigRational::zero) += &weight;
            }
            row
        })
        .collect();
    Ok(TransitionMatrix {
        source_order: n - 1,
        target_order: n,
        sources,
        targets,
        rows,
    })
}
