//! Limit shapes.
//!
//! [`romik_z`] and [`romik_g`] give the limiting rescaled height function of
//! a uniformly random Aztec diamond tiling on the unit square. Inside the
//! inscribed circle `(x - 1/2)^2 + (y - 1/2)^2 < 1/4`, with `u = x - 1/2`,
//! `w = 1/2 - y` and `R = sqrt(1/4 - u^2 - w^2)`,
//!
//! ```text
//! Z = (2/pi) [ -u atan2(R, w) - (1/2) atan(2uw / R) + w atan(u / R) ]
//! ```
//!
//! and `G = x + Z`. Outside the circle `G` is frozen: `x + y` (left) and
//! `x - y` (right) below the centre line, `y - x` and `2 - x - y` above it.
//! `Z(x, 1/2) = 1/2 - x`, so `G = 1/2` along the centre line, and `G` is
//! continuous on the whole square with `G(x, 1 - y) = 1 - G(x, y)`.
//!
//! The empirical side samples half-hexagon states, averages the particle
//! occupation of every site and reads off where each row leaves its frozen
//! plateaus.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitStream;
use crate::shuffle::sample_with;
use crate::tableau::StaircaseTableau;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LimitShapeError {
    #[error("({x}, {y}) is outside the open disk inscribed in the unit square")]
    OutsideDisk { x: f64, y: f64 },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("point set is degenerate for the {0:?} model")]
    Degenerate(CurveModel),
}

/// `1/4 - (x - 1/2)^2 - (y - 1/2)^2`; positive strictly inside the disk.
fn disk_margin(x: f64, y: f64) -> f64 {
    0.25 - (x - 0.5).powi(2) - (y - 0.5).powi(2)
}

/// The disordered-region part of the limit height function.
pub fn romik_z(x: f64, y: f64) -> Result<f64, LimitShapeError> {
    let m = disk_margin(x, y);
    if m.is_nan() || m <= 0.0 {
        return Err(LimitShapeError::OutsideDisk { x, y });
    }
    let (u, w, r) = (x - 0.5, 0.5 - y, m.sqrt());
    Ok((2.0 / PI) * (-u * r.atan2(w) - 0.5 * (2.0 * u * w / r).atan() + w * (u / r).atan()))
}

/// Left and right breakpoints `(1 -+ 2 sqrt(y (1 - y))) / 2`.
pub fn arctic_boundary(y: f64) -> (f64, f64) {
    let s = (y * (1.0 - y)).max(0.0).sqrt();
    ((1.0 - 2.0 * s) / 2.0, (1.0 + 2.0 * s) / 2.0)
}

/// The limit height function on `[0, 1]^2`.
pub fn romik_g(x: f64, y: f64) -> f64 {
    let (left, right) = arctic_boundary(y);
    let lower = y <= 0.5;
    if x <= left {
        if lower {
            x + y
        } else {
            y - x
        }
    } else if x >= right {
        if lower {
            x - y
        } else {
            2.0 - x - y
        }
    } else {
        match romik_z(x, y) {
            Ok(z) => x + z,
            // rounding right at the circle: fall back to the nearer frozen value
            Err(_) => romik_g(if x < 0.5 { left } else { right }, y),
        }
    }
}

/// Affine map of `[0, 1] x [0, 1/2]` onto the half-hexagon trapezoid fixed by
/// `(0,0) -> (-1,0)`, `(1,0) -> (1,0)` and `(0,1/2) -> (-1/2, sqrt(3)/2)`.
pub fn affine_to_trapezoid((x, y): (f64, f64)) -> (f64, f64) {
    (-1.0 + 2.0 * x + y, 3f64.sqrt() * y)
}

pub fn affine_from_trapezoid((p, q): (f64, f64)) -> (f64, f64) {
    let y = q / 3f64.sqrt();
    ((p + 1.0 - y) / 2.0, y)
}

// ---------------------------------------------------------------- density

/// Particle occupation counts over `samples` states of one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityField {
    pub order: usize,
    pub samples: u64,
    /// `counts[r][p - 1]` is how many samples had a particle at position `p` of row `r`.
    pub counts: Vec<Vec<u64>>,
}

impl DensityField {
    pub fn empty(order: usize) -> Self {
        DensityField {
            order,
            samples: 0,
            counts: (0..=order).map(|r| vec![0; order + r + 1]).collect(),
        }
    }

    pub fn add(&mut self, t: &StaircaseTableau) {
        assert_eq!(t.order(), self.order);
        for (r, row) in t.rows().enumerate() {
            for &p in row {
                self.counts[r][p as usize - 1] += 1;
            }
        }
        self.samples += 1;
    }

    pub fn merge(mut self, other: &DensityField) -> Self {
        assert_eq!(self.order, other.order);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.samples += other.samples;
        self
    }

    /// Occupation frequency of position `p` (1-based) in row `r`.
    pub fn frequency(&self, r: usize, p: u32) -> f64 {
        self.counts[r][p as usize - 1] as f64 / self.samples.max(1) as f64
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.counts[r].len()
    }
}

/// Density of `samples` independent order-`order` states (trajectory `k` of `seed`).
pub fn empirical_density(order: usize, samples: usize, seed: u64) -> DensityField {
    (0..samples as u64)
        .into_par_iter()
        .fold(
            || DensityField::empty(order),
            |mut d, k| {
                d.add(&sample_with(order, BitStream::with_trajectory(seed, k)));
                d
            },
        )
        .reduce(|| DensityField::empty(order), |a, b| a.merge(&b))
}

/// Position `p` of row `r` in trapezoid units: corners `(+-1, 0)`,
/// `(+-1/2, sqrt(3)/2)`.
pub fn site_to_trapezoid(order: usize, r: usize, p: u32) -> (f64, f64) {
    let n = order as f64;
    let level = n - 1.0 - r as f64;
    ((p as f64 - n - 0.5 + level / 2.0) / n, level * 3f64.sqrt() / 2.0 / n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub row: usize,
    pub position: u32,
    pub side: Side,
    pub x: f64,
    pub y: f64,
}

pub const DEFAULT_FROZEN_THRESHOLD: f64 = 0.05;

/// Outermost disordered sites of each row. A site is frozen when its
/// frequency is within `threshold` of 0 or 1. A side is reported only when a
/// frozen plateau lies beyond it, so rows whose disorder reaches the edge of
/// the region, and rows without disorder, contribute fewer points.
pub fn frozen_boundary(d: &DensityField, threshold: f64) -> Vec<BoundaryPoint> {
    assert!(threshold > 0.0 && threshold < 0.5);
    let mut out = Vec::new();
    for r in 0..=d.order {
        let disordered: Vec<u32> = (1..=d.row_len(r) as u32)
            .filter(|&p| {
                let f = d.frequency(r, p);
                f > threshold && f < 1.0 - threshold
            })
            .collect();
        let (Some(&lo), Some(&hi)) = (disordered.first(), disordered.last()) else {
            continue;
        };
        let sides = [(lo, Side::Left, lo > 1), (hi, Side::Right, (hi as usize) < d.row_len(r))];
        for (p, side, _) in sides.into_iter().filter(|s| s.2) {
            let (x, y) = site_to_trapezoid(d.order, r, p);
            out.push(BoundaryPoint {
                row: r,
                position: p,
                side,
                x,
                y,
            });
        }
    }
    out
}

// ---------------------------------------------------------------- fitting

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveModel {
    /// `y = c0 + c1 x + c2 x^2`, fitted by vertical least squares.
    Quadratic,
    /// `a x^2 + b xy + c y^2 + d x + e y + f = 0`, unit coefficient norm.
    Conic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFit {
    pub model: CurveModel,
    pub coefficients: Vec<f64>,
    /// Residuals are first-order geometric distances `|F| / |grad F|` for
    /// both models, so the two are comparable.
    pub sup_residual: f64,
    pub rms_residual: f64,
    /// Largest plain vertical residual `|y - f(x)|`; quadratic model only.
    pub sup_vertical_residual: Option<f64>,
    /// `b^2 - 4ac` of the unit-norm conic; absent for the quadratic model.
    pub discriminant: Option<f64>,
    pub points: usize,
}

pub const MIN_FIT_POINTS: usize = 10;

/// Least-squares fit of `points` (sorted first, so the result does not
/// depend on their order).
pub fn fit_curve(points: &[(f64, f64)], model: CurveModel) -> Result<CurveFit, LimitShapeError> {
    if points.len() < MIN_FIT_POINTS {
        return Err(LimitShapeError::TooFewPoints {
            needed: MIN_FIT_POINTS,
            got: points.len(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    match model {
        CurveModel::Quadratic => fit_quadratic(&pts),
        CurveModel::Conic => fit_conic(&pts),
    }
}

fn residual_stats(res: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut sup, mut sq, mut k) = (0f64, 0f64, 0usize);
    for r in res {
        sup = sup.max(r.abs());
        sq += r * r;
        k += 1;
    }
    (sup, (sq / k as f64).sqrt())
}

fn fit_quadratic(pts: &[(f64, f64)]) -> Result<CurveFit, LimitShapeError> {
    let a = DMatrix::from_fn(pts.len(), 3, |i, j| pts[i].0.powi(j as i32));
    let b = DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1));
    let svd = a.svd(true, true);
    if svd.rank(1e-12) < 3 {
        return Err(LimitShapeError::Degenerate(CurveModel::Quadratic));
    }
    let c = svd
        .solve(&b, 1e-14)
        .map_err(|_| LimitShapeError::Degenerate(CurveModel::Quadratic))?;
    let vertical = |(x, y): (f64, f64)| y - (c[0] + c[1] * x + c[2] * x * x);
    let (sup, rms) = residual_stats(pts.iter().map(|&(x, y)| {
        let slope = c[1] + 2.0 * c[2] * x;
        vertical((x, y)) / (1.0 + slope * slope).sqrt()
    }));
    let (sup_vertical, _) = residual_stats(pts.iter().map(|&p| vertical(p)));
    Ok(CurveFit {
        model: CurveModel::Quadratic,
        coefficients: c.iter().copied().collect(),
        sup_residual: sup,
        rms_residual: rms,
        sup_vertical_residual: Some(sup_vertical),
        discriminant: None,
        points: pts.len(),
    })
}

fn fit_conic(pts: &[(f64, f64)]) -> Result<CurveFit, LimitShapeError> {
    let row = |x: f64, y: f64| [x * x, x * y, y * y, x, y, 1.0];
    let a = DMatrix::from_fn(pts.len(), 6, |i, j| row(pts[i].0, pts[i].1)[j]);
    // smallest right singular vector of the design matrix
    let scatter = a.transpose() * &a;
    let eig = scatter.symmetric_eigen();
    let k = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .ok_or(LimitShapeError::Degenerate(CurveModel::Conic))?;
    let v = eig.eigenvectors.column(k).normalize();
    if v.iter().any(|c| !c.is_finite()) {
        return Err(LimitShapeError::Degenerate(CurveModel::Conic));
    }
    // fix the overall sign so identical inputs give identical output
    let pivot = v.iter().copied().fold(0f64, |m, c| if c.abs() > m.abs() { c } else { m });
    let v: Vec<f64> = v.iter().map(|c| c * pivot.signum()).collect();
    let (ca, cb, cc, cd, ce, cf) = (v[0], v[1], v[2], v[3], v[4], v[5]);
    let sampson = |x: f64, y: f64| {
        let value = ca * x * x + cb * x * y + cc * y * y + cd * x + ce * y + cf;
        let gx = 2.0 * ca * x + cb * y + cd;
        let gy = cb * x + 2.0 * cc * y + ce;
        let g = (gx * gx + gy * gy).sqrt();
        if g > 0.0 {
            value / g
        } else {
            value
        }
    };
    let (sup, rms) = residual_stats(pts.iter().map(|&(x, y)| sampson(x, y)));
    Ok(CurveFit {
        model: CurveModel::Conic,
        discriminant: Some(cb * cb - 4.0 * ca * cc),
        coefficients: v,
        sup_residual: sup,
        rms_residual: rms,
        sup_vertical_residual: None,
        points: pts.len(),
    })
}

/// The parabola `y = (sqrt(3)/2)(1 - x^2)`: the only parabola with a
/// vertical axis tangent to the top edge and both slanted sides of the
/// trapezoid (at its bottom corners). Reference curve for empirical fits.
pub fn inscribed_parabola(x: f64) -> f64 {
    3f64.sqrt() / 2.0 * (1.0 - x * x)
}

/// Points of the arctic circle mapped into the trapezoid, for comparison
/// with empirical boundaries.
pub fn mapped_arctic_curve(samples: usize) -> Vec<(f64, f64)> {
    (0..=samples)
        .flat_map(|k| {
            let y = 0.5 * k as f64 / samples as f64;
            let (l, r) = arctic_boundary(y);
            [affine_to_trapezoid((l, y)), affine_to_trapezoid((r, y))]
        })
        .collect()
}

/// Fits of one empirical boundary against both curve models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcticSummary {
    pub order: usize,
    pub samples: u64,
    pub threshold: f64,
    pub boundary_points: usize,
    pub quadratic: CurveFit,
    pub conic: CurveFit,
    /// Largest `|y - inscribed_parabola(x)|` over the boundary points.
    pub parabola_sup_distance: f64,
}

pub fn arctic_summary(d: &DensityField, threshold: f64) -> Result<ArcticSummary, LimitShapeError> {
    let pts: Vec<(f64, f64)> = frozen_boundary(d, threshold).iter().map(|b| (b.x, b.y)).collect();
    let quadratic = fit_curve(&pts, CurveModel::Quadratic)?;
    let conic = fit_curve(&pts, CurveModel::Conic)?;
    let parabola_sup_distance = pts
        .iter()
        .map(|&(x, y)| (y - inscribed_parabola(x)).abs())
        .fold(0.0, f64::max);
    Ok(ArcticSummary {
        order: d.order,
        samples: d.samples,
        threshold,
        boundary_points: pts.len(),
        quadratic,
        conic,
        parabola_sup_distance,
    })
}

/// `atan2(R, 0) = pi/2`: the value the first term takes on the centre line.
pub const CENTRE_LINE_ANGLE: f64 = FRAC_PI_2;
