//! The five equivalent models of a half-hexagon state and the conversions
//! among them:
//!
//! ```text
//! StaircaseTableau <-> ParticleSystem <-> HalfHexMatching <-> LozengeTiling <-> LatticePathFamily
//! ```
//!
//! Particle row `r` (`0 <= r < n`) lives on lattice level `b = n - 1 - r`, and
//! position `p` is the vertical honeycomb edge centred at
//! `(p - n - 1/2) v + (n - 1 - r) w`. Row `n` is the fixed bottom row and has
//! no edges; it is carried by the notches of the region.
//!
//! Lattice-path vertex `(x, y)` corresponds to the midpoint of the lattice
//! edge from `(-x - y - n) v + (x - 1) w` to `(-x - y - n) v + x w`, so path
//! `i` starts on the right side of notch `i - 1` at `(-n + 2i) v - w / 2`
//! and a `Right` step is `w - v`, an `Up` step `-v`.

pub mod brute;
mod geometry;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tableau::{StaircaseTableau, TableauError};

pub use geometry::{to_cartesian, HalfHexGraph, Lozenge, LozengeKind, TrapezoidRegion, Tri};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error("row {row} has {found} entries, expected {expected}")]
    RowSize { row: usize, expected: usize, found: usize },
    #[error("vertical edge ({row}, {position}) is outside the region")]
    EdgeOutOfRange { row: usize, position: u32 },
    #[error("no perfect matching completes the vertical edges (strip {strip})")]
    Completion { strip: i32 },
    #[error("triangle {0:?} is outside the region")]
    OutsideRegion(Tri),
    #[error("triangle {0:?} is covered twice")]
    Overlap(Tri),
    #[error("{missing} triangles of the region are uncovered")]
    Uncovered { missing: usize },
    #[error("path {path} is malformed: {reason}")]
    BadPath { path: usize, reason: String },
    #[error("paths {first} and {second} share the point ({x}, {y})")]
    Intersecting { first: usize, second: usize, x: i64, y: i64 },
}

// ---------------------------------------------------------------- particles

/// Interlacing particles: row `r` (`0..=n`) holds `r + 1` positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ParticleRecord", try_from = "ParticleRecord")]
pub struct ParticleSystem {
    order: usize,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct ParticleRecord {
    order: usize,
    particles: Vec<(usize, u32)>,
}

impl From<ParticleSystem> for ParticleRecord {
    fn from(p: ParticleSystem) -> Self {
        ParticleRecord {
            order: p.order,
            particles: p.particles().collect(),
        }
    }
}

impl TryFrom<ParticleRecord> for ParticleSystem {
    type Error = BijectionError;

    fn try_from(rec: ParticleRecord) -> Result<Self, Self::Error> {
        ParticleSystem::from_particles(rec.order, &rec.particles)
    }
}

impl ParticleSystem {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, BijectionError> {
        StaircaseTableau::from_rows(&rows)?;
        Ok(ParticleSystem {
            order: rows.len() - 1,
            rows,
        })
    }

    /// Builds from an unordered set of `(row, position)` pairs.
    pub fn from_particles(order: usize, particles: &[(usize, u32)]) -> Result<Self, BijectionError> {
        let mut rows = vec![Vec::new(); order + 1];
        for &(r, p) in particles {
            let row = rows.get_mut(r).ok_or(BijectionError::RowSize {
                row: r,
                expected: 0,
                found: 1,
            })?;
            row.push(p);
        }
        for (r, row) in rows.iter_mut().enumerate() {
            if row.len() != r + 1 {
                return Err(BijectionError::RowSize {
                    row: r,
                    expected: r + 1,
                    found: row.len(),
                });
            }
            row.sort_unstable();
        }
        Self::from_rows(rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// All `(row, position)` pairs, row by row.
    pub fn particles(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&p| (r, p)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn st_to_particles(t: &StaircaseTableau) -> ParticleSystem {
    ParticleSystem {
        order: t.order(),
        rows: t.to_rows(),
    }
}

pub fn particles_to_st(p: &ParticleSystem) -> Result<StaircaseTableau, BijectionError> {
    Ok(StaircaseTableau::from_rows(&p.rows)?)
}

// ---------------------------------------------------------------- matching

/// A perfect matching of the dual graph, stored by its vertical edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfHexMatching {
    pub order: usize,
    /// `(row, position)` of each matched vertical edge, sorted.
    pub vertical_edges: Vec<(usize, u32)>,
}

impl HalfHexMatching {
    pub fn region(&self) -> TrapezoidRegion {
        TrapezoidRegion::new(self.order)
    }

    /// The full perfect matching: every edge as an `(up, down)` pair,
    /// sorted by up triangle.
    pub fn completion(&self) -> Result<Vec<(Tri, Tri)>, BijectionError> {
        Ok(self
            .complete()?
            .into_iter()
            .map(|l| (l.up_triangle(), l.down_triangle()))
            .collect())
    }

    fn complete(&self) -> Result<Vec<Lozenge>, BijectionError> {
        let region = self.region();
        let mut verticals = Vec::with_capacity(self.vertical_edges.len());
        for &(r, p) in &self.vertical_edges {
            if r >= self.order || p == 0 || p as usize > region.row_len(r) {
                return Err(BijectionError::EdgeOutOfRange { row: r, position: p });
            }
            verticals.push(Lozenge::new(LozengeKind::Vertical, region.a_of_position(p), region.level_of_row(r)));
        }
        let taken: HashSet<Tri> = verticals
            .iter()
            .flat_map(|l| [l.up_triangle(), l.down_triangle()])
            .collect();
        if taken.len() != 2 * verticals.len() {
            return Err(BijectionError::Completion { strip: -1 });
        }
        let mut tiles = verticals;
        for b in region.strips() {
            let free: Vec<Tri> = region
                .strip(b)
                .into_iter()
                .filter(|t| !taken.contains(t))
                .collect();
            if free.len() % 2 == 1 {
                return Err(BijectionError::Completion { strip: b });
            }
            for pair in free.chunks_exact(2) {
                let (x, y) = (pair[0], pair[1]);
                if y.strip_index() != x.strip_index() + 1 {
                    return Err(BijectionError::Completion { strip: b });
                }
                tiles.push(Lozenge::from_pair(x, y).ok_or(BijectionError::Completion { strip: b })?);
            }
        }
        tiles.sort_unstable();
        Ok(tiles)
    }
}

pub fn particles_to_matching(p: &ParticleSystem) -> HalfHexMatching {
    let mut vertical_edges: Vec<(usize, u32)> =
        p.particles().filter(|&(r, _)| r < p.order).collect();
    vertical_edges.sort_unstable();
    HalfHexMatching {
        order: p.order,
        vertical_edges,
    }
}

pub fn matching_to_particles(m: &HalfHexMatching) -> Result<ParticleSystem, BijectionError> {
    let n = m.order;
    let mut particles = m.vertical_edges.clone();
    particles.extend((0..=n as u32).map(|j| (n, 2 * j + 1)));
    let p = ParticleSystem::from_particles(n, &particles)?;
    // valid interlacing guarantees a completion; check it anyway
    m.complete()?;
    Ok(p)
}

// ---------------------------------------------------------------- lozenges

/// A lozenge tiling of `R_n`, tiles sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LozengeTiling {
    pub region: TrapezoidRegion,
    pub tiles: Vec<Lozenge>,
}

impl LozengeTiling {
    pub fn new(order: usize, mut tiles: Vec<Lozenge>) -> Result<Self, BijectionError> {
        tiles.sort_unstable();
        let t = LozengeTiling {
            region: TrapezoidRegion::new(order),
            tiles,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.region.order
    }

    /// Checks that the tiles are disjoint and cover the region exactly.
    pub fn validate(&self) -> Result<(), BijectionError> {
        let mut seen = HashSet::with_capacity(2 * self.tiles.len());
        for l in &self.tiles {
            for t in [l.up_triangle(), l.down_triangle()] {
                if !self.region.contains(&t) {
                    return Err(BijectionError::OutsideRegion(t));
                }
                if !seen.insert(t) {
                    return Err(BijectionError::Overlap(t));
                }
            }
        }
        let total = self.region.triangles().len();
        if seen.len() != total {
            return Err(BijectionError::Uncovered {
                missing: total - seen.len(),
            });
        }
        Ok(())
    }

    /// Map from each covered triangle to its tile.
    fn cover(&self) -> HashMap<Tri, Lozenge> {
        self.tiles
            .iter()
            .flat_map(|l| [(l.up_triangle(), *l), (l.down_triangle(), *l)])
            .collect()
    }
}

pub fn matching_to_lozenges(m: &HalfHexMatching) -> Result<LozengeTiling, BijectionError> {
    LozengeTiling::new(m.order, m.complete()?)
}

pub fn lozenges_to_matching(t: &LozengeTiling) -> Result<HalfHexMatching, BijectionError> {
    t.validate()?;
    let mut vertical_edges: Vec<(usize, u32)> = t
        .tiles
        .iter()
        .filter_map(|l| t.region.row_position_of_vertical(l))
        .collect();
    vertical_edges.sort_unstable();
    Ok(HalfHexMatching {
        order: t.order(),
        vertical_edges,
    })
}

// ---------------------------------------------------------------- paths

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Right,
    Up,
}

/// One lattice path as a step sequence; serialized as a string over `{R, U}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Path(pub Vec<Step>);

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::Right => "R",
                Step::Up => "U",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                'R' => Ok(Step::Right),
                'U' => Ok(Step::Up),
                other => Err(format!("unexpected step {other:?}")),
            })
            .collect::<Result<_, _>>()
            .map(Path)
    }
}

impl From<Path> for String {
    fn from(p: Path) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Path {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// `n` non-intersecting up-right paths; path `i` (1-indexed, stored at
/// index `i - 1`) runs from `(0, -2i)` to `(i, -i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PathRecord")]
pub struct LatticePathFamily {
    pub order: usize,
    pub paths: Vec<Path>,
}

#[derive(Deserialize)]
struct PathRecord {
    order: usize,
    paths: Vec<Path>,
}

impl TryFrom<PathRecord> for LatticePathFamily {
    type Error = BijectionError;

    fn try_from(rec: PathRecord) -> Result<Self, Self::Error> {
        let f = LatticePathFamily {
            order: rec.order,
            paths: rec.paths,
        };
        f.validate()?;
        Ok(f)
    }
}

impl LatticePathFamily {
    pub fn start(i: usize) -> (i64, i64) {
        (0, -2 * i as i64)
    }

    pub fn end(i: usize) -> (i64, i64) {
        (i as i64, -(i as i64))
    }

    /// Lattice points visited by path `i` (1-indexed), start included.
    pub fn points(&self, i: usize) -> Vec<(i64, i64)> {
        let (mut x, mut y) = Self::start(i);
        let mut pts = vec![(x, y)];
        for s in &self.paths[i - 1].0 {
            match s {
                Step::Right => x += 1,
                Step::Up => y += 1,
            }
            pts.push((x, y));
        }
        pts
    }

    pub fn validate(&self) -> Result<(), BijectionError> {
        if self.paths.len() != self.order {
            return Err(BijectionError::BadPath {
                path: self.paths.len(),
                reason: format!("expected {} paths", self.order),
            });
        }
        let mut owner: HashMap<(i64, i64), usize> = HashMap::new();
        for i in 1..=self.order {
            let steps = &self.paths[i - 1].0;
            let rights = steps.iter().filter(|s| **s == Step::Right).count();
            if rights != i || steps.len() != 2 * i {
                return Err(BijectionError::BadPath {
                    path: i,
                    reason: format!("needs {i} R and {i} U steps"),
                });
            }
            for pt in self.points(i) {
                if let Some(first) = owner.insert(pt, i) {
                    return Err(BijectionError::Intersecting {
                        first,
                        second: i,
                        x: pt.0,
                        y: pt.1,
                    });
                }
            }
        }
        Ok(())
    }

    /// The lattice-path vertex `(x, y)` as the lower end `(a, b)` of a `w`-edge.
    pub fn edge_of_point(order: usize, (x, y): (i64, i64)) -> (i32, i32) {
        ((-x - y - order as i64) as i32, (x - 1) as i32)
    }
}

pub fn lozenges_to_paths(t: &LozengeTiling) -> Result<LatticePathFamily, BijectionError> {
    t.validate()?;
    let n = t.order();
    let cover = t.cover();
    let mut paths = Vec::with_capacity(n);
    for i in 1..=n {
        let (mut a, mut b) = LatticePathFamily::edge_of_point(n, LatticePathFamily::start(i));
        let mut steps = Vec::with_capacity(2 * i);
        for _ in 0..2 * i {
            let left = Tri::down(a - 1, b);
            let step = match cover.get(&left).map(|l| l.kind) {
                Some(LozengeKind::Right) => Step::Up,
                Some(LozengeKind::Vertical) => {
                    b += 1;
                    Step::Right
                }
                _ => {
                    return Err(BijectionError::BadPath {
                        path: i,
                        reason: format!("no path lozenge left of edge ({a}, {b})"),
                    })
                }
            };
            a -= 1;
            steps.push(step);
        }
        paths.push(Path(steps));
    }
    let f = LatticePathFamily { order: n, paths };
    f.validate()?;
    Ok(f)
}

pub fn paths_to_lozenges(f: &LatticePathFamily) -> Result<LozengeTiling, BijectionError> {
    f.validate()?;
    let n = f.order;
    let region = TrapezoidRegion::new(n);
    let mut tiles = Vec::new();
    for i in 1..=n {
        let (mut a, mut b) = LatticePathFamily::edge_of_point(n, LatticePathFamily::start(i));
        for s in &f.paths[i - 1].0 {
            match s {
                Step::Up => tiles.push(Lozenge::new(LozengeKind::Right, a - 1, b)),
                Step::Right => {
                    tiles.push(Lozenge::new(LozengeKind::Vertical, a - 1, b + 1));
                    b += 1;
                }
            }
            a -= 1;
        }
    }
    let used: BTreeSet<Tri> = tiles.iter().map(|l| l.up_triangle()).collect();
    for u in region.triangles().into_iter().filter(|t| t.up && !used.contains(t)) {
        tiles.push(Lozenge::new(LozengeKind::Left, u.a, u.b));
    }
    LozengeTiling::new(n, tiles)
}

// ---------------------------------------------------------------- composites

pub fn st_to_paths(t: &StaircaseTableau) -> Result<LatticePathFamily, BijectionError> {
    let m = particles_to_matching(&st_to_particles(t));
    lozenges_to_paths(&matching_to_lozenges(&m)?)
}

pub fn paths_to_st(f: &LatticePathFamily) -> Result<StaircaseTableau, BijectionError> {
    let m = lozenges_to_matching(&paths_to_lozenges(f)?)?;
    particles_to_st(&matching_to_particles(&m)?)
}

/// Tableau to paths and back through every intermediate model.
pub fn round_trip(t: &StaircaseTableau) -> Result<StaircaseTableau, BijectionError> {
    paths_to_st(&st_to_paths(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_states;

    fn fig1() -> StaircaseTableau {
        StaircaseTableau::from_rows(&[vec![3], vec![2, 5], vec![1, 3, 6], vec![1, 3, 5, 7]]).unwrap()
    }

    #[test]
    fn order_zero_particles() {
        let p = st_to_particles(&StaircaseTableau::base());
        assert_eq!(p.particles().collect::<Vec<_>>(), vec![(0, 1)]);
        let m = particles_to_matching(&p);
        assert!(m.vertical_edges.is_empty());
        assert!(matching_to_lozenges(&m).unwrap().tiles.is_empty());
    }

    #[test]
    fn figure_particles_and_tiles() {
        let p = st_to_particles(&fig1());
        assert_eq!(p.len(), 10);
        for r in 0..=3 {
            assert_eq!(p.row(r).len(), r + 1);
        }
        let m = particles_to_matching(&p);
        let tiling = matching_to_lozenges(&m).unwrap();
        assert_eq!(tiling.tiles.len(), m.completion().unwrap().len());
        // 3n^2 + 3n triangles
        assert_eq!(tiling.tiles.len(), 18);
    }

    #[test]
    fn order_one_forced_completion() {
        let p = ParticleSystem::from_rows(vec![vec![1], vec![1, 3]]).unwrap();
        let tiling = matching_to_lozenges(&particles_to_matching(&p)).unwrap();
        let kinds: Vec<LozengeKind> = tiling.tiles.iter().map(|l| l.kind).collect();
        assert_eq!(kinds.len(), 3);
        assert_eq!(kinds.iter().filter(|k| **k == LozengeKind::Vertical).count(), 1);
    }

    #[test]
    fn endpoint_images_for_order_three() {
        // path i starts at (-n + 2i) v - w/2 and ends at -n v + (i - 1/2) w
        let n = 3;
        for i in 1..=n {
            let (a, b) = LatticePathFamily::edge_of_point(n, LatticePathFamily::start(i));
            assert_eq!((2 * a, 2 * b + 1), (2 * (-(n as i32) + 2 * i as i32), -1));
            let (a, b) = LatticePathFamily::edge_of_point(n, LatticePathFamily::end(i));
            assert_eq!((a, 2 * b + 1), (-(n as i32), 2 * i as i32 - 1));
        }
    }

    #[test]
    fn round_trip_all_small_states() {
        for n in 0..=4 {
            for t in enumerate_states(n).unwrap() {
                assert_eq!(round_trip(&t).unwrap(), t);
            }
        }
    }

    #[test]
    fn paths_have_the_right_lengths() {
        let f = st_to_paths(&fig1()).unwrap();
        for (k, p) in f.paths.iter().enumerate() {
            assert_eq!(p.0.len(), 2 * (k + 1));
        }
    }

    #[test]
    fn intersecting_family_rejected() {
        let f = LatticePathFamily {
            order: 2,
            paths: vec!["RU".parse().unwrap(), "UURR".parse().unwrap()],
        };
        assert!(matches!(f.validate(), Err(BijectionError::Intersecting { .. })));
    }

    #[test]
    fn broken_tiling_rejected() {
        let mut t = matching_to_lozenges(&particles_to_matching(&st_to_particles(&fig1()))).unwrap();
        t.tiles.pop();
        assert!(matches!(t.validate(), Err(BijectionError::Uncovered { missing: 2 })));
    }

    #[test]
    fn json_shapes() {
        let p = st_to_particles(&fig1());
        let json = serde_json::to_value(&p).unwrap();
        assert_eq!(json["particles"][0], serde_json::json!([0, 3]));
        let back: ParticleSystem = serde_json::from_value(json).unwrap();
        assert_eq!(back, p);

        let f = st_to_paths(&fig1()).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"paths\":[\""));
        let back: LatticePathFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);

        let t = paths_to_lozenges(&f).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: LozengeTiling = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
