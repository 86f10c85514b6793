//! Square-lattice regions, domino tilings and height functions.
//!
//! A unit square is named by its lower-left corner and coloured by the parity
//! of that corner. Walking along a lattice edge that no domino crosses, the
//! height rises by one if the square on the left of the direction of travel
//! is even and falls by one if it is odd. Around a single square this sums
//! to `+-4`; a domino's interior edge is the one place the rule is skipped.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Square = (i32, i32);
pub type Vertex = (i32, i32);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominoError {
    #[error("boundary walk starting at {start:?} closes with height {closure} instead of 0")]
    Untileable { start: Vertex, closure: i64 },
    #[error("region has an empty boundary")]
    Empty,
    #[error("domino at {0:?} leaves the region")]
    OutsideRegion(Square),
    #[error("square {0:?} is covered twice")]
    Overlap(Square),
    #[error("{0} squares are uncovered")]
    Uncovered(usize),
    #[error("heights disagree across the edge {0:?} -> {1:?}")]
    Inconsistent(Vertex, Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    AztecDiamond,
    HalfDiamond,
    Custom,
}

/// A finite set of unit squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarRegion {
    pub kind: RegionKind,
    pub order: usize,
    pub squares: BTreeSet<Square>,
}

fn in_aztec(n: usize, (x, y): Square) -> bool {
    let n = n as i32 + 1;
    [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]
        .iter()
        .all(|(a, b)| a.abs() + b.abs() <= n)
}

/// The floor inequalities, evaluated at the square's lower-right corner.
fn in_half(n: usize, (x, y): Square) -> bool {
    let x = x + 1;
    if n.is_multiple_of(2) {
        y >= 2 * x.div_euclid(2)
    } else {
        y + 1 >= 2 * (x + 1).div_euclid(2)
    }
}

/// Membership of the square with lower-left corner `sq`, judged on its open
/// interior.
pub fn region_membership(r: &PlanarRegion, sq: Square) -> bool {
    match r.kind {
        RegionKind::AztecDiamond => in_aztec(r.order, sq),
        RegionKind::HalfDiamond => in_aztec(r.order, sq) && in_half(r.order, sq),
        RegionKind::Custom => r.squares.contains(&sq),
    }
}

impl PlanarRegion {
    fn generate(kind: RegionKind, order: usize) -> Self {
        let mut r = PlanarRegion {
            kind,
            order,
            squares: BTreeSet::new(),
        };
        let k = order as i32 + 1;
        let squares = (-k..k)
            .flat_map(|x| (-k..k).map(move |y| (x, y)))
            .filter(|&sq| region_membership(&r, sq))
            .collect();
        r.squares = squares;
        r
    }

    /// The Aztec diamond `|x| + |y| < n + 1`.
    pub fn aztec_diamond(order: usize) -> Self {
        Self::generate(RegionKind::AztecDiamond, order)
    }

    /// The Aztec half-diamond of order `n`.
    pub fn half_diamond(order: usize) -> Self {
        Self::generate(RegionKind::HalfDiamond, order)
    }

    pub fn custom(squares: impl IntoIterator<Item = Square>) -> Self {
        PlanarRegion {
            kind: RegionKind::Custom,
            order: 0,
            squares: squares.into_iter().collect(),
        }
    }

    pub fn contains(&self, sq: Square) -> bool {
        self.squares.contains(&sq)
    }

    pub fn without(&self, sq: Square) -> Self {
        let mut squares = self.squares.clone();
        squares.remove(&sq);
        Self::custom(squares)
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.squares
            .iter()
            .flat_map(|&(x, y)| [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)])
            .collect()
    }

    /// Boundary edges, oriented with the region on their left.
    fn boundary_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for &(x, y) in &self.squares {
            let sides = [
                ((x, y - 1), (x, y), (x + 1, y)),
                ((x + 1, y), (x + 1, y), (x + 1, y + 1)),
                ((x, y + 1), (x + 1, y + 1), (x, y + 1)),
                ((x - 1, y), (x, y + 1), (x, y)),
            ];
            for (across, from, to) in sides {
                if !self.contains(across) {
                    out.push((from, to));
                }
            }
        }
        out
    }
}

/// Height change walking from `from` to the adjacent vertex `to`.
pub fn height_step(from: Vertex, to: Vertex) -> i64 {
    let left = match (to.0 - from.0, to.1 - from.1) {
        (1, 0) => from,
        (0, 1) => (from.0 - 1, from.1),
        (-1, 0) => (to.0, to.1 - 1),
        (0, -1) => to,
        d => panic!("vertices {from:?} and {to:?} are not adjacent ({d:?})"),
    };
    if (left.0 + left.1).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Integer heights on lattice vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HeightField {
    pub heights: BTreeMap<Vertex, i64>,
}

impl HeightField {
    pub fn get(&self, v: Vertex) -> Option<i64> {
        self.heights.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// The same field restricted to `vertices`.
    pub fn restrict(&self, vertices: &BTreeSet<Vertex>) -> HeightField {
        HeightField {
            heights: self
                .heights
                .iter()
                .filter(|(v, _)| vertices.contains(v))
                .map(|(v, h)| (*v, *h))
                .collect(),
        }
    }
}

/// The first boundary vertex in `(y, x)` order; heights are pinned to 0 there.
fn base_vertex(edges: &[(Vertex, Vertex)]) -> Option<Vertex> {
    edges.iter().map(|e| e.0).min_by_key(|&(x, y)| (y, x))
}

/// Heights along the boundary, from the increment rule on boundary edges.
///
/// Each boundary cycle is walked with the region on the left; at a vertex
/// with two outgoing boundary edges the walk turns left first. Every cycle
/// must return to its starting height. Cycles after the first (holes or
/// disconnected pieces) are pinned to 0 at their own lowest vertex.
pub fn boundary_height(r: &PlanarRegion) -> Result<HeightField, DominoError> {
    let edges = r.boundary_edges();
    let mut outgoing: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(a, b) in &edges {
        outgoing.entry(a).or_default().push(b);
    }
    let mut remaining: BTreeSet<(Vertex, Vertex)> = edges.iter().copied().collect();
    let mut field = HeightField::default();
    while let Some(start) = base_vertex(&remaining.iter().copied().collect::<Vec<_>>()) {
        let mut at = start;
        let mut h = 0i64;
        let mut heading = None;
        field.heights.insert(start, 0);
        loop {
            let next = pick_next(at, heading, &outgoing[&at], &remaining).expect("boundary edges form cycles");
            remaining.remove(&(at, next));
            h += height_step(at, next);
            heading = Some((next.0 - at.0, next.1 - at.1));
            at = next;
            if at == start && !remaining.iter().any(|e| e.0 == start) {
                break;
            }
            field.heights.insert(at, h);
        }
        if h != 0 {
            return Err(DominoError::Untileable { start, closure: h });
        }
    }
    if field.is_empty() {
        return Err(DominoError::Empty);
    }
    Ok(field)
}

fn pick_next(
    at: Vertex,
    heading: Option<(i32, i32)>,
    candidates: &[Vertex],
    remaining: &BTreeSet<(Vertex, Vertex)>,
) -> Option<Vertex> {
    let open: Vec<Vertex> = candidates
        .iter()
        .copied()
        .filter(|&b| remaining.contains(&(at, b)))
        .collect();
    let Some((dx, dy)) = heading else {
        return open.first().copied();
    };
    // left, straight, right
    let prefs = [(-dy, dx), (dx, dy), (dy, -dx)];
    prefs
        .iter()
        .map(|&(ex, ey)| (at.0 + ex, at.1 + ey))
        .find(|v| open.contains(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "H")]
    Horizontal,
    #[serde(rename = "V")]
    Vertical,
}

/// A domino, named by its lower-left square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Domino {
    pub at: Square,
    pub orientation: Orientation,
}

impl Domino {
    pub fn horizontal(x: i32, y: i32) -> Self {
        Domino {
            at: (x, y),
            orientation: Orientation::Horizontal,
        }
    }

    pub fn vertical(x: i32, y: i32) -> Self {
        Domino {
            at: (x, y),
            orientation: Orientation::Vertical,
        }
    }

    pub fn squares(&self) -> [Square; 2] {
        let (x, y) = self.at;
        match self.orientation {
            Orientation::Horizontal => [(x, y), (x + 1, y)],
            Orientation::Vertical => [(x, y), (x, y + 1)],
        }
    }

    /// The interior edge the domino covers.
    pub fn crossed_edge(&self) -> (Vertex, Vertex) {
        let (x, y) = self.at;
        match self.orientation {
            Orientation::Horizontal => ((x + 1, y), (x + 1, y + 1)),
            Orientation::Vertical => ((x, y + 1), (x + 1, y + 1)),
        }
    }
}

/// A domino tiling read from a file; validated against its region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominoTiling {
    pub dominoes: Vec<Domino>,
}

impl DominoTiling {
    pub fn validate(&self, region: &PlanarRegion) -> Result<(), DominoError> {
        let mut seen = BTreeSet::new();
        for d in &self.dominoes {
            for sq in d.squares() {
                if !region.contains(sq) {
                    return Err(DominoError::OutsideRegion(d.at));
                }
                if !seen.insert(sq) {
                    return Err(DominoError::Overlap(sq));
                }
            }
        }
        match region.squares.len() - seen.len() {
            0 => Ok(()),
            k => Err(DominoError::Uncovered(k)),
        }
    }
}

/// Full height field of a tiling, pinned to 0 at the same base vertex as
/// [`boundary_height`].
pub fn height_of_tiling(region: &PlanarRegion, tiling: &DominoTiling) -> Result<HeightField, DominoError> {
    tiling.validate(region)?;
    let crossed: BTreeSet<(Vertex, Vertex)> = tiling.dominoes.iter().map(Domino::crossed_edge).collect();
    let is_crossed = |a: Vertex, b: Vertex| crossed.contains(&(a.min(b), a.max(b)));
    let vertices = region.vertices();
    let edge_in_region = |a: Vertex, b: Vertex| {
        // an edge belongs to the region if a square on either side does
        let (lo, hi) = (a.min(b), a.max(b));
        if lo.1 == hi.1 {
            region.contains(lo) || region.contains((lo.0, lo.1 - 1))
        } else {
            region.contains(lo) || region.contains((lo.0 - 1, lo.1))
        }
    };
    let Some(base) = base_vertex(&region.boundary_edges()) else {
        return Err(DominoError::Empty);
    };
    let mut field = HeightField::default();
    let mut queue = VecDeque::new();
    field.heights.insert(base, 0);
    queue.push_back(base);
    while let Some(v) = queue.pop_front() {
        let h = field.heights[&v];
        for w in [(v.0 + 1, v.1), (v.0 - 1, v.1), (v.0, v.1 + 1), (v.0, v.1 - 1)] {
            if !vertices.contains(&w) || !edge_in_region(v, w) || is_crossed(v, w) {
                continue;
            }
            let hw = h + height_step(v, w);
            match field.heights.get(&w) {
                Some(&old) if old != hw => return Err(DominoError::Inconsistent(v, w)),
                Some(_) => {}
                None => {
                    field.heights.insert(w, hw);
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aztec_areas() {
        for n in 0..10 {
            assert_eq!(PlanarRegion::aztec_diamond(n).squares.len(), 2 * n * (n + 1));
        }
    }

    #[test]
    fn half_diamond_membership_examples() {
        let h2 = PlanarRegion::half_diamond(2);
        assert!(region_membership(&h2, (0, 0)));
        assert!(!region_membership(&h2, (0, -1)));
        for n in 0..12 {
            let a = PlanarRegion::aztec_diamond(n);
            assert!(PlanarRegion::half_diamond(n).squares.is_subset(&a.squares));
        }
    }

    #[test]
    fn order_one_boundary() {
        let f = boundary_height(&PlanarRegion::aztec_diamond(1)).unwrap();
        let expected: BTreeMap<Vertex, i64> = [
            ((-1, -1), 0),
            ((0, -1), 1),
            ((1, -1), 0),
            ((1, 0), -1),
            ((1, 1), 0),
            ((0, 1), 1),
            ((-1, 1), 0),
            ((-1, 0), -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(f.heights, expected);
    }

    #[test]
    fn mutilated_diamond_is_untileable() {
        let r = PlanarRegion::aztec_diamond(2).without((0, 1));
        assert!(matches!(boundary_height(&r), Err(DominoError::Untileable { .. })));
    }

    #[test]
    fn two_tilings_of_order_one() {
        let r = PlanarRegion::aztec_diamond(1);
        let flat = DominoTiling {
            dominoes: vec![Domino::horizontal(-1, -1), Domino::horizontal(-1, 0)],
        };
        let tall = DominoTiling {
            dominoes: vec![Domino::vertical(-1, -1), Domino::vertical(0, -1)],
        };
        let hf = height_of_tiling(&r, &flat).unwrap();
        let ht = height_of_tiling(&r, &tall).unwrap();
        assert_eq!(hf.len(), 9);
        assert_eq!(hf.get((0, 0)), Some(-2));
        assert_eq!(ht.get((0, 0)), Some(2));
        let boundary = boundary_height(&r).unwrap();
        let bv: BTreeSet<Vertex> = boundary.heights.keys().copied().collect();
        assert_eq!(hf.restrict(&bv), boundary);
        assert_eq!(ht.restrict(&bv), boundary);
    }

    #[test]
    fn overlapping_tiling_rejected() {
        let r = PlanarRegion::aztec_diamond(1);
        let bad = DominoTiling {
            dominoes: vec![Domino::horizontal(-1, -1), Domino::vertical(-1, -1)],
        };
        assert!(matches!(height_of_tiling(&r, &bad), Err(DominoError::Overlap(_))));
    }
}
