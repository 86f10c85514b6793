//! Exact triangular-lattice geometry of the half-hexagon region.
//!
//! Lattice points are integer pairs `(a, b)` meaning `a v + b w` with
//! `v = (1, 0)` and `w = (1/2, sqrt(3)/2)`. The up triangle `U(a, b)` has
//! corners `(a, b), (a+1, b), (a, b+1)`; the down triangle `D(a, b)` has
//! corners `(a+1, b), (a, b+1), (a+1, b+1)`. Strip `b` is the band between
//! the horizontal lines at heights `b` and `b + 1`.
//!
//! The region `R_n` is the trapezoid with corners `-n v, n v, n w, n (w - v)`
//! (strips `0..n`) together with `n` notches hanging below its bottom edge in
//! strip `-1`. Notch `k` is centred at `c = 2k - n + 1` and consists of
//! `D(c-1, -1)`, `U(c, -1)` and `D(c, -1)`.

use serde::{Deserialize, Serialize};

/// A unit triangle of the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tri {
    pub up: bool,
    pub a: i32,
    pub b: i32,
}

impl Tri {
    pub const fn up(a: i32, b: i32) -> Self {
        Tri { up: true, a, b }
    }

    pub const fn down(a: i32, b: i32) -> Self {
        Tri { up: false, a, b }
    }

    /// Corners in lattice coordinates, counter-clockwise.
    pub fn corners(&self) -> [(i32, i32); 3] {
        let (a, b) = (self.a, self.b);
        if self.up {
            [(a, b), (a + 1, b), (a, b + 1)]
        } else {
            [(a + 1, b), (a + 1, b + 1), (a, b + 1)]
        }
    }

    /// The three edge-neighbours (down triangles for an up triangle and vice versa).
    pub fn neighbours(&self) -> [Tri; 3] {
        let (a, b) = (self.a, self.b);
        if self.up {
            [Tri::down(a, b - 1), Tri::down(a - 1, b), Tri::down(a, b)]
        } else {
            [Tri::up(a, b + 1), Tri::up(a + 1, b), Tri::up(a, b)]
        }
    }

    /// Position of the triangle along its strip: `2a` for up, `2a + 1` for down.
    pub fn strip_index(&self) -> i32 {
        2 * self.a + i32::from(!self.up)
    }
}

/// The three lozenge orientations, named by the edge shared by the up
/// triangle `U(a, b)` and its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LozengeKind {
    /// `U(a, b) + D(a, b - 1)`: shares the horizontal bottom edge; dual to a
    /// vertical honeycomb edge.
    Vertical,
    /// `U(a, b) + D(a - 1, b)`: shares the left edge.
    Left,
    /// `U(a, b) + D(a, b)`: shares the right edge.
    Right,
}

/// A lozenge, anchored at its up triangle `U(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lozenge {
    pub kind: LozengeKind,
    pub a: i32,
    pub b: i32,
}

impl Lozenge {
    pub fn new(kind: LozengeKind, a: i32, b: i32) -> Self {
        Lozenge { kind, a, b }
    }

    pub fn up_triangle(&self) -> Tri {
        Tri::up(self.a, self.b)
    }

    pub fn down_triangle(&self) -> Tri {
        match self.kind {
            LozengeKind::Vertical => Tri::down(self.a, self.b - 1),
            LozengeKind::Left => Tri::down(self.a - 1, self.b),
            LozengeKind::Right => Tri::down(self.a, self.b),
        }
    }

    /// The lozenge made of two adjacent triangles, if they are adjacent.
    pub fn from_pair(x: Tri, y: Tri) -> Option<Lozenge> {
        let (u, d) = match (x.up, y.up) {
            (true, false) => (x, y),
            (false, true) => (y, x),
            _ => return None,
        };
        let kind = if d == Tri::down(u.a, u.b - 1) {
            LozengeKind::Vertical
        } else if d == Tri::down(u.a - 1, u.b) {
            LozengeKind::Left
        } else if d == Tri::down(u.a, u.b) {
            LozengeKind::Right
        } else {
            return None;
        };
        Some(Lozenge::new(kind, u.a, u.b))
    }

    /// Corners of the parallelogram in lattice coordinates, in boundary order.
    pub fn corners(&self) -> [(i32, i32); 4] {
        let (a, b) = (self.a, self.b);
        match self.kind {
            LozengeKind::Vertical => [(a, b), (a + 1, b - 1), (a + 1, b), (a, b + 1)],
            LozengeKind::Left => [(a, b), (a + 1, b), (a, b + 1), (a - 1, b + 1)],
            LozengeKind::Right => [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)],
        }
    }
}

/// The half-hexagon region `R_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrapezoidRegion {
    pub order: usize,
}

impl TrapezoidRegion {
    pub fn new(order: usize) -> Self {
        TrapezoidRegion { order }
    }

    fn n(&self) -> i32 {
        self.order as i32
    }

    /// Centre `c` of notch `k`.
    pub fn notch_centre(&self, k: usize) -> i32 {
        2 * k as i32 - self.n() + 1
    }

    pub fn contains(&self, t: &Tri) -> bool {
        let n = self.n();
        let (a, b) = (t.a, t.b);
        if b == -1 {
            // a notch centre c satisfies c + n odd and |c| < n
            let c = if t.up || (a + n).rem_euclid(2) == 1 { a } else { a + 1 };
            if (c + n).rem_euclid(2) != 1 || c <= -n || c >= n {
                return false;
            }
            return t.up || a == c - 1 || a == c;
        }
        if b < 0 || b >= n {
            return false;
        }
        let hi = if t.up { n - b - 1 } else { n - b - 2 };
        a >= -n && a <= hi
    }

    /// Triangles of strip `b`, left to right.
    pub fn strip(&self, b: i32) -> Vec<Tri> {
        let n = self.n();
        let lo = 2 * (-n - 1);
        let hi = 2 * n + 1;
        (lo..=hi)
            .map(|idx| {
                let a = idx.div_euclid(2);
                if idx.rem_euclid(2) == 0 {
                    Tri::up(a, b)
                } else {
                    Tri::down(a, b)
                }
            })
            .filter(|t| self.contains(t))
            .collect()
    }

    /// Strips that meet the region, bottom to top.
    pub fn strips(&self) -> std::ops::Range<i32> {
        if self.order == 0 {
            0..0
        } else {
            -1..self.n()
        }
    }

    pub fn triangles(&self) -> Vec<Tri> {
        self.strips().flat_map(|b| self.strip(b)).collect()
    }

    /// Number of vertical-edge slots in particle row `r` (`0 <= r < n`).
    pub fn row_len(&self, r: usize) -> usize {
        self.order + r + 1
    }

    /// Lattice level of particle row `r`.
    pub fn level_of_row(&self, r: usize) -> i32 {
        self.n() - 1 - r as i32
    }

    /// Lattice `a` coordinate of position `p` (1-based) in any row.
    pub fn a_of_position(&self, p: u32) -> i32 {
        p as i32 - self.n() - 1
    }

    /// The vertical honeycomb edge at particle row `r`, position `p`, as its
    /// two endpoints `(U(a, b), D(a, b - 1))`. Its centre is the lattice
    /// point `(a + 1/2, b)`, i.e. `(-n - 1/2 + p) v + (n - 1 - r) w`.
    pub fn vertical_edge(&self, r: usize, p: u32) -> (Tri, Tri) {
        let a = self.a_of_position(p);
        let b = self.level_of_row(r);
        (Tri::up(a, b), Tri::down(a, b - 1))
    }

    /// Inverse of [`Self::vertical_edge`] for a vertical lozenge.
    pub fn row_position_of_vertical(&self, l: &Lozenge) -> Option<(usize, u32)> {
        if l.kind != LozengeKind::Vertical || l.b < 0 || l.b >= self.n() {
            return None;
        }
        let r = (self.n() - 1 - l.b) as usize;
        let p = l.a + self.n() + 1;
        (p >= 1 && p as usize <= self.row_len(r)).then_some((r, p as u32))
    }

    /// The large-trapezoid corners `-n v, n v, n w, n (w - v)`.
    pub fn outer_corners(&self) -> [(i32, i32); 4] {
        let n = self.n();
        [(-n, 0), (n, 0), (0, n), (-n, n)]
    }

    /// Corners of notch `k`: `c v + v, c v - v, c v - w, c v + v - w`.
    pub fn notch_corners(&self, k: usize) -> [(i32, i32); 4] {
        let c = self.notch_centre(k);
        [(c + 1, 0), (c - 1, 0), (c, -1), (c + 1, -1)]
    }
}

/// The dual honeycomb graph `R_n^v`: vertices are the triangles of `R_n`,
/// edges join triangles sharing a side.
#[derive(Debug, Clone)]
pub struct HalfHexGraph {
    pub region: TrapezoidRegion,
    pub vertices: Vec<Tri>,
}

impl HalfHexGraph {
    pub fn new(order: usize) -> Self {
        let region = TrapezoidRegion::new(order);
        let mut vertices = region.triangles();
        vertices.sort();
        HalfHexGraph { region, vertices }
    }

    pub fn index_of(&self, t: &Tri) -> Option<usize> {
        self.vertices.binary_search(t).ok()
    }

    pub fn neighbours(&self, t: &Tri) -> Vec<Tri> {
        t.neighbours()
            .into_iter()
            .filter(|x| self.region.contains(x))
            .collect()
    }

    /// Edges as `(up, down)` pairs.
    pub fn edges(&self) -> Vec<(Tri, Tri)> {
        self.vertices
            .iter()
            .filter(|t| t.up)
            .flat_map(|u| self.neighbours(u).into_iter().map(move |d| (*u, d)))
            .collect()
    }
}

/// Cartesian image of a lattice point (`y` pointing up).
pub fn to_cartesian(a: f64, b: f64) -> (f64, f64) {
    (a + b / 2.0, b * 3f64.sqrt() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts_balance() {
        for n in 0..8 {
            let r = TrapezoidRegion::new(n);
            let tris = r.triangles();
            let ups = tris.iter().filter(|t| t.up).count();
            assert_eq!(ups * 2, tris.len(), "order {n}");
            // 3n^2 in the trapezoid, 3 per notch
            assert_eq!(tris.len(), 3 * n * n + 3 * n);
        }
    }

    #[test]
    fn order_one_region() {
        let r = TrapezoidRegion::new(1);
        let mut tris = r.triangles();
        tris.sort();
        let mut expected = vec![
            Tri::down(-1, -1),
            Tri::up(0, -1),
            Tri::down(0, -1),
            Tri::up(-1, 0),
            Tri::down(-1, 0),
            Tri::up(0, 0),
        ];
        expected.sort();
        assert_eq!(tris, expected);
    }

    #[test]
    fn vertical_edge_counts_per_level() {
        // vertical edges at level b join U(a, b) and D(a, b - 1)
        for n in 1..7 {
            let r = TrapezoidRegion::new(n);
            for row in 0..n {
                let b = r.level_of_row(row);
                let slots = (-(n as i32)..=n as i32)
                    .filter(|&a| r.contains(&Tri::up(a, b)) && r.contains(&Tri::down(a, b - 1)))
                    .count();
                assert_eq!(slots, r.row_len(row));
            }
        }
    }

    #[test]
    fn lozenge_pairs_round_trip() {
        for kind in [LozengeKind::Vertical, LozengeKind::Left, LozengeKind::Right] {
            let l = Lozenge::new(kind, 2, -1);
            assert_eq!(Lozenge::from_pair(l.up_triangle(), l.down_triangle()), Some(l));
            assert_eq!(Lozenge::from_pair(l.down_triangle(), l.up_triangle()), Some(l));
        }
        assert_eq!(Lozenge::from_pair(Tri::up(0, 0), Tri::down(3, 0)), None);
    }

    #[test]
    fn graph_degrees_at_most_three() {
        let g = HalfHexGraph::new(4);
        for v in &g.vertices {
            let d = g.neighbours(v).len();
            assert!((1..=3).contains(&d), "{v:?} has degree {d}");
        }
    }

    #[test]
    fn notches_tile_the_bottom_edge() {
        let r = TrapezoidRegion::new(3);
        let spans: Vec<(i32, i32)> = (0..3).map(|k| (r.notch_corners(k)[1].0, r.notch_corners(k)[0].0)).collect();
        assert_eq!(spans, vec![(-3, -1), (-1, 1), (1, 3)]);
    }
}
