//! SVG scenes with exact lattice geometry.
//!
//! Scene coordinates are integers in sixths of a lattice unit, enough to hold
//! triangle centroids and edge midpoints exactly. The root element records the
//! lattice, the scale and the pixel origin, so a rendered file parses back to
//! the same integer scene.

use std::fmt::Write as _;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use serde::{Deserialize, Serialize};

use super::IoError;
use crate::aztec::domino::PlanarRegion;
use crate::bijections::{
    particles_to_matching, st_to_particles, st_to_paths, LatticePathFamily, LozengeKind,
    TrapezoidRegion, Tri,
};
use crate::tableau::StaircaseTableau;

/// Sub-units per lattice unit.
pub const UNIT: i64 = 6;
pub const DEFAULT_SCALE: u32 = 24;
const MARGIN: f64 = 10.0;
const SQRT3_2: f64 = 0.866_025_403_784_438_6;

pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// Basis `v = (1, 0)`, `w = (1/2, sqrt3/2)`.
    Triangular,
    Square,
}

impl Lattice {
    fn name(self) -> &'static str {
        match self {
            Lattice::Triangular => "triangular",
            Lattice::Square => "square",
        }
    }

    /// Cartesian position in lattice units, `y` up.
    fn cartesian(self, (a, b): Point) -> (f64, f64) {
        let (a, b) = (a as f64 / UNIT as f64, b as f64 / UNIT as f64);
        match self {
            Lattice::Triangular => (a + b / 2.0, b * SQRT3_2),
            Lattice::Square => (a, b),
        }
    }

    fn lattice(self, (x, y): (f64, f64)) -> Point {
        let (a, b) = match self {
            Lattice::Triangular => {
                let b = y / SQRT3_2;
                (x - b / 2.0, b)
            }
            Lattice::Square => (x, y),
        };
        ((a * UNIT as f64).round() as i64, (b * UNIT as f64).round() as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Polygon(Vec<Point>),
    Polyline(Vec<Point>),
    Line(Point, Point),
    /// Radius in sub-units.
    Circle(Point, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    pub class: String,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub lattice: Lattice,
    /// Pixels per lattice unit.
    pub scale: u32,
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum View {
    Paths,
    Boxes,
    Matching,
    Lozenges,
    Particles,
    HalfDiamond,
}

impl View {
    pub const ALL: [View; 6] = [
        View::Paths,
        View::Boxes,
        View::Matching,
        View::Lozenges,
        View::Particles,
        View::HalfDiamond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            View::Paths => "paths",
            View::Boxes => "boxes",
            View::Matching => "matching",
            View::Lozenges => "lozenges",
            View::Particles => "particles",
            View::HalfDiamond => "half-diamond",
        }
    }
}

const STYLE: &str = "\
.outline{fill:none;stroke:#222;stroke-width:1.5}
.lozenge{stroke:#222;stroke-width:0.75}
.vertical{fill:#e8b04a}.left{fill:#5b8fd1}.right{fill:#d45d5d}
.face{stroke:#111;stroke-width:0.5}
.face-vertical{fill:#f2f2f2}.face-left{fill:#9a9a9a}.face-right{fill:#5a5a5a}
.edge{stroke:#bbb;stroke-width:0.75}
.matched{stroke:#222;stroke-width:3;stroke-linecap:round}
.vertex{fill:#222}
.site{fill:none;stroke:#999;stroke-width:0.5}
.particle{fill:#222}
.path{fill:none;stroke:#c0392b;stroke-width:2;stroke-linejoin:round}
.half-even{fill:#3b6fb6}.half-odd{fill:#a9c3e8}
.rest-even{fill:#b63b3b}.rest-odd{fill:#e8a9a9}
";

impl Scene {
    pub fn new(lattice: Lattice) -> Self {
        Scene {
            lattice,
            scale: DEFAULT_SCALE,
            elements: Vec::new(),
        }
    }

    pub fn push(&mut self, class: impl Into<String>, shape: Shape) {
        self.elements.push(Element {
            class: class.into(),
            shape,
        });
    }

    fn extent(&self) -> (f64, f64, f64, f64) {
        let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
        let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
        let mut see = |p: Point, r: f64| {
            let (x, y) = self.lattice.cartesian(p);
            xs = (xs.0.min(x - r), xs.1.max(x + r));
            ys = (ys.0.min(y - r), ys.1.max(y + r));
        };
        for e in &self.elements {
            match &e.shape {
                Shape::Polygon(ps) | Shape::Polyline(ps) => ps.iter().for_each(|&p| see(p, 0.0)),
                Shape::Line(p, q) => {
                    see(*p, 0.0);
                    see(*q, 0.0);
                }
                Shape::Circle(c, r) => see(*c, *r as f64 / UNIT as f64),
            }
        }
        if xs.0 > xs.1 {
            return (0.0, 0.0, 0.0, 0.0);
        }
        (xs.0, xs.1, ys.0, ys.1)
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.extent();
        let s = self.scale as f64;
        let width = (x1 - x0) * s + 2.0 * MARGIN;
        let height = (y1 - y0) * s + 2.0 * MARGIN;
        let origin = (MARGIN - x0 * s, MARGIN + y1 * s);
        let px = |p: Point| {
            let (x, y) = self.lattice.cartesian(p);
            (origin.0 + x * s, origin.1 - y * s)
        };
        let pts = |ps: &[Point]| {
            ps.iter()
                .map(|&p| {
                    let (x, y) = px(p);
                    format!("{x:.3},{y:.3}")
                })
                .collect::<Vec<_>>()
                .join(" ")
        };

        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.3}\" \
             height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\" \
             data-lattice=\"{}\" data-scale=\"{}\" data-origin=\"{:.3},{:.3}\">",
            self.lattice.name(),
            self.scale,
            origin.0,
            origin.1
        );
        let _ = writeln!(out, "<style>\n{STYLE}</style>");
        for e in &self.elements {
            let class = &e.class;
            let _ = match &e.shape {
                Shape::Polygon(ps) => writeln!(out, "<polygon class=\"{class}\" points=\"{}\"/>", pts(ps)),
                Shape::Polyline(ps) => writeln!(out, "<polyline class=\"{class}\" points=\"{}\"/>", pts(ps)),
                Shape::Line(p, q) => {
                    let ((ax, ay), (bx, by)) = (px(*p), px(*q));
                    writeln!(
                        out,
                        "<line class=\"{class}\" x1=\"{ax:.3}\" y1=\"{ay:.3}\" x2=\"{bx:.3}\" y2=\"{by:.3}\"/>"
                    )
                }
                Shape::Circle(c, r) => {
                    let (cx, cy) = px(*c);
                    let r = *r as f64 / UNIT as f64 * s;
                    writeln!(out, "<circle class=\"{class}\" cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{r:.3}\"/>")
                }
            };
        }
        out.push_str("</svg>\n");
        out
    }

    /// Parses a file written by [`Scene::to_svg`].
    pub fn from_svg(text: &str) -> Result<Scene, IoError> {
        let mut reader = Reader::from_str(text);
        let mut scene: Option<Scene> = None;
        let mut origin = (0.0, 0.0);
        loop {
            let ev = reader.read_event().map_err(|e| IoError::Svg(e.to_string()))?;
            let e = match &ev {
                Event::Start(e) | Event::Empty(e) => e,
                Event::Eof => break,
                _ => continue,
            };
            let name = e.name();
            let name = std::str::from_utf8(name.as_ref()).map_err(|e| IoError::Svg(e.to_string()))?;
            if name == "svg" {
                let lattice = match attr(e, "data-lattice")?.as_str() {
                    "triangular" => Lattice::Triangular,
                    "square" => Lattice::Square,
                    other => return Err(IoError::Svg(format!("unknown lattice {other:?}"))),
                };
                let scale = number(&attr(e, "data-scale")?)?;
                let o = attr(e, "data-origin")?;
                let (ox, oy) = o
                    .split_once(',')
                    .ok_or_else(|| IoError::Svg(format!("bad origin {o:?}")))?;
                origin = (number(ox)?, number(oy)?);
                scene = Some(Scene {
                    lattice,
                    scale: scale as u32,
                    elements: Vec::new(),
                });
                continue;
            }
            let Some(sc) = scene.as_mut() else {
                continue;
            };
            let s = sc.scale as f64;
            let lattice = sc.lattice;
            let unpx = |x: f64, y: f64| lattice.lattice(((x - origin.0) / s, (origin.1 - y) / s));
            let shape = match name {
                "polygon" | "polyline" => {
                    let ps = attr(e, "points")?
                        .split_whitespace()
                        .map(|pair| {
                            let (x, y) = pair
                                .split_once(',')
                                .ok_or_else(|| IoError::Svg(format!("bad point {pair:?}")))?;
                            Ok(unpx(number(x)?, number(y)?))
                        })
                        .collect::<Result<Vec<_>, IoError>>()?;
                    if name == "polygon" {
                        Shape::Polygon(ps)
                    } else {
                        Shape::Polyline(ps)
                    }
                }
                "line" => Shape::Line(
                    unpx(number(&attr(e, "x1")?)?, number(&attr(e, "y1")?)?),
                    unpx(number(&attr(e, "x2")?)?, number(&attr(e, "y2")?)?),
                ),
                "circle" => Shape::Circle(
                    unpx(number(&attr(e, "cx")?)?, number(&attr(e, "cy")?)?),
                    (number(&attr(e, "r")?)? / s * UNIT as f64).round() as i64,
                ),
                _ => continue,
            };
            sc.push(attr(e, "class").unwrap_or_default(), shape);
        }
        scene.ok_or_else(|| IoError::Svg("no svg root element".into()))
    }
}

fn attr(e: &BytesStart<'_>, key: &str) -> Result<String, IoError> {
    let a = e
        .try_get_attribute(key)
        .map_err(|err| IoError::Svg(err.to_string()))?
        .ok_or_else(|| IoError::Svg(format!("missing attribute {key}")))?;
    a.unescape_value()
        .map(|v| v.into_owned())
        .map_err(|err| IoError::Svg(err.to_string()))
}

fn number(s: &str) -> Result<f64, IoError> {
    s.trim()
        .parse()
        .map_err(|_| IoError::Svg(format!("bad number {s:?}")))
}

// ------------------------------------------------------------------ views

fn scaled((a, b): (i32, i32)) -> Point {
    (a as i64 * UNIT, b as i64 * UNIT)
}

fn centroid(t: &Tri) -> Point {
    let off = if t.up { 2 } else { 4 };
    (t.a as i64 * UNIT + off, t.b as i64 * UNIT + off)
}

/// Boundary of `R_n`: the notched bottom edge, right side, top, left side.
fn region_outline(region: &TrapezoidRegion) -> Vec<Point> {
    let n = region.order as i32;
    let mut ps = vec![scaled((-n, 0))];
    for k in 0..region.order {
        let c = region.notch_centre(k);
        ps.extend([(c, -1), (c + 1, -1), (c + 1, 0)].map(scaled));
    }
    ps.extend([(0, n), (-n, n)].map(scaled));
    ps
}

fn kind_class(k: LozengeKind) -> &'static str {
    match k {
        LozengeKind::Vertical => "vertical",
        LozengeKind::Left => "left",
        LozengeKind::Right => "right",
    }
}

/// Renders a state in one of the views.
pub fn render(view: View, t: &StaircaseTableau) -> Result<Scene, IoError> {
    let n = t.order();
    let region = TrapezoidRegion::new(n);
    let mut scene = Scene::new(Lattice::Triangular);
    match view {
        View::Lozenges | View::Boxes => {
            let p = st_to_particles(t);
            let tiling = crate::bijections::matching_to_lozenges(&particles_to_matching(&p))?;
            for z in &tiling.tiles {
                let class = match view {
                    View::Lozenges => format!("lozenge {}", kind_class(z.kind)),
                    _ => format!("face face-{}", kind_class(z.kind)),
                };
                scene.push(class, Shape::Polygon(z.corners().map(scaled).to_vec()));
            }
        }
        View::Matching => {
            let graph = crate::bijections::HalfHexGraph::new(n);
            for (u, d) in graph.edges() {
                scene.push("edge", Shape::Line(centroid(&u), centroid(&d)));
            }
            let m = particles_to_matching(&st_to_particles(t));
            for (u, d) in m.completion()? {
                scene.push("matched", Shape::Line(centroid(&u), centroid(&d)));
            }
            for v in &graph.vertices {
                scene.push("vertex", Shape::Circle(centroid(v), 1));
            }
        }
        View::Particles => {
            for r in 0..=n {
                let b = region.level_of_row(r) as i64;
                let occupied = t.row(r);
                for p in 1..=region.row_len(r) as u32 {
                    let a = region.a_of_position(p) as i64;
                    let centre = (a * UNIT + 3, b * UNIT);
                    if occupied.contains(&p) {
                        scene.push("particle", Shape::Circle(centre, 2));
                    } else {
                        scene.push("site", Shape::Circle(centre, 1));
                    }
                }
            }
        }
        View::Paths => {
            let f = st_to_paths(t)?;
            for i in 1..=n {
                let ps = f
                    .points(i)
                    .into_iter()
                    .map(|pt| {
                        let (a, b) = LatticePathFamily::edge_of_point(n, pt);
                        (a as i64 * UNIT, b as i64 * UNIT + UNIT / 2)
                    })
                    .collect();
                scene.push("path", Shape::Polyline(ps));
            }
        }
        View::HalfDiamond => return Ok(half_diamond_scene(n)),
    }
    if n > 0 {
        scene.push("outline", Shape::Polygon(region_outline(&region)));
    }
    Ok(scene)
}

/// The Aztec diamond `A_n` split into the half-diamond `H_n` and its
/// complement, each checkerboard-coloured.
pub fn half_diamond_scene(order: usize) -> Scene {
    let full = PlanarRegion::aztec_diamond(order);
    let half = PlanarRegion::half_diamond(order);
    let mut scene = Scene::new(Lattice::Square);
    for &(x, y) in &full.squares {
        let part = if half.contains((x, y)) { "half" } else { "rest" };
        let parity = if (x + y).rem_euclid(2) == 0 { "even" } else { "odd" };
        let corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)].map(scaled).to_vec();
        scene.push(format!("{part}-{parity}"), Shape::Polygon(corners));
    }
    scene
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> StaircaseTableau {
        StaircaseTableau::from_rows(&[vec![3], vec![2, 5], vec![1, 3, 6], vec![1, 3, 5, 7]]).unwrap()
    }

    #[test]
    fn render_parse_render_is_stable() {
        for view in View::ALL {
            let scene = render(view, &fig1()).unwrap();
            let svg = scene.to_svg();
            let parsed = Scene::from_svg(&svg).unwrap();
            assert_eq!(parsed, scene, "{}", view.name());
            assert_eq!(parsed.to_svg(), svg);
        }
    }

    #[test]
    fn element_counts() {
        let t = fig1();
        let count = |v: View, class: &str| {
            render(v, &t)
                .unwrap()
                .elements
                .iter()
                .filter(|e| e.class.split(' ').any(|c| c == class))
                .count()
        };
        // 3n^2 + 3n triangles pair into 18 lozenges.
        assert_eq!(count(View::Lozenges, "lozenge"), 18);
        assert_eq!(count(View::Matching, "matched"), 18);
        assert_eq!(count(View::Matching, "vertex"), 36);
        assert_eq!(count(View::Particles, "particle"), 10);
        assert_eq!(count(View::Particles, "site") + count(View::Particles, "particle"), 4 + 5 + 6 + 7);
        assert_eq!(count(View::Paths, "path"), 3);
        assert_eq!(render(View::HalfDiamond, &t).unwrap().elements.len(), 2 * 3 * 4);
    }

    #[test]
    fn path_endpoints_lie_on_notch_sides_and_left_edge() {
        let t = fig1();
        let scene = render(View::Paths, &t).unwrap();
        let paths: Vec<_> = scene
            .elements
            .iter()
            .filter_map(|e| match &e.shape {
                Shape::Polyline(ps) => Some(ps.clone()),
                _ => None,
            })
            .collect();
        for (k, ps) in paths.iter().enumerate() {
            let i = k as i64 + 1;
            assert_eq!(ps[0], ((2 * i - 3) * UNIT, -UNIT / 2));
            assert_eq!(*ps.last().unwrap(), (-3 * UNIT, (i - 1) * UNIT + UNIT / 2));
        }
    }

    #[test]
    fn order_zero_renders() {
        let t = StaircaseTableau::base();
        for view in View::ALL {
            let svg = render(view, &t).unwrap().to_svg();
            assert!(svg.ends_with("</svg>\n"));
            Scene::from_svg(&svg).unwrap();
        }
    }

    #[test]
    fn pixels_use_three_decimals() {
        let svg = render(View::Lozenges, &fig1()).unwrap().to_svg();
        let first = svg.lines().find(|l| l.starts_with("<polygon")).unwrap();
        let pts = first.split("points=\"").nth(1).unwrap();
        let x = pts.split(',').next().unwrap();
        assert_eq!(x.split('.').nth(1).unwrap().len(), 3);
    }

    #[test]
    fn rejects_foreign_svg() {
        assert!(Scene::from_svg("<svg xmlns=\"http://www.w3.org/2000/svg\"/>").is_err());
        assert!(Scene::from_svg("<html/>").is_err());
    }
}
