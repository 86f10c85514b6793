//! Brute-force enumerators used as independent oracles for the bijections.

use super::{HalfHexGraph, LatticePathFamily, Lozenge, LozengeTiling, Path, Step, Tri};
use std::collections::HashSet;

/// Every perfect matching of the dual graph of `R_n`, as `(up, down)` edge lists.
pub fn perfect_matchings(order: usize) -> Vec<Vec<(Tri, Tri)>> {
    let g = HalfHexGraph::new(order);
    let mut matched = vec![false; g.vertices.len()];
    let mut current = Vec::new();
    let mut out = Vec::new();
    extend_matching(&g, &mut matched, &mut current, &mut out);
    out
}

fn extend_matching(
    g: &HalfHexGraph,
    matched: &mut [bool],
    current: &mut Vec<(Tri, Tri)>,
    out: &mut Vec<Vec<(Tri, Tri)>>,
) {
    let Some(i) = matched.iter().position(|m| !m) else {
        out.push(current.clone());
        return;
    };
    let v = g.vertices[i];
    matched[i] = true;
    for u in g.neighbours(&v) {
        let j = g.index_of(&u).expect("neighbour in graph");
        if matched[j] {
            continue;
        }
        matched[j] = true;
        current.push(if v.up { (v, u) } else { (u, v) });
        extend_matching(g, matched, current, out);
        current.pop();
        matched[j] = false;
    }
    matched[i] = false;
}

/// Every lozenge tiling of `R_n`, read off the perfect matchings.
pub fn tilings(order: usize) -> Vec<LozengeTiling> {
    perfect_matchings(order)
        .into_iter()
        .map(|m| {
            let tiles = m
                .into_iter()
                .map(|(u, d)| Lozenge::from_pair(u, d).expect("matched triangles are adjacent"))
                .collect();
            LozengeTiling::new(order, tiles).expect("matching gives a tiling")
        })
        .collect()
}

/// Every non-intersecting path family of order `n`, built path by path on
/// the square lattice.
pub fn path_families(order: usize) -> Vec<LatticePathFamily> {
    let mut out = Vec::new();
    let mut used = HashSet::new();
    let mut chosen = Vec::new();
    extend_family(order, 1, &mut used, &mut chosen, &mut out);
    out
}

fn extend_family(
    order: usize,
    i: usize,
    used: &mut HashSet<(i64, i64)>,
    chosen: &mut Vec<Path>,
    out: &mut Vec<LatticePathFamily>,
) {
    if i > order {
        out.push(LatticePathFamily {
            order,
            paths: chosen.clone(),
        });
        return;
    }
    let mut steps = Vec::with_capacity(2 * i);
    let start = LatticePathFamily::start(i);
    if used.contains(&start) {
        return;
    }
    used.insert(start);
    walk(order, i, start, used, &mut steps, chosen, out);
    used.remove(&start);
}

fn walk(
    order: usize,
    i: usize,
    at: (i64, i64),
    used: &mut HashSet<(i64, i64)>,
    steps: &mut Vec<Step>,
    chosen: &mut Vec<Path>,
    out: &mut Vec<LatticePathFamily>,
) {
    let end = LatticePathFamily::end(i);
    if at == end {
        chosen.push(Path(steps.clone()));
        extend_family(order, i + 1, used, chosen, out);
        chosen.pop();
        return;
    }
    for step in [Step::Right, Step::Up] {
        let next = match step {
            Step::Right => (at.0 + 1, at.1),
            Step::Up => (at.0, at.1 + 1),
        };
        if next.0 > end.0 || next.1 > end.1 || used.contains(&next) {
            continue;
        }
        used.insert(next);
        steps.push(step);
        walk(order, i, next, used, steps, chosen, out);
        steps.pop();
        used.remove(&next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_has_two_of_each() {
        assert_eq!(perfect_matchings(1).len(), 2);
        assert_eq!(tilings(1).len(), 2);
        assert_eq!(path_families(1).len(), 2);
    }

    #[test]
    fn order_two_has_eight() {
        assert_eq!(tilings(2).len(), 8);
        assert_eq!(path_families(2).len(), 8);
    }

    #[test]
    fn families_are_valid() {
        for f in path_families(3) {
            f.validate().unwrap();
        }
    }
}
