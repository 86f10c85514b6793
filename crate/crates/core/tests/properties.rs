use halfhex::aztec::domino::{
    boundary_height, height_of_tiling, height_step, Domino, DominoTiling, PlanarRegion,
};
use halfhex::aztec::{weakly_interlaced, AztecParticles};
use halfhex::bijections::{round_trip, st_to_paths};
use halfhex::io::{Model, Sample, SampleFile};
use halfhex::limit_shape::{arctic_boundary, romik_g};
use halfhex::shuffle::{sample_with, shuffle_forward, shuffle_reverse};
use halfhex::{BitStream, StaircaseTableau};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn state(max_order: usize) -> impl Strategy<Value = StaircaseTableau> {
    (0..=max_order, any::<u64>()).prop_map(|(n, seed)| sample_with(n, BitStream::new(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_shuffle_output_is_valid(t in state(30), seed in any::<u64>()) {
        let mut bits = BitStream::new(seed).step(0);
        let u = shuffle_forward(&t, &mut bits);
        prop_assert_eq!(u.order(), t.order() + 1);
        prop_assert!(u.validate().is_ok());
    }

    #[test]
    fn reverse_shuffle_output_is_valid(t in state(30), seed in any::<u64>()) {
        prop_assume!(t.order() > 0);
        let mut bits = BitStream::new(seed).step(0);
        let u = shuffle_reverse(&t, &mut bits);
        prop_assert_eq!(u.order(), t.order() - 1);
        prop_assert!(u.validate().is_ok());
    }

    #[test]
    fn bijections_round_trip(t in state(40)) {
        prop_assert_eq!(round_trip(&t).unwrap(), t.clone());
        let f = st_to_paths(&t).unwrap();
        prop_assert!(f.validate().is_ok());
        for model in Model::ALL {
            prop_assert_eq!(Sample::encode(model, &t).unwrap().decode().unwrap(), t.clone());
        }
    }

    #[test]
    fn aztec_step_keeps_interlacing(steps in 1usize..25, coins in prop::collection::vec(any::<bool>(), 400)) {
        let mut p = AztecParticles::initial();
        let mut k = 0;
        for _ in 0..steps {
            p = p.ad_step(|_, _| {
                k += 1;
                coins[k % coins.len()]
            });
            prop_assert!(p.validate().is_ok());
            for w in p.rows.windows(2) {
                prop_assert!(weakly_interlaced(&w[0], &w[1]));
            }
        }
        prop_assert_eq!(p.particle_count(), (steps + 1) * (steps + 2) / 2);
    }

    #[test]
    fn limit_height_is_continuous(x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let h = 1e-7;
        let g = romik_g(x, y);
        prop_assert!((0.0..=1.0).contains(&g));
        for (dx, dy) in [(h, 0.0), (0.0, h)] {
            let (x2, y2) = ((x + dx).min(1.0), (y + dy).min(1.0));
            // The height is 1-Lipschitz in each coordinate.
            prop_assert!((romik_g(x2, y2) - g).abs() <= h * (1.0 + 1e-6) + 1e-12);
        }
    }

    #[test]
    fn limit_height_symmetries(x in 0.0f64..1.0, y in 0.0f64..1.0) {
        prop_assert!((romik_g(x, y) + romik_g(1.0 - x, y) - 1.0).abs() < 1e-9);
        prop_assert!((romik_g(x, 1.0 - y) - (1.0 - romik_g(x, y))).abs() < 1e-9);
    }

    #[test]
    fn sample_files_round_trip(n in 0usize..8, count in 0usize..4, seed in any::<u64>(), m in 0usize..5) {
        let f = SampleFile::generate(Model::ALL[m], n, count, seed).unwrap();
        prop_assert_eq!(SampleFile::from_json(&f.to_json().unwrap()).unwrap(), f.clone());
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        prop_assert_eq!(SampleFile::read_csv(buf.as_slice()).unwrap(), f);
    }
}

/// Every row of `A_n` has even length, so pairing squares left to right
/// along rows tiles it.
fn brick_tiling(region: &PlanarRegion) -> DominoTiling {
    let mut dominoes = Vec::new();
    let mut squares = region.squares.iter().copied().collect::<Vec<_>>();
    squares.sort_by_key(|&(x, y)| (y, x));
    for pair in squares.chunks(2) {
        assert_eq!(pair[0].1, pair[1].1);
        assert_eq!(pair[0].0 + 1, pair[1].0);
        dominoes.push(Domino::horizontal(pair[0].0, pair[0].1));
    }
    DominoTiling { dominoes }
}

#[test]
fn aztec_boundary_heights_match_a_tiling() {
    for n in 1..=30 {
        let region = PlanarRegion::aztec_diamond(n);
        assert_eq!(region.squares.len(), 2 * n * (n + 1));
        let boundary = boundary_height(&region).unwrap();
        let full = height_of_tiling(&region, &brick_tiling(&region)).unwrap();
        for (&v, &h) in &boundary.heights {
            assert_eq!(full.get(v), Some(h), "order {n}, vertex {v:?}");
        }
    }
}

#[test]
fn half_diamond_boundaries_close() {
    for n in 1..=30 {
        let region = PlanarRegion::half_diamond(n);
        let b = boundary_height(&region).unwrap_or_else(|e| panic!("order {n}: {e}"));
        assert!(!b.is_empty());
        // On boundary edges of the region heights follow the edge rule.
        for (&(x, y), &h) in &b.heights {
            for (w, sides) in [((x + 1, y), [(x, y), (x, y - 1)]), ((x, y + 1), [(x, y), (x - 1, y)])] {
                let inside = sides.iter().filter(|&&sq| region.contains(sq)).count();
                if let (1, Some(hw)) = (inside, b.get(w)) {
                    assert_eq!(hw - h, height_step((x, y), w), "order {n} at {:?}", (x, y));
                }
            }
        }
    }
}

fn count_tilings(squares: &BTreeSet<(i32, i32)>) -> u64 {
    let Some(&first) = squares.iter().min_by_key(|&&(x, y)| (y, x)) else {
        return 1;
    };
    let mut total = 0;
    for partner in [(first.0 + 1, first.1), (first.0, first.1 + 1)] {
        if squares.contains(&partner) {
            let mut rest = squares.clone();
            rest.remove(&first);
            rest.remove(&partner);
            total += count_tilings(&rest);
        }
    }
    total
}

#[test]
fn half_diamond_is_half_of_the_diamond() {
    for n in 1..=30 {
        let half = PlanarRegion::half_diamond(n);
        let full = PlanarRegion::aztec_diamond(n);
        assert_eq!(half.squares.len(), n * (n + 1), "order {n}");
        assert!(half.squares.is_subset(&full.squares));
    }
}

type Symmetry = fn((i32, i32)) -> (i32, i32);

fn normalised(squares: impl Iterator<Item = (i32, i32)>) -> BTreeSet<(i32, i32)> {
    let v: Vec<_> = squares.collect();
    let mx = v.iter().map(|s| s.0).min().unwrap_or(0);
    let my = v.iter().map(|s| s.1).min().unwrap_or(0);
    v.into_iter().map(|(x, y)| (x - mx, y - my)).collect()
}

#[test]
fn two_half_diamonds_make_a_diamond() {
    let symmetries: [Symmetry; 8] = [
        |(x, y)| (x, y),
        |(x, y)| (-x, -y),
        |(x, y)| (-x, y),
        |(x, y)| (x, -y),
        |(x, y)| (y, x),
        |(x, y)| (-y, -x),
        |(x, y)| (-y, x),
        |(x, y)| (y, -x),
    ];
    for n in 1..=20 {
        let half = PlanarRegion::half_diamond(n);
        let rest: Vec<_> = PlanarRegion::aztec_diamond(n).squares.difference(&half.squares).copied().collect();
        let target = normalised(half.squares.iter().copied());
        // Reflect squares about their centres: map the centre, then take the lower-left corner.
        let congruent = symmetries.iter().any(|f| {
            normalised(rest.iter().map(|&(x, y)| {
                let (a, b) = f((2 * x + 1, 2 * y + 1));
                ((a - 1) / 2, (b - 1) / 2)
            })) == target
        });
        assert!(congruent, "order {n}");
    }
}

#[test]
fn half_diamond_tiling_counts() {
    // 2^floor(n^2 / 4), observed for n <= 6
    for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 16), (5, 64), (6, 512)] {
        let half = PlanarRegion::half_diamond(n);
        assert_eq!(count_tilings(&half.squares), expected, "order {n}");
        let rest: BTreeSet<_> = PlanarRegion::aztec_diamond(n).squares.difference(&half.squares).copied().collect();
        assert!(count_tilings(&rest) > 0, "complement of order {n}");
    }
}

#[test]
fn tiling_heights_change_by_one_or_three() {
    let region = PlanarRegion::aztec_diamond(6);
    let h = height_of_tiling(&region, &brick_tiling(&region)).unwrap();
    for (&(x, y), &a) in &h.heights {
        for w in [(x + 1, y), (x, y + 1)] {
            if let Some(b) = h.get(w) {
                assert!(matches!((b - a).abs(), 1 | 3));
            }
        }
    }
}

#[test]
fn arctic_breakpoints_lie_on_the_circle() {
    for k in 0..=100 {
        let y = k as f64 / 100.0;
        let (l, r) = arctic_boundary(y);
        for x in [l, r] {
            assert!(((x - 0.5).powi(2) + (y - 0.5).powi(2) - 0.25).abs() < 1e-12);
        }
    }
}
