//! Addressed fair bits.
//!
//! Every shuffle consumes its coins by address `(step, row, column)` rather
//! than by order of use, so forward and reverse traces, batch sampling and the
//! Aztec co-simulation all read the same coin for the same cell.
//!
//! Generator `chacha8-addressed-v1`: a ChaCha8 key is expanded from the 64-bit
//! seed (`SeedableRng::seed_from_u64`), the ChaCha stream id is the trajectory
//! index, and the 64-bit word `w` of row `r` in step `t` sits at word position
//! `2 * (t << 40 | r << 16 | w)`. Bit `c` of a row is bit `c % 64` of word
//! `c / 64`. Steps and rows are limited to `2^24`, columns to `2^22`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Name recorded in sample file headers.
pub const GENERATOR_NAME: &str = "chacha8-addressed-v1";

pub const MAX_STEP: usize = 1 << 24;
pub const MAX_ROW: usize = 1 << 24;
pub const MAX_COLUMN: usize = 1 << 22;

/// Source of the fair coins `xi(row, col)` for one shuffle step.
pub trait BitSource {
    fn bit(&mut self, row: usize, col: usize) -> bool;
}

impl<F: FnMut(usize, usize) -> bool> BitSource for F {
    fn bit(&mut self, row: usize, col: usize) -> bool {
        self(row, col)
    }
}

/// Seeded, reproducible supply of bits for a whole trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitStream {
    pub seed: u64,
    pub trajectory: u64,
}

impl BitStream {
    pub fn new(seed: u64) -> Self {
        BitStream { seed, trajectory: 0 }
    }

    pub fn with_trajectory(seed: u64, trajectory: u64) -> Self {
        BitStream { seed, trajectory }
    }

    /// Coins of shuffle step `step` (the step growing order `step` to `step + 1`).
    pub fn step(&self, step: usize) -> StepBits {
        assert!(step < MAX_STEP, "step {step} exceeds generator address space");
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.trajectory);
        StepBits {
            rng,
            step,
            row: usize::MAX,
            words: Vec::new(),
        }
    }

    /// One addressed bit; convenient for tests, slow in loops.
    pub fn bit(&self, step: usize, row: usize, col: usize) -> bool {
        self.step(step).bit(row, col)
    }
}

/// Bits of one step; caches the words of the row being read.
#[derive(Debug, Clone)]
pub struct StepBits {
    rng: ChaCha8Rng,
    step: usize,
    row: usize,
    words: Vec<u64>,
}

impl StepBits {
    fn word_position(&self, row: usize) -> u128 {
        2 * (((self.step as u128) << 40) | ((row as u128) << 16))
    }
}

impl BitSource for StepBits {
    #[inline]
    fn bit(&mut self, row: usize, col: usize) -> bool {
        debug_assert!(row < MAX_ROW && col < MAX_COLUMN);
        if row != self.row {
            self.row = row;
            self.words.clear();
            let pos = self.word_position(row);
            self.rng.set_word_pos(pos);
        }
        let w = col / 64;
        while self.words.len() <= w {
            self.words.push(self.rng.next_u64());
        }
        (self.words[w] >> (col % 64)) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bits() {
        let a = BitStream::new(42);
        let b = BitStream::new(42);
        let mut sa = a.step(3);
        let mut sb = b.step(3);
        for r in 0..4 {
            for c in 0..200 {
                assert_eq!(sa.bit(r, c), sb.bit(r, c));
            }
        }
    }

    #[test]
    fn access_order_does_not_matter() {
        let s = BitStream::new(7);
        let mut forward = s.step(5);
        let expected: Vec<bool> = (0..6).flat_map(|r| (0..130).map(move |c| (r, c))).map(|(r, c)| forward.bit(r, c)).collect();
        let mut backward = s.step(5);
        let mut got = vec![false; expected.len()];
        for r in (0..6).rev() {
            for c in (0..130).rev() {
                got[r * 130 + c] = backward.bit(r, c);
            }
        }
        assert_eq!(expected, got);
    }

    #[test]
    fn addresses_are_distinct_streams() {
        let s = BitStream::new(1);
        let row = |step: usize, row: usize| -> Vec<bool> {
            let mut b = s.step(step);
            (0..256).map(|c| b.bit(row, c)).collect()
        };
        assert_ne!(row(0, 0), row(1, 0));
        assert_ne!(row(0, 0), row(0, 1));
        let t = BitStream::with_trajectory(1, 1);
        let mut b = t.step(0);
        let other: Vec<bool> = (0..256).map(|c| b.bit(0, c)).collect();
        assert_ne!(row(0, 0), other);
    }

    #[test]
    fn roughly_fair() {
        let mut b = BitStream::new(99).step(0);
        let ones = (0..100_000).filter(|&c| b.bit(0, c)).count();
        assert!((ones as i64 - 50_000).abs() < 1_500, "{ones}");
    }

    #[test]
    fn closures_are_bit_sources() {
        let mut f = |r: usize, c: usize| (r + c).is_multiple_of(2);
        assert!(f.bit(1, 1));
        assert!(!f.bit(0, 1));
    }
}
