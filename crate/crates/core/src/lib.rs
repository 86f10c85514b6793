//! Sampling, enumeration and verification for the half-hexagon dimer model
//! and its Aztec half-diamond companion.
//!
//! The canonical state is a [`StaircaseTableau`]; [`bijections`] converts it
//! to particles, perfect matchings, lozenge tilings and lattice paths.
//! [`shuffle`] grows uniform samples one order at a time and checks the
//! shuffle's exact kernels, [`aztec`] runs the Aztec diamond particle
//! dynamics and domino height functions, [`enumeration`] holds the counting
//! formulas and their brute-force oracles, and [`limit_shape`] covers the
//! explicit limit height function and empirical arctic curves. [`io`] reads
//! and writes sample files and renders SVG pictures.

pub mod aztec;
pub mod bijections;
pub mod bits;
pub mod enumeration;
pub mod io;
pub mod limit_shape;
pub mod shuffle;
pub mod tableau;

pub use bits::{BitSource, BitStream};
pub use tableau::{GtPattern, StaircaseTableau, TableauError};
