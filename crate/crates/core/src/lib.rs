//! Pattern avoidance by involutions.
//!
//! Permutations and patterns ([`perm`]), Ferrers shapes with rook
//! placements ([`board`]), RSK and evacuation ([`tableau`]), exact avoidance
//! counts ([`avoidance`]), the reduction and slide constructions on
//! symmetric placements ([`bijection`]), and classification of patterns by
//! their count sequences ([`classify`]). [`verify`] runs the exhaustive
//! consistency checks and the [`cli`] module backs the `invopat` binary.

pub mod avoidance;
pub mod bijection;
pub mod board;
pub mod classify;
pub mod cli;
pub mod error;
mod occurrence;
pub mod perm;
pub mod tableau;
pub mod verify;

pub use avoidance::{count_avoiders, lambda_sym, CountTable, PatternSet};
pub use board::{BoardPlacement, Shape};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use tableau::Tableau;
