//! Oscillation, variation and jump seminorms of sampled paths, with exact algorithms and
//! exhaustive oracles, plus the finite models they are tested on: dyadic martingales, discrete
//! Radon averages, exponential sums, and an exactly computable tent-function counterexample.

pub mod error;
pub mod measure;
pub mod path;
pub mod variation;
pub mod jumps;
pub mod oscillation;
pub mod martingale;
pub mod radon;
pub mod sums;
pub mod fit;
pub mod counterexample;
pub mod verify;

pub use error::{Error, Result};
pub use measure::{lp_norm, weak_lp_norm, AtomFunction, FiniteWeightedSpace};
pub use path::{IndexSequence, PathValue, RealPath};
