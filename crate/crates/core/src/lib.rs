//! Exact unfair splitting of n-separable necklaces.
//!
//! A necklace is split by one cut bead per colour. The permutation sign of
//! the cut beads decides which alternating class of intervals is positive,
//! and the cut realises the vector of positive-side bead counts. On
//! n-separable necklaces every valid vector is realised by exactly one cut;
//! [`reduction::solve_alpha_pair`] finds it in polynomial time.

pub mod error;
pub mod format;
pub mod generators;
pub mod hardness;
pub mod ilp;
pub mod labelling;
pub mod necklace;
pub mod oracle;
pub mod reduction;
pub mod walkgraph;

pub use error::{Error, Result};
pub use necklace::{
    complement_alpha, evaluate_cut, AlphaVector, Colour, Component, Cut, CutEvaluation, Necklace,
    Parity,
};
