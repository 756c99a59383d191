//! Hopf algebras, coactions and renormalization maps on planar binary trees.
//!
//! The crate is organized bottom-up:
//!
//! - [`tree`]: planar binary trees, grafting, the over/under products,
//!   enumeration and the text encoding;
//! - [`algebra`]: exact linear combinations of tree words and tensors of them;
//! - [`hopf`]: pruning coproducts and antipodes, the charge coproduct,
//!   coaction and antipode;
//! - [`qed`]: coactions on the propagator algebras, the QED semidirect Hopf
//!   algebra and the renormalization coactions;
//! - [`series`]: truncated power series groups and their actions;
//! - [`renorm`]: characters, renormalization factors and Dyson checks;
//! - [`laws`]: named law sweeps used by the CLI and the acceptance suite.

pub mod algebra;
pub mod error;
pub mod hopf;
pub mod laws;
mod memo;
pub mod qed;
pub mod renorm;
pub mod series;
pub mod tree;

pub use algebra::{AlgebraTag, Element, Scalar, Tensor, Word};
pub use error::{Error, Result};
pub use hopf::{Corruption, HopfMaps};
pub use series::{RingValue, TruncatedSeries};
pub use tree::Tree;
