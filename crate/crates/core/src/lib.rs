//! Combinatorial framed stratifications: truss bundles over finite posets,
//! iterated towers of them, their labels, and piecewise-linear realizations.

pub mod bundle;
pub mod enumerate;
pub mod error;
pub mod etcat;
pub mod mesh;
pub mod oracle;
pub mod ordinal;
pub mod poset;
pub mod tower;

pub use error::{Error, Result};
