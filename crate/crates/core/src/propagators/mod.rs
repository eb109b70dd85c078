//! Filtering algorithms.

pub mod alldifferent;
pub mod bounded;
pub mod intervoice;
pub mod matching;
pub mod neq;
pub mod spacing1;
pub mod spacing_sb;

pub use alldifferent::AllDifferent;
pub use bounded::{BoundedError, BoundedSpacing, LayeredGraph};
pub use intervoice::{intervoice_counts, Intervoice};
pub use neq::NeqOffset;
pub use spacing1::Spacing1;
pub use spacing_sb::SpacingSb;
