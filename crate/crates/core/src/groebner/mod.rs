//! Gröbner bases for homogeneous submodules of shifted free modules.

pub mod engine;
pub mod hilbert;
pub mod ops;

pub use engine::GbEngine;
pub use hilbert::{HilbertSeries, Laurent};
pub use ops::{buchberger, kernel, minimal_generators, syzygies, CofactorDivider, GBasis, RingMode};
