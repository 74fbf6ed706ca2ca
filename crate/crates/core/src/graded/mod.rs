//! Graded rings and modules: presentations, Hilbert series, length,
//! dimension and depth.

pub mod module;
pub mod ring;

pub use module::{Module, ModuleText};
pub use ring::{CiRing, RingText};
