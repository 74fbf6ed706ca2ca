//! Exact computations of Tor-based invariants for pairs of graded modules
//! over complete intersections.

pub mod algebra;
pub mod error;
pub mod graded;
pub mod groebner;
pub mod invariants;
pub mod io;
pub mod lifting;
pub mod resolution;
pub mod tor;

pub use error::{Error, Result};
