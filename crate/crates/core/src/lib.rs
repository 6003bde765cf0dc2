// Row operations on dense matrices read clearest with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod heights;
pub mod koushnirenko;
pub mod lattice;
pub mod nssbounds;
pub mod numkernel;
pub mod polytope;
pub mod toric;

pub use error::{Error, Result};
