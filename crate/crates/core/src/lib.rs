//! Straight-line drawings of combinatorial triangulations on planar point
//! sets: exact geometry, point-set families, rotation systems, drawing
//! counters and the associated growth-rate bounds.

pub mod bounds;
pub mod comb;
pub mod drawings;
pub mod error;
pub mod geometry;
pub mod pointsets;

pub use error::{Error, Result};
