//! Exact computational group theory for isocategorical finite groups.

// Index loops read closer to the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod twists;
pub mod groups;
pub mod isocategorical;
pub mod weil;

pub use error::{Error, Result};
