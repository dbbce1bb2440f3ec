//! Rhombic tilings and the crystal combinatorics of canonical bases in type A:
//! Lusztig data and their crossing formulas, string data, BZ data and the
//! potential functions on the unipotent group.

pub mod bz;
pub mod crossings;
pub mod error;
pub mod linalg;
pub mod lusztig;
pub mod potentials;
pub mod report;
pub mod strings;
pub mod sets;
pub mod tiling;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
