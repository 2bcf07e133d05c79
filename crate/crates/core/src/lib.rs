//! Exact computations for Macdonald eigenoperators, their correlators and
//! the equivariant Euler characteristics of Hilbert schemes of points.

pub mod error;
pub mod exactalg;
pub mod partitions;
pub mod correlators;
pub mod hilbert;
pub mod macdonald;
pub mod symfun;
pub mod verify;

pub use error::{Error, Result};
