//! Exact computation of colored HOMFLY-PT invariants of torus knots, the
//! correlators of the extended Ooguri–Vafa partition function, and the
//! Chekhov–Eynard–Orantin recursion on the associated spectral curve.
//!
//! Two independent pipelines produce the same numbers:
//!
//! - [`ovcorr`] expands the partition function as a character sum and takes
//!   connected cumulants;
//! - [`toprec`] runs topological recursion on the rational spectral curve of
//!   [`speccurve`] using exact residue calculus in a quadratic field.
//!
//! [`verify`] compares them and checks the loop equations and the
//! cut-and-join equation.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod exactnum;
pub mod homfly;
pub mod ovcorr;
pub mod partitions;
pub mod speccurve;
pub mod toprec;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{Rational, Ring};
pub use homfly::KnotParams;
pub use partitions::Partition;
