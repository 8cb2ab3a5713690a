//! Digital (0,m,2)-nets in the unit square, lifted to the 2-sphere by the
//! equal-area map, together with the discrepancy and worst-case
//! integration-error measures used to judge them.
//!
//! The crate is organised bottom-up:
//!
//! * [`netgen`] builds nets and sequence prefixes from generating matrices,
//!   scrambles them and checks the net property with integer arithmetic.
//! * [`sphere`] holds the maps from the square to the sphere and the
//!   spherical rectangles they induce.
//! * [`discrepancy`] evaluates planar and spherical-rectangle discrepancies,
//!   the spherical-cap L2 discrepancy and the Cui-Freeden discrepancy.
//! * [`quadrature`] provides the kernel machinery and the squared worst-case
//!   error in the Sobolev space of order 3/2.
//! * [`measure`] registers every measure behind a common trait so the CLI can
//!   pick them by name.

pub mod cli;
pub mod discrepancy;
pub mod error;
pub mod measure;
pub mod netgen;
pub mod quadrature;
pub mod sphere;
pub mod summation;

pub use error::{Error, Result};
