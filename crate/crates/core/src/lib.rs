//! Exact combinatorics of generalized Cartan matrices.
//!
//! The crate is organized bottom-up: [`linalg`] is an exact rational kernel,
//! [`gcm`] validates and classifies matrices, [`rootsys`] enumerates roots,
//! [`cadmissible`] handles pairs `(I, J)` and the folded matrix `A^J`,
//! [`quotient`] handles admissible quotient maps, [`gradation`] analyzes
//! arbitrary restriction maps between root lattices and [`diagram`] draws
//! Dynkin diagrams.

pub mod cadmissible;
pub mod diagram;
pub mod error;
pub mod families;
pub mod gcm;
pub mod gradation;
pub mod linalg;
pub mod quotient;
pub mod report;
pub mod rootsys;

pub use error::{Error, Result};
pub use gcm::{Gcm, Kind, TypeVerdict};
pub use rootsys::{RootVec, RootVerdict};
