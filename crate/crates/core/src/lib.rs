//! Dual Jacobians, volumes and dihedral angles of generalised hyperbolic
//! tetrahedra, and volumes of hyperbolic n-gonal prisms.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod jacobian;
pub mod prism;
pub mod specfun;
pub mod volume;

pub use error::{Error, Result};
