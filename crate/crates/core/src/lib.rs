//! Minkowski summands, versal base spaces and graded T1/T2 for affine toric
//! Gorenstein singularities given by lattice polytopes with primitive edges.

pub mod acceptance;
pub mod arith;
pub mod cohomology;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod poly;
pub mod polytope;
pub mod report;
pub mod scheme;
pub mod versal;

pub use error::{Error, Result};
