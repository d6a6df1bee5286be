//! Rational models of simplicial sets by complete differential graded Lie
//! algebras, and the nilpotent towers built from them.

pub mod error;
pub mod qalgebra;

pub use error::{Error, Result};
pub mod freelie;
pub mod cdgl;
pub mod lscosimplicial;
pub mod simpset;
pub mod model;
pub mod tower;
pub mod verify;
