//! Exact representation theory of Dynkin quivers: indecomposables, Hom and
//! Ext, the degeneration order and regularity certificates for codimension
//! one and two orbit closures.

pub mod certify;
pub mod cli;
pub mod degen;
pub mod error;
pub mod ext;
pub mod io;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod sweep;

pub use error::{Error, Result};
