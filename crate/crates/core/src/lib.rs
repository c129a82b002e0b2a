//! Exact computations with one-sided exact structures on categories of
//! finite-dimensional quiver representations over the rationals.

pub mod error;
pub mod exec;
pub mod linalg;

pub use error::{Error, Result};
pub use exec::Exec;
pub mod quiver;
pub mod rep;
pub mod spec;
pub mod conflation;
pub mod axioms;
pub mod probe;
pub mod fixtures;
pub mod complex;
pub mod derived;
pub mod percolation;
pub mod completion;
pub mod hull;
pub mod scenario;
