//! Exact computations with representations of finite-dimensional algebras: degeneration
//! certificates, composition series, triangular representations and ladders.

pub mod algebra;
pub mod certificate;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod hom;
pub mod io;
pub mod iso;
pub mod ladder;
pub mod matrix;
pub mod module;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod series;
pub mod subspace;

pub use error::{Error, Result};
