//! A workbench for finite skew lattices and skew Heyting algebras.
//!
//! Algebras are stored as operation tables. Every property is checked
//! exhaustively and every failure comes with the least violating tuple.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod format;
pub mod heyting;
pub mod models;
pub mod properties;
pub mod report;
pub mod scan;
pub mod skew_heyting;

/// Elements are dense indices into an algebra's carrier.
pub type Elem = usize;

pub use algebra::{Algebra, Constants, Table};
pub use error::{Error, ErrorClass, Result};
pub use report::{Check, PropertyReport, Verdict, Witness};
