//! Finite regular poly-bicategories and merge-bicategories: composition,
//! exhaustive axiom certification under an arity budget, divisible cells and
//! weak units, coherent witness synthesis, bicategory extraction and the
//! inverse sequence construction, the Chu construction, and the
//! inflate/merge semi-strictification pipeline.

pub mod budget;
pub mod certificate;
pub mod divis;
pub mod error;
pub mod fixtures;
pub mod morphism;
pub mod polygraph;
pub mod report;
pub mod structure;
pub mod thin;
pub mod transfor;
pub mod units;
pub mod value;

pub mod bicat;

pub use budget::Budget;
pub use certificate::{Certificate, Verdict};
pub use error::{Error, Result};
pub use report::{Finding, Report};
pub use value::V;
