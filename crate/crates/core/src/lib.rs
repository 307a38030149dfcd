//! Multi-sector toy economy and real-GDP measurement laboratory.
//!
//! The economy is a set of Cobb-Douglas sectors, each using its own good as
//! physical capital, with households holding generalized Stone-Geary
//! preferences. Every year is a closed-form competitive equilibrium. On top
//! of the simulated panels the crate measures real growth under different
//! base-year policies and quantifies how much the measured figure depends on
//! the path technology took between identical endpoints.
//!
//! Modules:
//! - [`econ`]: the equilibrium solver.
//! - [`measurement`]: GDP aggregation, growth under base-year policies, deflators, indices.
//! - [`paths`]: technology schedules, the year-by-year simulator, path-dependence diagnostics.
//! - [`kaldor`]: saving / labor share / return relations for the sustainable growth rate.
//! - [`scenario`]: JSON scenario files, built-in experiments and report emission.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod econ;
pub mod error;
pub mod kaldor;
pub mod measurement;
pub mod paths;
pub mod report;
pub mod scenario;

pub use error::{Error, Result};
