//! Daily usable-capacity derating of a generating fleet under drought and heat.
//!
//! Each technology has its own kernel module ([`hydro`], [`once_through`],
//! [`recirc`], [`ct`], [`pv`], [`wind`]); [`aggregate`] routes every generator
//! of a [`fleet::FleetRegistry`] to the right kernel and rolls the results up
//! into category capacity factors. [`scenario`] perturbs the environmental
//! inputs for sensitivity runs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aggregate;
pub mod constants;
pub mod ct;
pub mod error;
pub mod fleet;
pub mod hydro;
pub mod ingest;
pub mod once_through;
pub mod psychro;
pub mod pv;
pub mod recirc;
pub mod report;
pub mod scenario;
pub mod series;
pub mod wind;

pub use error::DerateError;
