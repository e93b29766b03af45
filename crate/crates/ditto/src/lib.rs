//! Files, preprocessing and the command line around [`ditto_core`].
//!
//! Databases are read and written as `seq time attr value` TSV ([`tsv`]), code tables and
//! planted ground truth as JSON ([`json`]), generator specs as `key = value` files
//! ([`config`]). Real-valued CSV input is discretised by [`preprocess`].

pub mod cli;
pub mod config;
pub mod error;
pub mod json;
pub mod preprocess;
pub mod report;
pub mod tsv;

pub use error::{Error, Result};
