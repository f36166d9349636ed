//! File formats, configuration and verification suites for `minrpp-core`.

pub mod config;
pub mod format;
pub mod verify;

pub use minrpp_core as core;
