//! File formats and helpers shared by the `ulm` binary and its tests.

pub mod formats;
