//! Expression text format, golden files, suite runner, report emission.

pub mod parse;
pub mod render;
