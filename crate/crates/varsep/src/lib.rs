//! Command-line front-end and file formats for `varsep-core`.

pub mod cli;
pub mod grid;
pub mod json;

pub use cli::{run, Exit};
