//! Library surface of the `mtcm` command-line tool: input-document parsing
//! and report rendering, shared with the binary and its tests.

pub mod input;
pub mod render;
