//! Command-line front end for `wedd-core`: group files, field flags, JSON
//! reports and the `decompose`, `reduce`, `codes` and `verify` commands.

pub mod commands;
pub mod error;
pub mod input;
pub mod json;
pub mod selector;
