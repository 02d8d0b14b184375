//! Explicit Wedderburn data for semisimple group algebras `F G`, with `F` a
//! finite field and `G` a finite nilpotent group.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; file formats, reports and the command line live
//! in the `wedd` crate.
//!
//! Layout:
//! - [`ff`]: finite fields `F_{q^d}`, roots of unity, traces, embeddings.
//! - [`groups`]: Cayley-table groups, subgroup lattice, quotients, Sylow splits.
//! - [`galg`]: group algebra arithmetic and the idempotents built from subgroups.
//! - [`shoda`]: strong Shoda pairs, cyclotomic classes, component shapes.
//! - [`construct`]: primitive idempotents and matrix units per component.
//! - [`verify`]: independent checks and shape measurement.
//! - [`codes`]: left ideals as linear codes.
//! - [`pipeline`]: enumerate, construct and verify every component.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod catalog;
pub mod codes;
pub mod construct;
mod error;
pub mod ff;
pub mod galg;
pub mod groups;
pub mod linalg;
pub mod pipeline;
mod poly;
pub mod shoda;
pub mod verify;

pub use error::{Error, Result};
