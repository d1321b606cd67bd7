//! Cooling codes for on-chip buses.
//!
//! A bus transmission scheme is *cooling* when every transmission can avoid
//! state transitions on the currently hottest wires, and *low-power* when it
//! bounds the number of transitions per transmission. Messages are carried
//! by disjoint *codesets*: the transmitter picks whichever member of the
//! message's codeset misses the hot wires, and the receiver only needs to
//! know which codeset the word came from.
//!
//! This crate builds such codes, encodes and decodes against them, verifies
//! their defining properties by brute force at desk scale, and evaluates
//! size bounds:
//!
//! - [`mds`]: constant-power codes carved out of MDS (Reed-Solomon) erasure
//!   codes on a q x w wire grid, with O(n)-multiplication encoding and
//!   interpolation decoding.
//! - [`cpecc`]: the error-correcting variant, decoding through an
//!   error-and-erasure Reed-Solomon decoder.
//! - [`recursive`]: blow-up of a small inner code through an outer
//!   polynomial parallel-class structure, for hot-set sizes beyond q-1.
//! - [`domination`]: injective mappings into a Hamming ball that turn plain
//!   cooling codes into low-power cooling codes.
//! - [`spread`]: cooling codes from partitions of GF(2)^n into lines, with
//!   the product-mapping pipeline on top.
//! - [`model`]: the shared data model, brute-force verifier, bounds and
//!   persistence.
//! - [`sim`]: a batch bus-transmission simulator exercising any code file
//!   end to end.

pub mod bits;
pub mod construct;
pub mod cpecc;
pub mod domination;
pub mod error;
pub mod gf;
pub mod mds;
pub mod model;
pub mod recursive;
pub mod sim;
pub mod spread;

pub use error::{Error, Result};
