//! Almost-lossless weak coding on countably infinite alphabets.
//!
//! The crate provides the algorithmic core of the toolkit:
//!
//! - [`dist`]: pmfs and envelope functions on the positive integers with
//!   analytic (geometric / power) tails, exact tail masses and entropies,
//!   tail partitions, envelope probabilities and critical dimensions.
//! - [`rd`]: the countable-alphabet rate-distortion function under Hamming
//!   distortion via the water-level closed form.
//! - [`codec`]: the two-stage almost-lossless codec (tail quantizer plus a
//!   bit-exact integer arithmetic coder with static and Krichevsky-Trofimov
//!   models), the block container format, and code-length entropy estimation.
//! - [`radius`]: numerical bounds on minimax redundancy (information radius)
//!   for envelope classes, metric-entropy volume bounds, and the
//!   redundancy-gain regime classifier.
//!
//! The crate is `no_std` (with `alloc`); all floating-point transcendentals
//! go through `libm` so results are bit-stable across hosts. IO, CLI and
//! file handling live in the companion `alwc-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod codec;
pub mod dist;
pub mod error;
pub mod math;
pub mod parse;
pub mod radius;
pub mod rd;

pub use error::Error;
