//! Core building blocks for reservoir-motif forecasting.
//!
//! A linear simple cycle reservoir induces a kernel on fixed-length input
//! windows. The eigenvectors of that kernel's metric tensor form an
//! orthonormal basis of time-series "motifs"; projecting lookback windows
//! onto the motif basis gives a compact representation on which linear
//! (ridge) readouts are trained for direct multi-horizon prediction.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable the default
//! `std` feature and enable `libm` instead. File formats, dataset ingestion
//! and the command-line interface live in the companion `rmm-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("rmm-core requires either the `std` or the `libm` feature");

pub(crate) mod fmath;

pub mod eval;
pub mod forecast;
pub mod mat;
pub mod motif;
pub mod numerics;
pub mod scr;
pub mod series;

pub use mat::Mat;
