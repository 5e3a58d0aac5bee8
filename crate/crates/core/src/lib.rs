//! Exact tail evaluators, rate functions and convergence probes for
//! non-central moderate deviations.
//!
//! The crate is `no_std` (with `alloc`). The `std` feature only switches
//! the standard library back on; file formats, the CLI and threaded Monte
//! Carlo live in the companion `ncmd` crate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]
// `!(a <= b)` is used on purpose so NaN lands on the failing branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod diagnostics;
pub mod distributions;
pub mod error;
pub mod estimators;
pub mod families;
mod math;
pub mod rng;
pub mod rvtoolkit;
pub mod scalings;
#[cfg(feature = "serde")]
pub mod serde_ext;

pub use distributions::Distribution;
pub use error::{Error, Result};
pub use families::{FamilySpec, RateFunction};
pub use scalings::ScalingFamily;
