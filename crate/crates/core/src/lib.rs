//! Exact arithmetic for verifying character-sum bounds over small finite fields.
//!
//! The crate is organized around a few layers:
//!
//! * [`field`] — arithmetic in `F_{p^m}` with a fixed primitive element,
//!   discrete-log tables, traces and roots of unity.
//! * [`poly`] — sparse polynomials over a field and their evaluation.
//! * [`cyclotomic`] — exact values in `Z[zeta_p]`, the ring where additive
//!   character sums live.
//! * [`index`] — the unique decomposition `g = a * x^r * f(x^s) + b` of a
//!   polynomial and its piecewise cyclotomic-mapping form.
//! * [`charsum`] — character sums computed along independent routes that
//!   serve as mutual oracles.
//! * [`bounds`] — both sides of each bound, with exact centers and
//!   error-aware holds/violated verdicts.
//! * [`artin`] — point counts for `y^q - y = g(x)` over `F_{q^m}`, two ways.
//! * [`codes`] — trace-represented cyclic codewords, weights along two
//!   routes, and weight windows.
//! * [`family`] — deterministic polynomial families (and the seeded
//!   generator) used by sweeps.
//!
//! All equality decisions on sums are exact integer comparisons; floating
//! point only enters when a magnitude is compared against a `sqrt(q)`-shaped
//! bound, and then always together with a conservative error bound.
//!
//! The crate is `no_std` (with `alloc`) unless the `std` feature is enabled.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod artin;
pub mod bounds;
pub mod charsum;
pub mod codes;
pub mod cyclotomic;
pub mod family;
pub mod field;
pub mod index;
pub mod poly;
mod util;

pub use bounds::{BoundKind, BoundReport, HoldsStatus};
pub use cyclotomic::CyclotomicValue;
pub use field::{FieldElement, FieldError, FieldSpec};
pub use index::{CyclotomicMapping, IndexForm};
pub use poly::SparsePoly;
