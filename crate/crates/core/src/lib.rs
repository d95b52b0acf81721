//! Central-moment symmetric forms on the Legendrian manifolds of gas entropy
//! models.
//!
//! The crate is `no_std` (it needs `alloc` for grid scans, polylines and
//! general moment tensors). Everything here is a pure function of its inputs;
//! IO, threading and file formats live in the `thermoforms` companion crate.
//!
//! Module map:
//!
//! * [`jets`]: truncated bivariate Taylor arithmetic to total order 4.
//! * [`entropy`]: ideal and reduced van der Waals entropy models, `(s, T, p)`
//!   state map and the `(T, v) -> e` inversion.
//! * [`forms`]: `σ₂`, `σ₃`, `σ₄` in `(e, v)` coordinates and the
//!   raw-to-central moment conversion.
//! * [`processes`]: symmetric processes (null directions of `σ₃`), cubic
//!   root classification and RK4 curve tracing.
//! * [`domains`]: definiteness of `σ₂`/`σ₄` and `(T, v)` grid scans.
//! * [`oracle`]: one-dimensional exponential families with closed-form
//!   partition functions, used to check the moment identities numerically.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod domains;
pub mod entropy;
mod error;
pub mod forms;
pub mod grid;
pub mod jets;
mod math;
pub mod oracle;
pub mod poly;
pub mod processes;
pub mod quadrature;

pub use error::Error;
pub use jets::Jet4;

pub type Result<T, E = Error> = core::result::Result<T, E>;
