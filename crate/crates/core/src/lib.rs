//! Construction and exact verification of factorizations of finite orthogonal
//! groups of minus type, built from matrix groups over small finite fields.
//!
//! The crate is `no_std` (with `alloc`). IO, timing and the command line live in
//! the companion `omfact` crate.
#![no_std]

extern crate alloc;

pub mod codec;
pub mod error;
pub mod factorcore;
pub mod field;
pub mod forms;
pub mod gens;
pub mod group;
pub mod linalg;
pub mod orders;
pub mod permgrp;
pub mod scalars;
pub mod semilinear;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Fe, Field, FieldRef};
pub use forms::{FormType, HermitianSpace, QuadraticSpace, StandardBasis};
pub use group::GroupHandle;
pub use scalars::ScalarBridge;
pub use semilinear::Semilinear;
