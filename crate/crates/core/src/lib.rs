//! Exact computations in finite crystallographic Coxeter groups.
//!
//! The crate covers the group side (root systems, enumeration, parabolic
//! machinery, conjugacy classes), Solomon's descent algebra (quasi-idempotents
//! and the characters they afford), the Orlik–Solomon algebra through its
//! non-broken-circuit basis, and cyclotomic-valued class functions with
//! induction and a search for linear characters whose induced sum matches a
//! target character.
//!
//! Everything is `no_std` with `alloc`; IO, table files and the CLI live in
//! the companion `coxchar` crate.

#![no_std]

extern crate alloc;

pub mod classfn;
pub mod coxgroup;
pub mod cyclotomic;
pub mod descent;
pub mod error;
pub mod lincar;
pub mod linalg;
pub mod osalg;
pub mod rootsys;
pub mod solver;

pub use classfn::ClassFunction;
pub use coxgroup::{Classes, ElemId, GroupBox, Subgroup};
pub use cyclotomic::Cyclotomic;
pub use error::Error;
pub use rootsys::{CoxeterDatum, CoxeterType, Element};

/// Exact rational numbers used throughout.
pub type Rational = num_rational::Ratio<i128>;
