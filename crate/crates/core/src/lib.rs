//! Exact computation in the type semigroup of compact zero-dimensional
//! dynamical systems.
//!
//! The crate decides and certifies the subequivalence relation between
//! tuples of open sets under a group action, realizes the ordered-monoid
//! structure on top of it (addition, order, way-below, the auxiliary
//! relation), constructs interpolation and decomposition witnesses, and
//! property-tests the ordered-monoid axioms on concrete systems.

pub mod action;
pub mod error;
pub mod pom;
pub mod semigroup;
pub mod space;
pub mod subeq;

pub use error::{Error, ErrorCode, Result};

/// Version stamp carried by every JSON document this crate reads or writes.
pub const FORMAT_VERSION: u32 = 1;
