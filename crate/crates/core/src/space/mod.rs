//! Exact algebra of clopen subsets of compact zero-dimensional spaces, plus
//! lazy monotone-approximant representations of general open sets.

mod atoms;
mod clopen;
mod lazy;
mod literal;
mod model;

pub use atoms::AtomSet;
pub use clopen::{ClopenSet, SetOp, SetRel};
pub use lazy::{LazyOpen, PointSpec};
pub use literal::{clopen_literal, f2_letters_to_string, parse_clopen, parse_f2_letters};
pub use model::{f2, SpaceModel, F2_LETTERS, MAX_ATOMS};
