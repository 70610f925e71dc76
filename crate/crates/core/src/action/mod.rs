//! Finitely generated group actions on space models: words, word balls, and
//! the exact action of words on clopen sets.

mod load;
mod system;
mod word;

pub use load::{builtin, load_system, load_system_json, SystemSpec};
pub use system::{DynamicalSystem, GenAction};
pub use word::{shortlex_cmp, GroupWord, Letter, MAX_GENERATORS};
