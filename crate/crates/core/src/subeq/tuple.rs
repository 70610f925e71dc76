//! Tuples of open sets over one dynamical system.

use std::sync::Arc;

use crate::action::DynamicalSystem;
use crate::error::{Error, ErrorCode, Result};
use crate::space::{ClopenSet, LazyOpen};

/// One entry of a tuple: clopen (exactly represented) or lazy (observed
/// through monotone clopen approximants).
#[derive(Debug, Clone)]
pub enum OpenSet {
    Clopen(ClopenSet),
    Lazy(LazyOpen),
}

impl OpenSet {
    pub fn as_clopen(&self) -> Option<&ClopenSet> {
        match self {
            OpenSet::Clopen(c) => Some(c),
            OpenSet::Lazy(_) => None,
        }
    }

    pub fn is_clopen(&self) -> bool {
        matches!(self, OpenSet::Clopen(_))
    }

    /// Clopen stand-in at the given depth: the set itself, or the depth-d
    /// approximant of a lazy entry.
    pub fn approximant(&self, depth: u32) -> Result<ClopenSet> {
        match self {
            OpenSet::Clopen(c) => Ok(c.clone()),
            OpenSet::Lazy(l) => l.approximant(depth),
        }
    }
}

/// An ordered tuple of open sets; the carrier of the subequivalence,
/// way-below, and auxiliary relations.
#[derive(Debug, Clone)]
pub struct TupleElement {
    system: Arc<DynamicalSystem>,
    entries: Vec<OpenSet>,
}

impl TupleElement {
    pub fn new(system: Arc<DynamicalSystem>, entries: Vec<OpenSet>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::new(
                ErrorCode::ArityMismatch,
                "tuples must have arity at least one",
            ));
        }
        for e in &entries {
            let model = match e {
                OpenSet::Clopen(c) => c.model(),
                OpenSet::Lazy(l) => l.model(),
            };
            if model != system.space() {
                return Err(Error::new(
                    ErrorCode::ModelMismatch,
                    "tuple entry lives over a different space model",
                ));
            }
        }
        Ok(TupleElement { system, entries })
    }

    pub fn from_clopens(
        system: Arc<DynamicalSystem>,
        sets: impl IntoIterator<Item = ClopenSet>,
    ) -> Result<Self> {
        TupleElement::new(system, sets.into_iter().map(OpenSet::Clopen).collect())
    }

    /// The all-empty tuple of the given arity; the zero element up to ≈.
    pub fn zeros(system: Arc<DynamicalSystem>, arity: usize) -> Result<Self> {
        let model = system.space().clone();
        let sets: Result<Vec<_>> = (0..arity.max(1))
            .map(|_| ClopenSet::empty(model.clone(), 0))
            .collect();
        TupleElement::from_clopens(system, sets?)
    }

    pub fn system(&self) -> &Arc<DynamicalSystem> {
        &self.system
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[OpenSet] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &OpenSet {
        &self.entries[i]
    }

    /// True when every entry is clopen; such tuples denote compact elements.
    pub fn is_compactly_represented(&self) -> bool {
        self.entries.iter().all(|e| e.is_clopen())
    }

    /// True when the tuple is certainly the empty tuple: all entries clopen
    /// and empty. Lazy entries are never certified empty.
    pub fn is_pointwise_empty(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.as_clopen().map(|c| c.is_empty()).unwrap_or(false))
    }

    /// Replace lazy entries by their depth-d approximants.
    pub fn approximate(&self, depth: u32) -> Result<TupleElement> {
        let entries: Result<Vec<_>> = self
            .entries
            .iter()
            .map(|e| e.approximant(depth).map(OpenSet::Clopen))
            .collect();
        TupleElement::new(self.system.clone(), entries?)
    }

    /// All entries as clopen sets; error when a lazy entry is present.
    pub fn clopen_entries(&self) -> Result<Vec<&ClopenSet>> {
        self.entries
            .iter()
            .map(|e| {
                e.as_clopen().ok_or_else(|| {
                    Error::new(
                        ErrorCode::LazyRejected,
                        "operation requires clopen entries; approximate lazy entries first",
                    )
                })
            })
            .collect()
    }

    /// Largest canonical depth among clopen entries (0 when none).
    pub fn max_clopen_depth(&self) -> u32 {
        self.entries
            .iter()
            .filter_map(|e| e.as_clopen().map(|c| c.canonical_depth()))
            .max()
            .unwrap_or(0)
    }

    /// Concatenation (a, b); arities add.
    pub fn concat(&self, other: &TupleElement) -> Result<TupleElement> {
        check_same_system(self, other)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        TupleElement::new(self.system.clone(), entries)
    }
}

pub fn check_same_system(a: &TupleElement, b: &TupleElement) -> Result<()> {
    if Arc::ptr_eq(&a.system, &b.system) || *a.system == *b.system {
        Ok(())
    } else {
        Err(Error::new(
            ErrorCode::SystemMismatch,
            "operands live over different dynamical systems",
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::builtin;

    #[test]
    fn arity_and_flags() {
        let sys = builtin::odometer2();
        let model = sys.space().clone();
        let t = TupleElement::from_clopens(
            sys.clone(),
            [
                ClopenSet::full(model.clone(), 0).unwrap(),
                ClopenSet::empty(model, 1).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(t.arity(), 2);
        assert!(t.is_compactly_represented());
        assert!(!t.is_pointwise_empty());
        assert!(TupleElement::zeros(sys, 3).unwrap().is_pointwise_empty());
    }

    #[test]
    fn zero_arity_rejected() {
        let sys = builtin::odometer2();
        assert!(TupleElement::new(sys, vec![]).is_err());
    }
}
