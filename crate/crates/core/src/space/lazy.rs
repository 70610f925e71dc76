//! Lazy open sets: monotone clopen approximants of a general open set.

use std::sync::Arc;

use super::clopen::ClopenSet;
use super::model::SpaceModel;
use crate::error::{Error, Result};

/// A point of the space given by a constant digit/letter choice at every
/// level; enough to name the punctured-space lazy opens used in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointSpec {
    pub digit: u32,
}

impl PointSpec {
    /// Index of the depth-d atom containing the point.
    pub fn atom_at(&self, model: &SpaceModel, depth: u32) -> Result<u64> {
        let c = self.digit as u64;
        match model {
            SpaceModel::Finite { .. } => Ok(c),
            SpaceModel::Odometer { .. } => {
                let mut r = 0u64;
                for d in 0..depth {
                    r += c * model.atom_count(d)?;
                }
                model.atom_count(depth)?;
                Ok(r)
            }
            SpaceModel::FullShift { alphabet } => {
                let q = *alphabet as u64;
                let mut r = 0u64;
                for _ in 0..2 * depth {
                    r = r * q + c;
                }
                model.atom_count(depth)?;
                Ok(r)
            }
            SpaceModel::F2Boundary => {
                // the infinite word c c c ... is reduced for any single letter
                let word = vec![self.digit as u8; depth as usize];
                super::model::f2::word_to_index(&word)
                    .ok_or_else(|| Error::internal("constant letter word must be reduced"))
            }
        }
    }

    fn validate(&self, model: &SpaceModel) -> Result<()> {
        let ok = match model {
            SpaceModel::Finite { points } => self.digit < *points,
            SpaceModel::Odometer { base } => base.iter().all(|&b| self.digit < b),
            SpaceModel::FullShift { alphabet } => self.digit < *alphabet,
            SpaceModel::F2Boundary => self.digit < 4,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::schema("point digit out of range for the model"))
        }
    }
}

type ApproximantFn = Arc<dyn Fn(u32) -> Result<ClopenSet> + Send + Sync>;

#[derive(Clone)]
enum LazyKind {
    /// X minus one point: approximant(d) = X ∖ (depth-d cylinder of the point).
    Punctured(PointSpec),
    /// Arbitrary monotone approximant function; used by tests and negative
    /// controls. The monotonicity contract is the caller's.
    Custom { label: String, f: ApproximantFn },
}

/// An open set presented through an increasing sequence of clopen
/// approximants whose union is the set. No equality is offered; lazy opens
/// are only observed through finitely many approximants.
#[derive(Clone)]
pub struct LazyOpen {
    model: SpaceModel,
    kind: LazyKind,
}

impl LazyOpen {
    pub fn punctured(model: SpaceModel, point: PointSpec) -> Result<Self> {
        point.validate(&model)?;
        Ok(LazyOpen {
            model,
            kind: LazyKind::Punctured(point),
        })
    }

    pub fn from_fn(
        model: SpaceModel,
        label: impl Into<String>,
        f: impl Fn(u32) -> Result<ClopenSet> + Send + Sync + 'static,
    ) -> Self {
        LazyOpen {
            model,
            kind: LazyKind::Custom {
                label: label.into(),
                f: Arc::new(f),
            },
        }
    }

    pub fn model(&self) -> &SpaceModel {
        &self.model
    }

    pub fn label(&self) -> String {
        match &self.kind {
            LazyKind::Punctured(p) => format!("punctured(digit={})", p.digit),
            LazyKind::Custom { label, .. } => label.clone(),
        }
    }

    pub fn approximant(&self, depth: u32) -> Result<ClopenSet> {
        match &self.kind {
            LazyKind::Punctured(p) => {
                let d = depth.max(self.model.min_proper_depth());
                let atom = p.atom_at(&self.model, d)?;
                let cyl = ClopenSet::from_atom_indices(self.model.clone(), d, [atom])?;
                Ok(cyl.complement())
            }
            LazyKind::Custom { f, .. } => f(depth),
        }
    }
}

impl std::fmt::Debug for LazyOpen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lazy[{}]", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctured_approximants_increase() {
        for model in [
            SpaceModel::Odometer { base: vec![2] },
            SpaceModel::FullShift { alphabet: 2 },
            SpaceModel::F2Boundary,
        ] {
            let min = model.min_proper_depth();
            let u = LazyOpen::punctured(model, PointSpec { digit: 0 }).unwrap();
            for d in 0..4u32 {
                let a = u.approximant(d).unwrap();
                let b = u.approximant(d + 1).unwrap();
                assert!(a.subset_of(&b).unwrap(), "not monotone at depth {d}");
                if d >= min {
                    assert!(!b.subset_of(&a).unwrap(), "approximants must strictly grow");
                }
            }
        }
    }

    #[test]
    fn punctured_misses_exactly_one_atom() {
        let model = SpaceModel::Odometer { base: vec![2] };
        let u = LazyOpen::punctured(model.clone(), PointSpec { digit: 0 }).unwrap();
        let a3 = u.approximant(3).unwrap().refine(3).unwrap();
        assert_eq!(a3.atom_indices().collect::<Vec<_>>(), (1..8).collect::<Vec<_>>());
    }
}
