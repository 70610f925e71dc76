//! Exact clopen subsets as unions of depth-d atoms.

use super::atoms::AtomSet;
use super::model::SpaceModel;
use crate::error::{Error, ErrorCode, Result};

/// A clopen subset of a space model, stored as the set of depth-`depth`
/// atoms it contains. Two values are equal iff they denote the same point
/// set, regardless of the stored depth.
#[derive(Clone)]
pub struct ClopenSet {
    model: SpaceModel,
    depth: u32,
    atoms: AtomSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetRel {
    Subset,
    Disjoint,
    Equal,
}

impl ClopenSet {
    pub fn empty(model: SpaceModel, depth: u32) -> Result<Self> {
        let n = model.atom_count(depth)?;
        Ok(ClopenSet {
            model,
            depth,
            atoms: AtomSet::empty(n),
        })
    }

    pub fn full(model: SpaceModel, depth: u32) -> Result<Self> {
        let n = model.atom_count(depth)?;
        Ok(ClopenSet {
            model,
            depth,
            atoms: AtomSet::full(n),
        })
    }

    pub fn from_atom_indices(
        model: SpaceModel,
        depth: u32,
        indices: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let n = model.atom_count(depth)?;
        let mut atoms = AtomSet::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::new(
                    ErrorCode::BadLiteral,
                    format!("atom index {i} out of range at depth {depth}"),
                ));
            }
            atoms.insert(i);
        }
        Ok(ClopenSet { model, depth, atoms })
    }

    pub fn from_atoms(model: SpaceModel, depth: u32, atoms: AtomSet) -> Self {
        debug_assert_eq!(model.atom_count(depth).unwrap(), atoms.len());
        ClopenSet { model, depth, atoms }
    }

    pub fn model(&self) -> &SpaceModel {
        &self.model
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn atom_indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.atoms.iter_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty_set()
    }

    pub fn is_full(&self) -> bool {
        self.atoms.is_full_set()
    }

    /// Number of depth-`depth` atoms in the set.
    pub fn count(&self) -> u64 {
        self.atoms.count_ones()
    }

    fn check_model(&self, other: &ClopenSet) -> Result<()> {
        if self.model != other.model {
            return Err(Error::new(
                ErrorCode::ModelMismatch,
                "operands live over different space models",
            ));
        }
        Ok(())
    }

    /// Same point set re-expressed at depth `d >= self.depth()`.
    pub fn refine(&self, d: u32) -> Result<ClopenSet> {
        if d < self.depth {
            return Err(Error::new(
                ErrorCode::CannotCoarsen,
                format!("cannot coarsen from depth {} to {}", self.depth, d),
            ));
        }
        let mut cur = self.clone();
        while cur.depth < d {
            let next_depth = cur.depth + 1;
            let n_next = cur.model.atom_count(next_depth)?;
            let mut next = AtomSet::empty(n_next);
            for idx in cur.atoms.iter_ones() {
                for c in cur.model.children(cur.depth, idx)? {
                    next.insert(c);
                }
            }
            cur = ClopenSet {
                model: cur.model,
                depth: next_depth,
                atoms: next,
            };
        }
        Ok(cur)
    }

    fn common_depth(&self, other: &ClopenSet) -> u32 {
        self.depth.max(other.depth)
    }

    fn aligned(&self, other: &ClopenSet) -> Result<(ClopenSet, ClopenSet)> {
        self.check_model(other)?;
        let d = self.common_depth(other);
        Ok((self.refine(d)?, other.refine(d)?))
    }

    pub fn apply(&self, op: SetOp, other: &ClopenSet) -> Result<ClopenSet> {
        let (a, b) = self.aligned(other)?;
        let atoms = match op {
            SetOp::Union => a.atoms.union(&b.atoms),
            SetOp::Intersect => a.atoms.intersect(&b.atoms),
            SetOp::Difference => a.atoms.difference(&b.atoms),
        };
        Ok(ClopenSet {
            model: a.model,
            depth: a.depth,
            atoms,
        }
        .canonical())
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.apply(SetOp::Union, other)
    }

    pub fn intersect(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.apply(SetOp::Intersect, other)
    }

    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.apply(SetOp::Difference, other)
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet {
            model: self.model.clone(),
            depth: self.depth,
            atoms: self.atoms.complement(),
        }
        .canonical()
    }

    pub fn relate(&self, rel: SetRel, other: &ClopenSet) -> Result<bool> {
        let (a, b) = self.aligned(other)?;
        Ok(match rel {
            SetRel::Subset => a.atoms.is_subset(&b.atoms),
            SetRel::Disjoint => a.atoms.is_disjoint(&b.atoms),
            SetRel::Equal => a.atoms == b.atoms,
        })
    }

    pub fn subset_of(&self, other: &ClopenSet) -> Result<bool> {
        self.relate(SetRel::Subset, other)
    }

    pub fn disjoint_from(&self, other: &ClopenSet) -> Result<bool> {
        self.relate(SetRel::Disjoint, other)
    }

    pub fn same_set(&self, other: &ClopenSet) -> Result<bool> {
        self.relate(SetRel::Equal, other)
    }

    /// Minimal-depth representation: greedily coarsen while every parent atom
    /// is uniformly inside or outside the set.
    pub fn canonical(&self) -> ClopenSet {
        let mut cur = self.clone();
        'coarsen: while cur.depth > 0 {
            let parent_depth = cur.depth - 1;
            let n_parent = cur
                .model
                .atom_count(parent_depth)
                .expect("coarser depth is always representable");
            let mut parent = AtomSet::empty(n_parent);
            for p in 0..n_parent {
                let children = cur
                    .model
                    .children(parent_depth, p)
                    .expect("children of representable depth");
                let first = cur.atoms.contains(children[0]);
                if children.iter().any(|&c| cur.atoms.contains(c) != first) {
                    break 'coarsen;
                }
                if first {
                    parent.insert(p);
                }
            }
            cur = ClopenSet {
                model: cur.model,
                depth: parent_depth,
                atoms: parent,
            };
        }
        cur
    }

    pub fn canonical_depth(&self) -> u32 {
        self.canonical().depth
    }
}

impl PartialEq for ClopenSet {
    fn eq(&self, other: &Self) -> bool {
        self.model == other.model && self.same_set(other).unwrap_or(false)
    }
}

impl Eq for ClopenSet {}

impl std::fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Clopen[d{} {:?}]", self.depth, self.atoms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odo2() -> SpaceModel {
        SpaceModel::Odometer { base: vec![2] }
    }

    #[test]
    fn refine_residue_class() {
        // {0 mod 2} refined to depth 3 -> {0,2,4,6 mod 8}
        let c = ClopenSet::from_atom_indices(odo2(), 1, [0]).unwrap();
        let r = c.refine(3).unwrap();
        assert_eq!(r.atom_indices().collect::<Vec<_>>(), vec![0, 2, 4, 6]);
        assert!(c.same_set(&r).unwrap());
    }

    #[test]
    fn refine_empty_any_model() {
        for model in [odo2(), SpaceModel::F2Boundary, SpaceModel::FullShift { alphabet: 2 }] {
            let e = ClopenSet::empty(model, 0).unwrap();
            let r = e.refine(3).unwrap();
            assert!(r.is_empty());
        }
    }

    #[test]
    fn refine_f2_letter_cylinder() {
        // C_a at depth 2 splits into C_aa, C_ab, C_ab⁻¹ (letter a excluded a⁻¹)
        let c = ClopenSet::from_atom_indices(SpaceModel::F2Boundary, 1, [0]).unwrap();
        let r = c.refine(2).unwrap();
        let idx: Vec<u64> = r.atom_indices().collect();
        assert_eq!(idx.len(), 3);
        use super::super::model::f2;
        let words: Vec<Vec<u8>> = idx.iter().map(|&i| f2::index_to_word(2, i)).collect();
        assert!(words.contains(&vec![0, 0])); // aa
        assert!(words.contains(&vec![0, 2])); // ab
        assert!(words.contains(&vec![0, 3])); // ab⁻¹
    }

    #[test]
    fn cannot_coarsen_error() {
        let c = ClopenSet::full(odo2(), 2).unwrap();
        let err = c.refine(1).unwrap_err();
        assert_eq!(err.code, ErrorCode::CannotCoarsen);
    }

    #[test]
    fn difference_of_full_is_empty() {
        let x = ClopenSet::full(odo2(), 3).unwrap();
        assert!(x.difference(&x).unwrap().is_empty());
    }

    #[test]
    fn difference_drops_single_atom() {
        let x = ClopenSet::full(odo2(), 3).unwrap();
        let zero = ClopenSet::from_atom_indices(odo2(), 3, [0]).unwrap();
        let d = x.difference(&zero).unwrap();
        assert_eq!(d.refine(3).unwrap().atom_indices().collect::<Vec<_>>(), (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn union_across_depths_canonicalizes() {
        // {0 mod 2} ∪ {1 mod 4} = {0,1,2 mod 4}
        let a = ClopenSet::from_atom_indices(odo2(), 1, [0]).unwrap();
        let b = ClopenSet::from_atom_indices(odo2(), 2, [1]).unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u.depth(), 2);
        assert_eq!(u.atom_indices().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn relate_examples() {
        let e = ClopenSet::empty(odo2(), 2).unwrap();
        let c = ClopenSet::from_atom_indices(odo2(), 2, [1, 3]).unwrap();
        assert!(e.subset_of(&c).unwrap());
        let ev = ClopenSet::from_atom_indices(odo2(), 1, [0]).unwrap();
        let od = ClopenSet::from_atom_indices(odo2(), 1, [1]).unwrap();
        assert!(ev.disjoint_from(&od).unwrap());
        let zero_mod4 = ClopenSet::from_atom_indices(odo2(), 2, [0]).unwrap();
        assert!(zero_mod4.subset_of(&ev).unwrap());
    }

    #[test]
    fn model_mismatch_rejected() {
        let a = ClopenSet::full(odo2(), 1).unwrap();
        let b = ClopenSet::full(SpaceModel::F2Boundary, 1).unwrap();
        assert_eq!(a.union(&b).unwrap_err().code, ErrorCode::ModelMismatch);
    }

    #[test]
    fn canonical_idempotent_and_minimal() {
        // {0,2,4,6 mod 8} canonicalizes to {0 mod 2}
        let c = ClopenSet::from_atom_indices(odo2(), 3, [0, 2, 4, 6]).unwrap();
        let k = c.canonical();
        assert_eq!(k.depth(), 1);
        assert_eq!(k.canonical(), k);
        assert_eq!(k, c);
    }

    #[test]
    fn f2_depth0_only_trivial_sets() {
        let full = ClopenSet::full(SpaceModel::F2Boundary, 0).unwrap();
        assert!(full.is_full());
        let letter = ClopenSet::from_atom_indices(SpaceModel::F2Boundary, 1, [0]).unwrap();
        assert_eq!(letter.canonical_depth(), 1);
    }
}
