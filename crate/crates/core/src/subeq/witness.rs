//! Subequivalence witnesses: certificates that a tuple packs into another,
//! their independent verification, and witness composition.

use super::tuple::{check_same_system, TupleElement};
use crate::action::GroupWord;
use crate::error::{Error, ErrorCode, Result};
use crate::space::ClopenSet;

/// One witness line: translate `piece` (part of source entry `source`) by
/// `word` into target entry `target`.
#[derive(Debug, Clone)]
pub struct Assignment {
    pub source: usize,
    pub piece: ClopenSet,
    pub word: GroupWord,
    pub target: usize,
}

/// A certificate for a ≼ b: pieces covering every source entry whose
/// translates sit inside the target entries, pairwise disjoint per target.
/// Verification depends only on this data, never on how it was found.
#[derive(Debug, Clone)]
pub struct SubeqWitness {
    source_arity: usize,
    target_arity: usize,
    /// Refinement depth the search used; for lazy entries this is the
    /// approximant depth the certificate refers to.
    depth: u32,
    assignments: Vec<Assignment>,
}

impl SubeqWitness {
    pub fn new(
        source_arity: usize,
        target_arity: usize,
        depth: u32,
        assignments: Vec<Assignment>,
    ) -> Self {
        SubeqWitness {
            source_arity,
            target_arity,
            depth,
            assignments,
        }
    }

    /// The canonical witness for the all-empty source tuple.
    pub fn empty(source_arity: usize, target_arity: usize) -> Self {
        SubeqWitness::new(source_arity, target_arity, 0, Vec::new())
    }

    /// The identity witness: each entry covered by itself, word e, target i.
    pub fn identity(tuple: &TupleElement) -> Result<Self> {
        let entries = tuple.clopen_entries()?;
        let assignments = entries
            .iter()
            .enumerate()
            .map(|(i, c)| Assignment {
                source: i,
                piece: (*c).clone(),
                word: GroupWord::identity(),
                target: i,
            })
            .collect();
        Ok(SubeqWitness::new(
            tuple.arity(),
            tuple.arity(),
            tuple.max_clopen_depth(),
            assignments,
        ))
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }

    pub fn max_word_length(&self) -> usize {
        self.assignments.iter().map(|a| a.word.len()).max().unwrap_or(0)
    }

    /// Merge assignments sharing (source, word, target) into one piece;
    /// cover, containment, and disjointness are unaffected.
    pub fn merged(&self) -> Result<SubeqWitness> {
        let mut out: Vec<Assignment> = Vec::new();
        for a in &self.assignments {
            if let Some(prev) = out
                .iter_mut()
                .find(|p| p.source == a.source && p.target == a.target && p.word == a.word)
            {
                prev.piece = prev.piece.union(&a.piece)?;
            } else {
                out.push(a.clone());
            }
        }
        Ok(SubeqWitness::new(
            self.source_arity,
            self.target_arity,
            self.depth,
            out,
        ))
    }

    /// Relabel into a block of a larger witness: sources shift by
    /// `source_offset`, targets by `target_offset`.
    pub fn shifted(&self, source_offset: usize, target_offset: usize) -> Vec<Assignment> {
        self.assignments
            .iter()
            .map(|a| Assignment {
                source: a.source + source_offset,
                piece: a.piece.clone(),
                word: a.word.clone(),
                target: a.target + target_offset,
            })
            .collect()
    }
}

/// Check a witness against Definition-style conditions: every source entry is
/// covered by its pieces, every translated piece lies in its target entry,
/// and translates sharing a target are pairwise disjoint.
///
/// Out-of-range indices and arity mismatches are errors, not `false`; only a
/// genuine failure of the three conditions yields `false`.
pub fn verify(a: &TupleElement, b: &TupleElement, w: &SubeqWitness) -> Result<bool> {
    check_same_system(a, b)?;
    let sources = a.clopen_entries()?;
    let targets = b.clopen_entries()?;
    if w.source_arity() != sources.len() || w.target_arity() != targets.len() {
        return Err(Error::new(
            ErrorCode::ArityMismatch,
            "witness arities do not match the operands",
        ));
    }
    let sys = a.system();
    for asg in w.assignments() {
        if asg.source >= sources.len() || asg.target >= targets.len() {
            return Err(Error::new(
                ErrorCode::WitnessIndex,
                format!(
                    "assignment references source {} / target {} out of range",
                    asg.source + 1,
                    asg.target + 1
                ),
            ));
        }
        if asg.piece.model() != sys.space() {
            return Err(Error::new(
                ErrorCode::ModelMismatch,
                "witness piece lives over a different space model",
            ));
        }
    }

    // cover condition per source entry
    for (i, src) in sources.iter().enumerate() {
        let mut covered = ClopenSet::empty(sys.space().clone(), 0)?;
        for asg in w.assignments().iter().filter(|asg| asg.source == i) {
            covered = covered.union(&asg.piece)?;
        }
        if !src.subset_of(&covered)? {
            return Ok(false);
        }
    }

    // containment and per-target disjointness of translates
    let mut occupied: Vec<ClopenSet> = targets
        .iter()
        .map(|_| ClopenSet::empty(sys.space().clone(), 0))
        .collect::<Result<_>>()?;
    for asg in w.assignments() {
        let image = sys.act(&asg.word, &asg.piece)?;
        if !image.subset_of(targets[asg.target])? {
            return Ok(false);
        }
        if !image.disjoint_from(&occupied[asg.target])? {
            return Ok(false);
        }
        occupied[asg.target] = occupied[asg.target].union(&image)?;
    }
    Ok(true)
}

/// Witness composition realizing transitivity: pieces of `w1` are refined
/// against preimages of `w2`'s pieces and the words compose.
pub fn compose(
    a: &TupleElement,
    b: &TupleElement,
    c: &TupleElement,
    w1: &SubeqWitness,
    w2: &SubeqWitness,
) -> Result<SubeqWitness> {
    if !verify(a, b, w1)? {
        return Err(Error::new(
            ErrorCode::PreconditionFailed,
            "first witness does not verify for (a, b)",
        ));
    }
    if !verify(b, c, w2)? {
        return Err(Error::new(
            ErrorCode::PreconditionFailed,
            "second witness does not verify for (b, c)",
        ));
    }
    let sys = a.system();
    let mut assignments = Vec::new();
    for a1 in w1.assignments() {
        let translated = sys.act(&a1.word, &a1.piece)?;
        for a2 in w2.assignments().iter().filter(|a2| a2.source == a1.target) {
            let overlap = translated.intersect(&a2.piece)?;
            if overlap.is_empty() {
                continue;
            }
            let piece = sys.act(&a1.word.inverse(), &overlap)?;
            assignments.push(Assignment {
                source: a1.source,
                piece,
                word: a2.word.concat(&a1.word),
                target: a2.target,
            });
        }
    }
    let depth = assignments
        .iter()
        .map(|x| x.piece.depth())
        .max()
        .unwrap_or(0);
    let composite = SubeqWitness::new(w1.source_arity(), w2.target_arity(), depth, assignments);
    if !verify(a, c, &composite)? {
        return Err(Error::internal(
            "composite witness failed verification; this is a bug",
        ));
    }
    Ok(composite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::builtin;
    use crate::space::ClopenSet;

    fn z4_tuple(points: &[&[u64]]) -> TupleElement {
        let sys = builtin::z4_rotation();
        let model = sys.space().clone();
        TupleElement::from_clopens(
            sys,
            points
                .iter()
                .map(|p| ClopenSet::from_atom_indices(model.clone(), 0, p.iter().copied()).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn identity_witness_verifies() {
        let a = z4_tuple(&[&[0, 1], &[2]]);
        let w = SubeqWitness::identity(&a).unwrap();
        assert!(verify(&a, &a, &w).unwrap());
    }

    #[test]
    fn overlapping_images_rejected() {
        // two assignments, same target label, overlapping images
        let a = z4_tuple(&[&[0], &[0]]);
        let b = z4_tuple(&[&[0, 1]]);
        let model = a.system().space().clone();
        let piece = ClopenSet::from_atom_indices(model, 0, [0]).unwrap();
        let w = SubeqWitness::new(
            2,
            1,
            0,
            vec![
                Assignment {
                    source: 0,
                    piece: piece.clone(),
                    word: GroupWord::identity(),
                    target: 0,
                },
                Assignment {
                    source: 1,
                    piece,
                    word: GroupWord::identity(),
                    target: 0,
                },
            ],
        );
        assert!(!verify(&a, &b, &w).unwrap());
    }

    #[test]
    fn rotation_witness() {
        // a = ({0}), b = ({2}), witness {(1, {0}, aa, 1)} → true
        let a = z4_tuple(&[&[0]]);
        let b = z4_tuple(&[&[2]]);
        let model = a.system().space().clone();
        let w = SubeqWitness::new(
            1,
            1,
            0,
            vec![Assignment {
                source: 0,
                piece: ClopenSet::from_atom_indices(model, 0, [0]).unwrap(),
                word: GroupWord::parse("aa", 1).unwrap(),
                target: 0,
            }],
        );
        assert!(verify(&a, &b, &w).unwrap());
    }

    #[test]
    fn out_of_range_is_error_not_false() {
        let a = z4_tuple(&[&[0]]);
        let b = z4_tuple(&[&[1]]);
        let model = a.system().space().clone();
        let w = SubeqWitness::new(
            1,
            1,
            0,
            vec![Assignment {
                source: 0,
                piece: ClopenSet::from_atom_indices(model, 0, [0]).unwrap(),
                word: GroupWord::identity(),
                target: 5,
            }],
        );
        assert_eq!(verify(&a, &b, &w).unwrap_err().code, ErrorCode::WitnessIndex);
    }

    #[test]
    fn compose_rotations() {
        // ({0} ≼ {1} via a) ∘ ({1} ≼ {2} via a) = {0} ≼ {2} via aa
        let t0 = z4_tuple(&[&[0]]);
        let t1 = z4_tuple(&[&[1]]);
        let t2 = z4_tuple(&[&[2]]);
        let model = t0.system().space().clone();
        let mk = |src: u64, word: &str| {
            SubeqWitness::new(
                1,
                1,
                0,
                vec![Assignment {
                    source: 0,
                    piece: ClopenSet::from_atom_indices(model.clone(), 0, [src]).unwrap(),
                    word: GroupWord::parse(word, 1).unwrap(),
                    target: 0,
                }],
            )
        };
        let w1 = mk(0, "a");
        let w2 = mk(1, "a");
        let w = compose(&t0, &t1, &t2, &w1, &w2).unwrap();
        assert_eq!(w.assignments().len(), 1);
        assert_eq!(w.assignments()[0].word.to_string(), "aa");
        assert!(verify(&t0, &t2, &w).unwrap());
    }

    #[test]
    fn compose_identity_is_identity() {
        let a = z4_tuple(&[&[0, 2]]);
        let id = SubeqWitness::identity(&a).unwrap();
        let w = compose(&a, &a, &a, &id, &id).unwrap();
        assert!(verify(&a, &a, &w).unwrap());
        assert!(w.assignments().iter().all(|x| x.word.is_identity()));
    }
}
