//! Ground-truth oracles: complete enumeration on finite systems and the
//! counting criterion on odometers. Deliberately simple and separate from
//! the budgeted search they are used to validate.

use super::budget::{NoReason, Verdict};
use super::search::greedy_odometer_witness;
use super::tuple::{check_same_system, TupleElement};
use super::witness::{verify, Assignment, SubeqWitness};
use crate::error::{Error, ErrorCode, Result};
use crate::space::ClopenSet;

/// Exact decision by complete enumeration of point assignments over the full
/// (finite) group. Errors on infinite models or lazy entries.
pub fn oracle_exhaustive(a: &TupleElement, b: &TupleElement) -> Result<Verdict> {
    check_same_system(a, b)?;
    let sys = a.system().clone();
    if !sys.is_finite_system() {
        return Err(Error::new(
            ErrorCode::OracleDomain,
            "exhaustive oracle requires a finite system",
        ));
    }
    let sources = a.clopen_entries()?;
    let targets = b.clopen_entries()?;

    // the ball enumerator stops as soon as the group is exhausted
    let (ball, saturation) = sys.word_ball_with_saturation(4096);
    let saturation = saturation
        .ok_or_else(|| Error::new(ErrorCode::OracleDomain, "group did not saturate"))?;

    let model = sys.space().clone();
    let mut points: Vec<(usize, u64)> = Vec::new();
    for (i, s) in sources.iter().enumerate() {
        for p in s.refine(0)?.atom_indices() {
            points.push((i, p));
        }
    }
    if points.is_empty() {
        return Ok(Verdict::Yes(SubeqWitness::empty(a.arity(), b.arity())));
    }

    // candidate (word, target, image point) per source point
    let mut candidates: Vec<Vec<(usize, usize, u64)>> = Vec::with_capacity(points.len());
    for &(_, p) in &points {
        let singleton = ClopenSet::from_atom_indices(model.clone(), 0, [p])?;
        let mut list = Vec::new();
        for (w_id, w) in ball.iter().enumerate() {
            let img = sys.act(w, &singleton)?;
            let q = img.atom_indices().next().expect("image of a point is a point");
            for (k, t) in targets.iter().enumerate() {
                if t.refine(0)?.atoms().contains(q) {
                    list.push((w_id, k, q));
                }
            }
        }
        if list.is_empty() {
            return Ok(Verdict::CertifiedNo(NoReason::FiniteExhaustion {
                radius: saturation,
            }));
        }
        candidates.push(list);
    }

    let n_points = match sys.space() {
        crate::space::SpaceModel::Finite { points } => *points as usize,
        _ => unreachable!(),
    };
    let mut used = vec![vec![false; n_points]; targets.len()];
    let mut chosen = vec![0usize; points.len()];

    fn assign(
        pos: usize,
        candidates: &[Vec<(usize, usize, u64)>],
        used: &mut [Vec<bool>],
        chosen: &mut [usize],
    ) -> bool {
        if pos == candidates.len() {
            return true;
        }
        for (ci, &(_, k, q)) in candidates[pos].iter().enumerate() {
            if used[k][q as usize] {
                continue;
            }
            used[k][q as usize] = true;
            chosen[pos] = ci;
            if assign(pos + 1, candidates, used, chosen) {
                return true;
            }
            used[k][q as usize] = false;
        }
        false
    }

    if assign(0, &candidates, &mut used, &mut chosen) {
        let assignments: Vec<Assignment> = points
            .iter()
            .enumerate()
            .map(|(pos, &(source, p))| {
                let (w_id, k, _) = candidates[pos][chosen[pos]];
                Assignment {
                    source,
                    piece: ClopenSet::from_atom_indices(model.clone(), 0, [p]).unwrap(),
                    word: ball[w_id].clone(),
                    target: k,
                }
            })
            .collect();
        let w = SubeqWitness::new(a.arity(), b.arity(), 0, assignments).merged()?;
        if !verify(a, b, &w)? {
            return Err(Error::internal("exhaustive oracle produced a bad witness"));
        }
        Ok(Verdict::Yes(w))
    } else {
        Ok(Verdict::CertifiedNo(NoReason::FiniteExhaustion {
            radius: saturation,
        }))
    }
}

/// Exact decision on the odometer: translations act as index shifts on the
/// depth-d residue atoms, so a ≼ b iff the total source atom count at the
/// common refinement depth is at most the target's. Yes verdicts come with a
/// greedy residue-matching witness.
pub fn oracle_odometer_count(a: &TupleElement, b: &TupleElement) -> Result<Verdict> {
    check_same_system(a, b)?;
    let sys = a.system().clone();
    if !sys.is_standard_odometer() {
        return Err(Error::new(
            ErrorCode::OracleDomain,
            "counting oracle requires an odometer system",
        ));
    }
    let sources = a.clopen_entries()?;
    let targets = b.clopen_entries()?;
    let depth = a.max_clopen_depth().max(b.max_clopen_depth());
    let mut source_atoms = 0;
    for s in &sources {
        source_atoms += s.refine(depth)?.count();
    }
    let mut target_atoms = 0;
    for t in &targets {
        target_atoms += t.refine(depth)?.count();
    }
    if source_atoms > target_atoms {
        return Ok(Verdict::CertifiedNo(NoReason::OdometerCount {
            source_atoms,
            target_atoms,
            depth,
        }));
    }
    let w = greedy_odometer_witness(a, b, depth)?;
    if !verify(a, b, &w)? {
        return Err(Error::internal("greedy odometer witness failed verification"));
    }
    Ok(Verdict::Yes(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::builtin;

    fn finite_tuple(sys: &std::sync::Arc<crate::action::DynamicalSystem>, sets: &[&[u64]]) -> TupleElement {
        let model = sys.space().clone();
        TupleElement::from_clopens(
            sys.clone(),
            sets.iter().map(|s| {
                ClopenSet::from_atom_indices(model.clone(), 0, s.iter().copied()).unwrap()
            }),
        )
        .unwrap()
    }

    #[test]
    fn z4_pair_packs() {
        let sys = builtin::z4_rotation();
        let a = finite_tuple(&sys, &[&[0, 1]]);
        let b = finite_tuple(&sys, &[&[2, 3]]);
        assert!(oracle_exhaustive(&a, &b).unwrap().is_yes());
    }

    #[test]
    fn z4_three_into_two_fails() {
        let sys = builtin::z4_rotation();
        let a = finite_tuple(&sys, &[&[0, 1, 2]]);
        let b = finite_tuple(&sys, &[&[0, 1]]);
        assert!(oracle_exhaustive(&a, &b).unwrap().is_no());
    }

    #[test]
    fn trivial_group_identity_only() {
        let sys = builtin::trivial2();
        let a = finite_tuple(&sys, &[&[0]]);
        assert!(oracle_exhaustive(&a, &a).unwrap().is_yes());
        let b = finite_tuple(&sys, &[&[1]]);
        assert!(oracle_exhaustive(&a, &b).unwrap().is_no());
    }

    #[test]
    fn oracle_domain_errors() {
        let sys = builtin::odometer2();
        let x = TupleElement::from_clopens(
            sys.clone(),
            [ClopenSet::full(sys.space().clone(), 0).unwrap()],
        )
        .unwrap();
        assert_eq!(
            oracle_exhaustive(&x, &x).unwrap_err().code,
            ErrorCode::OracleDomain
        );
        let fsys = builtin::z4_rotation();
        let y = TupleElement::from_clopens(
            fsys.clone(),
            [ClopenSet::full(fsys.space().clone(), 0).unwrap()],
        )
        .unwrap();
        assert_eq!(
            oracle_odometer_count(&y, &y).unwrap_err().code,
            ErrorCode::OracleDomain
        );
    }

    #[test]
    fn odometer_counting_examples() {
        let sys = builtin::odometer2();
        let model = sys.space().clone();
        let t = |level: u32, classes: &[u64]| {
            TupleElement::from_clopens(
                sys.clone(),
                [ClopenSet::from_atom_indices(model.clone(), level, classes.iter().copied())
                    .unwrap()],
            )
            .unwrap()
        };
        // ({0,1 mod 4}) ≼ ({2,3 mod 4}): 2 ≤ 2
        let v = oracle_odometer_count(&t(2, &[0, 1]), &t(2, &[2, 3])).unwrap();
        assert!(v.is_yes());
        // ({0,1 mod 2}) vs ({0 mod 2}): 2 > 1
        let v = oracle_odometer_count(&t(1, &[0, 1]), &t(1, &[0])).unwrap();
        assert!(v.is_no());
        // empty source
        let e = TupleElement::zeros(sys.clone(), 1).unwrap();
        assert!(oracle_odometer_count(&e, &t(1, &[0])).unwrap().is_yes());
    }
}
