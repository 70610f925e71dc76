//! Finitely generated group actions on space models.

use std::collections::HashMap;

use super::word::{shortlex_cmp, GroupWord, Letter, MAX_GENERATORS};
use crate::error::{Error, ErrorCode, Result};
use crate::space::{f2, AtomSet, ClopenSet, SpaceModel};

/// Exact action of one generator on atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenAction {
    /// +1 with carry on the odometer; maps depth-d atoms to depth-d atoms.
    OdometerAdd,
    /// Left shift on the two-sided full shift; depth grows by one.
    ShiftLeft,
    /// Left multiplication by the given f2 letter code; depth grows by one.
    F2Mult(u8),
    /// A permutation of the points of a finite model.
    Permutation(Vec<u32>),
}

impl GenAction {
    pub fn depth_shift(&self) -> u32 {
        match self {
            GenAction::OdometerAdd | GenAction::Permutation(_) => 0,
            GenAction::ShiftLeft | GenAction::F2Mult(_) => 1,
        }
    }
}

/// A space model together with generator actions. Immutable after load; all
/// operations are pure, so values can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalSystem {
    space: SpaceModel,
    gens: Vec<GenAction>,
    /// Inverse permutations, precomputed for finite systems.
    inv_perms: Vec<Option<Vec<u32>>>,
    /// Order of the single generator when the group is cyclic; drives the
    /// mod-N word normalization.
    single_gen_order: Option<u32>,
}

impl DynamicalSystem {
    pub fn new(space: SpaceModel, gens: Vec<GenAction>) -> Result<Self> {
        space.validate()?;
        if gens.len() > MAX_GENERATORS {
            return Err(Error::schema(format!(
                "at most {MAX_GENERATORS} generators are supported"
            )));
        }
        let mut inv_perms = Vec::with_capacity(gens.len());
        for g in &gens {
            match g {
                GenAction::Permutation(p) => {
                    let n = match &space {
                        SpaceModel::Finite { points } => *points as usize,
                        _ => {
                            return Err(Error::schema(
                                "permutation generators require a finite model",
                            ))
                        }
                    };
                    if p.len() != n {
                        return Err(Error::new(
                            ErrorCode::NotHomeomorphism,
                            "permutation length does not match the point count",
                        ));
                    }
                    let mut inv = vec![u32::MAX; n];
                    for (i, &pi) in p.iter().enumerate() {
                        if pi as usize >= n || inv[pi as usize] != u32::MAX {
                            return Err(Error::new(
                                ErrorCode::NotHomeomorphism,
                                "generator is not a bijection on the points",
                            ));
                        }
                        inv[pi as usize] = i as u32;
                    }
                    inv_perms.push(Some(inv));
                }
                _ => inv_perms.push(None),
            }
        }
        let mut sys = DynamicalSystem {
            space,
            gens,
            inv_perms,
            single_gen_order: None,
        };
        sys.single_gen_order = sys.detect_single_gen_order();
        sys.check_homeomorphisms()?;
        Ok(sys)
    }

    fn detect_single_gen_order(&self) -> Option<u32> {
        if self.gens.len() != 1 {
            return None;
        }
        if let GenAction::Permutation(p) = &self.gens[0] {
            let n = p.len();
            let mut cur: Vec<u32> = (0..n as u32).collect();
            for order in 1..=n as u32 * 8 {
                cur = cur.iter().map(|&i| p[i as usize]).collect();
                if cur.iter().enumerate().all(|(i, &x)| x == i as u32) {
                    return Some(order);
                }
            }
            None
        } else {
            None
        }
    }

    /// Images of distinct depth-d atoms must be pairwise disjoint and cover X.
    fn check_homeomorphisms(&self) -> Result<()> {
        for depth in 0..=3u32 {
            let n = match self.space.atom_count(depth) {
                Ok(n) if n <= 1 << 12 => n,
                _ => break,
            };
            match self.space.atom_count(depth + 1) {
                Ok(m) if m <= 1 << 16 => {}
                _ => break,
            }
            for (g, _) in self.gens.iter().enumerate() {
                for inv in [false, true] {
                    let image_depth = depth + self.gens[g].depth_shift();
                    let total = self.space.atom_count(image_depth)?;
                    let mut seen = AtomSet::empty(total);
                    for idx in 0..n {
                        let img = self.act_atom(g as u8, inv, depth, idx)?;
                        let img = img.refine(image_depth)?;
                        if !seen.is_disjoint(img.atoms()) {
                            return Err(Error::new(
                                ErrorCode::NotHomeomorphism,
                                format!("generator {g} maps distinct atoms to overlapping sets"),
                            ));
                        }
                        seen.union_in_place(img.atoms());
                    }
                    if !seen.is_full_set() {
                        return Err(Error::new(
                            ErrorCode::NotHomeomorphism,
                            format!("generator {g} images do not cover the space"),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &SpaceModel {
        &self.space
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn is_finite_group(&self) -> bool {
        self.gens
            .iter()
            .all(|g| matches!(g, GenAction::Permutation(_)))
    }

    pub fn is_finite_system(&self) -> bool {
        matches!(self.space, SpaceModel::Finite { .. }) && self.is_finite_group()
    }

    pub fn is_standard_odometer(&self) -> bool {
        matches!(self.space, SpaceModel::Odometer { .. })
            && self.gens.len() == 1
            && self.gens[0] == GenAction::OdometerAdd
    }

    /// Largest depth increase a single letter can cause.
    pub fn max_depth_shift(&self) -> u32 {
        self.gens.iter().map(|g| g.depth_shift()).max().unwrap_or(0)
    }

    /// Exact image of one depth-d atom under one generator letter.
    pub fn act_atom(&self, gen: u8, inv: bool, depth: u32, idx: u64) -> Result<ClopenSet> {
        let action = self
            .gens
            .get(gen as usize)
            .ok_or_else(|| Error::new(ErrorCode::BadWord, "word over wrong generator set"))?;
        match action {
            GenAction::OdometerAdd => {
                let n = self.space.atom_count(depth)?;
                let target = if inv { (idx + n - 1) % n } else { (idx + 1) % n };
                ClopenSet::from_atom_indices(self.space.clone(), depth, [target])
            }
            GenAction::ShiftLeft => {
                let q = match self.space {
                    SpaceModel::FullShift { alphabet } => alphabet as u64,
                    _ => unreachable!("shift generator on non-shift model"),
                };
                let n = self.space.atom_count(depth)?; // q^{2d}
                self.space.atom_count(depth + 1)?;
                let block = q * q;
                let indices: Vec<u64> = if !inv {
                    (0..block).map(|t| idx * block + t).collect()
                } else {
                    (0..block).map(|u| u * n + idx).collect()
                };
                ClopenSet::from_atom_indices(self.space.clone(), depth + 1, indices)
            }
            GenAction::F2Mult(letter) => {
                let g = if inv { f2::inverse(*letter) } else { *letter };
                if depth == 0 {
                    return ClopenSet::full(self.space.clone(), 0);
                }
                let word = f2::index_to_word(depth, idx);
                if word[0] == f2::inverse(g) {
                    if depth == 1 {
                        // g · C_{g⁻¹} = X ∖ C_g
                        let cyl =
                            ClopenSet::from_atom_indices(self.space.clone(), 1, [g as u64])?;
                        Ok(cyl.complement())
                    } else {
                        let tail = &word[1..];
                        let t_idx = f2::word_to_index(tail)
                            .expect("tail of a reduced word is reduced");
                        ClopenSet::from_atom_indices(self.space.clone(), depth - 1, [t_idx])
                    }
                } else {
                    let mut new_word = Vec::with_capacity(word.len() + 1);
                    new_word.push(g);
                    new_word.extend_from_slice(&word);
                    let n_idx =
                        f2::word_to_index(&new_word).expect("g·w reduced when w₁ ≠ g⁻¹");
                    ClopenSet::from_atom_indices(self.space.clone(), depth + 1, [n_idx])
                }
            }
            GenAction::Permutation(p) => {
                let target = if inv {
                    self.inv_perms[gen as usize].as_ref().unwrap()[idx as usize]
                } else {
                    p[idx as usize]
                };
                ClopenSet::from_atom_indices(self.space.clone(), 0, [target as u64])
            }
        }
    }

    fn act_letter(&self, l: Letter, c: &ClopenSet) -> Result<ClopenSet> {
        let action = self
            .gens
            .get(l.gen as usize)
            .ok_or_else(|| Error::new(ErrorCode::BadWord, "word over wrong generator set"))?;
        // whole-set fast path for depth-preserving rotations
        if let GenAction::OdometerAdd = action {
            let n = c.atoms().len();
            let mut out = AtomSet::empty(n);
            for idx in c.atom_indices() {
                let t = if l.inv { (idx + n - 1) % n } else { (idx + 1) % n };
                out.insert(t);
            }
            return Ok(ClopenSet::from_atoms(self.space.clone(), c.depth(), out));
        }
        let mut acc = ClopenSet::empty(
            self.space.clone(),
            c.depth() + action.depth_shift(),
        )?;
        for idx in c.atom_indices() {
            let img = self.act_atom(l.gen, l.inv, c.depth(), idx)?;
            acc = acc.union(&img)?;
        }
        Ok(acc)
    }

    /// Exact image `w · c`. Letters act right to left, so
    /// `act(w1·w2, c) = act(w1, act(w2, c))`.
    pub fn act(&self, w: &GroupWord, c: &ClopenSet) -> Result<ClopenSet> {
        if let Some(g) = w.max_generator() {
            if g as usize >= self.gens.len() {
                return Err(Error::new(ErrorCode::BadWord, "word over wrong generator set"));
            }
        }
        let mut cur = c.canonical();
        for &l in w.letters().iter().rev() {
            cur = self.act_letter(l, &cur)?.canonical();
        }
        Ok(cur)
    }

    /// Element key for deduplication: the point permutation for finite
    /// systems, the word itself otherwise (free reduction is already normal).
    fn eval_perm(&self, w: &GroupWord) -> Option<Vec<u32>> {
        if !self.is_finite_system() {
            return None;
        }
        let n = match self.space {
            SpaceModel::Finite { points } => points as usize,
            _ => unreachable!(),
        };
        let mut cur: Vec<u32> = (0..n as u32).collect();
        for &l in w.letters().iter().rev() {
            let map = if l.inv {
                self.inv_perms[l.gen as usize].as_ref().unwrap()
            } else {
                match &self.gens[l.gen as usize] {
                    GenAction::Permutation(p) => p,
                    _ => unreachable!(),
                }
            };
            cur = cur.iter().map(|&i| map[i as usize]).collect();
        }
        Some(cur)
    }

    /// Group normalization of a word: mod-N exponent reduction for a single
    /// generator of finite order N (representative in (-N/2, N/2]), free
    /// reduction otherwise.
    pub fn normalize(&self, w: &GroupWord) -> GroupWord {
        if let Some(order) = self.single_gen_order {
            let n = order as i64;
            let mut k = w.exponent_sum(0).rem_euclid(n);
            if k > n / 2 {
                k -= n;
            }
            let letter = Letter {
                gen: 0,
                inv: k < 0,
            };
            GroupWord::from_letters(std::iter::repeat(letter).take(k.unsigned_abs() as usize))
        } else {
            w.clone()
        }
    }

    /// All reduced words of length <= radius in shortlex order, deduplicated
    /// by the group element they evaluate to.
    pub fn word_ball(&self, radius: u32) -> Vec<GroupWord> {
        self.word_ball_with_saturation(radius).0
    }

    /// As `word_ball`, also reporting the radius at which the ball stopped
    /// growing (finite groups only).
    pub fn word_ball_with_saturation(&self, radius: u32) -> (Vec<GroupWord>, Option<u32>) {
        let mut ball = vec![GroupWord::identity()];
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        let finite = self.is_finite_group();
        if finite {
            seen.insert(self.eval_perm(&GroupWord::identity()).unwrap(), ());
        }
        let mut frontier = vec![GroupWord::identity()];
        let mut saturated = None;
        for r in 1..=radius {
            let mut next = Vec::new();
            for w in &frontier {
                for gen in 0..self.gens.len() as u8 {
                    for inv in [false, true] {
                        if let Some(ext) = w.extend(Letter { gen, inv }) {
                            if finite {
                                let key = self.eval_perm(&ext).unwrap();
                                if seen.contains_key(&key) {
                                    continue;
                                }
                                seen.insert(key, ());
                            }
                            next.push(ext);
                        }
                    }
                }
            }
            next.sort_by(shortlex_cmp);
            if next.is_empty() {
                saturated = Some(r - 1);
                break;
            }
            ball.extend(next.iter().cloned());
            frontier = next;
        }
        if self.gens.is_empty() {
            saturated = Some(0);
        }
        (ball, saturated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odometer2() -> DynamicalSystem {
        DynamicalSystem::new(
            SpaceModel::Odometer { base: vec![2] },
            vec![GenAction::OdometerAdd],
        )
        .unwrap()
    }

    fn f2() -> DynamicalSystem {
        DynamicalSystem::new(
            SpaceModel::F2Boundary,
            vec![GenAction::F2Mult(0), GenAction::F2Mult(2)],
        )
        .unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let sys = odometer2();
        let c = ClopenSet::from_atom_indices(sys.space().clone(), 2, [0, 3]).unwrap();
        assert_eq!(sys.act(&GroupWord::identity(), &c).unwrap(), c);
    }

    #[test]
    fn odometer_shifts_residues() {
        let sys = odometer2();
        let c = ClopenSet::from_atom_indices(sys.space().clone(), 2, [0]).unwrap();
        let plus_one = GroupWord::parse("a", 1).unwrap();
        let img = sys.act(&plus_one, &c).unwrap();
        assert_eq!(img.refine(2).unwrap().atom_indices().collect::<Vec<_>>(), vec![1]);
        // inverse undoes
        let back = sys.act(&plus_one.inverse(), &img).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn f2_pingpong_identity() {
        // a · (X ∖ C_{a⁻¹}) = C_a
        let sys = f2();
        let model = sys.space().clone();
        let c_ainv = ClopenSet::from_atom_indices(model.clone(), 1, [1]).unwrap();
        let src = c_ainv.complement();
        let a = GroupWord::parse("a", 2).unwrap();
        let img = sys.act(&a, &src).unwrap();
        let c_a = ClopenSet::from_atom_indices(model, 1, [0]).unwrap();
        assert_eq!(img, c_a);
    }

    #[test]
    fn word_ball_growth() {
        // ℤ: 2R+1 elements
        let sys = odometer2();
        for r in 0..4u32 {
            assert_eq!(sys.word_ball(r).len(), (2 * r + 1) as usize);
        }
        let (ball, sat) = sys.word_ball_with_saturation(3);
        assert_eq!(sat, None);
        let names: Vec<String> = ball.iter().take(5).map(|w| w.to_string()).collect();
        assert_eq!(names, vec!["e", "a", "a⁻¹", "aa", "a⁻¹a⁻¹"]);

        // free rank 2: 1 + 2·(3^R − 1)
        let sys = f2();
        for r in 0..4u32 {
            let expect = 1 + 2 * (3u32.pow(r) - 1) as usize;
            assert_eq!(sys.word_ball(r).len(), expect);
        }
    }

    #[test]
    fn cyclic4_ball_deduplicates() {
        let sys = DynamicalSystem::new(
            SpaceModel::Finite { points: 4 },
            vec![GenAction::Permutation(vec![1, 2, 3, 0])],
        )
        .unwrap();
        let (ball, sat) = sys.word_ball_with_saturation(3);
        let names: Vec<String> = ball.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, vec!["e", "a", "a⁻¹", "aa"]);
        // no new elements appear past radius 2
        assert_eq!(sat, Some(2));
        // normalization: g³ ≡ g⁻¹
        let g3 = GroupWord::parse("aaa", 1).unwrap();
        assert_eq!(sys.normalize(&g3).to_string(), "a⁻¹");
        assert_eq!(sys.normalize(&GroupWord::parse("aa", 1).unwrap()).to_string(), "aa");
    }

    #[test]
    fn non_bijective_generator_rejected() {
        let err = DynamicalSystem::new(
            SpaceModel::Finite { points: 3 },
            vec![GenAction::Permutation(vec![0, 0, 2])],
        )
        .unwrap_err();
        assert_eq!(err.code, ErrorCode::NotHomeomorphism);
    }

    #[test]
    fn act_preserves_boolean_structure() {
        let sys = f2();
        let model = sys.space().clone();
        let c1 = ClopenSet::from_atom_indices(model.clone(), 2, [0, 5, 7]).unwrap();
        let c2 = ClopenSet::from_atom_indices(model, 2, [2, 5, 9]).unwrap();
        let w = GroupWord::parse("ab⁻¹", 2).unwrap();
        let lhs = sys.act(&w, &c1.union(&c2).unwrap()).unwrap();
        let rhs = sys.act(&w, &c1).unwrap().union(&sys.act(&w, &c2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let lhs = sys.act(&w, &c1.intersect(&c2).unwrap()).unwrap();
        let rhs = sys
            .act(&w, &c1)
            .unwrap()
            .intersect(&sys.act(&w, &c2).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn act_composes() {
        let sys = f2();
        let model = sys.space().clone();
        let c = ClopenSet::from_atom_indices(model, 1, [2]).unwrap();
        let w1 = GroupWord::parse("ab", 2).unwrap();
        let w2 = GroupWord::parse("b⁻¹a", 2).unwrap();
        let composed = sys.act(&w1.concat(&w2), &c).unwrap();
        let stepwise = sys.act(&w1, &sys.act(&w2, &c).unwrap()).unwrap();
        assert_eq!(composed, stepwise);
    }
}
