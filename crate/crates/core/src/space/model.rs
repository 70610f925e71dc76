//! The four compact zero-dimensional space models and their atom indexing.
//!
//! Every model presents X as an inverse limit of finite partitions: the
//! depth-d atoms partition X and each refines into the depth-(d+1) atoms of
//! its children. All set computations reduce to index arithmetic on atoms.

use crate::error::{Error, ErrorCode, Result};
use serde::{Deserialize, Serialize};

/// Hard cap on atoms per depth so refinement never allocates unboundedly.
pub const MAX_ATOMS: u64 = 1 << 24;

/// Letters of the rank-2 free group in enumeration order: a, a⁻¹, b, b⁻¹.
pub const F2_LETTERS: [&str; 4] = ["a", "a⁻¹", "b", "b⁻¹"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpaceModel {
    /// Discrete space on `points` points; atoms are the points at every depth.
    Finite { points: u32 },
    /// Profinite ∏ ℤ/base[j]; a finite base list extends periodically, so
    /// `base: [2]` and `base: [2,2,2]` both denote the 2-adic model.
    /// Depth-d atoms are residues mod N_d = base[0]·…·base[d-1].
    Odometer { base: Vec<u32> },
    /// Two-sided full shift on `alphabet` symbols. Depth-d atoms are words
    /// over the centered window [-d, d), indexed as base-q numerals with the
    /// leftmost coordinate most significant.
    FullShift { alphabet: u32 },
    /// Boundary of the rank-2 free group: infinite reduced words over
    /// a, a⁻¹, b, b⁻¹. Depth-d atoms are cylinders over reduced words of
    /// length d, in shortlex order.
    F2Boundary,
}

impl SpaceModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceModel::Finite { points } => {
                if *points == 0 {
                    return Err(Error::schema("finite model needs at least one point"));
                }
            }
            SpaceModel::Odometer { base } => {
                if base.is_empty() {
                    return Err(Error::schema("odometer base must be nonempty"));
                }
                if base.iter().any(|&b| b < 2) {
                    return Err(Error::schema("odometer base entries must be >= 2"));
                }
            }
            SpaceModel::FullShift { alphabet } => {
                if *alphabet < 2 {
                    return Err(Error::schema("shift alphabet must be >= 2"));
                }
                if *alphabet > 10 {
                    return Err(Error::schema(
                        "shift alphabet above 10 not supported by the digit literal syntax",
                    ));
                }
            }
            SpaceModel::F2Boundary => {}
        }
        Ok(())
    }

    /// Number of children each depth-d atom splits into at depth d+1.
    pub fn branching(&self, depth: u32) -> u32 {
        match self {
            SpaceModel::Finite { .. } => 1,
            SpaceModel::Odometer { base } => base[(depth as usize) % base.len()],
            SpaceModel::FullShift { alphabet } => alphabet * alphabet,
            SpaceModel::F2Boundary => {
                if depth == 0 {
                    4
                } else {
                    3
                }
            }
        }
    }

    pub fn atom_count(&self, depth: u32) -> Result<u64> {
        let mut n: u64 = match self {
            SpaceModel::Finite { points } => *points as u64,
            _ => 1,
        };
        if let SpaceModel::Finite { .. } = self {
            return Ok(n);
        }
        for d in 0..depth {
            n = n
                .checked_mul(self.branching(d) as u64)
                .filter(|&m| m <= MAX_ATOMS)
                .ok_or_else(|| {
                    Error::new(
                        ErrorCode::DepthTooLarge,
                        format!("atom count at depth {depth} exceeds the working cap"),
                    )
                })?;
        }
        Ok(n)
    }

    /// Largest depth whose atom count stays under the working cap.
    pub fn max_depth(&self) -> u32 {
        let mut d = 0;
        while d < 64 && self.atom_count(d + 1).is_ok() {
            d += 1;
        }
        d
    }

    /// Children at depth `depth + 1` of atom `idx` at depth `depth`.
    pub fn children(&self, depth: u32, idx: u64) -> Result<Vec<u64>> {
        let b = self.branching(depth) as u64;
        match self {
            SpaceModel::Finite { .. } => Ok(vec![idx]),
            SpaceModel::Odometer { .. } => {
                let n_d = self.atom_count(depth)?;
                self.atom_count(depth + 1)?;
                Ok((0..b).map(|k| idx + k * n_d).collect())
            }
            SpaceModel::FullShift { alphabet } => {
                let q = *alphabet as u64;
                self.atom_count(depth + 1)?;
                // new most-significant digit u, new least-significant digit v
                let shifted = self.atom_count(depth)?; // q^{2d}
                let mut out = Vec::with_capacity((q * q) as usize);
                for u in 0..q {
                    for v in 0..q {
                        out.push(u * shifted * q + idx * q + v);
                    }
                }
                Ok(out)
            }
            SpaceModel::F2Boundary => {
                self.atom_count(depth + 1)?;
                if depth == 0 {
                    Ok(vec![0, 1, 2, 3])
                } else {
                    Ok(vec![3 * idx, 3 * idx + 1, 3 * idx + 2])
                }
            }
        }
    }

    /// Parent at depth `child_depth - 1` of atom `idx` at depth `child_depth`.
    pub fn parent(&self, child_depth: u32, idx: u64) -> Result<u64> {
        if child_depth == 0 {
            return Err(Error::internal("depth-0 atoms have no parent"));
        }
        match self {
            SpaceModel::Finite { .. } => Ok(idx),
            SpaceModel::Odometer { .. } => Ok(idx % self.atom_count(child_depth - 1)?),
            SpaceModel::FullShift { alphabet } => {
                let q = *alphabet as u64;
                let inner = self.atom_count(child_depth - 1)? * q; // q^{2d-1}
                Ok((idx % inner) / q)
            }
            SpaceModel::F2Boundary => {
                if child_depth == 1 {
                    Ok(0)
                } else {
                    Ok(idx / 3)
                }
            }
        }
    }

    /// Proper subsets of the f2 boundary need depth >= 1; every other model
    /// works from depth 0.
    pub fn min_proper_depth(&self) -> u32 {
        match self {
            SpaceModel::F2Boundary => 1,
            _ => 0,
        }
    }
}

/// Reduced-word index arithmetic for the f2 boundary.
pub mod f2 {
    /// Inverse of letter code: a↔a⁻¹, b↔b⁻¹.
    pub fn inverse(letter: u8) -> u8 {
        letter ^ 1
    }

    /// Letters allowed after `prev`, in enumeration order.
    pub fn successors(prev: u8) -> [u8; 3] {
        let forbidden = inverse(prev);
        let mut out = [0u8; 3];
        let mut n = 0;
        for l in 0u8..4 {
            if l != forbidden {
                out[n] = l;
                n += 1;
            }
        }
        out
    }

    /// Rank of `next` among the letters allowed after `prev` (0..3).
    pub fn successor_rank(prev: u8, next: u8) -> Option<u64> {
        successors(prev)
            .iter()
            .position(|&l| l == next)
            .map(|p| p as u64)
    }

    /// Shortlex index of a reduced word among depth-|w| atoms.
    pub fn word_to_index(word: &[u8]) -> Option<u64> {
        if word.is_empty() {
            return Some(0);
        }
        let mut idx = word[0] as u64;
        for w in word.windows(2) {
            idx = idx * 3 + successor_rank(w[0], w[1])?;
        }
        Some(idx)
    }

    /// Reduced word of length `depth` for atom `idx`.
    pub fn index_to_word(depth: u32, mut idx: u64) -> Vec<u8> {
        if depth == 0 {
            return Vec::new();
        }
        let mut ranks = Vec::with_capacity(depth as usize);
        for _ in 1..depth {
            ranks.push(idx % 3);
            idx /= 3;
        }
        let mut word = vec![idx as u8];
        for r in ranks.into_iter().rev() {
            let prev = *word.last().unwrap();
            word.push(successors(prev)[r as usize]);
        }
        word
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atom_counts_match_growth() {
        let odo = SpaceModel::Odometer { base: vec![2, 3] };
        assert_eq!(odo.atom_count(0).unwrap(), 1);
        assert_eq!(odo.atom_count(1).unwrap(), 2);
        assert_eq!(odo.atom_count(2).unwrap(), 6);
        assert_eq!(odo.atom_count(3).unwrap(), 12); // base cycles 2,3,2

        let shift = SpaceModel::FullShift { alphabet: 2 };
        assert_eq!(shift.atom_count(2).unwrap(), 16);

        let f2 = SpaceModel::F2Boundary;
        assert_eq!(f2.atom_count(0).unwrap(), 1);
        assert_eq!(f2.atom_count(1).unwrap(), 4);
        assert_eq!(f2.atom_count(2).unwrap(), 12);
        assert_eq!(f2.atom_count(3).unwrap(), 36);
    }

    #[test]
    fn children_partition_next_depth() {
        for model in [
            SpaceModel::Finite { points: 4 },
            SpaceModel::Odometer { base: vec![2, 3] },
            SpaceModel::FullShift { alphabet: 2 },
            SpaceModel::F2Boundary,
        ] {
            for depth in 0..3u32 {
                let n = model.atom_count(depth).unwrap();
                let n_next = model.atom_count(depth + 1).unwrap();
                let mut seen = vec![false; n_next as usize];
                for idx in 0..n {
                    for c in model.children(depth, idx).unwrap() {
                        assert!(!seen[c as usize], "duplicate child in {model:?}");
                        seen[c as usize] = true;
                        assert_eq!(model.parent(depth + 1, c).unwrap(), idx);
                    }
                }
                assert!(seen.iter().all(|&s| s), "missing child in {model:?}");
            }
        }
    }

    #[test]
    fn f2_word_index_round_trip() {
        for depth in 0..4u32 {
            let n = SpaceModel::F2Boundary.atom_count(depth).unwrap();
            for idx in 0..n {
                let w = f2::index_to_word(depth, idx);
                assert_eq!(w.len() as u32, depth);
                // reduced: no adjacent inverse pairs
                assert!(w.windows(2).all(|p| p[1] != f2::inverse(p[0])));
                assert_eq!(f2::word_to_index(&w), Some(idx));
            }
        }
    }
}
