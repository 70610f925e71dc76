//! Packed membership indicator over the depth-d atoms of a space model.

const WORD_BITS: u64 = 64;

/// Fixed-size bit set indexed by atom number. All binary operations require
/// both operands to have the same length; callers align depths first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AtomSet {
    len: u64,
    words: Vec<u64>,
}

impl AtomSet {
    pub fn empty(len: u64) -> Self {
        let n = ((len + WORD_BITS - 1) / WORD_BITS) as usize;
        AtomSet {
            len,
            words: vec![0; n],
        }
    }

    pub fn full(len: u64) -> Self {
        let mut s = AtomSet::empty(len);
        for w in &mut s.words {
            *w = !0;
        }
        s.clear_tail();
        s
    }

    // keep bits beyond `len` zero so word-wise comparisons stay exact
    fn clear_tail(&mut self) {
        let tail = (self.len % WORD_BITS) as u32;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty_set(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full_set(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn insert(&mut self, idx: u64) {
        debug_assert!(idx < self.len);
        self.words[(idx / WORD_BITS) as usize] |= 1u64 << (idx % WORD_BITS);
    }

    pub fn contains(&self, idx: u64) -> bool {
        debug_assert!(idx < self.len);
        self.words[(idx / WORD_BITS) as usize] & (1u64 << (idx % WORD_BITS)) != 0
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        debug_assert_eq!(self.len, other.len);
        AtomSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersect(&self, other: &AtomSet) -> AtomSet {
        debug_assert_eq!(self.len, other.len);
        AtomSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        debug_assert_eq!(self.len, other.len);
        AtomSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn complement(&self) -> AtomSet {
        let mut s = AtomSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    pub fn union_in_place(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// XOR, used to retract a previously OR-ed disjoint set during backtracking.
    pub fn xor_in_place(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = i as u64 * WORD_BITS;
            BitIter { word: w, base }
        })
    }
}

struct BitIter {
    word: u64,
    base: u64,
}

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

impl std::fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter_ones().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.len)
    }
}
