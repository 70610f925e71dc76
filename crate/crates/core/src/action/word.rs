//! Freely reduced words over a system's generators.

use crate::error::{Error, ErrorCode, Result};
use serde::{Deserialize, Serialize};

/// One letter of a word: a generator index with an inversion flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// A group word in freely reduced form; the identity is the empty word.
/// Generators are named a, b, c, d in index order; inverses render as `a⁻¹`
/// and may be written in ASCII as the uppercase letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

pub const MAX_GENERATORS: usize = 4;
const GEN_NAMES: [char; MAX_GENERATORS] = ['a', 'b', 'c', 'd'];
const GEN_NAMES_UPPER: [char; MAX_GENERATORS] = ['A', 'B', 'C', 'D'];

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(gen: u8, inv: bool) -> Self {
        GroupWord {
            letters: vec![Letter { gen, inv }],
        }
    }

    /// Build from raw letters, cancelling adjacent inverse pairs.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation `self · other`, freely reduced at the seam. Acting with
    /// the result equals acting with `other` first, then `self`.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    /// Right-extension by one letter without full re-reduction; returns None
    /// when the letter would cancel (used by the ball enumerator).
    pub fn extend(&self, l: Letter) -> Option<GroupWord> {
        if self.letters.last() == Some(&l.inverse()) {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.push(l);
        Some(GroupWord { letters })
    }

    /// Signed exponent sum per generator; the normal form for ℤ words.
    pub fn exponent_sum(&self, gen: u8) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| if l.inv { -1i64 } else { 1 })
            .sum()
    }

    pub fn max_generator(&self) -> Option<u8> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn parse(s: &str, gen_count: usize) -> Result<GroupWord> {
        let bad = |m: String| Error::new(ErrorCode::BadWord, m);
        if s.is_empty() || s == "e" {
            return Ok(GroupWord::identity());
        }
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            let (gen, mut inv) = if let Some(g) = GEN_NAMES.iter().position(|&c| c == ch) {
                (g, false)
            } else if let Some(g) = GEN_NAMES_UPPER.iter().position(|&c| c == ch) {
                (g, true)
            } else {
                return Err(bad(format!("unexpected character {ch:?} in word {s:?}")));
            };
            if chars.peek() == Some(&'⁻') {
                chars.next();
                if chars.next() != Some('¹') {
                    return Err(bad(format!("expected ⁻¹ inverse marker in {s:?}")));
                }
                if inv {
                    return Err(bad(format!("double inverse marker in {s:?}")));
                }
                inv = true;
            }
            if gen >= gen_count {
                return Err(bad(format!(
                    "word {s:?} uses generator {ch:?} but the system has {gen_count}"
                )));
            }
            letters.push(Letter {
                gen: gen as u8,
                inv,
            });
        }
        Ok(GroupWord::from_letters(letters))
    }
}

impl std::fmt::Display for GroupWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for l in &self.letters {
            write!(f, "{}", GEN_NAMES[l.gen as usize])?;
            if l.inv {
                write!(f, "⁻¹")?;
            }
        }
        Ok(())
    }
}

/// Shortlex comparison: by length, then letter-wise with a < a⁻¹ < b < b⁻¹.
pub fn shortlex_cmp(a: &GroupWord, b: &GroupWord) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.letters().cmp(b.letters()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_cancels_pairs() {
        let w = GroupWord::from_letters([
            Letter { gen: 0, inv: false },
            Letter { gen: 0, inv: true },
            Letter { gen: 1, inv: false },
        ]);
        assert_eq!(w.to_string(), "b");
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["e", "a", "a⁻¹", "aab⁻¹", "ba"] {
            let w = GroupWord::parse(s, 2).unwrap();
            assert_eq!(w.to_string(), s);
        }
        // ASCII uppercase is accepted on input
        assert_eq!(GroupWord::parse("Ba", 2).unwrap().to_string(), "b⁻¹a");
        // parse reduces
        assert_eq!(GroupWord::parse("aA", 2).unwrap(), GroupWord::identity());
        assert!(GroupWord::parse("c", 2).is_err());
    }

    #[test]
    fn concat_acts_right_to_left() {
        let ab = GroupWord::parse("ab", 2).unwrap();
        let b_inv = GroupWord::parse("b⁻¹", 2).unwrap();
        assert_eq!(ab.concat(&b_inv).to_string(), "a");
        assert!(ab.concat(&ab.inverse()).is_identity());
    }
}
