//! Reduced words in the free group on `y1, ..., yn`.
//!
//! Letters are signed generator indices: `+i` is `y_i`, `-i` its inverse.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::MobiusIsometry;

/// A freely reduced word together with the rank of its free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<i32>,
    rank: u32,
}

fn check_letter(l: i32, rank: u32) -> Result<()> {
    if l == 0 || l.unsigned_abs() > rank {
        return Err(Error::IndexOutOfRange { index: l, rank });
    }
    Ok(())
}

/// Free reduction of a raw letter sequence.
pub fn reduce(raw: &[i32], rank: u32) -> Result<Word> {
    let mut out: Vec<i32> = Vec::with_capacity(raw.len());
    for &l in raw {
        check_letter(l, rank)?;
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Ok(Word { letters: out, rank })
}

impl Word {
    pub fn identity(rank: u32) -> Word {
        Word {
            letters: Vec::new(),
            rank,
        }
    }

    pub fn generator(letter: i32, rank: u32) -> Result<Word> {
        check_letter(letter, rank)?;
        Ok(Word {
            letters: vec![letter],
            rank,
        })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Word length `L(w)`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
            rank: self.rank,
        }
    }

    fn same_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        Ok(())
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Result<Word> {
        self.same_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Word) -> Word {
        let mut k = 0;
        let (a, b) = (&self.letters, &other.letters);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == -b[k] {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Word {
            letters,
            rank: self.rank,
        }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Result<Word> {
        self.same_rank(g)?;
        Ok(g.mul_unchecked(self).mul_unchecked(&g.inverse()))
    }

    pub fn pow(&self, k: i32) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        acc
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.letters.len() == 1 || f != -l,
            _ => true,
        }
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while l.len() >= 2 * k + 2 && l[k] == -l[l.len() - 1 - k] {
            k += 1;
        }
        let core = Word {
            letters: l[k..l.len() - k].to_vec(),
            rank: self.rank,
        };
        let conjugator = Word {
            letters: l[..k].to_vec(),
            rank: self.rank,
        };
        (core, conjugator)
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let n = letters.len();
            letters.rotate_left(k % n);
        }
        Word {
            letters,
            rank: self.rank,
        }
    }

    /// Shortest `r` with `self = r^m` (for cyclically reduced words, where
    /// this is the generator of the centralizer).
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.letters.len();
        for d in 1..=n {
            if n % d == 0 && (d..n).all(|i| self.letters[i] == self.letters[i - d]) {
                let root = Word {
                    letters: self.letters[..d].to_vec(),
                    rank: self.rank,
                };
                return (root, n / d);
            }
        }
        (self.clone(), 1)
    }

    /// Whether `other` is a cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() || self.rank != other.rank {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|k| self.rotate(k) == *other)
    }
}

/// Conjugacy in a free group: cyclic cores are rotations of each other.
pub fn are_conjugate(u: &Word, v: &Word) -> bool {
    u.rank == v.rank && u.cyclic_reduce().0.is_rotation_of(&v.cyclic_reduce().0)
}

/// Evaluates a word as the product of generator isometries in word order.
pub fn evaluate(w: &Word, gens: &[MobiusIsometry]) -> Result<MobiusIsometry> {
    if gens.len() != w.rank as usize {
        return Err(Error::RankMismatch {
            expected: w.rank,
            got: gens.len() as u32,
        });
    }
    let inverses: Vec<MobiusIsometry> = gens.iter().map(MobiusIsometry::inverse).collect();
    let mut acc = MobiusIsometry::IDENTITY;
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        let g = if l > 0 { &gens[i] } else { &inverses[i] };
        acc = acc.compose(g);
    }
    Ok(acc)
}

fn letter_key(l: i32) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

/// Shortlex order with `y1 < Y1 < y2 < Y2 < ...`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| {
                self.letters
                    .iter()
                    .map(|&l| letter_key(l))
                    .cmp(other.letters.iter().map(|&l| letter_key(l)))
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every reduced word of length at most `radius`, in shortlex order.
pub fn ball(rank: u32, radius: usize) -> Vec<Word> {
    let alphabet: Vec<i32> = (1..=rank as i32).flat_map(|i| [i, -i]).collect();
    let mut out = vec![Word::identity(rank)];
    let mut frontier = vec![Word::identity(rank)];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &alphabet {
                if w.letters.last() == Some(&-l) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                next.push(Word { letters, rank });
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Nonempty cyclically reduced words of length at most `max_len`.
pub fn cyclically_reduced_words(rank: u32, max_len: usize) -> Vec<Word> {
    ball(rank, max_len)
        .into_iter()
        .filter(|w| !w.is_empty() && w.is_cyclically_reduced())
        .collect()
}

/// One representative per conjugacy class of `{w, w⁻¹}` among nonempty
/// words of length at most `max_len`: the shortlex-least cyclic rotation of
/// the core or its inverse.
pub fn class_representatives(rank: u32, max_len: usize) -> Vec<Word> {
    let mut reps: Vec<Word> = cyclically_reduced_words(rank, max_len)
        .iter()
        .map(canonical_class_rep)
        .collect();
    reps.sort();
    reps.dedup();
    reps
}

pub fn canonical_class_rep(w: &Word) -> Word {
    let core = w.cyclic_reduce().0;
    let inv = core.inverse();
    (0..core.len().max(1))
        .flat_map(|k| [core.rotate(k), inv.rotate(k)])
        .min()
        .expect("at least one rotation")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            let c = if l > 0 { 'y' } else { 'Y' };
            write!(f, "{c}{}", l.unsigned_abs())?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses `y1 y2 Y1` (capital letter = inverse). `1` or an empty string is
/// the identity. The result is freely reduced.
pub fn parse(text: &str, rank: u32) -> Result<Word> {
    let mut raw = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (sign, digits) = if let Some(d) = tok.strip_prefix('y') {
            (1, d)
        } else if let Some(d) = tok.strip_prefix('Y') {
            (-1, d)
        } else {
            return Err(Error::WordSyntax(format!("unexpected token {tok:?}")));
        };
        let index = i32::from_str(digits)
            .ok()
            .filter(|i| *i > 0)
            .ok_or_else(|| Error::WordSyntax(format!("bad generator index in {tok:?}")))?;
        raw.push(sign * index);
    }
    reduce(&raw, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        reduce(letters, 2).unwrap()
    }

    #[test]
    fn cancellation() {
        assert_eq!(w(&[1, -1, 2]).letters(), &[2]);
        assert!(w(&[]).is_empty());
        assert_eq!(w(&[1, 2, -2, -1]).len(), 0);
        assert_eq!(w(&[1, 2]).len(), 2);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(reduce(&[3], 2), Err(Error::IndexOutOfRange { index: 3, rank: 2 }));
        assert_eq!(reduce(&[0], 2), Err(Error::IndexOutOfRange { index: 0, rank: 2 }));
        assert!(parse("y3", 2).is_err());
        assert!(parse("x1", 2).is_err());
        assert!(parse("y0", 2).is_err());
    }

    #[test]
    fn parse_and_display() {
        let u = parse("y1 y2 Y1", 2).unwrap();
        assert_eq!(u.letters(), &[1, 2, -1]);
        assert_eq!(u.to_string(), "y1 y2 Y1");
        assert_eq!(parse("y1 Y1", 2).unwrap().to_string(), "1");
        assert_eq!(parse("  ", 2).unwrap(), Word::identity(2));
    }

    #[test]
    fn one_step_peel() {
        let (core, c) = w(&[1, 2, -1]).cyclic_reduce();
        assert_eq!(core.letters(), &[2]);
        assert_eq!(c.letters(), &[1]);
        let cr = w(&[1, 2, 2]);
        assert_eq!(cr.cyclic_reduce(), (cr.clone(), Word::identity(2)));
    }

    #[test]
    fn conjugacy_examples() {
        assert!(are_conjugate(&w(&[1, 2]), &w(&[2, 1])));
        assert!(!are_conjugate(&w(&[1, 2]), &w(&[1, -2])));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(w(&[1, 2, 1, 2]).primitive_root(), (w(&[1, 2]), 2));
        assert_eq!(w(&[1, 1, 2]).primitive_root(), (w(&[1, 1, 2]), 1));
    }

    #[test]
    fn ball_sizes() {
        // 1 + 2n * sum (2n-1)^k
        assert_eq!(ball(2, 3).len(), 1 + 4 + 12 + 36);
        assert_eq!(ball(1, 4).len(), 9);
        let b = ball(2, 2);
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(b, sorted);
    }

    #[test]
    fn class_reps_rank_two() {
        // classes of {w, w^-1} with |core| <= 2 in F2: a, b, aa, ab, aB, bb
        assert_eq!(class_representatives(2, 2).len(), 6);
    }
}
