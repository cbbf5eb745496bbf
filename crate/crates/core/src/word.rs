//! Finite binary words and Parikh accounting.
//!
//! Words are bit-packed, 64 letters per block, least significant bit first.
//! Internally letters are 0-indexed; [`FiniteWord::letter`] offers the
//! 1-indexed view used by word graphs, where `g(i)` is the weight of the
//! length-`i` prefix.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const BLOCK: usize = 64;

/// A finite word over `{0, 1}`.
#[derive(Clone, Default)]
pub struct FiniteWord {
    blocks: Vec<u64>,
    len: usize,
}

/// Letter counts `(|u|_0, |u|_1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParikhVector {
    pub count0: u64,
    pub count1: u64,
}

impl ParikhVector {
    pub fn new(count0: u64, count1: u64) -> Self {
        ParikhVector { count0, count1 }
    }

    pub fn len(&self) -> u64 {
        self.count0 + self.count1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Add for ParikhVector {
    type Output = ParikhVector;

    fn add(self, rhs: ParikhVector) -> ParikhVector {
        ParikhVector::new(self.count0 + rhs.count0, self.count1 + rhs.count1)
    }
}

impl fmt::Display for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.count0, self.count1)
    }
}

impl FiniteWord {
    pub fn new() -> Self {
        FiniteWord::default()
    }

    pub fn with_capacity(letters: usize) -> Self {
        FiniteWord {
            blocks: Vec::with_capacity(letters.div_ceil(BLOCK)),
            len: 0,
        }
    }

    /// `letter^n`.
    pub fn power_of_letter(letter: u8, n: usize) -> Self {
        let mut w = FiniteWord::with_capacity(n);
        for _ in 0..n {
            w.push(letter);
        }
        w
    }

    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        let mut w = FiniteWord::new();
        for b in bits {
            w.push(b);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Letter at 0-based position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len, "index {i} out of bounds for length {}", self.len);
        ((self.blocks[i / BLOCK] >> (i % BLOCK)) & 1) as u8
    }

    /// Letter `a_i` in the 1-indexed convention, `1 <= i <= len`.
    pub fn letter(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len, "1-indexed letter {i} out of range");
        self.get(i - 1)
    }

    pub fn first(&self) -> Option<u8> {
        (self.len > 0).then(|| self.get(0))
    }

    pub fn last(&self) -> Option<u8> {
        (self.len > 0).then(|| self.get(self.len - 1))
    }

    #[inline]
    pub fn push(&mut self, letter: u8) {
        debug_assert!(letter <= 1);
        if self.len.is_multiple_of(BLOCK) {
            self.blocks.push(0);
        }
        if letter != 0 {
            let i = self.len;
            self.blocks[i / BLOCK] |= 1 << (i % BLOCK);
        }
        self.len += 1;
    }

    pub fn set(&mut self, i: usize, letter: u8) {
        assert!(i < self.len);
        let mask = 1u64 << (i % BLOCK);
        if letter != 0 {
            self.blocks[i / BLOCK] |= mask;
        } else {
            self.blocks[i / BLOCK] &= !mask;
        }
    }

    pub fn extend_from(&mut self, other: &FiniteWord) {
        self.extend_from_range(other, 0, other.len);
    }

    /// Append `other[start..start+n]`.
    pub fn extend_from_range(&mut self, other: &FiniteWord, start: usize, n: usize) {
        assert!(start + n <= other.len);
        if self.len.is_multiple_of(BLOCK) {
            let mut copied = 0;
            while copied < n {
                let take = (n - copied).min(BLOCK);
                let bits = other.bits_at(start + copied, take);
                self.blocks.push(bits);
                self.len += take;
                copied += take;
            }
        } else {
            for i in start..start + n {
                self.push(other.get(i));
            }
        }
    }

    pub fn truncate(&mut self, n: usize) {
        if n >= self.len {
            return;
        }
        self.len = n;
        self.blocks.truncate(n.div_ceil(BLOCK));
        if !n.is_multiple_of(BLOCK) {
            let last = self.blocks.len() - 1;
            self.blocks[last] &= (1u64 << (n % BLOCK)) - 1;
        }
    }

    /// Up to 64 letters starting at `start`, packed LSB-first.
    #[inline]
    pub fn bits_at(&self, start: usize, n: usize) -> u64 {
        debug_assert!(n <= BLOCK && start + n <= self.len);
        if n == 0 {
            return 0;
        }
        let b = start / BLOCK;
        let off = start % BLOCK;
        let mut v = self.blocks[b] >> off;
        if off != 0 && off + n > BLOCK {
            v |= self.blocks[b + 1] << (BLOCK - off);
        }
        if n < BLOCK {
            v &= (1u64 << n) - 1;
        }
        v
    }

    /// Copy of `self[start..start+n]`.
    pub fn slice(&self, start: usize, n: usize) -> FiniteWord {
        let mut w = FiniteWord::with_capacity(n);
        w.extend_from_range(self, start, n);
        w
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        self.slice(0, n.min(self.len))
    }

    pub fn suffix_from(&self, start: usize) -> FiniteWord {
        self.slice(start, self.len - start)
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut w = self.clone();
        w.extend_from(other);
        w
    }

    pub fn repeat(&self, times: usize) -> FiniteWord {
        let mut w = FiniteWord::with_capacity(self.len * times);
        for _ in 0..times {
            w.extend_from(self);
        }
        w
    }

    pub fn reversed(&self) -> FiniteWord {
        FiniteWord::from_bits((0..self.len).rev().map(|i| self.get(i)))
    }

    /// Exchange of letters, the morphism `0 -> 1, 1 -> 0`.
    pub fn complement(&self) -> FiniteWord {
        let mut w = self.clone();
        for b in &mut w.blocks {
            *b = !*b;
        }
        if !w.len.is_multiple_of(BLOCK) {
            let last = w.blocks.len() - 1;
            w.blocks[last] &= (1u64 << (w.len % BLOCK)) - 1;
        }
        w
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.len;
        (0..n / 2).all(|i| self.get(i) == self.get(n - 1 - i))
    }

    pub fn starts_with(&self, p: &FiniteWord) -> bool {
        self.occurs_at(p, 0)
    }

    pub fn ends_with(&self, s: &FiniteWord) -> bool {
        s.len <= self.len && self.occurs_at(s, self.len - s.len)
    }

    /// Whether `pattern` occurs at 0-based position `pos`.
    pub fn occurs_at(&self, pattern: &FiniteWord, pos: usize) -> bool {
        if pos + pattern.len > self.len {
            return false;
        }
        let mut i = 0;
        while i < pattern.len {
            let take = (pattern.len - i).min(BLOCK);
            if self.bits_at(pos + i, take) != pattern.bits_at(i, take) {
                return false;
            }
            i += take;
        }
        true
    }

    /// 0-based start positions of `pattern`.
    pub fn occurrences(&self, pattern: &FiniteWord) -> Vec<usize> {
        if pattern.len > self.len {
            return Vec::new();
        }
        (0..=self.len - pattern.len)
            .filter(|&p| self.occurs_at(pattern, p))
            .collect()
    }

    pub fn contains(&self, pattern: &FiniteWord) -> bool {
        if pattern.len > self.len {
            return false;
        }
        (0..=self.len - pattern.len).any(|p| self.occurs_at(pattern, p))
    }

    /// `|u|_1`.
    pub fn weight(&self) -> u64 {
        self.blocks.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Weight of `self[start..start+n]`.
    pub fn weight_range(&self, start: usize, n: usize) -> u64 {
        let mut total = 0u64;
        let mut i = 0;
        while i < n {
            let take = (n - i).min(BLOCK);
            total += self.bits_at(start + i, take).count_ones() as u64;
            i += take;
        }
        total
    }

    pub fn parikh(&self) -> ParikhVector {
        let w = self.weight();
        ParikhVector::new(self.len as u64 - w, w)
    }

    /// `g(0..=len)`: cumulative weights of prefixes.
    pub fn prefix_weights(&self) -> Vec<u32> {
        let mut g = Vec::with_capacity(self.len + 1);
        let mut acc = 0u32;
        g.push(0);
        for i in 0..self.len {
            acc += self.get(i) as u32;
            g.push(acc);
        }
        g
    }

    /// Distinct length-`n` factors, as a sorted set.
    ///
    /// Returns `None` when `n > len` (no factor of that length exists in the
    /// word); `n == 0` yields `{ε}`.
    pub fn factors(&self, n: usize) -> Option<BTreeSet<FiniteWord>> {
        if n > self.len {
            return None;
        }
        if n <= BLOCK {
            let keys = self.factor_keys(n);
            return Some(
                keys.into_iter()
                    .map(|k| FiniteWord::from_key(k, n))
                    .collect(),
            );
        }
        Some(
            (0..=self.len - n)
                .map(|p| self.slice(p, n))
                .collect::<HashSet<_>>()
                .into_iter()
                .collect(),
        )
    }

    /// Distinct length-`n` factors packed into `u64` keys (`n <= 64`).
    pub fn factor_keys(&self, n: usize) -> HashSet<u64> {
        assert!(n <= BLOCK);
        if n > self.len {
            return HashSet::new();
        }
        (0..=self.len - n).map(|p| self.bits_at(p, n)).collect()
    }

    /// Number of distinct length-`n` factors.
    pub fn factor_count(&self, n: usize) -> usize {
        if n > self.len {
            return 0;
        }
        if n <= BLOCK {
            self.factor_keys(n).len()
        } else {
            (0..=self.len - n)
                .map(|p| self.slice(p, n))
                .collect::<HashSet<_>>()
                .len()
        }
    }

    pub fn from_key(key: u64, n: usize) -> FiniteWord {
        FiniteWord::from_bits((0..n).map(|i| ((key >> i) & 1) as u8))
    }
}

/// `Ψ(u)`.
pub fn parikh(u: &FiniteWord) -> ParikhVector {
    u.parikh()
}

/// `u ~ v`: equal Parikh vectors.
pub fn abelian_equivalent(u: &FiniteWord, v: &FiniteWord) -> bool {
    u.parikh() == v.parikh()
}

/// Distinct length-`n` factors of `u`, or `None` if `n > |u|`.
pub fn factors(u: &FiniteWord, n: usize) -> Option<BTreeSet<FiniteWord>> {
    u.factors(n)
}

impl PartialEq for FiniteWord {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.blocks == other.blocks
    }
}

impl Eq for FiniteWord {}

impl Hash for FiniteWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        self.blocks.hash(state);
    }
}

impl Ord for FiniteWord {
    /// Lexicographic order with `0 < 1`, prefixes first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for FiniteWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b == 1 { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 80 {
            write!(f, "FiniteWord({self})")
        } else {
            write!(f, "FiniteWord({}…, len {})", self.prefix(64), self.len)
        }
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    /// Parses a string of ASCII `0`/`1`. `ε` and the empty string give the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ε" || s == "eps" {
            return Ok(FiniteWord::new());
        }
        let mut w = FiniteWord::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => w.push(0),
                '1' => w.push(1),
                other => {
                    return Err(Error::config(format!(
                        "invalid letter {other:?} at position {i} (expected 0 or 1)"
                    )))
                }
            }
        }
        Ok(w)
    }
}

impl Serialize for FiniteWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FiniteWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and examples: `w("0110")`.
///
/// # Panics
/// On letters other than `0`/`1`.
pub fn w(s: &str) -> FiniteWord {
    s.parse().expect("binary word literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parikh_examples() {
        assert_eq!(parikh(&w("0110")), ParikhVector::new(2, 2));
        assert_eq!(parikh(&w("")), ParikhVector::new(0, 0));
        assert_eq!(parikh(&w("01001010")), ParikhVector::new(5, 3));
    }

    #[test]
    fn abelian_equivalence_examples() {
        assert!(abelian_equivalent(&w("01"), &w("10")));
        assert!(abelian_equivalent(&w("0011"), &w("0101")));
        assert!(!abelian_equivalent(&w("01"), &w("11")));
    }

    #[test]
    fn factor_examples() {
        let f: Vec<String> = factors(&w("01010"), 2).unwrap().iter().map(|u| u.to_string()).collect();
        assert_eq!(f, vec!["01", "10"]);
        let tm3: BTreeSet<FiniteWord> = ["011", "110", "101", "010", "100", "001"].iter().map(|s| w(s)).collect();
        assert_eq!(factors(&w("01101001"), 3).unwrap(), tm3);
        assert_eq!(factors(&w("0110"), 0).unwrap(), [FiniteWord::new()].into_iter().collect());
        assert!(factors(&w("01"), 3).is_none());
    }

    #[test]
    fn long_factors_use_slices() {
        let u = w("01").repeat(70);
        let f = u.factors(65).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(u.factor_count(100), 2);
    }

    #[test]
    fn bits_across_blocks() {
        let u = FiniteWord::from_bits((0..200).map(|i| ((i * 7 + i / 3) % 2) as u8));
        for start in [0, 1, 30, 63, 64, 100, 130] {
            for n in [1, 5, 33, 64] {
                if start + n <= u.len() {
                    let expect = (0..n).fold(0u64, |acc, j| acc | ((u.get(start + j) as u64) << j));
                    assert_eq!(u.bits_at(start, n), expect);
                }
            }
        }
        let s = u.slice(63, 70);
        assert!(u.occurs_at(&s, 63));
        assert_eq!(s.weight(), u.weight_range(63, 70));
    }

    #[test]
    fn complement_and_reverse() {
        assert_eq!(w("0010").complement(), w("1101"));
        assert_eq!(w("0010").reversed(), w("0100"));
        assert!(w("010").is_palindrome());
        assert!(!w("011").is_palindrome());
    }

    fn all_words(max_len: usize) -> Vec<FiniteWord> {
        let mut out = vec![];
        for n in 0..=max_len {
            for k in 0..(1u64 << n) {
                out.push(FiniteWord::from_key(k, n));
            }
        }
        out
    }

    #[test]
    fn abelian_equivalence_is_an_equivalence_per_length() {
        for n in 0..=8usize {
            let ws: Vec<FiniteWord> = (0..(1u64 << n)).map(|k| FiniteWord::from_key(k, n)).collect();
            for u in &ws {
                assert!(abelian_equivalent(u, u));
            }
            // transitivity and symmetry through the class representative (weight)
            for u in ws.iter().step_by(3) {
                for v in ws.iter().step_by(5) {
                    assert_eq!(abelian_equivalent(u, v), abelian_equivalent(v, u));
                    for x in ws.iter().step_by(7) {
                        if abelian_equivalent(u, v) && abelian_equivalent(v, x) {
                            assert!(abelian_equivalent(u, x));
                        }
                    }
                }
            }
        }
        assert_eq!(all_words(3).len(), 15);
    }

    proptest! {
        #[test]
        fn parikh_is_additive(a in proptest::collection::vec(0u8..2, 0..150), b in proptest::collection::vec(0u8..2, 0..150)) {
            let u = FiniteWord::from_bits(a);
            let v = FiniteWord::from_bits(b);
            prop_assert_eq!(parikh(&u.concat(&v)), parikh(&u) + parikh(&v));
        }

        #[test]
        fn factor_count_bounded(a in proptest::collection::vec(0u8..2, 0..120), n in 0usize..80) {
            let u = FiniteWord::from_bits(a);
            if n <= u.len() {
                prop_assert!(u.factor_count(n) <= u.len() - n + 1);
            }
        }

        #[test]
        fn string_round_trip(a in proptest::collection::vec(0u8..2, 0..200)) {
            let u = FiniteWord::from_bits(a);
            prop_assert_eq!(u.to_string().parse::<FiniteWord>().unwrap(), u);
        }
    }
}
