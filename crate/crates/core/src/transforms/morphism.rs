//! Binary morphisms, their adjacency matrices and generator decompositions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;
use crate::sturmian::StandardPair;
use crate::word::{FiniteWord, ParikhVector};

/// Default number of generator applications tried by [`is_sturmian_morphism`].
pub const STURMIAN_DEPTH_CAP: usize = 24;

/// A substitution `0 ↦ image0, 1 ↦ image1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMorphism {
    pub image0: FiniteWord,
    pub image1: FiniteWord,
}

/// Columns `Ψ(f(0))`, `Ψ(f(1))`: `m[letter][column]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacencyMatrix {
    pub m: [[i64; 2]; 2],
}

impl AdjacencyMatrix {
    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, v: ParikhVector) -> ParikhVector {
        let (x, y) = (v.count0 as i64, v.count1 as i64);
        ParikhVector::new(
            (self.m[0][0] * x + self.m[0][1] * y) as u64,
            (self.m[1][0] * x + self.m[1][1] * y) as u64,
        )
    }
}

/// Outcome of a bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Yes,
    No,
    UndecidedAtCap,
}

impl BinaryMorphism {
    pub fn new(image0: FiniteWord, image1: FiniteWord) -> Self {
        BinaryMorphism { image0, image1 }
    }

    pub fn identity() -> Self {
        Self::new(FiniteWord::from_bits([0]), FiniteWord::from_bits([1]))
    }

    /// `D: 0 ↦ 01, 1 ↦ 0`.
    pub fn d() -> Self {
        Self::new(FiniteWord::from_bits([0, 1]), FiniteWord::from_bits([0]))
    }

    /// `E: 0 ↦ 1, 1 ↦ 0`.
    pub fn e() -> Self {
        Self::new(FiniteWord::from_bits([1]), FiniteWord::from_bits([0]))
    }

    /// `G: 0 ↦ 10, 1 ↦ 0`.
    pub fn g() -> Self {
        Self::new(FiniteWord::from_bits([1, 0]), FiniteWord::from_bits([0]))
    }

    /// Thue–Morse substitution `0 ↦ 01, 1 ↦ 10`.
    pub fn thue_morse() -> Self {
        Self::new(FiniteWord::from_bits([0, 1]), FiniteWord::from_bits([1, 0]))
    }

    pub fn image(&self, letter: u8) -> &FiniteWord {
        if letter == 0 {
            &self.image0
        } else {
            &self.image1
        }
    }

    pub fn is_non_erasing(&self) -> bool {
        !self.image0.is_empty() && !self.image1.is_empty()
    }

    pub fn apply(&self, u: &FiniteWord) -> FiniteWord {
        let p = u.parikh();
        let cap = p.count0 as usize * self.image0.len() + p.count1 as usize * self.image1.len();
        let mut out = FiniteWord::with_capacity(cap);
        for a in u.iter() {
            out.extend_from(self.image(a));
        }
        out
    }

    /// First `n` letters of `f(u)`, reading only as much of `u` as needed.
    pub fn apply_prefix(&self, u: &FiniteWord, n: usize) -> Result<FiniteWord> {
        let mut out = FiniteWord::with_capacity(n + self.image0.len().max(self.image1.len()));
        for a in u.iter() {
            if out.len() >= n {
                break;
            }
            out.extend_from(self.image(a));
        }
        if out.len() < n {
            return Err(Error::BoundaryUndetermined { needed: n, available: out.len() });
        }
        out.truncate(n);
        Ok(out)
    }

    /// Source letters sufficient for `n` output letters.
    pub fn source_len_for(&self, n: usize) -> Result<usize> {
        let shortest = self.image0.len().min(self.image1.len());
        if shortest == 0 {
            return Err(Error::domain("erasing morphism"));
        }
        Ok(n.div_ceil(shortest))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &BinaryMorphism) -> BinaryMorphism {
        BinaryMorphism::new(self.apply(&other.image0), self.apply(&other.image1))
    }

    pub fn adjacency(&self) -> AdjacencyMatrix {
        let (p0, p1) = (self.image0.parikh(), self.image1.parikh());
        AdjacencyMatrix {
            m: [
                [p0.count0 as i64, p1.count0 as i64],
                [p0.count1 as i64, p1.count1 as i64],
            ],
        }
    }

    /// `Ψ(f(0))` and `Ψ(f(1))` are linearly dependent.
    pub fn is_degenerate(&self) -> bool {
        self.adjacency().det() == 0
    }

    /// `Ψ(u)` with `M_f Ψ(u) = psi`, when integral and nonnegative.
    pub fn parikh_preimage(&self, psi: ParikhVector) -> Result<Option<ParikhVector>> {
        let a = self.adjacency();
        let det = a.det();
        if det == 0 {
            return Err(Error::domain("parikh preimage of a degenerate morphism"));
        }
        let (x, y) = (psi.count0 as i64, psi.count1 as i64);
        let n0 = a.m[1][1] * x - a.m[0][1] * y;
        let n1 = -a.m[1][0] * x + a.m[0][0] * y;
        if n0 % det != 0 || n1 % det != 0 {
            return Ok(None);
        }
        let (v0, v1) = (n0 / det, n1 / det);
        if v0 < 0 || v1 < 0 {
            return Ok(None);
        }
        Ok(Some(ParikhVector::new(v0 as u64, v1 as u64)))
    }

    /// `{f(0), f(1)}` is an unordered standard pair.
    pub fn is_standard(&self) -> bool {
        StandardPair::new(self.image0.clone(), self.image1.clone()).is_unordered_standard()
    }

    /// Prefix of the fixed point starting with `seed`.
    pub fn fixed_point_prefix(&self, seed: u8, n: usize) -> Result<FiniteWord> {
        let start = self.image(seed);
        if start.first() != Some(seed) {
            return Err(Error::config(format!("morphism {self} is not prolongable on {seed}")));
        }
        let mut out = start.clone();
        let mut i = 1;
        while out.len() < n {
            if i >= out.len() {
                return Err(Error::config(format!(
                    "morphism {self} has no infinite fixed point from {seed}"
                )));
            }
            let a = out.get(i);
            let img = self.image(a).clone();
            out.extend_from(&img);
            i += 1;
        }
        out.truncate(n);
        Ok(out)
    }

    /// `M²` has no zero entry.
    pub fn is_primitive(&self) -> bool {
        let m = self.adjacency().m;
        (0..2).all(|i| (0..2).all(|j| (0..2).map(|k| m[i][k] * m[k][j]).sum::<i64>() > 0))
    }

    /// Frequency of `1` in any fixed point of a primitive morphism, from
    /// the Perron eigenvector of the adjacency matrix.
    pub fn letter_frequency(&self) -> Option<QuadraticNumber> {
        if !self.is_primitive() {
            return None;
        }
        let [[a, b], [_, d]] = self.adjacency().m;
        let (a, b, d) = (a as i128, b as i128, d as i128);
        let t = a + d;
        let disc = t * t - 4 * self.adjacency().det() as i128;
        let lambda = QuadraticNumber::new(t, 1, 2, disc).ok()?;
        // v = (b, λ - a)
        let v1 = lambda - QuadraticNumber::integer(a);
        Some(v1 / (v1 + QuadraticNumber::integer(b)))
    }

    fn swap_letters(&self) -> BinaryMorphism {
        BinaryMorphism::new(self.image0.complement(), self.image1.complement())
    }

    fn is_identity(&self) -> bool {
        *self == BinaryMorphism::identity()
    }
}

/// Inverts `D` (`prefix_one = false`) or `G` (`prefix_one = true`) on `u`.
fn decode(u: &FiniteWord, prefix_one: bool) -> Option<FiniteWord> {
    let mut out = FiniteWord::new();
    let mut i = 0;
    while i < u.len() {
        let a = u.get(i);
        if prefix_one {
            // G: 0 ↦ 10, 1 ↦ 0
            if a == 1 {
                if i + 1 < u.len() && u.get(i + 1) == 0 {
                    out.push(0);
                    i += 2;
                } else {
                    return None;
                }
            } else {
                out.push(1);
                i += 1;
            }
        } else {
            // D: 0 ↦ 01, 1 ↦ 0
            if a == 1 {
                return None;
            }
            if i + 1 < u.len() && u.get(i + 1) == 1 {
                out.push(0);
                i += 2;
            } else {
                out.push(1);
                i += 1;
            }
        }
    }
    Some(out)
}

/// Generator decomposition of `f` over `{D, E, G}`, left factor first.
pub fn sturmian_decomposition(f: &BinaryMorphism, cap: usize) -> (Decision, Vec<char>) {
    fn search(f: &BinaryMorphism, depth: usize, cap: usize, path: &mut Vec<char>) -> Decision {
        if f.is_identity() {
            return Decision::Yes;
        }
        if f.swap_letters().is_identity() {
            path.push('E');
            return Decision::Yes;
        }
        if f.adjacency().det().abs() != 1 {
            return Decision::No;
        }
        if depth >= cap {
            return Decision::UndecidedAtCap;
        }
        let mut undecided = false;
        for (swap, prefix_one, name) in [(false, false, "D"), (false, true, "G"), (true, false, "ED"), (true, true, "EG")] {
            let h = if swap { f.swap_letters() } else { f.clone() };
            let (Some(g0), Some(g1)) = (decode(&h.image0, prefix_one), decode(&h.image1, prefix_one)) else {
                continue;
            };
            let g = BinaryMorphism::new(g0, g1);
            let mark = path.len();
            path.extend(name.chars());
            let cost = name.len();
            match search(&g, depth + cost, cap, path) {
                Decision::Yes => return Decision::Yes,
                Decision::UndecidedAtCap => undecided = true,
                Decision::No => {}
            }
            path.truncate(mark);
        }
        if undecided {
            Decision::UndecidedAtCap
        } else {
            Decision::No
        }
    }
    let mut path = Vec::new();
    let d = search(f, 0, cap, &mut path);
    if d != Decision::Yes {
        path.clear();
    }
    (d, path)
}

/// Membership in the monoid generated by `D`, `E`, `G`, searched up to `cap`
/// generator applications.
pub fn is_sturmian_morphism(f: &BinaryMorphism, cap: usize) -> Decision {
    sturmian_decomposition(f, cap).0
}

pub fn is_standard_morphism(f: &BinaryMorphism) -> bool {
    f.is_standard()
}

impl fmt::Display for BinaryMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0->{},1->{}", self.image0, self.image1)
    }
}

impl fmt::Debug for BinaryMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMorphism({self})")
    }
}

impl FromStr for BinaryMorphism {
    type Err = Error;

    /// `0->w0,1->w1`, optionally prefixed by `morph:`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.strip_prefix("morph:").unwrap_or(s);
        let mut images: [Option<FiniteWord>; 2] = [None, None];
        for rule in body.split(',') {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| Error::config(format!("morphism rule {rule:?} lacks ->")))?;
            let letter = match lhs.trim() {
                "0" => 0,
                "1" => 1,
                other => return Err(Error::config(format!("unknown letter {other:?} in morphism"))),
            };
            if images[letter].is_some() {
                return Err(Error::config(format!("letter {letter} mapped twice")));
            }
            images[letter] = Some(rhs.trim().parse()?);
        }
        match images {
            [Some(a), Some(b)] => Ok(BinaryMorphism::new(a, b)),
            _ => Err(Error::config(format!("morphism {s:?} must map both letters"))),
        }
    }
}

impl Serialize for BinaryMorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryMorphism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    fn m(s: &str) -> BinaryMorphism {
        s.parse().unwrap()
    }

    #[test]
    fn perron_frequencies() {
        let q = |s: &str| s.parse::<QuadraticNumber>().unwrap();
        assert_eq!(m("0->001111,1->0").letter_frequency(), Some(q("(5-sqrt(5))/5")));
        assert_eq!(m("0->0111,1->0").letter_frequency(), Some(q("(7-sqrt(13))/6")));
        assert_eq!(m("0->01111,1->0").letter_frequency(), Some(q("(9-sqrt(17))/8")));
        assert_eq!(m("0->01,1->0").letter_frequency(), Some(q("(3-sqrt(5))/2")));
        assert_eq!(m("0->01,1->10").letter_frequency(), Some(q("1/2")));
        assert_eq!(BinaryMorphism::d().compose(&BinaryMorphism::e()).letter_frequency(), None);
        // empirical check on a long prefix
        let f = m("0->0111,1->0");
        let u = f.fixed_point_prefix(0, 100_000).unwrap();
        let emp = u.weight() as f64 / u.len() as f64;
        assert!((emp - f.letter_frequency().unwrap().to_f64()).abs() < 1e-3);
    }

    #[test]
    fn generator_examples() {
        let d = BinaryMorphism::d();
        assert_eq!(d.apply(&w("01")), w("010"));
        let e = BinaryMorphism::e();
        assert_eq!(e.compose(&e), BinaryMorphism::identity());
        assert_eq!(d.adjacency().m, [[1, 1], [1, 0]]);
        assert_eq!(d.parikh_preimage(w("010").parikh()).unwrap(), Some(w("01").parikh()));
    }

    #[test]
    fn morphic_image_example() {
        let f = m("0->100001,1->010");
        let img = f.apply(&w("0011").repeat(3));
        assert_eq!(img, w("100001100001010010").repeat(3));
        assert!(f.is_degenerate());
        assert_eq!(is_sturmian_morphism(&f, STURMIAN_DEPTH_CAP), Decision::No);
        assert!(matches!(f.parikh_preimage(ParikhVector::new(1, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn degeneracy_examples() {
        assert!(m("0->01,1->0101").is_degenerate());
        assert!(!BinaryMorphism::d().is_degenerate());
    }

    #[test]
    fn standard_and_sturmian_examples() {
        let d = BinaryMorphism::d();
        assert!(is_standard_morphism(&d));
        assert_eq!(is_sturmian_morphism(&d, STURMIAN_DEPTH_CAP), Decision::Yes);
        assert!(is_standard_morphism(&m("0->010,1->01")));
        assert_eq!(is_sturmian_morphism(&m("0->010,1->01"), STURMIAN_DEPTH_CAP), Decision::Yes);
        assert_eq!(is_sturmian_morphism(&BinaryMorphism::thue_morse(), STURMIAN_DEPTH_CAP), Decision::No);
        let (dec, path) = sturmian_decomposition(&BinaryMorphism::g().compose(&BinaryMorphism::e()), 24);
        assert_eq!(dec, Decision::Yes);
        assert!(!path.is_empty());
    }

    #[test]
    fn depth_cap_reports_undecided() {
        let mut f = BinaryMorphism::identity();
        for _ in 0..10 {
            f = f.compose(&BinaryMorphism::d());
        }
        assert_eq!(is_sturmian_morphism(&f, 3), Decision::UndecidedAtCap);
        assert_eq!(is_sturmian_morphism(&f, 24), Decision::Yes);
    }

    #[test]
    fn fixed_points() {
        assert_eq!(BinaryMorphism::thue_morse().fixed_point_prefix(0, 8).unwrap(), w("01101001"));
        assert_eq!(BinaryMorphism::d().fixed_point_prefix(0, 8).unwrap(), w("01001010"));
        assert!(matches!(BinaryMorphism::d().fixed_point_prefix(1, 4), Err(Error::Config(_))));
        assert!(matches!(m("0->0,1->1").fixed_point_prefix(0, 4), Err(Error::Config(_))));
    }

    #[test]
    fn parikh_preimage_inverts_on_short_words() {
        for f in [BinaryMorphism::d(), BinaryMorphism::g(), m("0->001111,1->0"), m("0->010,1->01"), BinaryMorphism::e()] {
            for n in 0..=10usize {
                for k in 0..(1u64 << n) {
                    let u = FiniteWord::from_key(k, n);
                    let img = f.apply(&u);
                    assert_eq!(f.adjacency().apply(u.parikh()), img.parikh());
                    assert_eq!(f.parikh_preimage(img.parikh()).unwrap(), Some(u.parikh()));
                }
            }
        }
    }

    fn generator(i: u8) -> BinaryMorphism {
        match i {
            0 => BinaryMorphism::d(),
            1 => BinaryMorphism::e(),
            _ => BinaryMorphism::g(),
        }
    }

    proptest! {
        #[test]
        fn compositions_of_generators_decompose(gens in proptest::collection::vec(0u8..3, 0..6)) {
            let f = gens.iter().fold(BinaryMorphism::identity(), |acc, &g| acc.compose(&generator(g)));
            prop_assert_eq!(is_sturmian_morphism(&f, STURMIAN_DEPTH_CAP), Decision::Yes);
            prop_assert_eq!(f.is_degenerate(), false);
        }

        #[test]
        fn composition_is_substitution(a in proptest::collection::vec(0u8..2, 1..6), b in proptest::collection::vec(0u8..2, 1..6), u in proptest::collection::vec(0u8..2, 0..20)) {
            let f = BinaryMorphism::new(FiniteWord::from_bits(a), FiniteWord::from_bits(b));
            let g = BinaryMorphism::d();
            let u = FiniteWord::from_bits(u);
            prop_assert_eq!(f.compose(&g).apply(&u), f.apply(&g.apply(&u)));
        }
    }
}
