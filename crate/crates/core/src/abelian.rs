//! Corridors, finite-window abelian-closure membership, balance and frequencies.
//!
//! A word `y` lies in the abelian closure `A(x)` exactly when, for every
//! length `n`, the weights of its length-`n` factors stay inside
//! `[min_n(x), max_n(x)]`. Sampled corridors come from a prefix of `x`;
//! since every sampled factor is a genuine factor, a sampled corridor is
//! contained in the true one. Consequently a window that stays inside a
//! sampled corridor stays inside the true one, while a violation of a
//! sampled corridor is only evidence until the corridor is known exactly.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadratic::{QuadraticNumber, Slope};
use crate::spec::InfiniteWordSpec;
use crate::transforms::morphism::BinaryMorphism;
use crate::word::FiniteWord;

/// Default state cap of [`closure_of_periodic`].
pub const CLOSURE_STATE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    EmpiricalWindow,
    ExactClosedForm,
}

/// Per-length weight envelope, indexed by `n = 0..=max_len`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorridorProfile {
    pub max_len: usize,
    pub min: Vec<u64>,
    pub max: Vec<u64>,
    pub provenance: Provenance,
    /// Prefix length sampled for empirical profiles.
    pub sample: Option<usize>,
    /// Which closed form or sample produced the profile.
    pub source: String,
}

impl CorridorProfile {
    pub fn is_exact(&self) -> bool {
        self.provenance == Provenance::ExactClosedForm
    }

    pub fn min_weight(&self, n: usize) -> u64 {
        self.min[n]
    }

    pub fn max_weight(&self, n: usize) -> u64 {
        self.max[n]
    }

    pub fn admits(&self, n: usize, weight: u64) -> bool {
        self.min[n] <= weight && weight <= self.max[n]
    }

    /// Rows `n, min, max` for `n ≥ 1`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tmin\tmax\n");
        for n in 1..=self.max_len {
            s.push_str(&format!("{n}\t{}\t{}\n", self.min[n], self.max[n]));
        }
        s
    }

    pub fn rows(&self) -> Vec<(usize, u64, u64)> {
        (1..=self.max_len).map(|n| (n, self.min[n], self.max[n])).collect()
    }
}

fn window_extrema(g: &[u32], n: usize) -> (u64, u64) {
    let m = g.len() - 1;
    let mut lo = u32::MAX;
    let mut hi = 0u32;
    for i in 0..=m - n {
        let wt = g[i + n] - g[i];
        lo = lo.min(wt);
        hi = hi.max(wt);
    }
    (lo as u64, hi as u64)
}

/// Sampled corridor of the factors of `u` up to length `max_len ≤ |u|`.
pub fn empirical_profile(u: &FiniteWord, max_len: usize) -> CorridorProfile {
    assert!(max_len <= u.len(), "profile length exceeds the window");
    let g = u.prefix_weights();
    let ext: Vec<(u64, u64)> = (1..=max_len).into_par_iter().map(|n| window_extrema(&g, n)).collect();
    let mut min = vec![0];
    let mut max = vec![0];
    for (lo, hi) in ext {
        min.push(lo);
        max.push(hi);
    }
    CorridorProfile {
        max_len,
        min,
        max,
        provenance: Provenance::EmpiricalWindow,
        sample: Some(u.len()),
        source: format!("window of {} letters", u.len()),
    }
}

/// `⌊nα⌋, ⌈nα⌉` for an irrational slope.
pub fn sturmian_profile(alpha: &Slope, max_len: usize) -> CorridorProfile {
    let mut min = vec![0];
    let mut max = vec![0];
    for n in 1..=max_len {
        let x = alpha.value().mul_int(n as i128);
        min.push(x.floor() as u64);
        max.push(x.ceil() as u64);
    }
    CorridorProfile {
        max_len,
        min,
        max,
        provenance: Provenance::ExactClosedForm,
        sample: None,
        source: format!("sturmian slope {alpha}"),
    }
}

/// Exact corridor of `v^ω` from its cyclic windows.
pub fn periodic_profile(v: &FiniteWord, max_len: usize) -> CorridorProfile {
    let q = v.len();
    assert!(q > 0);
    let doubled = v.repeat(2);
    let g = doubled.prefix_weights();
    let p = v.weight();
    let cyclic: Vec<(u64, u64)> = (0..q)
        .map(|r| {
            let ws = (0..q).map(|s| (g[s + r] - g[s]) as u64);
            let (lo, hi) = ws.fold((u64::MAX, 0), |(lo, hi), w| (lo.min(w), hi.max(w)));
            (lo, hi)
        })
        .collect();
    let mut min = vec![0];
    let mut max = vec![0];
    for n in 1..=max_len {
        let (m, r) = n.div_rem(&q);
        let base = m as u64 * p;
        min.push(base + cyclic[r].0);
        max.push(base + cyclic[r].1);
    }
    CorridorProfile {
        max_len,
        min,
        max,
        provenance: Provenance::ExactClosedForm,
        sample: None,
        source: format!("period {v}"),
    }
}

/// Purely periodic words: the period of `spec`, when known in closed form.
pub fn spec_period(spec: &InfiniteWordSpec) -> Option<FiniteWord> {
    match spec {
        InfiniteWordSpec::Carpet { p, q, index } => {
            let v = spec_period(index)?;
            Some(carpet_morphism(*p, *q).ok()?.apply(&v))
        }
        InfiniteWordSpec::Product { x, y, index } => {
            let v = spec_period(index)?;
            Some(BinaryMorphism::new(x.clone(), y.clone()).apply(&v))
        }
        other => other.period_word(),
    }
}

/// Closed-form corridor of `spec`, when one is known.
pub fn exact_profile(spec: &InfiniteWordSpec, max_len: usize) -> Option<CorridorProfile> {
    if let Some(alpha) = spec.sturmian_slope() {
        return Some(sturmian_profile(&alpha, max_len));
    }
    spec_period(spec).map(|v| periodic_profile(&v, max_len))
}

fn check_sample(max_len: usize, sample: usize) -> Result<()> {
    if sample < 2 * max_len {
        return Err(Error::config(format!(
            "sample length {sample} must be at least twice the factor length {max_len}"
        )));
    }
    Ok(())
}

/// Corridor up to `max_len`: exact when a closed form is known, otherwise
/// sampled from the first `sample` letters.
pub fn corridor_profile(spec: &InfiniteWordSpec, max_len: usize, sample: usize) -> Result<CorridorProfile> {
    check_sample(max_len, sample)?;
    if let Some(p) = exact_profile(spec, max_len) {
        return Ok(p);
    }
    Ok(empirical_profile(&spec.prefix(sample)?, max_len))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Refuted,
    Consistent,
}

/// A factor of `y` outside the reference corridor. `position` is 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub factor: FiniteWord,
    pub position: usize,
    pub length: usize,
    pub weight: u64,
    pub min: u64,
    pub max: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub verdict: Verdict,
    /// Largest factor length checked.
    pub window: usize,
    /// Letters of `y` inspected.
    pub y_letters: usize,
    pub reference: Provenance,
    pub reference_sample: Option<usize>,
    /// The verdict holds for the inspected window against the true corridor.
    pub sound: bool,
    pub witness: Option<Witness>,
}

/// Checks every factor of `y` of length `≤ min(profile.max_len, |y|)`.
pub fn check_window(y: &FiniteWord, profile: &CorridorProfile) -> MembershipCertificate {
    let top = profile.max_len.min(y.len());
    let g = y.prefix_weights();
    let violation = (1..=top).into_par_iter().find_first(|&n| {
        let (lo, hi) = window_extrema(&g, n);
        lo < profile.min[n] || hi > profile.max[n]
    });
    let witness = violation.map(|n| {
        let pos = (0..=y.len() - n)
            .find(|&i| !profile.admits(n, (g[i + n] - g[i]) as u64))
            .expect("violating window exists");
        Witness {
            factor: y.slice(pos, n),
            position: pos,
            length: n,
            weight: (g[pos + n] - g[pos]) as u64,
            min: profile.min[n],
            max: profile.max[n],
        }
    });
    let verdict = if witness.is_some() { Verdict::Refuted } else { Verdict::Consistent };
    MembershipCertificate {
        verdict,
        window: top,
        y_letters: y.len(),
        reference: profile.provenance,
        reference_sample: profile.sample,
        sound: verdict == Verdict::Consistent || profile.is_exact(),
        witness,
    }
}

/// Finite-window test of `y ∈ A(x)` on factors of length `≤ max_len`.
///
/// Both words are sampled to `sample` letters (`sample ≥ 2·max_len`).
pub fn corridor_member(
    y: &InfiniteWordSpec,
    x: &InfiniteWordSpec,
    max_len: usize,
    sample: usize,
) -> Result<MembershipCertificate> {
    let profile = corridor_profile(x, max_len, sample)?;
    Ok(check_window(&y.prefix(sample)?, &profile))
}

/// Distinct weights among the length-`n` factors of the first `sample` letters.
pub fn abelian_complexity(w: &InfiniteWordSpec, n: usize, sample: usize) -> Result<usize> {
    check_sample(n, sample)?;
    let u = w.prefix(sample)?;
    Ok(window_weights(&u, n).len())
}

/// Weights attained by length-`n` factors of `u`.
pub fn window_weights(u: &FiniteWord, n: usize) -> BTreeSet<u64> {
    if n > u.len() {
        return BTreeSet::new();
    }
    let g = u.prefix_weights();
    (0..=u.len() - n).map(|i| (g[i + n] - g[i]) as u64).collect()
}

/// `0w′0` and `1w′1` both occur; `length = |w′| + 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnbalancedPair {
    pub core: FiniteWord,
    pub length: usize,
    pub palindrome: bool,
}

/// Smallest `C` such that the window is `C`-balanced on lengths `≤ max_len`.
pub fn balance_coefficient_window(u: &FiniteWord, max_len: usize) -> u64 {
    let p = empirical_profile(u, max_len.min(u.len()));
    (1..=p.max_len).map(|n| p.max[n] - p.min[n]).max().unwrap_or(0)
}

pub fn balance_coefficient(w: &InfiniteWordSpec, max_len: usize, sample: usize) -> Result<u64> {
    check_sample(max_len, sample)?;
    Ok(balance_coefficient_window(&w.prefix(sample)?, max_len))
}

fn factor_set(u: &FiniteWord, n: usize) -> HashSet<FiniteWord> {
    if n > u.len() {
        return HashSet::new();
    }
    (0..=u.len() - n).map(|i| u.slice(i, n)).collect()
}

/// Shortest `0w′0`/`1w′1` pair among factors of `u` of length `≤ max_len`.
///
/// Among cores of the shortest length, palindromes come first, then
/// lexicographic order.
pub fn shortest_unbalanced_pair_window(u: &FiniteWord, max_len: usize) -> Option<UnbalancedPair> {
    let top = max_len.min(u.len());
    let g = u.prefix_weights();
    let len = (2..=top).find(|&n| {
        let (lo, hi) = window_extrema(&g, n);
        hi - lo >= 2
    })?;
    let core_len = len - 2;
    let mut cores: Vec<FiniteWord> = if len <= 64 {
        let keys = u.factor_keys(len);
        let mask = if core_len == 0 { 0 } else { (1u64 << core_len) - 1 };
        let mut out = Vec::new();
        for &k in &keys {
            // letters are LSB-first: first letter bit 0, last letter bit len-1
            if k & 1 == 0 && (k >> (len - 1)) & 1 == 0 {
                let mid = (k >> 1) & mask;
                let partner = 1 | (mid << 1) | (1u64 << (len - 1));
                if keys.contains(&partner) {
                    out.push(FiniteWord::from_key(mid, core_len));
                }
            }
        }
        out
    } else {
        let set = factor_set(u, len);
        set.iter()
            .filter(|f| f.get(0) == 0 && f.get(len - 1) == 0)
            .map(|f| f.slice(1, core_len))
            .filter(|mid| {
                let partner = FiniteWord::from_bits([1]).concat(mid).concat(&FiniteWord::from_bits([1]));
                set.contains(&partner)
            })
            .collect()
    };
    cores.sort_by(|a, b| b.is_palindrome().cmp(&a.is_palindrome()).then(a.cmp(b)));
    let core = cores.into_iter().next()?;
    Some(UnbalancedPair { palindrome: core.is_palindrome(), core, length: len })
}

pub fn shortest_unbalanced_pair(w: &InfiniteWordSpec, max_len: usize, sample: usize) -> Result<Option<UnbalancedPair>> {
    check_sample(max_len, sample)?;
    Ok(shortest_unbalanced_pair_window(&w.prefix(sample)?, max_len))
}

/// Fekete-style bounds on the frequency of `1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrequencyBounds {
    /// `(N, lower_N, upper_N)` for `N = 1..=max_len`.
    pub per_window: Vec<(usize, Ratio<u64>, Ratio<u64>)>,
    pub lower: Ratio<u64>,
    pub upper: Ratio<u64>,
    pub tolerance: Ratio<u64>,
    /// `upper - lower < tolerance`.
    pub uniform_frequency_plausible: bool,
}

impl FrequencyBounds {
    /// `lower ≤ x ≤ upper`, decided exactly.
    pub fn brackets(&self, x: &QuadraticNumber) -> bool {
        let q = |r: &Ratio<u64>| QuadraticNumber::rational(*r.numer() as i128, *r.denom() as i128).expect("nonzero");
        q(&self.lower) <= *x && *x <= q(&self.upper)
    }
}

pub fn frequency_bounds_from_profile(p: &CorridorProfile, tolerance: Ratio<u64>) -> FrequencyBounds {
    let mut lower = Ratio::from_integer(0u64);
    let mut upper = Ratio::from_integer(1u64);
    let mut per_window = Vec::with_capacity(p.max_len);
    for n in 1..=p.max_len {
        let lo = Ratio::new(p.min[n], n as u64);
        let hi = Ratio::new(p.max[n], n as u64);
        if lo > lower {
            lower = lo;
        }
        if hi < upper {
            upper = hi;
        }
        per_window.push((n, lower, upper));
    }
    FrequencyBounds {
        per_window,
        lower,
        upper,
        tolerance,
        uniform_frequency_plausible: upper - lower < tolerance,
    }
}

/// Bounds from the sampled window of `w` (never from closed forms).
pub fn frequency_bounds(w: &InfiniteWordSpec, max_len: usize, sample: usize, tolerance: Ratio<u64>) -> Result<FrequencyBounds> {
    check_sample(max_len, sample)?;
    let p = empirical_profile(&w.prefix(sample)?, max_len);
    Ok(frequency_bounds_from_profile(&p, tolerance))
}

/// Primitive words `u` such that `u^ω ∈ A(v^ω)`, up to the state cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicClosure {
    /// Primitive roots, shortest first then lexicographic; closed under rotation.
    pub representatives: Vec<FiniteWord>,
    pub states_explored: usize,
}

/// Smallest `r` with `u = r^k`.
pub fn primitive_root(u: &FiniteWord) -> FiniteWord {
    let n = u.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| u.get(i) == u.get(i - d)) {
            return u.prefix(d);
        }
    }
    u.clone()
}

/// The abelian closure of `v^ω`, which is finite.
///
/// Every length-`q` factor of `v^ω` (with `q = |v|`) has weight `|v|₁`, so
/// each member is periodic with period `q`; the search runs breadth-first
/// over prefixes of length `≤ q` that respect the corridor, and finally
/// checks cyclic windows.
pub fn closure_of_periodic(v: &FiniteWord, cap: usize) -> Result<PeriodicClosure> {
    if v.is_empty() {
        return Err(Error::domain("closure of the empty period"));
    }
    let q = v.len();
    let profile = periodic_profile(v, q);
    let mut queue: VecDeque<FiniteWord> = VecDeque::from([FiniteWord::new()]);
    let mut complete = Vec::new();
    let mut explored = 0usize;
    while let Some(u) = queue.pop_front() {
        explored += 1;
        if explored > cap {
            return Err(Error::Resource {
                what: "periodic closure states".into(),
                partial: complete.len(),
                cap,
            });
        }
        if u.len() == q {
            complete.push(u);
            continue;
        }
        for a in 0..2u8 {
            let mut next = u.clone();
            next.push(a);
            let m = next.len();
            let g = next.prefix_weights();
            // windows ending at the new letter
            let ok = (1..=m).all(|r| profile.admits(r, (g[m] - g[m - r]) as u64));
            if ok {
                queue.push_back(next);
            }
        }
    }
    let mut reps: BTreeSet<(usize, FiniteWord)> = BTreeSet::new();
    for u in complete {
        let doubled = u.repeat(2);
        let g = doubled.prefix_weights();
        let cyclic_ok = (1..q).all(|r| (0..q).all(|s| profile.admits(r, (g[s + r] - g[s]) as u64)));
        if cyclic_ok {
            let root = primitive_root(&u);
            reps.insert((root.len(), root));
        }
    }
    Ok(PeriodicClosure {
        representatives: reps.into_iter().map(|(_, r)| r).collect(),
        states_explored: explored,
    })
}

/// The morphism `0 ↦ w01, 1 ↦ w10` with `w01` the standard word of slope `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalCarpet {
    pub p: u32,
    pub q: u32,
    pub w: FiniteWord,
    pub morphism: BinaryMorphism,
}

impl RationalCarpet {
    /// `φ(index)`.
    pub fn member(&self, index: &FiniteWord) -> FiniteWord {
        self.morphism.apply(index)
    }

    pub fn member_spec(&self, index: InfiniteWordSpec) -> InfiniteWordSpec {
        InfiniteWordSpec::Carpet { p: self.p, q: self.q, index: Box::new(index) }
    }

    /// Corridor of the whole family: `[⌊np/q⌋, ⌈np/q⌉]`, widened to
    /// `np/q ± 1` when `q | n`.
    pub fn family_profile(&self, max_len: usize) -> CorridorProfile {
        let (p, q) = (self.p as u64, self.q as u64);
        let mut min = vec![0];
        let mut max = vec![0];
        for n in 1..=max_len as u64 {
            let (d, r) = (n * p).div_rem(&q);
            if r == 0 {
                min.push(d.saturating_sub(1));
                max.push((d + 1).min(n));
            } else {
                min.push(d);
                max.push(d + 1);
            }
        }
        CorridorProfile {
            max_len,
            min,
            max,
            provenance: Provenance::ExactClosedForm,
            sample: None,
            source: format!("rational carpet {}/{}", self.p, self.q),
        }
    }
}

pub fn rational_carpet(p: u32, q: u32) -> Result<RationalCarpet> {
    if !(0 < p && p < q) || p.gcd(&q) != 1 {
        return Err(Error::domain(format!("carpet slope {p}/{q} must satisfy 0 < p < q, gcd(p, q) = 1")));
    }
    let (pp, qq) = (p as u64, q as u64);
    // lower Christoffel word 0·w·1
    let christoffel = FiniteWord::from_bits((1..=qq).map(|i| ((i * pp) / qq - ((i - 1) * pp) / qq) as u8));
    let w = christoffel.slice(1, q as usize - 2);
    let w01 = w.concat(&FiniteWord::from_bits([0, 1]));
    let w10 = w.concat(&FiniteWord::from_bits([1, 0]));
    Ok(RationalCarpet { p, q, w, morphism: BinaryMorphism::new(w01, w10) })
}

pub fn carpet_morphism(p: u32, q: u32) -> Result<BinaryMorphism> {
    Ok(rational_carpet(p, q)?.morphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sturmian::is_standard_word;
    use crate::word::w;
    use proptest::prelude::*;

    fn spec(s: &str) -> InfiniteWordSpec {
        s.parse().unwrap()
    }

    #[test]
    fn corridor_examples() {
        let fib = corridor_profile(&spec("fib"), 10, 40).unwrap();
        assert_eq!((fib.min[3], fib.max[3]), (1, 2));
        assert!(fib.is_exact());
        let fib_emp = empirical_profile(&spec("fib").prefix(4000).unwrap(), 10);
        assert_eq!(fib_emp.min, fib.min);
        assert_eq!(fib_emp.max, fib.max);
        let tm = corridor_profile(&spec("tm"), 4, 64).unwrap();
        assert_eq!((tm.min[2], tm.max[2]), (0, 2));
        assert!(!tm.is_exact());
        let alt = corridor_profile(&spec("periodic:01"), 4, 8).unwrap();
        assert_eq!(alt.rows(), vec![(1, 0, 1), (2, 1, 1), (3, 1, 2), (4, 2, 2)]);
        assert!(matches!(corridor_profile(&spec("fib"), 10, 19), Err(Error::Config(_))));
    }

    #[test]
    fn membership_examples() {
        for n in [8, 32, 128] {
            let c = corridor_member(&spec("periodic:01"), &spec("periodic:0011"), n, 4 * n).unwrap();
            assert_eq!(c.verdict, Verdict::Consistent);
            assert!(c.sound);
        }
        let c = corridor_member(&spec("periodic:0"), &spec("tm"), 16, 64).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        let wit = c.witness.unwrap();
        assert_eq!((wit.length, wit.weight, wit.min), (3, 0, 1));
        assert!(!c.sound);
        for s in ["fib", "tm", "periodic:0010111", "morphic:0->001111,1->0:0"] {
            let c = corridor_member(&spec(s), &spec(s), 64, 256).unwrap();
            assert_eq!(c.verdict, Verdict::Consistent, "{s}");
        }
    }

    #[test]
    fn complexity_and_balance_examples() {
        assert!((1..=30).all(|n| abelian_complexity(&spec("fib"), n, 400).unwrap() == 2));
        assert_eq!(abelian_complexity(&spec("tm"), 2, 64).unwrap(), 3);
        assert_eq!(abelian_complexity(&spec("periodic:01"), 2, 16).unwrap(), 1);

        assert_eq!(balance_coefficient(&spec("fib"), 100, 1000).unwrap(), 1);
        assert_eq!(shortest_unbalanced_pair(&spec("fib"), 100, 1000).unwrap(), None);
        assert_eq!(balance_coefficient(&spec("tm"), 100, 1000).unwrap(), 2);
        let p = shortest_unbalanced_pair(&spec("tm"), 100, 1000).unwrap().unwrap();
        assert_eq!((p.core.clone(), p.length), (FiniteWord::new(), 2));
        assert_eq!(shortest_unbalanced_pair(&spec("periodic:0011"), 10, 40).unwrap().unwrap().length, 2);
    }

    #[test]
    fn unbalanced_core_is_a_palindrome() {
        let s = spec("morphic:0->001111,1->0:0");
        let p = shortest_unbalanced_pair(&s, 200, 4000).unwrap().unwrap();
        assert!(p.palindrome);
        let u = s.prefix(4000).unwrap();
        let z = w("0").concat(&p.core).concat(&w("0"));
        let o = w("1").concat(&p.core).concat(&w("1"));
        assert!(u.contains(&z) && u.contains(&o));
    }

    #[test]
    fn frequency_examples() {
        let tol = Ratio::new(1, 10);
        let alt = frequency_bounds(&spec("periodic:01"), 2, 8, tol).unwrap();
        assert_eq!((alt.lower, alt.upper), (Ratio::new(1, 2), Ratio::new(1, 2)));
        assert!(alt.uniform_frequency_plausible);
        let tm = frequency_bounds(&spec("tm"), 64, 256, tol).unwrap();
        assert!(tm.lower < Ratio::new(1, 2) && Ratio::new(1, 2) < tm.upper);
        let fib = frequency_bounds(&spec("fib"), 64, 256, tol).unwrap();
        assert!(fib.brackets(&Slope::golden().value()));
        assert!(fib.uniform_frequency_plausible);
    }

    #[test]
    fn periodic_closure_examples() {
        let c = closure_of_periodic(&w("01"), CLOSURE_STATE_CAP).unwrap();
        assert_eq!(c.representatives, vec![w("01"), w("10")]);
        assert_eq!(closure_of_periodic(&w("0"), CLOSURE_STATE_CAP).unwrap().representatives, vec![w("0")]);
        let c = closure_of_periodic(&w("0011"), CLOSURE_STATE_CAP).unwrap();
        assert!(c.representatives.contains(&w("01")));
        assert_eq!(c.representatives.len(), 6);
        assert!(matches!(closure_of_periodic(&w("0001011"), 5), Err(Error::Resource { .. })));
    }

    /// All `u` of length `|v|` whose powers stay in the corridor of `v^ω`, by brute force.
    fn closure_oracle(v: &FiniteWord) -> Vec<FiniteWord> {
        let q = v.len();
        let ref_profile = empirical_profile(&v.repeat(4), 2 * q);
        let mut reps = BTreeSet::new();
        for k in 0..(1u64 << q) {
            let u = FiniteWord::from_key(k, q);
            let cand = empirical_profile(&u.repeat(4), 2 * q);
            if (1..=2 * q).all(|n| cand.min[n] >= ref_profile.min[n] && cand.max[n] <= ref_profile.max[n]) {
                let r = primitive_root(&u);
                reps.insert((r.len(), r));
            }
        }
        reps.into_iter().map(|(_, r)| r).collect()
    }

    #[test]
    fn closure_matches_oracle_and_is_shift_closed() {
        for v in ["01", "0011", "001", "00101", "0001011", "011010", "000111", "0100101"] {
            let v = w(v);
            let c = closure_of_periodic(&v, CLOSURE_STATE_CAP).unwrap();
            assert_eq!(c.representatives, closure_oracle(&v), "{v}");
            for r in &c.representatives {
                let rotated = r.suffix_from(1).concat(&r.prefix(1));
                assert!(c.representatives.contains(&rotated));
            }
        }
    }

    #[test]
    fn carpet_examples() {
        let half = rational_carpet(1, 2).unwrap();
        assert_eq!(half.morphism, BinaryMorphism::new(w("01"), w("10")));
        let third = rational_carpet(1, 3).unwrap();
        assert_eq!(third.morphism, BinaryMorphism::new(w("001"), w("010")));
        let two_fifths = rational_carpet(2, 5).unwrap();
        assert_eq!(two_fifths.morphism.image0, w("01001"));
        for c in [&half, &third, &two_fifths] {
            assert!(is_standard_word(&c.morphism.image0));
            assert_eq!(c.morphism.image0.weight(), c.p as u64);
        }
        assert!(rational_carpet(2, 4).is_err());
        assert!(rational_carpet(3, 2).is_err());
    }

    #[test]
    fn exact_profiles_agree_with_windows() {
        for s in ["periodic:0010110", "dir:1,2:w", "carpet:2/5:periodic:011", "pair:010,01:periodic:001"] {
            let sp = spec(s);
            let exact = exact_profile(&sp, 40).unwrap();
            let emp = empirical_profile(&sp.prefix(2000).unwrap(), 40);
            assert_eq!(exact.min, emp.min, "{s}");
            assert_eq!(exact.max, emp.max, "{s}");
        }
        for s in ["fib", "dir:0,3:1,2", "rot:(-1+sqrt(2))/1:1/3"] {
            let sp = spec(s);
            let exact = exact_profile(&sp, 60).unwrap();
            let emp = empirical_profile(&sp.prefix(20000).unwrap(), 60);
            assert_eq!(exact.min, emp.min, "{s}");
            assert_eq!(exact.max, emp.max, "{s}");
        }
    }

    #[test]
    fn thue_morse_corridor_straddles_one_half() {
        let p = empirical_profile(&spec("tm").prefix(8192).unwrap(), 128);
        for n in 1..=128u64 {
            assert!(2 * p.max[n as usize] > n && 2 * p.min[n as usize] < n, "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn profiles_are_fekete_and_continuous(v in proptest::collection::vec(0u8..2, 20..300)) {
            let u = FiniteWord::from_bits(v);
            let n_max = u.len() / 4;
            let p = empirical_profile(&u, n_max);
            for n in 1..=n_max {
                prop_assert!(p.min[n] <= p.max[n] && p.max[n] <= n as u64);
                let ws = window_weights(&u, n);
                prop_assert_eq!(ws.len() as u64, p.max[n] - p.min[n] + 1);
            }
            let v = primitive_root(&u.prefix(7));
            let pp = periodic_profile(&v, 40);
            for m in 1..20 {
                for n in 1..20 {
                    prop_assert!(pp.max[m + n] <= pp.max[m] + pp.max[n]);
                    prop_assert!(pp.min[m + n] >= pp.min[m] + pp.min[n]);
                }
            }
        }

        #[test]
        fn frequency_bounds_are_monotone(which in 0usize..4, n in 8usize..80) {
            let s = spec(["fib", "tm", "periodic:00101", "morphic:0->001111,1->0:0"][which]);
            let b = frequency_bounds(&s, n, 4 * n, Ratio::new(1, 10)).unwrap();
            for pair in b.per_window.windows(2) {
                prop_assert!(pair[1].1 >= pair[0].1);
                prop_assert!(pair[1].2 <= pair[0].2);
                prop_assert!(pair[1].1 <= pair[1].2);
            }
        }

        #[test]
        fn reflexive_membership(which in 0usize..5, n in 4usize..100) {
            let s = spec(["fib", "tm", "periodic:0011", "carpet:1/3:tm", "flip:3:10"][which]);
            let c = corridor_member(&s, &s, n, 4 * n).unwrap();
            prop_assert_eq!(c.verdict, Verdict::Consistent);
        }

        #[test]
        fn sturmian_consistent_words_have_sturmian_frequencies(bits in proptest::collection::vec(0u8..2, 1..40)) {
            // windows accepted against an exact Sturmian corridor obey ⌊nα⌋ ≤ |u|₁ ≤ ⌈nα⌉
            let fib = spec("fib");
            let profile = corridor_profile(&fib, 64, 256).unwrap();
            let start = bits.iter().fold(0usize, |a, &b| 2 * a + b as usize) % 500;
            let y = fib.prefix(1000).unwrap().suffix_from(start);
            let cert = check_window(&y, &profile);
            prop_assert_eq!(cert.verdict, Verdict::Consistent);
            let alpha = Slope::golden().value();
            for n in 1..=64usize {
                for wt in window_weights(&y, n) {
                    let x = alpha.mul_int(n as i128);
                    prop_assert!(wt as i128 >= x.floor() && wt as i128 <= x.ceil());
                }
            }
        }
    }
}
