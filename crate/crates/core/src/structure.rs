//! Word graphs, Rauzy graphs, special factors, complexity, return words and
//! factorization of a shift over a standard pair.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::shortest_unbalanced_pair_window;
use crate::error::{Error, Result};
use crate::quadratic::{QuadraticNumber, Slope};
use crate::spec::InfiniteWordSpec;
use crate::sturmian::{standard_pair_factorization, StandardPair};
use crate::transforms::morphism::BinaryMorphism;
use crate::word::FiniteWord;

/// `g(i) = |a₁⋯a_i|₁` for `i = 0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordGraph {
    pub values: Vec<u64>,
}

impl WordGraph {
    pub fn of(u: &FiniteWord) -> Self {
        WordGraph { values: u.prefix_weights().into_iter().map(u64::from).collect() }
    }

    pub fn g(&self, i: usize) -> u64 {
        self.values[i]
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("i\tg\n");
        for (i, g) in self.values.iter().enumerate() {
            s.push_str(&format!("{i}\t{g}\n"));
        }
        s
    }
}

pub fn word_graph(w: &InfiniteWordSpec, n: usize) -> Result<WordGraph> {
    Ok(WordGraph::of(&w.prefix(n)?))
}

/// Values `g(i) - αi` for `i = 0..=|v|`, exactly.
pub fn deviations(v: &FiniteWord, alpha: &Slope) -> Vec<QuadraticNumber> {
    let a = alpha.value();
    let mut out = Vec::with_capacity(v.len() + 1);
    let mut cur = QuadraticNumber::zero();
    out.push(cur);
    for letter in v.iter() {
        cur = cur + QuadraticNumber::integer(letter as i128) - a;
        out.push(cur);
    }
    out
}

/// `max_i (g(i) - αi) - min_i (g(i) - αi)` over `0 ≤ i ≤ |v|`.
pub fn width(v: &FiniteWord, alpha: &Slope) -> QuadraticNumber {
    let d = deviations(v, alpha);
    let hi = *d.iter().max().expect("nonempty");
    let lo = *d.iter().min().expect("nonempty");
    hi - lo
}

/// Number of strict sign changes of `g(i) - αi` along `i = 1..=|v|`, skipping zeros.
pub fn sign_changes(v: &FiniteWord, alpha: &Slope) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for d in deviations(v, alpha).into_iter().skip(1) {
        let s = d.signum();
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RauzyEdge {
    pub from: usize,
    pub to: usize,
    /// The letter `a` in `ua = bv`.
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RauzyGraph {
    pub order: usize,
    pub vertices: Vec<FiniteWord>,
    pub edges: Vec<RauzyEdge>,
}

impl RauzyGraph {
    /// Rauzy graph of order `n` of the factors of `u`.
    pub fn of(u: &FiniteWord, n: usize) -> Self {
        let vertices: Vec<FiniteWord> = u.factors(n).unwrap_or_default().into_iter().collect();
        let index: HashMap<&FiniteWord, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let longer: Vec<FiniteWord> = u.factors(n + 1).unwrap_or_default().into_iter().collect();
        let edges = longer
            .par_iter()
            .map(|f| RauzyEdge {
                from: index[&f.prefix(n)],
                to: index[&f.suffix_from(1)],
                label: f.get(n),
            })
            .collect();
        RauzyGraph { order: n, vertices, edges }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.to == v).count()
    }

    /// Two cycles sharing exactly one vertex, the only branching vertex.
    ///
    /// Returns that vertex.
    pub fn two_cycles_at_one_vertex(&self) -> Option<&FiniteWord> {
        if self.edges.len() != self.vertices.len() + 1 {
            return None;
        }
        let branching: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| self.out_degree(v) != 1 || self.in_degree(v) != 1)
            .collect();
        let [hub] = branching[..] else { return None };
        if self.out_degree(hub) != 2 || self.in_degree(hub) != 2 {
            return None;
        }
        // both out-edges of the hub must return to it and together visit every vertex
        let mut seen = vec![false; self.vertices.len()];
        seen[hub] = true;
        for start in self.edges.iter().filter(|e| e.from == hub) {
            let mut v = start.to;
            let mut steps = 0;
            while v != hub {
                if seen[v] || steps > self.vertices.len() {
                    return None;
                }
                seen[v] = true;
                v = self.edges.iter().find(|e| e.from == v)?.to;
                steps += 1;
            }
        }
        seen.iter().all(|&s| s).then(|| &self.vertices[hub])
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph rauzy_{} {{\n", self.order);
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{}\"];\n", display_or_eps(v)));
        }
        for e in &self.edges {
            s.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", e.from, e.to, e.label));
        }
        s.push_str("}\n");
        s
    }
}

fn display_or_eps(v: &FiniteWord) -> String {
    if v.is_empty() {
        "ε".into()
    } else {
        v.to_string()
    }
}

fn sampled(w: &InfiniteWordSpec, n: usize, sample: usize) -> Result<FiniteWord> {
    if sample < 2 * n {
        return Err(Error::config(format!("sample length {sample} must be at least twice {n}")));
    }
    w.prefix(sample)
}

pub fn rauzy_graph(w: &InfiniteWordSpec, n: usize, sample: usize) -> Result<RauzyGraph> {
    Ok(RauzyGraph::of(&sampled(w, n + 1, sample)?, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialFactors {
    pub left: Vec<FiniteWord>,
    pub right: Vec<FiniteWord>,
    pub bispecial: Vec<FiniteWord>,
}

pub fn special_factors_window(u: &FiniteWord, n: usize) -> SpecialFactors {
    let longer = u.factors(n + 1).unwrap_or_default();
    let mut right_ext: BTreeMap<FiniteWord, u8> = BTreeMap::new();
    let mut left_ext: BTreeMap<FiniteWord, u8> = BTreeMap::new();
    for f in &longer {
        *right_ext.entry(f.prefix(n)).or_default() |= 1 << f.get(n);
        *left_ext.entry(f.suffix_from(1)).or_default() |= 1 << f.get(0);
    }
    let pick = |m: &BTreeMap<FiniteWord, u8>| -> Vec<FiniteWord> {
        m.iter().filter(|(_, &b)| b == 3).map(|(k, _)| k.clone()).collect()
    };
    let left = pick(&left_ext);
    let right = pick(&right_ext);
    let rs: BTreeSet<&FiniteWord> = right.iter().collect();
    let bispecial = left.iter().filter(|v| rs.contains(v)).cloned().collect();
    SpecialFactors { left, right, bispecial }
}

pub fn special_factors(w: &InfiniteWordSpec, n: usize, sample: usize) -> Result<SpecialFactors> {
    Ok(special_factors_window(&sampled(w, n + 1, sample)?, n))
}

/// `ρ(n)` on the first `sample` letters.
pub fn factor_complexity(w: &InfiniteWordSpec, n: usize, sample: usize) -> Result<usize> {
    Ok(sampled(w, n, sample)?.factor_count(n))
}

/// Smallest `n ≤ max_len` at which no factor of `u` has two right extensions.
///
/// Then every letter after position `n` is determined by the preceding `n`
/// letters, so the window is a prefix of an ultimately periodic word.
pub fn periodicity_order(u: &FiniteWord, max_len: usize) -> Option<usize> {
    (0..=max_len.min(u.len().saturating_sub(1))).find(|&n| special_factors_window(u, n).right.is_empty())
}

/// Complexity stall within the window, in the sense of [`periodicity_order`].
pub fn is_window_periodic(w: &InfiniteWordSpec, max_len: usize, sample: usize) -> Result<bool> {
    Ok(periodicity_order(&sampled(w, max_len, sample)?, max_len).is_some())
}

/// Some shift of the window written as a product of a standard pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftFactorization {
    pub pair: StandardPair,
    /// `w′` of the shortest unbalanced pair `0w′0`, `1w′1`.
    pub core: FiniteWord,
    pub shift_offset: usize,
    /// Token `0` stands for `x`, `1` for `y`.
    pub tokens: FiniteWord,
    /// Letters after the offset covered by whole tokens.
    pub covered: usize,
    pub has_xx: bool,
    pub has_yy: bool,
}

impl ShiftFactorization {
    pub fn morphism(&self) -> BinaryMorphism {
        BinaryMorphism::new(self.pair.x.clone(), self.pair.y.clone())
    }
}

/// Step cap for the backtracking tokenizer.
const TOKENIZE_STEP_CAP: usize = 50_000_000;

/// Splits `u` into tokens `x`/`y`, longer first, with backtracking.
///
/// A trailing proper prefix of a token is allowed. Returns the tokens and
/// the covered length, or the furthest position reached on failure.
pub fn tokenize(u: &FiniteWord, x: &FiniteWord, y: &FiniteWord) -> std::result::Result<(FiniteWord, usize), usize> {
    let order: [(u8, &FiniteWord); 2] = if x.len() >= y.len() { [(0, x), (1, y)] } else { [(1, y), (0, x)] };
    let n = u.len();
    let tail_ok = |pos: usize| {
        let rest = n - pos;
        [x, y].iter().any(|t| rest < t.len() && u.occurs_at(&t.prefix(rest), pos))
    };
    // stack of (position, next choice index)
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    let mut tokens = FiniteWord::new();
    let mut furthest = 0;
    let mut steps = 0usize;
    while let Some(&mut (pos, ref mut choice)) = stack.last_mut() {
        steps += 1;
        if steps > TOKENIZE_STEP_CAP {
            return Err(furthest);
        }
        furthest = furthest.max(pos);
        if *choice == 0 && (pos == n || tail_ok(pos)) {
            return Ok((tokens, pos));
        }
        if *choice < 2 {
            let (letter, t) = order[*choice];
            *choice += 1;
            if pos + t.len() <= n && u.occurs_at(t, pos) {
                tokens.push(letter);
                stack.push((pos + t.len(), 0));
            }
            continue;
        }
        stack.pop();
        if !stack.is_empty() {
            tokens.truncate(tokens.len() - 1);
        }
    }
    Err(furthest)
}

/// Factorization of a shift of the window `u` over the standard pair
/// determined by its shortest unbalanced pair.
pub fn factorize_window(u: &FiniteWord, max_len: usize) -> Result<ShiftFactorization> {
    let unbalanced = shortest_unbalanced_pair_window(u, max_len).ok_or_else(|| {
        Error::NotApplicable(format!("window of {} letters is balanced up to length {max_len}", u.len()))
    })?;
    let core = unbalanced.core;
    let pair = standard_pair_factorization(&core)?;
    let shift_offset = if core.is_empty() {
        0
    } else {
        *u.occurrences(&core).first().ok_or_else(|| Error::NotApplicable("core does not occur".into()))?
    };
    let shifted = u.suffix_from(shift_offset);
    let (tokens, covered) = tokenize(&shifted, &pair.x, &pair.y).map_err(|at| {
        Error::NotApplicable(format!(
            "tokenization over ({}, {}) fails at position {}",
            pair.x,
            pair.y,
            shift_offset + at
        ))
    })?;
    let has_xx = tokens.contains(&FiniteWord::from_bits([0, 0]));
    let has_yy = tokens.contains(&FiniteWord::from_bits([1, 1]));
    Ok(ShiftFactorization { pair, core, shift_offset, tokens, covered, has_xx, has_yy })
}

pub fn factorize_over_standard_pair(w: &InfiniteWordSpec, sample: usize) -> Result<ShiftFactorization> {
    factorize_window(&w.prefix(sample)?, sample / 2)
}

/// Distinct first returns to `u` among its occurrences in the window.
pub fn return_words_window(window: &FiniteWord, u: &FiniteWord) -> Result<BTreeSet<FiniteWord>> {
    let occ = window.occurrences(u);
    if occ.len() < 2 {
        return Err(Error::InsufficientOccurrences(format!(
            "{} occurs {} time(s) in a window of {} letters",
            display_or_eps(u),
            occ.len(),
            window.len()
        )));
    }
    Ok(occ.windows(2).map(|p| window.slice(p[0], p[1] - p[0])).collect())
}

pub fn return_words(w: &InfiniteWordSpec, u: &FiniteWord, sample: usize) -> Result<BTreeSet<FiniteWord>> {
    return_words_window(&w.prefix(sample)?, u)
}

/// Prefix-nested factors `u₁ ⊑ u₂ ⊑ ⋯` of the window whose end-deviations
/// `|u_j|₁ - α|u_j|` alternate in sign, each `u_{j+1}` a (multiple) return to `u_j`.
///
/// Stops once `g(i) - αi` along the last factor changes sign `crossings` times.
pub fn line_crossing_prefix(w: &InfiniteWordSpec, alpha: &Slope, crossings: usize, sample: usize) -> Result<FiniteWord> {
    let window = w.prefix(sample)?;
    if window.is_empty() {
        return Err(Error::config("empty window"));
    }
    let a = alpha.value();
    let deviation = |v: &FiniteWord| QuadraticNumber::integer(v.weight() as i128) - a.mul_int(v.len() as i128);
    let mut cur = window.prefix(1);
    while sign_changes(&cur, alpha) < crossings {
        let sign = deviation(&cur).signum();
        let occ = window.occurrences(&cur);
        let next = occ
            .iter()
            .enumerate()
            .flat_map(|(i, &start)| occ[i + 1..].iter().map(move |&end| (start, end)))
            .filter(|&(start, end)| end - start > cur.len() && end <= window.len())
            .map(|(start, end)| window.slice(start, end - start))
            .find(|v| {
                let s = deviation(v).signum();
                if sign >= 0 { s < 0 } else { s > 0 }
            });
        match next {
            Some(v) => cur = v,
            None => {
                return Err(Error::InsufficientOccurrences(format!(
                    "no return to a factor of length {} crosses the line within {} letters",
                    cur.len(),
                    window.len()
                )))
            }
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{balance_coefficient_window, empirical_profile};
    use crate::word::w;
    use proptest::prelude::*;

    fn spec(s: &str) -> InfiniteWordSpec {
        s.parse().unwrap()
    }

    #[test]
    fn word_graph_examples() {
        assert_eq!(word_graph(&spec("tm"), 8).unwrap().g(8), 4);
        assert_eq!(word_graph(&spec("fib"), 8).unwrap().g(8), 3);
        for s in ["fib", "tm", "periodic:1"] {
            assert_eq!(word_graph(&spec(s), 5).unwrap().g(0), 0);
        }
        assert!(word_graph(&spec("tm"), 2).unwrap().to_tsv().starts_with("i\tg\n0\t0\n1\t0\n2\t1"));
    }

    #[test]
    fn width_examples() {
        assert!(width(&w("0000"), &Slope::rational(0, 1).unwrap()).is_zero());
        assert_eq!(width(&w("01"), &Slope::rational(1, 2).unwrap()), "1/2".parse().unwrap());
        let u = spec("fib").prefix(400).unwrap();
        let two = QuadraticNumber::integer(2);
        for n in 1..=50 {
            for f in u.factors(n).unwrap() {
                assert!(width(&f, &Slope::golden()) < two);
            }
        }
    }

    #[test]
    fn rauzy_examples() {
        let g = rauzy_graph(&spec("fib"), 1, 100).unwrap();
        assert_eq!(g.vertices, vec![w("0"), w("1")]);
        assert_eq!(g.edges.len(), 3);
        let s = special_factors(&spec("fib"), 1, 100).unwrap();
        assert_eq!(s.right, vec![w("0")]);
        for n in 1..30 {
            let s = special_factors(&spec("fib"), n, 2000).unwrap();
            assert_eq!((s.left.len(), s.right.len()), (1, 1), "n = {n}");
        }
        // (010, 01) product: order |w| = 3 graph is two cycles through w = 010
        let tokens = spec("fib").prefix(300).unwrap();
        let u = BinaryMorphism::new(w("010"), w("01")).apply(&tokens);
        let g = RauzyGraph::of(&u, 3);
        assert_eq!(g.two_cycles_at_one_vertex(), Some(&w("010")));
        assert!(g.to_dot().contains("->"));
    }

    #[test]
    fn complexity_examples() {
        for n in 1..=10 {
            assert_eq!(factor_complexity(&spec("fib"), n, 400).unwrap(), n + 1);
        }
        assert_eq!(factor_complexity(&spec("periodic:01"), 5, 20).unwrap(), 2);
        let tm: Vec<usize> = (1..=3).map(|n| factor_complexity(&spec("tm"), n, 64).unwrap()).collect();
        assert_eq!(tm, vec![2, 4, 6]);
        assert!(is_window_periodic(&spec("periodic:01"), 8, 64).unwrap());
        assert!(!is_window_periodic(&spec("fib"), 50, 1000).unwrap());
        assert!(!is_window_periodic(&spec("tm"), 50, 1000).unwrap());
        assert!(matches!(factor_complexity(&spec("fib"), 10, 19), Err(Error::Config(_))));
    }

    #[test]
    fn factorization_examples() {
        let f = factorize_over_standard_pair(&spec("periodic:0011"), 64).unwrap();
        assert_eq!((f.pair.x.clone(), f.pair.y.clone()), (w("0"), w("1")));
        assert_eq!(f.tokens, spec("periodic:0011").prefix(64).unwrap());
        assert!(f.has_xx && f.has_yy);
        let f = factorize_over_standard_pair(&spec("tm"), 256).unwrap();
        assert_eq!((f.pair.x.clone(), f.pair.y.clone()), (w("0"), w("1")));
        assert!(f.has_xx && f.has_yy);
        assert!(matches!(factorize_over_standard_pair(&spec("fib"), 256), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn factorization_recovers_a_product() {
        let pair = (w("010"), w("01"));
        let tokens = spec("tm").prefix(500).unwrap();
        let u = BinaryMorphism::new(pair.0.clone(), pair.1.clone()).apply(&tokens);
        let f = factorize_window(&u, 200).unwrap();
        assert_eq!((f.pair.x.clone(), f.pair.y.clone()), pair);
        assert_eq!(f.core, w("010"));
        assert!(f.has_xx && f.has_yy);
        assert_eq!(f.morphism().apply(&f.tokens), u.slice(f.shift_offset, f.covered));
        assert!(u.len() - f.shift_offset - f.covered < 3);
    }

    #[test]
    fn returns_and_crossings() {
        assert_eq!(return_words(&spec("fib"), &w("0"), 200).unwrap(), [w("0"), w("01")].into_iter().collect());
        assert_eq!(return_words(&spec("periodic:01"), &w("01"), 20).unwrap(), [w("01")].into_iter().collect());
        assert!(matches!(return_words(&spec("fib"), &w("11"), 200), Err(Error::InsufficientOccurrences(_))));
        let u = line_crossing_prefix(&spec("fib"), &Slope::golden(), 4, 5000).unwrap();
        assert!(sign_changes(&u, &Slope::golden()) >= 4);
        assert!(spec("fib").prefix(5000).unwrap().contains(&u));
    }

    /// Ultimately periodic with preperiod + period ≤ |u|, checked by brute force.
    fn ultimately_periodic(u: &FiniteWord, order: usize) -> bool {
        let n = u.len();
        (0..n).any(|pre| (1..=n - pre).any(|p| pre + p + order <= n && (pre..n - p).all(|i| u.get(i) == u.get(i + p))))
    }

    proptest! {
        #[test]
        fn rauzy_edges_match_longer_factors(bits in proptest::collection::vec(0u8..2, 2..200), n in 0usize..8) {
            let u = FiniteWord::from_bits(bits);
            prop_assume!(n < u.len());
            let g = RauzyGraph::of(&u, n);
            prop_assert_eq!(g.edges.len(), u.factor_count(n + 1));
        }

        #[test]
        fn stalled_windows_extend_periodically(seed in proptest::collection::vec(0u8..2, 1..8), pre in proptest::collection::vec(0u8..2, 0..5), noise in proptest::collection::vec(0u8..2, 0..3)) {
            let period = FiniteWord::from_bits(seed);
            let mut u = FiniteWord::from_bits(pre).concat(&period.repeat(12));
            u = u.concat(&FiniteWord::from_bits(noise));
            if let Some(order) = periodicity_order(&u, 10) {
                prop_assert!(ultimately_periodic(&u, order));
            }
        }

        #[test]
        fn product_words_balanced_below_pair_length(steps in proptest::collection::vec(proptest::bool::ANY, 1..5), which in 0usize..3) {
            let mut pair = StandardPair::root();
            for s in steps {
                pair = if s { pair.gamma() } else { pair.delta() };
            }
            let tokens = spec(["fib", "tm", "dir:2:1,3"][which]).prefix(300).unwrap();
            let u = BinaryMorphism::new(pair.x.clone(), pair.y.clone()).apply(&tokens);
            let below = pair.x.len() + pair.y.len() - 1;
            prop_assert!(balance_coefficient_window(&u, below) <= 1);
            let p = empirical_profile(&u, below);
            prop_assert!((1..=below).all(|n| p.max[n] - p.min[n] <= 1));
        }

        #[test]
        fn factorization_round_trips(bits in proptest::collection::vec(0u8..2, 30..300)) {
            let u = FiniteWord::from_bits(bits);
            if let Ok(f) = factorize_window(&u, u.len() / 2) {
                prop_assert_eq!(f.morphism().apply(&f.tokens), u.slice(f.shift_offset, f.covered));
            }
        }
    }
}
