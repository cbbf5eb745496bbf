//! Named property suites, run by `verify <id>`.
//!
//! Each suite samples its cases deterministically from `seed` and checks
//! them against independent computations on finite windows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{
    check_window, closure_of_periodic, corridor_member, corridor_profile, empirical_profile, primitive_root,
    rational_carpet, window_weights, Verdict,
};
use crate::error::{Error, Result};
use crate::family::{construct_family, default_seed, verify_distinct, FamilyConfig};
use crate::quadratic::{QuadraticNumber, Slope};
use crate::spec::InfiniteWordSpec;
use crate::structure::{factor_complexity, is_window_periodic};
use crate::sturmian::{
    central_decomposition, is_central, rotation_word, standard_pair_factorization, DirectiveSequence, RotationParams,
};
use crate::transforms::flip::{flip_core, flipping_family};
use crate::transforms::morphism::BinaryMorphism;
use crate::transforms::squeeze::{squeeze_window, SqueezeMode, SqueezeParams};
use crate::transforms::traffic::{iterate_f_until_isolated, preimages_f, traffic_f_spec, t_letter};
use crate::word::FiniteWord;

pub const SUITE_IDS: [&str; 13] = [
    "corridor-reflexive",
    "traffic-membership",
    "squeeze-membership",
    "preimage-nn",
    "isolation",
    "sturmian-morphism-closure",
    "rational-carpet",
    "flipping-corridor",
    "family-distinct",
    "periodic-closure",
    "morse-hedlund",
    "central-roundtrip",
    "rotation-vs-directive",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub spec: Option<InfiniteWordSpec>,
    pub window: usize,
    pub seed: u64,
    /// Cap on exhaustive searches.
    pub cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { spec: None, window: 256, seed: 0, cap: crate::transforms::traffic::PREIMAGE_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub id: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seed: u64,
    pub window: usize,
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

/// Canonical id; `preimage-nⁿ` is accepted for `preimage-nn`.
pub fn canonical_id(id: &str) -> Option<&'static str> {
    let id = if id == "preimage-nⁿ" { "preimage-nn" } else { id };
    SUITE_IDS.iter().copied().find(|s| *s == id)
}

pub fn run_suite(id: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let id = canonical_id(id).ok_or_else(|| {
        Error::config(format!("unknown suite {id:?}; known: {}", SUITE_IDS.join(", ")))
    })?;
    if opts.window < 4 {
        return Err(Error::config("suite window must be at least 4"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut t = Tally::new();
    match id {
        "corridor-reflexive" => corridor_reflexive(opts, &mut t)?,
        "traffic-membership" => traffic_membership(opts, &mut rng, &mut t)?,
        "squeeze-membership" => squeeze_membership(opts, &mut t)?,
        "preimage-nn" => preimage_nn(opts, &mut t)?,
        "isolation" => isolation(opts, &mut rng, &mut t)?,
        "sturmian-morphism-closure" => sturmian_morphism_closure(opts, &mut rng, &mut t)?,
        "rational-carpet" => rational_carpet_suite(opts, &mut rng, &mut t)?,
        "flipping-corridor" => flipping_corridor(opts, &mut rng, &mut t)?,
        "family-distinct" => family_distinct(opts, &mut t)?,
        "periodic-closure" => periodic_closure(opts, &mut t)?,
        "morse-hedlund" => morse_hedlund(opts, &mut rng, &mut t)?,
        "central-roundtrip" => central_roundtrip(opts, &mut t)?,
        "rotation-vs-directive" => rotation_vs_directive(opts, &mut t)?,
        _ => unreachable!("canonical id"),
    }
    Ok(SuiteReport {
        id: id.to_string(),
        passed: t.failures.is_empty(),
        cases: t.cases,
        failures: t.failures,
        notes: t.notes,
        seed: opts.seed,
        window: opts.window,
    })
}

fn parse(s: &str) -> InfiniteWordSpec {
    s.parse().expect("built-in spec literal")
}

fn specs_or(opts: &SuiteOptions, defaults: &[&str]) -> Vec<InfiniteWordSpec> {
    match &opts.spec {
        Some(s) => vec![s.clone()],
        None => defaults.iter().map(|s| parse(s)).collect(),
    }
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> FiniteWord {
    FiniteWord::from_bits((0..len).map(|_| rng.gen_range(0..2u8)))
}

/// Non-balanced fixed points with quadratic letter frequencies.
pub fn non_balanced_quadratic_specs() -> Vec<InfiniteWordSpec> {
    ["morphic:0->001111,1->0:0", "morphic:0->0111,1->0:0", "morphic:0->01111,1->0:0"]
        .iter()
        .map(|s| parse(s))
        .collect()
}

fn corridor_reflexive(opts: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let n = opts.window;
    for s in specs_or(opts, &["fib", "tm", "periodic:0011", "morphic:0->001111,1->0:0", "carpet:2/5:tm", "flip:3:10"]) {
        let c = corridor_member(&s, &s, n, 4 * n)?;
        t.check(c.verdict == Verdict::Consistent, || format!("{s} is not consistent with itself"));
    }
    Ok(())
}

fn traffic_membership(opts: &SuiteOptions, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let n = opts.window;
    let mut specs = specs_or(opts, &["fib"]);
    if opts.spec.is_none() {
        for _ in 0..50 {
            let len = rng.gen_range(1..=12);
            specs.push(InfiniteWordSpec::Periodic(random_word(rng, len)));
        }
    }
    for s in specs {
        let profile = corridor_profile(&s, n, 4 * n)?;
        let image = traffic_f_spec(&s, 4 * n)?;
        let c = check_window(&image, &profile);
        t.check(c.verdict == Verdict::Consistent, || format!("F({s}) leaves the corridor: {:?}", c.witness));
        if profile.is_exact() {
            t.check(c.sound, || format!("F({s}) certificate not sound"));
        }
    }
    Ok(())
}

fn squeeze_membership(opts: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let n = opts.window;
    let specs = match &opts.spec {
        Some(s) => vec![s.clone()],
        None => non_balanced_quadratic_specs(),
    };
    for s in specs {
        let alpha = s
            .letter_frequency()
            .ok_or_else(|| Error::config(format!("no closed-form frequency for {s}")))?;
        let alpha = Slope::new(alpha)?;
        let src = s.prefix(16 * n)?;
        let profile = empirical_profile(&src, n);
        for c in ["1/10", "1/2", "1"] {
            for mode in [SqueezeMode::Upper, SqueezeMode::TwoSided] {
                let params = SqueezeParams::new(alpha, c.parse::<QuadraticNumber>()?, mode)?;
                let out = squeeze_window(&src, &params, n)?;
                let cert = check_window(&out.word, &profile);
                t.check(cert.verdict == Verdict::Consistent, || {
                    format!("{mode:?} squeeze of {s} with C = {c}: {:?}", cert.witness)
                });
            }
        }
    }
    Ok(())
}

/// `11(01)ⁿ00`.
pub fn preimage_target(n: usize) -> FiniteWord {
    let mut u = FiniteWord::from_bits([1, 1]);
    u.extend_from(&FiniteWord::from_bits([0, 1]).repeat(n));
    u.extend_from(&FiniteWord::from_bits([0, 0]));
    u
}

fn preimage_nn(opts: &SuiteOptions, t: &mut Tally) -> Result<()> {
    const MAX_WINDOW: usize = 20;
    for n in 0..=2 {
        let target = preimage_target(n);
        let order = n + 1;
        let base = target.len() + 2 * order;
        for pad in 0..=MAX_WINDOW.saturating_sub(base) {
            let pre = preimages_f(&target, order, pad, opts.cap)?;
            t.check(pre.is_empty(), || format!("{target} has an order-{order} preimage of length {}", base + pad));
        }
        if n > 0 {
            let pre = preimages_f(&target, n, 0, opts.cap)?;
            t.check(!pre.is_empty(), || format!("{target} has no order-{n} preimage"));
        }
    }
    let pattern = FiniteWord::from_bits([0, 1]).repeat(3);
    t.check(!preimages_f(&pattern, 1, 0, opts.cap)?.is_empty(), || "(01)³ has no order-1 preimage".into());
    if let Some(s) = &opts.spec {
        let u = s.prefix(opts.window)?;
        if let Some(n) = (0..opts.window / 2).find(|&n| u.contains(&preimage_target(n))) {
            t.note(format!("{s} contains 11(01)^{n}00 and has no preimage of order {}", n + 1));
        }
    }
    Ok(())
}

/// Cyclic `F` on one period.
fn f_cyclic(v: &FiniteWord) -> FiniteWord {
    let q = v.len();
    let tv = FiniteWord::from_bits((0..q).map(|i| t_letter(v.get((i + q - 1) % q), v.get(i), v.get((i + 1) % q))));
    tv.suffix_from(1).concat(&tv.prefix(1))
}

fn cyclic_has_11(v: &FiniteWord) -> bool {
    let q = v.len();
    (0..q).any(|i| v.get(i) == 1 && v.get((i + 1) % q) == 1)
}

fn isolation(opts: &SuiteOptions, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let mut seeds = Vec::new();
    while seeds.len() < 50 {
        let q = rng.gen_range(3..=16);
        let v = random_word(rng, q);
        if 2 * v.weight() < q as u64 && v.repeat(2).contains(&FiniteWord::from_bits([1, 1])) {
            seeds.push(v);
        }
    }
    for v in seeds {
        let mut cur = v.clone();
        let mut expected = 0;
        while cyclic_has_11(&cur) {
            cur = f_cyclic(&cur);
            expected += 1;
        }
        let window = 4 * v.len() + opts.window.min(64);
        let got = iterate_f_until_isolated(&InfiniteWordSpec::Periodic(v.clone()), 4 * v.len() + 8, window)?;
        t.check(got.iterations == Some(expected), || {
            format!("({v})^ω: {:?} iterations, cyclic count {expected}", got.iterations)
        });
    }
    Ok(())
}

/// Random composition of `D`, `E`, `G` of length `1..=max_depth`.
pub fn random_sturmian_morphism(rng: &mut ChaCha8Rng, max_depth: usize) -> BinaryMorphism {
    let gens = [BinaryMorphism::d(), BinaryMorphism::e(), BinaryMorphism::g()];
    let depth = rng.gen_range(1..=max_depth);
    (0..depth).fold(BinaryMorphism::identity(), |acc, _| acc.compose(&gens[rng.gen_range(0..3)]))
}

/// `(y, x)` windows with `y` in the closure of `x`: shifts and traffic images.
fn consistent_pairs(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(String, FiniteWord, FiniteWord)>> {
    let bases = [
        "fib", "tm", "periodic:0011", "periodic:00101", "carpet:1/3:tm", "morphic:0->001111,1->0:0", "dir:2:1,3",
        "periodic:011", "flip:3:1", "rot:(-1+sqrt(2))/1:0",
    ];
    let mut out = Vec::new();
    for b in bases {
        let s = parse(b);
        let x = s.prefix(16 * n)?;
        let shift = rng.gen_range(1..4 * n);
        out.push((format!("shift {shift} of {b}"), s.prefix(shift + 2 * n)?.suffix_from(shift), x.clone()));
        out.push((format!("F({b})"), traffic_f_spec(&s, 2 * n)?, x));
    }
    Ok(out)
}

fn sturmian_morphism_closure(opts: &SuiteOptions, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let n = opts.window;
    let pairs = consistent_pairs(n, rng)?;
    let mut usable = Vec::new();
    for (name, y, x) in pairs {
        if check_window(&y, &empirical_profile(&x, n)).verdict == Verdict::Consistent {
            usable.push((name, y, x));
        } else {
            t.note(format!("{name}: pair not window-consistent, skipped"));
        }
    }
    for _ in 0..100 {
        let f = random_sturmian_morphism(rng, 5);
        for (name, y, x) in &usable {
            let fx = f.apply(x);
            let fy = f.apply(y);
            let profile = empirical_profile(&fx, n.min(fx.len() / 2));
            let c = check_window(&fy, &profile);
            t.check(c.verdict == Verdict::Consistent, || format!("{f} breaks {name}: {:?}", c.witness));
        }
    }
    // a degenerate morphism can break membership
    let f: BinaryMorphism = "0->100001,1->010".parse()?;
    let fx = f.apply(&FiniteWord::from_bits([0, 0, 1, 1]).repeat(64));
    let fz = f.apply(&FiniteWord::from_bits([0, 1]).repeat(128));
    let c = check_window(&fz, &periodic_or_empirical(&fx, 32));
    let w = c.witness.as_ref();
    t.check(
        c.verdict == Verdict::Refuted && w.map(|w| (w.length, w.weight, w.max)) == Some((5, 3, 2)),
        || format!("degenerate morphism example: {c:?}"),
    );
    Ok(())
}

fn periodic_or_empirical(u: &FiniteWord, n: usize) -> crate::abelian::CorridorProfile {
    empirical_profile(u, n)
}

fn rational_carpet_suite(opts: &SuiteOptions, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let n_max = opts.window.min(100);
    for (p, q) in [(1u32, 2u32), (1, 3), (2, 5)] {
        let carpet = rational_carpet(p, q)?;
        let (pp, qq) = (p as i64, q as i64);
        for _ in 0..100 {
            let len = rng.gen_range(2 * n_max / q as usize + 8..=2 * n_max);
            let index = random_word(rng, len);
            let u = carpet.member(&index);
            let both = index.contains(&FiniteWord::from_bits([0, 1])) && index.contains(&FiniteWord::from_bits([1, 0]));
            for n in 1..=n_max {
                let weights = window_weights(&u, n);
                let n = n as i64;
                let within = weights.iter().all(|&w| (qq * w as i64 - n * pp).abs() <= qq);
                t.check(within, || format!("φ({index}) breaks the bound at n = {n}"));
                if both && n % qq == 0 {
                    let c = n * pp / qq;
                    let all = (c - 1..=c + 1).all(|v| v >= 0 && weights.contains(&(v as u64)));
                    t.check(all, || format!("φ({index}) misses a weight near {c} at n = {n}"));
                }
            }
        }
    }
    Ok(())
}

/// Bit sequences compared by the flipping-family frequency check.
pub const FLIP_BITS: (&str, &str) = ("0", "01");

/// Occurrences of `pattern` per letter of `u`.
pub fn occurrence_frequency(u: &FiniteWord, pattern: &FiniteWord) -> f64 {
    u.occurrences(pattern).len() as f64 / u.len() as f64
}

fn flipping_corridor(opts: &SuiteOptions, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let n_max = opts.window.min(200);
    let fib = DirectiveSequence::fibonacci();
    let alpha = Slope::golden().value();
    for _ in 0..20 {
        let blen = rng.gen_range(1..=32);
        let bits = random_word(rng, blen);
        let u = flipping_family(&fib, 3, &bits, 8 * n_max)?;
        for n in 1..=n_max {
            let x = alpha.mul_int(n as i128);
            let (lo, hi) = (x.floor() - 1, x.ceil() + 1);
            let ok = window_weights(&u, n).iter().all(|&w| lo <= w as i128 && w as i128 <= hi);
            t.check(ok, || format!("flip bits {bits} leave [⌊nα⌋-1, ⌈nα⌉+1] at n = {n}"));
        }
    }
    // 1w1 appears at every change between consecutive bits, so the two
    // sequences must differ in their rate of bit changes
    let core = flip_core(&fib, 3)?;
    let one = FiniteWord::from_bits([1]);
    let pattern = one.concat(&core).concat(&one);
    let m = 100_000;
    let a = flipping_family(&fib, 3, &FLIP_BITS.0.parse()?, m)?;
    let b = flipping_family(&fib, 3, &FLIP_BITS.1.parse()?, m)?;
    let (fa, fb) = (occurrence_frequency(&a, &pattern), occurrence_frequency(&b, &pattern));
    let noise = 3.0 / (m as f64).sqrt();
    t.check((fa - fb).abs() > noise, || format!("frequencies of {pattern}: {fa} vs {fb}, noise {noise}"));
    t.note(format!("frequency of {pattern}: bits {} → {fa:.5}, bits {} → {fb:.5}", FLIP_BITS.0, FLIP_BITS.1));
    Ok(())
}

fn family_distinct(opts: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let seed = opts.spec.clone().unwrap_or_else(default_seed);
    let window = (400 * opts.window).max(20_000);
    let run = construct_family(&seed, &FamilyConfig::new(2, window))?;
    if let Some(f) = &run.failure {
        t.check(false, || format!("stage {} failed: {} ({})", f.stage, f.hypothesis, f.detail));
        return Ok(());
    }
    for s in &run.stages {
        t.check(s.length_identity, || format!("stage {}: length identity fails", s.index));
        t.check(s.z_isolated, || format!("stage {}: z has 11", s.index));
        t.check(s.tokens_have_squares, || format!("stage {}: tokens lack 00 or 11", s.index));
        t.check(s.seed_membership.verdict == Verdict::Consistent, || format!("stage {}: x outside the seed corridor", s.index));
        if let Some(c) = &s.chain_membership {
            t.check(c.verdict == Verdict::Consistent, || format!("stage {}: φ(z) outside the corridor of the previous z", s.index));
        }
        t.note(format!("stage {}: |x y| = {}, φ = {}", s.index, s.pair_length, s.phi));
    }
    let rep = verify_distinct(&run.stages)?;
    t.check(rep.growth.iter().all(|&g| g), || format!("pair lengths do not grow: {:?}", rep.growth));
    t.check(rep.unbalanced_matches.iter().all(|&m| m), || format!("unbalanced lengths {:?}", rep.unbalanced_lengths));
    t.check(rep.all_distinct, || "stage windows share factor sets".into());
    Ok(())
}

fn closure_oracle(v: &FiniteWord) -> Vec<FiniteWord> {
    let q = v.len();
    let reference = empirical_profile(&v.repeat(4), 2 * q);
    let mut reps = std::collections::BTreeSet::new();
    for key in 0..(1u64 << q) {
        let u = FiniteWord::from_key(key, q);
        let p = empirical_profile(&u.repeat(4), 2 * q);
        if (1..=2 * q).all(|n| p.min[n] >= reference.min[n] && p.max[n] <= reference.max[n]) {
            let r = primitive_root(&u);
            reps.insert((r.len(), r));
        }
    }
    reps.into_iter().map(|(_, r)| r).collect()
}

fn periodic_closure(opts: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let periods: Vec<FiniteWord> = match &opts.spec {
        Some(s) => vec![s
            .period_word()
            .ok_or_else(|| Error::config(format!("{s} is not purely periodic")))?],
        None => ["01", "0011", "001", "00101", "0001011", "011010"].iter().map(|s| s.parse()).collect::<Result<_>>()?,
    };
    for v in periods {
        let c = closure_of_periodic(&v, crate::abelian::CLOSURE_STATE_CAP.min(opts.cap))?;
        if v.len() <= 14 {
            t.check(c.representatives == closure_oracle(&v), || format!("closure of ({v})^ω differs from enumeration"));
        }
        let shift_closed = c.representatives.iter().all(|r| {
            let rotated = r.suffix_from(1).concat(&r.prefix(1));
            c.representatives.contains(&rotated)
        });
        t.check(shift_closed, || format!("closure of ({v})^ω is not shift-closed"));
        t.note(format!("({v})^ω: {} representatives", c.representatives.len()));
    }
    if opts.spec.is_none() {
        let two = closure_of_periodic(&"01".parse()?, 1000)?;
        t.check(two.representatives == vec!["01".parse()?, "10".parse()?], || "closure of (01)^ω".into());
        let four = closure_of_periodic(&"0011".parse()?, 1000)?;
        t.check(four.representatives.contains(&"01".parse()?), || "closure of (0011)^ω lacks (01)^ω".into());
    }
    Ok(())
}

fn morse_hedlund(opts: &SuiteOptions, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let n = opts.window.min(50);
    if let Some(s) = &opts.spec {
        let flag = is_window_periodic(s, n, 8 * n)?;
        t.note(format!("{s}: periodic flag {flag}"));
        t.check(true, String::new);
        return Ok(());
    }
    let fib = parse("fib");
    for k in 1..=n {
        let r = factor_complexity(&fib, k, 40 * n)?;
        t.check(r == k + 1, || format!("ρ_fib({k}) = {r}"));
    }
    t.check(!is_window_periodic(&fib, n, 40 * n)?, || "Fibonacci flagged periodic".into());
    t.check(!is_window_periodic(&parse("tm"), n, 40 * n)?, || "Thue–Morse flagged periodic".into());
    t.check(is_window_periodic(&parse("periodic:01"), n, 4 * n)?, || "(01)^ω not flagged".into());
    for _ in 0..20 {
        let len = rng.gen_range(1..=10);
        let v = random_word(rng, len);
        let flagged = is_window_periodic(&InfiniteWordSpec::Periodic(v.clone()), n.max(12), 8 * n.max(12))?;
        t.check(flagged, || format!("({v})^ω not flagged"));
    }
    Ok(())
}

fn central_roundtrip(opts: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let max_len = opts.window.min(14);
    for len in 0..=max_len {
        for key in 0..(1u64 << len) {
            let w = FiniteWord::from_key(key, len);
            if !is_central(&w) {
                continue;
            }
            let d = central_decomposition(&w)?;
            if !d.letter_power {
                let periodic = |p: usize| (p..w.len()).all(|i| w.get(i) == w.get(i - p));
                t.check(periodic(d.k) && periodic(d.l) && d.k + d.l == w.len() + 2, || {
                    format!("{w}: periods {} and {} do not fit", d.k, d.l)
                });
                let ten = FiniteWord::from_bits([1, 0]);
                let zo = FiniteWord::from_bits([0, 1]);
                t.check(d.p.concat(&ten).concat(&d.q) == w && d.q.concat(&zo).concat(&d.p) == w, || {
                    format!("{w} ≠ p10q = q01p")
                });
            }
            let pair = standard_pair_factorization(&w)?;
            t.check(pair.is_standard() && pair.product() == w.concat(&FiniteWord::from_bits([0, 1])), || {
                format!("standard pair of {w} does not multiply to w01")
            });
        }
    }
    Ok(())
}

/// Quadratic slopes used by the rotation check.
pub fn quadratic_slopes() -> Vec<Slope> {
    ["(3-sqrt(5))/2", "(-1+sqrt(2))/1", "(-1+sqrt(3))/2", "(-2+sqrt(7))/1", "(4-sqrt(10))/1"]
        .iter()
        .map(|s| Slope::new(s.parse::<QuadraticNumber>().expect("literal")).expect("slope"))
        .collect()
}

fn rotation_vs_directive(opts: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let len = (40 * opts.window).max(1000);
    let slopes = match &opts.spec {
        Some(s) => vec![s
            .sturmian_slope()
            .ok_or_else(|| Error::config(format!("{s} has no irrational slope")))?],
        None => quadratic_slopes(),
    };
    for a in slopes {
        let rot = rotation_word(&RotationParams::new(a, a.value()), len)?;
        let dir = DirectiveSequence::from_slope(&a)?;
        t.check(rot == dir.prefix(len)?, || format!("slope {a}: rotation and {dir} disagree"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_windows() {
        for id in SUITE_IDS {
            let window = if id == "family-distinct" { 64 } else { 32 };
            let r = run_suite(id, &SuiteOptions { window, ..SuiteOptions::default() }).unwrap();
            assert!(r.passed, "{id}: {:?}", r.failures);
            assert!(r.cases > 0, "{id}");
        }
    }

    #[test]
    fn ids_and_errors() {
        assert_eq!(canonical_id("preimage-nⁿ"), Some("preimage-nn"));
        assert!(matches!(run_suite("nope", &SuiteOptions::default()), Err(Error::Config(_))));
        let o = SuiteOptions { spec: Some(parse("tm")), ..SuiteOptions::default() };
        assert!(matches!(run_suite("rotation-vs-directive", &o), Err(Error::Config(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let o = SuiteOptions { window: 16, seed: 7, ..SuiteOptions::default() };
        assert_eq!(run_suite("isolation", &o).unwrap(), run_suite("isolation", &o).unwrap());
    }
}
