//! Recursive construction of words `x_n ∈ A(x)` with pairwise distinct
//! factor sets, starting from a non-balanced seed.
//!
//! Stage `n` holds `z_n` (all `1`s isolated), `ψ_n` and `x_n = ψ_n(z_n)`.
//! Factorizing a shift of `z_n` over a standard pair `(x, y)` gives the
//! token word `y_{n+1}` and `φ_{n+1}: 0 ↦ x, 1 ↦ y` (composed with `E` when
//! the tokens have `1`-frequency at least `1/2`); then `ψ_{n+1} = ψ_n ∘ φ_{n+1}`
//! and `z_{n+1}` is an iterate of `F` on `y_{n+1}` with isolated `1`s.
//! Everything is computed on finite windows.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{check_window, empirical_profile, shortest_unbalanced_pair_window, MembershipCertificate};
use crate::error::{Error, Result};
use crate::spec::InfiniteWordSpec;
use crate::structure::factorize_window;
use crate::transforms::morphism::BinaryMorphism;
use crate::transforms::traffic::traffic_f_window;
use crate::word::FiniteWord;

/// The fixed point of `0 ↦ 001111, 1 ↦ 0`.
pub fn default_seed() -> InfiniteWordSpec {
    "morphic:0->001111,1->0:0".parse().expect("valid literal")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub depth: usize,
    /// Letters of the seed sampled; also caps every `x_n` window.
    pub window: usize,
    /// Longest factor used in corridor checks.
    pub check_len: usize,
    /// Bound on `F` iterations per isolation step.
    pub max_f_iterations: usize,
}

impl FamilyConfig {
    pub fn new(depth: usize, window: usize) -> Self {
        FamilyConfig { depth, window, check_len: (window / 4).min(256), max_f_iterations: window / 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preprocessing {
    /// `E` was applied to the seed because its window has `1`-frequency `≥ 1/2`.
    pub letter_exchange: bool,
    pub f_iterations: usize,
    pub seed_frequency: Ratio<u64>,
    /// `(window, balance coefficient)` of seed prefixes.
    pub seed_balance: Vec<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyStage {
    pub index: usize,
    pub x_window: FiniteWord,
    pub z_window: FiniteWord,
    /// Token window `y_{n+1}` of the factorization of `z_n`.
    pub y_window: FiniteWord,
    /// `φ_{n+1}`.
    pub phi: BinaryMorphism,
    /// `ψ_n`.
    pub psi: BinaryMorphism,
    /// `|ψ_{n+1}(01)|`, the length of the pair `x_n y_n`.
    pub pair_length: usize,
    /// Shift of `z_n` that was factorized.
    pub shift_offset: usize,
    /// `φ_{n+1}` includes `E`.
    pub exchanged: bool,
    /// `1`-frequency of the raw token window.
    pub token_frequency: Ratio<u64>,
    /// `1/2` minus the frequency used for the `E` decision, after exchange.
    pub frequency_margin: Ratio<i64>,
    /// `|φ(01)|₀·|ψ_n(0)| + |φ(01)|₁·|ψ_n(1)| = |ψ_{n+1}(01)|`.
    pub length_identity: bool,
    /// `y_{n+1}` contains `00` and `11`.
    pub tokens_have_squares: bool,
    /// No `11` in `z_n`.
    pub z_isolated: bool,
    /// `x_n` (in the seed's alphabet) against the seed corridor.
    pub seed_membership: MembershipCertificate,
    /// `φ_n(z_n)` against `z_{n-1}`; absent at stage 0.
    pub chain_membership: Option<MembershipCertificate>,
    /// `F` iterations that produced `z_n` from `y_n` (or from the seed).
    pub f_iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFailure {
    pub stage: usize,
    pub hypothesis: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRun {
    pub seed: InfiniteWordSpec,
    pub config: FamilyConfig,
    pub preprocessing: Preprocessing,
    pub stages: Vec<FamilyStage>,
    pub failure: Option<StageFailure>,
}

impl FamilyRun {
    pub fn completed(&self) -> bool {
        self.failure.is_none() && self.stages.len() == self.config.depth + 1
    }
}

fn frequency(u: &FiniteWord) -> Ratio<u64> {
    Ratio::new(u.weight(), u.len().max(1) as u64)
}

fn isolate(mut u: FiniteWord, max_iter: usize) -> (FiniteWord, Option<usize>) {
    let eleven = FiniteWord::from_bits([1, 1]);
    for k in 0..=max_iter {
        if !u.contains(&eleven) {
            return (u, Some(k));
        }
        if k == max_iter || u.len() < 3 {
            break;
        }
        u = traffic_f_window(&u).expect("window of at least two letters");
    }
    (u, None)
}

/// State carried into a stage: `z_n`, `ψ_n` and the check against `z_{n-1}`.
struct Carry {
    z: FiniteWord,
    psi: BinaryMorphism,
    chain: Option<MembershipCertificate>,
    f_iterations: usize,
}

pub fn construct_family(seed: &InfiniteWordSpec, config: &FamilyConfig) -> Result<FamilyRun> {
    if config.window < 64 || config.check_len == 0 || 2 * config.check_len > config.window {
        return Err(Error::config(format!(
            "family window {} / check length {} out of range",
            config.window, config.check_len
        )));
    }
    let seed_window = seed.prefix(config.window)?;
    let seed_profile = empirical_profile(&seed_window, config.check_len);
    let seed_frequency = frequency(&seed_window);
    let letter_exchange = 2 * seed_window.weight() >= seed_window.len() as u64;
    let mut seed_balance = Vec::new();
    let mut w = 16;
    while w <= config.window.min(1 << 14) {
        seed_balance.push((w, crate::abelian::balance_coefficient_window(&seed_window.prefix(w), w / 2)));
        w *= 4;
    }
    let oriented = if letter_exchange { seed_window.complement() } else { seed_window.clone() };
    let (z0, iters) = isolate(oriented, config.max_f_iterations);
    let mut run = FamilyRun {
        seed: seed.clone(),
        config: config.clone(),
        preprocessing: Preprocessing {
            letter_exchange,
            f_iterations: iters.unwrap_or(config.max_f_iterations),
            seed_frequency,
            seed_balance,
        },
        stages: Vec::new(),
        failure: None,
    };
    if iters.is_none() {
        run.failure = Some(StageFailure {
            stage: 0,
            hypothesis: "isolated 1s after finitely many F iterations".into(),
            detail: format!("11 persists after {} iterations", config.max_f_iterations),
        });
        return Ok(run);
    }
    let mut carry = Carry { z: z0, psi: BinaryMorphism::identity(), chain: None, f_iterations: iters.unwrap_or(0) };
    for n in 0..=config.depth {
        match stage(n, carry, config, letter_exchange, &seed_profile) {
            Ok((st, next)) => {
                run.stages.push(st);
                match next {
                    Ok(c) => carry = c,
                    Err(f) => {
                        if n < config.depth {
                            run.failure = Some(f);
                        }
                        break;
                    }
                }
            }
            Err(f) => {
                run.failure = Some(f);
                break;
            }
        }
    }
    Ok(run)
}

type StageResult = std::result::Result<(FamilyStage, std::result::Result<Carry, StageFailure>), StageFailure>;

fn stage(
    n: usize,
    carry: Carry,
    config: &FamilyConfig,
    letter_exchange: bool,
    seed_profile: &crate::abelian::CorridorProfile,
) -> StageResult {
    let fail = |stage: usize, hypothesis: &str, detail: String| StageFailure { stage, hypothesis: hypothesis.into(), detail };
    let Carry { z, psi, chain, f_iterations } = carry;
    let z_isolated = !z.contains(&FiniteWord::from_bits([1, 1]));
    let x_window = {
        let src_len = psi.source_len_for(config.window).unwrap_or(z.len()).min(z.len());
        let mut x = psi.apply(&z.prefix(src_len));
        x.truncate(config.window);
        x
    };
    let in_seed_alphabet = if letter_exchange { x_window.complement() } else { x_window.clone() };
    let seed_membership = check_window(&in_seed_alphabet, seed_profile);

    let fac = factorize_window(&z, z.len() / 2)
        .map_err(|e| fail(n, "shift of z_n factorizes over a standard pair", e.to_string()))?;
    let raw_tokens = fac.tokens.clone();
    let token_frequency = frequency(&raw_tokens);
    let exchanged = 2 * raw_tokens.weight() >= raw_tokens.len() as u64;
    let (phi, y) = if exchanged {
        (fac.morphism().compose(&BinaryMorphism::e()), raw_tokens.complement())
    } else {
        (fac.morphism(), raw_tokens)
    };
    let used = frequency(&y);
    let frequency_margin = Ratio::new(1, 2) - Ratio::new(*used.numer() as i64, *used.denom() as i64);
    let tokens_have_squares = fac.has_xx && fac.has_yy;
    let psi_next = psi.compose(&phi);
    let pair_length = psi_next.image0.len() + psi_next.image1.len();
    let phi01 = phi.image0.concat(&phi.image1);
    let ones = phi01.weight() as usize;
    let zeros = phi01.len() - ones;
    let length_identity = zeros * psi.image0.len() + ones * psi.image1.len() == pair_length;

    let st = FamilyStage {
        index: n,
        x_window,
        z_window: z.clone(),
        y_window: y.clone(),
        phi: phi.clone(),
        psi,
        pair_length,
        shift_offset: fac.shift_offset,
        exchanged,
        token_frequency,
        frequency_margin,
        length_identity,
        tokens_have_squares,
        z_isolated,
        seed_membership,
        chain_membership: chain,
        f_iterations,
    };
    if !tokens_have_squares {
        return Err(fail(n, "token word contains 00 and 11", format!("tokens over ({}, {})", phi.image0, phi.image1)));
    }
    if n == config.depth {
        return Ok((st, Err(fail(n + 1, "depth reached", String::new()))));
    }
    let (z_next, iters) = isolate(y, config.max_f_iterations);
    let Some(iters) = iters else {
        return Ok((st, Err(fail(n + 1, "isolated 1s after finitely many F iterations", format!("{} letters left", z_next.len())))));
    };
    if z_next.len() < 64 {
        return Ok((st, Err(fail(n + 1, "window long enough for the next stage", format!("{} letters left", z_next.len())))));
    }
    let image = phi.apply(&z_next);
    let max_len = config.check_len.min(z.len() / 2);
    let chain_cert = check_window(&image, &empirical_profile(&z, max_len));
    Ok((st, Ok(Carry { z: z_next, psi: psi_next, chain: Some(chain_cert), f_iterations: iters })))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistinctVerdict {
    Distinct,
    NotDistinct,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairComparison {
    pub m: usize,
    pub n: usize,
    pub length: usize,
    pub verdict: DistinctVerdict,
    /// A factor of exactly one of the two windows.
    pub witness: Option<FiniteWord>,
    /// Suggested window when inconclusive.
    pub required_window: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinctnessReport {
    /// `|x_{n+1}y_{n+1}| > |x_n y_n|` for consecutive stages.
    pub growth: Vec<bool>,
    /// Length of the shortest unbalanced pair found in each `x_n` window.
    pub unbalanced_lengths: Vec<Option<usize>>,
    /// That length equals `|x_n y_n|`.
    pub unbalanced_matches: Vec<bool>,
    pub pairs: Vec<PairComparison>,
    pub all_distinct: bool,
}

fn factor_set(u: &FiniteWord, n: usize) -> BTreeSet<FiniteWord> {
    u.factors(n).unwrap_or_default()
}

/// Compares the length-`length` factor sets of two windows.
pub fn compare_windows(a: &FiniteWord, b: &FiniteWord, length: usize) -> (DistinctVerdict, Option<FiniteWord>) {
    if a.len() < length || b.len() < length {
        return (DistinctVerdict::Inconclusive, None);
    }
    let fa = factor_set(a, length);
    let fb = factor_set(b, length);
    match fa.symmetric_difference(&fb).next() {
        Some(f) => (DistinctVerdict::Distinct, Some(f.clone())),
        None => (DistinctVerdict::NotDistinct, None),
    }
}

pub fn verify_distinct(stages: &[FamilyStage]) -> Result<DistinctnessReport> {
    if stages.len() < 2 {
        return Err(Error::config("distinctness needs at least two stages"));
    }
    let growth = stages.windows(2).map(|p| p[1].pair_length > p[0].pair_length).collect();
    let unbalanced_lengths: Vec<Option<usize>> = stages
        .par_iter()
        .map(|s| shortest_unbalanced_pair_window(&s.x_window, s.pair_length).map(|p| p.length))
        .collect();
    let unbalanced_matches = stages
        .iter()
        .zip(&unbalanced_lengths)
        .map(|(s, l)| *l == Some(s.pair_length))
        .collect();
    let index_pairs: Vec<(usize, usize)> =
        (0..stages.len()).flat_map(|m| (m + 1..stages.len()).map(move |n| (m, n))).collect();
    let pairs: Vec<PairComparison> = index_pairs
        .par_iter()
        .map(|&(m, n)| {
            let length = stages[m].pair_length.max(stages[n].pair_length);
            let (verdict, witness) = compare_windows(&stages[m].x_window, &stages[n].x_window, length);
            let required_window = (verdict == DistinctVerdict::Inconclusive).then_some(4 * length);
            PairComparison { m, n, length, verdict, witness, required_window }
        })
        .collect();
    let all_distinct = pairs.iter().all(|p| p.verdict == DistinctVerdict::Distinct);
    Ok(DistinctnessReport { growth, unbalanced_lengths, unbalanced_matches, pairs, all_distinct })
}
