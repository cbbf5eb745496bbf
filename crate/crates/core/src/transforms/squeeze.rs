//! Upper and two-sided `C`-squeezing.
//!
//! With `g(i) = |a₁⋯a_i|₁`, the upper squeeze rewrites `a_{i-1}a_i = 10` to
//! `01` wherever `g(i) > αi + C`; the two-sided variant also rewrites
//! `01` to `10` wherever `g(i) < αi - C`. Positions are 1-indexed and every
//! inequality is decided exactly in `Q(√d)`. For `C ≥ 0` the two kinds of
//! switch never touch the same letter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadratic::{QuadraticNumber, Slope};
use crate::spec::InfiniteWordSpec;
use crate::word::FiniteWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SqueezeMode {
    Upper,
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqueezeParams {
    pub alpha: Slope,
    pub c: QuadraticNumber,
    pub mode: SqueezeMode,
}

impl SqueezeParams {
    pub fn new(alpha: Slope, c: QuadraticNumber, mode: SqueezeMode) -> Result<Self> {
        if !alpha.value().same_field(&c) {
            return Err(Error::domain(format!("C = {c} is not in the field of α = {alpha}")));
        }
        if mode == SqueezeMode::TwoSided && c.is_negative() {
            return Err(Error::domain("two-sided squeezing needs C ≥ 0"));
        }
        Ok(SqueezeParams { alpha, c, mode })
    }
}

/// Squeezed window and the 1-indexed positions `i` where `a_{i-1}a_i` switched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqueezeOutcome {
    pub word: FiniteWord,
    pub upper_switches: Vec<usize>,
    pub lower_switches: Vec<usize>,
}

/// First `n` letters of the squeezed word; `src` needs `n + 1` letters.
pub fn squeeze_window(src: &FiniteWord, params: &SqueezeParams, n: usize) -> Result<SqueezeOutcome> {
    let params = SqueezeParams::new(params.alpha, params.c, params.mode)?;
    if src.len() < n + 1 {
        return Err(Error::BoundaryUndetermined { needed: n + 1, available: src.len() });
    }
    let alpha = params.alpha.value();
    let mut out = src.prefix(n + 1);
    let mut upper_switches = Vec::new();
    let mut lower_switches = Vec::new();
    let mut g = 0i128;
    let mut line = QuadraticNumber::zero();
    for i in 1..=n + 1 {
        g += src.letter(i) as i128;
        line = line + alpha;
        if i < 2 {
            continue;
        }
        let (prev, cur) = (src.letter(i - 1), src.letter(i));
        let gi = QuadraticNumber::integer(g);
        if prev == 1 && cur == 0 && gi > line + params.c {
            out.set(i - 2, 0);
            out.set(i - 1, 1);
            upper_switches.push(i);
        } else if params.mode == SqueezeMode::TwoSided && prev == 0 && cur == 1 && gi < line - params.c {
            out.set(i - 2, 1);
            out.set(i - 1, 0);
            lower_switches.push(i);
        }
    }
    out.truncate(n);
    Ok(SqueezeOutcome { word: out, upper_switches, lower_switches })
}

pub fn squeeze(w: &InfiniteWordSpec, params: &SqueezeParams, n: usize) -> Result<FiniteWord> {
    Ok(squeeze_window(&w.prefix(n + 1)?, params, n)?.word)
}
