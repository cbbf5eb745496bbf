//! The Rule-184 traffic map `T` and `F = σ ∘ T`.
//!
//! `T` replaces every occurrence of `10` by `01` at once. Two occurrences
//! of `10` cannot overlap (the middle letter would have to be both `0` and
//! `1`), so the simultaneous replacement is well defined. On a window,
//! output letter `i` depends on source letters `i - 1, i, i + 1`; the first
//! letter of a one-sided word has no left neighbour. Hence `n` output
//! letters of `T` need `n + 1` source letters and `F` needs `n + 2`.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spec::InfiniteWordSpec;
use crate::word::FiniteWord;

/// Default bound on enumerated preimage candidates.
pub const PREIMAGE_CAP: usize = 1 << 24;

#[inline]
pub(crate) fn t_letter(prev: u8, cur: u8, next: u8) -> u8 {
    // a 1 survives when blocked, a 0 receives the 1 from its left
    ((cur == 1 && next == 1) || (prev == 1 && cur == 0)) as u8
}

/// First `n` letters of `T(src)`; `src` must hold at least `n + 1` letters.
pub fn traffic_t(src: &FiniteWord, n: usize) -> Result<FiniteWord> {
    if src.len() < n + 1 {
        return Err(Error::BoundaryUndetermined { needed: n + 1, available: src.len() });
    }
    let mut out = FiniteWord::with_capacity(n);
    for i in 0..n {
        let prev = if i == 0 { 0 } else { src.get(i - 1) };
        out.push(t_letter(prev, src.get(i), src.get(i + 1)));
    }
    Ok(out)
}

/// First `n` letters of `F(src) = σ(T(src))`; needs `n + 2` source letters.
pub fn traffic_f(src: &FiniteWord, n: usize) -> Result<FiniteWord> {
    if src.len() < n + 2 {
        return Err(Error::BoundaryUndetermined { needed: n + 2, available: src.len() });
    }
    let mut out = FiniteWord::with_capacity(n);
    for i in 1..=n {
        out.push(t_letter(src.get(i - 1), src.get(i), src.get(i + 1)));
    }
    Ok(out)
}

/// `F` applied to the whole window, losing two letters.
pub fn traffic_f_window(src: &FiniteWord) -> Result<FiniteWord> {
    traffic_f(src, src.len().saturating_sub(2))
}

/// `F^k` on a window of length `≥ n + 2k`.
pub fn traffic_f_iter(src: &FiniteWord, k: usize, n: usize) -> Result<FiniteWord> {
    if src.len() < n + 2 * k {
        return Err(Error::BoundaryUndetermined { needed: n + 2 * k, available: src.len() });
    }
    let mut cur = src.prefix(n + 2 * k);
    for _ in 0..k {
        cur = traffic_f_window(&cur)?;
    }
    Ok(cur)
}

pub fn traffic_t_spec(w: &InfiniteWordSpec, n: usize) -> Result<FiniteWord> {
    traffic_t(&w.prefix(n + 1)?, n)
}

pub fn traffic_f_spec(w: &InfiniteWordSpec, n: usize) -> Result<FiniteWord> {
    traffic_f(&w.prefix(n + 2)?, n)
}

/// All `y` with `|y| = len` and `F(y)` beginning with `target`, in lexicographic order.
fn f_preimages_prefix(target: &FiniteWord, len: usize, cap: usize, counted: &mut usize) -> Result<Vec<FiniteWord>> {
    assert!(len >= target.len() + 2);
    let mut out = Vec::new();
    let mut y = FiniteWord::with_capacity(len);
    fn dfs(
        y: &mut FiniteWord,
        target: &FiniteWord,
        len: usize,
        cap: usize,
        counted: &mut usize,
        out: &mut Vec<FiniteWord>,
    ) -> Result<()> {
        let m = y.len();
        // F(y)_j uses y_j, y_{j+1}, y_{j+2}; check the one just completed
        if m >= 3 {
            let j = m - 3;
            if j < target.len() && t_letter(y.get(j), y.get(j + 1), y.get(j + 2)) != target.get(j) {
                return Ok(());
            }
        }
        if m == len {
            *counted += 1;
            if *counted > cap {
                return Err(Error::Resource {
                    what: "F-preimage candidates".into(),
                    partial: out.len(),
                    cap,
                });
            }
            out.push(y.clone());
            return Ok(());
        }
        for a in 0..2u8 {
            y.push(a);
            let r = dfs(y, target, len, cap, counted, out);
            y.truncate(m);
            r?;
        }
        Ok(())
    }
    dfs(&mut y, target, len, cap, counted, &mut out)?;
    Ok(out)
}

/// Windows `y` of length `|target| + pad + 2k` such that `F^k(y)` begins with `target`.
///
/// Since `F` commutes with the shift, an empty result certifies that no
/// word of that length has `target` as a factor of its `k`-th image at any
/// position that leaves `pad` letters of right context.
pub fn preimages_f(target: &FiniteWord, k: usize, pad: usize, cap: usize) -> Result<Vec<FiniteWord>> {
    if k == 0 {
        return Err(Error::domain("preimage order must be at least 1"));
    }
    let mut counted = 0usize;
    let mut level = f_preimages_prefix(target, target.len() + pad + 2, cap, &mut counted)?;
    for _ in 1..k {
        if level.is_empty() {
            break;
        }
        let results: Vec<Result<Vec<FiniteWord>>> = level
            .par_iter()
            .map(|y| {
                let mut local = 0usize;
                f_preimages_prefix(y, y.len() + 2, cap, &mut local)
            })
            .collect();
        let mut next = Vec::new();
        for r in results {
            next.extend(r?);
        }
        counted += next.len();
        if counted > cap {
            return Err(Error::Resource { what: "F-preimage candidates".into(), partial: next.len(), cap });
        }
        next.sort();
        next.dedup();
        level = next;
    }
    Ok(level)
}

/// Result of iterating `F` until no `11` remains in the window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolationOutcome {
    /// Least `n` with `11` absent from the window of `Fⁿ`; `None` if `max_iter` ran out.
    pub iterations: Option<usize>,
    pub window: FiniteWord,
    pub source_frequency: Ratio<u64>,
    /// The source window has 1-frequency below 1/2.
    pub frequency_below_half: bool,
}

/// Iterates `F` on a finite source of length `≥ window + 2·max_iter`.
pub fn iterate_f_until_isolated_window(source: &FiniteWord, max_iter: usize, window: usize) -> Result<IsolationOutcome> {
    let needed = window + 2 * max_iter;
    if source.len() < needed {
        return Err(Error::BoundaryUndetermined { needed, available: source.len() });
    }
    let head = source.prefix(window);
    let source_frequency = Ratio::new(head.weight(), window.max(1) as u64);
    let frequency_below_half = 2 * head.weight() < window as u64;
    let eleven = FiniteWord::from_bits([1, 1]);
    let mut cur = source.prefix(needed);
    for n in 0..=max_iter {
        let view = cur.prefix(window);
        if !view.contains(&eleven) {
            return Ok(IsolationOutcome { iterations: Some(n), window: view, source_frequency, frequency_below_half });
        }
        if n < max_iter {
            cur = traffic_f_window(&cur)?;
        }
    }
    Ok(IsolationOutcome {
        iterations: None,
        window: cur.prefix(window),
        source_frequency,
        frequency_below_half,
    })
}

pub fn iterate_f_until_isolated(w: &InfiniteWordSpec, max_iter: usize, window: usize) -> Result<IsolationOutcome> {
    iterate_f_until_isolated_window(&w.prefix(window + 2 * max_iter)?, max_iter, window)
}
