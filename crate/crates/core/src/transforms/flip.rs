//! The last-two-letter flip `𝔉` and the flipping family of a characteristic word.

use crate::error::{Error, Result};
use crate::sturmian::{standard_sequence, DirectiveSequence};
use crate::word::FiniteWord;

/// Swaps the last two letters of `s`.
pub fn flip_last_two(s: &FiniteWord) -> Result<FiniteWord> {
    let n = s.len();
    if n < 2 {
        return Err(Error::domain(format!("cannot flip the last two letters of {s:?}")));
    }
    let mut out = s.clone();
    out.set(n - 2, s.get(n - 1));
    out.set(n - 1, s.get(n - 2));
    Ok(out)
}

/// The directive sequence `a_{k+1}, a_{k+2}, …`.
fn shifted(dir: &DirectiveSequence, k: usize) -> Result<DirectiveSequence> {
    let pre = dir.preperiod.len();
    if k < pre {
        return DirectiveSequence::new(dir.preperiod[k..].to_vec(), dir.period.clone());
    }
    let mut period = dir.period.clone();
    let offset = (k - pre) % period.len();
    period.rotate_left(offset);
    DirectiveSequence::new(Vec::new(), period)
}

/// Token word of the characteristic word over `A = S_k` (letter 0) and
/// `B = S_{k-1}` (letter 1), long enough to cover `n` letters.
pub fn block_tokens(dir: &DirectiveSequence, k: usize, n: usize) -> Result<FiniteWord> {
    if !dir.is_infinite() {
        return Err(Error::domain("flipping family needs an infinite directive sequence"));
    }
    let b = standard_sequence(dir, k as i64 - 1)?;
    shifted(dir, k)?.prefix(n / b.len() + 2)
}

/// Window of `∏ S_k^{n_i} 𝔉^{b_i}(S_{k-1})`.
///
/// The exponents `n_i` come from the factorization of the characteristic
/// word over `(S_k, S_{k-1})`; `bits` is repeated periodically.
pub fn flipping_family(dir: &DirectiveSequence, k: usize, bits: &FiniteWord, n: usize) -> Result<FiniteWord> {
    if k < 3 {
        return Err(Error::domain(format!("flip level k = {k} must be at least 3")));
    }
    if bits.is_empty() {
        return Err(Error::domain("empty flip bit sequence"));
    }
    let a = standard_sequence(dir, k as i64)?;
    let b = standard_sequence(dir, k as i64 - 1)?;
    let fb = flip_last_two(&b)?;
    let tokens = block_tokens(dir, k, n)?;
    let mut out = FiniteWord::with_capacity(n + a.len());
    let mut flips = 0usize;
    for t in tokens.iter() {
        if out.len() >= n {
            break;
        }
        if t == 0 {
            out.extend_from(&a);
        } else {
            let bit = bits.get(flips % bits.len());
            out.extend_from(if bit == 1 { &fb } else { &b });
            flips += 1;
        }
    }
    out.truncate(n);
    Ok(out)
}

/// The central word `w` with `S_{k-1}S_k = w·ab` and `S_kS_{k-1} = w·ba`.
///
/// Flipped blocks create occurrences of whichever of `0w0`, `1w1` is
/// missing from the characteristic word.
pub fn flip_core(dir: &DirectiveSequence, k: usize) -> Result<FiniteWord> {
    let a = standard_sequence(dir, k as i64)?;
    let b = standard_sequence(dir, k as i64 - 1)?;
    let ba = b.concat(&a);
    Ok(ba.prefix(ba.len() - 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    #[test]
    fn flip_examples() {
        assert_eq!(flip_last_two(&w("01001")).unwrap(), w("01010"));
        assert!(flip_last_two(&w("0")).is_err());
        let fib = DirectiveSequence::fibonacci();
        let s1 = standard_sequence(&fib, 1).unwrap();
        let s2 = standard_sequence(&fib, 2).unwrap();
        assert_eq!(s2.concat(&flip_last_two(&s1).unwrap()), w("01010"));
        assert_eq!(s1.concat(&s2), w("01010"));
    }

    #[test]
    fn zero_bits_reproduce_the_characteristic_word() {
        let fib = DirectiveSequence::fibonacci();
        for k in 3..7 {
            assert_eq!(flipping_family(&fib, k, &w("0"), 3000).unwrap(), fib.prefix(3000).unwrap());
        }
        let d: DirectiveSequence = "dir:2:1,3".parse().unwrap();
        assert_eq!(flipping_family(&d, 4, &w("0"), 3000).unwrap(), d.prefix(3000).unwrap());
        assert!(matches!(flipping_family(&fib, 2, &w("1"), 10), Err(Error::Domain(_))));
    }

    #[test]
    fn fibonacci_core_at_level_three() {
        assert_eq!(flip_core(&DirectiveSequence::fibonacci(), 3).unwrap(), w("010010"));
    }

    proptest! {
        #[test]
        fn commutation_identity(a1 in 0u64..3, rest in proptest::collection::vec(1u64..4, 1..5), k in 3usize..7) {
            let d = DirectiveSequence::new(vec![a1], rest).unwrap();
            let a = standard_sequence(&d, k as i64).unwrap();
            let b = standard_sequence(&d, k as i64 - 1).unwrap();
            prop_assert_eq!(a.concat(&flip_last_two(&b).unwrap()), b.concat(&a));
        }
    }
}
