//! Restartable descriptions of infinite binary words.
//!
//! Every variant renders to a literal that parses back to an equal value:
//!
//! ```text
//! fib | tm | periodic:<word> | dir:<a1,a2,...>[:<period>|:w]
//! rot:<slope>:<intercept>[:<conv>] | morphic:<rules>:<seedletter>
//! carpet:<p>/<q>:<indexspec> | pair:<x>,<y>:<indexspec>
//! flip:<k>:<bits>[:<dir literal>] | file:<path>
//! ```
//!
//! `conv` is two letters: the code of the point `0`, then of `1-α`
//! (default `01`). Flip bit sequences repeat periodically. Raw word files
//! hold ASCII `0`/`1`; whitespace is ignored and the first character is
//! letter `a₁` (byte offset 0).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abelian::carpet_morphism;
use crate::error::{Error, Result};
use crate::quadratic::{QuadraticNumber, Slope};
use crate::sturmian::{cycle_prefix, rotation_word, DirectiveSequence, RotationParams};
use crate::transforms::flip::flipping_family;
use crate::transforms::morphism::BinaryMorphism;
use crate::word::FiniteWord;

#[derive(Clone, PartialEq, Eq)]
pub enum InfiniteWordSpec {
    /// `u^ω`.
    Periodic(FiniteWord),
    /// Fixed point of a morphism prolongable on `seed`.
    Morphic { morphism: BinaryMorphism, seed: u8 },
    /// Characteristic word of a directive sequence.
    Directive(DirectiveSequence),
    Rotation(RotationParams),
    /// `φ(index)` for the rational-carpet morphism of slope `p/q`.
    Carpet { p: u32, q: u32, index: Box<InfiniteWordSpec> },
    /// `index` with `0 ↦ x`, `1 ↦ y`.
    Product { x: FiniteWord, y: FiniteWord, index: Box<InfiniteWordSpec> },
    /// Flipping-family member `∏ S_k^{n_i} 𝔉^{b_i}(S_{k-1})`.
    Flip { k: usize, bits: FiniteWord, dir: DirectiveSequence },
    /// Word read from disk at parse time.
    File { path: String, word: FiniteWord },
}

impl InfiniteWordSpec {
    pub fn fibonacci() -> Self {
        InfiniteWordSpec::Directive(DirectiveSequence::fibonacci())
    }

    pub fn thue_morse() -> Self {
        InfiniteWordSpec::Morphic { morphism: BinaryMorphism::thue_morse(), seed: 0 }
    }

    pub fn periodic(u: &str) -> Result<Self> {
        let w: FiniteWord = u.parse()?;
        if w.is_empty() {
            return Err(Error::config("periodic word must be nonempty"));
        }
        Ok(InfiniteWordSpec::Periodic(w))
    }

    /// Checks parameters without generating letters.
    pub fn validate(&self) -> Result<()> {
        match self {
            InfiniteWordSpec::Periodic(u) if u.is_empty() => {
                Err(Error::config("periodic word must be nonempty"))
            }
            InfiniteWordSpec::Periodic(_) | InfiniteWordSpec::File { .. } => Ok(()),
            InfiniteWordSpec::Morphic { morphism, seed } => {
                morphism.fixed_point_prefix(*seed, morphism.image(*seed).len() + 1).map(|_| ())
            }
            InfiniteWordSpec::Directive(d) => {
                if !d.is_infinite() && !d.omega {
                    return Err(Error::config("finite directive sequence without ω marker"));
                }
                Ok(())
            }
            InfiniteWordSpec::Rotation(r) => r.validate().map_err(|e| Error::Config(e.to_string())),
            InfiniteWordSpec::Carpet { p, q, index } => {
                carpet_morphism(*p, *q).map_err(|e| Error::Config(e.to_string()))?;
                index.validate()
            }
            InfiniteWordSpec::Product { x, y, index } => {
                if x.is_empty() || y.is_empty() {
                    return Err(Error::config("product components must be nonempty"));
                }
                index.validate()
            }
            InfiniteWordSpec::Flip { k, bits, dir } => {
                if *k < 3 {
                    return Err(Error::config(format!("flip level k = {k} must be at least 3")));
                }
                if bits.is_empty() {
                    return Err(Error::config("flip bit sequence must be nonempty"));
                }
                if !dir.is_infinite() {
                    return Err(Error::config("flipping family needs an infinite directive sequence"));
                }
                Ok(())
            }
        }
    }

    /// `a₁ ⋯ a_n`.
    pub fn prefix(&self, n: usize) -> Result<FiniteWord> {
        self.validate()?;
        match self {
            InfiniteWordSpec::Periodic(u) => Ok(cycle_prefix(u, n)),
            InfiniteWordSpec::Morphic { morphism, seed } => morphism.fixed_point_prefix(*seed, n),
            InfiniteWordSpec::Directive(d) => d.prefix(n),
            InfiniteWordSpec::Rotation(r) => rotation_word(r, n),
            InfiniteWordSpec::Carpet { p, q, index } => {
                let phi = carpet_morphism(*p, *q)?;
                let src = index.prefix(phi.source_len_for(n)?)?;
                phi.apply_prefix(&src, n)
            }
            InfiniteWordSpec::Product { x, y, index } => {
                let phi = BinaryMorphism::new(x.clone(), y.clone());
                let src = index.prefix(phi.source_len_for(n)?)?;
                phi.apply_prefix(&src, n)
            }
            InfiniteWordSpec::Flip { k, bits, dir } => flipping_family(dir, *k, bits, n),
            InfiniteWordSpec::File { path, word } => {
                if n > word.len() {
                    return Err(Error::Range(format!(
                        "{path} holds {} letters, {n} requested",
                        word.len()
                    )));
                }
                Ok(word.prefix(n))
            }
        }
    }

    /// Exact slope of an aperiodic Sturmian spec.
    pub fn sturmian_slope(&self) -> Option<Slope> {
        match self {
            InfiniteWordSpec::Directive(d) if d.is_infinite() => d.slope().ok(),
            InfiniteWordSpec::Rotation(r) if r.validate().is_ok() => Some(r.slope),
            _ => None,
        }
    }

    /// Period word of a purely periodic spec.
    pub fn period_word(&self) -> Option<FiniteWord> {
        match self {
            InfiniteWordSpec::Periodic(u) => Some(u.clone()),
            InfiniteWordSpec::Directive(d) if d.omega => {
                crate::sturmian::standard_sequence(d, d.preperiod.len() as i64).ok()
            }
            _ => None,
        }
    }

    /// Exact frequency of `1`, when known in closed form.
    pub fn letter_frequency(&self) -> Option<QuadraticNumber> {
        if let Some(s) = self.sturmian_slope() {
            return Some(s.value());
        }
        match self {
            InfiniteWordSpec::Morphic { morphism, .. } => morphism.letter_frequency(),
            InfiniteWordSpec::Carpet { p, q, .. } => QuadraticNumber::rational(*p as i128, *q as i128).ok(),
            InfiniteWordSpec::Flip { dir, .. } => dir.slope().ok().map(|s| s.value()),
            other => other
                .period_word()
                .and_then(|u| QuadraticNumber::rational(u.weight() as i128, u.len() as i128).ok()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InfiniteWordSpec::Periodic(_) => "periodic",
            InfiniteWordSpec::Morphic { .. } => "morphic",
            InfiniteWordSpec::Directive(_) => "directive",
            InfiniteWordSpec::Rotation(_) => "rotation",
            InfiniteWordSpec::Carpet { .. } => "carpet",
            InfiniteWordSpec::Product { .. } => "product",
            InfiniteWordSpec::Flip { .. } => "flip",
            InfiniteWordSpec::File { .. } => "file",
        }
    }
}

/// Reads a raw word file: ASCII `0`/`1`, whitespace ignored.
pub fn read_word_file(path: &str) -> Result<FiniteWord> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    cleaned.parse()
}

fn parse_letter(s: &str) -> Result<u8> {
    match s {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(Error::config(format!("expected a letter 0 or 1, got {s:?}"))),
    }
}

fn parse_word(s: &str) -> Result<FiniteWord> {
    s.parse()
}

impl FromStr for InfiniteWordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = match s {
            "fib" => InfiniteWordSpec::fibonacci(),
            "tm" => InfiniteWordSpec::thue_morse(),
            _ => {
                let (kind, body) = s
                    .split_once(':')
                    .ok_or_else(|| Error::config(format!("unknown word spec {s:?}")))?;
                match kind {
                    "periodic" => InfiniteWordSpec::periodic(body)?,
                    "dir" => InfiniteWordSpec::Directive(s.parse()?),
                    "rot" => {
                        let parts: Vec<&str> = body.split(':').collect();
                        if !(2..=3).contains(&parts.len()) {
                            return Err(Error::config("rot expects <slope>:<intercept>[:<conv>]"));
                        }
                        let slope: Slope = parts[0].parse()?;
                        let intercept: QuadraticNumber = parts[1].parse()?;
                        let mut r = RotationParams::new(slope, intercept);
                        if let Some(conv) = parts.get(2) {
                            let c: Vec<char> = conv.chars().collect();
                            if c.len() != 2 {
                                return Err(Error::config("rotation convention is two letters"));
                            }
                            r = r.with_convention(
                                parse_letter(&c[0].to_string())?,
                                parse_letter(&c[1].to_string())?,
                            );
                        }
                        InfiniteWordSpec::Rotation(r)
                    }
                    "morphic" => {
                        let (rules, seed) = body
                            .rsplit_once(':')
                            .ok_or_else(|| Error::config("morphic expects <rules>:<seedletter>"))?;
                        InfiniteWordSpec::Morphic { morphism: rules.parse()?, seed: parse_letter(seed)? }
                    }
                    "carpet" => {
                        let (pq, index) = body
                            .split_once(':')
                            .ok_or_else(|| Error::config("carpet expects <p>/<q>:<indexspec>"))?;
                        let (p, q) = pq
                            .split_once('/')
                            .ok_or_else(|| Error::config("carpet slope must read p/q"))?;
                        let num = |t: &str| {
                            t.parse::<u32>().map_err(|_| Error::config(format!("invalid integer {t:?}")))
                        };
                        InfiniteWordSpec::Carpet { p: num(p)?, q: num(q)?, index: Box::new(index.parse()?) }
                    }
                    "pair" => {
                        let (xy, index) = body
                            .split_once(':')
                            .ok_or_else(|| Error::config("pair expects <x>,<y>:<indexspec>"))?;
                        let (x, y) = xy
                            .split_once(',')
                            .ok_or_else(|| Error::config("pair expects two words separated by a comma"))?;
                        InfiniteWordSpec::Product { x: parse_word(x)?, y: parse_word(y)?, index: Box::new(index.parse()?) }
                    }
                    "flip" => {
                        let (k, rest) = body
                            .split_once(':')
                            .ok_or_else(|| Error::config("flip expects <k>:<bits>[:<dir>]"))?;
                        let k = k.parse::<usize>().map_err(|_| Error::config(format!("invalid flip level {k:?}")))?;
                        let (bits, dir) = match rest.split_once(':') {
                            Some((b, d)) => (b, d.parse()?),
                            None => (rest, DirectiveSequence::fibonacci()),
                        };
                        InfiniteWordSpec::Flip { k, bits: parse_word(bits)?, dir }
                    }
                    "file" => InfiniteWordSpec::File { path: body.to_string(), word: read_word_file(body)? },
                    other => return Err(Error::config(format!("unknown word spec kind {other:?}"))),
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for InfiniteWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteWordSpec::Directive(d) if *d == DirectiveSequence::fibonacci() => f.write_str("fib"),
            InfiniteWordSpec::Morphic { morphism, seed: 0 } if *morphism == BinaryMorphism::thue_morse() => {
                f.write_str("tm")
            }
            InfiniteWordSpec::Periodic(u) => write!(f, "periodic:{u}"),
            InfiniteWordSpec::Morphic { morphism, seed } => write!(f, "morphic:{morphism}:{seed}"),
            InfiniteWordSpec::Directive(d) => write!(f, "{d}"),
            InfiniteWordSpec::Rotation(r) => {
                write!(f, "rot:{}:{}", r.slope, r.intercept)?;
                if (r.at_zero, r.at_boundary) != (0, 1) {
                    write!(f, ":{}{}", r.at_zero, r.at_boundary)?;
                }
                Ok(())
            }
            InfiniteWordSpec::Carpet { p, q, index } => write!(f, "carpet:{p}/{q}:{index}"),
            InfiniteWordSpec::Product { x, y, index } => write!(f, "pair:{x},{y}:{index}"),
            InfiniteWordSpec::Flip { k, bits, dir } => {
                write!(f, "flip:{k}:{bits}")?;
                if *dir != DirectiveSequence::fibonacci() {
                    write!(f, ":{dir}")?;
                }
                Ok(())
            }
            InfiniteWordSpec::File { path, .. } => write!(f, "file:{path}"),
        }
    }
}

impl fmt::Debug for InfiniteWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InfiniteWordSpec({self})")
    }
}

impl Serialize for InfiniteWordSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for InfiniteWordSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
