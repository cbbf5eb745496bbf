//! Exact arithmetic in real quadratic fields `Q(√d)`.
//!
//! A [`QuadraticNumber`] is `(a + b√d)/c` with `c > 0`, `gcd(a, b, c) = 1`
//! and `d` squarefree. Rationals use `b = 0, d = 1`. Signs and floors are
//! decided with integer square roots, so comparisons against rationals are
//! exact. Arithmetic is checked: overflowing `i128` panics with a
//! descriptive message rather than returning a wrong answer.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `(a + b√d)/c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
}

fn ck(v: Option<i128>) -> i128 {
    v.expect("quadratic arithmetic overflow")
}

fn mul(x: i128, y: i128) -> i128 {
    ck(x.checked_mul(y))
}

fn add(x: i128, y: i128) -> i128 {
    ck(x.checked_add(y))
}

/// Splits `n > 0` as `s² · r` with `r` squarefree.
fn square_part(n: i128) -> (i128, i128) {
    let mut s = 1i128;
    let mut r = n;
    let mut p = 2i128;
    while p * p <= r {
        while r % (p * p) == 0 {
            r /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, r)
}

/// `⌊b√d⌋` for `d ≥ 0`.
fn floor_b_sqrt_d(b: i128, d: i128) -> i128 {
    let sq = mul(mul(b, b), d);
    let r = sq.sqrt();
    if b >= 0 {
        r
    } else if r * r == sq {
        -r
    } else {
        -(r + 1)
    }
}

impl QuadraticNumber {
    /// `(a + b√d)/c`, normalized. `d` may carry square factors.
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        if c == 0 {
            return Err(Error::domain("zero denominator"));
        }
        if b != 0 && d < 0 {
            return Err(Error::domain("negative radicand"));
        }
        if b == 0 || d == 0 {
            return Ok(Self::normalize(a, 0, c, 1));
        }
        let (s, r) = square_part(d);
        let b = mul(b, s);
        if r == 1 {
            return Ok(Self::normalize(add(a, b), 0, c, 1));
        }
        Ok(Self::normalize(a, b, c, r))
    }

    fn normalize(mut a: i128, mut b: i128, mut c: i128, d: i128) -> Self {
        if c < 0 {
            a = ck(a.checked_neg());
            b = ck(b.checked_neg());
            c = ck(c.checked_neg());
        }
        let g = a.gcd(&b).gcd(&c);
        if g > 1 {
            a /= g;
            b /= g;
            c /= g;
        }
        let d = if b == 0 { 1 } else { d };
        QuadraticNumber { a, b, c, d }
    }

    pub fn rational(p: i128, q: i128) -> Result<Self> {
        Self::new(p, 0, q, 1)
    }

    pub fn integer(n: i128) -> Self {
        QuadraticNumber { a: n, b: 0, c: 1, d: 1 }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// `√d`.
    pub fn sqrt(d: i128) -> Result<Self> {
        Self::new(0, 1, 1, d)
    }

    pub fn parts(&self) -> (i128, i128, i128, i128) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn is_integer(&self) -> bool {
        self.b == 0 && self.c == 1
    }

    /// The radicand, `1` for rationals.
    pub fn radicand(&self) -> i128 {
        self.d
    }

    /// Whether `self` and `other` live in a common field.
    pub fn same_field(&self, other: &Self) -> bool {
        self.d == 1 || other.d == 1 || self.d == other.d
    }

    pub fn to_ratio(&self) -> Option<Ratio<i128>> {
        self.is_rational().then(|| Ratio::new(self.a, self.c))
    }

    pub fn from_ratio(r: Ratio<i128>) -> Self {
        Self::normalize(*r.numer(), 0, *r.denom(), 1)
    }

    fn field(&self, other: &Self) -> i128 {
        assert!(
            self.same_field(other),
            "mixing Q(√{}) and Q(√{})",
            self.d,
            other.d
        );
        self.d.max(other.d)
    }

    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa as i32;
        }
        if sa == 0 || sa == sb {
            return sb as i32;
        }
        // opposite signs: compare a² with b²d
        let lhs = mul(self.a, self.a);
        let rhs = mul(mul(self.b, self.b), self.d);
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa as i32,
            Ordering::Less => sb as i32,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn floor(&self) -> i128 {
        let num = add(self.a, floor_b_sqrt_d(self.b, self.d));
        Integer::div_floor(&num, &self.c)
    }

    pub fn ceil(&self) -> i128 {
        -(-*self).floor()
    }

    /// Fractional part `x - ⌊x⌋`.
    pub fn fract(&self) -> Self {
        *self - Self::integer(self.floor())
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber { b: -self.b, ..*self }
    }

    pub fn mul_int(&self, k: i128) -> Self {
        Self::normalize(mul(self.a, k), mul(self.b, k), self.c, self.d)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        // c / (a + b√d) = c(a - b√d) / (a² - b²d)
        let norm = mul(self.a, self.a) - mul(mul(self.b, self.b), self.d);
        Ok(Self::normalize(
            mul(self.c, self.a),
            -mul(self.c, self.b),
            norm,
            self.d,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.d as f64).sqrt()) / self.c as f64
    }

    /// Continued-fraction expansion. Rationals yield an empty period.
    pub fn continued_fraction(&self) -> ContinuedFraction {
        if self.is_rational() {
            let (mut p, mut q) = (self.a, self.c);
            let mut terms = Vec::new();
            loop {
                let t = Integer::div_floor(&p, &q);
                terms.push(t);
                let r = p - t * q;
                if r == 0 {
                    break;
                }
                p = q;
                q = r;
            }
            return ContinuedFraction {
                integer_part: terms[0],
                preperiod: terms[1..].to_vec(),
                period: Vec::new(),
            };
        }
        // rewrite as (P + √D)/Q with Q | D - P²
        let (mut p, mut q, mut dd) = if self.b > 0 {
            (self.a, self.c, mul(mul(self.b, self.b), self.d))
        } else {
            (-self.a, -self.c, mul(mul(self.b, self.b), self.d))
        };
        if (dd - mul(p, p)) % q != 0 {
            let aq = q.abs();
            p = mul(p, aq);
            dd = mul(dd, mul(q, q));
            q = mul(q, aq);
        }
        let s = dd.sqrt();
        let mut terms = Vec::new();
        let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
        loop {
            if let Some(&start) = seen.get(&(p, q)) {
                if start == 0 {
                    // purely periodic from the integer part on
                    let mut period = terms[1..].to_vec();
                    period.push(terms[0]);
                    return ContinuedFraction {
                        integer_part: terms[0],
                        preperiod: Vec::new(),
                        period,
                    };
                }
                return ContinuedFraction {
                    integer_part: terms[0],
                    preperiod: terms[1..start].to_vec(),
                    period: terms[start..].to_vec(),
                };
            }
            seen.insert((p, q), terms.len());
            let t = if q > 0 {
                Integer::div_floor(&add(p, s), &q)
            } else {
                Integer::div_floor(&add(add(p, s), 1), &q)
            };
            terms.push(t);
            p = mul(t, q) - p;
            q = (dd - mul(p, p)) / q;
        }
    }
}

/// `[a₀; preperiod, (period)^∞]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub integer_part: i128,
    pub preperiod: Vec<i128>,
    pub period: Vec<i128>,
}

impl ContinuedFraction {
    /// Partial quotient with index `i ≥ 1`; `None` past the end of a finite expansion.
    pub fn term(&self, i: usize) -> Option<i128> {
        assert!(i >= 1);
        let j = i - 1;
        if j < self.preperiod.len() {
            Some(self.preperiod[j])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(j - self.preperiod.len()) % self.period.len()])
        }
    }

    /// Evaluates back to an exact number.
    pub fn value(&self) -> Result<QuadraticNumber> {
        if self.period.iter().chain(&self.preperiod).any(|&t| t <= 0) {
            return Err(Error::domain("partial quotients beyond the first must be positive"));
        }
        // tail value: the purely periodic part, or none
        let tail = if self.period.is_empty() {
            None
        } else {
            let (pk, pk1, qk, qk1) = convergent_matrix(&self.period);
            // qk β² + (qk1 - pk) β - pk1 = 0, β > 1
            let disc = add(mul(qk1 - pk, qk1 - pk), mul(4 * qk, pk1));
            Some(QuadraticNumber::new(pk - qk1, 1, 2 * qk, disc)?)
        };
        let mut x = tail;
        for &t in self.preperiod.iter().rev() {
            let ti = QuadraticNumber::integer(t);
            x = Some(match x {
                None => ti,
                Some(v) => ti + v.recip()?,
            });
        }
        let a0 = QuadraticNumber::integer(self.integer_part);
        Ok(match x {
            None => a0,
            Some(v) => a0 + v.recip()?,
        })
    }
}

/// `(p_k, p_{k-1}, q_k, q_{k-1})` of `[t₁; t₂, …, t_k]`.
fn convergent_matrix(ts: &[i128]) -> (i128, i128, i128, i128) {
    let (mut p, mut p_prev, mut q, mut q_prev) = (1i128, 0i128, 0i128, 1i128);
    for &t in ts {
        let np = add(mul(t, p), p_prev);
        let nq = add(mul(t, q), q_prev);
        p_prev = p;
        q_prev = q;
        p = np;
        q = nq;
    }
    (p, p_prev, q, q_prev)
}

impl Add for QuadraticNumber {
    type Output = QuadraticNumber;

    fn add(self, o: Self) -> Self {
        let d = self.field(&o);
        Self::normalize(
            add(mul(self.a, o.c), mul(o.a, self.c)),
            add(mul(self.b, o.c), mul(o.b, self.c)),
            mul(self.c, o.c),
            d,
        )
    }
}

impl Sub for QuadraticNumber {
    type Output = QuadraticNumber;

    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> Self {
        QuadraticNumber { a: -self.a, b: -self.b, ..self }
    }
}

impl Mul for QuadraticNumber {
    type Output = QuadraticNumber;

    fn mul(self, o: Self) -> Self {
        let d = self.field(&o);
        Self::normalize(
            add(mul(self.a, o.a), mul(mul(self.b, o.b), d)),
            add(mul(self.a, o.b), mul(self.b, o.a)),
            mul(self.c, o.c),
            d,
        )
    }
}

impl Div for QuadraticNumber {
    type Output = QuadraticNumber;

    /// # Panics
    /// On division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip().expect("division by zero")
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    /// # Panics
    /// When the operands lie in different quadratic fields.
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            if self.c == 1 {
                return write!(f, "{}", self.a);
            }
            return write!(f, "{}/{}", self.a, self.c);
        }
        let sign = if self.b < 0 { '-' } else { '+' };
        let mag = self.b.abs();
        let coef = if mag == 1 { String::new() } else { format!("{mag}*") };
        write!(f, "({}{}{}sqrt({}))/{}", self.a, sign, coef, self.d, self.c)
    }
}

impl fmt::Debug for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ≈ {:.6}", self.to_f64())
    }
}

fn parse_int(s: &str, what: &str) -> Result<i128> {
    s.trim()
        .parse::<i128>()
        .map_err(|_| Error::config(format!("invalid {what} {s:?} in number literal")))
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Accepts `n`, `p/q`, `(a+b*sqrt(d))/c` and shorthands such as
    /// `sqrt(2)`, `(3-sqrt(5))/2`, `(-2*sqrt(3))`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::config("empty number literal"));
        }
        let Some(idx) = s.find("sqrt(") else {
            return match s.split_once('/') {
                Some((p, q)) => {
                    let q = parse_int(q, "denominator")?;
                    if q == 0 {
                        return Err(Error::config("zero denominator in number literal"));
                    }
                    QuadraticNumber::rational(parse_int(p, "numerator")?, q)
                }
                None => Ok(QuadraticNumber::integer(parse_int(&s, "integer")?)),
            };
        };
        let close = s[idx..]
            .find(')')
            .map(|k| idx + k)
            .ok_or_else(|| Error::config(format!("unclosed sqrt in {s:?}")))?;
        let d = parse_int(&s[idx + 5..close], "radicand")?;
        if d <= 0 {
            return Err(Error::config("radicand must be positive"));
        }
        let mut head = &s[..idx];
        let mut tail = &s[close + 1..];
        let parenthesized = head.starts_with('(');
        if parenthesized {
            head = &head[1..];
            tail = tail
                .strip_prefix(')')
                .ok_or_else(|| Error::config(format!("unbalanced parentheses in {s:?}")))?;
        }
        let c = match tail.strip_prefix('/') {
            Some(den) => parse_int(den, "denominator")?,
            None if tail.is_empty() => 1,
            None => return Err(Error::config(format!("trailing input in {s:?}"))),
        };
        if c == 0 {
            return Err(Error::config("zero denominator in number literal"));
        }
        let head = head.strip_suffix('*').unwrap_or(head);
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(k) => (&head[..k], &head[k..]),
            None => ("", head),
        };
        let a = if a_str.is_empty() { 0 } else { parse_int(a_str, "rational part")? };
        let b = match b_str {
            "" | "+" => 1,
            "-" => -1,
            other => parse_int(other, "coefficient")?,
        };
        QuadraticNumber::new(a, b, c, d)
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A slope in `[0, 1]`: rational or real quadratic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "QuadraticNumber", into = "QuadraticNumber")]
pub struct Slope(QuadraticNumber);

impl Slope {
    pub fn new(value: QuadraticNumber) -> Result<Self> {
        if value.is_negative() || value > QuadraticNumber::one() {
            return Err(Error::domain(format!("slope {value} outside [0, 1]")));
        }
        Ok(Slope(value))
    }

    pub fn rational(p: i128, q: i128) -> Result<Self> {
        Self::new(QuadraticNumber::rational(p, q)?)
    }

    /// `1/φ² = (3 - √5)/2`, the slope of the Fibonacci word.
    pub fn golden() -> Self {
        Slope(QuadraticNumber::new(3, -1, 2, 5).expect("valid literal"))
    }

    pub fn value(&self) -> QuadraticNumber {
        self.0
    }

    pub fn is_rational(&self) -> bool {
        self.0.is_rational()
    }
}

impl TryFrom<QuadraticNumber> for Slope {
    type Error = Error;

    fn try_from(v: QuadraticNumber) -> Result<Self> {
        Slope::new(v)
    }
}

impl From<Slope> for QuadraticNumber {
    fn from(s: Slope) -> Self {
        s.0
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Slope::new(s.parse()?).map_err(|e| Error::Config(e.to_string()))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slope({:?})", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn normalization() {
        let x = QuadraticNumber::new(6, -2, 4, 5).unwrap();
        assert_eq!(x.parts(), (3, -1, 2, 5));
        let y = QuadraticNumber::new(1, 1, -1, 8).unwrap();
        assert_eq!(y.parts(), (-1, -2, 1, 2));
        assert_eq!(QuadraticNumber::new(1, 1, 1, 9).unwrap(), QuadraticNumber::integer(4));
    }

    #[test]
    fn parse_and_display() {
        for s in ["(3-sqrt(5))/2", "2/5", "7", "(1+2*sqrt(3))/5", "(-1-sqrt(2))/3", "(0+sqrt(13))/6"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("sqrt(2)"), QuadraticNumber::sqrt(2).unwrap());
        assert_eq!(q("(3 - 1*sqrt(5))/2"), Slope::golden().value());
        assert!("1/0".parse::<QuadraticNumber>().is_err());
        assert!("(1+sqrt(x))/2".parse::<QuadraticNumber>().is_err());
        assert!("3/2".parse::<Slope>().is_err());
    }

    #[test]
    fn signs_and_floors() {
        let g = Slope::golden().value();
        assert!(g.is_positive());
        assert_eq!(g.floor(), 0);
        assert_eq!(g.mul_int(8).floor(), 3);
        assert_eq!(g.mul_int(8).ceil(), 4);
        assert_eq!((-g).floor(), -1);
        assert_eq!(q("(1-sqrt(2))").signum(), -1);
        assert_eq!(q("-7/2").floor(), -4);
        assert!(g > q("38/100") && g < q("39/100"));
    }

    #[test]
    fn field_arithmetic() {
        let x = q("(1+sqrt(5))/2");
        assert_eq!(x * x, x + QuadraticNumber::one());
        assert_eq!(x.recip().unwrap(), x - QuadraticNumber::one());
        assert_eq!((x / x), QuadraticNumber::one());
        assert_eq!(QuadraticNumber::one() - x.recip().unwrap(), Slope::golden().value());
    }

    #[test]
    fn continued_fractions() {
        let g = Slope::golden().value();
        let cf = g.continued_fraction();
        assert_eq!(cf.integer_part, 0);
        assert_eq!(cf.preperiod, vec![2]);
        assert_eq!(cf.period, vec![1]);
        assert_eq!(cf.value().unwrap(), g);

        let s2 = q("sqrt(2)").continued_fraction();
        assert_eq!((s2.integer_part, s2.preperiod.clone(), s2.period.clone()), (1, vec![], vec![2]));

        let r = q("2/5").continued_fraction();
        assert_eq!((r.integer_part, r.preperiod.clone(), r.period.len()), (0, vec![2, 2], 0));
        assert_eq!(r.value().unwrap(), q("2/5"));

        let s13 = q("(7-sqrt(13))/6");
        assert_eq!(s13.continued_fraction().value().unwrap(), s13);
    }

    #[test]
    fn mixed_fields_panic() {
        let r = std::panic::catch_unwind(|| q("sqrt(2)") + q("sqrt(3)"));
        assert!(r.is_err());
    }

    proptest! {
        #[test]
        fn floor_matches_float(a in -1000i128..1000, b in -50i128..50, c in 1i128..200, d in prop::sample::select(vec![2i128, 3, 5, 6, 7, 13, 17])) {
            let x = QuadraticNumber::new(a, b, c, d).unwrap();
            let f = x.to_f64();
            // far from integers the float floor is reliable
            if (f - f.round()).abs() > 1e-9 {
                prop_assert_eq!(x.floor(), f.floor() as i128);
            }
        }

        #[test]
        fn cf_round_trip(a in -40i128..40, b in 1i128..6, c in 1i128..40, d in prop::sample::select(vec![2i128, 3, 5, 7, 11, 13])) {
            let x = QuadraticNumber::new(a, b, c, d).unwrap();
            let cf = x.continued_fraction();
            // long periods have convergents beyond i128
            if cf.preperiod.len() + cf.period.len() <= 12 {
                prop_assert_eq!(cf.value().unwrap(), x);
            }
            prop_assert_eq!(x.to_string().parse::<QuadraticNumber>().unwrap(), x);
        }

        #[test]
        fn order_is_consistent_with_floats(a in -100i128..100, b in -9i128..9, c in 1i128..50, p in -100i128..100, r in 1i128..50) {
            let x = QuadraticNumber::new(a, b, c, 7).unwrap();
            let y = QuadraticNumber::rational(p, r).unwrap();
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x < y, fx < fy);
            }
        }
    }
}
