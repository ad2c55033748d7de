//! Exact integer and rational arithmetic: binomials, multinomials, rising
//! factorials and enumeration of integer compositions and partitions.
//!
//! Every gamma ratio `Γ(x + k) / Γ(x)` with a nonnegative integer offset is
//! handled as the rising factorial `(x)_k`, so nothing here ever touches
//! floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Build a rational from a small numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `"p/q"` in lowest terms, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parse a rational literal (`"3"`, `"-1/2"`) or a finite decimal
/// (`"0.25"`, `"-1.5e-3"`). Decimals convert exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }

    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{whole}{frac}");
    let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Integer power of a rational (negative exponents allowed for nonzero base).
pub fn rpow(base: &Rational, exp: i32) -> Rational {
    num_traits::Pow::pow(base, exp)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `r! / (i_1! ⋯ i_n!)` for a composition of `r`.
pub fn multinomial(r: u32, parts: &Composition) -> Result<BigInt> {
    if parts.order() != r {
        return Err(Error::contract(format!(
            "multinomial: parts sum to {} but r = {r}",
            parts.order()
        )));
    }
    Ok(multinomial_of(parts.parts()))
}

pub(crate) fn multinomial_of(parts: &[u32]) -> BigInt {
    // Product of binomials avoids the large r! intermediate.
    let mut total = 0;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// Rising factorial `x (x+1) ⋯ (x+k-1)`; equals `Γ(x+k)/Γ(x)`.
pub fn pochhammer(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += BigInt::one();
    }
    acc
}

/// An ordered tuple of `n >= 1` nonnegative integers with a fixed sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
    order: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::contract("a composition needs at least one part"));
        }
        let order = parts.iter().sum();
        Ok(Self { parts, order })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The sum `r` of the parts.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Streaming enumeration of all compositions of `r` into `n` nonnegative parts.
///
/// Order: the first coordinate varies slowest and counts down from `r`, so
/// `(2,2)` yields `(2,0), (1,1), (0,2)`. Each step costs O(n) and the iterator
/// holds a single working vector.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Vec<u32>,
    done: bool,
}

pub fn compositions(r: u32, n: usize) -> Compositions {
    assert!(n >= 1, "compositions need n >= 1");
    let mut current = vec![0; n];
    current[0] = r;
    Compositions { current, done: false }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let n = self.current.len();
        // Find the rightmost nonzero entry among the first n-1 coordinates,
        // move one unit right, then gather everything after it into the next slot.
        match (0..n - 1).rev().find(|&i| self.current[i] > 0) {
            None => self.done = true,
            Some(i) => {
                let tail: u32 = self.current[i + 1..].iter().sum();
                self.current[i] -= 1;
                for v in &mut self.current[i + 1..] {
                    *v = 0;
                }
                self.current[i + 1] = tail + 1;
            }
        }
        let order = out.iter().sum();
        Some(Composition { parts: out, order })
    }
}

/// Partitions of `r` into at most `max_parts` positive parts, each part in
/// nonincreasing order. Yields the empty partition for `r = 0`.
pub fn partitions(r: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Number of distinct compositions of length `n` whose nonzero parts are a
/// rearrangement of `partition` (zeros filling the remaining slots).
pub fn arrangements(n: usize, partition: &[u32]) -> BigInt {
    let k = partition.len();
    if k > n {
        return BigInt::zero();
    }
    let mut counts: Vec<u32> = Vec::new();
    let mut prev = None;
    for &p in partition {
        if prev == Some(p) {
            *counts.last_mut().unwrap() += 1;
        } else {
            counts.push(1);
            prev = Some(p);
        }
    }
    counts.push((n - k) as u32);
    multinomial_of(&counts)
}

/// `true` when `q` is an integer.
pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}
