use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A single radix digit `0 ≤ a ≤ B − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Digit(pub u32);

impl Digit {
    pub fn value(self) -> u32 {
        self.0
    }
}

/// A finite word of digits, e.g. the label of a cylinder `𝒯_{a₁…a_m}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DigitWord(pub Vec<u32>);

impl DigitWord {
    pub fn new(digits: Vec<u32>) -> Self {
        DigitWord(digits)
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &DigitWord) -> DigitWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DigitWord(v)
    }
}

impl From<&[u32]> for DigitWord {
    fn from(d: &[u32]) -> Self {
        DigitWord(d.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for DigitWord {
    fn from(d: [u32; N]) -> Self {
        DigitWord(d.to_vec())
    }
}

/// An eventually periodic radix expansion
/// `a₋ₗ…a₀ . b₁…b_q c₁…c_p c₁…c_p …`.
///
/// Construction canonicalizes: the period is primitive, the preperiod does
/// not end with a rotated copy of the period, and the integer part carries no
/// leading zeros. Two different canonical addresses may still denote the same
/// point; compare values with [`point_eval`](super::point_eval).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address {
    integer_part: DigitWord,
    preperiod: DigitWord,
    period: DigitWord,
}

impl Address {
    pub fn new(integer_part: Vec<u32>, preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("address period must be nonempty".into()));
        }
        let mut int = integer_part;
        let lead = int.iter().take_while(|&&d| d == 0).count();
        int.drain(..lead);
        let (pre, per) = canonical_tail(preperiod, &period);
        Ok(Address {
            integer_part: DigitWord(int),
            preperiod: DigitWord(pre),
            period: DigitWord(per),
        })
    }

    /// `0.b₁…b_q (c₁…c_p)̄`.
    pub fn fractional(preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        Address::new(Vec::new(), preperiod, period)
    }

    /// `0.(c₁…c_p)̄`.
    pub fn purely_periodic(period: Vec<u32>) -> Result<Self> {
        Address::new(Vec::new(), Vec::new(), period)
    }

    pub fn integer_part(&self) -> &DigitWord {
        &self.integer_part
    }

    pub fn preperiod(&self) -> &DigitWord {
        &self.preperiod
    }

    pub fn period(&self) -> &DigitWord {
        &self.period
    }

    /// The `n`-th fractional digit (1-based).
    pub fn digit(&self, n: usize) -> u32 {
        assert!(n >= 1);
        let q = self.preperiod.len();
        if n <= q {
            self.preperiod.0[n - 1]
        } else {
            let p = self.period.len();
            self.period.0[(n - q - 1) % p]
        }
    }

    /// The first `n` fractional digits.
    pub fn prefix(&self, n: usize) -> Vec<u32> {
        (1..=n).map(|i| self.digit(i)).collect()
    }

    /// Prepends fractional digits: `0.w` ↦ `0.u w`.
    pub fn prepend(&self, u: &[u32]) -> Address {
        let mut pre = u.to_vec();
        pre.extend_from_slice(&self.preperiod.0);
        Address::new(self.integer_part.0.clone(), pre, self.period.0.clone())
            .expect("period stays nonempty")
    }

    /// Drops the first `n` fractional digits.
    pub fn shift(&self, n: usize) -> Address {
        let q = self.preperiod.len();
        if n <= q {
            Address::fractional(self.preperiod.0[n..].to_vec(), self.period.0.clone())
                .expect("period stays nonempty")
        } else {
            let mut per = self.period.0.clone();
            let r = (n - q) % per.len();
            per.rotate_left(r);
            Address::fractional(Vec::new(), per).expect("period stays nonempty")
        }
    }

    pub fn max_digit(&self) -> u32 {
        self.integer_part
            .0
            .iter()
            .chain(&self.preperiod.0)
            .chain(&self.period.0)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Renders the expansion with a combining overline on each period digit,
    /// so `0.(2)` prints as `0.2̄`.
    pub fn to_overline_string(&self) -> String {
        let mut s = String::new();
        if self.integer_part.is_empty() {
            s.push('0');
        } else {
            push_digits(&mut s, &self.integer_part.0);
        }
        s.push('.');
        push_digits(&mut s, &self.preperiod.0);
        let mut per = String::new();
        push_digits(&mut per, &self.period.0);
        for ch in per.chars() {
            s.push(ch);
            s.push('\u{0304}');
        }
        s
    }
}

/// Shortest preperiod and primitive period describing `pre·(per)̄`.
pub(crate) fn canonical_tail<T: Clone + PartialEq>(mut pre: Vec<T>, period: &[T]) -> (Vec<T>, Vec<T>) {
    let mut per = primitive_root(period);
    while let (Some(p), Some(c)) = (pre.last(), per.last()) {
        if p != c {
            break;
        }
        pre.pop();
        per.rotate_right(1);
    }
    (pre, per)
}

fn primitive_root<T: Clone + PartialEq>(w: &[T]) -> Vec<T> {
    let n = w.len();
    for p in 1..=n {
        if n % p == 0 && (p..n).all(|i| w[i] == w[i - p]) {
            return w[..p].to_vec();
        }
    }
    w.to_vec()
}

fn push_digits(s: &mut String, digits: &[u32]) {
    let mut i = 0;
    while i < digits.len() {
        if digits[i] < 10 {
            s.push(char::from_digit(digits[i], 10).unwrap());
            i += 1;
        } else {
            let j = digits[i..].iter().position(|&d| d < 10).map_or(digits.len(), |k| i + k);
            let parts: Vec<String> = digits[i..j].iter().map(|d| d.to_string()).collect();
            s.push('[');
            s.push_str(&parts.join(","));
            s.push(']');
            i = j;
        }
    }
}

/// Text syntax: `[int.]pre(period)`, e.g. `440(04)`, `0.2(3)`, `1.[10,11](0)`.
impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.integer_part.is_empty() {
            s.push('0');
        } else {
            push_digits(&mut s, &self.integer_part.0);
        }
        s.push('.');
        push_digits(&mut s, &self.preperiod.0);
        s.push('(');
        push_digits(&mut s, &self.period.0);
        s.push(')');
        f.write_str(&s)
    }
}

fn parse_digits(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '0'..='9' => out.push(c.to_digit(10).unwrap()),
            '[' => {
                let mut group = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(ch) => group.push(ch),
                        None => return Err(Error::Parse(format!("unclosed '[' in {s:?}"))),
                    }
                }
                for tok in group.split(',') {
                    let tok = tok.trim();
                    let d: u32 = tok
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad digit {tok:?} in {s:?}")))?;
                    out.push(d);
                }
            }
            c if c.is_whitespace() => {}
            _ => return Err(Error::Parse(format!("unexpected {c:?} in digits {s:?}"))),
        }
    }
    Ok(out)
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (int, frac) = match s.find('.') {
            Some(i) => (&s[..i], &s[i + 1..]),
            None => ("", s),
        };
        let open = frac
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing '(period)' in {s:?}")))?;
        if !frac.ends_with(')') {
            return Err(Error::Parse(format!("period must close the address: {s:?}")));
        }
        let pre = parse_digits(&frac[..open])?;
        let per = parse_digits(&frac[open + 1..frac.len() - 1])?;
        Address::new(parse_digits(int)?, pre, per)
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Address {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
