use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{OrderedContactGraph, PerronData};
use crate::error::{Error, Result};
use crate::numsys::{canonical_tail, point_eval, Address};
use crate::qbeta::QBeta;
use crate::RationalPoint;

/// A parameter in `ℚ(β) ∩ [0, 1]`.
pub type ParamValue = QBeta;

const MAX_PARAM_STEPS: usize = 256;

/// A walk `(i; 𝐨₁, 𝐨₂, …)` in `G°`: a start state and edge order indices,
/// stored 0-based. An empty period means a finite walk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub start: usize,
    pub preperiod: Vec<usize>,
    pub period: Vec<usize>,
}

impl Walk {
    pub fn finite(start: usize, letters: Vec<usize>) -> Walk {
        Walk { start, preperiod: letters, period: Vec::new() }
    }

    pub fn periodic(start: usize, preperiod: Vec<usize>, period: Vec<usize>) -> Walk {
        if period.is_empty() {
            return Walk::finite(start, preperiod);
        }
        let (preperiod, period) = canonical_tail(preperiod, &period);
        Walk { start, preperiod, period }
    }

    pub fn is_infinite(&self) -> bool {
        !self.period.is_empty()
    }

    /// `w & 𝐨̄` for a finite walk.
    pub fn then_constant(&self, letter: usize) -> Walk {
        Walk::periodic(self.start, self.preperiod.clone(), vec![letter])
    }

    /// The `n`-th letter (0-based position).
    pub fn letter(&self, n: usize) -> Option<usize> {
        if n < self.preperiod.len() {
            Some(self.preperiod[n])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(n - self.preperiod.len()) % self.period.len()])
        }
    }

    /// Checks that every letter is a valid edge order along the way.
    pub fn validate(&self, g: &OrderedContactGraph) -> Result<()> {
        if self.start >= 6 {
            return Err(Error::InvalidWalk(format!("state {} out of range 1..6", self.start + 1)));
        }
        let steps = self.preperiod.len() + 6 * self.period.len().max(1);
        let mut s = self.start;
        for n in 0..steps {
            let Some(k) = self.letter(n) else { break };
            if k >= g.out_degree(s) {
                return Err(Error::InvalidWalk(format!(
                    "letter {} exceeds the {} edges of state {}",
                    k + 1,
                    g.out_degree(s),
                    s + 1
                )));
            }
            s = g.edge(s, k).target;
        }
        Ok(())
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start + 1)?;
        let mut parts: Vec<String> = self.preperiod.iter().map(|k| (k + 1).to_string()).collect();
        if !self.period.is_empty() {
            let per: Vec<String> = self.period.iter().map(|k| (k + 1).to_string()).collect();
            parts.push(format!("({})", per.join(",")));
        }
        if !parts.is_empty() {
            write!(f, ";{}", parts.join(","))?;
        }
        Ok(())
    }
}

/// Parses `"3;2,1,3,(2)"` or `"5;2,(6)"`; letters and states are 1-based.
impl FromStr for Walk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Walk> {
        let bad = || Error::Parse(format!("invalid walk {s:?}"));
        let s = s.trim();
        let s = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            Some(inner) if !inner.contains('(') || inner.ends_with(')') => inner,
            _ => s,
        };
        let (st, rest) = match s.split_once(';') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        let start: usize = st.trim().parse().map_err(|_| bad())?;
        if !(1..=6).contains(&start) {
            return Err(bad());
        }
        let (pre_s, per_s) = match rest.find('(') {
            Some(i) => {
                let close = rest.rfind(')').ok_or_else(bad)?;
                (&rest[..i], Some(&rest[i + 1..close]))
            }
            None => (rest, None),
        };
        let nums = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| match x.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(bad()),
                })
                .collect()
        };
        let pre = nums(pre_s)?;
        match per_s {
            Some(p) => {
                let per = nums(p)?;
                if per.is_empty() {
                    return Err(bad());
                }
                Ok(Walk::periodic(start - 1, pre, per))
            }
            None => Ok(Walk::finite(start - 1, pre)),
        }
    }
}

/// Digits read along the walk, as an eventually periodic address.
pub fn psi(walk: &Walk, g: &OrderedContactGraph) -> Result<Address> {
    walk.validate(g)?;
    if !walk.is_infinite() {
        return Err(Error::InvalidWalk("ψ needs an infinite walk".into()));
    }
    let mut s = walk.start;
    let mut digits = Vec::new();
    for &k in &walk.preperiod {
        let e = g.edge(s, k);
        digits.push(e.digit);
        s = e.target;
    }
    // lasso in (state, position in period)
    let p = walk.period.len();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pos = 0;
    let tail_start = digits.len();
    loop {
        if let Some(&at) = seen.get(&(s, pos)) {
            let per = digits.split_off(at);
            return Address::fractional(digits, per);
        }
        seen.insert((s, pos), digits.len());
        let e = g.edge(s, walk.period[pos]);
        digits.push(e.digit);
        s = e.target;
        pos = (pos + 1) % p;
        debug_assert!(digits.len() - tail_start <= 6 * p + 1);
    }
}

/// `ψ` followed by exact evaluation.
pub fn walk_point(walk: &Walk, g: &OrderedContactGraph) -> Result<RationalPoint> {
    Ok(point_eval(&psi(walk, g)?, g.params()))
}

/// Offset of edge `k` inside the interval of state `s`, before scaling by `1/β`:
/// `Σ_{k′<k} u_{target(k′)}`.
fn edge_offset(g: &OrderedContactGraph, data: &PerronData, s: usize, k: usize) -> QBeta {
    let f = &data.field;
    (0..k).fold(f.zero(), |acc, j| f.add(&acc, &data.u[g.edge(s, j).target]))
}

/// The parameter `t` of an infinite walk:
/// `t = Σ_{i<start} uᵢ + Σ_{n≥1} β^{−n} Σ_{k<𝐨ₙ} u_{target}`.
pub fn walk_to_param(walk: &Walk, data: &PerronData, g: &OrderedContactGraph) -> Result<ParamValue> {
    walk.validate(g)?;
    let f = &data.field;
    let beta_inv = f.inv(&f.beta())?;
    let mut t = (0..walk.start).fold(f.zero(), |acc, i| f.add(&acc, &data.u[i]));
    let mut scale = beta_inv.clone();
    let mut s = walk.start;
    for &k in &walk.preperiod {
        t = f.add(&t, &f.mul(&scale, &edge_offset(g, data, s, k)));
        s = g.edge(s, k).target;
        scale = f.mul(&scale, &beta_inv);
    }
    if !walk.is_infinite() {
        return Ok(t);
    }
    // The state sequence along repeated periods is eventually periodic; sum
    // one lasso explicitly and close the cycle with a geometric series.
    let p = walk.period.len();
    let mut seen: HashMap<(usize, usize), (QBeta, QBeta)> = HashMap::new();
    let mut pos = 0;
    let mut acc = f.zero();
    let mut sc = f.one();
    loop {
        if let Some((acc0, sc0)) = seen.get(&(s, pos)) {
            // acc = acc0 + sc0·X_cycle, and the cycle repeats with ratio sc/sc0
            let cyc = f.sub(&acc, acc0);
            let ratio = f.div(&sc, sc0)?;
            let tail = f.div(&cyc, &f.sub(&f.one(), &ratio))?;
            let total = f.add(acc0, &tail);
            return Ok(f.add(&t, &f.mul(&scale, &f.mul(&total, &f.beta()))));
        }
        seen.insert((s, pos), (acc.clone(), sc.clone()));
        let k = walk.period[pos];
        sc = f.mul(&sc, &beta_inv);
        acc = f.add(&acc, &f.mul(&sc, &edge_offset(g, data, s, k)));
        s = g.edge(s, k).target;
        pos = (pos + 1) % p;
    }
}

/// `φ⁽¹⁾(t)`: the walk selected by the nested interval partition of `[0, 1]`.
/// A parameter on a subdivision point takes the left interval, which yields
/// the left-maximal walk.
pub fn param_to_walk(t: &ParamValue, data: &PerronData, g: &OrderedContactGraph) -> Result<Walk> {
    let f = &data.field;
    if f.signum(t) == Ordering::Less || f.cmp(t, &f.one()) == Ordering::Greater {
        return Err(Error::OutOfRange(format!("parameter {t} outside [0, 1]")));
    }
    let beta = f.beta();
    let start = data_start(t, data);
    let offset = (0..start).fold(f.zero(), |acc, i| f.add(&acc, &data.u[i]));
    let mut s = start;
    // x ∈ [0, u_s]; rescale so the edge intervals have lengths u_target
    let mut x = f.mul(&f.sub(t, &offset), &beta);
    let mut letters = Vec::new();
    let mut seen: HashMap<(usize, QBeta), usize> = HashMap::new();
    for _ in 0..MAX_PARAM_STEPS {
        if let Some(&at) = seen.get(&(s, x.clone())) {
            let per = letters.split_off(at);
            return Ok(Walk::periodic(start, letters, per));
        }
        seen.insert((s, x.clone()), letters.len());
        let n = g.out_degree(s);
        let mut k = 0;
        let mut off = f.zero();
        loop {
            let w = &data.u[g.edge(s, k).target];
            let end = f.add(&off, w);
            if k + 1 == n || f.cmp(&x, &end) != Ordering::Greater {
                break;
            }
            off = end;
            k += 1;
        }
        letters.push(k);
        x = f.mul(&f.sub(&x, &off), &beta);
        s = g.edge(s, k).target;
    }
    Err(Error::NonPeriodicWalk(MAX_PARAM_STEPS))
}

/// The state whose interval `(c_i, c_{i+1}]` holds `t`; `t = 0` is in the first.
fn data_start(t: &ParamValue, data: &PerronData) -> usize {
    let f = &data.field;
    let mut x = t.clone();
    let mut s = 0;
    while s < 5 && f.cmp(&x, &data.u[s]) == Ordering::Greater {
        x = f.sub(&x, &data.u[s]);
        s += 1;
    }
    s
}

/// `C(t) = ψ(φ⁽¹⁾(t))`, evaluated exactly.
pub fn boundary_point(t: &ParamValue, data: &PerronData, g: &OrderedContactGraph) -> Result<RationalPoint> {
    walk_point(&param_to_walk(t, data, g)?, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_text_round_trip() {
        let w: Walk = "3;2,1,3,(2)".parse().unwrap();
        assert_eq!(w.start, 2);
        assert_eq!(w.preperiod, vec![1, 0, 2]);
        assert_eq!(w.period, vec![1]);
        assert_eq!(w.to_string(), "3;2,1,3,(2)");
        let w: Walk = "5;2,(6,6)".parse().unwrap();
        assert_eq!(w.to_string(), "5;2,(6)");
        let w: Walk = "1;(1)".parse().unwrap();
        assert_eq!(w.to_string(), "1;(1)");
        assert!("7;1".parse::<Walk>().is_err());
        assert!("1;0".parse::<Walk>().is_err());
    }
}
