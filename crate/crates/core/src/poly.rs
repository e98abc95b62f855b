//! Univariate polynomials over ℚ, Sturm sequences and real root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant(x: BigRational) -> Self {
        Poly::new(vec![x])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `deg 0 = -1`.
    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Poly::new(self.c.iter().map(|x| x / &l).collect())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let l = d.lead();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); r.len() - dd];
        for k in (0..quot.len()).rev() {
            let f = &r[k + dd] / &l;
            if !f.is_zero() {
                for (j, dc) in d.c.iter().enumerate() {
                    r[k + j] -= &f * dc;
                }
            }
            quot[k] = f;
        }
        r.truncate(dd);
        (Poly::new(quot), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `s·self ≡ g (mod m)`, `g = gcd(self, m)` monic.
    pub fn gcd_ext_mod(&self, m: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Poly::zero(), Poly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (qq, r) = r0.div_rem(&r1);
            let s = s0.sub(&qq.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let l = r0.lead();
        let inv = BigRational::one() / l;
        (r0.scale(&inv), s0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.c
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Range of the polynomial over `[lo, hi]` by interval Horner; contains the true range.
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut a = BigRational::zero();
        let mut b = BigRational::zero();
        for c in self.c.iter().rev() {
            let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
            let mn = prods.iter().min().cloned().expect("nonempty");
            let mx = prods.iter().max().cloned().expect("nonempty");
            a = mn + c;
            b = mx + c;
        }
        (a, b)
    }

    /// `p / gcd(p, p')`.
    pub fn squarefree(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn is_integral_monic(&self) -> bool {
        self.lead().is_one() && self.c.iter().all(|x| x.is_integer())
    }

    /// Complex roots by the Durand–Kerner iteration (numerical; squarefree input expected).
    pub fn complex_roots(&self) -> Vec<Complex64> {
        let p = self.monic();
        let n = p.c.len().saturating_sub(1);
        if n == 0 {
            return vec![];
        }
        let bound = 1.0
            + p.c[..n]
                .iter()
                .map(|x| x.to_f64().unwrap_or(0.0).abs())
                .fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();
        for _ in 0..2000 {
            let mut delta = 0.0f64;
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= z[i] - z[j];
                    }
                }
                let step = p.eval_complex(z[i]) / den;
                z[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 {
                break;
            }
        }
        z
    }

    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            seq.push(r);
        }
        seq.pop();
        seq
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let seq = self.sturm_sequence();
        sign_variations(&seq, lo) - sign_variations(&seq, hi)
    }

    /// Cauchy bound: every root has modulus below it.
    pub fn root_bound(&self) -> BigRational {
        let l = self.lead().abs();
        let m = self.c[..self.c.len() - 1]
            .iter()
            .map(|x| x.abs() / &l)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Interval `(lo, hi]` of width at most `2^-bits` isolating the largest real root.
    pub fn isolate_largest_root(&self, bits: u32) -> Option<(BigRational, BigRational)> {
        let sq = self.squarefree();
        let mut hi = sq.root_bound();
        let mut lo = -hi.clone();
        if sq.count_roots(&lo, &hi) == 0 {
            return None;
        }
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let two = q(2);
        loop {
            let done = &hi - &lo <= eps && sq.count_roots(&lo, &hi) == 1;
            if done {
                return Some((lo, hi));
            }
            let mid = (&lo + &hi) / &two;
            if sq.count_roots(&mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    /// Smallest-degree monic integer factor of `self` (assumed monic integral)
    /// having the real root inside `(lo, hi]`. Candidates come from grouping
    /// numerical roots; every candidate is confirmed by exact division.
    pub fn minimal_factor(&self, lo: &BigRational, hi: &BigRational) -> Poly {
        let sq = self.squarefree();
        let roots = sq.complex_roots();
        let n = roots.len();
        let mid = ((lo + hi) / q(2)).to_f64().unwrap_or(f64::NAN);
        let Some(bi) = (0..n).min_by(|&i, &j| {
            (roots[i] - mid).norm().total_cmp(&(roots[j] - mid).norm())
        }) else {
            return sq;
        };
        let others: Vec<usize> = (0..n).filter(|&i| i != bi).collect();
        let mut subsets: Vec<u32> = (0..(1u32 << others.len())).collect();
        subsets.sort_by_key(|m| (m.count_ones(), *m));
        for mask in subsets {
            let mut prod = vec![Complex64::new(1.0, 0.0)];
            let chosen = std::iter::once(bi)
                .chain(others.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i));
            for i in chosen {
                let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                for (k, c) in prod.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * roots[i];
                }
                prod = next;
            }
            if prod.iter().any(|c| c.im.abs() > 1e-6 || (c.re - c.re.round()).abs() > 1e-6) {
                continue;
            }
            let cand = Poly::new(prod.iter().map(|c| q(c.re.round() as i64)).collect());
            if sq.rem(&cand).is_zero() && cand.count_roots(lo, hi) == 1 {
                return cand;
            }
        }
        sq
    }
}

fn sign_variations(seq: &[Poly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for p in seq {
        let y = p.eval(x);
        let s = if y.is_positive() {
            1
        } else if y.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Characteristic polynomial `det(xI − D)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(d: &[Vec<i64>]) -> Poly {
    let n = d.len();
    let a: Vec<Vec<BigRational>> = d.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let matmul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I
        let mut mk = matmul(&a, &m);
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        let am = matmul(&a, &mk);
        let tr = (0..n).fold(BigRational::zero(), |s, i| s + &am[i][i]);
        c[n - k] = -tr / q(k as i64);
        m = mk;
    }
    Poly::new(c)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show = i == 0 || !a.is_one();
            if show {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
