use std::cmp::Ordering;

use serde_json::json;

use super::ContactGraph;
use crate::error::{Error, Result};
use crate::poly::{char_poly, Poly};
use crate::qbeta::{NumberField, QBeta};

/// Incidence matrix, Perron root `β` and the normalized positive left
/// eigenvector `u` of the contact graph, all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerronData {
    /// `𝐃[t][s]` counts the edges `s → t`.
    pub incidence: Vec<Vec<i64>>,
    pub char_poly: Poly,
    pub field: NumberField,
    /// Indexed by state; `Σ u = 1`.
    pub u: Vec<QBeta>,
}

/// Null vector of a square matrix over `ℚ(β)` with one-dimensional kernel.
fn null_vector(k: &NumberField, mut m: Vec<Vec<QBeta>>) -> Result<Vec<QBeta>> {
    let n = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = k.inv(&m[row][col])?;
        for c in 0..n {
            m[row][c] = k.mul(&m[row][c], &inv);
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let t = k.mul(&f, &m[row][c]);
                    m[r][c] = k.sub(&m[r][c], &t);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.iter().any(|p| p.1 == *c)).collect();
    if free.len() != 1 {
        return Err(Error::NotIrreducible);
    }
    let f = free[0];
    let mut v = vec![k.zero(); n];
    v[f] = k.one();
    for &(r, c) in &pivots {
        v[c] = k.neg(&m[r][f]);
    }
    Ok(v)
}

pub fn perron_data(graph: &ContactGraph) -> Result<PerronData> {
    if !graph.is_strongly_connected() {
        return Err(Error::NotIrreducible);
    }
    let d = graph.incidence();
    let cp = char_poly(&d);
    let field = NumberField::largest_root_of(&cp)?;
    let beta = field.beta();
    // u·𝐃 = β·u ⟺ (𝐃ᵀ − β)uᵀ = 0
    let m: Vec<Vec<QBeta>> = (0..6)
        .map(|s| {
            (0..6)
                .map(|t| {
                    let x = field.from_int(d[t][s]);
                    if s == t {
                        field.sub(&x, &beta)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let v = null_vector(&field, m)?;
    let total = v.iter().fold(field.zero(), |acc, x| field.add(&acc, x));
    let inv = field.inv(&total)?;
    let u: Vec<QBeta> = v.iter().map(|x| field.mul(x, &inv)).collect();
    if u.iter().any(|x| field.signum(x) != Ordering::Greater) {
        return Err(Error::CertificateFailure("Perron vector is not strictly positive".into()));
    }
    Ok(PerronData { incidence: d, char_poly: cp, field, u })
}

impl PerronData {
    pub fn beta(&self) -> QBeta {
        self.field.beta()
    }

    /// Checks `u·𝐃 = β·u` and `Σ u = 1` exactly.
    pub fn verify(&self) -> bool {
        let k = &self.field;
        let beta = k.beta();
        // (u·𝐃)_s = Σ_t u_t 𝐃[t][s]
        let eig = (0..6).all(|s| {
                let lhs = (0..6).fold(k.zero(), |acc, t| {
                    k.add(&acc, &k.mul(&self.u[t], &k.from_int(self.incidence[t][s])))
                });
                lhs == k.mul(&beta, &self.u[s])
            });
        let sum = self.u.iter().fold(k.zero(), |acc, x| k.add(&acc, x));
        eig && sum == k.one()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let k = &self.field;
        let (lo, hi) = k.interval();
        json!({
            "schema": "cnstile.perron/v1",
            "incidence": self.incidence,
            "char_poly": self.char_poly.to_string(),
            "min_poly": k.minpoly().to_string(),
            "beta_interval": [lo.to_string(), hi.to_string()],
            "beta": k.beta_f64(),
            "u": self.u.iter().map(|x| json!({"exact": x.to_string(), "approx": k.to_f64(x)})).collect::<Vec<_>>(),
        })
    }
}
