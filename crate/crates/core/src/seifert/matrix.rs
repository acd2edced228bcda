//! Seifert matrices and the invariants they determine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::SeifertError;
use crate::poly::LaurentPoly;
use crate::presentations::BraidWord;

/// What a basis curve of a Seifert matrix is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisCurve {
    /// Runs down band `first` and back up band `second`, both in braid column
    /// `column` (letter positions in the braid word).
    Bands { column: usize, first: usize, second: usize },
    /// Added by an elementary enlargement.
    Enlargement,
    /// Supplied from outside.
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub entries: Vec<Vec<i64>>,
    pub basis: Vec<BasisCurve>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnlargeMode {
    Row,
    Column,
}

impl SeifertMatrix {
    pub fn empty() -> Self {
        SeifertMatrix {
            entries: Vec::new(),
            basis: Vec::new(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(SeifertError::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        Ok(SeifertMatrix {
            basis: vec![BasisCurve::Given; n],
            entries: rows,
        })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect()
    }

    /// `det(S - S^T)`.
    pub fn intersection_det(&self) -> i64 {
        let n = self.size();
        let m = (0..n)
            .map(|i| (0..n).map(|j| self.entries[i][j] - self.entries[j][i]).collect())
            .collect::<Vec<Vec<i64>>>();
        int_det(&m).to_i64().expect("determinant fits in i64")
    }

    /// `P^T S P`.
    pub fn congruent(&self, p: &[Vec<i64>]) -> Result<SeifertMatrix, SeifertError> {
        let n = self.size();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(SeifertError::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        let sp: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.entries[i][k] * p[k][j]).sum()).collect())
            .collect();
        let out = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| p[k][i] * sp[k][j]).sum()).collect())
            .collect();
        Ok(SeifertMatrix {
            entries: out,
            basis: vec![BasisCurve::Given; n],
        })
    }
}

/// Seifert matrix of the closure of `b`, from the surface with one disk per
/// strand and one half-twisted band per letter.
pub fn braid_seifert_matrix(b: &BraidWord) -> SeifertMatrix {
    let w = b.letters();
    let sign = |k: usize| w[k].signum() as i64;
    let mut loops = Vec::new();
    for col in 1..b.strands() {
        let pos: Vec<usize> = (0..w.len()).filter(|&k| w[k].unsigned_abs() as usize == col).collect();
        for p in pos.windows(2) {
            loops.push((col, p[0], p[1]));
        }
    }
    let n = loops.len();
    let mut s = vec![vec![0i64; n]; n];
    for (x, &(i, a, b)) in loops.iter().enumerate() {
        s[x][x] = -(sign(a) + sign(b)) / 2;
        for (y, &(j, c, d)) in loops.iter().enumerate() {
            if i == j && b == c {
                s[x][y] = (1 + sign(b)) / 2;
                s[y][x] = -(1 - sign(b)) / 2;
            } else if j == i + 1 {
                if a < c && c < b && b < d {
                    let (p, q) = INTERLEAVE_FORWARD;
                    s[x][y] = p;
                    s[y][x] = q;
                } else if c < a && a < d && d < b {
                    let (p, q) = INTERLEAVE_BACKWARD;
                    s[x][y] = p;
                    s[y][x] = q;
                }
            }
        }
    }
    SeifertMatrix {
        entries: s,
        basis: loops
            .into_iter()
            .map(|(column, first, second)| BasisCurve::Bands { column, first, second })
            .collect(),
    }
}

// (S[x][y], S[y][x]) for loop x in column i and loop y in column i + 1 whose
// bands interleave with x's first band earliest, resp. y's.
const INTERLEAVE_FORWARD: (i64, i64) = (-1, 0);
const INTERLEAVE_BACKWARD: (i64, i64) = (1, 0);

fn big_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact integer determinant (fraction-free elimination).
pub fn int_det(m: &[Vec<i64>]) -> BigInt {
    big_det(m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
}

/// `det(t^{1/2} S - t^{-1/2} S^T)`, rescaled by `±t^k` so it is symmetric
/// with positive top coefficient.
pub fn alexander_from_seifert(s: &SeifertMatrix) -> LaurentPoly {
    let n = s.size();
    // det(tS - S^T) has degree <= n; interpolate through t = 0..=n
    let values: Vec<BigRational> = (0..=n as i64)
        .map(|t| {
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| BigInt::from(t * s.entries[i][j] - s.entries[j][i]))
                        .collect()
                })
                .collect();
            BigRational::from_integer(big_det(m))
        })
        .collect();
    let coeffs = interpolate(&values);
    let raw = LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(k, c)| {
        let c = c.to_integer().to_i64().expect("coefficient fits in i64");
        (4 * k as i64 - 2 * n as i64, c)
    }));
    normalize_alexander(&raw)
}

/// Newton interpolation through `(k, values[k])`; returns power-basis coefficients.
fn interpolate(values: &[BigRational]) -> Vec<BigRational> {
    let n = values.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(j));
        }
    }
    // expand sum dd[j] * prod_{k<j} (t - k)
    let mut out = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (j, c) in dd.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            out[k] += c * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b;
            next[k] -= b * BigRational::from_integer(BigInt::from(j));
        }
        basis = next;
    }
    for c in &out {
        debug_assert!(c.is_integer());
    }
    out
}

/// Shifts so the exponents are centred on zero and makes the top coefficient
/// positive.
pub fn normalize_alexander(p: &LaurentPoly) -> LaurentPoly {
    let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
        return p.clone();
    };
    let shifted = p.shift(-(lo + hi) / 2);
    let top = shifted.coeff(shifted.max_exp().expect("nonzero"));
    if top.re < 0 || (top.re == 0 && top.im < 0) {
        -shifted
    } else {
        shifted
    }
}

/// `|det(S + S^T)| = |Δ(-1)|`.
pub fn determinant(s: &SeifertMatrix) -> u64 {
    let n = s.size();
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| s.entries[i][j] + s.entries[j][i]).collect())
        .collect();
    int_det(&m).abs().to_u64().expect("determinant fits in u64")
}

/// Signature of `S + S^T` by exact congruence diagonalization.
pub fn signature(s: &SeifertMatrix) -> i64 {
    let n = s.size();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(BigInt::from(s.entries[i][j] + s.entries[j][i])))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        // pivot on a nonzero diagonal entry, or make one with i <-> i + j
        let pivot = live.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row/column operation r_i += r_j makes m[i][i] = 2 m[i][j]
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[i][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][i] += v;
                }
                i
            }
        };
        let d = m[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        live.retain(|&i| i != p);
        for &i in &live {
            let f = &m[i][p] / &d;
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let v = &f * &m[p][k];
                m[i][k] -= v;
            }
            for k in 0..n {
                let v = &f * &m[k][p];
                m[k][i] -= v;
            }
        }
    }
    sig
}

/// Leading coefficient is a unit.
pub fn is_monic(delta: &LaurentPoly) -> bool {
    match delta.max_exp() {
        Some(e) => delta.coeff(e).is_unit(),
        None => false,
    }
}

/// Trotter's elementary enlargement: `Column` gives
/// `[[S, x, 0], [0, 0, 1], [0, 0, 0]]`, `Row` its transpose pattern
/// `[[S, 0, 0], [xᵀ, 0, 0], [0, 1, 0]]`.
pub fn elementary_enlarge(s: &SeifertMatrix, mode: EnlargeMode, x: &[i64]) -> Result<SeifertMatrix, SeifertError> {
    let n = s.size();
    if x.len() != n {
        return Err(SeifertError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let mut e = vec![vec![0i64; n + 2]; n + 2];
    for i in 0..n {
        e[i][..n].copy_from_slice(&s.entries[i]);
    }
    match mode {
        EnlargeMode::Column => {
            for i in 0..n {
                e[i][n] = x[i];
            }
            e[n][n + 1] = 1;
        }
        EnlargeMode::Row => {
            e[n][..n].copy_from_slice(x);
            e[n + 1][n] = 1;
        }
    }
    let mut basis = s.basis.clone();
    basis.extend([BasisCurve::Enlargement; 2]);
    Ok(SeifertMatrix { entries: e, basis })
}
