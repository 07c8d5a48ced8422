//! Hirzebruch-Jung resolution data of `X(d;1,q)` and the invariants read off it.
//!
//! The by-excess Euclidean algorithm `q_{i-1} = c_i q_i - q_{i+1}` on
//! `(q_0, q_1) = (d, q)` gives the bamboo of exceptional curves `E_i` with
//! `E_i^2 = -c_i`. Together with `q̄_0 = 0, q̄_1 = 1,
//! q̄_{i+1} = c_i q̄_i - q̄_{i-1}` it yields the relative canonical divisor
//! `K_pi = sum ((q_i + q̄_i)/d - 1) E_i` and the log-canonical threshold.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{integer, BigInt, Rational};
use crate::correction::correction_r_1q;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HjData {
    pub order: u64,
    /// `c_1..c_n`, each `>= 2`.
    pub c: Vec<u64>,
    /// `q_1..q_n`, strictly decreasing with `q_1 = q` and `q_n = 1`.
    pub q: Vec<u64>,
    /// `q̄_1..q̄_n`, strictly increasing with `q̄_1 = 1`.
    pub qbar: Vec<u64>,
}

impl HjData {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }
}

fn validate(d: u64, q: u64) -> Result<()> {
    if d < 2 || q == 0 || q >= d {
        return Err(Error::InvalidInput(format!("need d >= 2 and 1 <= q < d, got ({d}, {q})")));
    }
    if d.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!("gcd({d}, {q}) != 1")));
    }
    Ok(())
}

/// Euclidean algorithm by excess on `d/q`.
pub fn hj_expand(d: u64, q: u64) -> Result<HjData> {
    validate(d, q)?;
    let (mut c, mut qs, mut qbars) = (Vec::new(), Vec::new(), Vec::new());
    let (mut prev, mut cur) = (d, q);
    let (mut prev_bar, mut cur_bar) = (0u64, 1u64);
    while cur != 0 {
        let ci = prev.div_ceil(cur);
        c.push(ci);
        qs.push(cur);
        qbars.push(cur_bar);
        (prev, cur) = (cur, ci * cur - prev);
        (prev_bar, cur_bar) = (cur_bar, ci * cur_bar - prev_bar);
    }
    Ok(HjData {
        order: d,
        c,
        q: qs,
        qbar: qbars,
    })
}

/// Tridiagonal intersection matrix of the bamboo: `-c_i` on the diagonal, 1 beside it.
pub fn intersection_matrix(h: &HjData) -> Vec<Vec<i64>> {
    let n = h.len();
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = -(h.c[i] as i64);
        if i + 1 < n {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
    }
    m
}

/// Multiplicities `(q_i + q̄_i)/d - 1` of `K_pi`, each in `(-1, 0]`.
pub fn relative_canonical(h: &HjData) -> Vec<Rational> {
    h.q.iter()
        .zip(&h.qbar)
        .map(|(&qi, &qb)| Rational::new(BigInt::from(qi + qb), BigInt::from(h.order)) - integer(1))
        .collect()
}

/// `lct(X, m) = min_i (q_i + q̄_i)/d`.
pub fn lct(d: u64, q: u64) -> Result<Rational> {
    let h = hj_expand(d, q)?;
    let best = h.q.iter().zip(&h.qbar).map(|(a, b)| a + b).min().expect("n >= 1");
    Ok(Rational::new(BigInt::from(best), BigInt::from(d)))
}

/// `delta^top = -1/2 E_D . (E_D - K_pi)` for exceptional multiplicities `e_d`.
pub fn delta_top(h: &HjData, e_d: &[Rational]) -> Result<Rational> {
    let n = h.len();
    if e_d.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: e_d.len(),
        });
    }
    let kappa = relative_canonical(h);
    let shifted: Vec<Rational> = e_d.iter().zip(&kappa).map(|(e, k)| e - k).collect();
    let m = intersection_matrix(h);
    let mut form = Rational::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, &mij) in row.iter().enumerate() {
            if mij != 0 {
                form += &e_d[i] * integer(mij) * &shifted[j];
            }
        }
    }
    Ok(-form / integer(2))
}

/// Index of `X(d;1,q)`: smallest `m` with `m K_X` Cartier, `d / gcd(d, q + 1)`.
pub fn gorenstein_index(d: u64, q: u64) -> u64 {
    d / d.gcd(&(q + 1))
}

/// Local degree class of `l K_X` on `X(d;1,q)`; `K_X` has degree `-(1 + q)`.
pub fn canonical_multiple_degree(d: u64, q: u64, ell: i64) -> u64 {
    let d = d as i128;
    let k = (ell as i128 * (d - 1 - q as i128)).rem_euclid(d);
    k as u64
}

fn r_of_multiple(d: u64, q: u64, ell: i64) -> Rational {
    correction_r_1q(d, q, canonical_multiple_degree(d, q, ell)).expect("validated type")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub ell: u64,
    pub degree: u64,
    /// Signed `R_X(l K_X)`.
    pub r: Rational,
    /// `(l - 1)(I - l)/I`.
    pub bound: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlacheBoundReport {
    pub gorenstein_index: u64,
    /// Rows for `l = 2..I-1`; empty when `I <= 2`.
    pub rows: Vec<BoundRow>,
    pub holds: bool,
}

/// Checks `|R_X(l K_X)| <= (l - 1)(I - l)/I` for `l = 2..I-1`.
pub fn blache_bound_report(d: u64, q: u64) -> Result<BlacheBoundReport> {
    validate(d, q)?;
    let index = gorenstein_index(d, q);
    let rows: Vec<BoundRow> = (2..index)
        .map(|ell| {
            let r = r_of_multiple(d, q, ell as i64);
            let bound = Rational::new(BigInt::from((ell - 1) * (index - ell)), BigInt::from(index));
            BoundRow {
                ell,
                degree: canonical_multiple_degree(d, q, ell as i64),
                holds: r.abs() <= bound,
                r,
                bound,
            }
        })
        .collect();
    Ok(BlacheBoundReport {
        gorenstein_index: index,
        holds: rows.iter().all(|r| r.holds),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffRow {
    pub ell: u64,
    /// `|R_X((l + 1) K_X) - R_X(l K_X)|`.
    pub diff: Rational,
    pub holds: bool,
    pub attained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlacheDiffReport {
    pub lct: Rational,
    /// `1 - lct`.
    pub bound: Rational,
    /// Rows for `l = 1..d-1`.
    pub rows: Vec<DiffRow>,
    pub max: Rational,
    pub attained_at: Vec<u64>,
    pub holds: bool,
}

/// Checks `|R_X((l+1)K_X) - R_X(l K_X)| <= 1 - lct(X, m)` for `l = 1..d-1`.
pub fn blache_diff_report(d: u64, q: u64) -> Result<BlacheDiffReport> {
    let lct = lct(d, q)?;
    let bound = integer(1) - &lct;
    let values: Vec<Rational> = (1..=d).map(|ell| r_of_multiple(d, q, ell as i64)).collect();
    let rows: Vec<DiffRow> = values
        .windows(2)
        .enumerate()
        .map(|(i, pair)| {
            let diff = (&pair[1] - &pair[0]).abs();
            DiffRow {
                ell: i as u64 + 1,
                holds: diff <= bound,
                attained: diff == bound,
                diff,
            }
        })
        .collect();
    let max = rows.iter().map(|r| r.diff.clone()).max().unwrap_or_else(Rational::zero);
    Ok(BlacheDiffReport {
        attained_at: rows.iter().filter(|r| r.attained).map(|r| r.ell).collect(),
        holds: rows.iter().all(|r| r.holds),
        lct,
        bound,
        rows,
        max,
    })
}
