//! Counting lattice points on `T_{w,d} = {x >= 0 : w0 x0 + w1 x1 + w2 x2 = d}`.
//!
//! The fast path evaluates
//! `Eh_w(d) = 1 + d(d+|w|)/(2 w̄) + R_w(d)` for pairwise-coprime weights
//! and reaches that case through [`crate::weights::reduce`]. Direct
//! enumeration and generating-series coefficients are kept as oracles.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{integer, BigInt, Rational};
use crate::correction::{local_corrections_with, RuleR3};
use crate::weights::{reduce, ReductionData, WeightVector};
use crate::{Error, Result};

/// Upper bound on inner-loop iterations for [`count_bruteforce`] and [`lattice_points`].
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;
/// Largest degree accepted by [`count_series`].
pub const SERIES_LIMIT: u64 = 10_000_000;

/// `1/2 D.(D - K) = d(d + |w|)/(2 w̄)`.
pub fn quadratic_term(w: &WeightVector, d: impl Into<BigInt>) -> Rational {
    let d = d.into();
    Rational::new(&d * (&d + w.abs()), w.bar() * 2)
}

/// `g_w(d) = 1 + d(d - |w|)/(2 w̄)`.
pub fn virtual_genus(w: &WeightVector, d: impl Into<BigInt>) -> Rational {
    let d = d.into();
    integer(1) + Rational::new(&d * (&d - w.abs()), w.bar() * 2)
}

/// Weighted Bezout: `D1 . D2 = d1 d2 / w̄`.
pub fn intersection_number(w: &WeightVector, d1: impl Into<BigInt>, d2: impl Into<BigInt>) -> Rational {
    Rational::new(d1.into() * d2.into(), w.bar())
}

/// The pieces of the Riemann-Roch formula at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannRoch {
    pub quadratic: Rational,
    /// `R_{X(w_i; w_j, w_k)}(d)` for `i = 0, 1, 2`.
    pub local: [Rational; 3],
    pub correction: Rational,
    pub chi: BigInt,
}

pub fn riemann_roch(w: &WeightVector, d: impl Into<BigInt>) -> Result<RiemannRoch> {
    riemann_roch_with(&RuleR3::EXACT, w, d)
}

#[doc(hidden)]
pub fn riemann_roch_with(rule: &RuleR3, w: &WeightVector, d: impl Into<BigInt>) -> Result<RiemannRoch> {
    let d = d.into();
    let local = local_corrections_with(rule, w, d.clone())?;
    let quadratic = quadratic_term(w, d);
    let correction: Rational = local.iter().cloned().sum();
    let total = integer(1) + &quadratic + &correction;
    if !total.is_integer() {
        return Err(Error::NonIntegerChi(total.to_string()));
    }
    Ok(RiemannRoch {
        quadratic,
        local,
        correction,
        chi: total.to_integer(),
    })
}

/// `chi(P^2_w, O(D))` for a divisor of degree `d`; defined for every integer `d`.
pub fn euler_characteristic(w: &WeightVector, d: impl Into<BigInt>) -> Result<BigInt> {
    Ok(riemann_roch(w, d)?.chi)
}

#[doc(hidden)]
pub fn euler_characteristic_with(rule: &RuleR3, w: &WeightVector, d: impl Into<BigInt>) -> Result<BigInt> {
    Ok(riemann_roch_with(rule, w, d)?.chi)
}

/// Every intermediate value of the counting pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTrace {
    pub weights: WeightVector,
    pub degree: BigInt,
    pub total_gcd: BigInt,
    /// `(w/g, d/g)`; `None` when `g` does not divide `d` or `d < 0`.
    pub normalized: Option<(WeightVector, BigInt)>,
    pub reduction: Option<ReductionData>,
    /// Present unless the reduced degree is negative.
    pub riemann_roch: Option<RiemannRoch>,
    pub count: BigInt,
}

pub fn count_trace(w: &WeightVector, d: impl Into<BigInt>) -> Result<CountTrace> {
    count_trace_with(&RuleR3::EXACT, w, d)
}

#[doc(hidden)]
pub fn count_trace_with(rule: &RuleR3, w: &WeightVector, d: impl Into<BigInt>) -> Result<CountTrace> {
    let degree = d.into();
    let total_gcd = w.total_gcd();
    let mut trace = CountTrace {
        weights: w.clone(),
        degree: degree.clone(),
        total_gcd: total_gcd.clone(),
        normalized: None,
        reduction: None,
        riemann_roch: None,
        count: BigInt::zero(),
    };
    if degree.is_negative() || !degree.is_multiple_of(&total_gcd) {
        return Ok(trace);
    }
    let scaled = WeightVector::new(
        w.get(0) / &total_gcd,
        w.get(1) / &total_gcd,
        w.get(2) / &total_gcd,
    )?;
    let scaled_degree = &degree / &total_gcd;
    let reduction = reduce(&scaled, scaled_degree.clone())?;
    trace.normalized = Some((scaled, scaled_degree));
    if !reduction.is_empty() {
        let rr = riemann_roch_with(rule, &reduction.v, reduction.e.clone())?;
        trace.count = rr.chi.clone();
        trace.riemann_roch = Some(rr);
    }
    trace.reduction = Some(reduction);
    Ok(trace)
}

/// `Eh_w(d) = #(T_{w,d} ∩ Z^3)` for arbitrary positive weights; 0 for `d < 0`.
pub fn count(w: &WeightVector, d: impl Into<BigInt>) -> BigInt {
    count_with(&RuleR3::EXACT, w, d).expect("exact rule yields integral Euler characteristics")
}

#[doc(hidden)]
pub fn count_with(rule: &RuleR3, w: &WeightVector, d: impl Into<BigInt>) -> Result<BigInt> {
    Ok(count_trace_with(rule, w, d)?.count)
}

fn small_inputs(w: &WeightVector, d: &BigInt) -> Result<([u64; 3], u64)> {
    let too_large = || Error::TooLarge(format!("w = {w}, d = {d}"));
    let d = d.to_u64().ok_or_else(too_large)?;
    let mut ws = [0u64; 3];
    for (slot, x) in ws.iter_mut().zip(w.as_array()) {
        *slot = x.to_u64().ok_or_else(too_large)?;
    }
    Ok((ws, d))
}

fn check_loop_budget(outer: u64, inner: u64, d: u64) -> Result<()> {
    let work = (d / outer + 1) as u128 * (d / inner + 1) as u128;
    if work > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!(
            "enumeration needs ~{work} iterations (limit {BRUTE_FORCE_LIMIT})"
        )));
    }
    Ok(())
}

/// All points of `T_{w,d} ∩ Z^3`, in lexicographic order.
pub fn lattice_points(w: &WeightVector, d: impl Into<BigInt>) -> Result<Vec<[u64; 3]>> {
    let d = d.into();
    if d.is_negative() {
        return Ok(Vec::new());
    }
    let ([w0, w1, w2], d) = small_inputs(w, &d)?;
    check_loop_budget(w0, w1, d)?;
    let mut points = Vec::new();
    for i in 0..=d / w0 {
        let rest = d - i * w0;
        for j in 0..=rest / w1 {
            let tail = rest - j * w1;
            if tail % w2 == 0 {
                points.push([i, j, tail / w2]);
            }
        }
    }
    Ok(points)
}

/// Direct enumeration of `T_{w,d} ∩ Z^3` over the two largest weights.
pub fn count_bruteforce(w: &WeightVector, d: impl Into<BigInt>) -> Result<u64> {
    let d = d.into();
    if d.is_negative() {
        return Ok(0);
    }
    let (mut ws, d) = small_inputs(w, &d)?;
    ws.sort_unstable();
    let [small, mid, large] = ws;
    check_loop_budget(large, mid, d)?;
    let mut n = 0;
    for i in 0..=d / large {
        let rest = d - i * large;
        for j in 0..=rest / mid {
            if (rest - j * mid) % small == 0 {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// Coefficient of `t^d` in `1/((1 - t^w0)(1 - t^w1)(1 - t^w2))`.
pub fn count_series(w: &WeightVector, d: impl Into<BigInt>) -> Result<u64> {
    let d = d.into();
    if d.is_negative() {
        return Ok(0);
    }
    let (ws, d) = small_inputs(w, &d)?;
    if d > SERIES_LIMIT {
        return Err(Error::TooLarge(format!("degree {d} exceeds {SERIES_LIMIT}")));
    }
    let len = d as usize + 1;
    let mut coeffs = vec![0u64; len];
    coeffs[0] = 1;
    for &wi in &ws {
        let wi = wi as usize;
        for n in wi..len {
            coeffs[n] += coeffs[n - wi];
        }
    }
    Ok(coeffs[d as usize])
}

/// Pick's formula `A = i + b/2 - 1`.
pub fn pick_area(interior: impl Into<BigInt>, boundary: impl Into<BigInt>) -> Rational {
    Rational::from_integer(interior.into()) + Rational::new(boundary.into(), BigInt::from(2)) - Rational::one()
}
