//! Local correction terms of cyclic quotient singularities.
//!
//! `R_{X(d;a,b)}(k)` is evaluated with three rules:
//!
//! - R1: `R(k)` only depends on `k mod d`;
//! - R2: `R_{X(d;a,b)}(k) = R_{X(d;1,a^{-1}b)}(a^{-1}k)`;
//! - R3: for `0 <= k < d`,
//!   `R_{X(d;1,q)}(k) = -R_{X(q;1,d mod q)}(k mod q) - {k/q} - k(k+1+q-d)/(2dq)`.
//!
//! R3 walks the Euclidean algorithm on `(d, q)`, so the cost is the number
//! of divisions, with consecutive Fibonacci numbers as the worst case.
//!
//! The `Delta` invariant is computed independently by counting lattice
//! points in a triangle; the two are tied by `R_X(k) = -Delta_X(-k)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{canonical_residue, frac_part, integer, mod_inverse, BigInt, Rational};
use crate::weights::WeightVector;
use crate::{Error, Result};

/// The type `X(d; a, b)`: `C^2` modulo `zeta.(x, y) = (zeta^a x, zeta^b y)`,
/// `zeta^d = 1`. Weights are stored as residues in `[0, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicQuotient {
    order: BigInt,
    a: BigInt,
    b: BigInt,
}

impl CyclicQuotient {
    pub fn new(d: impl Into<BigInt>, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (d, a, b) = (d.into(), a.into(), b.into());
        if !d.is_positive() {
            return Err(Error::InvalidType(format!("order {d} must be >= 1")));
        }
        if !a.gcd(&d).is_one() || !b.gcd(&d).is_one() {
            return Err(Error::InvalidType(format!(
                "X({d};{a},{b}): weights must be prime to the order"
            )));
        }
        Ok(Self {
            a: canonical_residue(&a, &d),
            b: canonical_residue(&b, &d),
            order: d,
        })
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_smooth(&self) -> bool {
        self.order.is_one()
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({};{},{})", self.order, self.a, self.b)
    }
}

/// `X(d;a,b)` at degree `k`, rewritten as `X(d;1,q)` at degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedType {
    pub d: BigInt,
    pub q: BigInt,
    pub k: BigInt,
}

/// Rules R1 and R2: `q = a^{-1} b mod d`, `k' = a^{-1} k mod d`.
pub fn normalize_type(x: &CyclicQuotient, k: impl Into<BigInt>) -> NormalizedType {
    let d = x.order.clone();
    let inv = mod_inverse(&x.a, &d).expect("weights are units by construction");
    NormalizedType {
        q: canonical_residue(&(&inv * &x.b), &d),
        k: canonical_residue(&(&inv * k.into()), &d),
        d,
    }
}

/// Coefficients of rule R3.
///
/// [`RuleR3::EXACT`] is the only correct rule. The other values exist so
/// the self-check suite can prove it rejects a perturbed recursion.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleR3 {
    pub recursive_sign: i64,
    pub frac_sign: i64,
    pub quad_sign: i64,
    pub k_offset: i64,
    pub q_coeff: i64,
    pub d_coeff: i64,
    pub denominator: i64,
}

impl RuleR3 {
    pub const EXACT: RuleR3 = RuleR3 {
        recursive_sign: -1,
        frac_sign: 1,
        quad_sign: 1,
        k_offset: 1,
        q_coeff: 1,
        d_coeff: 1,
        denominator: 2,
    };

    /// Every rule obtained from [`RuleR3::EXACT`] by changing one constant.
    pub fn single_mutations() -> Vec<(&'static str, RuleR3)> {
        let e = Self::EXACT;
        vec![
            ("recursive-sign", RuleR3 { recursive_sign: 1, ..e }),
            ("frac-sign", RuleR3 { frac_sign: -1, ..e }),
            ("frac-drop", RuleR3 { frac_sign: 0, ..e }),
            ("quad-sign", RuleR3 { quad_sign: -1, ..e }),
            ("k-offset", RuleR3 { k_offset: 2, ..e }),
            ("k-offset-zero", RuleR3 { k_offset: 0, ..e }),
            ("q-coeff", RuleR3 { q_coeff: 2, ..e }),
            ("d-coeff", RuleR3 { d_coeff: 2, ..e }),
            ("denominator", RuleR3 { denominator: 3, ..e }),
        ]
    }

    pub fn by_name(name: &str) -> Option<RuleR3> {
        Self::single_mutations()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, r)| r)
    }
}

impl Default for RuleR3 {
    fn default() -> Self {
        Self::EXACT
    }
}

/// One application of R3 on `X(d;1,q)` at `0 <= k < d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionStep {
    pub d: BigInt,
    pub q: BigInt,
    pub k: BigInt,
    /// `{k/q}`
    pub frac: Rational,
    /// `k(k+1+q-d)/(2dq)`
    pub quadratic: Rational,
    /// `-{k/q} - k(k+1+q-d)/(2dq)`
    pub local: Rational,
    /// `+1` or `-1`: the sign this step's local term enters the total with.
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionChain {
    pub steps: Vec<RecursionStep>,
    pub value: Rational,
}

fn validate_1q(d: &BigInt, q: &BigInt) -> Result<BigInt> {
    if !d.is_positive() {
        return Err(Error::InvalidType(format!("order {d} must be >= 1")));
    }
    let q = canonical_residue(q, d);
    if !q.gcd(d).is_one() {
        return Err(Error::InvalidType(format!("gcd({d}, {q}) != 1")));
    }
    Ok(q)
}

fn chain_with(rule: &RuleR3, d: BigInt, q: BigInt, k: BigInt) -> Result<RecursionChain> {
    let mut q = validate_1q(&d, &q)?;
    let mut d = d;
    let mut k = canonical_residue(&k, &d);
    let mut sign = 1i64;
    let mut value = Rational::zero();
    let mut steps = Vec::new();
    while !d.is_one() {
        let frac = frac_part(&Rational::new(k.clone(), q.clone()));
        let linear = &k + rule.k_offset + &q * rule.q_coeff - &d * rule.d_coeff;
        let quadratic = Rational::new(&k * linear, &d * &q * rule.denominator);
        let local = -(&frac * integer(rule.frac_sign)) - &quadratic * integer(rule.quad_sign);
        value += &local * integer(sign);
        let next_d = q.clone();
        let next_q = d.mod_floor(&q);
        let next_k = k.mod_floor(&q);
        steps.push(RecursionStep {
            d,
            q,
            k,
            frac,
            quadratic,
            local,
            sign,
        });
        sign *= rule.recursive_sign;
        d = next_d;
        q = next_q;
        k = next_k;
    }
    Ok(RecursionChain { steps, value })
}

/// The full R3 chain for `R_{X(d;1,q)}(k)`, one entry per Euclidean division.
pub fn correction_chain(
    d: impl Into<BigInt>,
    q: impl Into<BigInt>,
    k: impl Into<BigInt>,
) -> Result<RecursionChain> {
    chain_with(&RuleR3::EXACT, d.into(), q.into(), k.into())
}

/// `R_{X(d;1,q)}(k)` for any integer `k`.
pub fn correction_r_1q(d: impl Into<BigInt>, q: impl Into<BigInt>, k: impl Into<BigInt>) -> Result<Rational> {
    correction_r_1q_with(&RuleR3::EXACT, d, q, k)
}

#[doc(hidden)]
pub fn correction_r_1q_with(
    rule: &RuleR3,
    d: impl Into<BigInt>,
    q: impl Into<BigInt>,
    k: impl Into<BigInt>,
) -> Result<Rational> {
    let d = d.into();
    let q = validate_1q(&d, &q.into())?;
    let k = canonical_residue(&k.into(), &d);
    Ok(value_with(rule, d, q, k))
}

/// R3 without the trace. Runs on checked `i128` and falls back to the
/// big-integer chain on overflow. Expects validated `(d, q)` and `0 <= k < d`.
fn value_with(rule: &RuleR3, d: BigInt, q: BigInt, k: BigInt) -> Rational {
    let small = match (d.to_i128(), q.to_i128(), k.to_i128()) {
        (Some(d), Some(q), Some(k)) => value_small(rule, d, q, k),
        _ => None,
    };
    match small {
        Some((num, den)) => Rational::new(BigInt::from(num), BigInt::from(den)),
        None => chain_with(rule, d, q, k).expect("validated input").value,
    }
}

fn value_small(rule: &RuleR3, mut d: i128, mut q: i128, mut k: i128) -> Option<(i128, i128)> {
    let (mut num, mut den) = (0i128, 1i128);
    let mut sign = 1i128;
    let two = rule.denominator as i128;
    while d != 1 {
        let rem = k % q;
        let linear = k
            .checked_add(rule.k_offset as i128)?
            .checked_add(q.checked_mul(rule.q_coeff as i128)?)?
            .checked_sub(d.checked_mul(rule.d_coeff as i128)?)?;
        let frac_num = (rule.frac_sign as i128).checked_mul(rem)?.checked_mul(two)?.checked_mul(d)?;
        let quad_num = (rule.quad_sign as i128).checked_mul(k)?.checked_mul(linear)?;
        let term_num = frac_num.checked_add(quad_num)?.checked_neg()?.checked_mul(sign)?;
        let term_den = two.checked_mul(d)?.checked_mul(q)?;
        let g = den.gcd(&term_den);
        let sum_num = num
            .checked_mul(term_den / g)?
            .checked_add(term_num.checked_mul(den / g)?)?;
        let sum_den = (den / g).checked_mul(term_den)?;
        let h = sum_num.gcd(&sum_den).max(1);
        (num, den) = (sum_num / h, sum_den / h);
        sign *= rule.recursive_sign as i128;
        (d, q, k) = (q, d % q, rem);
    }
    Some((num, den))
}

/// Number of R3 applications needed for `X(d;1,q)`; independent of `k`.
pub fn recursion_steps(d: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<usize> {
    Ok(chain_with(&RuleR3::EXACT, d.into(), q.into(), BigInt::zero())?.steps.len())
}

pub fn correction_r(x: &CyclicQuotient, k: impl Into<BigInt>) -> Rational {
    correction_r_with(&RuleR3::EXACT, x, k)
}

#[doc(hidden)]
pub fn correction_r_with(rule: &RuleR3, x: &CyclicQuotient, k: impl Into<BigInt>) -> Rational {
    let n = normalize_type(x, k);
    value_with(rule, n.d, n.q, n.k)
}

/// The three singular points of `P^2_w` as types `X(w_i; w_j, w_k)`.
pub fn singular_types(w: &WeightVector) -> Result<[CyclicQuotient; 3]> {
    w.require_pairwise_coprime()?;
    let ty = |i: usize| {
        let (a, b) = w.others(i);
        CyclicQuotient::new(w.get(i).clone(), a.clone(), b.clone())
    };
    Ok([ty(0)?, ty(1)?, ty(2)?])
}

/// The local terms `R_{X(w_i; w_j, w_k)}(d)`, `i = 0, 1, 2`.
pub fn local_corrections(w: &WeightVector, d: impl Into<BigInt>) -> Result<[Rational; 3]> {
    local_corrections_with(&RuleR3::EXACT, w, d)
}

#[doc(hidden)]
pub fn local_corrections_with(
    rule: &RuleR3,
    w: &WeightVector,
    d: impl Into<BigInt>,
) -> Result<[Rational; 3]> {
    let d = d.into();
    let types = singular_types(w)?;
    Ok(types.map(|x| correction_r_with(rule, &x, d.clone())))
}

/// `R_w(d)`: sum of the three local correction terms.
pub fn correction_r_global(w: &WeightVector, d: impl Into<BigInt>) -> Result<Rational> {
    correction_r_global_with(&RuleR3::EXACT, w, d)
}

#[doc(hidden)]
pub fn correction_r_global_with(rule: &RuleR3, w: &WeightVector, d: impl Into<BigInt>) -> Result<Rational> {
    Ok(local_corrections_with(rule, w, d)?.into_iter().sum())
}

/// `A^{(p,q)}_r = #{(i, j) >= 1 : p i + q j <= q r}`, by a single loop over the
/// coordinate with the larger coefficient.
pub fn a_count(p: u64, q: u64, r: u64) -> u64 {
    let (p, q, bound) = (p as u128, q as u128, q as u128 * r as u128);
    if p == 0 || q == 0 || bound < p + q {
        return 0;
    }
    let (big, small) = if p >= q { (p, q) } else { (q, p) };
    let mut total = 0u128;
    let mut i = 1;
    while big * i + small <= bound {
        total += (bound - big * i) / small;
        i += 1;
    }
    total as u64
}

/// `delta^{(p,q)}_r = r(qr - p - q + 1)/(2p)`; `delta^{(1,1)}_d = binom(d, 2)`.
pub fn delta_comb(p: u64, q: u64, r: u64) -> Rational {
    let (p, q, r) = (BigInt::from(p), BigInt::from(q), BigInt::from(r));
    Rational::new(&r * (&q * &r - &p - &q + 1), p * 2)
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::TooLarge(format!("{what} = {x} exceeds the enumeration range")))
}

/// `Delta_{X(p;-1,q)}(k) = A^{(p,q)}_r - delta^{(p,q)}_r`, `r = q^{-1} k mod p`.
pub fn delta_minus_one(p: u64, q: u64, k: impl Into<BigInt>) -> Result<Rational> {
    if p == 0 {
        return Err(Error::InvalidType("order must be >= 1".into()));
    }
    if p == 1 {
        return Ok(Rational::zero());
    }
    let (pb, qb) = (BigInt::from(p), BigInt::from(q));
    let inv = mod_inverse(&qb, &pb)?;
    let r = to_u64(&canonical_residue(&(inv * k.into()), &pb), "r")?;
    Ok(integer(a_count(p, q, r)) - delta_comb(p, q, r))
}

/// `Delta_X(k)` for a general type, through
/// `Delta_{(d;a,b)}(k) = Delta_{(d;-1, -a^{-1}b mod d)}(-a^{-1}k mod d)`.
pub fn delta_invariant(x: &CyclicQuotient, k: impl Into<BigInt>) -> Result<Rational> {
    if x.is_smooth() {
        return Ok(Rational::zero());
    }
    let d = &x.order;
    let neg_inv = -mod_inverse(&x.a, d)?;
    let q = canonical_residue(&(&neg_inv * &x.b), d);
    let k = canonical_residue(&(&neg_inv * k.into()), d);
    delta_minus_one(to_u64(d, "order")?, to_u64(&q, "q")?, k)
}
