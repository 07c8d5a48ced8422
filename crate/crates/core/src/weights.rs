//! Weight vectors and the reduction from arbitrary to pairwise-coprime weights.
//!
//! For `w` with `gcd(w0, w1, w2) = 1` put `w_ij = gcd(w_i, w_j)` and
//! `v_i = w_i / (w_ij * w_ik)`. Every solution of `w . x = d` has
//! `x_k = r_k (mod w_ij)` for a residue triple `r` fixed by `(w, d)`, and
//! `x_k -> (x_k - r_k) / w_ij` is a bijection onto the solutions of
//! `v . y = e` with `e = (d - w . r) / (w01 * w02 * w12)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::{canonical_residue, mod_inverse, BigInt};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    w: [BigInt; 3],
}

impl WeightVector {
    pub fn new(w0: impl Into<BigInt>, w1: impl Into<BigInt>, w2: impl Into<BigInt>) -> Result<Self> {
        let w = [w0.into(), w1.into(), w2.into()];
        if w.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidInput(format!(
                "weights must be positive, got ({}, {}, {})",
                w[0], w[1], w[2]
            )));
        }
        Ok(Self { w })
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.w[i]
    }

    pub fn as_array(&self) -> &[BigInt; 3] {
        &self.w
    }

    /// `|w| = w0 + w1 + w2`.
    pub fn abs(&self) -> BigInt {
        &self.w[0] + &self.w[1] + &self.w[2]
    }

    /// `w̄ = w0 * w1 * w2`.
    pub fn bar(&self) -> BigInt {
        &self.w[0] * &self.w[1] * &self.w[2]
    }

    pub fn total_gcd(&self) -> BigInt {
        self.w[0].gcd(&self.w[1]).gcd(&self.w[2])
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        let g = pairwise_gcds(self);
        g.w01.is_one() && g.w02.is_one() && g.w12.is_one()
    }

    pub(crate) fn require_pairwise_coprime(&self) -> Result<()> {
        if self.is_pairwise_coprime() {
            Ok(())
        } else {
            Err(Error::NotPairwiseCoprime(self.to_string()))
        }
    }

    /// The other two weights for index `i`, in increasing index order.
    pub(crate) fn others(&self, i: usize) -> (&BigInt, &BigInt) {
        match i {
            0 => (&self.w[1], &self.w[2]),
            1 => (&self.w[0], &self.w[2]),
            _ => (&self.w[0], &self.w[1]),
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.w[0], self.w[1], self.w[2])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairwiseGcds {
    pub w01: BigInt,
    pub w02: BigInt,
    pub w12: BigInt,
}

impl PairwiseGcds {
    /// The modulus `w_ij` attached to coordinate `k`.
    pub fn modulus_for(&self, k: usize) -> &BigInt {
        match k {
            0 => &self.w12,
            1 => &self.w02,
            _ => &self.w01,
        }
    }

    pub fn product(&self) -> BigInt {
        &self.w01 * &self.w02 * &self.w12
    }
}

pub fn pairwise_gcds(w: &WeightVector) -> PairwiseGcds {
    let [w0, w1, w2] = w.as_array();
    PairwiseGcds {
        w01: w0.gcd(w1),
        w02: w0.gcd(w2),
        w12: w1.gcd(w2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData {
    pub gcds: PairwiseGcds,
    /// Pairwise-coprime weights `v_i = w_i / (w_ij * w_ik)`.
    pub v: WeightVector,
    pub r: [BigInt; 3],
    /// Reduced degree; negative means the triangle has no lattice points.
    pub e: BigInt,
}

impl ReductionData {
    pub fn is_empty(&self) -> bool {
        self.e.is_negative()
    }
}

fn require_total_coprime(w: &WeightVector) -> Result<()> {
    let g = w.total_gcd();
    if g.is_one() {
        Ok(())
    } else {
        Err(Error::NotCoprimeTotal(g.to_string()))
    }
}

/// Residues `r_k = (w_k^{-1} d mod w_ij)`: the value of coordinate `k` modulo
/// `w_ij` shared by every solution of `w . x = d`.
pub fn residues_r(w: &WeightVector, d: impl Into<BigInt>) -> Result<[BigInt; 3]> {
    require_total_coprime(w)?;
    let d = d.into();
    let gcds = pairwise_gcds(w);
    residues_with(w, &gcds, &d)
}

fn residues_with(w: &WeightVector, gcds: &PairwiseGcds, d: &BigInt) -> Result<[BigInt; 3]> {
    let residue = |k: usize| -> Result<BigInt> {
        let m = gcds.modulus_for(k);
        let inv = mod_inverse(w.get(k), m)?;
        Ok(canonical_residue(&(inv * d), m))
    };
    Ok([residue(0)?, residue(1)?, residue(2)?])
}

pub fn reduce(w: &WeightVector, d: impl Into<BigInt>) -> Result<ReductionData> {
    require_total_coprime(w)?;
    let d = d.into();
    let gcds = pairwise_gcds(w);
    let r = residues_with(w, &gcds, &d)?;
    let v = WeightVector::new(
        w.get(0) / (&gcds.w01 * &gcds.w02),
        w.get(1) / (&gcds.w01 * &gcds.w12),
        w.get(2) / (&gcds.w02 * &gcds.w12),
    )?;
    let shift: BigInt = (0..3).map(|k| w.get(k) * &r[k]).sum();
    let (e, rem) = (d - shift).div_rem(&gcds.product());
    debug_assert!(rem == BigInt::from(0), "reduction must divide exactly");
    Ok(ReductionData { gcds, v, r, e })
}
