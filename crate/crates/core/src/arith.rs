//! Exact integer and rational primitives.
//!
//! Integers are [`BigInt`]; rationals are [`Rational`] (`Ratio<BigInt>`),
//! which is reduced after every operation, so equality is structural.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_bigint::BigInt;

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(|a|, |b|) >= 0` and
/// `a*x + b*y = g`. `gcd(0, 0) = 0`.
pub fn gcd_ext(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let quot = &r0 / &r1;
        let r2 = &r0 - &quot * &r1;
        let s2 = &s0 - &quot * &s1;
        let t2 = &t0 - &quot * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Mathematical residue of `k` modulo `m` in `[0, m)`, also for negative `k`.
pub fn canonical_residue(k: &BigInt, m: &BigInt) -> BigInt {
    debug_assert!(m.is_positive(), "modulus must be >= 1");
    k.mod_floor(m)
}

/// Inverse of `a` modulo `m` in `[0, m)`; `m = 1` yields 0.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return Err(Error::InvalidInput(format!("modulus {m} must be >= 1")));
    }
    let (g, x, _) = gcd_ext(a, m);
    if !g.is_one() {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            m: m.to_string(),
        });
    }
    Ok(canonical_residue(&x, m))
}

/// Fractional part `x - floor(x)`, always in `[0, 1)`.
pub fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

/// `num/den` as a normalized rational. Panics on a zero denominator.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i128) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn gcd_ext_examples() {
        assert_eq!(gcd_ext(&big(19), &big(12)).0, big(1));
        assert_eq!(gcd_ext(&big(0), &big(0)).0, big(0));
        let (g, x, y) = gcd_ext(&big(1235), &big(6545));
        assert_eq!(g, big(5));
        assert_eq!(big(1235) * x + big(6545) * y, big(5));
        let (g, x, y) = gcd_ext(&big(-12), &big(18));
        assert_eq!(g, big(6));
        assert_eq!(big(-12) * x + big(18) * y, big(6));
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(&big(7), &big(19)).unwrap(), big(11));
        assert_eq!(mod_inverse(&big(13), &big(19)).unwrap(), big(3));
        for m in 2..40 {
            assert_eq!(mod_inverse(&big(1), &big(m)).unwrap(), big(1));
        }
        assert_eq!(mod_inverse(&big(5), &big(1)).unwrap(), big(0));
        assert!(matches!(
            mod_inverse(&big(6), &big(9)),
            Err(Error::NotCoprime { .. })
        ));
        assert_eq!(mod_inverse(&big(-1), &big(19)).unwrap(), big(18));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(canonical_residue(&big(1528), &big(19)), big(8));
        assert_eq!(canonical_residue(&big(-8), &big(19)), big(11));
        assert_eq!(canonical_residue(&big(0), &big(7)), big(0));
        assert_eq!(canonical_residue(&big(-19), &big(19)), big(0));
    }

    #[test]
    fn frac_part_examples() {
        assert_eq!(frac_part(&ratio(8, 12)), ratio(2, 3));
        assert_eq!(frac_part(&ratio(-3, 5)), ratio(2, 5));
        assert_eq!(frac_part(&integer(7)), integer(0));
        assert_eq!(frac_part(&integer(-7)), integer(0));
    }

    #[test]
    fn large_magnitudes_stay_exact() {
        let a: BigInt = "1000000000000000000000000000007".parse().unwrap();
        let b: BigInt = "999999999999999999999999999989".parse().unwrap();
        let (g, x, y) = gcd_ext(&a, &b);
        assert_eq!(&a * x + &b * y, g);
        let inv = mod_inverse(&b, &a).unwrap();
        assert!(((&b * inv) % &a).is_one());
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn bezout_identity(a in any::<i128>(), b in any::<i128>()) {
            let (a, b) = (big(a), big(b));
            let (g, x, y) = gcd_ext(&a, &b);
            prop_assert!(!g.is_negative());
            prop_assert_eq!(&a * x + &b * y, g.clone());
            prop_assert_eq!(g, a.gcd(&b));
        }

        #[test]
        fn inverse_is_inverse(a in any::<i64>(), m in 1i64..i64::MAX) {
            let (a, m) = (big(a as i128), big(m as i128));
            match mod_inverse(&a, &m) {
                Ok(inv) => {
                    prop_assert!(inv >= BigInt::zero() && inv < m);
                    if !m.is_one() {
                        prop_assert!(canonical_residue(&(&a * &inv), &m).is_one());
                    }
                }
                Err(_) => prop_assert!(!a.gcd(&m).is_one()),
            }
        }

        #[test]
        fn frac_plus_floor(x in rational()) {
            let f = frac_part(&x);
            prop_assert!(f >= integer(0) && f < integer(1));
            prop_assert_eq!(f + x.floor(), x);
        }

        #[test]
        fn field_axioms(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }
    }
}
