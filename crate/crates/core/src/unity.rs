//! Floating-point evaluation of the roots-of-unity expression
//! `R_{(d; a, b)}(k) = -1/d sum_{i=1}^{d-1} (1 - z^{-ik}) / ((1 - z^{ia})(1 - z^{ib}))`,
//! `z = exp(2 pi i / d)`. Only used to cross-check the exact engine.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use crate::{Error, Result};

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `z^e` for the primitive `d`-th root `z`, with `e` reduced mod `d` first.
fn root_power(d: u64, e: i128) -> Complex64 {
    let e = e.rem_euclid(d as i128) as f64;
    Complex64::from_polar(1.0, TAU * e / d as f64)
}

pub fn r_via_roots(d: u64, a: i64, b: i64, k: i64) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidType("order must be >= 1".into()));
    }
    let dd = d as i64;
    if a.gcd(&dd) != 1 || b.gcd(&dd) != 1 {
        return Err(Error::InvalidType(format!("X({d};{a},{b})")));
    }
    let (mut re, mut im) = (Compensated::default(), Compensated::default());
    let (a, b, k) = (a as i128, b as i128, k as i128);
    let one = Complex64::new(1.0, 0.0);
    for i in 1..d as i128 {
        let num = one - root_power(d, -i * k);
        let den = (one - root_power(d, i * a)) * (one - root_power(d, i * b));
        let term = num / den;
        re.add(term.re);
        im.add(term.im);
    }
    let (re, im) = (-re.value() / d as f64, -im.value() / d as f64);
    let tolerance = 1e-9 * d as f64;
    if im.abs() >= tolerance {
        return Err(Error::ImaginaryResidue { imag: im, tolerance });
    }
    Ok(re)
}

/// Real part of `sum_{i=1}^{q-1} 1/(1 - z^i)`, which equals `(q - 1)/2`.
pub fn unity_sum_identity(q: u64) -> f64 {
    let mut re = Compensated::default();
    let one = Complex64::new(1.0, 0.0);
    for i in 1..q as i128 {
        re.add((one / (one - root_power(q, i))).re);
    }
    re.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert!((r_via_roots(19, 77, 12, 1528).unwrap() + 7.0 / 19.0).abs() < 1e-12);
        assert!((r_via_roots(77, 19, 12, 1528).unwrap() + 38.0 / 77.0).abs() < 1e-12);
        assert!((r_via_roots(12, 19, 77, 1528).unwrap() + 4.0 / 3.0).abs() < 1e-12);
        for (d, a, b) in [(7, 1, 3), (19, 77, 12), (100, 3, 7)] {
            assert!(r_via_roots(d, a, b, 0).unwrap().abs() < 1e-12);
        }
        assert_eq!(r_via_roots(1, 0, 0, 5).unwrap(), 0.0);
        assert!(r_via_roots(6, 2, 1, 1).is_err());
    }

    #[test]
    fn identity_values() {
        assert!((unity_sum_identity(2) - 0.5).abs() < 1e-12);
        assert!((unity_sum_identity(7) - 3.0).abs() < 1e-12);
        assert!((unity_sum_identity(360) - 179.5).abs() < 1e-9);
    }
}
