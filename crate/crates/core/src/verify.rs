//! Randomized self-check suite.
//!
//! Each check draws its cases from a ChaCha stream seeded by
//! `(seed, check index)`, evaluates them on the rayon pool and reports in
//! case order, so a report depends only on the configuration.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{frac_part, integer, ratio, BigInt, Rational};
use crate::correction::{
    a_count, correction_r_1q_with, correction_r_global_with, correction_r_with, delta_invariant,
    CyclicQuotient, RuleR3,
};
use crate::ehrhart::{count_bruteforce, count_series, count_with, euler_characteristic_with};
use crate::unity::r_via_roots;
use crate::weights::{reduce, WeightVector};
use crate::Error;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_weight: u64,
    pub max_degree: u64,
    pub seed: u64,
    /// Random cases per check.
    pub cases: usize,
    #[doc(hidden)]
    pub rule: RuleR3,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_weight: 30,
            max_degree: 500,
            seed: 0,
            cases: 2000,
            rule: RuleR3::EXACT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// Cases an oracle refused as too large.
    pub skipped: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
    /// Largest `|float - exact| / (1 + |exact|)` seen by the roots-of-unity check.
    pub worst_float_error: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}

/// Float agreement threshold, relative to `1 + |R|`.
pub const FLOAT_TOLERANCE: f64 = 1e-8;

enum Verdict {
    Pass,
    Skip,
    Fail(String),
}

fn verdict(ok: bool, describe: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(describe())
    }
}

fn run_check<C, F>(name: &'static str, cases: Vec<C>, eval: F) -> CheckOutcome
where
    C: Send + Sync,
    F: Fn(&C) -> Verdict + Send + Sync,
{
    let verdicts: Vec<Verdict> = cases.par_iter().map(&eval).collect();
    let mut outcome = CheckOutcome {
        name,
        cases: cases.len(),
        skipped: 0,
        failures: 0,
        first_failure: None,
    };
    for v in verdicts {
        match v {
            Verdict::Pass => {}
            Verdict::Skip => outcome.skipped += 1,
            Verdict::Fail(msg) => {
                outcome.failures += 1;
                outcome.first_failure.get_or_insert(msg);
            }
        }
    }
    outcome
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

struct Sampler {
    rng: ChaCha8Rng,
    max_weight: i64,
    max_degree: i64,
    max_order: i64,
}

impl Sampler {
    fn new(config: &VerifyConfig, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(stream);
        let max_weight = config.max_weight.clamp(1, 1 << 20) as i64;
        Self {
            rng,
            max_weight,
            max_degree: config.max_degree.min(1 << 40) as i64,
            max_order: max_weight.clamp(2, 5000),
        }
    }

    fn weights(&mut self) -> [i64; 3] {
        let m = self.max_weight;
        [self.rng.gen_range(1..=m), self.rng.gen_range(1..=m), self.rng.gen_range(1..=m)]
    }

    fn pairwise_coprime(&mut self) -> [i64; 3] {
        loop {
            let w = self.weights();
            if gcd(w[0], w[1]) == 1 && gcd(w[0], w[2]) == 1 && gcd(w[1], w[2]) == 1 {
                return w;
            }
        }
    }

    fn unit(&mut self, d: i64) -> i64 {
        loop {
            let a = self.rng.gen_range(-3 * d..=3 * d);
            if gcd(a, d) == 1 {
                return a;
            }
        }
    }

    /// `(d, a, b)` with `a`, `b` prime to `d`.
    fn cyclic_type(&mut self) -> (i64, i64, i64) {
        let d = self.rng.gen_range(1..=self.max_order);
        (d, self.unit(d), self.unit(d))
    }

    fn degree(&mut self) -> i64 {
        self.rng.gen_range(0..=self.max_degree)
    }

    fn signed_degree(&mut self) -> i64 {
        let bound = self.max_degree.max(1);
        self.rng.gen_range(-bound..=bound)
    }
}

fn wv(w: [i64; 3]) -> WeightVector {
    WeightVector::new(w[0], w[1], w[2]).expect("positive weights")
}

fn cq(d: i64, a: i64, b: i64) -> CyclicQuotient {
    CyclicQuotient::new(d, a, b).expect("sampled types are valid")
}

fn sample<C>(config: &VerifyConfig, stream: u64, mut draw: impl FnMut(&mut Sampler) -> C) -> Vec<C> {
    let mut s = Sampler::new(config, stream);
    (0..config.cases).map(|_| draw(&mut s)).collect()
}

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let rule = config.rule;
    let mut checks = Vec::new();

    let cases = sample(config, 1, |s| (s.weights(), s.degree()));
    checks.push(run_check("oracle-equivalence", cases, |&(w, d)| {
        let weights = wv(w);
        let (brute, series) = match (count_bruteforce(&weights, d), count_series(&weights, d)) {
            (Ok(b), Ok(s)) => (b, s),
            (Err(Error::TooLarge(_)), _) | (_, Err(Error::TooLarge(_))) => return Verdict::Skip,
            (Err(e), _) | (_, Err(e)) => return Verdict::Fail(e.to_string()),
        };
        match count_with(&rule, &weights, d) {
            Ok(fast) => verdict(fast == BigInt::from(brute) && brute == series, || {
                format!("w = {weights}, d = {d}: count {fast}, brute force {brute}, series {series}")
            }),
            Err(e) => Verdict::Fail(format!("w = {weights}, d = {d}: {e}")),
        }
    }));

    let cases = sample(config, 2, |s| (s.weights(), s.degree()));
    checks.push(run_check("reduction", cases, |&(w, d)| {
        let weights = wv(w);
        if weights.total_gcd() != BigInt::from(1) {
            return Verdict::Skip;
        }
        let red = reduce(&weights, d).expect("total gcd 1");
        let rebuilt: BigInt =
            (0..3).map(|k| weights.get(k) * &red.r[k]).sum::<BigInt>() + &red.e * red.gcds.product();
        verdict(rebuilt == BigInt::from(d) && red.v.is_pairwise_coprime(), || {
            format!("w = {weights}, d = {d}: reconstruction {rebuilt}")
        })
    }));

    let cases = sample(config, 3, |s| (s.cyclic_type(), s.signed_degree()));
    checks.push(run_check("bridge R(k) = -Delta(-k)", cases, |&((d, a, b), k)| {
        let x = cq(d, a, b);
        match delta_invariant(&x, -k) {
            Ok(delta) => {
                let r = correction_r_with(&rule, &x, k);
                verdict(r == -&delta, || format!("{x}, k = {k}: R = {r}, Delta(-k) = {delta}"))
            }
            Err(Error::TooLarge(_)) => Verdict::Skip,
            Err(e) => Verdict::Fail(e.to_string()),
        }
    }));

    let cases = sample(config, 4, |s| (s.cyclic_type(), s.signed_degree()));
    checks.push(run_check("periodicity", cases, |&((d, a, b), k)| {
        let x = cq(d, a, b);
        let (lhs, rhs) = (correction_r_with(&rule, &x, k), correction_r_with(&rule, &x, k + d));
        verdict(lhs == rhs, || format!("{x}, k = {k}: {lhs} vs {rhs}"))
    }));

    let cases = sample(config, 5, |s| (s.cyclic_type(), s.signed_degree()));
    checks.push(run_check("local duality", cases, |&((d, a, b), k)| {
        let x = cq(d, a, b);
        let lhs = correction_r_with(&rule, &x, k);
        let rhs = correction_r_with(&rule, &x, -(a + b) - k);
        verdict(lhs == rhs, || format!("{x}, k = {k}: {lhs} vs {rhs}"))
    }));

    let cases = sample(config, 6, |s| s.cyclic_type());
    checks.push(run_check("zero point", cases, |&(d, a, b)| {
        let x = cq(d, a, b);
        let r = correction_r_with(&rule, &x, d - a - b);
        verdict(r == integer(0), || format!("{x}: R(d - a - b) = {r}"))
    }));

    let cases = sample(config, 7, |s| {
        let d = s.rng.gen_range(1..=s.max_order);
        (d, s.unit(d), s.signed_degree())
    });
    checks.push(run_check("fractional-part identity", cases, |&(d, q, k)| {
        let sum = correction_r_1q_with(&rule, d, q, k).expect("unit")
            + correction_r_1q_with(&rule, d, -q, k).expect("unit")
            + frac_part(&ratio(k, d));
        verdict(sum == integer(0), || format!("(d, q, k) = ({d}, {q}, {k}): sum {sum}"))
    }));

    let cases = sample(config, 8, |s| {
        let q = s.rng.gen_range(2..=s.max_order);
        (q, s.unit(q))
    });
    checks.push(run_check("R_(q;p,1)(-p) = -(q-1)/(2q)", cases, |&(q, p)| {
        let x = cq(q, p, 1);
        let r = correction_r_with(&rule, &x, -p);
        verdict(r == ratio(-(q - 1), 2 * q), || format!("{x}: {r}"))
    }));

    let cases = sample(config, 9, |s| {
        loop {
            let (p, q) = (s.rng.gen_range(1..=s.max_weight), s.rng.gen_range(1..=s.max_weight));
            if gcd(p, q) == 1 {
                return (p, q, s.rng.gen_range(0..=40i64));
            }
        }
    });
    checks.push(run_check("lattice count = A^(p,q)_r", cases, |&(p, q, r)| {
        let w = wv([p, q, 1]);
        let expected = BigInt::from(a_count(p as u64, q as u64, r as u64));
        match count_with(&rule, &w, q * r - p - q) {
            Ok(c) => verdict(c == expected, || format!("(p, q, r) = ({p}, {q}, {r}): {c} vs {expected}")),
            Err(e) => Verdict::Fail(e.to_string()),
        }
    }));

    let global_cases = config.cases.div_ceil(20).max(1);
    let global = |stream: u64| {
        let mut s = Sampler::new(config, stream);
        (0..global_cases).map(|_| s.pairwise_coprime()).collect::<Vec<_>>()
    };
    checks.push(run_check("vanishing window", global(10), |&w| {
        let weights = wv(w);
        let abs = w.iter().sum::<i64>();
        for d in (1 - abs)..0 {
            match euler_characteristic_with(&rule, &weights, d) {
                Ok(chi) if chi == BigInt::from(0) => {}
                Ok(chi) => return Verdict::Fail(format!("w = {weights}, d = {d}: chi = {chi}")),
                Err(e) => return Verdict::Fail(format!("w = {weights}, d = {d}: {e}")),
            }
        }
        Verdict::Pass
    }));

    let cases = sample(config, 11, |s| (s.pairwise_coprime(), s.signed_degree()));
    checks.push(run_check("Serre duality", cases, |&(w, d)| {
        let weights = wv(w);
        let dual = -w.iter().sum::<i64>() - d;
        match (
            euler_characteristic_with(&rule, &weights, d),
            euler_characteristic_with(&rule, &weights, dual),
        ) {
            (Ok(a), Ok(b)) => verdict(a == b, || format!("w = {weights}, d = {d}: {a} vs {b}")),
            (Err(e), _) | (_, Err(e)) => Verdict::Fail(format!("w = {weights}, d = {d}: {e}")),
        }
    }));

    let cases = sample(config, 12, |s| (s.pairwise_coprime(), s.signed_degree()));
    checks.push(run_check("quasi-period", cases, |&(w, d)| {
        let weights = wv(w);
        let bar = w[0] * w[1] * w[2];
        let abs = w.iter().sum::<i64>();
        let periodic = || -> crate::Result<bool> {
            let r0 = correction_r_global_with(&rule, &weights, d)?;
            let r1 = correction_r_global_with(&rule, &weights, d + bar)?;
            let step = euler_characteristic_with(&rule, &weights, d + bar)?
                - euler_characteristic_with(&rule, &weights, d)?;
            Ok(r0 == r1 && integer(step) == integer(d) + ratio(bar + abs, 2))
        };
        match periodic() {
            Ok(ok) => verdict(ok, || format!("w = {weights}, d = {d}")),
            Err(e) => Verdict::Fail(format!("w = {weights}, d = {d}: {e}")),
        }
    }));

    let cases = sample(config, 13, |s| (s.cyclic_type(), s.signed_degree()));
    let float_errors: Vec<f64> = cases
        .par_iter()
        .map(|&((d, a, b), k)| {
            let exact = correction_r_with(&rule, &cq(d, a, b), k);
            float_error(d, a, b, k, &exact)
        })
        .collect();
    let worst_float_error = float_errors.iter().cloned().fold(0.0, f64::max);
    let indexed: Vec<(usize, f64)> = float_errors.into_iter().enumerate().collect();
    checks.push(run_check("roots-of-unity agreement", indexed, |&(i, err)| {
        verdict(err < FLOAT_TOLERANCE, || {
            let ((d, a, b), k) = cases[i];
            format!("X({d};{a},{b}), k = {k}: relative error {err:e}")
        })
    }));

    VerifyReport {
        checks,
        worst_float_error,
    }
}

/// `|float - exact| / (1 + |exact|)`; infinite when the float path errors.
pub fn float_error(d: i64, a: i64, b: i64, k: i64, exact: &Rational) -> f64 {
    let exact = exact.to_f64().unwrap_or(f64::NAN);
    match r_via_roots(d as u64, a, b, k) {
        Ok(v) => (v - exact).abs() / (1.0 + exact.abs()),
        Err(_) => f64::INFINITY,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> VerifyConfig {
        VerifyConfig {
            max_weight: 12,
            max_degree: 150,
            seed,
            cases: 150,
            rule: RuleR3::EXACT,
        }
    }

    #[test]
    fn exact_rule_passes() {
        let report = run(&small(7));
        for c in &report.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.first_failure);
        }
        assert!(report.worst_float_error < FLOAT_TOLERANCE);
    }

    #[test]
    fn degenerate_weights_pass() {
        let report = run(&VerifyConfig {
            max_weight: 1,
            ..small(1)
        });
        assert!(report.passed());
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(run(&small(3)), run(&small(3)));
    }

    #[test]
    fn every_single_mutation_is_caught() {
        for (name, rule) in RuleR3::single_mutations() {
            let report = run(&VerifyConfig { rule, ..small(11) });
            assert!(!report.passed(), "mutation {name} survived");
        }
    }
}
