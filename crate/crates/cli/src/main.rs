//! `tricount`: command-line front end to `tricount-core`.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tricount_core::correction::{self, CyclicQuotient, RuleR3};
use tricount_core::ehrhart::{self, SERIES_LIMIT};
use tricount_core::{hj, verify, weights, BigInt, Error, Rational, WeightVector};

#[derive(Parser)]
#[command(name = "tricount", version, about = "Exact lattice-point counts on weighted triangles")]
struct Cli {
    /// Emit JSON: integers as decimal strings, rationals as {"num", "den"}.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Triangle {
    w0: BigInt,
    w1: BigInt,
    w2: BigInt,
    d: BigInt,
}

#[derive(Args)]
struct Type {
    d: BigInt,
    a: BigInt,
    b: BigInt,
    k: BigInt,
}

#[derive(Subcommand)]
enum Command {
    /// Number of (i, j, k) >= 0 with w0 i + w1 j + w2 k = d.
    #[command(allow_negative_numbers = true)]
    Count {
        #[command(flatten)]
        t: Triangle,
        /// Print the reduction, the Riemann-Roch terms and each recursion chain.
        #[arg(long)]
        explain: bool,
    },
    /// Local correction term R_X(d;a,b)(k).
    #[command(allow_negative_numbers = true)]
    Correction {
        #[command(flatten)]
        x: Type,
        /// Print the recursion chain on the normalized type.
        #[arg(long)]
        explain: bool,
    },
    /// Delta-invariant of X(d;a,b) at k.
    #[command(allow_negative_numbers = true)]
    Delta {
        #[command(flatten)]
        x: Type,
    },
    /// Euler characteristic of O(d) on P^2_w, for pairwise coprime weights.
    #[command(allow_negative_numbers = true)]
    Chi {
        #[command(flatten)]
        t: Triangle,
    },
    /// Reduction to pairwise coprime weights.
    #[command(allow_negative_numbers = true)]
    Reduce {
        #[command(flatten)]
        t: Triangle,
    },
    /// Hirzebruch-Jung expansion of d/q.
    Hj { d: u64, q: u64 },
    /// Log canonical threshold of X(d;1,q) with respect to the maximal ideal.
    Lct { d: u64, q: u64 },
    /// Blache bounds on R at multiples of the canonical divisor.
    Blache { d: u64, q: u64 },
    /// Area of a lattice polygon from interior and boundary point counts.
    Pick { interior: BigInt, boundary: BigInt },
    /// Randomized property and oracle suite.
    Verify {
        #[arg(long, default_value_t = 30)]
        max_weight: u64,
        #[arg(long, default_value_t = 500)]
        max_degree: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per check.
        #[arg(long, default_value_t = 2000)]
        cases: usize,
        #[arg(long, hide = true)]
        mutate: Option<String>,
    },
    /// Recursion depth and timing.
    Bench {
        /// Run on consecutive Fibonacci pairs (F_{n+1}, F_n), n = 1..=N.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        fib: Option<u32>,
        /// Time random counts against the series oracle.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_weight: u64,
        #[arg(long, default_value = "1000000000000")]
        degree: BigInt,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, code: 0 }
    }
}

fn int(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn rat(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn ints<'a>(v: impl IntoIterator<Item = &'a BigInt>) -> Value {
    v.into_iter().map(int).collect()
}

fn rats<'a>(v: impl IntoIterator<Item = &'a Rational>) -> Value {
    v.into_iter().map(rat).collect()
}

fn list<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn tuple<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn weights_of(t: &Triangle) -> Result<WeightVector, Error> {
    WeightVector::new(t.w0.clone(), t.w1.clone(), t.w2.clone())
}

fn chain_json(chain: &correction::RecursionChain) -> Value {
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .map(|s| {
            json!({
                "d": int(&s.d), "q": int(&s.q), "k": int(&s.k),
                "frac": rat(&s.frac), "quadratic": rat(&s.quadratic),
                "local": rat(&s.local), "sign": s.sign,
            })
        })
        .collect();
    json!({ "steps": steps, "value": rat(&chain.value) })
}

fn chain_text(chain: &correction::RecursionChain, indent: &str) -> String {
    let mut out = String::new();
    for s in &chain.steps {
        let sign = if s.sign > 0 { '+' } else { '-' };
        out += &format!(
            "{indent}X({};1,{}) k = {}: local = {} ({sign})\n",
            s.d, s.q, s.k, s.local
        );
    }
    out
}

fn normalized_chain(x: &CyclicQuotient, k: &BigInt) -> Result<(correction::NormalizedType, correction::RecursionChain), Error> {
    let n = correction::normalize_type(x, k.clone());
    let chain = correction::correction_chain(n.d.clone(), n.q.clone(), n.k.clone())?;
    Ok((n, chain))
}

fn cmd_count(t: &Triangle, explain: bool) -> Result<Output, Error> {
    let w = weights_of(t)?;
    if !explain {
        let c = ehrhart::count_with(&RuleR3::EXACT, &w, t.d.clone())?;
        return Ok(Output::ok(c.to_string(), json!({ "count": int(&c) })));
    }
    let trace = ehrhart::count_trace(&w, t.d.clone())?;
    let mut text = format!("w = {}\nd = {}\n", trace.weights, trace.degree);
    let mut j = json!({
        "weights": ints(w.as_array()),
        "degree": int(&trace.degree),
        "total_gcd": int(&trace.total_gcd),
    });
    if !trace.total_gcd.is_one() {
        text += &format!("gcd(w) = {}\n", trace.total_gcd);
    }
    match (&trace.normalized, &trace.reduction) {
        (Some((nw, nd)), Some(red)) => {
            if !trace.total_gcd.is_one() {
                text += &format!("w/g = {nw}\nd/g = {nd}\n");
            }
            let g = &red.gcds;
            text += &format!("w01 = {}, w02 = {}, w12 = {}\n", g.w01, g.w02, g.w12);
            text += &format!("r = {}\nv = {}\ne = {}\n", tuple(&red.r), red.v, red.e);
            j["reduction"] = reduction_json(red);
        }
        _ => text += "degree not divisible by gcd(w)\n",
    }
    if let (Some(rr), Some(red)) = (&trace.riemann_roch, &trace.reduction) {
        text += &format!("d(d+|w|)/(2 w_bar) = {}\n", rr.quadratic);
        let types = correction::singular_types(&red.v)?;
        let mut chains = Vec::new();
        let v = red.v.as_array();
        for (i, (x, local)) in types.iter().zip(&rr.local).enumerate() {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let (j, k) = (j.min(k), j.max(k));
            text += &format!("R_X({};{},{})({}) = {local}\n", v[i], v[j], v[k], red.e);
            if !x.is_smooth() {
                let (n, chain) = normalized_chain(x, &red.e)?;
                text += &format!("  = R_X({};1,{})({})\n", n.d, n.q, n.k);
                text += &chain_text(&chain, "    ");
                chains.push(chain_json(&chain));
            } else {
                chains.push(Value::Null);
            }
        }
        text += &format!("R = {}\n", rr.correction);
        j["quadratic"] = rat(&rr.quadratic);
        j["local"] = rats(&rr.local);
        j["chains"] = Value::Array(chains);
        j["correction"] = rat(&rr.correction);
    } else if trace.reduction.as_ref().is_some_and(|r| r.is_empty()) {
        text += "e < 0: empty triangle\n";
    }
    text += &format!("count = {}", trace.count);
    j["count"] = int(&trace.count);
    Ok(Output::ok(text, j))
}

fn reduction_json(red: &weights::ReductionData) -> Value {
    json!({
        "w01": int(&red.gcds.w01), "w02": int(&red.gcds.w02), "w12": int(&red.gcds.w12),
        "r": ints(&red.r), "v": ints(red.v.as_array()), "e": int(&red.e),
        "empty": red.is_empty(),
    })
}

fn quotient(x: &Type) -> Result<CyclicQuotient, Error> {
    CyclicQuotient::new(x.d.clone(), x.a.clone(), x.b.clone())
}

fn cmd_correction(x: &Type, explain: bool) -> Result<Output, Error> {
    let cq = quotient(x)?;
    let r = correction::correction_r(&cq, x.k.clone());
    let mut j = json!({ "value": rat(&r) });
    let mut text = r.to_string();
    if explain && !cq.is_smooth() {
        let (n, chain) = normalized_chain(&cq, &x.k)?;
        text = format!("{cq} k = {} -> X({};1,{}) k = {}\n{}R = {r}", x.k, n.d, n.q, n.k, chain_text(&chain, "  "));
        j["normalized"] = json!({ "d": int(&n.d), "q": int(&n.q), "k": int(&n.k) });
        j["chain"] = chain_json(&chain);
    }
    Ok(Output::ok(text, j))
}

fn cmd_delta(x: &Type) -> Result<Output, Error> {
    let v = correction::delta_invariant(&quotient(x)?, x.k.clone())?;
    Ok(Output::ok(v.to_string(), json!({ "value": rat(&v) })))
}

fn cmd_chi(t: &Triangle) -> Result<Output, Error> {
    let rr = ehrhart::riemann_roch(&weights_of(t)?, t.d.clone())?;
    Ok(Output::ok(
        rr.chi.to_string(),
        json!({
            "chi": int(&rr.chi), "quadratic": rat(&rr.quadratic),
            "local": rats(&rr.local), "correction": rat(&rr.correction),
        }),
    ))
}

fn cmd_reduce(t: &Triangle) -> Result<Output, Error> {
    let red = weights::reduce(&weights_of(t)?, t.d.clone())?;
    let g = &red.gcds;
    let text = format!(
        "w01 = {}, w02 = {}, w12 = {}\nr = {}\nv = {}\ne = {}",
        g.w01, g.w02, g.w12, tuple(&red.r), red.v, red.e
    );
    Ok(Output::ok(text, reduction_json(&red)))
}

fn u64s(v: &[u64]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

fn cmd_hj(d: u64, q: u64) -> Result<Output, Error> {
    let h = hj::hj_expand(d, q)?;
    let text = format!("c={} q={} qbar={}", list(&h.c), list(&h.q), list(&h.qbar));
    let matrix: Vec<Value> = hj::intersection_matrix(&h)
        .iter()
        .map(|row| row.iter().map(|x| Value::String(x.to_string())).collect())
        .collect();
    let j = json!({
        "c": u64s(&h.c), "q": u64s(&h.q), "qbar": u64s(&h.qbar),
        "matrix": matrix, "canonical": rats(&hj::relative_canonical(&h)),
    });
    Ok(Output::ok(text, j))
}

fn cmd_lct(d: u64, q: u64) -> Result<Output, Error> {
    let l = hj::lct(d, q)?;
    Ok(Output::ok(l.to_string(), json!({ "lct": rat(&l) })))
}

fn cmd_blache(d: u64, q: u64) -> Result<Output, Error> {
    let bound = hj::blache_bound_report(d, q)?;
    let diff = hj::blache_diff_report(d, q)?;
    let mut text = format!("Gorenstein index {}\n", bound.gorenstein_index);
    for row in &bound.rows {
        text += &format!(
            "l = {:>3}  k = {:>4}  R = {:>8}  bound = {:>8}  {}\n",
            row.ell, row.degree, row.r.to_string(), row.bound.to_string(), mark(row.holds)
        );
    }
    text += &format!("lct = {}, 1 - lct = {}\n", diff.lct, diff.bound);
    for row in &diff.rows {
        let tag = if row.attained { " attained" } else { "" };
        text += &format!("l = {:>3}  |dR| = {:>8}  {}{tag}\n", row.ell, row.diff.to_string(), mark(row.holds));
    }
    text += &format!("max |dR| = {} at l = {}\n", diff.max, list(&diff.attained_at));
    text += &format!("bounds {}", if bound.holds && diff.holds { "hold" } else { "FAIL" });
    let j = json!({
        "gorenstein_index": bound.gorenstein_index.to_string(),
        "bound_rows": bound.rows.iter().map(|r| json!({
            "ell": r.ell.to_string(), "degree": r.degree.to_string(),
            "r": rat(&r.r), "bound": rat(&r.bound), "holds": r.holds,
        })).collect::<Vec<_>>(),
        "lct": rat(&diff.lct),
        "diff_bound": rat(&diff.bound),
        "diff_rows": diff.rows.iter().map(|r| json!({
            "ell": r.ell.to_string(), "diff": rat(&r.diff),
            "holds": r.holds, "attained": r.attained,
        })).collect::<Vec<_>>(),
        "max": rat(&diff.max),
        "attained_at": u64s(&diff.attained_at),
        "holds": bound.holds && diff.holds,
    });
    Ok(Output::ok(text, j))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn cmd_pick(i: &BigInt, b: &BigInt) -> Result<Output, Error> {
    if i < &BigInt::zero() || b < &BigInt::from(3) {
        return Err(Error::InvalidInput("need interior >= 0 and boundary >= 3".into()));
    }
    let a = ehrhart::pick_area(i.clone(), b.clone());
    Ok(Output::ok(a.to_string(), json!({ "area": rat(&a) })))
}

fn cmd_verify(config: verify::VerifyConfig) -> Output {
    let report = verify::run(&config);
    let mut text = String::new();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            text += &format!(
                "{:<4} {:<34} cases = {:>6}  skipped = {:>5}  failures = {}\n",
                if c.passed() { "ok" } else { "FAIL" },
                c.name,
                c.cases,
                c.skipped,
                c.failures
            );
            if let Some(f) = &c.first_failure {
                text += &format!("     first failure: {f}\n");
            }
            json!({
                "name": c.name, "cases": c.cases.to_string(), "skipped": c.skipped.to_string(),
                "failures": c.failures.to_string(), "first_failure": c.first_failure,
            })
        })
        .collect();
    text += &format!(
        "checked {} cases; worst float error {:e}; {}",
        report.total_cases(),
        report.worst_float_error,
        if report.passed() { "all passed" } else { "FAILED" }
    );
    Output {
        text,
        json: json!({
            "passed": report.passed(),
            "cases": report.total_cases().to_string(),
            "worst_float_error": report.worst_float_error.to_string(),
            "checks": checks,
        }),
        code: if report.passed() { 0 } else { 1 },
    }
}

fn euclid_divisions(d: &BigInt, q: &BigInt) -> usize {
    let (mut a, mut b) = (d.clone(), q % d);
    let mut n = 0;
    while !b.is_zero() {
        let r = &a % &b;
        a = std::mem::replace(&mut b, r);
        n += 1;
    }
    n
}

fn bench_fib(n_max: u32) -> Result<Output, Error> {
    let (mut lo, mut hi) = (BigInt::one(), BigInt::one());
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_match = true;
    for n in 1..=n_max {
        let start = Instant::now();
        correction::correction_r_1q(hi.clone(), lo.clone(), lo.clone())?;
        let nanos = start.elapsed().as_nanos();
        let steps = correction::recursion_steps(hi.clone(), lo.clone())?;
        let euclid = euclid_divisions(&hi, &lo);
        all_match &= steps == euclid && steps == n as usize - 1;
        text += &format!(
            "n = {n:>3}  (F_{}, F_{n}) = ({hi}, {lo})  steps = {steps}  euclid = {euclid}  time = {nanos} ns\n",
            n + 1
        );
        rows.push(json!({
            "n": n.to_string(), "d": int(&hi), "q": int(&lo),
            "steps": steps.to_string(), "euclid": euclid.to_string(), "nanos": nanos.to_string(),
        }));
        let next = &hi + &lo;
        lo = std::mem::replace(&mut hi, next);
    }
    text += if all_match { "step counts match Euclid" } else { "step count MISMATCH" };
    Ok(Output::ok(text, json!({ "rows": rows, "match": all_match })))
}

fn bench_random(max_weight: u64, degree: &BigInt, samples: usize, seed: u64) -> Result<Output, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_weight = max_weight.max(1);
    let (mut fast_nanos, mut series_nanos, mut series_runs, mut mismatches) = (0u128, 0u128, 0usize, 0usize);
    for _ in 0..samples {
        let w = WeightVector::new(
            rng.gen_range(1..=max_weight),
            rng.gen_range(1..=max_weight),
            rng.gen_range(1..=max_weight),
        )?;
        let start = Instant::now();
        let fast = ehrhart::count_with(&RuleR3::EXACT, &w, degree.clone())?;
        fast_nanos += start.elapsed().as_nanos();
        if degree.to_u64().is_some_and(|d| d <= SERIES_LIMIT) {
            let start = Instant::now();
            let slow = ehrhart::count_series(&w, degree.clone())?;
            series_nanos += start.elapsed().as_nanos();
            series_runs += 1;
            mismatches += usize::from(fast != BigInt::from(slow));
        }
    }
    let per_call = fast_nanos / samples.max(1) as u128;
    let mut text = format!("{samples} counts at d = {degree}, weights <= {max_weight}: {per_call} ns per call");
    let series_per_call = (series_runs > 0).then(|| series_nanos / series_runs as u128);
    match series_per_call {
        Some(s) => text += &format!("\nseries oracle: {s} ns per call, {mismatches} mismatches"),
        None => text += &format!("\nseries oracle skipped (d > {SERIES_LIMIT})"),
    }
    Ok(Output {
        text,
        json: json!({
            "samples": samples.to_string(), "degree": int(degree),
            "nanos_per_call": per_call.to_string(),
            "series_nanos_per_call": series_per_call.map(|s| s.to_string()),
            "mismatches": mismatches.to_string(),
        }),
        code: if mismatches == 0 { 0 } else { 1 },
    })
}

fn dispatch(command: Command) -> Result<Output, Error> {
    match command {
        Command::Count { t, explain } => cmd_count(&t, explain),
        Command::Correction { x, explain } => cmd_correction(&x, explain),
        Command::Delta { x } => cmd_delta(&x),
        Command::Chi { t } => cmd_chi(&t),
        Command::Reduce { t } => cmd_reduce(&t),
        Command::Hj { d, q } => cmd_hj(d, q),
        Command::Lct { d, q } => cmd_lct(d, q),
        Command::Blache { d, q } => cmd_blache(d, q),
        Command::Pick { interior, boundary } => cmd_pick(&interior, &boundary),
        Command::Verify { max_weight, max_degree, seed, cases, mutate } => {
            let rule = match mutate.as_deref() {
                None => RuleR3::EXACT,
                Some(name) => RuleR3::by_name(name)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown mutation {name}")))?,
            };
            Ok(cmd_verify(verify::VerifyConfig { max_weight, max_degree, seed, cases, rule }))
        }
        Command::Bench { fib: Some(n), .. } => bench_fib(n),
        Command::Bench { max_weight, degree, samples, seed, .. } => bench_random(max_weight, &degree, samples, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
