//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::Command;
use std::time::Instant;

use cmsym::arith::CyclotomicNumber;
use cmsym::hecke::catalog::{all_forms, load_form};
use cmsym::pipeline::{dieudonne_suite, gauss_suite, interpolation_suite, kl_suite, pollack_suite, SuiteResult};
use cmsym::sympower::{compare_traces, trace_via_matrix, verify_factorization};
use cmsym::Result;
use serde_json::Value;

struct Outcome {
    pass: bool,
    note: String,
}

fn suites(list: Vec<SuiteResult>) -> Outcome {
    let failed: Vec<String> = list
        .iter()
        .flat_map(|s| s.failures().into_iter().map(move |c| format!("{}/{}", s.name, c.name)))
        .collect();
    let checks: usize = list.iter().map(|s| s.checks.len()).sum();
    Outcome {
        pass: failed.is_empty(),
        note: if failed.is_empty() { format!("{checks} checks") } else { format!("failed: {}", failed.join(", ")) },
    }
}

fn factorization() -> Result<Outcome> {
    let start = Instant::now();
    let (mut primes, mut bad) = (0, 0);
    for f in all_forms()? {
        for m in 2..=5 {
            let r = verify_factorization(m, &f, 1000)?;
            primes += r.primes_checked;
            bad += r.mismatches.len();
        }
    }
    let t = start.elapsed().as_secs_f64();
    Ok(Outcome { pass: bad == 0 && t < 60.0, note: format!("{bad} mismatches over {primes} Euler factors in {t:.1} s") })
}

fn traces() -> Result<Outcome> {
    let (mut n, mut bad) = (0, 0);
    for f in all_forms()? {
        let (c, m) = compare_traces(&f, 6, 500)?;
        n += c;
        bad += m.len();
    }
    let f = load_form("32a")?;
    let spot = [(2, 5, -1), (3, 5, 12), (2, 7, -7)]
        .iter()
        .all(|&(m, q, t)| trace_via_matrix(m, &f, q).map(|x| x.to_rational() == CyclotomicNumber::from_i64(1, t).to_rational()).unwrap_or(false));
    Ok(Outcome { pass: bad == 0 && spot, note: format!("{bad} mismatches over {n} traces, spot values {}", if spot { "ok" } else { "wrong" }) })
}

fn run_cli(args: &[&str]) -> (Option<i32>, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_cmsym")).args(args).output().expect("binary runs");
    (out.status.code(), serde_json::from_slice(&out.stdout).unwrap_or(Value::Null))
}

fn end_to_end() -> Outcome {
    let (c1, r1) = run_cli(&["verify-all", "--form", "32a", "--p", "3"]);
    let (c2, r2) = run_cli(&["verify-all", "--form", "32a", "--p", "3"]);
    let (c3, r3) = run_cli(&["verify-all", "--form", "32a", "--p", "3", "--prec", "15,96"]);
    let (c5, r5) = run_cli(&["verify-all", "--form", "32a", "--p", "5"]);
    let same = r1["content_hash"] == r2["content_hash"] && r1["content_hash"].is_string();
    let pass = c1 == Some(0) && c2 == Some(0) && same && c3 == Some(0) && r3["status"] == "pass" && c5 == Some(1) && r5["status"] == "gated";
    Outcome {
        pass,
        note: format!(
            "p=3 {} (hash {}), repeat {}, at (15,96) {}, p=5 {}",
            r1["status"].as_str().unwrap_or("?"),
            r1["content_hash"].as_str().map(|h| &h[..12]).unwrap_or("?"),
            if same { "identical" } else { "DIFFERENT" },
            r3["status"].as_str().unwrap_or("?"),
            r5["status"].as_str().unwrap_or("?"),
        ),
    }
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<Outcome>>)> = vec![
        ("Sym^m factorization, three forms, m in 2..5, q < 1000", Box::new(factorization)),
        ("trace routes agree for m <= 6, q < 500", Box::new(traces)),
        ("Dieudonne module suite", Box::new(|| Ok(suites(vec![dieudonne_suite(3)?, dieudonne_suite(5)?])))),
        (
            "plus/minus logarithms and splitting",
            Box::new(|| Ok(suites(vec![pollack_suite(3, (20, 128), 100, 0)?, pollack_suite(3, (15, 96), 100, 1)?]))),
        ),
        (
            "Kubota-Leopoldt oracle, regulators, Kummer",
            Box::new(|| {
                let f32 = load_form("32a")?;
                let f27 = load_form("27a")?;
                Ok(suites(vec![kl_suite(&f32, 3, 0)?, kl_suite(&f32, 5, 0)?, kl_suite(&f27, 5, 0)?]))
            }),
        ),
        ("interpolation bookkeeping and assembly", Box::new(|| Ok(suites(vec![interpolation_suite(&load_form("32a")?, 3, 50, 0)?])))),
        ("Gauss sum norms, p in {3,5,7}, n <= 3", Box::new(|| Ok(suites(vec![gauss_suite()?])))),
        ("verify-all end to end", Box::new(|| Ok(end_to_end()))),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| Outcome { pass: false, note: format!("error: {e}") });
        all &= o.pass;
        println!(
            "criterion {}: {} {name}: {} [{:.1} s]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.note,
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
