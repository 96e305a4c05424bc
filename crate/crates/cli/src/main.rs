use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use serde_json::{json, Value};

use cmsym::dieudonne;
use cmsym::hecke::catalog::{load_form, regenerate, Catalog};
use cmsym::hecke::{check_hypotheses, hecke_table};
use cmsym::kl::{kubota_leopoldt, oracle_check, padic_to_string, parse_character, Regulator};
use cmsym::pipeline::{self, content_hash, parse_prec, RunConfig};
use cmsym::pollack::{LogPair, SyntheticPair};
use cmsym::series::IwasawaSeries;
use cmsym::sympower::{compare_traces, verify_factorization};
use cmsym::symsq::{assemble_symsq, nonvanishing_guard};
use cmsym::Error;

#[derive(Parser)]
#[command(name = "cmsym", version, about = "Exact checks for symmetric powers of CM forms at inert primes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for synthetic series.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Frobenius table of a catalogued form.
    Hecke {
        #[arg(long, default_value = "32a")]
        form: String,
        #[arg(long, alias = "primes", default_value_t = 1000)]
        bound: u64,
        /// Also run the hypothesis gate at this prime.
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Factorization of the Sym^m Euler factors.
    Sym {
        #[arg(long, default_value = "32a")]
        form: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        /// Compare both trace routes for every power up to m.
        #[arg(long)]
        traces: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Filtered φ-module checks.
    Dieudonne {
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// `1`, `-1`, or `n:e` for ε(p) = ζ_n^e.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        epsp: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Half-logarithms, zero patterns and the ± round trip.
    Pollack {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value = "20,128")]
        prec: String,
        #[arg(long, default_value_t = 10)]
        pairs: usize,
        /// Include the log± coefficients.
        #[arg(long)]
        series: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Kubota–Leopoldt series with its Bernoulli oracle.
    Kl {
        #[arg(long = "char", default_value = "quad4")]
        character: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value = "12,16")]
        prec: String,
        /// `auto` or an integer c.
        #[arg(long, default_value = "auto")]
        reg: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiply a φ² pair by the twisted KL series.
    Assemble {
        /// JSON with `plus` and `minus` series; synthetic when absent.
        #[arg(long)]
        phi2: Option<PathBuf>,
        /// A series, or a `kl` report carrying one.
        #[arg(long)]
        kl: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Gate, then every suite.
    VerifyAll {
        #[arg(long, default_value = "32a")]
        form: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        m: u32,
        #[arg(long, default_value_t = 500)]
        bound: u64,
        #[arg(long, default_value = "20,128")]
        prec: String,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 50)]
        triples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Recount points and diff against the committed catalog.
    RegenCatalog {
        #[command(flatten)]
        common: Common,
    },
}

fn emit(value: &Value, out: &Option<PathBuf>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn series_from(v: &Value) -> Result<IwasawaSeries, Error> {
    let inner = v.get("series").unwrap_or(v);
    Ok(serde_json::from_value(inner.clone())?)
}

/// Runs one subcommand; `Ok(pass)` decides the exit code.
fn run(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Hecke { form, bound, p, common } => {
            let f = load_form(&form)?;
            let rows = hecke_table(&f, bound)?;
            let gate = p.map(|p| check_hypotheses(&f, p));
            let pass = rows.iter().all(|r| r.det_matches && r.ramanujan && r.trace_matches_table != Some(false))
                && gate.as_ref().is_none_or(|g| g.all_pass);
            emit(&json!({ "form": form, "k": f.k, "level": f.level, "rows": rows, "gate": gate }), &common.out)?;
            Ok(pass)
        }
        Command::Sym { form, m, bound, traces, common } => {
            let f = load_form(&form)?;
            let r = verify_factorization(m, &f, bound)?;
            let mut v = serde_json::to_value(&r)?;
            let mut pass = r.pass();
            if traces {
                let (n, mismatches) = compare_traces(&f, m, bound)?;
                pass &= mismatches.is_empty();
                v["traces"] = json!({ "compared": n, "mismatches": mismatches });
            }
            emit(&v, &common.out)?;
            Ok(pass)
        }
        Command::Dieudonne { k, epsp, p, common } => {
            let (order, e) = match epsp.as_str() {
                "1" => (1, 0),
                "-1" => (2, 1),
                s => {
                    let (n, e) = s
                        .split_once(':')
                        .ok_or_else(|| Error::InvalidInput(format!("--epsp {s:?}: expected 1, -1 or n:e")))?;
                    let n: u64 = n.parse().map_err(|_| Error::InvalidInput(format!("bad order in {s:?}")))?;
                    let e: u64 = e.parse().map_err(|_| Error::InvalidInput(format!("bad exponent in {s:?}")))?;
                    (n, e)
                }
            };
            let r = dieudonne::report(k, p, order, e)?;
            emit(&serde_json::to_value(&r)?, &common.out)?;
            Ok(r.pass)
        }
        Command::Pollack { k, p, prec, pairs, series, common } => {
            let prec = parse_prec(&prec)?;
            let suite = pipeline::pollack_suite(p, prec, pairs, common.seed)?;
            let mut v = json!({ "k": k, "p": p, "precision": prec, "suite": suite });
            if series {
                v["logs"] = serde_json::to_value(LogPair::build(k, p, prec.0, prec.1)?)?;
            }
            emit(&v, &common.out)?;
            Ok(suite.pass)
        }
        Command::Kl { character, p, prec, reg, common } => {
            let (m, d) = parse_prec(&prec)?;
            let eta = parse_character(&character)?;
            let reg = match reg.as_str() {
                "auto" => Regulator::Auto,
                c => Regulator::Fixed(c.parse().map_err(|_| Error::InvalidInput(format!("bad regulator {c:?}")))?),
            };
            let start = Instant::now();
            let kl = kubota_leopoldt(&eta, p, m, d, reg)?;
            let rs: Vec<u32> = (0..=5).filter(|&r| !kl.pole_components().contains(&(r as usize % (p as usize - 1)))).collect();
            let target = m.min(10);
            let rows = oracle_check(&kl, &rs, target)?;
            let values: Vec<Value> = rs
                .iter()
                .map(|&r| Ok(json!({ "r": r, "value": padic_to_string(&kl.value_at_power(r as i64)?) })))
                .collect::<Result<_, Error>>()?;
            let pass = rows.iter().all(|r| r.pass);
            let mut v = serde_json::to_value(&kl)?;
            v["oracle"] = json!({ "target": target, "rows": rows, "values": values });
            v["wall_time"] = json!(start.elapsed().as_secs_f64());
            emit(&v, &common.out)?;
            Ok(pass)
        }
        Command::Assemble { phi2, kl, k, common } => {
            let kl = series_from(&read_json(&kl)?)?;
            let (p, (m, d)) = (kl.prime(), kl.precision());
            let (plus, minus, source) = match phi2 {
                Some(path) => {
                    let v = read_json(&path)?;
                    let get = |key: &str| {
                        v.get(key)
                            .ok_or_else(|| Error::InvalidInput(format!("{}: missing {key:?}", path.display())))
                            .and_then(series_from)
                    };
                    (get("plus")?, get("minus")?, "file")
                }
                None => {
                    let logs = LogPair::build(k, p, m, d)?;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(common.seed);
                    let pair = SyntheticPair::generate(&logs, &mut rng)?;
                    (pair.l_plus, pair.l_minus, "synthetic")
                }
            };
            let guard = nonvanishing_guard(&plus, 0)?;
            let (ap, am) = assemble_symsq((&plus, &minus), &kl, k)?;
            let body = json!({ "k": k, "phi2_source": source, "guard": guard, "plus": ap, "minus": am });
            let hash = content_hash(&body);
            let mut v = body;
            v["content_hash"] = json!(hash);
            emit(&v, &common.out)?;
            Ok(guard.nonzero)
        }
        Command::VerifyAll { form, p, m, bound, prec, pairs, triples, common } => {
            let config = RunConfig { form, p, m, bound, prec: parse_prec(&prec)?, seed: common.seed, pairs, triples };
            let report = pipeline::run_pipeline(&config)?;
            for s in &report.suites {
                eprintln!("{:<14} {}", s.name, if s.pass { "pass" } else { "FAIL" });
            }
            if !report.gate.all_pass {
                for f in report.gate.failures() {
                    eprintln!("gated: {} ({})", f.name, f.witness);
                }
            }
            emit(&serde_json::to_value(&report)?, &common.out)?;
            Ok(report.pass())
        }
        Command::RegenCatalog { common } => {
            let committed = Catalog::builtin()?;
            let r = regenerate(&committed)?;
            let clean = r.clean();
            match &common.out {
                Some(path) => fs::write(path, r.catalog.to_pretty_json()? + "\n")
                    .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?,
                None => {}
            }
            emit(
                &json!({ "clean": clean, "diffs": r.diffs, "character_mismatches": r.character_mismatches }),
                &None,
            )?;
            if !clean {
                eprintln!("catalog integrity failure: regenerated tables differ from the committed file");
            }
            Ok(clean)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
