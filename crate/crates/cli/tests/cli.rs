use std::path::PathBuf;
use std::process::{Command, Output};

use cmsym::series::IwasawaSeries;
use rand::SeedableRng;
use serde_json::Value;

fn cmsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmsym")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cmsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const SMALL: [&str; 10] = ["--prec", "8,24", "--pairs", "3", "--triples", "3", "--bound", "150", "--m", "3"];

#[test]
fn split_prime_is_gated() {
    let out = cmsym(&["verify-all", "--form", "32a", "--p", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["status"], "gated");
    assert_eq!(r["suites"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("p inert in K"));
}

#[test]
fn small_verify_all_is_reproducible() {
    let mut args = vec!["verify-all", "--form", "32a", "--p", "3"];
    args.extend(SMALL);
    let a = cmsym(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = cmsym(&args);
    let (mut ja, mut jb) = (json(&a), json(&b));
    assert_eq!(ja["content_hash"], jb["content_hash"]);
    ja["timings"] = Value::Null;
    jb["timings"] = Value::Null;
    assert_eq!(ja, jb);
}

#[test]
fn kl_then_assemble() {
    let kl = scratch("kl.json");
    let out = cmsym(&["kl", "--char", "quad4", "--p", "3", "--prec", "8,12", "--out", kl.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&kl).unwrap()).unwrap();
    assert!(report["oracle"]["rows"].as_array().unwrap().iter().all(|r| r["pass"] == true));

    let a = cmsym(&["assemble", "--kl", kl.to_str().unwrap(), "--k", "2", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let v = json(&a);
    assert_eq!(v["phi2_source"], "synthetic");
    assert_eq!(v["guard"]["nonzero"], true);

    // injected φ² series
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let plus = IwasawaSeries::random_bounded(3, 8, 12, &mut rng);
    let minus = IwasawaSeries::random_bounded(3, 8, 12, &mut rng);
    let phi2 = scratch("phi2.json");
    std::fs::write(&phi2, serde_json::to_string(&serde_json::json!({ "plus": plus, "minus": minus })).unwrap()).unwrap();
    let b = cmsym(&["assemble", "--phi2", phi2.to_str().unwrap(), "--kl", kl.to_str().unwrap()]);
    assert_eq!(b.status.code(), Some(0), "{}", String::from_utf8_lossy(&b.stderr));
    assert_eq!(json(&b)["phi2_source"], "file");

    // a vanishing injection fails the guard
    let zero = IwasawaSeries::zero(3, 8, 12);
    std::fs::write(&phi2, serde_json::to_string(&serde_json::json!({ "plus": zero, "minus": zero })).unwrap()).unwrap();
    let c = cmsym(&["assemble", "--phi2", phi2.to_str().unwrap(), "--kl", kl.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(1));
    assert_eq!(json(&c)["guard"]["nonzero"], false);
}

#[test]
fn single_suites() {
    let d = cmsym(&["dieudonne", "--k", "3", "--epsp", "-1", "--p", "5"]);
    assert_eq!(d.status.code(), Some(0));
    assert_eq!(json(&d)["hodge_tate"]["V_2"], serde_json::json!([0, -4]));
    assert_eq!(cmsym(&["dieudonne", "--epsp", "4:1"]).status.code(), Some(0));

    let s = cmsym(&["sym", "--form", "27a", "--m", "4", "--bound", "300", "--traces"]);
    assert_eq!(s.status.code(), Some(0));
    let v = json(&s);
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert!(v["primes_checked"].as_u64().unwrap() > 50);

    let h = cmsym(&["hecke", "--form", "32a", "--primes", "30", "--p", "3"]);
    assert_eq!(h.status.code(), Some(0));
    let rows = json(&h)["rows"].as_array().unwrap().clone();
    let a5 = rows.iter().find(|r| r["q"] == 5).unwrap();
    assert_eq!(a5["a_q"], "-2");

    let p = cmsym(&["pollack", "--p", "3", "--prec", "8,24", "--pairs", "2", "--series"]);
    assert_eq!(p.status.code(), Some(0));
    assert!(json(&p)["logs"]["plus"]["series"].is_object());
}

#[test]
fn regen_catalog_is_clean() {
    let path = scratch("catalog.json");
    let out = cmsym(&["regen-catalog", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["clean"], true);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let committed: Value = serde_json::from_str(cmsym::hecke::catalog::CATALOG_JSON).unwrap();
    assert_eq!(written, committed);
}

#[test]
fn usage_errors() {
    assert_eq!(cmsym(&["verify-all", "--prec", "20"]).status.code(), Some(2));
    assert_eq!(cmsym(&["sym", "--form", "11a"]).status.code(), Some(2));
    assert_eq!(cmsym(&["kl", "--char", "cubic7"]).status.code(), Some(2));
    assert_eq!(cmsym(&["dieudonne", "--epsp", "x"]).status.code(), Some(2));
    assert!(!cmsym(&["frobnicate"]).status.success());
}
