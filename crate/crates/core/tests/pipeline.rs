use cmsym::hecke::catalog::load_form;
use cmsym::pipeline::{run_pipeline, run_pipeline_for, RunConfig, Status};

fn small() -> RunConfig {
    RunConfig { prec: (8, 24), pairs: 4, triples: 4, bound: 200, m: 3, ..RunConfig::default() }
}

#[test]
fn small_run_passes_and_is_deterministic() {
    let a = run_pipeline(&small()).unwrap();
    for s in &a.suites {
        assert!(s.pass, "{}: {:?}", s.name, s.failures());
    }
    assert_eq!(a.status, Status::Pass);
    let names: Vec<&str> = a.suites.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["sym", "dieudonne", "pollack", "kl", "interpolation", "gauss"]);
    let b = run_pipeline(&small()).unwrap();
    assert_eq!(a.content_hash, b.content_hash);
    let c = run_pipeline(&RunConfig { seed: 1, ..small() }).unwrap();
    assert_ne!(a.content_hash, c.content_hash);
}

#[test]
fn other_forms() {
    // 27a is ramified at 3 and split at 7; 5 is inert
    let r = run_pipeline(&RunConfig { form: "27a".into(), p: 5, ..small() }).unwrap();
    assert!(r.pass(), "{:?}", r.suites.iter().flat_map(|s| s.failures()).collect::<Vec<_>>());
    assert_eq!(run_pipeline(&RunConfig { form: "27a".into(), p: 7, ..small() }).unwrap().status, Status::Gated);
    assert_eq!(run_pipeline(&RunConfig { form: "49a".into(), p: 7, ..small() }).unwrap().status, Status::Gated);
}

#[test]
fn gate_blocks_every_suite() {
    let mut form = load_form("32a").unwrap();
    form.nebentypus = form.field.quadratic_character();
    form.k = 3;
    let r = run_pipeline_for(&form, &small()).unwrap();
    assert_eq!(r.status, Status::Gated);
    assert!(r.suites.is_empty() && r.timings.is_empty());
    assert!(r.gate.failures()[0].witness.contains("agree"));
}

#[test]
fn unknown_form_and_bad_config() {
    assert!(run_pipeline(&RunConfig { form: "11a".into(), ..small() }).is_err());
    assert!(run_pipeline(&RunConfig { prec: (2, 4), ..small() }).is_err());
}
