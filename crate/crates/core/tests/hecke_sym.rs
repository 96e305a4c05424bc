use cmsym::arith::numtheory::primes_in;
use cmsym::arith::CyclotomicNumber;
use cmsym::hecke::catalog::{all_forms, load_form, regenerate, Catalog};
use cmsym::hecke::check_hypotheses;
use cmsym::sympower::{
    compare_traces, decompose, euler_poly_factored, euler_poly_sym, trace_via_components, trace_via_matrix,
    verify_factorization, verify_factorization_with, Corruption,
};

fn int(n: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_i64(1, n)
}

#[test]
fn eigenvalues_of_32a() {
    let f = load_form("32a").unwrap();
    for (q, a) in [(5, -2), (7, 0), (13, 6), (17, 2), (29, -10), (37, -2)] {
        assert_eq!(f.a_q(q).unwrap().to_rational(), int(a).to_rational(), "q = {q}");
    }
}

#[test]
fn a7_of_27a_matches_the_point_count() {
    // y² + y = x³ over F_7 has 8 affine points
    let f = load_form("27a").unwrap();
    assert_eq!(f.a_q(7).unwrap().to_rational(), int(-1).to_rational());
}

#[test]
fn inert_primes_have_trace_zero() {
    for f in all_forms().unwrap() {
        for q in primes_in(3, 1000) {
            if f.is_good(q) && f.field.epsilon(q) == -1 {
                assert!(f.a_q(q).unwrap().is_zero(), "{} q = {q}", f.label);
            }
        }
    }
}

#[test]
fn committed_tables_regenerate() {
    let r = regenerate(&Catalog::builtin().unwrap()).unwrap();
    assert!(r.clean(), "{:?} {:?}", r.diffs, r.character_mismatches);
}

#[test]
fn tampered_catalog_is_caught() {
    let mut c = Catalog::builtin().unwrap();
    let v = c.forms[0].a_q.values_mut().next().unwrap();
    *v += 1;
    assert_eq!(regenerate(&c).unwrap().diffs.len(), 1);
}

#[test]
fn gate_per_form() {
    let f = load_form("32a").unwrap();
    assert!(check_hypotheses(&f, 3).all_pass);
    assert!(check_hypotheses(&f, 7).all_pass);
    let r = check_hypotheses(&f, 5);
    assert!(!r.all_pass);
    assert_eq!(r.failures().len(), 1);
    assert!(!check_hypotheses(&f, 2).all_pass);
    let g = load_form("27a").unwrap();
    assert!(!check_hypotheses(&g, 3).all_pass);
    assert!(check_hypotheses(&g, 5).all_pass);
}

#[test]
fn trace_spot_values() {
    let f = load_form("32a").unwrap();
    assert_eq!(trace_via_matrix(2, &f, 5).unwrap(), trace_via_components(2, &f, 5).unwrap());
    assert_eq!(trace_via_matrix(2, &f, 5).unwrap().to_rational(), int(-1).to_rational());
    assert_eq!(trace_via_matrix(3, &f, 5).unwrap().to_rational(), int(12).to_rational());
    assert_eq!(trace_via_matrix(2, &f, 7).unwrap().to_rational(), int(-7).to_rational());
}

#[test]
fn decomposition_dimensions() {
    assert!(decompose(1, 2).is_err());
    for m in 2..=8 {
        for k in 2..=4 {
            let d: u32 = decompose(m, k).unwrap().iter().map(|c| c.dimension).sum();
            assert_eq!(d, m + 1);
        }
    }
}

#[test]
fn factorization_and_traces_all_forms() {
    for f in all_forms().unwrap() {
        for m in 2..=3 {
            let r = verify_factorization(m, &f, 300).unwrap();
            assert!(r.pass(), "{} m={m}: {:?}", f.label, r.mismatches);
        }
        let (n, bad) = compare_traces(&f, 4, 200).unwrap();
        assert!(n > 0 && bad.is_empty());
    }
}

#[test]
fn euler_factor_at_an_inert_prime() {
    let f = load_form("32a").unwrap();
    let a = euler_poly_sym(2, &f, 7).unwrap();
    let b = euler_poly_factored(2, &f, 7).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.degree(), 3);
}

#[test]
fn corruption_is_detected() {
    let f = load_form("49a").unwrap();
    let r = verify_factorization_with(3, &f, 200, Some(Corruption { q: 11, delta: 2 })).unwrap();
    assert_eq!(r.mismatches.len(), 1);
    assert_eq!(r.mismatches[0].q, 11);
}
