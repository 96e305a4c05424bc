use cmsym::arith::{rat, DirichletCharacter};
use cmsym::dieudonne::{self, pairing_property_check, trivial_zero_factor, Pairing};
use cmsym::kl::{kubota_leopoldt, kummer_pair, oracle_check, Regulator};
use cmsym::Error;

#[test]
fn quad4_at_five() {
    let q4 = DirichletCharacter::quadratic(-4).unwrap();
    let kl = kubota_leopoldt(&q4, 5, 8, 10, Regulator::Auto).unwrap();
    assert!(kl.pole_components().is_empty());
    let rows = oracle_check(&kl, &[0, 1, 2, 3, 4, 5], 8).unwrap();
    assert!(rows.iter().all(|r| r.pass), "{rows:?}");
}

#[test]
fn honest_precision_is_reported() {
    let q4 = DirichletCharacter::quadratic(-4).unwrap();
    let kl = kubota_leopoldt(&q4, 3, 8, 12, Regulator::Auto).unwrap();
    let (prec, degree) = kl.series.precision();
    assert!(prec >= 8 && degree == 12);
    // coefficient j is known to at least the target minus log_p j
    for j in 0..2 {
        for (i, c) in kl.series.component(j).iter().enumerate().skip(1) {
            assert!(c.precision() >= 8 - (i as f64).log(3.0).floor() as i64, "j={j} i={i}");
        }
    }
}

#[test]
fn kummer_anchor_and_pairs() {
    let k = kummer_pair(5, 1, 5).unwrap();
    assert!(k.holds);
    assert_eq!(k.residue, "3");
    for (p, r, r2) in [(3u64, 0u32, 2u32), (3, 2, 8), (5, 2, 22), (7, 1, 7), (7, 3, 45)] {
        assert!(kummer_pair(p, r, r2).unwrap().holds, "p={p} ({r}, {r2})");
    }
    assert!(kummer_pair(5, 3, 7).is_err());
}

#[test]
fn bad_regulator_is_rejected() {
    let q4 = DirichletCharacter::quadratic(-4).unwrap();
    assert!(matches!(kubota_leopoldt(&q4, 3, 6, 8, Regulator::Fixed(13)), Err(Error::BadRegulator { .. })));
    assert!(kubota_leopoldt(&q4, 3, 6, 8, Regulator::Fixed(6)).is_err());
}

#[test]
fn dieudonne_sweep() {
    for k in 2..=6 {
        for (n, e) in [(1, 0), (2, 1), (3, 1), (6, 5)] {
            let r = dieudonne::report(k, 5, n, e).unwrap();
            assert!(r.pass, "k={k} eps=z_{n}^{e}");
            assert_eq!(r.hodge_tate["V_2"], vec![0, 2 - 2 * k as i64]);
        }
    }
}

#[test]
fn trivial_zero_only_at_weight_two() {
    for k in 2..=6 {
        for p in [3u64, 5, 7] {
            let plus = trivial_zero_factor(k, 1, true).evaluate(p, 0);
            assert_eq!(plus.is_zero(), k == 2, "k={k} p={p}");
        }
    }
    assert_eq!(trivial_zero_factor(2, 1, true).evaluate(3, 0).to_rational(), Some(rat(0, 1)));
}

#[test]
fn degenerate_pairings() {
    assert!(matches!(Pairing::new(rat(1, 1), rat(1, 1)), Err(Error::InvalidInput(_))));
    assert!(matches!(Pairing::normalized(rat(0, 1)), Err(Error::DegeneratePairing(_))));
    // v± are normalized against whatever scale the pairing has
    let rescaled = Pairing::unchecked(rat(0, 1), rat(2, 1));
    let r = pairing_property_check(3, 1, &rescaled).unwrap();
    assert!(r.pass);
    let off = Pairing::unchecked(rat(1, 1), rat(1, 1));
    assert!(!pairing_property_check(3, 1, &off).unwrap().pass);
}
