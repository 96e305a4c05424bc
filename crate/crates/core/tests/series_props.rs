use cmsym::pollack::{split_pm, split_working_precision, symmetry_holds, LogPair, SyntheticPair};
use cmsym::series::{CharacterPoint, IwasawaSeries};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn exact(p: u64, prec: i64, degree: usize, seed: u64) -> IwasawaSeries {
    IwasawaSeries::random_bounded(p, prec, degree, &mut ChaCha8Rng::seed_from_u64(seed)).mark_exact()
}

fn same(a: &cmsym::arith::RamifiedPadic, b: &cmsym::arith::RamifiedPadic) -> bool {
    a.sub_ref(b).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_laws(p in prop::sample::select(vec![3u64, 5]), s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = exact(p, 10, 12, s1);
        let g = exact(p, 10, 12, s2);
        prop_assert!(f.mul(&g).unwrap().eq_to_precision(&g.mul(&f).unwrap()));
        prop_assert!(f.add(&g).unwrap().sub(&g).unwrap().eq_to_precision(&f));
        prop_assert!(f.mul(&IwasawaSeries::one(p, 10, 12)).unwrap().eq_to_precision(&f));
    }

    #[test]
    fn evaluation_is_multiplicative(s1 in any::<u64>(), s2 in any::<u64>(), s in 0i64..4, level in 0u32..2) {
        let f = exact(3, 10, 8, s1);
        let g = exact(3, 10, 8, s2);
        let pt = CharacterPoint::new(s, 0, level);
        let fg = f.mul(&g).unwrap().evaluate(&pt).unwrap();
        let prod = f.evaluate(&pt).unwrap().mul_ref(&g.evaluate(&pt).unwrap());
        prop_assert!(same(&fg, &prod));
    }

    #[test]
    fn twist_shifts_the_point(seed in any::<u64>(), n in -3i64..4, s in 0i64..4, level in 0u32..2) {
        let f = exact(5, 12, 8, seed);
        let lhs = f.twist(n).evaluate(&CharacterPoint::new(s, 0, level)).unwrap();
        let rhs = f.evaluate(&CharacterPoint::new(s + n, 0, level)).unwrap();
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn twists_compose(seed in any::<u64>(), a in -3i64..4, b in -3i64..4) {
        let f = exact(3, 12, 10, seed);
        prop_assert!(f.twist(a).twist(b).eq_to_precision(&f.twist(a + b)));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let f = IwasawaSeries::random_bounded(5, 8, 6, &mut ChaCha8Rng::seed_from_u64(seed));
        let back: IwasawaSeries = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn split_recovers_random_pairs(seed in any::<u64>(), k in 2u32..4) {
        let (prec, degree) = (8, 24);
        let logs = LogPair::build(k, 3, split_working_precision(3, prec, degree), degree).unwrap();
        let pair = SyntheticPair::generate(&logs, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let out = split_pm(&pair.l_plus, &pair.l_minus, &logs).unwrap();
        prop_assert!(out.plus.agrees_mod(&pair.a, prec, degree));
        prop_assert!(out.minus.agrees_mod(&pair.b, prec, degree));
        for level in 1..=2 {
            prop_assert!(symmetry_holds(&pair, &logs, &CharacterPoint::new(0, 0, level)).unwrap());
        }
    }
}

#[test]
fn division_by_a_non_factor_reports_a_defect() {
    let logs = LogPair::build(2, 3, 12, 24).unwrap();
    let f = exact(3, 12, 24, 5);
    let (_, defect) = f.divide_exact(&logs.minus.series).unwrap();
    assert!(!defect.holds);
}
