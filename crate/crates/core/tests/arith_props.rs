use cmsym::arith::character::{gauss_norm_identity, gauss_sum};
use cmsym::arith::{CyclotomicNumber, DirichletCharacter, Padic};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn padic_ring_laws(p in prime(), a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000) {
        let (x, y, z) = (Padic::from_i64(p, a, 12), Padic::from_i64(p, b, 12), Padic::from_i64(p, c, 12));
        prop_assert!(x.add_ref(&y).eq_mod(&y.add_ref(&x), 12));
        prop_assert!(x.mul_ref(&y.add_ref(&z)).eq_mod(&x.mul_ref(&y).add_ref(&x.mul_ref(&z)), 12));
        prop_assert!(x.sub_ref(&x).is_zero());
        prop_assert!(Padic::from_i64(p, a * b, 12).eq_mod(&x.mul_ref(&y), 12));
    }

    #[test]
    fn padic_units_invert(p in prime(), a in 1i64..100_000) {
        prop_assume!(a % p as i64 != 0);
        let x = Padic::from_i64(p, a, 15);
        let inv = x.inv().unwrap();
        prop_assert!(x.mul_ref(&inv).eq_mod(&Padic::one(p, 15), 15));
    }

    #[test]
    fn padic_rational_embedding(p in prime(), n in -500i64..500, d in 1i64..500) {
        prop_assume!(d % p as i64 != 0);
        let q = BigRational::new(BigInt::from(n), BigInt::from(d));
        let x = Padic::from_rational(p, &q, 10);
        prop_assert!(x.mul_int(d).eq_mod(&Padic::from_i64(p, n, 10), 10));
    }

    #[test]
    fn precision_never_grows(p in prime(), a in 1i64..10_000, b in 1i64..10_000) {
        let x = Padic::from_i64(p, a, 8);
        let y = Padic::from_i64(p, b, 6);
        prop_assert!(x.add_ref(&y).precision() <= 6);
        prop_assert!(x.mul_ref(&y).precision() <= 6 + x.valuation().unwrap());
    }

    #[test]
    fn cyclotomic_field_laws(n in prop::sample::select(vec![3u64, 4, 5, 8, 12]), e1 in 0i64..24, e2 in 0i64..24, k in -5i64..5) {
        let a = CyclotomicNumber::root_of_unity(n, e1).add_ref(&CyclotomicNumber::from_i64(n, k));
        let b = CyclotomicNumber::root_of_unity(n, e2);
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(CyclotomicNumber::root_of_unity(n, e1).mul_ref(&b), CyclotomicNumber::root_of_unity(n, e1 + e2));
        if !a.is_zero() {
            prop_assert_eq!(a.mul_ref(&a.inv().unwrap()), CyclotomicNumber::one(n));
        }
    }

    #[test]
    fn gauss_sums_of_powers(j in 1u64..6) {
        let chi = DirichletCharacter::prime_power(7, 1, j).unwrap();
        prop_assert!(gauss_norm_identity(&chi).unwrap());
    }
}

#[test]
fn quadratic_gauss_sums() {
    // τ(χ_{-4})² = -4, τ(χ_{-3})² = -3
    for d in [-4i64, -3, 5, -7] {
        let chi = DirichletCharacter::quadratic(d).unwrap();
        let t = gauss_sum(&chi).unwrap();
        assert_eq!(t.mul_ref(&t).to_rational(), Some(BigRational::from_integer(d.into())), "d = {d}");
    }
}

#[test]
fn gauss_identity_small_prime_powers() {
    for p in [3u64, 5, 7] {
        for n in 1..=3 {
            let chars = DirichletCharacter::primitive_prime_power(p, n).unwrap();
            // p - 2 for n = 1, else p^{n-2}(p-1)²
            let want = if n == 1 { p - 2 } else { p.pow(n - 2) * (p - 1).pow(2) };
            assert_eq!(chars.len() as u64, want, "p={p} n={n}");
            assert!(chars.iter().all(|c| gauss_norm_identity(c).unwrap()));
        }
    }
}
