//! Exact arithmetic foundations.

pub mod character;
pub mod cyclotomic;
pub mod numtheory;
pub mod padic;
pub mod ramified;

pub use character::{gauss_sum, DirichletCharacter};
pub use cyclotomic::CyclotomicNumber;
pub use padic::{padic_log, teichmuller, Padic};
pub use ramified::{cyclotomic_poly_eval, RamifiedPadic};

/// Exact rationals over big integers; always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

/// Canonical JSON form of a rational: `"num/den"` (or `"num"` when integral).
pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn rational_from_str(s: &str) -> crate::Result<Rational> {
    s.parse()
        .map_err(|_| crate::Error::Serde(format!("bad rational {s:?}")))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
