//! Python module `cmsym`. Structured results cross the boundary as JSON text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cmsym::arith::character::{gauss_norm_identity, DirichletCharacter};
use cmsym::hecke::catalog::load_form;
use cmsym::kl::{gen_bernoulli, kubota_leopoldt, padic_to_string, parse_character, Regulator};
use cmsym::pipeline::{run_pipeline, RunConfig};
use cmsym::sympower::{trace_via_components, trace_via_matrix, verify_factorization};
use cmsym::{dieudonne, hecke, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Error> {
    Ok(serde_json::to_string(v)?)
}

pub fn a_q_str(form: &str, q: u64) -> Result<String, Error> {
    Ok(load_form(form)?.a_q(q)?.to_string())
}

pub fn trace_str(form: &str, m: u32, q: u64, route: &str) -> Result<String, Error> {
    let f = load_form(form)?;
    let t = match route {
        "matrix" => trace_via_matrix(m, &f, q)?,
        "components" => trace_via_components(m, &f, q)?,
        r => return Err(Error::InvalidInput(format!("unknown route {r:?}"))),
    };
    Ok(t.to_string())
}

/// `L_p(η)(x^r)` for `r = 0..=max_r`, as `(r, value)`; pole components are skipped.
pub fn kl_value_strs(character: &str, p: u64, prec: i64, degree: usize, max_r: u32) -> Result<Vec<(u32, String)>, Error> {
    let eta = parse_character(character)?;
    let kl = kubota_leopoldt(&eta, p, prec, degree, Regulator::Auto)?;
    let poles = kl.pole_components();
    (0..=max_r)
        .filter(|&r| !poles.contains(&(r as usize % (p as usize - 1))))
        .map(|r| Ok((r, padic_to_string(&kl.value_at_power(r as i64)?))))
        .collect()
}

pub fn gauss_all(p: u64, n: u32) -> Result<bool, Error> {
    for t in DirichletCharacter::primitive_prime_power(p, n)? {
        if !gauss_norm_identity(&t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[pyfunction]
fn version() -> &'static str {
    cmsym::pipeline::VERSION
}

/// Hecke eigenvalue `a_q` of a catalogued form.
#[pyfunction]
fn a_q(form: &str, q: u64) -> PyResult<String> {
    a_q_str(form, q).map_err(py_err)
}

#[pyfunction]
fn check_hypotheses(form: &str, p: u64) -> PyResult<String> {
    let f = load_form(form).map_err(py_err)?;
    to_json(&hecke::check_hypotheses(&f, p)).map_err(py_err)
}

/// Trace of `Sym^m ρ(Frob_q)` by `"matrix"` or `"components"`.
#[pyfunction]
#[pyo3(signature = (form, m, q, route = "matrix"))]
fn sym_trace(form: &str, m: u32, q: u64, route: &str) -> PyResult<String> {
    trace_str(form, m, q, route).map_err(py_err)
}

#[pyfunction]
fn sym_factorization(form: &str, m: u32, bound: u64) -> PyResult<String> {
    let f = load_form(form).map_err(py_err)?;
    to_json(&verify_factorization(m, &f, bound).map_err(py_err)?).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (k, p, eps_order = 1, eps_exponent = 0))]
fn dieudonne_report(k: u32, p: u64, eps_order: u64, eps_exponent: u64) -> PyResult<String> {
    to_json(&dieudonne::report(k, p, eps_order, eps_exponent).map_err(py_err)?).map_err(py_err)
}

/// `B_{n,χ}` for a named quadratic or trivial character.
#[pyfunction]
fn bernoulli(n: usize, character: &str) -> PyResult<String> {
    let chi = parse_character(character).map_err(py_err)?;
    Ok(gen_bernoulli(n, &chi).map_err(py_err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (character, p, prec = 10, degree = 16, max_r = 5))]
fn kl_values(character: &str, p: u64, prec: i64, degree: usize, max_r: u32) -> PyResult<Vec<(u32, String)>> {
    kl_value_strs(character, p, prec, degree, max_r).map_err(py_err)
}

#[pyfunction]
fn gauss_identity(p: u64, n: u32) -> PyResult<bool> {
    gauss_all(p, n).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (form = "32a", p = 3, m = 4, bound = 500, prec = (20, 128), seed = 0, pairs = 100, triples = 50))]
#[allow(clippy::too_many_arguments)]
fn verify_all(
    form: &str,
    p: u64,
    m: u32,
    bound: u64,
    prec: (i64, usize),
    seed: u64,
    pairs: usize,
    triples: usize,
) -> PyResult<String> {
    let config = RunConfig { form: form.into(), p, m, bound, prec, seed, pairs, triples };
    let report = run_pipeline(&config).map_err(py_err)?;
    report.to_json().map_err(py_err)
}

#[pymodule(name = "cmsym")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(version, m)?)?;
    m.add_function(wrap_pyfunction!(a_q, m)?)?;
    m.add_function(wrap_pyfunction!(check_hypotheses, m)?)?;
    m.add_function(wrap_pyfunction!(sym_trace, m)?)?;
    m.add_function(wrap_pyfunction!(sym_factorization, m)?)?;
    m.add_function(wrap_pyfunction!(dieudonne_report, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(kl_values, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_identity, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(a_q_str("32a", 5).unwrap(), "-2");
        assert_eq!(trace_str("32a", 2, 7, "components").unwrap(), "-7");
        assert!(trace_str("32a", 2, 7, "nope").is_err());
        assert!(gauss_all(5, 2).unwrap());
        let v = kl_value_strs("quad4", 3, 6, 8, 2).unwrap();
        assert_eq!(v.len(), 3);
    }
}
