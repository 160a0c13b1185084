//! Python bindings. Rationals cross the boundary as exact `"m/n"` strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use thompson_fn::checks::{run_suite as run_suite_rs, SuiteOptions};
use thompson_fn::document::{parse_element, render_svg, serialize_element};
use thompson_fn::grouprep::AlgebraElement;
use thompson_fn::structure;
use thompson_fn::{construct, nadic, GroupWord, PlElement, Rational};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rational(s: &str) -> PyResult<Rational> {
    s.parse().map_err(err)
}

/// An element of F(N).
#[pyclass(
    name = "Element",
    frozen,
    eq,
    hash,
    from_py_object,
    module = "thompson_fn_py"
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyElement(PlElement);

#[pymethods]
impl PyElement {
    #[new]
    fn new(base: u32, breaks: Vec<(String, String)>) -> PyResult<Self> {
        let pts = breaks
            .iter()
            .map(|(x, y)| Ok((rational(x)?, rational(y)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyElement(PlElement::new(base, pts).map_err(err)?))
    }

    #[staticmethod]
    fn identity(base: u32) -> PyResult<Self> {
        nadic::check_base(base).map_err(err)?;
        Ok(PyElement(PlElement::identity(base)))
    }

    #[staticmethod]
    fn from_word(text: &str, base: u32) -> PyResult<Self> {
        let w = GroupWord::parse(text, base).map_err(err)?;
        Ok(PyElement(w.evaluate().map_err(err)?))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyElement(parse_element(text).map_err(err)?))
    }

    #[staticmethod]
    fn a(d: &str, p: i64, base: u32) -> PyResult<Self> {
        let params = construct::ADParams::new(rational(d)?, p, base).map_err(err)?;
        Ok(PyElement(construct::make_a(&params)))
    }

    #[staticmethod]
    fn a_inverse(d: &str, p: i64, base: u32) -> PyResult<Self> {
        let params = construct::ADParams::new(rational(d)?, p, base).map_err(err)?;
        Ok(PyElement(construct::make_a_inverse(&params)))
    }

    #[staticmethod]
    fn f1(d: &str, base: u32) -> PyResult<Self> {
        Ok(PyElement(
            construct::make_f1(&rational(d)?, base).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn f2(d: &str, base: u32) -> PyResult<Self> {
        Ok(PyElement(
            construct::make_f2(&rational(d)?, base).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn shift(base: u32) -> PyResult<Self> {
        Ok(PyElement(construct::shift_element(base).map_err(err)?))
    }

    #[staticmethod]
    fn generator(base: u32, i: u32) -> PyResult<Self> {
        Ok(PyElement(
            construct::standard_generator(base, i).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn scaling_lemma(base: u32, lo: &str, hi: &str) -> PyResult<Self> {
        let f =
            construct::scaling_lemma(base, &rational(lo)?, &rational(hi)?, None).map_err(err)?;
        Ok(PyElement(f))
    }

    #[staticmethod]
    fn random(base: u32, length: usize, seed: u64) -> PyResult<Self> {
        Ok(PyElement(
            thompson_fn::random_element(base, length, seed).map_err(err)?,
        ))
    }

    #[getter]
    fn base(&self) -> u32 {
        self.0.base()
    }

    #[getter]
    fn breaks(&self) -> Vec<(String, String)> {
        self.0
            .breaks()
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect()
    }

    fn __call__(&self, x: &str) -> PyResult<String> {
        Ok(self.0.evaluate(&rational(x)?).map_err(err)?.to_string())
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement(self.0.compose(&other.0).map_err(err)?))
    }

    fn __pow__(&self, k: i64, _modulo: Option<i64>) -> Self {
        PyElement(self.0.pow(k))
    }

    fn inverse(&self) -> Self {
        PyElement(self.0.inverse())
    }

    fn conjugate_by(&self, h: &PyElement) -> PyResult<Self> {
        Ok(PyElement(self.0.conjugate_by(&h.0).map_err(err)?))
    }

    fn commutes_with(&self, other: &PyElement) -> PyResult<bool> {
        self.0.commutes_with(&other.0).map_err(err)
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn boundary_slopes(&self) -> (i64, i64) {
        self.0.boundary_slopes()
    }

    fn fixed_set(&self) -> Vec<(String, String)> {
        self.0
            .fixed_set()
            .intervals()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn to_json(&self) -> String {
        serialize_element(&self.0)
    }

    fn to_svg(&self) -> String {
        render_svg(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.0)
    }
}

/// A finitely supported element of the rational group algebra.
#[pyclass(
    name = "Algebra",
    frozen,
    skip_from_py_object,
    module = "thompson_fn_py"
)]
#[derive(Clone)]
struct PyAlgebra(AlgebraElement);

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(base: u32, terms: Vec<(PyElement, String)>) -> PyResult<Self> {
        let terms = terms
            .into_iter()
            .map(|(g, c)| Ok((g.0, rational(&c)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyAlgebra(
            AlgebraElement::from_terms(base, terms).map_err(err)?,
        ))
    }

    fn __add__(&self, other: &PyAlgebra) -> PyResult<Self> {
        Ok(PyAlgebra(self.0.try_add(&other.0).map_err(err)?))
    }

    fn __sub__(&self, other: &PyAlgebra) -> PyResult<Self> {
        Ok(PyAlgebra(self.0.try_sub(&other.0).map_err(err)?))
    }

    fn __mul__(&self, other: &PyAlgebra) -> PyResult<Self> {
        Ok(PyAlgebra(self.0.algebra_mul(&other.0).map_err(err)?))
    }

    fn trace(&self) -> String {
        self.0.trace().to_string()
    }

    fn two_norm_sq(&self) -> String {
        self.0.two_norm_sq().to_string()
    }

    fn adjoint(&self) -> Self {
        PyAlgebra(self.0.adjoint())
    }

    fn commutator_norm_sq(&self, other: &PyAlgebra) -> PyResult<String> {
        Ok(thompson_fn::grouprep::commutator_norm_sq(&self.0, &other.0)
            .map_err(err)?
            .to_string())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyfunction]
fn is_nadic(x: &str, base: u32) -> PyResult<bool> {
    Ok(nadic::is_nadic(&rational(x)?, base))
}

#[pyfunction]
fn is_power_of_n(x: &str, base: u32) -> PyResult<Option<i64>> {
    nadic::is_power_of_n(&rational(x)?, base).map_err(err)
}

#[pyfunction]
fn member_d(f: &PyElement) -> bool {
    structure::member_d(&f.0)
}

#[pyfunction]
fn member_fprime(f: &PyElement) -> bool {
    structure::member_fprime(&f.0)
}

#[pyfunction]
fn epsilon_lower(f: &PyElement) -> PyResult<String> {
    Ok(structure::epsilon_lower(&f.0).map_err(err)?.0.to_string())
}

#[pyfunction]
fn epsilon_upper(f: &PyElement) -> PyResult<String> {
    Ok(structure::epsilon_upper(&f.0).map_err(err)?.0.to_string())
}

#[pyfunction]
fn check_conjugation_identity(g: &PyElement, h: &PyElement) -> PyResult<bool> {
    structure::check_conjugation_identity(&g.0, &h.0).map_err(err)
}

#[pyfunction]
fn abelianization(f: &PyElement) -> (i64, i64) {
    let img = structure::abelianization(&f.0);
    (img.a, img.b)
}

#[pyfunction]
fn icc_witness(f: &PyElement, count: usize) -> PyResult<Vec<PyElement>> {
    let w = structure::icc_witness(&f.0, count).map_err(err)?;
    Ok(w.conjugates.into_iter().map(PyElement).collect())
}

#[pyfunction]
fn commuting_pair(base: u32, elements: Vec<PyElement>) -> PyResult<(PyElement, PyElement)> {
    let set: Vec<PlElement> = elements.into_iter().map(|e| e.0).collect();
    let pair = structure::commuting_pair(base, &set).map_err(err)?;
    Ok((PyElement(pair.g), PyElement(pair.h)))
}

#[pyfunction]
fn semidirect_decompose(f: &PyElement) -> PyResult<(PyElement, i64)> {
    let (d, n) = structure::semidirect_decompose(&f.0).map_err(err)?;
    Ok((PyElement(d), n))
}

#[pyfunction]
fn alpha_action(n: i64, f: &PyElement) -> PyResult<PyElement> {
    Ok(PyElement(structure::alpha_action(n, &f.0).map_err(err)?))
}

#[pyfunction]
fn central_sequence(base: u32, index: u32) -> PyResult<(String, String, PyElement)> {
    let c = structure::central_sequence(base, index).map_err(err)?;
    Ok((
        c.lower.to_string(),
        c.upper.to_string(),
        PyElement(c.element),
    ))
}

#[pyfunction]
fn centrally_free_check(base: u32, m: i64, index: u32) -> PyResult<bool> {
    structure::centrally_free_check(base, m, index).map_err(err)
}

/// Runs a verification suite and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (name, base=2, seed=0, samples=None, max_j=6))]
fn run_suite(
    name: &str,
    base: u32,
    seed: u64,
    samples: Option<usize>,
    max_j: u32,
) -> PyResult<String> {
    let opts = SuiteOptions {
        base,
        seed,
        samples,
        max_j,
    };
    Ok(run_suite_rs(name, &opts).map_err(err)?.to_json())
}

#[pymodule]
fn thompson_fn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(is_nadic, m)?)?;
    m.add_function(wrap_pyfunction!(is_power_of_n, m)?)?;
    m.add_function(wrap_pyfunction!(member_d, m)?)?;
    m.add_function(wrap_pyfunction!(member_fprime, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_lower, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_upper, m)?)?;
    m.add_function(wrap_pyfunction!(check_conjugation_identity, m)?)?;
    m.add_function(wrap_pyfunction!(abelianization, m)?)?;
    m.add_function(wrap_pyfunction!(icc_witness, m)?)?;
    m.add_function(wrap_pyfunction!(commuting_pair, m)?)?;
    m.add_function(wrap_pyfunction!(semidirect_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_action, m)?)?;
    m.add_function(wrap_pyfunction!(central_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(centrally_free_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
