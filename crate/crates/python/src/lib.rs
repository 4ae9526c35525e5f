//! Python bindings: `orbitforge.Field`, `orbitforge.Companion` and the batch helpers.

use orbitforge_core::field::{Field as CoreField, RootClassification};
use orbitforge_core::orbit::Companion as CoreCompanion;
use orbitforge_core::{lucas, orders, report};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite field `F_{p^k}`; elements are canonical integer encodings.
#[pyclass(frozen, name = "Field")]
struct Field {
    inner: CoreField,
}

#[pymethods]
impl Field {
    #[new]
    #[pyo3(signature = (p, k = 1, modulus = None))]
    fn new(p: u64, k: u32, modulus: Option<Vec<u64>>) -> PyResult<Self> {
        let inner = CoreField::new(p, k, modulus.as_deref()).map_err(value_error)?;
        Ok(Field { inner })
    }

    /// Build from a spec string such as `"163"`, `"3^3"` or `"5^2/3,0,1"`.
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        let inner = report::parse_field_spec(spec).map_err(value_error)?;
        Ok(Field { inner })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.characteristic()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.inner.modulus().to_vec()
    }

    fn encode(&self, coeffs: Vec<u64>) -> u64 {
        self.inner.element_from_coeffs(&coeffs).value()
    }

    fn decode(&self, x: u64) -> PyResult<Vec<u64>> {
        Ok(self.inner.element(x).map_err(value_error)?.coeffs())
    }

    fn add(&self, x: u64, y: u64) -> PyResult<u64> {
        let (x, y) = (self.el(x)?, self.el(y)?);
        Ok((&x + &y).value())
    }

    fn mul(&self, x: u64, y: u64) -> PyResult<u64> {
        let (x, y) = (self.el(x)?, self.el(y)?);
        Ok((&x * &y).value())
    }

    fn pow(&self, x: u64, e: i64) -> PyResult<u64> {
        Ok(self.el(x)?.pow(e as i128).map_err(value_error)?.value())
    }

    fn inv(&self, x: u64) -> PyResult<u64> {
        Ok(self.el(x)?.inv().map_err(value_error)?.value())
    }

    fn multiplicative_order(&self, x: u64) -> PyResult<u64> {
        self.el(x)?.multiplicative_order().map_err(value_error)
    }

    fn sqrt(&self, x: u64) -> PyResult<Option<u64>> {
        Ok(self.el(x)?.sqrt().map(|r| r.value()))
    }

    fn __repr__(&self) -> String {
        format!("Field('{}')", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

impl Field {
    fn el(&self, x: u64) -> PyResult<orbitforge_core::FieldElement> {
        self.inner.element(x).map_err(value_error)
    }
}

/// The recurrence `x_{n+2} = a x_{n+1} + b x_n`, i.e. `Q = [[a, b], [1, 0]]`.
#[pyclass(frozen, name = "Companion")]
struct Companion {
    inner: CoreCompanion,
}

#[pymethods]
impl Companion {
    #[new]
    fn new(field: &Field, a: u64, b: u64) -> PyResult<Self> {
        let inner = CoreCompanion::from_values(&field.inner, a, b).map_err(value_error)?;
        Ok(Companion { inner })
    }

    #[getter]
    fn a(&self) -> u64 {
        self.inner.a().value()
    }

    #[getter]
    fn b(&self) -> u64 {
        self.inner.b().value()
    }

    /// `"distinct_split"`, `"repeated"` or `"irreducible"`.
    fn classification(&self) -> &'static str {
        self.inner.classify().tag()
    }

    /// Roots in `F_q` (ascending); empty when irreducible.
    fn roots(&self) -> Vec<u64> {
        match self.inner.classify() {
            RootClassification::DistinctSplit { gamma1, gamma2 } => vec![gamma1.value(), gamma2.value()],
            RootClassification::Repeated { gamma } => vec![gamma.value()],
            RootClassification::Irreducible { .. } => vec![],
        }
    }

    fn root_orders(&self) -> Vec<u64> {
        self.inner.analyze().root_orders().to_vec()
    }

    fn step(&self, x1: u64, x0: u64) -> (u64, u64) {
        self.inner.step((x1, x0))
    }

    fn orbit_length(&self, x1: u64, x0: u64) -> PyResult<u64> {
        self.inner.orbit_length_of((x1, x0)).map_err(value_error)
    }

    /// `[(length, count), ...]` from the root structure.
    fn predict_spectrum(&self) -> Vec<(u64, u64)> {
        self.inner.predict_spectrum().entries().to_vec()
    }

    /// `[(length, count), ...]` by walking every orbit.
    fn enumerate_spectrum(&self) -> PyResult<Vec<(u64, u64)>> {
        Ok(self.inner.enumerate_spectrum().map_err(value_error)?.entries().to_vec())
    }

    fn irreducible_length_bound(&self) -> PyResult<u64> {
        self.inner.irreducible_length_bound().map_err(value_error)
    }

    /// Discrepancies between prediction and enumeration; empty means agreement.
    fn verify(&self) -> PyResult<Vec<String>> {
        Ok(orbitforge_core::orbit::verify(&self.inner).map_err(value_error)?.discrepancies)
    }

    fn __repr__(&self) -> String {
        format!("Companion('{}', a={}, b={})", self.inner.field(), self.a(), self.b())
    }
}

/// `[(prime, exponent), ...]`.
#[pyfunction]
fn factor_integer(n: u64) -> Vec<(u64, u32)> {
    orbitforge_core::factor_integer(n).factors().to_vec()
}

#[pyfunction]
fn crt_exponent_split(r: u64, m: u64, n: u64) -> PyResult<(u64, u64)> {
    orders::crt_exponent_split(r, m, n).map_err(value_error)
}

/// `(a, gamma1, gamma2, m, n)` giving three orbit lengths for this `b`.
#[pyfunction]
fn three_length_construction(field: &Field, b: u64) -> PyResult<(u64, u64, u64, u64, u64)> {
    let b = field.el(b)?;
    let w = orders::three_length_construction(&field.inner, &b).map_err(value_error)?;
    Ok((w.a.value(), w.gamma1.value(), w.gamma2.value(), w.m, w.n))
}

type LprStatus = (&'static str, Vec<(u64, u64, bool)>, u8);

/// `(classification, [(root, order, is_generator), ...], lpr_count)` for `x^2 - a x - 1`.
#[pyfunction]
fn lpr_status(field: &Field, a: u64) -> PyResult<LprStatus> {
    let r = lucas::lpr_status(&field.inner, &field.el(a)?).map_err(value_error)?;
    let roots = r.roots.iter().map(|x| (x.root, x.order, x.is_generator)).collect();
    Ok((r.classification, roots, r.lpr_count))
}

/// `[(gamma, conjugate, a), ...]` for `q = 3 (mod 4)`, sorted by `a`.
#[pyfunction]
fn lpr_table(field: &Field) -> PyResult<Vec<(u64, u64, u64)>> {
    let rows = lucas::enumerate_lpr_as(&field.inner).map_err(value_error)?;
    Ok(rows.iter().map(|r| (r.gamma.value(), r.conjugate.value(), r.a.value())).collect())
}

/// One analysis record as a dict, keyed like the CSV columns.
#[pyfunction]
#[pyo3(signature = (field, a, b, verify = false))]
fn analyze<'py>(py: Python<'py>, field: &str, a: u64, b: u64, verify: bool) -> PyResult<Bound<'py, PyDict>> {
    let f = report::parse_field_spec(field).map_err(value_error)?;
    let res = report::run_analyze(&f, a, b, verify).map_err(value_error)?;
    let r = res.record;
    let d = PyDict::new(py);
    d.set_item("q", r.q)?;
    d.set_item("p", r.p)?;
    d.set_item("k", r.k)?;
    d.set_item("a", r.a)?;
    d.set_item("b", r.b)?;
    d.set_item("class", r.class)?;
    d.set_item("lengths", r.lengths)?;
    d.set_item("counts", r.counts)?;
    d.set_item("root_orders", r.root_orders)?;
    d.set_item("order_neg_b", r.order_neg_b)?;
    d.set_item("neg_b_prime_power", r.neg_b_prime_power)?;
    d.set_item("verified", r.verified)?;
    d.set_item("discrepancies", res.discrepancies)?;
    Ok(d)
}

/// Predict-versus-enumerate over every field up to `max_q`: `(records, discrepancies)`.
#[pyfunction]
#[pyo3(signature = (max_q = 16))]
fn verify_all(py: Python<'_>, max_q: u64) -> PyResult<(u64, Vec<String>)> {
    let report = py.detach(|| report::run_verify(max_q, None)).map_err(value_error)?;
    Ok((report.total.records, report.discrepancies))
}

#[pymodule]
fn orbitforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Companion>()?;
    m.add_function(wrap_pyfunction!(factor_integer, m)?)?;
    m.add_function(wrap_pyfunction!(crt_exponent_split, m)?)?;
    m.add_function(wrap_pyfunction!(three_length_construction, m)?)?;
    m.add_function(wrap_pyfunction!(lpr_status, m)?)?;
    m.add_function(wrap_pyfunction!(lpr_table, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
