//! Python bindings: chains and blowup sequences as classes, tree and blowup
//! operations as functions. Values cross the boundary as exact strings
//! (`"3/2"`, `"inf"`).

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use valtree::blowup::{descent as descent_table, divisorial_value, first_char_exponent as char_exp};
use valtree::correspondence::{blowups_to_chain, chain_to_blowups};
use valtree::io::{chain_from_json, chain_to_json, seq_from_json, seq_to_json};
use valtree::keypoly::epsilon_data;
use valtree::{parse_poly, tree, BaseField, BivarPoly, MacLaneChain, Value};

create_exception!(valtree, ValtreeError, PyException, "A mathematical precondition failed.");

fn err(e: valtree::Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        ValtreeError::new_err(e.to_string())
    }
}

fn poly(text: &str, field: BaseField) -> PyResult<BivarPoly> {
    parse_poly(text, field).map_err(err)
}

fn value(text: &str) -> PyResult<Value> {
    text.parse().map_err(err)
}

/// A MacLane chain of key polynomials.
#[pyclass(frozen, from_py_object, module = "valtree")]
#[derive(Clone)]
struct Chain {
    inner: MacLaneChain,
}

#[pymethods]
impl Chain {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Chain { inner: chain_from_json(text).map_err(err)? })
    }

    /// The monomial chain `[(y, e)]`.
    #[staticmethod]
    #[pyo3(signature = (e, field = "Q"))]
    fn monomial(e: &str, field: &str) -> PyResult<Self> {
        let field: BaseField = field.parse().map_err(err)?;
        Ok(Chain { inner: MacLaneChain::monomial(field, &value(e)?).map_err(err)? })
    }

    fn to_json(&self) -> String {
        chain_to_json(&self.inner)
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    #[getter]
    fn swap_xy(&self) -> bool {
        self.inner.swap_xy()
    }

    /// `(key, beta)` pairs; a curve key has beta `"inf"`.
    fn keys(&self) -> Vec<(String, String)> {
        self.inner.keys_with_values().into_iter().map(|(k, b)| (k.to_string(), b.to_string())).collect()
    }

    fn evaluate(&self, f: &str) -> PyResult<String> {
        Ok(self.inner.evaluate(&poly(f, self.inner.field())?).to_string())
    }

    /// `(epsilon, I, b)`.
    fn epsilon(&self, p: &str) -> PyResult<(String, Vec<u32>, u32)> {
        let d = epsilon_data(&self.inner, &poly(p, self.inner.field())?).map_err(err)?;
        Ok((d.epsilon.to_string(), d.attaining, d.b))
    }

    fn truncate(&self, i: usize) -> PyResult<Self> {
        Ok(Chain { inner: self.inner.truncate(i).map_err(err)? })
    }

    fn augment(&self, q: &str, beta: &str) -> PyResult<Self> {
        let q = poly(q, self.inner.field())?;
        Ok(Chain { inner: self.inner.augment(&q, &value(beta)?).map_err(err)? })
    }

    /// Violated invariants as text; empty for a valid chain.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().iter().map(ToString::to_string).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Chain({})", self.inner)
    }

    fn __eq__(&self, other: &Chain) -> PyResult<bool> {
        tree::same_valuation(&self.inner, &other.inner).map_err(err)
    }
}

/// A sequence of point blowups ending at its last exceptional divisor.
#[pyclass(frozen, skip_from_py_object, module = "valtree")]
#[derive(Clone)]
struct BlowupSeq {
    inner: valtree::BlowupSeq,
}

#[pymethods]
impl BlowupSeq {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(BlowupSeq { inner: seq_from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        seq_to_json(&self.inner)
    }

    fn value(&self, f: &str) -> PyResult<String> {
        Ok(divisorial_value(&self.inner, &poly(f, self.inner.field)?).map_err(err)?.to_string())
    }

    fn to_chain(&self) -> PyResult<Chain> {
        Ok(Chain { inner: blowups_to_chain(&self.inner).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BlowupSeq({})", self.inner)
    }
}

/// `"less"`, `"equal"`, `"greater"` or `"incomparable"`.
#[pyfunction]
fn compare(a: &Chain, b: &Chain) -> PyResult<String> {
    Ok(tree::compare(&a.inner, &b.inner).map_err(err)?.relation.to_string())
}

#[pyfunction]
fn infimum(a: &Chain, b: &Chain) -> PyResult<Chain> {
    Ok(Chain { inner: tree::infimum(&a.inner, &b.inner).map_err(err)? })
}

#[pyfunction]
fn segment_point(chain: &Chain, t: &str) -> PyResult<Chain> {
    Ok(Chain { inner: tree::segment_point(&chain.inner, &value(t)?).map_err(err)? })
}

/// `(sequence, exact)`.
#[pyfunction]
#[pyo3(signature = (chain, max_steps = 32))]
fn to_blowups(chain: &Chain, max_steps: usize) -> PyResult<(BlowupSeq, bool)> {
    let (seq, exact) = chain_to_blowups(&chain.inner, max_steps).map_err(err)?;
    Ok((BlowupSeq { inner: seq }, exact))
}

#[pyfunction]
#[pyo3(signature = (f, field = "Q"))]
fn first_char_exponent(f: &str, field: &str) -> PyResult<String> {
    let field: BaseField = field.parse().map_err(err)?;
    Ok(char_exp(&poly(f, field)?).map_err(err)?.to_string())
}

/// Rows `(multiplicity, e)` along the followed centers.
#[pyfunction]
#[pyo3(signature = (f, steps = 6, field = "Q"))]
fn descent(f: &str, steps: usize, field: &str) -> PyResult<Vec<(u32, String)>> {
    let field: BaseField = field.parse().map_err(err)?;
    let d = descent_table(&poly(f, field)?, steps).map_err(err)?;
    Ok(d.rows.into_iter().map(|r| (r.mu, r.e.to_string())).collect())
}

#[pyfunction]
fn tree_dot(chains: Vec<Chain>) -> PyResult<String> {
    let inner: Vec<MacLaneChain> = chains.into_iter().map(|c| c.inner).collect();
    tree::tree_dot(&inner).map_err(err)
}

#[pymodule]
#[pyo3(name = "valtree")]
fn valtree_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("ValtreeError", m.py().get_type::<ValtreeError>())?;
    m.add_class::<Chain>()?;
    m.add_class::<BlowupSeq>()?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(infimum, m)?)?;
    m.add_function(wrap_pyfunction!(segment_point, m)?)?;
    m.add_function(wrap_pyfunction!(to_blowups, m)?)?;
    m.add_function(wrap_pyfunction!(first_char_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(descent, m)?)?;
    m.add_function(wrap_pyfunction!(tree_dot, m)?)?;
    Ok(())
}
