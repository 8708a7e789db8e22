//! Python bindings. Indices and values cross the boundary as Python `int`s
//! of any size; sequences are named by string (`"hatb"`, `"digitcount:3"`).

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use binpart_core::fast_eval::{self, eval_any};
use binpart_core::oracle::{gf_counts_with_cap, DEFAULT_TABLE_CAP};
use binpart_core::sequences;
use binpart_core::types::{DigitBound, Index, SequenceKind};
use binpart_core::verify;

fn to_py(e: binpart_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind(seq: &str, digit_bound: Option<u32>) -> PyResult<SequenceKind> {
    match digit_bound {
        None => seq.parse().map_err(to_py),
        Some(_) => SequenceKind::from_parts(seq, digit_bound).map_err(to_py),
    }
}

fn bound(d: u32) -> PyResult<DigitBound> {
    DigitBound::new(d).map_err(to_py)
}

/// Result of an identity check. Truthy when the check passed.
#[pyclass(name = "CheckReport", frozen, module = "binpart")]
struct PyCheckReport(verify::CheckReport);

#[pymethods]
impl PyCheckReport {
    #[getter]
    fn name(&self) -> &str {
        &self.0.name
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    /// `(lo, hi)` inclusive, or `None` when nothing was checked.
    #[getter]
    fn range(&self) -> Option<(BigUint, BigUint)> {
        self.0
            .range
            .as_ref()
            .map(|(lo, hi)| (lo.value().clone(), hi.value().clone()))
    }

    /// `(index, expected, actual, note)` of the first mismatch.
    #[getter]
    fn first_failure(&self) -> Option<(BigUint, BigUint, BigUint, Option<String>)> {
        self.0.first_failure.as_ref().map(|m| {
            (
                m.index.value().clone(),
                m.expected.clone(),
                m.actual.clone(),
                m.note.clone(),
            )
        })
    }

    #[getter]
    fn seed(&self) -> Option<u64> {
        self.0.seed
    }

    fn __bool__(&self) -> bool {
        self.0.passed()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("<CheckReport {}>", self.0)
    }
}

#[pyfunction]
fn bprime(k: BigUint) -> BigUint {
    sequences::bprime(&Index::from(k))
}

#[pyfunction]
fn b(k: BigUint) -> BigUint {
    sequences::b(&Index::from(k))
}

#[pyfunction]
fn hatb(k: BigUint) -> BigUint {
    sequences::hatb(&Index::from(k))
}

#[pyfunction]
fn stern(k: BigUint) -> BigUint {
    sequences::stern(&Index::from(k))
}

#[pyfunction]
fn sigma(k: BigUint) -> BigUint {
    sequences::sigma(&Index::from(k))
}

#[pyfunction]
fn digit_count(d: u32, k: BigUint) -> PyResult<BigUint> {
    Ok(sequences::digit_count(bound(d)?, &Index::from(k)))
}

/// `(stern(k), stern(k + 1))` by bit descent.
#[pyfunction]
fn stern_pair(k: BigUint) -> (BigUint, BigUint) {
    let p = fast_eval::stern_pair_descent(&Index::from(k));
    (p.lo, p.hi)
}

/// `(sigma(k - 1), sigma(k), sigma(k + 1))` by bit descent; `k >= 1`.
#[pyfunction]
fn sigma_triple(k: BigUint) -> PyResult<(BigUint, BigUint, BigUint)> {
    let t = fast_eval::sigma_triple_descent(&Index::from(k)).map_err(to_py)?;
    Ok((t.prev, t.cur, t.next))
}

/// Any sequence at `k` through the fastest available engine.
#[pyfunction(name = "eval")]
#[pyo3(signature = (seq, k, digit_bound = None))]
fn eval_seq(seq: &str, k: BigUint, digit_bound: Option<u32>) -> PyResult<BigUint> {
    Ok(eval_any(kind(seq, digit_bound)?, &Index::from(k)))
}

/// Representation counts for `0..=max_n` from the generating function.
#[pyfunction]
#[pyo3(signature = (d, max_n, cap = DEFAULT_TABLE_CAP))]
fn gf_counts(py: Python<'_>, d: u32, max_n: u64, cap: u64) -> PyResult<Vec<BigUint>> {
    let d = bound(d)?;
    py.detach(|| gf_counts_with_cap(d, max_n, cap))
        .map(|t| t.into_counts())
        .map_err(to_py)
}

#[pyfunction]
fn check_main_identity(py: Python<'_>, limit: u64) -> PyCheckReport {
    PyCheckReport(py.detach(|| verify::check_main_identity(limit)))
}

#[pyfunction]
fn check_halving(py: Python<'_>, limit: u64) -> PyCheckReport {
    PyCheckReport(py.detach(|| verify::check_halving(limit)))
}

#[pyfunction]
fn replay_proof(py: Python<'_>, limit: u64) -> PyResult<PyCheckReport> {
    py.detach(|| verify::replay_proof(limit))
        .map(PyCheckReport)
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (samples, max_bits, seed = 42))]
fn cross_engines(
    py: Python<'_>,
    samples: usize,
    max_bits: u64,
    seed: u64,
) -> PyResult<PyCheckReport> {
    py.detach(|| verify::cross_engines(samples, max_bits, seed))
        .map(PyCheckReport)
        .map_err(to_py)
}

/// b-file text (`"n value"` lines) for `start..=stop`.
#[pyfunction]
#[pyo3(signature = (seq, start, stop, digit_bound = None))]
fn emit_bfile(
    seq: &str,
    start: BigUint,
    stop: BigUint,
    digit_bound: Option<u32>,
) -> PyResult<String> {
    let records =
        verify::emit_bfile(kind(seq, digit_bound)?, &start.into(), &stop.into()).map_err(to_py)?;
    let mut out = Vec::new();
    verify::write_bfile(&mut out, records).map_err(to_py)?;
    Ok(String::from_utf8(out).expect("ascii"))
}

/// Recomputes every record of b-file `text`; `#` comments are skipped.
#[pyfunction]
#[pyo3(signature = (seq, text, digit_bound = None))]
fn compare_bfile(seq: &str, text: &str, digit_bound: Option<u32>) -> PyResult<PyCheckReport> {
    let kind = kind(seq, digit_bound)?;
    let records = verify::parse_bfile(text.as_bytes()).map_err(to_py)?;
    Ok(PyCheckReport(verify::compare_bfile(kind, records)))
}

#[pyfunction]
fn selftest() -> Vec<PyCheckReport> {
    verify::selftest().into_iter().map(PyCheckReport).collect()
}

#[pymodule]
fn binpart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("ABSTRACT_TERMS", verify::ABSTRACT_TERMS.to_vec())?;
    m.add("ABSTRACT_PREFIX_BFILE", verify::ABSTRACT_PREFIX_BFILE)?;
    m.add_class::<PyCheckReport>()?;
    m.add_function(wrap_pyfunction!(bprime, m)?)?;
    m.add_function(wrap_pyfunction!(b, m)?)?;
    m.add_function(wrap_pyfunction!(hatb, m)?)?;
    m.add_function(wrap_pyfunction!(stern, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(digit_count, m)?)?;
    m.add_function(wrap_pyfunction!(stern_pair, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_triple, m)?)?;
    m.add_function(wrap_pyfunction!(eval_seq, m)?)?;
    m.add_function(wrap_pyfunction!(gf_counts, m)?)?;
    m.add_function(wrap_pyfunction!(check_main_identity, m)?)?;
    m.add_function(wrap_pyfunction!(check_halving, m)?)?;
    m.add_function(wrap_pyfunction!(replay_proof, m)?)?;
    m.add_function(wrap_pyfunction!(cross_engines, m)?)?;
    m.add_function(wrap_pyfunction!(emit_bfile, m)?)?;
    m.add_function(wrap_pyfunction!(compare_bfile, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
