//! Python bindings. Bit sequences cross the boundary as strings of `0`/`1`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

use mlsync_core::decoder::DecoderLimits;
use mlsync_core::sim::{self, SetupSpec};
use mlsync_core::{BitSeq, LinearCode, VtSyndrome};

fn err(e: mlsync_core::Error) -> PyErr {
    let mut text = e.to_string();
    let mut source = std::error::Error::source(&e);
    while let Some(s) = source {
        text = format!("{text}: {s}");
        source = s.source();
    }
    PyValueError::new_err(text)
}

fn bits(s: &str) -> PyResult<BitSeq> {
    s.parse().map_err(err)
}

#[pyclass(name = "CodeParams", module = "mlsync", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCodeParams(mlsync_core::CodeParams);

#[pymethods]
impl PyCodeParams {
    #[staticmethod]
    fn reed_solomon(n_c: usize, l1: usize, l2: usize, parity_symbols: usize) -> PyResult<Self> {
        mlsync_core::CodeParams::reed_solomon(n_c, l1, l2, parity_symbols)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n_c, l1, l2, checks, seed=0))]
    fn random_binary(n_c: usize, l1: usize, l2: usize, checks: usize, seed: u64) -> PyResult<Self> {
        mlsync_core::CodeParams::random_binary(n_c, l1, l2, checks, seed)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn n_c(&self) -> usize {
        self.0.n_c()
    }

    #[getter]
    fn l1(&self) -> usize {
        self.0.l1()
    }

    #[getter]
    fn l2(&self) -> usize {
        self.0.l2()
    }

    #[getter]
    fn code(&self) -> &'static str {
        self.0.code().short_name()
    }

    #[getter]
    fn parity_bits(&self) -> usize {
        self.0.parity_bits()
    }

    #[getter]
    fn message_bits(&self) -> usize {
        self.0.message_bits()
    }

    #[getter]
    fn rate(&self) -> f64 {
        self.0.sync_rate()
    }

    fn __repr__(&self) -> String {
        let p = &self.0;
        match p.code() {
            LinearCode::ReedSolomon { parity_symbols } => format!(
                "CodeParams.reed_solomon({}, {}, {}, {parity_symbols})",
                p.n_c(),
                p.l1(),
                p.l2()
            ),
            LinearCode::RandomBinary { checks, seed } => format!(
                "CodeParams.random_binary({}, {}, {}, {checks}, {seed})",
                p.n_c(),
                p.l1(),
                p.l2()
            ),
        }
    }
}

#[pyclass(name = "SyncMessage", module = "mlsync", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySyncMessage(mlsync_core::SyncMessage);

#[pymethods]
impl PySyncMessage {
    #[getter]
    fn m1(&self) -> Vec<usize> {
        self.0.m1.clone()
    }

    #[getter]
    fn m2(&self) -> Vec<usize> {
        self.0.m2.clone()
    }

    #[getter]
    fn m3(&self) -> Vec<u16> {
        self.0.m3.clone()
    }

    /// Serialized message file contents.
    fn to_bytes<'py>(&self, py: Python<'py>, params: &PyCodeParams) -> PyResult<Bound<'py, PyBytes>> {
        let bytes = mlsync_core::serialize_message(&self.0, &params.0).map_err(err)?;
        Ok(PyBytes::new(py, &bytes))
    }

    /// Parses a message file, returning `(message, params)`.
    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<(Self, PyCodeParams)> {
        let (msg, params) = mlsync_core::parse_message(data).map_err(err)?;
        Ok((Self(msg), PyCodeParams(params)))
    }

    fn __repr__(&self) -> String {
        format!("SyncMessage(m1={:?}, m2={:?}, m3={:?})", self.0.m1, self.0.m2, self.0.m3)
    }
}

#[pyclass(name = "DecodeReport", module = "mlsync", frozen, get_all)]
struct PyDecodeReport {
    final_list: Vec<String>,
    k: usize,
    r1: usize,
    r3: usize,
    r4: usize,
    r5: usize,
    r6: usize,
    truncated: bool,
}

#[pymethods]
impl PyDecodeReport {
    fn __repr__(&self) -> String {
        format!(
            "DecodeReport(r1={}, r3={}, r4={}, r5={}, r6={}, truncated={})",
            self.r1,
            self.r3,
            self.r4,
            self.r5,
            self.r6,
            if self.truncated { "True" } else { "False" }
        )
    }
}

#[pyfunction]
fn vt_syndrome(x: &str) -> PyResult<usize> {
    Ok(mlsync_core::vt_syndrome(&bits(x)?).value)
}

/// Restores one deleted bit. Returns the restored string and the inclusive
/// range of equivalent insertion positions.
#[pyfunction]
fn vt_insert_decode(received: &str, target: usize) -> PyResult<(String, (usize, usize))> {
    let y = bits(received)?;
    let target = VtSyndrome::new(target, y.len() + 2).map_err(err)?;
    let r = mlsync_core::vt_insert_decode(&y, target).map_err(err)?;
    Ok((r.restored.to_string(), (*r.positions.start(), *r.positions.end())))
}

#[pyfunction]
fn encode(x: &str, params: &PyCodeParams) -> PyResult<PySyncMessage> {
    mlsync_core::encode(&bits(x)?, &params.0).map(PySyncMessage).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (y, msg, params, max_tree_nodes=1_000_000, max_candidates=100_000))]
fn decode(
    py: Python<'_>,
    y: &str,
    msg: &PySyncMessage,
    params: &PyCodeParams,
    max_tree_nodes: usize,
    max_candidates: usize,
) -> PyResult<PyDecodeReport> {
    let y = bits(y)?;
    let limits = DecoderLimits {
        max_tree_nodes,
        max_candidates,
        ..DecoderLimits::default()
    };
    let report = py
        .detach(|| mlsync_core::decode(&y, &msg.0, &params.0, limits))
        .map_err(err)?;
    Ok(PyDecodeReport {
        final_list: report.final_list.iter().map(BitSeq::to_string).collect(),
        k: report.k,
        r1: report.r1,
        r3: report.r3,
        r4: report.r4,
        r5: report.r5,
        r6: report.r6,
        truncated: report.truncated,
    })
}

/// Every length-`n` supersequence of `y` that satisfies the message.
#[pyfunction]
fn brute_force_decode(y: &str, msg: &PySyncMessage, params: &PyCodeParams) -> PyResult<Vec<String>> {
    let set = mlsync_core::oracle::brute_force_decode(&bits(y)?, &msg.0, &params.0).map_err(err)?;
    Ok(set.iter().map(BitSeq::to_string).collect())
}

/// The built-in setups as `(name, params, k)` tuples.
#[pyfunction]
fn builtin_setups() -> Vec<(String, PyCodeParams, usize)> {
    sim::builtin_setups()
        .into_iter()
        .map(|s| (s.name, PyCodeParams(s.params), s.k))
        .collect()
}

/// Runs random trials and returns the aggregate statistics as a dict.
#[pyfunction]
#[pyo3(signature = (params, k, trials, seed=1))]
fn run_trials<'py>(
    py: Python<'py>,
    params: &PyCodeParams,
    k: usize,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let setup = SetupSpec::new("custom", params.0, k).map_err(err)?;
    let s = py
        .detach(|| sim::run_trials(&setup, trials, seed, DecoderLimits::default()))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("trials", s.trials)?;
    d.set_item("seed", s.seed)?;
    d.set_item("rate", s.rate)?;
    d.set_item("mean_r1", s.mean_r1)?;
    d.set_item("mean_r3", s.mean_r3)?;
    d.set_item("mean_r4", s.mean_r4)?;
    d.set_item("mean_r5", s.mean_r5)?;
    d.set_item("mean_r6", s.mean_r6)?;
    d.set_item("max_r6", s.max_r6)?;
    d.set_item("count_r6_gt_1", s.count_r6_gt_1)?;
    d.set_item("inclusion_failures", s.inclusion_failures)?;
    d.set_item("truncated_trials", s.truncated_trials)?;
    d.set_item("wall_time_secs", s.wall_time_secs)?;
    Ok(d)
}

#[pymodule]
fn mlsync(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCodeParams>()?;
    m.add_class::<PySyncMessage>()?;
    m.add_class::<PyDecodeReport>()?;
    m.add_function(wrap_pyfunction!(vt_syndrome, m)?)?;
    m.add_function(wrap_pyfunction!(vt_insert_decode, m)?)?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_decode, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_setups, m)?)?;
    m.add_function(wrap_pyfunction!(run_trials, m)?)?;
    Ok(())
}
