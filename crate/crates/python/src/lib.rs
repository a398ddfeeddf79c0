//! Python bindings. Circuits are opaque `Circuit` objects; reports come back
//! as plain dicts.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mcsynth_core::analysis::{precision_audit, scaling_report, Family};
use mcsynth_core::qasm::{from_qasm, to_qasm};
use mcsynth_core::sim::{classical_run, unitary_of, BitString, EquivMode};
use mcsynth_core::synth::{self, SplitPolicy};
use mcsynth_core::verify::{parse_op_spec, CheckMode, TargetSpec, VerifyOptions};
use mcsynth_core::{lower, Circuit, ResourceReport};

create_exception!(mcsynth, McsynthError, PyValueError);

fn err(e: mcsynth_core::Error) -> PyErr {
    McsynthError::new_err(e.to_string())
}

fn policy(split: (u32, u32), base_threshold: usize) -> PyResult<SplitPolicy> {
    SplitPolicy::new(split, base_threshold).map_err(err)
}

fn report_dict<'py>(py: Python<'py>, r: &ResourceReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("depth", r.depth)?;
    d.set_item("size", r.size)?;
    d.set_item("counts", r.counts.clone())?;
    d.set_item("ancilla_clean", r.ancilla_clean)?;
    d.set_item("ancilla_dirty", r.ancilla_dirty)?;
    Ok(d)
}

#[pyclass(name = "Circuit", module = "mcsynth", frozen)]
struct PyCircuit {
    inner: Circuit,
}

fn wrap(c: Result<Circuit, mcsynth_core::Error>) -> PyResult<PyCircuit> {
    c.map(|inner| PyCircuit { inner }).map_err(err)
}

#[pymethods]
impl PyCircuit {
    #[staticmethod]
    fn from_qasm(text: &str) -> PyResult<Self> {
        wrap(from_qasm(text))
    }

    fn to_qasm(&self) -> String {
        to_qasm(&self.inner)
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn level(&self) -> &'static str {
        self.inner.level().as_str()
    }

    /// `(name, role)` for each wire.
    fn qubits(&self) -> Vec<(String, &'static str)> {
        self.inner.qubits().iter().map(|q| (q.name.clone(), q.role.as_str())).collect()
    }

    fn is_classical(&self) -> bool {
        self.inner.is_classical()
    }

    fn inverse(&self) -> Self {
        PyCircuit { inner: self.inner.inverse() }
    }

    fn compose(&self, other: &PyCircuit) -> PyResult<Self> {
        wrap(self.inner.compose(&other.inner))
    }

    /// Rewrites into single-qubit gates and CX.
    fn lower(&self) -> PyResult<Self> {
        wrap(lower::lower_to_basis(&self.inner))
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        report_dict(py, &self.inner.report())
    }

    /// Largest per-gate denominator (`None` with real angles) and the
    /// determinant phase as a multiple of π, written `"p/q"`.
    fn audit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let a = precision_audit(&self.inner);
        let d = PyDict::new(py);
        d.set_item("max_denominator", a.max_denominator.map(|q| q.to_string()))?;
        d.set_item("det_phase", a.total_phase.pi_fraction_string())?;
        Ok(d)
    }

    /// Runs an X-type circuit on a bit list, qubit 0 first.
    fn run_classical(&self, bits: Vec<bool>) -> PyResult<Vec<bool>> {
        if bits.len() != self.inner.width() {
            return Err(PyValueError::new_err(format!("expected {} bits", self.inner.width())));
        }
        let out = classical_run(&self.inner, &BitString::from_bits(&bits)).map_err(err)?;
        Ok(out.to_bits())
    }

    /// Dense unitary as rows of complex numbers; qubit 0 is the low index bit.
    fn unitary(&self) -> PyResult<Vec<Vec<Complex64>>> {
        let u = unitary_of(&self.inner).map_err(err)?;
        Ok(u.row_iter().map(|r| r.iter().copied().collect()).collect())
    }

    fn __eq__(&self, other: &PyCircuit) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(width={}, size={}, depth={}, level='{}')",
            self.inner.width(),
            self.inner.size(),
            self.inner.depth(),
            self.inner.level().as_str()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (n, split=(9, 10), base_threshold=5))]
fn mcx_clean(n: usize, split: (u32, u32), base_threshold: usize) -> PyResult<PyCircuit> {
    wrap(synth::mcx_clean(n, &policy(split, base_threshold)?))
}

#[pyfunction]
#[pyo3(signature = (n, split=(9, 10), base_threshold=5))]
fn mcx_dirty(n: usize, split: (u32, u32), base_threshold: usize) -> PyResult<PyCircuit> {
    wrap(synth::mcx_dirty(n, &policy(split, base_threshold)?))
}

/// `u` is `x`, `h`, `phase:p/q` or `matrix:<8 reals>`.
#[pyfunction]
#[pyo3(signature = (n, u, split=(9, 10), base_threshold=5))]
fn mcu_clean(n: usize, u: &str, split: (u32, u32), base_threshold: usize) -> PyResult<PyCircuit> {
    let op = parse_op_spec(u).map_err(err)?;
    wrap(synth::mcu_clean(n, &op, &policy(split, base_threshold)?))
}

#[pyfunction]
#[pyo3(signature = (n, u, split=(9, 10), base_threshold=5))]
fn mcu_dirty(n: usize, u: &str, split: (u32, u32), base_threshold: usize) -> PyResult<PyCircuit> {
    let op = parse_op_spec(u).map_err(err)?;
    wrap(synth::mcu_dirty(n, &op, &policy(split, base_threshold)?))
}

#[pyfunction]
#[pyo3(signature = (n, split=(9, 10), base_threshold=5))]
fn incrementor(n: usize, split: (u32, u32), base_threshold: usize) -> PyResult<PyCircuit> {
    wrap(synth::incrementor(n, &policy(split, base_threshold)?))
}

#[pyfunction]
fn incrementor_ladder(n: usize) -> PyResult<PyCircuit> {
    wrap(synth::incrementor_ladder(n))
}

#[pyfunction]
#[pyo3(signature = (n, split=(9, 10), base_threshold=5))]
fn mcx_no_ancilla(n: usize, split: (u32, u32), base_threshold: usize) -> PyResult<PyCircuit> {
    wrap(synth::mcx_no_ancilla(n, &policy(split, base_threshold)?))
}

/// Checks `circuit` against `target` (`mcx:N`, `mcu:N:U` or `incr:N`).
#[pyfunction]
#[pyo3(signature = (circuit, target, mode="auto", global_phase=false, tol=1e-9, samples=1000, seed=0))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    circuit: &PyCircuit,
    target: &str,
    mode: &str,
    global_phase: bool,
    tol: f64,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let spec: TargetSpec = target.parse().map_err(err)?;
    let opts = VerifyOptions {
        mode: mode.parse::<CheckMode>().map_err(err)?,
        phase: if global_phase { EquivMode::GlobalPhase } else { EquivMode::Exact },
        tol,
        samples,
        seed,
    };
    let v = py.detach(|| mcsynth_core::verify::verify(&circuit.inner, &spec, &opts)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("equivalent", v.equivalent)?;
    d.set_item("method", format!("{:?}", v.method).to_lowercase())?;
    d.set_item("inputs_checked", v.inputs_checked)?;
    d.set_item("mismatch", v.mismatch.map(|m| (m.input, m.detail)))?;
    Ok(d)
}

/// Resource rows for each `n` in `ns` (ascending), plus the log² depth fit
/// for the incrementor and zero-ancilla families.
#[pyfunction]
#[pyo3(signature = (family, ns, split=(9, 10), base_threshold=5))]
fn scaling<'py>(
    py: Python<'py>,
    family: &str,
    ns: Vec<usize>,
    split: (u32, u32),
    base_threshold: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let family: Family = family.parse().map_err(err)?;
    let policy = policy(split, base_threshold)?;
    let r = py.detach(|| scaling_report(family, &ns, &policy)).map_err(err)?;
    let rows = r
        .rows
        .iter()
        .map(|row| {
            let d = PyDict::new(py);
            d.set_item("n", row.n)?;
            d.set_item("depth_mcx", row.depth_mcx)?;
            d.set_item("depth_basis", row.depth_basis)?;
            d.set_item("size", row.size)?;
            d.set_item("size_basis", row.size_basis)?;
            d.set_item("ancilla_clean", row.ancilla_clean)?;
            d.set_item("ancilla_dirty", row.ancilla_dirty)?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    let out = PyDict::new(py);
    out.set_item("family", family.as_str())?;
    out.set_item("rows", rows)?;
    out.set_item("depth_steps", r.depth_steps.iter().map(|s| (s.n, s.diff)).collect::<Vec<_>>())?;
    match r.fit {
        Some(f) => {
            let fit = PyDict::new(py);
            fit.set_item("a", f.a)?;
            fit.set_item("b", f.b)?;
            fit.set_item("relative_residual", f.relative_residual)?;
            fit.set_item("max_relative_residual", f.max_relative_residual)?;
            out.set_item("fit", fit)?;
        }
        None => out.set_item("fit", py.None())?,
    }
    Ok(out)
}

#[pymodule]
fn mcsynth(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("McsynthError", m.py().get_type::<McsynthError>())?;
    m.add_class::<PyCircuit>()?;
    m.add_function(wrap_pyfunction!(mcx_clean, m)?)?;
    m.add_function(wrap_pyfunction!(mcx_dirty, m)?)?;
    m.add_function(wrap_pyfunction!(mcu_clean, m)?)?;
    m.add_function(wrap_pyfunction!(mcu_dirty, m)?)?;
    m.add_function(wrap_pyfunction!(incrementor, m)?)?;
    m.add_function(wrap_pyfunction!(incrementor_ladder, m)?)?;
    m.add_function(wrap_pyfunction!(mcx_no_ancilla, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(scaling, m)?)?;
    Ok(())
}
