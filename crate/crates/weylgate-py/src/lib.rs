//! Python bindings for the weylgate toolkit.
//!
//! Exposes the dense matrix type, the Clifford/Weyl generator families,
//! Lie-closure universality analysis, unitary compilation, and the
//! processor simulator. Build with `cargo build -p weylgate-py` and import
//! the produced cdylib as `weylgate_py` (see python/smoke_test.py).

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use weylgate::clifford::{
    clifford_generators, dirac_gammas, jordan_wigner, locality, pauli, square_root_identity_check,
    two_gate_universal_set, PauliAxis,
};
use weylgate::closure::{lie_closure, ClosureResult, GeneratorSet, UniversalityMode};
use weylgate::matrix::{
    anticommutator, commutator, distance_up_to_phase, frobenius_inner, matrix_exponential,
    tensor_product, ComplexMatrix, ComplexVector,
};
use weylgate::processor::{
    controlled_unitary, flatten, parse_program, superposition_malfunction, GateTable,
    ProcessorProgram,
};
use weylgate::synthesis::{compile_unitary, evaluate_sequence, GateSequence};
use weylgate::weyl::{
    dth_root_identity_check, hermitian_generator_set, pairwise_products, qudit_generators,
    weyl_pair,
};

fn value_err(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// Dense complex square matrix.
#[pyclass(name = "Matrix")]
#[derive(Clone)]
struct PyMatrix {
    inner: ComplexMatrix,
}

#[pymethods]
impl PyMatrix {
    /// Build from a row-major nested list of complex entries.
    #[new]
    fn new(rows: Vec<Vec<C64>>) -> PyResult<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(PyValueError::new_err("matrix must be square"));
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(Self {
            inner: ComplexMatrix::new(dim, entries).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn identity(dim: usize) -> PyResult<Self> {
        if dim == 0 {
            return Err(PyValueError::new_err("dimension must be at least 1"));
        }
        Ok(Self {
            inner: ComplexMatrix::identity(dim),
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn entry(&self, row: usize, col: usize) -> PyResult<C64> {
        if row >= self.inner.dim() || col >= self.inner.dim() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.get(row, col))
    }

    /// Row-major nested list of entries.
    fn rows(&self) -> Vec<Vec<C64>> {
        let n = self.inner.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.inner.get(i, j)).collect())
            .collect()
    }

    fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    fn trace(&self) -> C64 {
        self.inner.trace()
    }

    fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    fn scaled(&self, factor: C64) -> Self {
        Self {
            inner: self.inner.scaled(factor),
        }
    }

    fn __matmul__(&self, other: &Self) -> PyResult<Self> {
        if self.inner.dim() != other.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(Self {
            inner: &self.inner * &other.inner,
        })
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        if self.inner.dim() != other.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(Self {
            inner: &self.inner + &other.inner,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        if self.inner.dim() != other.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(Self {
            inner: &self.inner - &other.inner,
        })
    }

    fn tensor(&self, other: &Self) -> PyResult<Self> {
        Ok(Self {
            inner: tensor_product(&self.inner, &other.inner).map_err(value_err)?,
        })
    }

    fn commutator(&self, other: &Self) -> PyResult<Self> {
        Ok(Self {
            inner: commutator(&self.inner, &other.inner).map_err(value_err)?,
        })
    }

    fn anticommutator(&self, other: &Self) -> PyResult<Self> {
        Ok(Self {
            inner: anticommutator(&self.inner, &other.inner).map_err(value_err)?,
        })
    }

    fn frobenius_inner(&self, other: &Self) -> PyResult<C64> {
        frobenius_inner(&self.inner, &other.inner).map_err(value_err)
    }

    /// Matrix exponential.
    fn expm(&self) -> Self {
        Self {
            inner: matrix_exponential(&self.inner),
        }
    }

    fn distance_up_to_phase(&self, other: &Self) -> PyResult<f64> {
        distance_up_to_phase(&self.inner, &other.inner).map_err(value_err)
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn is_unitary(&self, tol: f64) -> bool {
        self.inner.is_unitary(tol)
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn is_hermitian(&self, tol: f64) -> bool {
        self.inner.is_hermitian(tol)
    }

    #[pyo3(signature = (tol = 1e-10))]
    fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.inner.is_anti_hermitian(tol)
    }

    fn locality(&self, factor_dims: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(locality(&self.inner, &factor_dims)
            .map_err(value_err)?
            .into_iter()
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Matrix(dim={})", self.inner.dim())
    }
}

/// Labelled anti-Hermitian generator set.
#[pyclass(name = "Generators")]
struct PyGenerators {
    inner: GeneratorSet,
}

#[pymethods]
impl PyGenerators {
    /// The 2n anti-Hermitian Clifford generators e_k.
    #[staticmethod]
    fn clifford(n: usize) -> PyResult<Self> {
        let gens = clifford_generators(n).map_err(value_err)?;
        Ok(Self {
            inner: gens.generator_set().map_err(value_err)?,
        })
    }

    /// e_0, consecutive products, and the third-order element.
    #[staticmethod]
    fn clifford_two_gate(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: two_gate_universal_set(n).map_err(value_err)?,
        })
    }

    /// t± combinations of the qudit generators.
    #[staticmethod]
    fn weyl_tpm(d: usize, n: usize) -> PyResult<Self> {
        let gens = qudit_generators(d, n).map_err(value_err)?;
        Ok(Self {
            inner: hermitian_generator_set(&gens).map_err(value_err)?,
        })
    }

    /// ± combinations of t_0 and the consecutive products t_k t_{k+1}.
    #[staticmethod]
    fn weyl_two_gate(d: usize, n: usize) -> PyResult<Self> {
        let gens = qudit_generators(d, n).map_err(value_err)?;
        Ok(Self {
            inner: pairwise_products(&gens).map_err(value_err)?,
        })
    }

    /// Build from explicit labels and anti-Hermitian matrices.
    #[staticmethod]
    fn from_matrices(labels: Vec<String>, matrices: Vec<PyMatrix>) -> PyResult<Self> {
        if labels.len() != matrices.len() {
            return Err(PyValueError::new_err("one label per matrix"));
        }
        let elements = matrices.into_iter().map(|m| m.inner).collect();
        Ok(Self {
            inner: GeneratorSet::new(labels, elements).map_err(value_err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn matrices(&self) -> Vec<PyMatrix> {
        self.inner
            .elements()
            .iter()
            .map(|m| PyMatrix { inner: m.clone() })
            .collect()
    }

    fn matrix(&self, label: &str) -> PyResult<PyMatrix> {
        self.inner
            .element_by_label(label)
            .map(|m| PyMatrix { inner: m.clone() })
            .ok_or_else(|| PyValueError::new_err(format!("unknown label `{label}`")))
    }

    fn locality(&self, index: usize) -> Option<Vec<usize>> {
        if index >= self.inner.len() {
            return None;
        }
        self.inner
            .locality(index)
            .map(|s| s.iter().copied().collect())
    }

    fn appended(&self, label: &str, matrix: &PyMatrix) -> PyResult<Self> {
        Ok(Self {
            inner: self
                .inner
                .appended(label, matrix.inner.clone())
                .map_err(value_err)?,
        })
    }

    /// Close the set under commutators.
    #[pyo3(signature = (residual_tol = 1e-9))]
    fn lie_closure(&self, residual_tol: f64) -> PyResult<PyClosure> {
        let result = lie_closure(&self.inner, residual_tol, None).map_err(value_err)?;
        Ok(PyClosure { inner: result })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Generators(dim={}, labels={:?})",
            self.inner.dim(),
            self.inner.labels()
        )
    }
}

/// Lie closure of a generator set.
#[pyclass(name = "Closure")]
struct PyClosure {
    inner: ClosureResult,
}

#[pymethods]
impl PyClosure {
    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    fn certificates(&self) -> Vec<String> {
        self.inner.certificates()
    }

    fn basis(&self) -> Vec<PyMatrix> {
        self.inner
            .basis()
            .iter()
            .map(|m| PyMatrix { inner: m.clone() })
            .collect()
    }

    /// Universality at the su(N) target ("projective") or u(N) ("full").
    #[pyo3(signature = (mode = "projective"))]
    fn is_universal(&self, mode: &str) -> PyResult<bool> {
        let mode = match mode {
            "projective" => UniversalityMode::Projective,
            "full" => UniversalityMode::Full,
            other => {
                return Err(PyValueError::new_err(format!(
                    "mode must be `projective` or `full`, got `{other}`"
                )))
            }
        };
        Ok(self.inner.dimension() >= mode.target(self.inner.matrix_dim()))
    }

    /// Coefficients of an anti-Hermitian matrix over the closure basis and
    /// the residual norm outside the span.
    fn express(&self, h: &PyMatrix) -> PyResult<(Vec<f64>, f64)> {
        let exp = self.inner.express(&h.inner).map_err(value_err)?;
        Ok((exp.coefficients, exp.residual))
    }

    fn __repr__(&self) -> String {
        format!(
            "Closure(dimension={}, depth={})",
            self.inner.dimension(),
            self.inner.depth()
        )
    }
}

#[pyfunction(name = "pauli")]
fn py_pauli(axis: &str) -> PyResult<PyMatrix> {
    let axis = match axis {
        "x" | "X" => PauliAxis::X,
        "y" | "Y" => PauliAxis::Y,
        "z" | "Z" => PauliAxis::Z,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown Pauli axis `{other}`"
            )))
        }
    };
    Ok(PyMatrix { inner: pauli(axis) })
}

#[pyfunction(name = "dirac_gammas")]
fn py_dirac_gammas() -> Vec<PyMatrix> {
    dirac_gammas()
        .into_iter()
        .map(|m| PyMatrix { inner: m })
        .collect()
}

/// The d-dimensional Weyl pair (shift, clock).
#[pyfunction(name = "weyl_pair")]
fn py_weyl_pair(d: usize) -> PyResult<(PyMatrix, PyMatrix)> {
    let pair = weyl_pair(d).map_err(value_err)?;
    Ok((
        PyMatrix {
            inner: pair.shift().clone(),
        },
        PyMatrix {
            inner: pair.clock().clone(),
        },
    ))
}

/// Labelled raw qudit generators t_k (unitary, not anti-Hermitian).
#[pyfunction(name = "qudit_generators")]
fn py_qudit_generators(d: usize, n: usize) -> PyResult<Vec<(String, PyMatrix)>> {
    let gens = qudit_generators(d, n).map_err(value_err)?;
    Ok(gens
        .labels()
        .iter()
        .cloned()
        .zip(
            gens.generators()
                .iter()
                .map(|m| PyMatrix { inner: m.clone() }),
        )
        .collect())
}

/// Jordan-Wigner annihilation and creation operators as two parallel lists.
#[pyfunction(name = "jordan_wigner")]
fn py_jordan_wigner(n: usize) -> PyResult<(Vec<PyMatrix>, Vec<PyMatrix>)> {
    let ops = jordan_wigner(n).map_err(value_err)?;
    let a = ops
        .annihilation()
        .iter()
        .map(|m| PyMatrix { inner: m.clone() })
        .collect();
    let a_dag = ops
        .creation()
        .iter()
        .map(|m| PyMatrix { inner: m.clone() })
        .collect();
    Ok((a, a_dag))
}

/// ||(Σ c_k ê_k)² - Σ c_k²|| over the Hermitian Clifford generators.
#[pyfunction(name = "square_root_identity_check")]
fn py_square_root_identity(coeffs: Vec<C64>, n: usize) -> PyResult<f64> {
    let gens = clifford_generators(n).map_err(value_err)?;
    square_root_identity_check(&coeffs, &gens).map_err(value_err)
}

/// ||(Σ c_k t_k)^d - Σ c_k^d|| over the qudit generators.
#[pyfunction(name = "dth_root_identity_check")]
fn py_dth_root_identity(coeffs: Vec<C64>, d: usize, n: usize) -> PyResult<f64> {
    let gens = qudit_generators(d, n).map_err(value_err)?;
    dth_root_identity_check(&coeffs, &gens).map_err(value_err)
}

/// Multiply out a [(label, tau), ...] gate sequence.
#[pyfunction(name = "evaluate_sequence")]
fn py_evaluate_sequence(steps: Vec<(String, f64)>, gens: &PyGenerators) -> PyResult<PyMatrix> {
    let mut seq = GateSequence::new(gens.inner.dim());
    for (label, tau) in &steps {
        seq.push(label, *tau).map_err(value_err)?;
    }
    Ok(PyMatrix {
        inner: evaluate_sequence(&seq, &gens.inner).map_err(value_err)?,
    })
}

/// Compile a unitary target into a gate sequence; returns a dict-like report.
#[pyfunction(name = "compile_unitary")]
#[pyo3(signature = (target, gens, epsilon = 0.1, max_steps = 1_000_000))]
fn py_compile_unitary(
    py: Python<'_>,
    target: &PyMatrix,
    gens: &PyGenerators,
    epsilon: f64,
    max_steps: usize,
) -> PyResult<PyObject> {
    let closure = lie_closure(&gens.inner, 1e-9, None).map_err(value_err)?;
    let report = compile_unitary(&target.inner, &gens.inner, &closure, epsilon, max_steps)
        .map_err(value_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("sequence", report.sequence.steps().to_vec())?;
    dict.set_item("achieved_distance", report.achieved_distance)?;
    dict.set_item("target_distance", report.target_distance)?;
    dict.set_item("trotter_steps", report.trotter_steps)?;
    dict.set_item("length", report.length)?;
    dict.set_item("converged", report.converged)?;
    Ok(dict.into())
}

/// Parsed processor program.
#[pyclass(name = "Program")]
struct PyProgram {
    inner: ProcessorProgram,
}

#[pymethods]
impl PyProgram {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_program(text).map_err(value_err)?,
        })
    }

    fn canonical(&self) -> String {
        self.inner.canonical()
    }

    fn flattened_len(&self) -> PyResult<u64> {
        self.inner.flattened_len().map_err(value_err)
    }

    fn flatten(&self) -> PyResult<Vec<String>> {
        flatten(&self.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Program({:?})", self.inner.canonical())
    }
}

fn build_table(table: BTreeMap<String, PyMatrix>) -> PyResult<GateTable> {
    GateTable::new(table.into_iter().map(|(id, m)| (id, m.inner))).map_err(value_err)
}

/// Run a program against a gate table; returns the final data-bus state.
#[pyfunction(name = "processor_run")]
fn py_processor_run(
    program: &PyProgram,
    table: BTreeMap<String, PyMatrix>,
    data_in: Vec<C64>,
) -> PyResult<Vec<C64>> {
    let table = build_table(table)?;
    let input = ComplexVector::new(data_in).map_err(value_err)?;
    let out = weylgate::processor::run(&program.inner, &table, &input).map_err(value_err)?;
    Ok(out.entries().to_vec())
}

/// Block-diagonal controlled unitary Σ_j |j><j| ⊗ U_j of a gate table.
#[pyfunction(name = "controlled_unitary")]
fn py_controlled_unitary(table: BTreeMap<String, PyMatrix>) -> PyResult<PyMatrix> {
    let table = build_table(table)?;
    Ok(PyMatrix {
        inner: controlled_unitary(&table),
    })
}

/// Program/data entanglement entropy (bits) when two program basis states
/// are superposed; gate ids select states in sorted-id order.
#[pyfunction(name = "superposition_malfunction")]
fn py_superposition_malfunction(
    table: BTreeMap<String, PyMatrix>,
    j: usize,
    k: usize,
    alpha: C64,
    beta: C64,
    data_in: Vec<C64>,
) -> PyResult<f64> {
    let table = build_table(table)?;
    let input = ComplexVector::new(data_in).map_err(value_err)?;
    superposition_malfunction(&table, j, k, alpha, beta, &input).map_err(value_err)
}

#[pymodule]
fn weylgate_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyGenerators>()?;
    m.add_class::<PyClosure>()?;
    m.add_class::<PyProgram>()?;
    m.add_function(wrap_pyfunction!(py_pauli, m)?)?;
    m.add_function(wrap_pyfunction!(py_dirac_gammas, m)?)?;
    m.add_function(wrap_pyfunction!(py_weyl_pair, m)?)?;
    m.add_function(wrap_pyfunction!(py_qudit_generators, m)?)?;
    m.add_function(wrap_pyfunction!(py_jordan_wigner, m)?)?;
    m.add_function(wrap_pyfunction!(py_square_root_identity, m)?)?;
    m.add_function(wrap_pyfunction!(py_dth_root_identity, m)?)?;
    m.add_function(wrap_pyfunction!(py_evaluate_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(py_compile_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(py_processor_run, m)?)?;
    m.add_function(wrap_pyfunction!(py_controlled_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(py_superposition_malfunction, m)?)?;
    Ok(())
}
