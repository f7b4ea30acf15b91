//! Python bindings: parse LP^MLN programs, inspect their semantics and run the
//! equivalence checks.

use lpmln_core::cli::emit_all;
use lpmln_core::equiv::{
    check_strong as strong, check_structural as structural, check_structural_all,
    check_weak as weak, randomized_context_falsifier, StructuralMethod, Verdict, Witness,
};
use lpmln_core::formula::{parse_program, Interpretation, Signature, WeightedProgram};
use lpmln_core::ht::soft_ht_models;
use lpmln_core::lpmln::{distribution, is_soft_stable_model, soft_stable_models, weight};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: lpmln_core::Error) -> PyErr {
    match e {
        lpmln_core::Error::Internal(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn names(sig: &Signature, x: Interpretation) -> Vec<String> {
    sig.names(x).into_iter().map(str::to_string).collect()
}

/// A weighted program in the text syntax, e.g. `"2 : a | b.\n1 : <- a & b."`.
#[pyclass(frozen, module = "lpmln")]
struct Program {
    inner: WeightedProgram,
}

impl Program {
    fn interpretation(&self, atoms: Vec<String>) -> PyResult<Interpretation> {
        self.inner.signature().interpretation(&atoms).map_err(to_py)
    }
}

#[pymethods]
impl Program {
    #[new]
    fn new(text: &str) -> PyResult<Program> {
        Ok(Program { inner: parse_program(text).map_err(to_py)? })
    }

    /// Atoms in signature order.
    #[getter]
    fn atoms(&self) -> Vec<String> {
        self.inner.signature().atoms().iter().map(|a| a.to_string()).collect()
    }

    /// `(weight, formula)` pairs as text.
    #[getter]
    fn rules(&self) -> Vec<(String, String)> {
        self.inner
            .rules()
            .iter()
            .map(|r| (r.weight.to_string(), r.formula.to_string()))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Program({:?})", self.inner.to_string())
    }

    fn soft_stable_models(&self) -> Vec<Vec<String>> {
        let sig = self.inner.signature();
        soft_stable_models(&self.inner).into_iter().map(|x| names(sig, x)).collect()
    }

    fn is_soft_stable_model(&self, atoms: Vec<String>) -> PyResult<bool> {
        Ok(is_soft_stable_model(&self.inner, self.interpretation(atoms)?))
    }

    /// Exact unnormalized weight, e.g. `"e^3"`, `"e^(2 + alpha)"` or `"0"`.
    fn weight(&self, atoms: Vec<String>) -> PyResult<String> {
        Ok(weight(&self.inner, self.interpretation(atoms)?).to_string())
    }

    /// `(atoms, exact, float)` for every soft stable model.
    fn probabilities(&self) -> PyResult<Vec<(Vec<String>, String, f64)>> {
        let sig = self.inner.signature();
        let d = distribution(&self.inner).map_err(to_py)?;
        let z = d.partition_string();
        Ok(d.support()
            .keys()
            .map(|&x| {
                let p = d.probability(x);
                let exact = match p.numerator {
                    None => "0".to_string(),
                    Some(_) => p.to_string().replace('Z', &format!("({z})")),
                };
                (names(sig, x), exact, p.to_f64())
            })
            .collect())
    }

    /// Soft HT models as `(here, there)` pairs.
    fn ht_models(&self) -> Vec<(Vec<String>, Vec<String>)> {
        let sig = self.inner.signature();
        soft_ht_models(&self.inner)
            .into_iter()
            .map(|i| (names(sig, i.here()), names(sig, i.there())))
            .collect()
    }
}

fn verdict_dict<'py>(
    py: Python<'py>,
    f: &Program,
    g: &Program,
    v: &Verdict,
) -> PyResult<Bound<'py, PyDict>> {
    let sig = f.inner.signature().union(g.inner.signature()).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("kind", v.kind.to_string())?;
    d.set_item("result", v.result)?;
    d.set_item("summary", v.describe(&sig))?;
    match &v.c_expression {
        Some(c) => {
            let (c1, c2) = c.penalty_pair();
            d.set_item("c", c.total.to_string())?;
            d.set_item("c_penalty", (c1.to_string(), c2))?;
        }
        None => {
            d.set_item("c", py.None())?;
            d.set_item("c_penalty", py.None())?;
        }
    }
    let witness = match &v.witness {
        None => None,
        Some(w) => {
            let wd = PyDict::new(py);
            wd.set_item("x", names(&sig, w.x()))?;
            match w {
                Witness::WeightMismatch { tw_f, tw_g, .. } => {
                    wd.set_item("type", "weight_mismatch")?;
                    wd.set_item("tw_f", tw_f.to_string())?;
                    wd.set_item("tw_g", tw_g.to_string())?;
                }
                Witness::ReductInequivalence { y, .. } => {
                    wd.set_item("type", "reduct_inequivalence")?;
                    wd.set_item("y", names(&sig, *y))?;
                }
                Witness::DistributionMismatch { .. } => {
                    wd.set_item("type", "distribution_mismatch")?;
                }
            }
            Some(wd)
        }
    };
    d.set_item("witness", witness)?;
    Ok(d)
}

fn method(name: &str) -> PyResult<Option<StructuralMethod>> {
    Ok(Some(match name {
        "reduct" => StructuralMethod::Reduct,
        "choice" => StructuralMethod::ChoiceReduct,
        "ht" => StructuralMethod::SoftHt,
        "delta-x" => StructuralMethod::DeltaPerX,
        "delta-choice" => StructuralMethod::DeltaChoice,
        "all" => return Ok(None),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }))
}

/// Same probability distribution over the union signature.
#[pyfunction]
fn check_weak<'py>(py: Python<'py>, f: &Program, g: &Program) -> PyResult<Bound<'py, PyDict>> {
    let v = weak(&f.inner, &g.inner).map_err(to_py)?;
    verdict_dict(py, f, g, &v)
}

/// Equivalence of the soft structure, ignoring weights.
#[pyfunction]
#[pyo3(signature = (f, g, method = "all"))]
fn check_structural<'py>(
    py: Python<'py>,
    f: &Program,
    g: &Program,
    method: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let v = match self::method(method)? {
        Some(m) => structural(&f.inner, &g.inner, m),
        None => check_structural_all(&f.inner, &g.inner),
    }
    .map_err(to_py)?;
    verdict_dict(py, f, g, &v)
}

/// Strong equivalence; `trials > 0` also samples random contexts, and a
/// separating context is reported under `"falsifier"`.
#[pyfunction]
#[pyo3(signature = (f, g, trials = 0, seed = 0))]
fn check_strong<'py>(
    py: Python<'py>,
    f: &Program,
    g: &Program,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let v = strong(&f.inner, &g.inner).map_err(to_py)?;
    let d = verdict_dict(py, f, g, &v)?;
    if trials > 0 {
        let found = randomized_context_falsifier(&f.inner, &g.inner, trials, seed).map_err(to_py)?;
        if v.result && found.is_some() {
            return Err(PyRuntimeError::new_err("a sampled context contradicts the strong verdict"));
        }
        let sig = f.inner.signature().union(g.inner.signature()).map_err(to_py)?;
        d.set_item("falsifier", found.map(|(h, x)| (h.to_string(), names(&sig, x))))?;
    }
    Ok(d)
}

/// The five ASP documents keyed by suffix: P, Pstar_soft, Pstar_hard, P1ss, P2ss.
#[pyfunction]
fn emit_asp<'py>(py: Python<'py>, f: &Program, g: &Program) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (suffix, doc) in emit_all(&f.inner, &g.inner).map_err(to_py)? {
        d.set_item(suffix, doc.to_string())?;
    }
    Ok(d)
}

#[pymodule]
fn lpmln(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Program>()?;
    m.add_function(wrap_pyfunction!(check_weak, m)?)?;
    m.add_function(wrap_pyfunction!(check_structural, m)?)?;
    m.add_function(wrap_pyfunction!(check_strong, m)?)?;
    m.add_function(wrap_pyfunction!(emit_asp, m)?)?;
    Ok(())
}
