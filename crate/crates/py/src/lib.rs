//! Python bindings. Objects are immutable wrappers around the core types;
//! every object converts to and from the JSON file format.

use std::sync::Arc;

use mcq_core::affine_extension::{self as affine, EquivalenceWitness, SixTuple};
use mcq_core::alexander_pairs::{self as pairs, AlexanderPair, AugmentedPair};
use mcq_core::finite_algebra::{self as alg, FiniteGroup, FiniteRing, LeftModule};
use mcq_core::format::{self, Document};
use mcq_core::mcq::{self as mcqs, FiniteMCQ};
use mcq_core::quandle::{self, FiniteQuandle};
use mcq_core::setting::Setting;
use mcq_core::{Error, Verdict};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(mcq, McqError, PyException);
create_exception!(mcq, ConditionError, McqError);
create_exception!(mcq, ResourceLimitError, McqError);
create_exception!(mcq, WitnessError, McqError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Axiom(_) | Error::Precondition(_) => ConditionError::new_err(e.to_string()),
        Error::ResourceLimit { .. } => ResourceLimitError::new_err(e.to_string()),
        Error::InvalidWitness(_) => WitnessError::new_err(e.to_string()),
        Error::Malformed(_) | Error::Json(_) | Error::InvalidArgument(_) => PyValueError::new_err(e.to_string()),
        Error::Io(_) | Error::Inconsistency(_) => McqError::new_err(e.to_string()),
    }
}

/// `None` on a pass, otherwise `(condition, witness)`.
type PyVerdict = Option<(String, Vec<usize>)>;

fn verdict(v: Verdict) -> PyVerdict {
    v.violation().map(|v| (v.condition.clone(), v.witness.clone()))
}

fn parse(text: &str, kind: &str) -> PyResult<Document> {
    format::parse_kind(text, kind).map_err(err)
}

#[pyclass(frozen, skip_from_py_object, name = "Group", module = "mcq")]
#[derive(Clone)]
pub struct PyGroup(pub FiniteGroup);

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn from_table(table: Vec<Vec<usize>>, identity: usize) -> PyResult<Self> {
        FiniteGroup::from_table(&table, identity).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, "group")? {
            Document::Group(d) => d.load().map(Self).map_err(err),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Group((&self.0).into()))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.0.identity()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.0.inv(a)
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.0.table()
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.0.order())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Ring", module = "mcq")]
#[derive(Clone)]
pub struct PyRing(pub FiniteRing);

#[pymethods]
impl PyRing {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, "ring")? {
            Document::Ring(d) => d.load().map(Self).map_err(err),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Ring((&self.0).into()))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.0.add(a, b)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul(a, b)
    }

    fn is_unit(&self, a: usize) -> bool {
        self.0.is_unit(a)
    }

    fn __repr__(&self) -> String {
        format!("Ring(order={})", self.0.order())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Module", module = "mcq")]
#[derive(Clone)]
pub struct PyLeftModule(pub FiniteRing, pub LeftModule);

#[pymethods]
impl PyLeftModule {
    #[getter]
    fn order(&self) -> usize {
        self.1.order()
    }

    fn act(&self, r: usize, u: usize) -> usize {
        self.1.act(r, u)
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Module(format::ModuleFile {
            ring: (&self.0).into(),
            module: (&self.1).into(),
        }))
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Quandle", module = "mcq")]
#[derive(Clone)]
pub struct PyQuandle(pub FiniteQuandle);

#[pymethods]
impl PyQuandle {
    #[staticmethod]
    fn from_table(table: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteQuandle::from_table(&table).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, "quandle")? {
            Document::Quandle(d) => d.load().map(Self).map_err(err),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Quandle((&self.0).into()))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.0.op(a, b)
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.0.table()
    }

    fn quandle_type(&self) -> usize {
        self.0.quandle_type()
    }

    fn __repr__(&self) -> String {
        format!("Quandle(order={})", self.0.order())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Mcq", module = "mcq")]
#[derive(Clone)]
pub struct PyMcq(pub FiniteMCQ);

#[pymethods]
impl PyMcq {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, "mcq")? {
            Document::Mcq(d) => d.load().map(Self).map_err(err),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Mcq((&self.0).into()))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn num_components(&self) -> usize {
        self.0.num_components()
    }

    fn component_of(&self, x: usize) -> usize {
        self.0.component_of(x)
    }

    fn tri(&self, x: usize, y: usize) -> usize {
        self.0.tri(x, y)
    }

    /// Product of two elements of one component.
    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        if !self.0.same_component(a, b) {
            return Err(PyValueError::new_err(format!("{a} and {b} lie in different components")));
        }
        Ok(self.0.mul(a, b))
    }

    fn inv(&self, x: usize) -> usize {
        self.0.inv(x)
    }

    fn triangle_table(&self) -> Vec<Vec<usize>> {
        self.0.triangle_table()
    }

    fn as_quandle(&self) -> PyQuandle {
        PyQuandle(self.0.as_quandle())
    }

    fn __repr__(&self) -> String {
        format!("Mcq(order={}, components={})", self.0.order(), self.0.num_components())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Pair", module = "mcq")]
#[derive(Clone)]
pub struct PyPair(pub AlexanderPair);

#[pymethods]
impl PyPair {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, "pair")? {
            Document::Pair(d) => d.load().map(Self).map_err(err),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Pair((&self.0).into()))
    }

    fn f1(&self) -> Vec<Vec<usize>> {
        self.0.f1().rows()
    }

    fn f2(&self) -> Vec<Vec<usize>> {
        self.0.f2().rows()
    }

    fn verify(&self) -> PyVerdict {
        verdict(pairs::verify_pair(&self.0))
    }

    /// The extension with trivial cocycle.
    fn extend(&self) -> PyResult<PyMcq> {
        pairs::build_extension_augmented(&self.0.with_trivial_cocycle()).map(|e| PyMcq(e.mcq)).map_err(err)
    }

    fn cocycles(&self, budget: u64) -> PyResult<Vec<PyCocycle>> {
        Ok(pairs::enumerate_cocycles(&self.0, budget).map_err(err)?.into_iter().map(PyCocycle).collect())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Cocycle", module = "mcq")]
#[derive(Clone)]
pub struct PyCocycle(pub AugmentedPair);

#[pymethods]
impl PyCocycle {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, "cocycle")? {
            Document::Cocycle(d) => d.load().map(Self).map_err(err),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Cocycle((&self.0).into()))
    }

    fn verify(&self) -> PyVerdict {
        verdict(pairs::pair_is_augmented_alexander(&self.0))
    }

    fn extend(&self) -> PyResult<PyMcq> {
        pairs::build_extension_augmented(&self.0).map(|e| PyMcq(e.mcq)).map_err(err)
    }

    fn as_tuple(&self) -> PyResult<PyTuple> {
        affine::embed_pair_as_tuple(&self.0).map(PyTuple).map_err(err)
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Tuple", module = "mcq")]
#[derive(Clone)]
pub struct PyTuple(pub SixTuple);

fn setting(x: &PyMcq, r: &PyRing, module: Option<&PyLeftModule>) -> PyResult<Arc<Setting>> {
    match module {
        None => Ok(Setting::regular(x.0.clone(), r.0.clone())),
        Some(m) => Setting::new(x.0.clone(), r.0.clone(), m.1.clone()).map_err(err),
    }
}

#[pymethods]
impl PyTuple {
    #[staticmethod]
    #[pyo3(signature = (mcq, ring, module = None))]
    fn trivial(mcq: &PyMcq, ring: &PyRing, module: Option<&PyLeftModule>) -> PyResult<Self> {
        Ok(Self(SixTuple::trivial(setting(mcq, ring, module)?)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match parse(text, "tuple")? {
            Document::Tuple(d) => d.load().map(Self).map_err(err),
            _ => unreachable!(),
        }
    }

    fn to_json(&self) -> String {
        format::to_json(&Document::Tuple((&self.0).into()))
    }

    fn verify(&self) -> PyVerdict {
        verdict(affine::verify_six_tuple(&self.0))
    }

    fn extend(&self) -> PyResult<PyMcq> {
        affine::build_affine_extension(&self.0).map(|e| PyMcq(e.mcq)).map_err(err)
    }

    /// Applies the random equivalence drawn from `seed`; returns the new
    /// tuple and the witness `(h, eta)`.
    fn transport(&self, seed: u64) -> PyResult<(PyTuple, (Vec<usize>, Vec<usize>))> {
        let w = EquivalenceWitness::seeded(self.0.setting(), seed);
        let t = affine::transport_six_tuple(&self.0, &w).map_err(err)?;
        Ok((PyTuple(t), (w.h.values().to_vec(), w.eta.values().to_vec())))
    }

    /// The equivalent augmented pair and the witness `(h, eta)`.
    fn reduce(&self) -> PyResult<(PyCocycle, (Vec<usize>, Vec<usize>))> {
        let r = affine::reduce_six_tuple(&self.0).map_err(err)?;
        Ok((PyCocycle(r.pair), (r.witness.h.values().to_vec(), r.witness.eta.values().to_vec())))
    }

    fn equivalent_to(&self, other: &PyTuple, h: Vec<usize>, eta: Vec<usize>) -> PyResult<PyVerdict> {
        let s = self.0.setting();
        let h = s.point_map(false, h).map_err(err)?;
        let eta = s.point_map(true, eta).map_err(err)?;
        let w = EquivalenceWitness::new(s, h, eta).map_err(err)?;
        affine::check_equivalence(&self.0, &other.0, &w).map(verdict).map_err(err)
    }

    /// Certificate JSON for the reduction.
    fn certify(&self) -> PyResult<String> {
        let c = affine::certify_reduction(&self.0).map_err(err)?;
        Ok(format::to_json(&Document::Certificate((&c).into())))
    }
}

/// Re-checks a certificate file; `True` when every claim holds.
#[pyfunction]
fn recheck_certificate(text: &str) -> PyResult<bool> {
    match parse(text, "certificate")? {
        Document::Certificate(d) => Ok(d.load().map_err(err)?.recheck().map_err(err)?.is_pass()),
        _ => unreachable!(),
    }
}

#[pyfunction]
fn cyclic_group(n: usize) -> PyResult<PyGroup> {
    alg::cyclic_group(n).map(PyGroup).map_err(err)
}

#[pyfunction]
fn symmetric_group(n: usize) -> PyResult<PyGroup> {
    alg::symmetric_group(n).map(PyGroup).map_err(err)
}

#[pyfunction]
fn ring_zn(n: usize) -> PyResult<PyRing> {
    alg::ring_zn(n).map(PyRing).map_err(err)
}

#[pyfunction]
fn module_power(ring: &PyRing, k: usize) -> PyResult<PyLeftModule> {
    Ok(PyLeftModule(ring.0.clone(), alg::module_power(&ring.0, k).map_err(err)?))
}

#[pyfunction]
fn dihedral_quandle(n: usize) -> PyResult<PyQuandle> {
    quandle::dihedral_quandle(n).map(PyQuandle).map_err(err)
}

#[pyfunction]
fn alexander_quandle_zn(n: usize, t: usize) -> PyResult<PyQuandle> {
    quandle::alexander_quandle_zn(n, t).map(PyQuandle).map_err(err)
}

#[pyfunction]
fn conj_quandle(g: &PyGroup) -> PyQuandle {
    PyQuandle(quandle::conj_quandle(&g.0))
}

#[pyfunction]
fn mcq_from_group(g: &PyGroup) -> PyMcq {
    PyMcq(mcqs::mcq_from_group(&g.0))
}

/// Associated MCQ of the `Z_type`-family of `q`.
#[pyfunction]
fn z_family_mcq(q: &PyQuandle) -> PyResult<PyMcq> {
    mcqs::associated_mcq(&mcqs::z_family_from_quandle(&q.0)).map(PyMcq).map_err(err)
}

/// Associated MCQ of the group-ring family of `R[G]`.
#[pyfunction]
#[pyo3(signature = (ring, group, budget = 1 << 16))]
fn group_ring_mcq(ring: &PyRing, group: &PyGroup, budget: usize) -> PyResult<PyMcq> {
    let f = mcqs::g_family_alexander(&ring.0, &group.0, budget).map_err(err)?;
    mcqs::associated_mcq(&f).map(PyMcq).map_err(err)
}

/// Verdict of the MCQ axioms on an MCQ file, which need not be valid.
#[pyfunction]
fn verify_mcq_json(text: &str) -> PyResult<PyVerdict> {
    match parse(text, "mcq")? {
        Document::Mcq(d) => {
            let raw = d.checked_raw().map_err(err)?;
            mcqs::verify_mcq(&raw).map(verdict).map_err(err)
        }
        _ => unreachable!(),
    }
}

#[pyfunction]
#[pyo3(signature = (x, ring, budget = u64::MAX))]
fn enumerate_pairs(x: &PyMcq, ring: &PyRing, budget: u64) -> PyResult<Vec<PyPair>> {
    Ok(pairs::enumerate_pairs(&x.0, &ring.0, budget).map_err(err)?.into_iter().map(PyPair).collect())
}

#[pyfunction]
#[pyo3(signature = (x, ring, module = None, budget = 1 << 24))]
fn enumerate_tuples(x: &PyMcq, ring: &PyRing, module: Option<&PyLeftModule>, budget: u64) -> PyResult<Vec<PyTuple>> {
    let s = setting(x, ring, module)?;
    Ok(affine::enumerate_six_tuples(&s, budget).map_err(err)?.into_iter().map(PyTuple).collect())
}

/// The least isomorphism `a → b` as a list of images, or `None`.
#[pyfunction]
#[pyo3(signature = (a, b, budget = 1 << 24))]
fn iso(py: Python<'_>, a: &PyMcq, b: &PyMcq, budget: u64) -> PyResult<Option<Vec<usize>>> {
    let out = py.detach(|| mcqs::mcq_iso_search(&a.0, &b.0, budget)).map_err(err)?;
    Ok(out.isomorphism.map(|f| f.values().to_vec()))
}

#[pymodule]
pub fn mcq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("McqError", m.py().get_type::<McqError>())?;
    m.add("ConditionError", m.py().get_type::<ConditionError>())?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add("WitnessError", m.py().get_type::<WitnessError>())?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyLeftModule>()?;
    m.add_class::<PyQuandle>()?;
    m.add_class::<PyMcq>()?;
    m.add_class::<PyPair>()?;
    m.add_class::<PyCocycle>()?;
    m.add_class::<PyTuple>()?;
    m.add_function(wrap_pyfunction!(cyclic_group, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_group, m)?)?;
    m.add_function(wrap_pyfunction!(ring_zn, m)?)?;
    m.add_function(wrap_pyfunction!(module_power, m)?)?;
    m.add_function(wrap_pyfunction!(dihedral_quandle, m)?)?;
    m.add_function(wrap_pyfunction!(alexander_quandle_zn, m)?)?;
    m.add_function(wrap_pyfunction!(conj_quandle, m)?)?;
    m.add_function(wrap_pyfunction!(mcq_from_group, m)?)?;
    m.add_function(wrap_pyfunction!(z_family_mcq, m)?)?;
    m.add_function(wrap_pyfunction!(group_ring_mcq, m)?)?;
    m.add_function(wrap_pyfunction!(verify_mcq_json, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_tuples, m)?)?;
    m.add_function(wrap_pyfunction!(iso, m)?)?;
    m.add_function(wrap_pyfunction!(recheck_certificate, m)?)?;
    Ok(())
}
