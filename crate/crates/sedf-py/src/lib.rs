//! Python bindings: groups, families, verification, spectra, construction,
//! search and classification, mirroring the CLI surface in-process.
//!
//! Families cross the boundary as their document JSON (the same format the
//! CLI reads and writes), so Python can round-trip them through files or
//! pipes without a bespoke object model.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sedf_core::constructions as cons;
use sedf_core::designs::{self, DifferenceFamily, FamilyDocument};
use sedf_core::error::Error;
use sedf_core::facts::KnownFactsTable;
use sedf_core::filters;
use sedf_core::group::{self, GroupElement, GroupSpec};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A finite abelian group given by prime-power cyclic factors.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: GroupSpec,
}

#[pymethods]
impl PyGroup {
    /// Parse a spec string such as `"3^5"`, `"243"` or `"4x2"`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyGroup {
            inner: group::parse_group_spec(spec).map_err(py_err)?,
        })
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    #[getter]
    fn factors(&self) -> Vec<u64> {
        self.inner.factors().to_vec()
    }

    fn spec_string(&self) -> String {
        self.inner.spec_string()
    }

    fn elements(&self) -> PyResult<Vec<Vec<u64>>> {
        Ok(self
            .inner
            .elements()
            .map_err(py_err)?
            .into_iter()
            .map(|e| e.coords)
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Group(\"{}\")", self.inner.spec_string())
    }

    /// One spec string per isomorphism class of abelian groups of order v.
    #[staticmethod]
    fn enumerate(v: u64) -> Vec<String> {
        group::enumerate_abelian_groups(v)
            .into_iter()
            .map(|g| g.spec_string())
            .collect()
    }
}

fn family_from_json(json: &str) -> PyResult<DifferenceFamily> {
    FamilyDocument::parse(json)
        .and_then(|d| d.to_family())
        .map_err(py_err)
}

fn elements(group: &GroupSpec, coords: Vec<Vec<u64>>) -> PyResult<Vec<GroupElement>> {
    coords
        .into_iter()
        .map(|coords| {
            let e = GroupElement { coords };
            if group.is_valid_element(&e) {
                Ok(e)
            } else {
                Err(PyValueError::new_err(format!(
                    "invalid element {:?}",
                    e.coords
                )))
            }
        })
        .collect()
}

fn report_to_dict(py: Python<'_>, rep: &designs::VerificationReport) -> PyResult<PyObject> {
    let d = PyDict::new(py);
    d.set_item("passed", rep.passed)?;
    d.set_item("near_complete", rep.near_complete)?;
    d.set_item("contains_identity", rep.contains_identity)?;
    d.set_item("set_nontrivial", rep.set_nontrivial.clone())?;
    if let Some(r) = rep.regular {
        d.set_item("regular", r)?;
    }
    if let Some(f) = &rep.failure {
        d.set_item("failing_set", f.set_index)?;
        d.set_item("deviations", f.deviations.clone())?;
    }
    Ok(d.into())
}

/// Check the strong covering condition of a family document (JSON string).
#[pyfunction]
fn verify_sedf(py: Python<'_>, family_json: &str) -> PyResult<PyObject> {
    let fam = family_from_json(family_json)?;
    let rep = designs::verify_sedf(&fam).map_err(py_err)?;
    report_to_dict(py, &rep)
}

/// Check the plain external covering condition of a family document.
#[pyfunction]
fn verify_edf(py: Python<'_>, family_json: &str) -> PyResult<PyObject> {
    let fam = family_from_json(family_json)?;
    let rep = designs::verify_edf(&fam).map_err(py_err)?;
    report_to_dict(py, &rep)
}

/// Check one subset against the partial-difference-set identity.
#[pyfunction]
fn verify_pds(
    py: Python<'_>,
    group_spec: &str,
    set: Vec<Vec<u64>>,
    lam: u64,
    mu: u64,
) -> PyResult<PyObject> {
    let g = group::parse_group_spec(group_spec).map_err(py_err)?;
    let set = elements(&g, set)?;
    let k = set.len() as u64;
    let rep = designs::verify_pds(&g, &set, k, lam, mu).map_err(py_err)?;
    report_to_dict(py, &rep)
}

/// The (243,11,22,20) family in Z_3^5 as a family document.
#[pyfunction]
fn construct_m11() -> PyResult<String> {
    Ok(FamilyDocument::from_family(&cons::construct_m11_sedf().map_err(py_err)?).to_json())
}

/// The (k^2+1, 2, k, 1) family in the cyclic group.
#[pyfunction]
fn construct_k2plus1(k: u64) -> PyResult<String> {
    Ok(FamilyDocument::from_family(&cons::construct_k2plus1(k).map_err(py_err)?).to_json())
}

/// Quadratic residues modulo a prime p = 1 (mod 4), as element tuples.
#[pyfunction]
fn construct_paley(p: u64) -> PyResult<Vec<Vec<u64>>> {
    Ok(cons::construct_paley_pds(p)
        .map_err(py_err)?
        .into_iter()
        .map(|e| e.coords)
        .collect())
}

/// Complete a Paley-parameter PDS to its near-complete two-set family.
#[pyfunction]
fn sedf_from_pds(group_spec: &str, set: Vec<Vec<u64>>) -> PyResult<String> {
    let g = group::parse_group_spec(group_spec).map_err(py_err)?;
    let set = elements(&g, set)?;
    Ok(FamilyDocument::from_family(&cons::sedf_from_pds(&g, &set).map_err(py_err)?).to_json())
}

/// Character spectrum summary of a verified family: vanishing count, the
/// (a,b) pairs seen, and the per-subset norm multiset of the first
/// character.
#[pyfunction]
fn spectrum_summary(py: Python<'_>, family_json: &str) -> PyResult<PyObject> {
    let fam = family_from_json(family_json)?;
    let rep = designs::spectrum(&fam).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("vanishing", rep.vanishing_count)?;
    d.set_item("nonvanishing", rep.nonvanishing_count)?;
    let mut pairs: Vec<(u64, u64)> = rep.entries.iter().filter_map(|e| e.ab).collect();
    pairs.sort();
    pairs.dedup();
    d.set_item("ab_pairs", pairs)?;
    d.set_item("inconsistencies", rep.inconsistencies.clone())?;
    Ok(d.into())
}

/// Full spectrum report as JSON.
#[pyfunction]
fn spectrum_json(family_json: &str) -> PyResult<String> {
    let fam = family_from_json(family_json)?;
    let rep = designs::spectrum(&fam).map_err(py_err)?;
    Ok(serde_json::to_string(&rep).expect("report serializes"))
}

/// Exhaustive search for (m, k, lambda) families in a group; returns family
/// documents, one per translation class.
#[pyfunction]
#[pyo3(signature = (group_spec, m, k, lam, budget=100_000_000))]
fn search(group_spec: &str, m: u64, k: u64, lam: u64, budget: u64) -> PyResult<Vec<String>> {
    let g = group::parse_group_spec(group_spec).map_err(py_err)?;
    Ok(designs::exhaustive_sedf_search(&g, m, k, lam, budget)
        .map_err(py_err)?
        .iter()
        .map(|f| FamilyDocument::from_family(f).to_json())
        .collect())
}

/// Coprime (a, b) pairs surviving the divisibility battery for m > 2.
#[pyfunction]
fn feasible_ab_pairs(m: u64, lam: u64) -> PyResult<Vec<(u64, u64)>> {
    if m <= 2 {
        return Err(PyValueError::new_err("pair feasibility needs m > 2"));
    }
    Ok(filters::feasible_ab_pairs(m, lam)
        .into_iter()
        .map(|p| (p.a, p.b))
        .collect())
}

fn parse_preset(preset: &str) -> PyResult<filters::FilterConfig> {
    Ok(filters::FilterConfig::new(
        filters::Preset::parse(preset).map_err(py_err)?,
    ))
}

/// Classify one parameter set; returns (status, [(filter_id, citation)]).
#[pyfunction]
#[pyo3(signature = (v, m, k, lam, preset="full"))]
fn classify_params(
    v: u64,
    m: u64,
    k: u64,
    lam: u64,
    preset: &str,
) -> PyResult<(String, Vec<(String, String)>)> {
    let p = filters::ParamSet::new(v, m, k, lam).map_err(py_err)?;
    let verdict = filters::filter_classify(&p, &parse_preset(preset)?, &KnownFactsTable);
    Ok((
        verdict.status.as_str().to_string(),
        verdict
            .reasons
            .iter()
            .map(|r| (r.filter.id(), r.citation.clone()))
            .collect(),
    ))
}

/// One classification row: (v, m, k, lambda, status, filter_id).
type ClassifyRow = (u64, u64, u64, u64, String, String);

/// Classify a parameter range.
#[pyfunction]
#[pyo3(signature = (v_max, m_min, m_max, preset="full", include_near_complete=false))]
fn classify(
    v_max: u64,
    m_min: u64,
    m_max: u64,
    preset: &str,
    include_near_complete: bool,
) -> PyResult<Vec<ClassifyRow>> {
    let table = filters::classify_range(
        v_max,
        m_min,
        m_max,
        &parse_preset(preset)?,
        &KnownFactsTable,
        include_near_complete,
    );
    Ok(table
        .rows
        .iter()
        .map(|row| {
            (
                row.params.v,
                row.params.m,
                row.params.k,
                row.params.lambda,
                row.verdict.status.as_str().to_string(),
                row.verdict
                    .reasons
                    .first()
                    .map(|r| r.filter.id())
                    .unwrap_or_default(),
            )
        })
        .collect())
}

/// Per-group exponent constraints for surviving parameters, as JSON.
#[pyfunction]
#[pyo3(signature = (v, m, k, lam, preset="full"))]
fn group_constraints_json(v: u64, m: u64, k: u64, lam: u64, preset: &str) -> PyResult<String> {
    let p = filters::ParamSet::new(v, m, k, lam).map_err(py_err)?;
    let rep =
        filters::group_constraints(&p, &parse_preset(preset)?, &KnownFactsTable).map_err(py_err)?;
    Ok(serde_json::to_string(&rep).expect("report serializes"))
}

/// Raise or lower the element-enumeration cap (default 10^6).
#[pyfunction]
fn set_enumeration_cap(cap: u64) {
    sedf_core::set_enumeration_cap(cap);
}

#[pymodule]
fn sedf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(set_enumeration_cap, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sedf, m)?)?;
    m.add_function(wrap_pyfunction!(verify_edf, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pds, m)?)?;
    m.add_function(wrap_pyfunction!(construct_m11, m)?)?;
    m.add_function(wrap_pyfunction!(construct_k2plus1, m)?)?;
    m.add_function(wrap_pyfunction!(construct_paley, m)?)?;
    m.add_function(wrap_pyfunction!(sedf_from_pds, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_summary, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_json, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(feasible_ab_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(classify_params, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(group_constraints_json, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
