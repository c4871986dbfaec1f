//! Python bindings: parse description files, inspect categories, localize and
//! run check suites.

use std::sync::Arc;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use catmate_core::cat::FinCat;
use catmate_core::format;
use catmate_core::localization::{default_bound, localize as localize_rc, RelCat};
use catmate_core::suite::{run_suite, Suite, SuiteConfig};
use catmate_core::{fixtures, Budget, CatError};

fn err(e: CatError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite category.
#[pyclass(name = "Category", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCategory {
    inner: Arc<FinCat>,
}

#[pymethods]
impl PyCategory {
    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn objects(&self) -> Vec<String> {
        self.inner.objects().map(|o| self.inner.obj_name(o).to_string()).collect()
    }

    /// Morphisms as `(name, domain, codomain)`.
    #[getter]
    fn morphisms(&self) -> Vec<(String, String, String)> {
        let c = &self.inner;
        c.morphisms()
            .map(|m| (c.mor_name(m).to_string(), c.obj_name(c.dom(m)).to_string(), c.obj_name(c.cod(m)).to_string()))
            .collect()
    }

    fn hom(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        let (a, b) = (self.obj(a)?, self.obj(b)?);
        Ok(self.inner.hom(a, b).iter().map(|&m| self.inner.mor_name(m).to_string()).collect())
    }

    /// `g . f`, or `None` when the two do not compose.
    fn compose(&self, g: &str, f: &str) -> PyResult<Option<String>> {
        let (g, f) = (self.mor(g)?, self.mor(f)?);
        Ok(self.inner.try_compose(g, f).map(|h| self.inner.mor_name(h).to_string()))
    }

    fn is_iso(&self, f: &str) -> PyResult<bool> {
        Ok(self.inner.is_iso(self.mor(f)?))
    }

    fn __len__(&self) -> usize {
        self.inner.n_mor()
    }

    fn __repr__(&self) -> String {
        format!("<Category {}: {} objects, {} morphisms>", self.inner.name(), self.inner.n_obj(), self.inner.n_mor())
    }
}

impl PyCategory {
    fn obj(&self, name: &str) -> PyResult<usize> {
        self.inner.obj_id(name).ok_or_else(|| PyKeyError::new_err(format!("no object `{name}`")))
    }

    fn mor(&self, name: &str) -> PyResult<usize> {
        self.inner.mor_id(name).ok_or_else(|| PyKeyError::new_err(format!("no morphism `{name}`")))
    }
}

/// Everything declared in one or more description files.
#[pyclass(name = "Workspace", frozen)]
struct PyWorkspace {
    inner: format::Workspace,
}

#[pymethods]
impl PyWorkspace {
    #[getter]
    fn categories(&self) -> Vec<String> {
        self.inner.categories.keys().cloned().collect()
    }

    #[getter]
    fn relcats(&self) -> Vec<String> {
        self.inner.relcats.keys().cloned().collect()
    }

    #[getter]
    fn adjunctions(&self) -> Vec<String> {
        self.inner.adjunctions.keys().cloned().collect()
    }

    fn category(&self, name: &str) -> PyResult<PyCategory> {
        self.inner
            .categories
            .get(name)
            .map(|c| PyCategory { inner: c.clone() })
            .ok_or_else(|| PyKeyError::new_err(format!("no category `{name}`")))
    }

    fn serialize(&self) -> PyResult<String> {
        format::serialize(&self.inner).map_err(err)
    }

    /// Localize a relative category, or a plain category at its isomorphisms.
    #[pyo3(signature = (name, bound=None))]
    fn localize(&self, name: &str, bound: Option<usize>) -> PyResult<PyLocalization> {
        let rc = match (self.inner.relcats.get(name), self.inner.categories.get(name)) {
            (Some(r), _) => r.rc.clone(),
            (None, Some(c)) => RelCat::minimal(c.clone()),
            _ => return Err(PyKeyError::new_err(format!("no relative category or category `{name}`"))),
        };
        Ok(run_localize(&rc, bound))
    }

    /// Run a check suite; returns the report.
    #[pyo3(signature = (suite, bound=None, probes=None, budget=None))]
    fn check(
        &self,
        suite: &str,
        bound: Option<usize>,
        probes: Option<Vec<String>>,
        budget: Option<usize>,
    ) -> PyResult<PyReport> {
        let suite: Suite = suite.parse().map_err(PyValueError::new_err)?;
        let mut cfg = SuiteConfig { bound, ..SuiteConfig::default() };
        if let Some(p) = probes {
            cfg.probes = p;
        }
        if let Some(n) = budget {
            cfg.bud = Budget { max_objects: n, max_morphisms: n.saturating_mul(10) };
        }
        let rep = run_suite(&self.inner, suite, &cfg);
        Ok(PyReport { json: rep.to_json(), text: rep.to_text(), exit_code: rep.exit_code() })
    }

    fn __repr__(&self) -> String {
        format!("<Workspace: {} categories, {} relcats>", self.inner.categories.len(), self.inner.relcats.len())
    }
}

fn run_localize(rc: &RelCat, bound: Option<usize>) -> PyLocalization {
    let bound = bound.unwrap_or_else(|| default_bound(rc));
    let res = localize_rc(rc, bound);
    match res.exact() {
        Ok(l) => PyLocalization {
            exact: true,
            bound,
            ho: Some(PyCategory { inner: l.ho.clone() }),
            h: rc
                .cat
                .morphisms()
                .map(|m| (rc.cat.mor_name(m).to_string(), l.ho.mor_name(l.h.mor[m]).to_string()))
                .collect(),
            words: l.ho.morphisms().map(|m| (l.ho.mor_name(m).to_string(), l.word_name(&l.normal_forms[m]))).collect(),
        },
        Err(_) => PyLocalization { exact: false, bound, ho: None, h: Vec::new(), words: Vec::new() },
    }
}

/// Outcome of a bounded localization.
#[pyclass(name = "Localization", frozen, get_all)]
struct PyLocalization {
    exact: bool,
    bound: usize,
    ho: Option<PyCategory>,
    /// Image of each morphism under the localization functor.
    h: Vec<(String, String)>,
    /// Normal-form zig-zag word of each morphism of the localization.
    words: Vec<(String, String)>,
}

#[pymethods]
impl PyLocalization {
    fn __repr__(&self) -> String {
        match &self.ho {
            Some(c) => format!("<Localization exact: {}>", c.__repr__()),
            None => format!("<Localization undecided at bound {}>", self.bound),
        }
    }
}

/// A suite report; `json` follows the CLI's schema.
#[pyclass(name = "Report", frozen, get_all)]
struct PyReport {
    json: String,
    text: String,
    exit_code: i32,
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyWorkspace> {
    format::parse(text).map(|inner| PyWorkspace { inner }).map_err(err)
}

#[pyfunction]
fn parse_files(paths: Vec<String>) -> PyResult<PyWorkspace> {
    let mut texts = Vec::new();
    for p in &paths {
        texts.push(std::fs::read_to_string(p).map_err(|e| PyValueError::new_err(format!("{p}: {e}")))?);
    }
    format::parse_all(texts.iter().map(String::as_str)).map(|inner| PyWorkspace { inner }).map_err(err)
}

/// A built-in category by name.
#[pyfunction]
fn fixture(name: &str) -> PyResult<PyCategory> {
    let inner = match name {
        "One" => fixtures::one(),
        "Arrow" => fixtures::arrow(),
        "Chain2" => fixtures::chain2(),
        "Span" => fixtures::span(),
        "WalkingIso" => fixtures::walking_iso(),
        "FS2" => fixtures::fs2(),
        "G1" => fixtures::g1(),
        "G0" => fixtures::g0(),
        "Square" => fixtures::square(),
        _ => return Err(PyKeyError::new_err(format!("no fixture `{name}`"))),
    };
    Ok(PyCategory { inner })
}

/// Localize the Arrow category at its non-identity morphism.
#[pyfunction]
#[pyo3(signature = (bound=None))]
fn localize_rel_arrow(bound: Option<usize>) -> PyLocalization {
    run_localize(&fixtures::rel_arrow(), bound)
}

#[pymodule]
fn catmate(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCategory>()?;
    m.add_class::<PyWorkspace>()?;
    m.add_class::<PyLocalization>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(parse_files, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(localize_rel_arrow, m)?)?;
    Ok(())
}
