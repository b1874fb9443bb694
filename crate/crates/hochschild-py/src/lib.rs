//! Python bindings: an `Engine` class wrapping one algebra (given as file
//! content in the same sectioned text format the CLI reads) with methods for
//! cohomology dimensions and the verification suites. Reports come back as
//! JSON strings with exact scalars.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hochschild::algebra::{dual_bimodule, regular_bimodule, validate_algebra, Bimodule};
use hochschild::bv::{
    validate_structural_map, verify_bar_square_zero, verify_gerstenhaber_bv,
    verify_pairing_adjunction, BracketSign, StructuralMap,
};
use hochschild::complex::{verify_complex_soundness, ChainComplexSpaces, CochainComplex};
use hochschild::frobenius::{
    frobenius_psi, nakayama, semisimplicity_check, symmetric_psi, validate_form,
    verify_symmetric_transport, verify_twisted_cyclic, BilinearForm,
};
use hochschild::input::{parse_form, parse_input, InputFile};
use hochschild::quiver::{monomial_psi, MonomialPresentation};
use hochschild::report::VerificationReport;
use hochschild::scalar::GroundField;
use hochschild::Algebra;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json(report: &VerificationReport) -> PyResult<String> {
    let mut sorted = report.clone();
    sorted.sort_by_name();
    serde_json::to_string_pretty(&sorted).map_err(err)
}

/// One loaded algebra (or monomial quiver presentation) plus the operations
/// the engine exposes on it.
#[pyclass]
struct Engine {
    algebra: Algebra,
    presentation: Option<MonomialPresentation>,
    cap: usize,
}

impl Engine {
    fn form(&self, text: &str) -> PyResult<BilinearForm> {
        parse_form(text, self.algebra.field, self.algebra.dim).map_err(err)
    }

    fn module(&self, coefficients: &str, form_text: Option<&str>) -> PyResult<Bimodule> {
        let a = &self.algebra;
        match coefficients {
            "self" => Ok(regular_bimodule(a)),
            "dual" => Ok(dual_bimodule(a, &regular_bimodule(a))),
            "twisted" => {
                let text = form_text
                    .ok_or_else(|| err("twisted coefficients need a bilinear form"))?;
                let g = self.form(text)?;
                let n = nakayama(a, &g).map_err(err)?;
                hochschild::twisted_bimodule(a, &n).map_err(err)
            }
            other => Err(err(format!("unknown coefficients `{other}`"))),
        }
    }

    fn psi(&self, source: &str, form_text: Option<&str>) -> PyResult<StructuralMap> {
        match source {
            "monomial" => match &self.presentation {
                Some(p) => monomial_psi(p, self.cap).map_err(err),
                None => Err(err("monomial psi needs a quiver input")),
            },
            "symmetric" => {
                let g = self.form(form_text.ok_or_else(|| err("symmetric psi needs a form"))?)?;
                symmetric_psi(&self.algebra, &g).map_err(err)
            }
            "frobenius" => {
                let g = self.form(form_text.ok_or_else(|| err("frobenius psi needs a form"))?)?;
                let n = nakayama(&self.algebra, &g).map_err(err)?;
                frobenius_psi(&self.algebra, &g, &n).map_err(err)
            }
            other => Err(err(format!("unknown psi source `{other}`"))),
        }
    }
}

#[pymethods]
impl Engine {
    /// Parse an algebra or quiver file given as text. `field` optionally
    /// overrides the file's field section (`rational` or `prime:<p>`).
    #[new]
    #[pyo3(signature = (text, field=None, cap=20000))]
    fn new(text: &str, field: Option<&str>, cap: usize) -> PyResult<Self> {
        let over = match field {
            None => None,
            Some(f) => Some(GroundField::parse(f).map_err(err)?),
        };
        match parse_input(text, over).map_err(err)? {
            InputFile::Algebra(a) => Ok(Engine { algebra: a, presentation: None, cap }),
            InputFile::Quiver(p) => {
                let a = hochschild::path_algebra(&p, cap).map_err(err)?;
                Ok(Engine { algebra: a, presentation: Some(p), cap })
            }
        }
    }

    fn dim(&self) -> usize {
        self.algebra.dim
    }

    fn basis(&self) -> Vec<String> {
        self.algebra.labels.clone()
    }

    fn field(&self) -> String {
        self.algebra.field.to_string()
    }

    /// Associativity and unit laws, as a JSON report.
    fn validate_json(&self) -> PyResult<String> {
        to_json(&validate_algebra(&self.algebra))
    }

    /// Cohomology dimensions for the chosen coefficients through `max_degree`.
    #[pyo3(signature = (coefficients="self", max_degree=3, form=None))]
    fn cohomology_dims(
        &self,
        coefficients: &str,
        max_degree: usize,
        form: Option<&str>,
    ) -> PyResult<Vec<usize>> {
        let module = self.module(coefficients, form)?;
        let cx = CochainComplex::new(&self.algebra, &module, max_degree, self.cap).map_err(err)?;
        Ok(cx.dims())
    }

    /// Homology dimensions with regular coefficients through `max_degree`.
    #[pyo3(signature = (max_degree=3))]
    fn homology_dims(&self, max_degree: usize) -> PyResult<Vec<usize>> {
        let reg = regular_bimodule(&self.algebra);
        let spaces =
            ChainComplexSpaces::new(&self.algebra, &reg, max_degree, self.cap).map_err(err)?;
        Ok(spaces.dims())
    }

    /// `d∘d = 0` and `b∘b = 0` for the chosen coefficients, as JSON.
    #[pyo3(signature = (coefficients="self", max_degree=3, form=None))]
    fn complex_soundness_json(
        &self,
        coefficients: &str,
        max_degree: usize,
        form: Option<&str>,
    ) -> PyResult<String> {
        let module = self.module(coefficients, form)?;
        to_json(&verify_complex_soundness(&self.algebra, &module, max_degree, self.cap).map_err(err)?)
    }

    /// The pairing adjunction and rank suite through degree `max_n`, as JSON.
    #[pyo3(signature = (max_n=2))]
    fn pairing_report_json(&self, max_n: usize) -> PyResult<String> {
        to_json(&verify_pairing_adjunction(&self.algebra, max_n, self.cap).map_err(err)?)
    }

    /// Square-zero of the cyclic operator on dual-coefficient cohomology.
    #[pyo3(signature = (max_degree=3))]
    fn bar_report_json(&self, max_degree: usize) -> PyResult<String> {
        to_json(&verify_bar_square_zero(&self.algebra, max_degree, self.cap).map_err(err)?)
    }

    /// The four structural-map axioms for the chosen candidate, as JSON.
    #[pyo3(signature = (psi, form=None))]
    fn structural_map_report_json(&self, psi: &str, form: Option<&str>) -> PyResult<String> {
        let mut s = self.psi(psi, form)?;
        to_json(&validate_structural_map(&self.algebra, &mut s))
    }

    /// The Gerstenhaber/BV suite over the chosen candidate, as JSON.
    #[pyo3(signature = (psi, form=None, bracket_sign="degree-product", max_degree=3, pair_budget=3))]
    fn gerstenhaber_report_json(
        &self,
        psi: &str,
        form: Option<&str>,
        bracket_sign: &str,
        max_degree: usize,
        pair_budget: usize,
    ) -> PyResult<String> {
        let convention = BracketSign::parse(bracket_sign).map_err(err)?;
        let mut s = self.psi(psi, form)?;
        validate_structural_map(&self.algebra, &mut s);
        let report = verify_gerstenhaber_bv(
            &self.algebra,
            &s,
            max_degree,
            pair_budget,
            convention,
            self.cap,
            true,
        )
        .map_err(err)?;
        to_json(&report)
    }

    /// The symmetric-transport suite for a symmetric form, as JSON.
    #[pyo3(signature = (form, bracket_sign="degree-parity", max_degree=3, pair_budget=3))]
    fn symmetric_transport_report_json(
        &self,
        form: &str,
        bracket_sign: &str,
        max_degree: usize,
        pair_budget: usize,
    ) -> PyResult<String> {
        let convention = BracketSign::parse(bracket_sign).map_err(err)?;
        let g = self.form(form)?;
        let report = verify_symmetric_transport(
            &self.algebra,
            &g,
            max_degree,
            pair_budget,
            convention,
            self.cap,
        )
        .map_err(err)?;
        to_json(&report)
    }

    /// Form validation, Nakayama/semisimplicity data and (for non-symmetric
    /// forms) the twisted cyclic checks, as JSON.
    #[pyo3(signature = (form, max_degree=2))]
    fn frobenius_report_json(&self, form: &str, max_degree: usize) -> PyResult<String> {
        let g = self.form(form)?;
        let mut report = validate_form(&self.algebra, &g);
        if report.checks.iter().filter(|c| c.name != "form/classification").all(|c| c.passed) {
            let n = nakayama(&self.algebra, &g).map_err(err)?;
            report.merge(semisimplicity_check(&self.algebra, &n));
            report.merge(
                verify_twisted_cyclic(&self.algebra, &n, max_degree, self.cap).map_err(err)?,
            );
        }
        to_json(&report)
    }

    fn __repr__(&self) -> String {
        format!(
            "Engine(dim={}, field={}, basis=[{}])",
            self.algebra.dim,
            self.algebra.field,
            self.algebra.labels.join(", ")
        )
    }
}

#[pymodule]
fn hochschild_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Engine>()?;
    Ok(())
}
