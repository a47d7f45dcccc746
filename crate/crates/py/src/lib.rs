//! Python bindings: polynomials, grids, division, the nonvanishing checkers
//! and nonzero counting. Results that are records come back as plain dicts.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use nullgrid_core::counting::{
    af_punctured_bounds, clark_count as core_clark_count, count_nonzeros as core_count, sharpness_construction,
    CountDomain,
};
use nullgrid_core::division::divide as core_divide;
use nullgrid_core::error::Error;
use nullgrid_core::grid::{EdgeSet, GridInput};
use nullgrid_core::ideals::{
    buchberger_complete, buchberger_criterion, grid_basis, grid_power_basis, multigrid_basis, punctured_basis,
};
use nullgrid_core::lacunary::{self, LacunarityVector};
use nullgrid_core::nullsatz::{check_theorem, tfold_multiplicity, Multiplicity, NullCertificate};
use nullgrid_core::order::MonomialOrder;
use nullgrid_core::parse::{max_variable_index, parse_polynomial};
use nullgrid_core::poly::{ExponentVector, Polynomial as CorePolynomial};
use nullgrid_core::scalar::{Field, Scalar};
use nullgrid_core::selftest::run_criterion;
use nullgrid_core::stability::ShadingContext;

create_exception!(nullgrid, NullgridError, PyValueError);

fn err(e: Error) -> PyErr {
    NullgridError::new_err(format!("{}: {e}", e.code()))
}

fn field_arg(text: &str) -> PyResult<Field> {
    text.parse().map_err(err)
}

fn order_arg(text: &str) -> PyResult<MonomialOrder> {
    text.parse().map_err(err)
}

fn scalar_arg(obj: &Bound<'_, PyAny>, field: Field) -> PyResult<Scalar> {
    if let Ok(v) = obj.extract::<i64>() {
        return Ok(field.from_i64(v));
    }
    let text: String = obj.extract()?;
    field.parse_scalar(&text).map_err(err)
}

fn lambda_arg(lam: Option<Vec<u32>>, n: usize) -> PyResult<LacunarityVector> {
    match lam {
        None => Ok(LacunarityVector::zeros(n)),
        Some(v) if v.len() == 1 => Ok(LacunarityVector::uniform(n, v[0])),
        Some(v) if v.len() == n => Ok(LacunarityVector::new(v)),
        Some(v) => Err(err(Error::ArityMismatch {
            expected: n,
            found: v.len(),
        })),
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

fn wrap_all(ps: &[CorePolynomial]) -> Vec<Polynomial> {
    ps.iter().cloned().map(|inner| Polynomial { inner }).collect()
}

/// A polynomial with exact coefficients in ℚ or GF(p).
#[pyclass(module = "nullgrid", frozen, from_py_object)]
#[derive(Clone)]
pub struct Polynomial {
    inner: CorePolynomial,
}

#[pymethods]
impl Polynomial {
    /// Parses `text` such as `"2*x1^2*x2 - 1/2*x3"`. `nvars` defaults to the
    /// largest variable index in the text.
    #[new]
    #[pyo3(signature = (text, field = "q", nvars = None))]
    fn new(text: &str, field: &str, nvars: Option<usize>) -> PyResult<Self> {
        let field = field_arg(field)?;
        let n = nvars.unwrap_or_else(|| max_variable_index(text).max(1));
        Ok(Polynomial {
            inner: parse_polynomial(text, field, n).map_err(err)?,
        })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Total degree, or `None` for the zero polynomial.
    fn degree(&self) -> Option<u32> {
        self.inner.degree().finite()
    }

    /// `(exponents, coefficient)` pairs in descending grlex order.
    fn terms(&self) -> Vec<(Vec<u32>, String)> {
        self.inner
            .sorted_terms(MonomialOrder::GrLex)
            .into_iter()
            .map(|(e, c)| (e.entries().to_vec(), c.to_string()))
            .collect()
    }

    fn coefficient(&self, exponent: Vec<u32>) -> String {
        self.inner.coefficient(&ExponentVector::new(&exponent)).to_string()
    }

    #[pyo3(signature = (order = "grlex"))]
    fn leading_exponent(&self, order: &str) -> PyResult<Vec<u32>> {
        let e = self.inner.leading_exponent(order_arg(order)?).map_err(err)?;
        Ok(e.entries().to_vec())
    }

    fn evaluate(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        let field = self.inner.field();
        let pt = point
            .iter()
            .map(|p| scalar_arg(p, field))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.evaluate(&pt).map_err(err)?.to_string())
    }

    /// Order of vanishing at `point`; `None` when the polynomial is zero.
    fn multiplicity(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<Option<u32>> {
        let field = self.inner.field();
        let pt = point
            .iter()
            .map(|p| scalar_arg(p, field))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(match tfold_multiplicity(&self.inner, &pt).map_err(err)? {
            Multiplicity::Finite(k) => Some(k),
            Multiplicity::Infinite => None,
        })
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Polynomial {
            inner: self.inner.checked_add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(Polynomial {
            inner: self.inner.checked_sub(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Polynomial {
            inner: self.inner.checked_mul(&other.inner).map_err(err)?,
        })
    }

    fn __neg__(&self) -> Self {
        Polynomial { inner: -&self.inner }
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        Polynomial {
            inner: self.inner.pow(k),
        }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Polynomial('{}', field='{}', nvars={})",
            self.inner,
            self.inner.field(),
            self.inner.nvars()
        )
    }
}

/// A grid `X_1 × … × X_n`, optionally punctured by `Y`, or a multigrid.
#[pyclass(module = "nullgrid", frozen)]
pub struct Grid {
    inner: GridInput,
}

#[pymethods]
impl Grid {
    /// `X` (and optional `Y`) are lists of edges; elements are ints or
    /// strings such as `"1/2"`.
    #[new]
    #[pyo3(signature = (x, y = None, field = "q"))]
    fn new(py: Python<'_>, x: Bound<'_, PyAny>, y: Option<Bound<'_, PyAny>>, field: &str) -> PyResult<Self> {
        let field = field_arg(field)?;
        let dumps = |obj: &Bound<'_, PyAny>| -> PyResult<Value> {
            let text: String = py.import("json")?.call_method1("dumps", (obj,))?.extract()?;
            serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
        };
        let mut doc = serde_json::json!({"field": field, "X": dumps(&x)?});
        if let Some(y) = y {
            doc["Y"] = dumps(&y)?;
        }
        Self::from_json(&doc.to_string())
    }

    /// A multigrid from edges of `(element, multiplicity)` pairs.
    #[staticmethod]
    #[pyo3(signature = (s, field = "q"))]
    fn multigrid(py: Python<'_>, s: Bound<'_, PyAny>, field: &str) -> PyResult<Self> {
        let field = field_arg(field)?;
        let text: String = py.import("json")?.call_method1("dumps", (s,))?.extract()?;
        let s: Value = serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Self::from_json(&serde_json::json!({"field": field, "S": s}).to_string())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Grid {
            inner: GridInput::from_json(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// `"grid"`, `"punctured"` or `"multigrid"`.
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner {
            GridInput::Grid(_) => "grid",
            GridInput::Punctured(_) => "punctured",
            GridInput::Multigrid(_) => "multigrid",
        }
    }

    /// Number of points (of `X ∖ Y` when punctured).
    fn __len__(&self) -> usize {
        match &self.inner {
            GridInput::Grid(g) => g.len(),
            GridInput::Punctured(p) => p.len(),
            GridInput::Multigrid(m) => m.len(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Grid({})", self.inner.to_json())
    }
}

/// Outcome of a hypothesis check, replayable with `revalidate`.
#[pyclass(module = "nullgrid", frozen)]
pub struct Certificate {
    inner: NullCertificate,
}

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Certificate {
            inner: NullCertificate::from_json(text).map_err(err)?,
        })
    }

    #[getter]
    fn accepted(&self) -> bool {
        self.inner.accepted
    }

    #[getter]
    fn theorem(&self) -> &'static str {
        self.inner.theorem.name()
    }

    #[getter]
    fn witness(&self) -> Option<Vec<String>> {
        self.inner.witness.clone()
    }

    #[getter]
    fn uncovered(&self) -> Vec<Vec<u32>> {
        self.inner.uncovered.iter().map(|e| e.entries().to_vec()).collect()
    }

    /// Replays every recorded clause and condition against `f`.
    fn revalidate(&self, f: &Polynomial) -> bool {
        self.inner.revalidate(&f.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        py.import("json")?.call_method1("loads", (self.inner.to_json(),))
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(theorem='{}', accepted={})",
            self.inner.theorem.name(),
            if self.inner.accepted { "True" } else { "False" }
        )
    }
}

/// Divides `f` by `divisors` in order. Step divisor indices are 0-based.
#[pyfunction]
#[pyo3(signature = (f, divisors, order = "grlex"))]
fn divide<'py>(py: Python<'py>, f: &Polynomial, divisors: Vec<Polynomial>, order: &str) -> PyResult<Bound<'py, PyAny>> {
    let gs: Vec<CorePolynomial> = divisors.into_iter().map(|g| g.inner).collect();
    let trace = core_divide(&f.inner, &gs, order_arg(order)?).map_err(err)?;
    let steps: Vec<(String, Vec<u32>, usize)> = trace
        .steps
        .iter()
        .map(|s| (s.coefficient.to_string(), s.shift.entries().to_vec(), s.divisor))
        .collect();
    let out = pyo3::types::PyDict::new(py);
    out.set_item("steps", steps)?;
    out.set_item("quotients", wrap_all(&trace.quotients()))?;
    out.set_item(
        "remainder",
        Polynomial {
            inner: trace.remainder.clone(),
        },
    )?;
    Ok(out.into_any())
}

#[pyfunction]
fn is_lacunary(f: &Polynomial, lam: Vec<u32>) -> PyResult<bool> {
    lacunary::is_lacunary(&f.inner, &lambda_arg(Some(lam), f.inner.nvars())?).map_err(err)
}

/// Largest λ for which the edge is λ-null.
#[pyfunction]
#[pyo3(signature = (edge, field = "q"))]
fn max_null_index(edge: Vec<Bound<'_, PyAny>>, field: &str) -> PyResult<u32> {
    let field = field_arg(field)?;
    let elements = edge
        .iter()
        .map(|a| scalar_arg(a, field))
        .collect::<PyResult<Vec<_>>>()?;
    lacunary::max_null_index(&EdgeSet::new(field, elements).map_err(err)?).map_err(err)
}

/// Stability of `x^alpha` in `f`; returns `(stable, reason)`.
#[pyfunction]
#[pyo3(signature = (f, alpha, divisors, lam, order = "grlex"))]
fn is_stable(
    f: &Polynomial,
    alpha: Vec<u32>,
    divisors: Vec<Polynomial>,
    lam: Vec<u32>,
    order: &str,
) -> PyResult<(bool, Option<String>)> {
    let n = f.inner.nvars();
    let ctx = ShadingContext::new(
        divisors.into_iter().map(|g| g.inner).collect(),
        lambda_arg(Some(lam), n)?,
        order_arg(order)?,
    )
    .map_err(err)?;
    let report = ctx.is_stable(&ExponentVector::new(&alpha), &f.inner).map_err(err)?;
    let reason = report
        .violation
        .map(|v| serde_json::to_string(&v).expect("violation JSON"));
    Ok((report.verdict, reason))
}

/// Generators of the vanishing ideal of `grid`. `kind` is `"grid"`,
/// `"punctured"`, `"multigrid"` or `"power"` (with `t`).
#[pyfunction]
#[pyo3(signature = (grid, kind = None, t = 1))]
fn vanishing_basis(grid: &Grid, kind: Option<&str>, t: u32) -> PyResult<Vec<Polynomial>> {
    let input = &grid.inner;
    let basis = match kind.unwrap_or(match input {
        GridInput::Grid(_) => "grid",
        GridInput::Punctured(_) => "punctured",
        GridInput::Multigrid(_) => "multigrid",
    }) {
        "grid" => grid_basis(&input.outer_grid()),
        "power" => grid_power_basis(&input.outer_grid(), t),
        "punctured" => input.to_punctured().and_then(|p| punctured_basis(&p)),
        "multigrid" => input.to_multigrid().and_then(|m| multigrid_basis(&m)),
        other => return Err(PyValueError::new_err(format!("unknown basis kind {other:?}"))),
    }
    .map_err(err)?;
    Ok(wrap_all(basis.generators()))
}

#[pyfunction]
#[pyo3(signature = (generators, order = "grlex"))]
fn is_groebner_basis(generators: Vec<Polynomial>, order: &str) -> PyResult<bool> {
    let gs: Vec<CorePolynomial> = generators.into_iter().map(|g| g.inner).collect();
    buchberger_criterion(&gs, order_arg(order)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (generators, order = "grlex"))]
fn groebner_complete(generators: Vec<Polynomial>, order: &str) -> PyResult<Vec<Polynomial>> {
    let gs: Vec<CorePolynomial> = generators.into_iter().map(|g| g.inner).collect();
    Ok(wrap_all(
        buchberger_complete(&gs, order_arg(order)?).map_err(err)?.generators(),
    ))
}

/// Checks the hypotheses of `theorem` (`cnv`, `cnv-mult`, `nica-mult`,
/// `ballcn2`, `ballcn2cor`, `multiset`) for `f` and `x^alpha` on `grid`.
#[pyfunction]
#[pyo3(signature = (theorem, f, alpha, grid, lam = None, mode = None, t = 1, witness = false))]
#[allow(clippy::too_many_arguments)]
fn check(
    theorem: &str,
    f: &Polynomial,
    alpha: Vec<u32>,
    grid: &Grid,
    lam: Option<Vec<u32>>,
    mode: Option<&str>,
    t: u32,
    witness: bool,
) -> PyResult<Certificate> {
    let tag = theorem.parse().map_err(err)?;
    let lv = lambda_arg(lam, grid.inner.nvars())?;
    let cert = check_theorem(
        tag,
        mode,
        &f.inner,
        &ExponentVector::new(&alpha),
        &grid.inner,
        &lv,
        t,
        witness,
    )
    .map_err(err)?;
    Ok(Certificate { inner: cert })
}

/// Number of points of `grid` where `f` is nonzero, by evaluation.
#[pyfunction]
fn count_nonzeros(grid: &Grid, f: &Polynomial) -> PyResult<u64> {
    let p = grid.inner.to_punctured().map_err(err)?;
    core_count(CountDomain::Punctured(&p), &f.inner).map_err(err)
}

/// The same count through the staircase of the vanishing ideal.
#[pyfunction]
fn clark_count(grid: &Grid, f: &Polynomial) -> PyResult<u64> {
    let p = grid.inner.to_punctured().map_err(err)?;
    core_clark_count(CountDomain::Punctured(&p), &f.inner).map_err(err)
}

/// Lower bounds on the nonzero count: keys `bound_a`, `bound_b`,
/// `part2_applicable`, `empty`, `a_set`, `b_set`.
#[pyfunction]
fn punctured_bounds<'py>(py: Python<'py>, grid: &Grid, f: &Polynomial) -> PyResult<Bound<'py, PyAny>> {
    let p = grid.inner.to_punctured().map_err(err)?;
    let bounds = af_punctured_bounds(&p, &f.inner).map_err(err)?;
    json_to_py(py, &serde_json::to_value(&bounds).expect("bounds JSON"))
}

/// A polynomial attaining the punctured bound for leading exponent `e`,
/// with the bound it attains.
#[pyfunction]
fn sharpness(grid: &Grid, e: Vec<u32>) -> PyResult<(Polynomial, u64)> {
    let p = grid.inner.to_punctured().map_err(err)?;
    let inst = sharpness_construction(&p, &e).map_err(err)?;
    Ok((Polynomial { inner: inst.polynomial }, inst.expected))
}

/// Runs acceptance criteria (all twelve by default); returns
/// `(id, passed, line)` triples.
#[pyfunction]
#[pyo3(signature = (seed = 20_261_016, only = None))]
fn selftest(seed: u64, only: Option<Vec<u8>>) -> PyResult<Vec<(u8, bool, String)>> {
    let ids = only.unwrap_or_else(|| (1..=12).collect());
    if let Some(bad) = ids.iter().find(|&&k| !(1..=12).contains(&k)) {
        return Err(PyValueError::new_err(format!("no criterion {bad}")));
    }
    Ok(ids
        .into_iter()
        .map(|id| {
            let r = run_criterion(id, seed);
            (r.id, r.passed, r.line())
        })
        .collect())
}

#[pymodule]
pub fn nullgrid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NullgridError", m.py().get_type::<NullgridError>())?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Grid>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(divide, m)?)?;
    m.add_function(wrap_pyfunction!(is_lacunary, m)?)?;
    m.add_function(wrap_pyfunction!(max_null_index, m)?)?;
    m.add_function(wrap_pyfunction!(is_stable, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_basis, m)?)?;
    m.add_function(wrap_pyfunction!(is_groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_complete, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(count_nonzeros, m)?)?;
    m.add_function(wrap_pyfunction!(clark_count, m)?)?;
    m.add_function(wrap_pyfunction!(punctured_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
