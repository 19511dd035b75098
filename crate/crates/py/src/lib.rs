//! Python bindings. Curves are immutable value objects; analysis functions
//! return plain Python containers (lists, tuples, dicts).

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use yieldshape_core as core;
use yieldshape_core::lemmas::{check_all, Outcome};
use yieldshape_core::shape::DEFAULT_SHAPE_TOL;
use yieldshape_core::{BootstrapMode, ScanMode, ScanOptions, ShiftScenario};

create_exception!(
    yieldshape,
    CurveError,
    PyValueError,
    "Invalid curve input or a failed domain check."
);

fn err(e: core::CurveError) -> PyErr {
    CurveError::new_err(e.to_string())
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for core::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn scan_mode(mode: &str) -> PyResult<ScanMode> {
    match mode {
        "consecutive" => Ok(ScanMode::Consecutive),
        "all" => Ok(ScanMode::AllTriples),
        other => Err(PyValueError::new_err(format!(
            "mode must be 'consecutive' or 'all', got {other:?}"
        ))),
    }
}

fn scan_options(mode: &str, tol: f64, allow_large: bool) -> PyResult<ScanOptions> {
    Ok(ScanOptions {
        mode: scan_mode(mode)?,
        tol,
        allow_large,
    })
}

#[derive(FromPyObject)]
enum Shift {
    Parallel(f64),
    PerTenor(Vec<f64>),
}

impl From<Shift> for ShiftScenario {
    fn from(s: Shift) -> Self {
        match s {
            Shift::Parallel(y) => ShiftScenario::Parallel(y),
            Shift::PerTenor(v) => ShiftScenario::PerTenor(v),
        }
    }
}

#[pyclass(frozen, skip_from_py_object, name = "ZeroCurve", module = "yieldshape")]
#[derive(Clone)]
pub struct PyZeroCurve {
    inner: core::ZeroCurve,
}

#[pymethods]
impl PyZeroCurve {
    #[new]
    fn new(tenors: Vec<f64>, yields: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: core::ZeroCurve::new(tenors, yields).or_raise()?,
        })
    }

    #[getter]
    fn tenors(&self) -> Vec<f64> {
        self.inner.tenors().to_vec()
    }

    #[getter]
    fn yields(&self) -> Vec<f64> {
        self.inner.yields().to_vec()
    }

    fn discount_factors(&self) -> Vec<f64> {
        self.inner.discount_factors()
    }

    fn yield_at(&self, tenor: f64) -> PyResult<f64> {
        self.inner.yield_at(tenor).or_raise()
    }

    /// Requires tenors 1, 2, ..., N.
    fn to_discount_curve(&self) -> PyResult<PyDiscountCurve> {
        Ok(PyDiscountCurve {
            inner: self.inner.to_discount_curve().or_raise()?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "ZeroCurve(tenors={:?}, yields={:?})",
            self.inner.tenors(),
            self.inner.yields()
        )
    }
}

#[pyclass(frozen, skip_from_py_object, name = "DiscountCurve", module = "yieldshape")]
#[derive(Clone)]
pub struct PyDiscountCurve {
    inner: core::DiscountCurve,
}

#[pymethods]
impl PyDiscountCurve {
    #[new]
    fn new(factors: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: core::DiscountCurve::new(factors).or_raise()?,
        })
    }

    #[getter]
    fn factors(&self) -> Vec<f64> {
        self.inner.factors().to_vec()
    }

    #[getter]
    fn annuities(&self) -> Vec<f64> {
        self.inner.annuities().to_vec()
    }

    /// `p_n` with `p_0 = 1`.
    fn factor(&self, n: usize) -> PyResult<f64> {
        self.inner.factor(n).or_raise()
    }

    /// `P_n` with `P_0 = 0`.
    fn annuity(&self, n: usize) -> PyResult<f64> {
        self.inner.annuity(n).or_raise()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("DiscountCurve(factors={:?})", self.inner.factors())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "SwapCurve", module = "yieldshape")]
#[derive(Clone)]
pub struct PySwapCurve {
    inner: core::SwapCurve,
}

#[pymethods]
impl PySwapCurve {
    #[new]
    fn new(rates: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: core::SwapCurve::new(rates).or_raise()?,
        })
    }

    #[staticmethod]
    fn flat(rate: f64, length: usize) -> PyResult<Self> {
        Ok(Self {
            inner: core::SwapCurve::flat(rate, length).or_raise()?,
        })
    }

    #[getter]
    fn rates(&self) -> Vec<f64> {
        self.inner.rates().to_vec()
    }

    fn is_non_decreasing(&self) -> bool {
        self.inner.is_non_decreasing()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("SwapCurve(rates={:?})", self.inner.rates())
    }
}

#[pyclass(frozen, skip_from_py_object, name = "Butterfly", module = "yieldshape")]
#[derive(Clone)]
pub struct PyButterfly {
    inner: core::Butterfly,
}

#[pymethods]
impl PyButterfly {
    /// `"zero_bond"` or `"swap"`.
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().as_str()
    }

    /// Maturities for zero-bond legs, 1-based tenor indices for swap legs.
    #[getter]
    fn legs(&self) -> (f64, f64, f64) {
        match self.inner.legs() {
            core::Legs::ZeroBond { maturities: [a, b, c] } => (*a, *b, *c),
            core::Legs::Swap { indices: [a, b, c], .. } => (*a as f64, *b as f64, *c as f64),
        }
    }

    /// Leg weights with the middle weight normalised to 1.
    #[getter]
    fn weights(&self) -> [f64; 3] {
        self.inner.weights()
    }

    /// Signed positions: long wings, short body.
    #[getter]
    fn positions(&self) -> [f64; 3] {
        self.inner.positions()
    }

    #[getter]
    fn natural_weights(&self) -> [f64; 3] {
        self.inner.natural_weights()
    }

    fn with_notional(&self, middle: f64) -> Self {
        Self {
            inner: self.inner.with_notional(middle),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Butterfly(kind={:?}, legs={:?}, weights={:?})",
            self.kind(),
            self.legs(),
            self.weights()
        )
    }
}

#[pyfunction]
fn zero_price(y: f64, t: u32) -> PyResult<f64> {
    core::zero_price(y, t).or_raise()
}

#[pyfunction]
fn zero_yield_from_price(p: f64, t: u32) -> PyResult<f64> {
    core::zero_yield_from_price(p, t).or_raise()
}

/// `[f_0, ..., f_{N-1}]` with `f_0 = 1/p_1 - 1`.
#[pyfunction]
fn forward_rates(curve: &PyDiscountCurve) -> PyResult<Vec<f64>> {
    Ok(core::forward_rates(&curve.inner).or_raise()?.forwards().to_vec())
}

#[pyfunction]
fn par_rates(curve: &PyDiscountCurve) -> PyResult<PySwapCurve> {
    Ok(PySwapCurve {
        inner: core::par_rates(&curve.inner).or_raise()?,
    })
}

/// Violations as `(index, kind, value)`; empty when the curve is valid.
#[pyfunction]
fn validate(curve: &PyDiscountCurve) -> Vec<(usize, &'static str, f64)> {
    core::validate(&curve.inner)
        .violations
        .iter()
        .map(|v| (v.index, v.kind.as_str(), v.value))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (swaps, strict = false))]
fn bootstrap(swaps: &PySwapCurve, strict: bool) -> PyResult<PyDiscountCurve> {
    let mode = if strict {
        BootstrapMode::Strict
    } else {
        BootstrapMode::Lenient
    };
    Ok(PyDiscountCurve {
        inner: core::bootstrap_checked(&swaps.inner, mode).or_raise()?.curve,
    })
}

/// `shift` is a parallel amount or one amount per tenor.
#[pyfunction]
fn shifted_bootstrap(swaps: &PySwapCurve, shift: Shift) -> PyResult<PyDiscountCurve> {
    Ok(PyDiscountCurve {
        inner: core::shifted_bootstrap(&swaps.inner, &shift.into()).or_raise()?,
    })
}

#[pyfunction]
fn swap_rates_from_discounts(curve: &PyDiscountCurve) -> PyResult<PySwapCurve> {
    Ok(PySwapCurve {
        inner: core::swap_rates_from_discounts(&curve.inner).or_raise()?,
    })
}

#[pyfunction]
#[pyo3(signature = (swaps, tolerance = 1e-6, vanishing_threshold = 0.05))]
fn tail_diagnostics<'py>(
    py: Python<'py>,
    swaps: &PySwapCurve,
    tolerance: f64,
    vanishing_threshold: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = core::tail_diagnostics(
        &swaps.inner,
        &core::TailConfig {
            tolerance,
            vanishing_threshold,
        },
    )
    .or_raise()?;
    let d = PyDict::new(py);
    d.set_item("x_inf_estimate", r.x_inf_estimate)?;
    d.set_item("last_increment", r.last_increment)?;
    d.set_item("converged", r.converged)?;
    d.set_item("p_tail", r.p_tail)?;
    d.set_item("tail_monotone", r.tail_monotone)?;
    d.set_item("p_tail_vanishing", r.p_tail_vanishing)?;
    Ok(d)
}

/// `(verdict, margin)` for three points with increasing abscissas.
#[pyfunction]
#[pyo3(signature = (points, tol = DEFAULT_SHAPE_TOL))]
fn classify_triple(points: [(f64, f64); 3], tol: f64) -> PyResult<(&'static str, f64)> {
    let c = core::classify_triple(points, tol).or_raise()?;
    Ok((c.verdict.as_str(), c.margin))
}

/// `{"overall": str, "triples": [((i, j, k), verdict, margin), ...]}` with
/// 1-based indices.
#[pyfunction]
#[pyo3(signature = (points, mode = "consecutive", tol = DEFAULT_SHAPE_TOL, allow_large = false))]
fn scan_curve_shape<'py>(
    py: Python<'py>,
    points: Vec<(f64, f64)>,
    mode: &str,
    tol: f64,
    allow_large: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let report = core::scan_curve_shape(&points, &scan_options(mode, tol, allow_large)?).or_raise()?;
    let triples: Vec<([usize; 3], &'static str, f64)> = report
        .triples
        .iter()
        .map(|t| (t.indices, t.classification.verdict.as_str(), t.classification.margin))
        .collect();
    let d = PyDict::new(py);
    d.set_item("overall", report.overall.as_str())?;
    d.set_item("triples", triples)?;
    Ok(d)
}

/// Monotonicity of `p_n(y)/p_n`; `first_violation` is the `n` where the
/// ratio rises from `n` to `n + 1`.
#[pyfunction]
#[pyo3(signature = (base, shifted, tol = 1e-12))]
fn ratio_monotonicity<'py>(
    py: Python<'py>,
    base: &PyDiscountCurve,
    shifted: &PyDiscountCurve,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = core::ratio_monotonicity(&base.inner, &shifted.inner, tol).or_raise()?;
    let d = PyDict::new(py);
    d.set_item("passed", r.passed)?;
    d.set_item("first_violation", r.first_violation)?;
    d.set_item("ratios", r.ratios)?;
    Ok(d)
}

/// Classifies the points `(P_i, P_i(y))`; index 0 is the origin.
#[pyfunction]
#[pyo3(signature = (base, shifted, indices, tol = DEFAULT_SHAPE_TOL))]
fn annuity_point_classification(
    base: &PyDiscountCurve,
    shifted: &PyDiscountCurve,
    indices: [usize; 3],
    tol: f64,
) -> PyResult<(&'static str, f64)> {
    let c = core::annuity_point_classification(&base.inner, &shifted.inner, indices, tol).or_raise()?;
    Ok((c.verdict.as_str(), c.margin))
}

#[pyfunction]
fn zero_butterfly(t1: f64, t2: f64, t3: f64) -> PyResult<PyButterfly> {
    Ok(PyButterfly {
        inner: core::zero_butterfly(t1, t2, t3).or_raise()?,
    })
}

/// Value at horizon `t` after a parallel move `a` of the leg yields.
#[pyfunction]
fn zero_butterfly_pnl(butterfly: &PyButterfly, yields: [f64; 3], a: f64, t: f64) -> PyResult<f64> {
    core::zero_butterfly_pnl(&butterfly.inner, yields, a, t).or_raise()
}

#[pyfunction]
fn nonparallel_weights(moves: [f64; 3], maturities: [f64; 3]) -> PyResult<[f64; 3]> {
    core::nonparallel_weights(moves, maturities).or_raise()
}

#[pyfunction]
fn nonparallel_safe<'py>(
    py: Python<'py>,
    weights: [f64; 3],
    maturities: [f64; 3],
    yields: [f64; 3],
    movements: [f64; 3],
    horizon: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let mv = core::NonParallelMove::new(movements, horizon).or_raise()?;
    let s = core::nonparallel_safe(weights, maturities, yields, &mv).or_raise()?;
    let d = PyDict::new(py);
    d.set_item("passed", s.passed)?;
    d.set_item("drift_margin", s.drift_margin)?;
    d.set_item("instantaneous_margin", s.instantaneous_margin)?;
    d.set_item("binding_margin", s.binding_margin)?;
    d.set_item("value", s.value)?;
    Ok(d)
}

#[pyfunction]
fn swap_butterfly(swaps: &PySwapCurve, indices: [usize; 3]) -> PyResult<PyButterfly> {
    Ok(PyButterfly {
        inner: core::swap_butterfly(&swaps.inner, indices).or_raise()?,
    })
}

#[pyfunction]
fn swap_butterfly_pnl<'py>(
    py: Python<'py>,
    butterfly: &PyButterfly,
    swaps: &PySwapCurve,
    y: f64,
    t: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let p = core::swap_butterfly_pnl(&butterfly.inner, &swaps.inner, y, t).or_raise()?;
    let d = PyDict::new(py);
    d.set_item("carry", p.carry)?;
    d.set_item("mark_to_market", p.mark_to_market)?;
    d.set_item("total", p.total)?;
    d.set_item("remaining_annuities", p.remaining_annuities)?;
    Ok(d)
}

#[derive(FromPyObject)]
enum ScanTarget<'py> {
    Zero(Bound<'py, PyZeroCurve>),
    Swap(Bound<'py, PySwapCurve>),
}

/// Convex triples ranked by margin, each with its butterfly.
#[pyfunction]
#[pyo3(signature = (curve, mode = "consecutive", tol = DEFAULT_SHAPE_TOL, allow_large = false))]
fn scan_arbitrage<'py>(
    py: Python<'py>,
    curve: ScanTarget<'py>,
    mode: &str,
    tol: f64,
    allow_large: bool,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let opts = scan_options(mode, tol, allow_large)?;
    let candidates = match &curve {
        ScanTarget::Zero(z) => core::scan_arbitrage(core::ArbitrageCurve::Zero(&z.get().inner), &opts),
        ScanTarget::Swap(s) => core::scan_arbitrage(core::ArbitrageCurve::Swap(&s.get().inner), &opts),
    }
    .or_raise()?;
    candidates
        .into_iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("indices", c.indices)?;
            d.set_item("abscissas", c.abscissas)?;
            d.set_item("margin", c.margin)?;
            d.set_item("butterfly", PyButterfly { inner: c.butterfly })?;
            Ok(d)
        })
        .collect()
}

/// One dict per lemma: `name`, `status` (`"pass"`, `"fail"`, `"skipped"`),
/// and `index`/`value` for failures or `reason` for skips.
#[pyfunction]
fn check_lemmas<'py>(py: Python<'py>, swaps: &PySwapCurve, shift: Shift) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let checks = check_all(&swaps.inner, &shift.into()).or_raise()?;
    checks
        .into_iter()
        .map(|c| {
            let d = PyDict::new(py);
            d.set_item("name", c.lemma.name())?;
            match c.outcome {
                Outcome::Pass => d.set_item("status", "pass")?,
                Outcome::Fail { index, value } => {
                    d.set_item("status", "fail")?;
                    d.set_item("index", index)?;
                    d.set_item("value", value)?;
                }
                Outcome::Skipped(reason) => {
                    d.set_item("status", "skipped")?;
                    d.set_item("reason", reason)?;
                }
            }
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn yieldshape(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds every class, function and the exception type to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CurveError", m.py().get_type::<CurveError>())?;
    m.add_class::<PyZeroCurve>()?;
    m.add_class::<PyDiscountCurve>()?;
    m.add_class::<PySwapCurve>()?;
    m.add_class::<PyButterfly>()?;
    m.add_function(wrap_pyfunction!(zero_price, m)?)?;
    m.add_function(wrap_pyfunction!(zero_yield_from_price, m)?)?;
    m.add_function(wrap_pyfunction!(forward_rates, m)?)?;
    m.add_function(wrap_pyfunction!(par_rates, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(bootstrap, m)?)?;
    m.add_function(wrap_pyfunction!(shifted_bootstrap, m)?)?;
    m.add_function(wrap_pyfunction!(swap_rates_from_discounts, m)?)?;
    m.add_function(wrap_pyfunction!(tail_diagnostics, m)?)?;
    m.add_function(wrap_pyfunction!(classify_triple, m)?)?;
    m.add_function(wrap_pyfunction!(scan_curve_shape, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_monotonicity, m)?)?;
    m.add_function(wrap_pyfunction!(annuity_point_classification, m)?)?;
    m.add_function(wrap_pyfunction!(zero_butterfly, m)?)?;
    m.add_function(wrap_pyfunction!(zero_butterfly_pnl, m)?)?;
    m.add_function(wrap_pyfunction!(nonparallel_weights, m)?)?;
    m.add_function(wrap_pyfunction!(nonparallel_safe, m)?)?;
    m.add_function(wrap_pyfunction!(swap_butterfly, m)?)?;
    m.add_function(wrap_pyfunction!(swap_butterfly_pnl, m)?)?;
    m.add_function(wrap_pyfunction!(scan_arbitrage, m)?)?;
    m.add_function(wrap_pyfunction!(check_lemmas, m)?)?;
    Ok(())
}
