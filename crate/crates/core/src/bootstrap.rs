//! Swap-curve bootstrap with annual fixed payments, its closed-form inverse,
//! re-bootstrapping under curve shifts and long-tenor diagnostics.

use crate::curve::{par_rates, validate, DiscountCurve, SwapCurve, ValidationReport, STRICT_TOL};
use crate::error::{CurveError, Result};

/// A change applied to every swap rate before re-bootstrapping.
#[derive(Debug, Clone, PartialEq)]
pub enum ShiftScenario {
    /// The same amount added at every tenor.
    Parallel(f64),
    /// One amount per tenor, same length as the curve.
    PerTenor(Vec<f64>),
}

impl ShiftScenario {
    /// Shift amount at 1-based tenor `n`.
    pub fn amount(&self, n: usize) -> f64 {
        match self {
            ShiftScenario::Parallel(y) => *y,
            ShiftScenario::PerTenor(ys) => ys[n - 1],
        }
    }

    pub fn is_parallel(&self) -> bool {
        matches!(self, ShiftScenario::Parallel(_))
    }

    /// `Some(+1)` when every amount is `>= 0` (and one is positive), `Some(-1)`
    /// for the mirror case, `Some(0)` for the identity shift, `None` when the
    /// amounts have mixed signs.
    pub fn sign(&self) -> Option<i8> {
        let amounts: &[f64] = match self {
            ShiftScenario::Parallel(y) => std::slice::from_ref(y),
            ShiftScenario::PerTenor(ys) => ys,
        };
        let any_pos = amounts.iter().any(|&y| y > 0.0);
        let any_neg = amounts.iter().any(|&y| y < 0.0);
        match (any_pos, any_neg) {
            (false, false) => Some(0),
            (true, false) => Some(1),
            (false, true) => Some(-1),
            (true, true) => None,
        }
    }

    /// The shifted swap curve `x_n + y_n`.
    pub fn apply(&self, swaps: &SwapCurve) -> Result<SwapCurve> {
        match self {
            ShiftScenario::Parallel(y) => {
                if !y.is_finite() {
                    return Err(CurveError::Domain(format!("shift {y} is not finite")));
                }
                SwapCurve::new(swaps.rates().iter().map(|x| x + y).collect())
            }
            ShiftScenario::PerTenor(ys) => {
                if ys.len() != swaps.len() {
                    return Err(CurveError::LengthMismatch {
                        expected: swaps.len(),
                        actual: ys.len(),
                    });
                }
                SwapCurve::new(swaps.rates().iter().zip(ys).map(|(x, y)| x + y).collect())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BootstrapMode {
    /// Return the factors together with a validation report.
    #[default]
    Lenient,
    /// Fail on the first `n` with `p_n <= 0` or `p_n >= p_{n-1}`.
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bootstrapped {
    pub curve: DiscountCurve,
    pub report: ValidationReport,
}

/// Recursive bootstrap `p_n = (1 - x_n * P_{n-1}) / (1 + x_n)`.
///
/// No validity checks are applied to the output; see [`bootstrap_checked`].
pub fn bootstrap(swaps: &SwapCurve) -> Result<DiscountCurve> {
    let mut factors = Vec::with_capacity(swaps.len());
    let mut annuity = 0.0;
    for &x in swaps.rates() {
        let p = (1.0 - x * annuity) / (1.0 + x);
        annuity += p;
        factors.push(p);
    }
    DiscountCurve::new(factors)
}

pub fn bootstrap_checked(swaps: &SwapCurve, mode: BootstrapMode) -> Result<Bootstrapped> {
    let curve = bootstrap(swaps)?;
    if mode == BootstrapMode::Strict {
        let mut prev = 1.0;
        for (i, &p) in curve.factors().iter().enumerate() {
            if p <= STRICT_TOL || p >= prev - STRICT_TOL {
                return Err(CurveError::InvalidDiscount { index: i + 1, value: p });
            }
            prev = p;
        }
    }
    let report = validate(&curve);
    Ok(Bootstrapped { curve, report })
}

/// Closed-form inverse of the bootstrap: `x_n = (1 - p_n) / P_n`.
pub fn swap_rates_from_discounts(curve: &DiscountCurve) -> Result<SwapCurve> {
    if let Some(i) = curve.annuities().iter().position(|&a| a == 0.0) {
        return Err(CurveError::Domain(format!("annuity factor vanishes at n = {}", i + 1)));
    }
    par_rates(curve)
}

/// Bootstrap of `x_n + y_n`, i.e. `p_n(y)` and `P_n(y)`.
pub fn shifted_bootstrap(swaps: &SwapCurve, shift: &ShiftScenario) -> Result<DiscountCurve> {
    bootstrap(&shift.apply(swaps)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailConfig {
    /// Bound on `|x_N - x_{N-1}|` for the converged flag.
    pub tolerance: f64,
    /// `p_N` must fall below this for the tail to count as vanishing.
    pub vanishing_threshold: f64,
}

impl Default for TailConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-6,
            vanishing_threshold: 0.05,
        }
    }
}

/// Finite-grid view of the long-end limit of the swap curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitReport {
    pub x_inf_estimate: f64,
    pub last_increment: f64,
    pub converged: bool,
    pub p_tail: f64,
    /// Discount factors strictly decrease over the last quartile of the grid.
    pub tail_monotone: bool,
    pub p_tail_vanishing: bool,
}

pub fn tail_diagnostics(swaps: &SwapCurve, config: &TailConfig) -> Result<LimitReport> {
    let n = swaps.len();
    if n < 2 {
        return Err(CurveError::TooFewPoints { required: 2, actual: n });
    }
    let rates = swaps.rates();
    let curve = bootstrap(swaps)?;
    let factors = curve.factors();

    let last_increment = (rates[n - 1] - rates[n - 2]).abs();
    let window = n.div_ceil(4).max(1);
    let tail = &factors[n - window - 1..];
    let tail_monotone = tail.windows(2).all(|w| w[1] < w[0] - STRICT_TOL);
    let p_tail = factors[n - 1];

    Ok(LimitReport {
        x_inf_estimate: rates[n - 1],
        last_increment,
        converged: last_increment <= config.tolerance,
        p_tail,
        tail_monotone,
        p_tail_vanishing: tail_monotone && p_tail > 0.0 && p_tail < config.vanishing_threshold,
    })
}
