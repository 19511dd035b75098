//! Zero-cost butterflies: long the wings, short the body.
//!
//! Zero-coupon butterflies are valued with continuous compounding under a
//! parallel move `a` and a horizon `t`; swap butterflies are valued through
//! the annual bootstrap as carry plus mark-to-market. Weights are stored
//! scaled so the short (middle) leg has unit notional.

use std::cmp::Ordering;

use crate::bootstrap::{bootstrap_checked, BootstrapMode, ShiftScenario};
use crate::curve::{validate, DiscountCurve, SwapCurve, ZeroCurve, STRICT_TOL};
use crate::error::{CurveError, Result};
use crate::shape::{check_scan_size, convexity_margin, triple_indices, ScanOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ButterflyKind {
    ZeroBond,
    Swap,
}

impl ButterflyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ButterflyKind::ZeroBond => "zero_bond",
            ButterflyKind::Swap => "swap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Legs {
    /// Maturities in years, `T1 < T2 < T3`.
    ZeroBond { maturities: [f64; 3] },
    /// Grid indices `n < m < k` with the base annuities `P_n, P_m, P_k`.
    Swap { indices: [usize; 3], annuities: [f64; 3] },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Butterfly {
    legs: Legs,
    weights: [f64; 3],
}

impl Butterfly {
    fn from_natural(legs: Legs, natural: [f64; 3]) -> Self {
        let scale = natural[1];
        Self {
            legs,
            weights: [natural[0] / scale, 1.0, natural[2] / scale],
        }
    }

    pub fn kind(&self) -> ButterflyKind {
        match self.legs {
            Legs::ZeroBond { .. } => ButterflyKind::ZeroBond,
            Legs::Swap { .. } => ButterflyKind::Swap,
        }
    }

    pub fn legs(&self) -> &Legs {
        &self.legs
    }

    /// Positive notionals `(λ1, λ2, λ3)`; the middle leg is held short.
    pub fn weights(&self) -> [f64; 3] {
        self.weights
    }

    /// Signed positions `(+λ1, -λ2, +λ3)`, summing to zero.
    pub fn positions(&self) -> [f64; 3] {
        [self.weights[0], -self.weights[1], self.weights[2]]
    }

    /// Unscaled weights: maturity gaps for zero bonds, annuity gaps for swaps.
    pub fn natural_weights(&self) -> [f64; 3] {
        let [a, b, c] = match self.legs {
            Legs::ZeroBond { maturities } => maturities,
            Legs::Swap { annuities, .. } => annuities,
        };
        [c - b, c - a, b - a]
    }

    /// Same butterfly rescaled so the short leg has notional `middle`.
    pub fn with_notional(&self, middle: f64) -> Self {
        Self {
            legs: self.legs,
            weights: self.weights.map(|w| w * middle / self.weights[1]),
        }
    }
}

pub fn zero_butterfly(t1: f64, t2: f64, t3: f64) -> Result<Butterfly> {
    if !(t1 > 0.0 && t1 < t2 && t2 < t3 && t3.is_finite()) {
        return Err(CurveError::LegOrder(format!(
            "maturities {t1}, {t2}, {t3} must satisfy 0 < T1 < T2 < T3"
        )));
    }
    Ok(Butterfly::from_natural(
        Legs::ZeroBond {
            maturities: [t1, t2, t3],
        },
        [t3 - t2, t3 - t1, t2 - t1],
    ))
}

/// Portfolio value after every yield moves by `a` and time advances by `t`:
/// `Σ ±λ_i exp(-a (T_i - t) + y_i t)`, with continuous compounding.
pub fn zero_butterfly_pnl(b: &Butterfly, yields: [f64; 3], a: f64, t: f64) -> Result<f64> {
    let maturities = match b.legs {
        Legs::ZeroBond { maturities } => maturities,
        Legs::Swap { .. } => {
            return Err(CurveError::Domain(
                "zero-bond valuation needs a zero_bond butterfly".into(),
            ))
        }
    };
    if !(t >= 0.0 && t <= maturities[0]) {
        return Err(CurveError::Horizon {
            horizon: t,
            limit: maturities[0],
        });
    }
    let leg = |i: usize| (-a * (maturities[i] - t) + yields[i] * t).exp();
    let [l1, l2, l3] = b.weights;
    Ok(l1 * leg(0) + l3 * leg(2) - l2 * leg(1))
}

/// Weights that neutralise per-leg moves `a_i`:
/// `(a3 T3 - a2 T2, a3 T3 - a1 T1, a2 T2 - a1 T1)`, unscaled.
pub fn nonparallel_weights(moves: [f64; 3], maturities: [f64; 3]) -> Result<[f64; 3]> {
    let [e1, e2, e3] = [0, 1, 2].map(|i| moves[i] * maturities[i]);
    let weights = [e3 - e2, e3 - e1, e2 - e1];
    if weights.iter().any(|&w| !(w > 0.0)) {
        return Err(CurveError::NonPositiveWeight(weights));
    }
    Ok(weights)
}

/// Per-leg yield moves and the horizon they are evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonParallelMove {
    pub movements: [f64; 3],
    pub horizon: f64,
}

impl NonParallelMove {
    pub fn new(movements: [f64; 3], horizon: f64) -> Result<Self> {
        if movements.iter().any(|a| !a.is_finite()) {
            return Err(CurveError::Domain(format!("movements {movements:?} must be finite")));
        }
        if !(horizon >= 0.0 && horizon.is_finite()) {
            return Err(CurveError::Horizon {
                horizon,
                limit: f64::INFINITY,
            });
        }
        Ok(Self { movements, horizon })
    }

    pub fn parallel(a: f64, horizon: f64) -> Result<Self> {
        Self::new([a; 3], horizon)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafetyCheck {
    pub passed: bool,
    /// `(λ1/λ2)(y1 + a1) + (λ3/λ2)(y3 + a3) - (y2 + a2)`.
    pub drift_margin: f64,
    /// `a2 T2 - (λ1/λ2) a1 T1 - (λ3/λ2) a3 T3`.
    pub instantaneous_margin: f64,
    /// The smaller of the two margins.
    pub binding_margin: f64,
    /// Portfolio value at the move's horizon, per unit short notional.
    pub value: f64,
}

/// Checks both sufficient conditions for a non-parallel move to leave the
/// butterfly non-negative at every horizon. Margins are per unit `λ2`.
pub fn nonparallel_safe(
    weights: [f64; 3],
    maturities: [f64; 3],
    yields: [f64; 3],
    mv: &NonParallelMove,
) -> Result<SafetyCheck> {
    let [l1, l2, l3] = weights;
    if weights.iter().any(|&w| !(w > 0.0)) {
        return Err(CurveError::NonPositiveWeight(weights));
    }
    if ((l1 + l3) - l2).abs() > 1e-12 * l2.abs().max(1.0) {
        return Err(CurveError::Domain(format!(
            "weights {weights:?} are not zero-cost (λ1 + λ3 != λ2)"
        )));
    }
    let (w1, w3) = (l1 / l2, l3 / l2);
    let [a1, a2, a3] = mv.movements;
    let [t1, t2, t3] = maturities;
    let [y1, y2, y3] = yields;

    let drift_margin = w1 * (y1 + a1) + w3 * (y3 + a3) - (y2 + a2);
    let instantaneous_margin = a2 * t2 - w1 * a1 * t1 - w3 * a3 * t3;
    let binding_margin = drift_margin.min(instantaneous_margin);

    let t = mv.horizon;
    let leg = |a: f64, m: f64, y: f64| (-a * (m - t) + y * t).exp();
    let value = w1 * leg(a1, t1, y1) + w3 * leg(a3, t3, y3) - leg(a2, t2, y2);

    Ok(SafetyCheck {
        passed: binding_margin >= -STRICT_TOL,
        drift_margin,
        instantaneous_margin,
        binding_margin,
        value,
    })
}

fn check_grid_indices(indices: [usize; 3], len: usize) -> Result<()> {
    let [n, m, k] = indices;
    if !(n >= 1 && n < m && m < k) {
        return Err(CurveError::LegOrder(format!(
            "indices {n}, {m}, {k} must satisfy 1 <= n < m < k"
        )));
    }
    if k > len {
        return Err(CurveError::IndexOutOfRange { index: k, len });
    }
    Ok(())
}

fn swap_butterfly_on(curve: &DiscountCurve, indices: [usize; 3]) -> Result<Butterfly> {
    check_grid_indices(indices, curve.len())?;
    let annuities = [
        curve.annuity(indices[0])?,
        curve.annuity(indices[1])?,
        curve.annuity(indices[2])?,
    ];
    let [a, b, c] = annuities;
    Ok(Butterfly::from_natural(
        Legs::Swap { indices, annuities },
        [c - b, c - a, b - a],
    ))
}

/// Receive fixed on swaps `n` and `k`, pay fixed on `m`, notionals from the
/// base annuities. Each swap is at-market, so inception value is zero.
pub fn swap_butterfly(swaps: &SwapCurve, indices: [usize; 3]) -> Result<Butterfly> {
    check_grid_indices(indices, swaps.len())?;
    let base = bootstrap_checked(swaps, BootstrapMode::Strict)?;
    swap_butterfly_on(&base.curve, indices)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PnlBreakdown {
    /// Accrued fixed-coupon differential `L1`.
    pub carry: f64,
    /// Revaluation after the shift, `L2`.
    pub mark_to_market: f64,
    /// `carry + mark_to_market`.
    pub total: f64,
    /// Annuity of the remaining payments of each leg under the shifted curve.
    pub remaining_annuities: [f64; 3],
}

/// Carry and mark-to-market of a swap butterfly after a parallel move `y`.
///
/// At `t = 0` the remaining annuities are the shifted annuities `P_i(y)`.
/// For `t` in `(0, 1]` carry accrues linearly and the first coupon is
/// removed pro rata: `P_i(y) - t p_1(y)`.
pub fn swap_butterfly_pnl(b: &Butterfly, swaps: &SwapCurve, y: f64, t: f64) -> Result<PnlBreakdown> {
    let indices = match b.legs {
        Legs::Swap { indices, .. } => indices,
        Legs::ZeroBond { .. } => return Err(CurveError::Domain("swap valuation needs a swap butterfly".into())),
    };
    if !(0.0..=1.0).contains(&t) {
        return Err(CurveError::Horizon { horizon: t, limit: 1.0 });
    }
    check_grid_indices(indices, swaps.len())?;

    let shifted_rates = ShiftScenario::Parallel(y).apply(swaps)?;
    let shifted = bootstrap_checked(&shifted_rates, BootstrapMode::Strict)?.curve;
    let first = shifted.factor(1)?;
    let mut remaining = [0.0; 3];
    for (slot, &i) in remaining.iter_mut().zip(&indices) {
        *slot = shifted.annuity(i)? - t * first;
    }

    let [l1, l2, l3] = b.weights;
    let [xn, xm, xk] = [
        swaps.rate(indices[0])?,
        swaps.rate(indices[1])?,
        swaps.rate(indices[2])?,
    ];
    let carry = t * (l1 * xn + l3 * xk - l2 * xm);
    let mark_to_market = y * (l2 * remaining[1] - l1 * remaining[0] - l3 * remaining[2]);

    Ok(PnlBreakdown {
        carry,
        mark_to_market,
        total: carry + mark_to_market,
        remaining_annuities: remaining,
    })
}

/// The curve a scan runs over: zero yields against tenor, or swap rates
/// against annuity factor.
#[derive(Debug, Clone, Copy)]
pub enum ArbitrageCurve<'a> {
    Zero(&'a ZeroCurve),
    Swap(&'a SwapCurve),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    /// 1-based positions in the curve.
    pub indices: [usize; 3],
    /// Tenors (zero curves) or annuity factors (swap curves).
    pub abscissas: [f64; 3],
    pub margin: f64,
    pub butterfly: Butterfly,
}

/// Lists every convex triple, i.e. every butterfly that is an arbitrage
/// under parallel moves, ranked by margin (largest first) and then by
/// indices.
pub fn scan_arbitrage(curve: ArbitrageCurve<'_>, opts: &ScanOptions) -> Result<Vec<Candidate>> {
    let (points, discounts) = match curve {
        ArbitrageCurve::Zero(z) => {
            check_scan_size(z.len(), opts)?;
            let report = validate(&DiscountCurve::new(z.discount_factors())?);
            if !report.is_ok() {
                return Err(CurveError::Validation(report));
            }
            (z.points(), None)
        }
        ArbitrageCurve::Swap(s) => {
            check_scan_size(s.len(), opts)?;
            let booted = bootstrap_checked(s, BootstrapMode::Lenient)?;
            if !booted.report.is_ok() {
                return Err(CurveError::Validation(booted.report));
            }
            let points = booted
                .curve
                .annuities()
                .iter()
                .copied()
                .zip(s.rates().iter().copied())
                .collect();
            (points, Some(booted.curve))
        }
    };

    let mut out = Vec::new();
    for [i, j, k] in triple_indices(points.len(), opts.mode) {
        let triple = [points[i], points[j], points[k]];
        let margin = convexity_margin(triple);
        if margin <= opts.tol {
            continue;
        }
        let indices = [i + 1, j + 1, k + 1];
        let butterfly = match &discounts {
            None => zero_butterfly(triple[0].0, triple[1].0, triple[2].0)?,
            Some(curve) => swap_butterfly_on(curve, indices)?,
        };
        out.push(Candidate {
            indices,
            abscissas: triple.map(|p| p.0),
            margin,
            butterfly,
        });
    }
    out.sort_by(|a, b| {
        b.margin
            .partial_cmp(&a.margin)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.indices.cmp(&b.indices))
    });
    Ok(out)
}
