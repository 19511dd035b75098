//! Yield-curve analytics on an annual grid: conversions between zero yields,
//! discount factors, forwards and par swap rates; the swap bootstrap and its
//! response to curve shifts; convexity classification of discrete curves;
//! and zero-cost butterflies that turn a convex curve into an arbitrage
//! under parallel moves.
//!
//! All rates are decimal fractions per annum. Every operation is a pure
//! function of immutable inputs.

// Negated comparisons are deliberate: NaN must fail every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arbitrage;
pub mod bootstrap;
pub mod curve;
pub mod error;
pub mod lemmas;
pub mod sampling;
pub mod shape;

pub use arbitrage::{
    nonparallel_safe, nonparallel_weights, scan_arbitrage, swap_butterfly, swap_butterfly_pnl, zero_butterfly,
    zero_butterfly_pnl, ArbitrageCurve, Butterfly, ButterflyKind, Candidate, Legs, NonParallelMove, PnlBreakdown,
    SafetyCheck,
};
pub use bootstrap::{
    bootstrap, bootstrap_checked, shifted_bootstrap, swap_rates_from_discounts, tail_diagnostics, BootstrapMode,
    Bootstrapped, LimitReport, ShiftScenario, TailConfig,
};
pub use curve::{
    forward_rates, par_rates, validate, zero_price, zero_yield_from_price, DiscountCurve, ForwardCurve, SwapCurve,
    ValidationReport, Violation, ViolationKind, ZeroCurve,
};
pub use error::{CurveError, Result};
pub use shape::{
    annuity_point_classification, classify_triple, ratio_monotonicity, scan_curve_shape, OverallShape, ScanMode,
    ScanOptions, ShapeReport, TripleClassification, Verdict,
};
