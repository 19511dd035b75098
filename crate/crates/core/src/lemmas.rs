//! Numerical checks of how discount and annuity factors respond to a swap
//! curve shift. Each check returns a structured outcome carrying the first
//! violating grid index, so callers can report where a property broke.
//!
//! Weak inequalities allow [`LEMMA_TOL`] of slack; strict inequalities are
//! compared exactly.

use std::fmt;

use crate::bootstrap::{bootstrap, bootstrap_checked, BootstrapMode, ShiftScenario};
use crate::curve::{DiscountCurve, SwapCurve};
use crate::error::Result;
use crate::shape::{
    annuity_point_classification, ratio_monotonicity_in, triple_indices, RatioDirection, ScanMode, Verdict,
};

pub const LEMMA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma {
    /// Sign-definite shifts move every annuity factor the opposite way.
    AnnuityOrder,
    /// `[p/P - p(y)/P(y)] + [1/P(y) - 1/P] = y`, each bracket between 0 and y.
    BracketIdentity,
    /// `p(y)/P(y) < p/P < 1/P < 1/P(y)` for `n >= 2` (mirrored for y < 0).
    OrderingChain,
    /// Parallel shifts move every discount factor the opposite way.
    DiscountOrder,
    /// `P_n(y)/P_n` strictly monotone in `n`.
    AnnuityRatio,
    /// `p_n(y)/p_n` monotone in `n` on a non-decreasing curve.
    DiscountRatio,
    /// Ratio monotonicity holds iff every annuity-point triple has the
    /// matching shape.
    AnnuityPointShape,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [
        Lemma::AnnuityOrder,
        Lemma::BracketIdentity,
        Lemma::OrderingChain,
        Lemma::DiscountOrder,
        Lemma::AnnuityRatio,
        Lemma::DiscountRatio,
        Lemma::AnnuityPointShape,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Lemma::AnnuityOrder => "annuity_order",
            Lemma::BracketIdentity => "bracket_identity",
            Lemma::OrderingChain => "ordering_chain",
            Lemma::DiscountOrder => "discount_order",
            Lemma::AnnuityRatio => "annuity_ratio",
            Lemma::DiscountRatio => "discount_ratio",
            Lemma::AnnuityPointShape => "annuity_point_shape",
        }
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    /// First failing grid index and the offending quantity.
    Fail {
        index: usize,
        value: f64,
    },
    Skipped(&'static str),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheck {
    pub lemma: Lemma,
    pub outcome: Outcome,
}

impl LemmaCheck {
    fn new(lemma: Lemma, outcome: Outcome) -> Self {
        Self { lemma, outcome }
    }

    fn first_failure(lemma: Lemma, failure: Option<(usize, f64)>) -> Self {
        let outcome = match failure {
            Some((index, value)) => Outcome::Fail { index, value },
            None => Outcome::Pass,
        };
        Self { lemma, outcome }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

fn columns(c: &DiscountCurve) -> (&[f64], &[f64]) {
    (c.factors(), c.annuities())
}

/// `P_n(y) <= P_n` when `sign > 0`, `P_n(y) >= P_n` when `sign < 0`.
pub fn check_annuity_order(base: &DiscountCurve, shifted: &DiscountCurve, sign: i8) -> LemmaCheck {
    let lemma = Lemma::AnnuityOrder;
    if sign == 0 {
        return LemmaCheck::new(lemma, Outcome::Skipped("identity shift"));
    }
    let s = f64::from(sign);
    let failure = base
        .annuities()
        .iter()
        .zip(shifted.annuities())
        .enumerate()
        .find(|(_, (p, py))| s * (*py - *p) > LEMMA_TOL)
        .map(|(i, (p, py))| (i + 1, py - p));
    LemmaCheck::first_failure(lemma, failure)
}

/// The two brackets sum to `y` and each lies between 0 and `y`.
pub fn check_bracket_identity(base: &DiscountCurve, shifted: &DiscountCurve, y: f64) -> LemmaCheck {
    let (p, ann) = columns(base);
    let (py, ann_y) = columns(shifted);
    let (lo, hi) = if y >= 0.0 { (0.0, y) } else { (y, 0.0) };
    let within = |v: f64| v >= lo - LEMMA_TOL && v <= hi + LEMMA_TOL;
    let failure = (0..p.len()).find_map(|i| {
        let first = p[i] / ann[i] - py[i] / ann_y[i];
        let second = 1.0 / ann_y[i] - 1.0 / ann[i];
        let gap = first + second - y;
        if gap.abs() > LEMMA_TOL {
            Some((i + 1, gap))
        } else if !within(first) {
            Some((i + 1, first))
        } else if !within(second) {
            Some((i + 1, second))
        } else {
            None
        }
    });
    LemmaCheck::first_failure(Lemma::BracketIdentity, failure)
}

/// For `y > 0` and `n >= 2`: `p(y)/P(y) < p/P < 1/P < 1/P(y)`. For `y < 0`
/// the roles of the two curves swap, so the shifted curve must be valid.
pub fn check_ordering_chain(base: &DiscountCurve, shifted: &DiscountCurve, y: f64) -> LemmaCheck {
    let lemma = Lemma::OrderingChain;
    if y == 0.0 {
        return LemmaCheck::new(lemma, Outcome::Skipped("identity shift"));
    }
    let (low, high) = if y > 0.0 { (shifted, base) } else { (base, shifted) };
    let (p_lo, a_lo) = columns(low);
    let (p_hi, a_hi) = columns(high);
    let failure = (1..p_lo.len()).find_map(|i| {
        let chain = [p_lo[i] / a_lo[i], p_hi[i] / a_hi[i], 1.0 / a_hi[i], 1.0 / a_lo[i]];
        chain.windows(2).find(|w| !(w[0] < w[1])).map(|w| (i + 1, w[1] - w[0]))
    });
    LemmaCheck::first_failure(lemma, failure)
}

/// `p_n(y) < p_n` for every `n` when `y > 0` (reversed for `y < 0`).
pub fn check_discount_order(base: &DiscountCurve, shifted: &DiscountCurve, y: f64) -> LemmaCheck {
    let lemma = Lemma::DiscountOrder;
    if y == 0.0 {
        return LemmaCheck::new(lemma, Outcome::Skipped("identity shift"));
    }
    let failure = base
        .factors()
        .iter()
        .zip(shifted.factors())
        .enumerate()
        .find(|(_, (p, py))| if y > 0.0 { !(py < p) } else { !(py > p) })
        .map(|(i, (p, py))| (i + 1, py - p));
    LemmaCheck::first_failure(lemma, failure)
}

/// `P_n(y)/P_n` strictly decreasing for `y > 0`, strictly increasing for
/// `y < 0`. The reported index `n` is where the step to `n + 1` fails.
pub fn check_annuity_ratio(base: &DiscountCurve, shifted: &DiscountCurve, y: f64) -> LemmaCheck {
    let lemma = Lemma::AnnuityRatio;
    if y == 0.0 {
        return LemmaCheck::new(lemma, Outcome::Skipped("identity shift"));
    }
    let ratios: Vec<f64> = shifted
        .annuities()
        .iter()
        .zip(base.annuities())
        .map(|(a, b)| a / b)
        .collect();
    let failure = ratios
        .windows(2)
        .position(|w| if y > 0.0 { !(w[1] < w[0]) } else { !(w[1] > w[0]) })
        .map(|i| (i + 1, ratios[i + 1] - ratios[i]));
    LemmaCheck::first_failure(lemma, failure)
}

/// `p_n(y)/p_n` non-increasing for positive shifts, non-decreasing for
/// negative ones.
pub fn check_discount_ratio(base: &DiscountCurve, shifted: &DiscountCurve, sign: i8) -> Result<LemmaCheck> {
    let lemma = Lemma::DiscountRatio;
    let direction = match sign {
        1 => RatioDirection::NonIncreasing,
        -1 => RatioDirection::NonDecreasing,
        _ => return Ok(LemmaCheck::new(lemma, Outcome::Skipped("shift is not sign-definite"))),
    };
    let check = ratio_monotonicity_in(base, shifted, direction, LEMMA_TOL)?;
    Ok(LemmaCheck::first_failure(
        lemma,
        check
            .first_violation
            .map(|n| (n, check.ratios[n] - check.ratios[n - 1])),
    ))
}

/// Brute-force equivalence between ratio monotonicity and the shape of the
/// points `(P_i, P_i(y))`, `i = 0..=N` (index 0 is the origin). Fails at the
/// first triple where the two disagree, reporting its middle index.
pub fn check_annuity_point_shape(base: &DiscountCurve, shifted: &DiscountCurve, sign: i8) -> Result<LemmaCheck> {
    let lemma = Lemma::AnnuityPointShape;
    let (direction, wrong) = match sign {
        1 => (RatioDirection::NonIncreasing, Verdict::Convex),
        -1 => (RatioDirection::NonDecreasing, Verdict::Concave),
        _ => return Ok(LemmaCheck::new(lemma, Outcome::Skipped("shift is not sign-definite"))),
    };
    let monotone = ratio_monotonicity_in(base, shifted, direction, LEMMA_TOL)?.passed;
    let mut offending = None;
    for [n, m, k] in triple_indices(base.len() + 1, ScanMode::AllTriples) {
        let c = annuity_point_classification(base, shifted, [n, m, k], LEMMA_TOL)?;
        if c.verdict == wrong {
            offending = Some((m, c.margin));
            break;
        }
    }
    let failure = match (monotone, offending) {
        // monotone ratio but a wrongly shaped triple
        (true, Some(hit)) => Some(hit),
        // broken ratio but every triple looks fine
        (false, None) => Some((0, f64::NAN)),
        _ => None,
    };
    Ok(LemmaCheck::first_failure(lemma, failure))
}

/// Runs every check for one base curve and shift.
///
/// Checks whose hypotheses the shift cannot satisfy are skipped: the bracket,
/// ordering, discount-order and annuity-ratio checks need a parallel move;
/// the sign-based checks need a sign-definite move; the ratio checks need a
/// valid shifted curve. The discount-ratio check is otherwise always run, so
/// a non-parallel bump or a non-monotone curve shows up as a failure.
pub fn check_all(swaps: &SwapCurve, shift: &ShiftScenario) -> Result<Vec<LemmaCheck>> {
    let base = bootstrap(swaps)?;
    let shifted_rates = shift.apply(swaps)?;
    let shifted = bootstrap(&shifted_rates)?;
    let shifted_valid = bootstrap_checked(&shifted_rates, BootstrapMode::Lenient)?
        .report
        .is_ok();
    let sign = shift.sign();
    let parallel = match shift {
        ShiftScenario::Parallel(y) if *y != 0.0 => Some(*y),
        _ => None,
    };

    let needs_parallel = |lemma| LemmaCheck::new(lemma, Outcome::Skipped("needs a non-zero parallel shift"));
    let mut out = Vec::with_capacity(Lemma::ALL.len());

    out.push(match sign {
        Some(s) => check_annuity_order(&base, &shifted, s),
        None => LemmaCheck::new(Lemma::AnnuityOrder, Outcome::Skipped("shift is not sign-definite")),
    });
    match parallel {
        Some(y) => {
            out.push(check_bracket_identity(&base, &shifted, y));
            out.push(if y > 0.0 || shifted_valid {
                check_ordering_chain(&base, &shifted, y)
            } else {
                LemmaCheck::new(Lemma::OrderingChain, Outcome::Skipped("shifted curve fails validation"))
            });
            out.push(check_discount_order(&base, &shifted, y));
            out.push(check_annuity_ratio(&base, &shifted, y));
        }
        None => {
            for lemma in [
                Lemma::BracketIdentity,
                Lemma::OrderingChain,
                Lemma::DiscountOrder,
                Lemma::AnnuityRatio,
            ] {
                out.push(needs_parallel(lemma));
            }
        }
    }
    let s = sign.unwrap_or(0);
    if shifted_valid {
        out.push(check_discount_ratio(&base, &shifted, s)?);
        out.push(check_annuity_point_shape(&base, &shifted, s)?);
    } else {
        for lemma in [Lemma::DiscountRatio, Lemma::AnnuityPointShape] {
            out.push(LemmaCheck::new(
                lemma,
                Outcome::Skipped("shifted curve fails validation"),
            ));
        }
    }
    Ok(out)
}
