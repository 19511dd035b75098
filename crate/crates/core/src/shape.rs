//! Convexity classification of discrete curves.
//!
//! The basic predicate is the three-point margin
//! `(t3 - t2) v1 + (t2 - t1) v3 - (t3 - t1) v2`, positive for convex
//! triples and negative for concave ones. It equals
//! `(t2 - t1)(t3 - t2)` times the change in slope, so adding an affine
//! function of the abscissa to the values leaves it unchanged.

use std::fmt;

use crate::curve::DiscountCurve;
use crate::error::{CurveError, Result};

/// Default absolute tolerance on the margin.
pub const DEFAULT_SHAPE_TOL: f64 = 1e-9;
/// Largest curve accepted by an all-triples scan without an override.
pub const ALL_TRIPLES_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Convex,
    Concave,
    Affine,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Convex => "convex",
            Verdict::Concave => "concave",
            Verdict::Affine => "affine",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleClassification {
    pub verdict: Verdict,
    pub margin: f64,
}

impl TripleClassification {
    fn from_margin(margin: f64, tol: f64) -> Self {
        let verdict = if margin > tol {
            Verdict::Convex
        } else if margin < -tol {
            Verdict::Concave
        } else {
            Verdict::Affine
        };
        Self { verdict, margin }
    }
}

/// Signed three-point margin. No ordering checks.
pub fn convexity_margin(points: [(f64, f64); 3]) -> f64 {
    let [(t1, v1), (t2, v2), (t3, v3)] = points;
    (t3 - t2) * v1 + (t2 - t1) * v3 - (t3 - t1) * v2
}

pub fn classify_triple(points: [(f64, f64); 3], tol: f64) -> Result<TripleClassification> {
    let [(t1, _), (t2, _), (t3, _)] = points;
    if !(t1 < t2 && t2 < t3) {
        return Err(CurveError::LegOrder(format!(
            "abscissas {t1}, {t2}, {t3} are not strictly increasing"
        )));
    }
    Ok(TripleClassification::from_margin(convexity_margin(points), tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Neighbouring triples `(i, i + 1, i + 2)` only.
    #[default]
    Consecutive,
    /// Every `i < j < k`.
    AllTriples,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub mode: ScanMode,
    pub tol: f64,
    /// Lift the [`ALL_TRIPLES_CAP`] limit.
    pub allow_large: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            mode: ScanMode::Consecutive,
            tol: DEFAULT_SHAPE_TOL,
            allow_large: false,
        }
    }
}

impl ScanOptions {
    pub fn with_mode(mode: ScanMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

/// Index triples (0-based) in lexicographic order.
pub fn triple_indices(len: usize, mode: ScanMode) -> Vec<[usize; 3]> {
    match mode {
        ScanMode::Consecutive => (0..len.saturating_sub(2)).map(|i| [i, i + 1, i + 2]).collect(),
        ScanMode::AllTriples => {
            let mut out = Vec::new();
            for i in 0..len {
                for j in i + 1..len {
                    for k in j + 1..len {
                        out.push([i, j, k]);
                    }
                }
            }
            out
        }
    }
}

pub(crate) fn check_scan_size(len: usize, opts: &ScanOptions) -> Result<()> {
    if len < 3 {
        return Err(CurveError::TooFewPoints {
            required: 3,
            actual: len,
        });
    }
    if opts.mode == ScanMode::AllTriples && len > ALL_TRIPLES_CAP && !opts.allow_large {
        return Err(CurveError::ScanTooLarge {
            points: len,
            cap: ALL_TRIPLES_CAP,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OverallShape {
    /// No triple is convex.
    ConcaveEverywhere,
    /// Convex triples next to concave ones, e.g. a kink in a concave curve.
    ConvexSomewhere,
    /// Convex triples with no concave triple anywhere (convex or flat
    /// throughout).
    Mixed,
}

impl OverallShape {
    pub fn as_str(&self) -> &'static str {
        match self {
            OverallShape::ConcaveEverywhere => "concave_everywhere",
            OverallShape::ConvexSomewhere => "convex_somewhere",
            OverallShape::Mixed => "mixed",
        }
    }
}

impl fmt::Display for OverallShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifiedTriple {
    /// 1-based positions in the scanned point list.
    pub indices: [usize; 3],
    pub classification: TripleClassification,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeReport {
    pub triples: Vec<ClassifiedTriple>,
    pub overall: OverallShape,
}

impl ShapeReport {
    pub fn convex_triples(&self) -> impl Iterator<Item = &ClassifiedTriple> {
        self.triples
            .iter()
            .filter(|t| t.classification.verdict == Verdict::Convex)
    }
}

pub fn scan_curve_shape(points: &[(f64, f64)], opts: &ScanOptions) -> Result<ShapeReport> {
    check_scan_size(points.len(), opts)?;
    if let Some(w) = points.windows(2).position(|w| !(w[0].0 < w[1].0)) {
        return Err(CurveError::TenorOrder { index: w + 2 });
    }

    let triples: Vec<ClassifiedTriple> = triple_indices(points.len(), opts.mode)
        .into_iter()
        .map(|[i, j, k]| ClassifiedTriple {
            indices: [i + 1, j + 1, k + 1],
            classification: TripleClassification::from_margin(
                convexity_margin([points[i], points[j], points[k]]),
                opts.tol,
            ),
        })
        .collect();

    let has = |v: Verdict| triples.iter().any(|t| t.classification.verdict == v);
    let overall = match (has(Verdict::Convex), has(Verdict::Concave)) {
        (false, _) => OverallShape::ConcaveEverywhere,
        (true, true) => OverallShape::ConvexSomewhere,
        (true, false) => OverallShape::Mixed,
    };
    Ok(ShapeReport { triples, overall })
}

fn same_grid(base: &DiscountCurve, shifted: &DiscountCurve) -> Result<()> {
    if base.len() != shifted.len() {
        return Err(CurveError::LengthMismatch {
            expected: base.len(),
            actual: shifted.len(),
        });
    }
    Ok(())
}

/// Classifies the plane points `(P_i, P_i(y))` for `i` in `indices`.
///
/// Index 0 is accepted and denotes the origin `(P_0, P_0(y)) = (0, 0)`.
pub fn annuity_point_classification(
    base: &DiscountCurve,
    shifted: &DiscountCurve,
    indices: [usize; 3],
    tol: f64,
) -> Result<TripleClassification> {
    same_grid(base, shifted)?;
    let [n, m, k] = indices;
    if !(n < m && m < k) {
        return Err(CurveError::LegOrder(format!("indices {n}, {m}, {k}")));
    }
    let point = |i: usize| -> Result<(f64, f64)> { Ok((base.annuity(i)?, shifted.annuity(i)?)) };
    classify_triple([point(n)?, point(m)?, point(k)?], tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioDirection {
    NonIncreasing,
    NonDecreasing,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioCheck {
    pub passed: bool,
    /// `n` (1-based) such that the ratio moves the wrong way between `n`
    /// and `n + 1`.
    pub first_violation: Option<usize>,
    pub ratios: Vec<f64>,
}

/// Checks that `p_n(y) / p_n` is non-increasing in `n`, allowing `tol`
/// of upward noise.
pub fn ratio_monotonicity(base: &DiscountCurve, shifted: &DiscountCurve, tol: f64) -> Result<RatioCheck> {
    ratio_monotonicity_in(base, shifted, RatioDirection::NonIncreasing, tol)
}

pub fn ratio_monotonicity_in(
    base: &DiscountCurve,
    shifted: &DiscountCurve,
    direction: RatioDirection,
    tol: f64,
) -> Result<RatioCheck> {
    same_grid(base, shifted)?;
    let ratios: Vec<f64> = shifted
        .factors()
        .iter()
        .zip(base.factors())
        .map(|(py, p)| py / p)
        .collect();
    let first_violation = ratios
        .windows(2)
        .position(|w| match direction {
            RatioDirection::NonIncreasing => w[1] > w[0] + tol,
            RatioDirection::NonDecreasing => w[1] < w[0] - tol,
        })
        .map(|i| i + 1);
    Ok(RatioCheck {
        passed: first_violation.is_none(),
        first_violation,
        ratios,
    })
}
