//! Curve containers and the elementary conversions between zero yields,
//! discount factors, one-year forwards and par rates.
//!
//! All discrete conversions use annual compounding on an integer-year grid.
//! Grid positions are 1-based throughout (`n = 1..=N`); the implicit
//! `p_0 = 1` and `P_0 = 0` are never stored.

use std::fmt;

use crate::error::{CurveError, Result};

/// Open lower bound for any stored decimal rate.
pub const RATE_FLOOR: f64 = -0.5;
/// Open upper bound for any stored decimal rate.
pub const RATE_CAP: f64 = 1.0;
/// Absolute tolerance for strict monotonicity / positivity checks. Values
/// within the tolerance count as violations.
pub const STRICT_TOL: f64 = 1e-12;

fn check_rate(index: usize, value: f64) -> Result<()> {
    if value.is_finite() && value > RATE_FLOOR && value < RATE_CAP {
        Ok(())
    } else {
        Err(CurveError::RateOutOfRange { index, value })
    }
}

/// Annually compounded zero yields at arbitrary positive tenors.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroCurve {
    tenors: Vec<f64>,
    yields: Vec<f64>,
}

impl ZeroCurve {
    pub fn new(tenors: Vec<f64>, yields: Vec<f64>) -> Result<Self> {
        if tenors.is_empty() {
            return Err(CurveError::TooFewPoints { required: 1, actual: 0 });
        }
        if tenors.len() != yields.len() {
            return Err(CurveError::LengthMismatch {
                expected: tenors.len(),
                actual: yields.len(),
            });
        }
        let mut prev = 0.0;
        for (i, &t) in tenors.iter().enumerate() {
            if !t.is_finite() || t <= prev {
                return Err(CurveError::TenorOrder { index: i + 1 });
            }
            prev = t;
        }
        for (i, &y) in yields.iter().enumerate() {
            check_rate(i + 1, y)?;
        }
        Ok(Self { tenors, yields })
    }

    pub fn tenors(&self) -> &[f64] {
        &self.tenors
    }

    pub fn yields(&self) -> &[f64] {
        &self.yields
    }

    pub fn len(&self) -> usize {
        self.tenors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tenors.is_empty()
    }

    /// `(tenor, yield)` pairs, the natural input for shape scans.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.tenors.iter().copied().zip(self.yields.iter().copied()).collect()
    }

    /// `(1 + y)^(-T)` at every tenor (real-valued exponent).
    pub fn discount_factors(&self) -> Vec<f64> {
        self.tenors
            .iter()
            .zip(&self.yields)
            .map(|(&t, &y)| (1.0 + y).powf(-t))
            .collect()
    }

    /// Linearly interpolated yield for a tenor inside the curve's range.
    pub fn yield_at(&self, tenor: f64) -> Result<f64> {
        let first = self.tenors[0];
        let last = self.tenors[self.tenors.len() - 1];
        if !(tenor >= first && tenor <= last) {
            return Err(CurveError::Domain(format!(
                "tenor {tenor} outside curve range [{first}, {last}]"
            )));
        }
        let hi = self.tenors.partition_point(|&t| t < tenor);
        if self.tenors[hi] == tenor {
            return Ok(self.yields[hi]);
        }
        let (t0, t1) = (self.tenors[hi - 1], self.tenors[hi]);
        let (y0, y1) = (self.yields[hi - 1], self.yields[hi]);
        Ok(y0 + (y1 - y0) * (tenor - t0) / (t1 - t0))
    }

    /// Converts to a discount curve. Requires the tenors to be exactly the
    /// integer grid `1, 2, ..., N`.
    pub fn to_discount_curve(&self) -> Result<DiscountCurve> {
        for (i, &t) in self.tenors.iter().enumerate() {
            if t != (i + 1) as f64 {
                return Err(CurveError::Domain(format!(
                    "tenor {t} at position {} is not on the integer-year grid",
                    i + 1
                )));
            }
        }
        let factors = self
            .yields
            .iter()
            .enumerate()
            .map(|(i, &y)| zero_price(y, (i + 1) as u32))
            .collect::<Result<Vec<_>>>()?;
        DiscountCurve::new(factors)
    }
}

/// Discount factors `p_n` on the integer grid together with their prefix
/// sums, the annuity factors `P_n`.
///
/// Construction only requires finite values; use [`validate`] to check the
/// no-arbitrage conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscountCurve {
    factors: Vec<f64>,
    annuities: Vec<f64>,
}

impl DiscountCurve {
    pub fn new(factors: Vec<f64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(CurveError::TooFewPoints { required: 1, actual: 0 });
        }
        if let Some(i) = factors.iter().position(|p| !p.is_finite()) {
            return Err(CurveError::InvalidDiscount {
                index: i + 1,
                value: factors[i],
            });
        }
        let mut running = 0.0;
        let annuities = factors
            .iter()
            .map(|&p| {
                running += p;
                running
            })
            .collect();
        Ok(Self { factors, annuities })
    }

    pub fn factors(&self) -> &[f64] {
        &self.factors
    }

    pub fn annuities(&self) -> &[f64] {
        &self.annuities
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `p_n` for `n` in `0..=N`, with `p_0 = 1`.
    pub fn factor(&self, n: usize) -> Result<f64> {
        match n {
            0 => Ok(1.0),
            n if n <= self.len() => Ok(self.factors[n - 1]),
            n => Err(CurveError::IndexOutOfRange {
                index: n,
                len: self.len(),
            }),
        }
    }

    /// `P_n` for `n` in `0..=N`, with `P_0 = 0`.
    pub fn annuity(&self, n: usize) -> Result<f64> {
        match n {
            0 => Ok(0.0),
            n if n <= self.len() => Ok(self.annuities[n - 1]),
            n => Err(CurveError::IndexOutOfRange {
                index: n,
                len: self.len(),
            }),
        }
    }
}

/// Par swap rates `x_n` on the integer grid. Also used for par bond rates.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapCurve {
    rates: Vec<f64>,
}

impl SwapCurve {
    pub fn new(rates: Vec<f64>) -> Result<Self> {
        if rates.is_empty() {
            return Err(CurveError::TooFewPoints { required: 1, actual: 0 });
        }
        for (i, &x) in rates.iter().enumerate() {
            check_rate(i + 1, x)?;
        }
        Ok(Self { rates })
    }

    pub fn flat(rate: f64, len: usize) -> Result<Self> {
        Self::new(vec![rate; len])
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    /// `x_n`, 1-based.
    pub fn rate(&self, n: usize) -> Result<f64> {
        if n == 0 || n > self.len() {
            return Err(CurveError::IndexOutOfRange {
                index: n,
                len: self.len(),
            });
        }
        Ok(self.rates[n - 1])
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.rates.windows(2).all(|w| w[1] >= w[0])
    }
}

/// One-year forwards. `forwards()[i]` is the rate for `(i, i + 1)`, so index
/// 0 holds the spot one-year rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardCurve {
    forwards: Vec<f64>,
}

impl ForwardCurve {
    pub fn forwards(&self) -> &[f64] {
        &self.forwards
    }

    pub fn len(&self) -> usize {
        self.forwards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forwards.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    NonDecreasingDiscount,
    NonPositiveDiscount,
    NonPositiveForward,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::NonDecreasingDiscount => "non_decreasing_discount",
            ViolationKind::NonPositiveDiscount => "non_positive_discount",
            ViolationKind::NonPositiveForward => "non_positive_forward",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single failed no-arbitrage condition.
///
/// Discount violations carry the grid position `n` (1-based). Forward
/// violations carry the forward index `i` of the interval `(i, i + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// `1 / (1 + y)^t`.
pub fn zero_price(y: f64, t: u32) -> Result<f64> {
    if t == 0 {
        return Err(CurveError::Domain("maturity must be at least one year".into()));
    }
    if !y.is_finite() || y <= -1.0 {
        return Err(CurveError::Domain(format!("yield {y} must exceed -1")));
    }
    Ok((1.0 + y).powi(t as i32).recip())
}

/// Inverse of [`zero_price`]: `p^(-1/t) - 1`.
pub fn zero_yield_from_price(p: f64, t: u32) -> Result<f64> {
    if t == 0 {
        return Err(CurveError::Domain("maturity must be at least one year".into()));
    }
    if !p.is_finite() || p <= 0.0 {
        return Err(CurveError::Domain(format!("price {p} must be positive")));
    }
    Ok(p.powf(-1.0 / t as f64) - 1.0)
}

/// One-year forwards `f_i = p_i / p_{i+1} - 1`, including `f_0 = 1/p_1 - 1`.
pub fn forward_rates(curve: &DiscountCurve) -> Result<ForwardCurve> {
    if let Some(i) = curve.factors.iter().position(|&p| p == 0.0) {
        return Err(CurveError::Domain(format!("zero discount factor at n = {}", i + 1)));
    }
    let mut prev = 1.0;
    let forwards = curve
        .factors
        .iter()
        .map(|&p| {
            let f = prev / p - 1.0;
            prev = p;
            f
        })
        .collect();
    Ok(ForwardCurve { forwards })
}

/// Par rates `s_i = (1 - p_i) / P_i`.
pub fn par_rates(curve: &DiscountCurve) -> Result<SwapCurve> {
    if let Some(i) = curve.factors.iter().position(|&p| p <= 0.0) {
        return Err(CurveError::Domain(format!(
            "discount factor {} at n = {} must be positive",
            curve.factors[i],
            i + 1
        )));
    }
    let rates = curve
        .factors
        .iter()
        .zip(&curve.annuities)
        .map(|(&p, &annuity)| (1.0 - p) / annuity)
        .collect();
    SwapCurve::new(rates)
}

/// Checks positivity, strict decrease (against `p_0 = 1`) and positive
/// implied forwards. Never fails; violations are reported as data.
pub fn validate(curve: &DiscountCurve) -> ValidationReport {
    let mut violations = Vec::new();
    let mut prev = 1.0;
    for (i, &p) in curve.factors.iter().enumerate() {
        let n = i + 1;
        if p <= STRICT_TOL {
            violations.push(Violation {
                index: n,
                kind: ViolationKind::NonPositiveDiscount,
                value: p,
            });
        }
        if p >= prev - STRICT_TOL {
            violations.push(Violation {
                index: n,
                kind: ViolationKind::NonDecreasingDiscount,
                value: p,
            });
        }
        if p != 0.0 {
            let forward = prev / p - 1.0;
            if !(forward > STRICT_TOL) {
                violations.push(Violation {
                    index: i,
                    kind: ViolationKind::NonPositiveForward,
                    value: forward,
                });
            }
        }
        prev = p;
    }
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn zero_price_examples() {
        assert_eq!(zero_price(0.0, 7).unwrap(), 1.0);
        assert!(close(zero_price(0.05, 1).unwrap(), 0.9523809524, 1e-10));
        assert!(close(zero_price(0.05, 3).unwrap(), 0.8638375985, 1e-10));
        assert!(zero_price(-1.0, 2).is_err());
        assert!(zero_price(-1.5, 2).is_err());
        assert!(zero_price(0.05, 0).is_err());
    }

    #[test]
    fn zero_yield_examples() {
        assert_eq!(zero_yield_from_price(1.0, 5).unwrap(), 0.0);
        assert!(close(zero_yield_from_price(0.9523809524, 1).unwrap(), 0.05, 1e-9));
        assert!(close(zero_yield_from_price(0.8638375985, 3).unwrap(), 0.05, 1e-9));
        assert!(zero_yield_from_price(0.0, 3).is_err());
        assert!(zero_yield_from_price(-0.2, 3).is_err());
    }

    #[test]
    fn forwards_of_flat_curve_are_flat() {
        let y = 0.037;
        let curve = DiscountCurve::new((1..=12).map(|n| zero_price(y, n).unwrap()).collect()).unwrap();
        for f in forward_rates(&curve).unwrap().forwards() {
            assert!(close(*f, y, 1e-13));
        }
    }

    #[test]
    fn forward_hand_example() {
        let curve = DiscountCurve::new(vec![1.0 / 1.02, 1.0 / (1.03 * 1.03)]).unwrap();
        let fwd = forward_rates(&curve).unwrap();
        assert!(close(fwd.forwards()[0], 0.02, 1e-15));
        assert!(close(fwd.forwards()[1], 1.03 * 1.03 / 1.02 - 1.0, 1e-15));
        assert!(close(fwd.forwards()[1], 0.0400980, 1e-7));
    }

    #[test]
    fn forwards_reject_zero_factor() {
        let curve = DiscountCurve::new(vec![0.9, 0.0]).unwrap();
        assert!(forward_rates(&curve).is_err());
    }

    #[test]
    fn par_rate_examples() {
        let curve = DiscountCurve::new(vec![0.9523809524, 0.9070294785]).unwrap();
        let s = par_rates(&curve).unwrap();
        assert!(close(s.rates()[1], 0.05, 1e-9));
        let one = DiscountCurve::new(vec![0.99]).unwrap();
        assert!(close(par_rates(&one).unwrap().rates()[0], 0.01 / 0.99, 1e-15));
        assert!(close(0.01 / 0.99, 0.0101010, 1e-7));
    }

    #[test]
    fn par_of_flat_zero_curve() {
        for &y in &[-0.01, 0.0, 0.02, 0.05, 0.11] {
            let zero = ZeroCurve::new((1..=40).map(f64::from).collect(), vec![y; 40]).unwrap();
            let s = par_rates(&zero.to_discount_curve().unwrap()).unwrap();
            assert!(s.rates().iter().all(|&r| close(r, y, 1e-12)), "y = {y}");
        }
    }

    #[test]
    fn validate_examples() {
        let flat = DiscountCurve::new((1..=10).map(|n| zero_price(0.05, n).unwrap()).collect()).unwrap();
        assert!(validate(&flat).is_ok());

        let report = validate(&DiscountCurve::new(vec![0.95, 0.96]).unwrap());
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.index == 2 && v.kind == ViolationKind::NonDecreasingDiscount));

        let report = validate(&DiscountCurve::new(vec![0.95, -0.1]).unwrap());
        assert!(report
            .violations
            .iter()
            .any(|v| v.index == 2 && v.kind == ViolationKind::NonPositiveDiscount));
    }

    #[test]
    fn validate_checks_against_unit_p0() {
        let report = validate(&DiscountCurve::new(vec![1.0, 0.9]).unwrap());
        assert_eq!(report.first().unwrap().index, 1);
    }

    #[test]
    fn strictness_uses_tolerance() {
        let report = validate(&DiscountCurve::new(vec![0.9, 0.9 - 5e-13]).unwrap());
        assert!(report
            .violations
            .iter()
            .any(|v| v.kind == ViolationKind::NonDecreasingDiscount));
    }

    #[test]
    fn container_invariants() {
        assert!(ZeroCurve::new(vec![], vec![]).is_err());
        assert!(ZeroCurve::new(vec![1.0, 1.0], vec![0.01, 0.02]).is_err());
        assert!(ZeroCurve::new(vec![0.0], vec![0.01]).is_err());
        assert!(ZeroCurve::new(vec![1.0], vec![1.0]).is_err());
        assert!(ZeroCurve::new(vec![1.0, 2.0], vec![0.01]).is_err());
        assert!(SwapCurve::new(vec![0.02, -0.5]).is_err());
        assert!(SwapCurve::new(vec![f64::NAN]).is_err());
        assert!(DiscountCurve::new(vec![0.9, f64::INFINITY]).is_err());

        let c = DiscountCurve::new(vec![0.9, 0.8, 0.7]).unwrap();
        assert_eq!(c.annuity(0).unwrap(), 0.0);
        assert_eq!(c.factor(0).unwrap(), 1.0);
        assert_eq!(c.annuity(2).unwrap(), 0.9 + 0.8);
        assert!(c.annuity(4).is_err());
    }

    #[test]
    fn interpolated_yield() {
        let z = ZeroCurve::new(vec![1.0, 2.0, 5.0], vec![0.02, 0.03, 0.045]).unwrap();
        assert_eq!(z.yield_at(2.0).unwrap(), 0.03);
        assert!(close(z.yield_at(3.5).unwrap(), 0.0375, 1e-15));
        assert!(z.yield_at(0.5).is_err());
        assert!(z.yield_at(6.0).is_err());
    }
}
