//! Seeded generators for randomized curve checks.
//!
//! Every trial draws from its own ChaCha stream derived from a base seed and
//! the trial index, so trials are independent and reproducible in any order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bootstrap::{bootstrap_checked, BootstrapMode};
use crate::curve::{validate, DiscountCurve, SwapCurve, ZeroCurve};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSpec {
    pub min_len: usize,
    pub max_len: usize,
    pub rate_lo: f64,
    pub rate_hi: f64,
    /// Largest absolute step between neighbouring rates.
    pub step: f64,
}

impl Default for CurveSpec {
    fn default() -> Self {
        Self {
            min_len: 3,
            max_len: 60,
            rate_lo: 0.001,
            rate_hi: 0.12,
            step: 0.004,
        }
    }
}

fn is_valid(swaps: &SwapCurve) -> bool {
    bootstrap_checked(swaps, BootstrapMode::Lenient)
        .map(|b| b.report.is_ok())
        .unwrap_or(false)
}

/// Random-walk swap curve inside `[rate_lo, rate_hi]` whose bootstrap passes
/// validation. Retries until one does.
pub fn random_valid_swap_curve<R: Rng>(rng: &mut R, spec: &CurveSpec) -> SwapCurve {
    loop {
        let len = rng.gen_range(spec.min_len..=spec.max_len);
        let mut x = rng.gen_range(spec.rate_lo..=spec.rate_hi);
        let mut rates = Vec::with_capacity(len);
        for _ in 0..len {
            rates.push(x);
            x = (x + rng.gen_range(-spec.step..=spec.step)).clamp(spec.rate_lo, spec.rate_hi);
        }
        if let Ok(curve) = SwapCurve::new(rates) {
            if is_valid(&curve) {
                return curve;
            }
        }
    }
}

/// Strictly increasing valid swap curve: each step closes a random fraction
/// of the remaining gap to `rate_hi`.
pub fn random_increasing_swap_curve<R: Rng>(rng: &mut R, spec: &CurveSpec) -> SwapCurve {
    loop {
        let len = rng.gen_range(spec.min_len..=spec.max_len);
        let mid = 0.5 * (spec.rate_lo + spec.rate_hi);
        let mut x = rng.gen_range(spec.rate_lo..mid);
        let mut rates = Vec::with_capacity(len);
        for _ in 0..len {
            rates.push(x);
            x += rng.gen_range(0.02..0.3) * (spec.rate_hi - x);
        }
        if let Ok(curve) = SwapCurve::new(rates) {
            if is_valid(&curve) && curve.rates().windows(2).all(|w| w[1] > w[0]) {
                return curve;
            }
        }
    }
}

/// Perturbs every rate by a common offset plus a non-decreasing drift, so a
/// non-decreasing curve stays non-decreasing. Returns `None` if the result
/// leaves the admissible rate range or fails validation.
pub fn perturb_swap_curve<R: Rng>(rng: &mut R, swaps: &SwapCurve, width: f64) -> Option<SwapCurve> {
    let mut drift = rng.gen_range(-width..=width);
    let rates = swaps
        .rates()
        .iter()
        .map(|x| {
            drift += rng.gen_range(0.0..=width / swaps.len() as f64);
            x + drift
        })
        .collect();
    SwapCurve::new(rates).ok().filter(is_valid)
}

/// Zero curve on the integer grid with positive forwards. One third are
/// smooth concave curves, one third are concave curves with a single point
/// pushed down (a local convex kink), the rest are random walks.
pub fn random_zero_curve<R: Rng>(rng: &mut R, max_len: usize) -> ZeroCurve {
    loop {
        let len = rng.gen_range(3..=max_len.max(3));
        let tenors: Vec<f64> = (1..=len).map(|t| t as f64).collect();
        let level = rng.gen_range(0.005..0.04);
        let slope = rng.gen_range(0.0..0.02);
        let mut yields: Vec<f64> = match rng.gen_range(0..3) {
            0 | 1 => tenors.iter().map(|t| level + slope * (1.0 + t).ln()).collect(),
            _ => {
                let mut y = level;
                tenors
                    .iter()
                    .map(|_| {
                        let out = y;
                        y = (y + rng.gen_range(-0.002..0.003)).max(0.0005);
                        out
                    })
                    .collect()
            }
        };
        if rng.gen_bool(0.4) {
            let at = rng.gen_range(1..len - 1);
            yields[at] -= rng.gen_range(0.0002..0.002);
        }
        let Ok(curve) = ZeroCurve::new(tenors, yields) else {
            continue;
        };
        let Ok(discounts) = DiscountCurve::new(curve.discount_factors()) else {
            continue;
        };
        if validate(&discounts).is_ok() {
            return curve;
        }
    }
}
