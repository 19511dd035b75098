//! Command implementations. Each returns a rendered [`Report`].

use std::fmt::Write;

use yieldshape_core::lemmas::{check_all, Lemma, Outcome};
use yieldshape_core::sampling::{perturb_swap_curve, trial_rng};
use yieldshape_core::shape::DEFAULT_SHAPE_TOL;
use yieldshape_core::{
    bootstrap, bootstrap_checked, classify_triple, forward_rates, par_rates, scan_arbitrage, swap_butterfly,
    swap_butterfly_pnl, validate, zero_butterfly, zero_butterfly_pnl, ArbitrageCurve, BootstrapMode, Butterfly,
    DiscountCurve, ScanMode, ScanOptions, ShiftScenario, SwapCurve, ZeroCurve,
};

use crate::input::{CurveFile, CurveType};
use crate::{ButterflyArgs, Cli, CliError, Command, InputArgs, Kind, Mode, PnlArgs, Report, ScanArgs, VerifyArgs};

const BP: f64 = 1e-4;
/// Width of the random drift applied to the file's curve in `verify` trials.
const TRIAL_WIDTH: f64 = 0.0025;
const TRIAL_ATTEMPTS: usize = 64;

/// Fixed 12-decimal rendering; negative zero prints unsigned.
pub fn num(v: f64) -> String {
    let s = format!("{v:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let tol = match cli.tol {
        None => DEFAULT_SHAPE_TOL,
        Some(t) if t.is_finite() && t >= 0.0 => t,
        Some(t) => {
            return Err(CliError::Domain(format!(
                "tolerance must be finite and non-negative, got {t}"
            )))
        }
    };
    match &cli.command {
        Command::Bootstrap(a) => cmd_bootstrap(a, cli.strict),
        Command::Par(a) => cmd_par(a, cli.strict),
        Command::Forwards(a) => cmd_forwards(a, cli.strict),
        Command::Validate(a) => cmd_validate(a),
        Command::Scan(a) => cmd_scan(a, tol),
        Command::Butterfly(a) => cmd_butterfly(a, tol),
        Command::Pnl(a) => cmd_pnl(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn load(
    path: &std::path::Path,
    requested: Option<CurveType>,
    fallback: CurveType,
) -> Result<(CurveFile, CurveType), CliError> {
    let file = CurveFile::read(path)?;
    let kind = file.resolve_type(requested, fallback)?;
    if kind != CurveType::Zero {
        file.require_integer_grid()?;
    }
    Ok((file, kind))
}

fn zero_curve(file: &CurveFile) -> Result<ZeroCurve, CliError> {
    Ok(ZeroCurve::new(file.tenors.clone(), file.values.clone())?)
}

fn swap_curve(file: &CurveFile) -> Result<SwapCurve, CliError> {
    Ok(SwapCurve::new(file.values.clone())?)
}

fn discount_curve(file: &CurveFile, kind: CurveType) -> Result<DiscountCurve, CliError> {
    Ok(match kind {
        CurveType::Zero => zero_curve(file)?.to_discount_curve()?,
        CurveType::Swap => bootstrap(&swap_curve(file)?)?,
        CurveType::Discount => DiscountCurve::new(file.values.clone())?,
    })
}

fn require(kind: CurveType, allowed: &[CurveType], command: &str) -> Result<(), CliError> {
    if allowed.contains(&kind) {
        Ok(())
    } else {
        let names: Vec<String> = allowed.iter().map(|k| k.to_string()).collect();
        Err(CliError::Domain(format!(
            "{command} needs a {} curve, got {kind}",
            names.join(" or ")
        )))
    }
}

fn violation_lines(curve: &DiscountCurve) -> Vec<String> {
    validate(curve)
        .violations
        .iter()
        .map(|v| format!("index {}: {} ({})", v.index, v.kind.as_str(), num(v.value)))
        .collect()
}

fn strict_check(curve: &DiscountCurve, strict: bool) -> Result<Vec<String>, CliError> {
    let report = validate(curve);
    if strict && !report.is_ok() {
        return Err(yieldshape_core::CurveError::Validation(report).into());
    }
    Ok(violation_lines(curve))
}

fn cmd_bootstrap(a: &InputArgs, strict: bool) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, a.curve_type, CurveType::Swap)?;
    require(kind, &[CurveType::Swap], "bootstrap")?;
    let swaps = swap_curve(&file)?;
    let mode = if strict {
        BootstrapMode::Strict
    } else {
        BootstrapMode::Lenient
    };
    let booted = bootstrap_checked(&swaps, mode)?;
    let mut body = String::from("n,x_n,p_n,P_n\n");
    for (i, x) in swaps.rates().iter().enumerate() {
        let n = i + 1;
        let _ = writeln!(
            body,
            "{n},{},{},{}",
            num(*x),
            num(booted.curve.factor(n)?),
            num(booted.curve.annuity(n)?)
        );
    }
    Ok(Report {
        body,
        warnings: violation_lines(&booted.curve),
        failed: false,
    })
}

fn cmd_par(a: &InputArgs, strict: bool) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, a.curve_type, CurveType::Zero)?;
    require(kind, &[CurveType::Zero, CurveType::Discount], "par")?;
    let curve = discount_curve(&file, kind)?;
    let warnings = strict_check(&curve, strict)?;
    let par = par_rates(&curve)?;
    let mut body = String::from("n,p_n,s_n\n");
    for (i, s) in par.rates().iter().enumerate() {
        let _ = writeln!(body, "{},{},{}", i + 1, num(curve.factors()[i]), num(*s));
    }
    Ok(Report {
        body,
        warnings,
        failed: false,
    })
}

fn cmd_forwards(a: &InputArgs, strict: bool) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, a.curve_type, CurveType::Zero)?;
    require(kind, &[CurveType::Zero, CurveType::Discount], "forwards")?;
    let curve = discount_curve(&file, kind)?;
    let warnings = strict_check(&curve, strict)?;
    let mut body = String::from("i,f_i\n");
    for (i, f) in forward_rates(&curve)?.forwards().iter().enumerate() {
        let _ = writeln!(body, "{i},{}", num(*f));
    }
    Ok(Report {
        body,
        warnings,
        failed: false,
    })
}

fn cmd_validate(a: &InputArgs) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, a.curve_type, CurveType::Zero)?;
    let curve = discount_curve(&file, kind)?;
    let report = validate(&curve);
    let mut body = String::from("index,violation,value\n");
    for v in &report.violations {
        let _ = writeln!(body, "{},{},{}", v.index, v.kind.as_str(), num(v.value));
    }
    Ok(Report {
        body,
        warnings: Vec::new(),
        failed: !report.is_ok(),
    })
}

fn kind_type(kind: Option<Kind>) -> Option<CurveType> {
    kind.map(CurveType::from)
}

fn cmd_scan(a: &ScanArgs, tol: f64) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, kind_type(a.kind), CurveType::Zero)?;
    require(kind, &[CurveType::Zero, CurveType::Swap], "scan")?;
    let opts = ScanOptions {
        mode: match a.mode {
            Mode::Consecutive => ScanMode::Consecutive,
            Mode::All => ScanMode::AllTriples,
        },
        tol,
        allow_large: a.allow_large,
    };
    if file.len() < 3 {
        return Err(yieldshape_core::CurveError::TooFewPoints {
            required: 3,
            actual: file.len(),
        }
        .into());
    }
    let candidates = match kind {
        CurveType::Swap => scan_arbitrage(ArbitrageCurve::Swap(&swap_curve(&file)?), &opts)?,
        _ => scan_arbitrage(ArbitrageCurve::Zero(&zero_curve(&file)?), &opts)?,
    };
    let mut body = String::from("rank,i,j,k,abscissa_i,abscissa_j,abscissa_k,margin,lambda_1,lambda_2,lambda_3\n");
    for (rank, c) in candidates.iter().enumerate() {
        let [i, j, k] = c.indices;
        let [x1, x2, x3] = c.abscissas;
        let [l1, l2, l3] = c.butterfly.weights();
        let _ = writeln!(
            body,
            "{},{i},{j},{k},{},{},{},{},{},{},{}",
            rank + 1,
            num(x1),
            num(x2),
            num(x3),
            num(c.margin),
            num(l1),
            num(l2),
            num(l3)
        );
    }
    Ok(Report {
        body,
        warnings: Vec::new(),
        failed: false,
    })
}

/// Leg indices on the annual grid, 1-based.
fn grid_legs(legs: [f64; 3], len: usize) -> Result<[usize; 3], CliError> {
    let mut out = [0usize; 3];
    for (slot, &v) in out.iter_mut().zip(&legs) {
        if v.fract() != 0.0 || v < 1.0 || v > len as f64 {
            return Err(CliError::Domain(format!(
                "swap leg {v} is not a tenor index in 1..={len}"
            )));
        }
        *slot = v as usize;
    }
    Ok(out)
}

/// Legs resolved against a curve: the butterfly plus each leg's abscissa
/// and rate.
struct Resolved {
    butterfly: Butterfly,
    tenors: [f64; 3],
    abscissas: [f64; 3],
    rates: [f64; 3],
}

fn resolve_legs(file: &CurveFile, kind: CurveType, legs: [f64; 3]) -> Result<Resolved, CliError> {
    match kind {
        CurveType::Swap => {
            let swaps = swap_curve(file)?;
            let idx = grid_legs(legs, swaps.len())?;
            let butterfly = swap_butterfly(&swaps, idx)?;
            let curve = bootstrap(&swaps)?;
            Ok(Resolved {
                butterfly,
                tenors: legs,
                abscissas: [curve.annuity(idx[0])?, curve.annuity(idx[1])?, curve.annuity(idx[2])?],
                rates: [swaps.rate(idx[0])?, swaps.rate(idx[1])?, swaps.rate(idx[2])?],
            })
        }
        _ => {
            let zero = zero_curve(file)?;
            let butterfly = zero_butterfly(legs[0], legs[1], legs[2])?;
            let mut rates = [0.0; 3];
            for (slot, &t) in rates.iter_mut().zip(&legs) {
                *slot = zero.yield_at(t)?;
            }
            Ok(Resolved {
                butterfly,
                tenors: legs,
                abscissas: legs,
                rates,
            })
        }
    }
}

fn cmd_butterfly(a: &ButterflyArgs, tol: f64) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, kind_type(a.kind), CurveType::Zero)?;
    require(kind, &[CurveType::Zero, CurveType::Swap], "butterfly")?;
    let r = resolve_legs(&file, kind, a.legs.0)?;
    let points = [0, 1, 2].map(|i| (r.abscissas[i], r.rates[i]));
    let class = classify_triple(points, tol)?;
    let mut body = String::new();
    let _ = writeln!(body, "# kind: {}", r.butterfly.kind().as_str());
    let _ = writeln!(body, "# margin: {}", num(class.margin));
    let _ = writeln!(body, "# verdict: {}", class.verdict.as_str());
    body.push_str("leg,tenor,abscissa,rate,weight,position\n");
    let weights = r.butterfly.weights();
    let positions = r.butterfly.positions();
    for i in 0..3 {
        let _ = writeln!(
            body,
            "{},{},{},{},{},{}",
            i + 1,
            num(r.tenors[i]),
            num(r.abscissas[i]),
            num(r.rates[i]),
            num(weights[i]),
            num(positions[i])
        );
    }
    Ok(Report {
        body,
        warnings: Vec::new(),
        failed: false,
    })
}

fn cmd_pnl(a: &PnlArgs) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, kind_type(a.kind), CurveType::Zero)?;
    require(kind, &[CurveType::Zero, CurveType::Swap], "pnl")?;
    let r = resolve_legs(&file, kind, a.legs.0)?;
    let mut body = String::new();
    match kind {
        CurveType::Swap => {
            let swaps = swap_curve(&file)?;
            let t = a.horizon.unwrap_or(1.0);
            body.push_str("shift_bp,carry,mtm,total\n");
            for bp in a.shift_bp.points() {
                let pnl = swap_butterfly_pnl(&r.butterfly, &swaps, bp * BP, t)
                    .map_err(|e| CliError::Domain(format!("shift {} bp: {}", num(bp), CliError::from(e).message())))?;
                let _ = writeln!(
                    body,
                    "{},{},{},{}",
                    num(bp),
                    num(pnl.carry),
                    num(pnl.mark_to_market),
                    num(pnl.total)
                );
            }
        }
        _ => {
            let t = a.horizon.unwrap_or(0.0);
            body.push_str("shift_bp,t,value\n");
            for bp in a.shift_bp.points() {
                let v = zero_butterfly_pnl(&r.butterfly, r.rates, bp * BP, t)?;
                let _ = writeln!(body, "{},{},{}", num(bp), num(t), num(v));
            }
        }
    }
    Ok(Report {
        body,
        warnings: Vec::new(),
        failed: false,
    })
}

fn scenario(a: &VerifyArgs, len: usize) -> Result<ShiftScenario, CliError> {
    let parallel = a.shift_bp.unwrap_or(0.0) * BP;
    if a.bump_bp.is_empty() {
        return Ok(ShiftScenario::Parallel(parallel));
    }
    let mut shifts = vec![parallel; len];
    for b in &a.bump_bp {
        if b.tenor == 0 || b.tenor > len {
            return Err(CliError::Domain(format!("bump tenor {} is outside 1..={len}", b.tenor)));
        }
        shifts[b.tenor - 1] += b.bp * BP;
    }
    Ok(ShiftScenario::PerTenor(shifts))
}

#[derive(Default)]
struct Tally {
    runs: u64,
    failures: u64,
    first: Option<(u64, usize, f64)>,
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let (file, kind) = load(&a.input, None, CurveType::Swap)?;
    require(kind, &[CurveType::Swap], "verify")?;
    let swaps = swap_curve(&file)?;
    let base = bootstrap_checked(&swaps, BootstrapMode::Lenient)?;
    if !base.report.is_ok() {
        return Err(yieldshape_core::CurveError::Validation(base.report).into());
    }
    let shift = scenario(a, swaps.len())?;
    let checks = check_all(&swaps, &shift)?;

    let mut failed = false;
    let mut body = String::from("scope,lemma,status,runs,failures,trial,index,value,note\n");
    for c in &checks {
        let name = c.lemma.name();
        let _ = match &c.outcome {
            Outcome::Pass => writeln!(body, "file,{name},pass,1,0,,,,"),
            Outcome::Fail { index, value } => {
                failed = true;
                writeln!(body, "file,{name},fail,1,1,,{index},{},", num(*value))
            }
            Outcome::Skipped(why) => writeln!(body, "file,{name},skipped,0,0,,,,{why}"),
        };
    }

    if a.trials > 0 {
        let mut tallies: Vec<(Lemma, Tally)> = Lemma::ALL.iter().map(|&l| (l, Tally::default())).collect();
        for trial in 1..=a.trials {
            let mut rng = trial_rng(a.seed, trial);
            let Some(curve) = (0..TRIAL_ATTEMPTS).find_map(|_| perturb_swap_curve(&mut rng, &swaps, TRIAL_WIDTH))
            else {
                continue;
            };
            let Ok(results) = check_all(&curve, &shift) else {
                continue;
            };
            for c in results {
                let Some((_, tally)) = tallies.iter_mut().find(|(l, _)| *l == c.lemma) else {
                    continue;
                };
                match c.outcome {
                    Outcome::Pass => tally.runs += 1,
                    Outcome::Fail { index, value } => {
                        tally.runs += 1;
                        tally.failures += 1;
                        tally.first.get_or_insert((trial, index, value));
                    }
                    Outcome::Skipped(_) => {}
                }
            }
        }
        for (lemma, t) in &tallies {
            let status = match (t.runs, t.failures) {
                (0, _) => "skipped",
                (_, 0) => "pass",
                _ => "fail",
            };
            failed |= t.failures > 0;
            let (trial, index, value) = match t.first {
                Some((tr, i, v)) => (tr.to_string(), i.to_string(), num(v)),
                None => Default::default(),
            };
            let _ = writeln!(
                body,
                "trials,{},{status},{},{},{trial},{index},{value},",
                lemma.name(),
                t.runs,
                t.failures
            );
        }
    }
    Ok(Report {
        body,
        warnings: Vec::new(),
        failed,
    })
}
