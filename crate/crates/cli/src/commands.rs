use std::path::Path;

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};
use spectral_factor::bounds::{check_corollary_p, check_lemma_l1, check_lemma_orl, check_theorem_2, check_theorem_main, identity_report};
use spectral_factor::constants::{corollary_constant, davis_constant, k0_constant, sup_norm_constant};
use spectral_factor::counterexample::{build_family, family_metrics, verify_family};
use spectral_factor::factorization::{
    factorize_boundary, fejer_riesz, herglotz_factor, outer_check, BoundaryOptions, FejerRieszOptions,
};
use spectral_factor::io::{factor_to_json, Input};
use spectral_factor::{
    fourier_analyze, fourier_synthesize, lemma_g_report, weak11_report, BoundReport, Error, GSpec, GridFunction,
    NFunction, Result, Sampler, SpectralFactor, Variant, DEFAULT_GRID,
};

use crate::input::{read_grid, read_input, read_phi, to_grid};
use crate::{Check, GChoice, Method};

const HERGLOTZ_DEGREE: usize = 64;
const HERGLOTZ_RADIUS: f64 = 0.9;
const OUTPUT_TRIM: f64 = 1e-12;

fn print(v: &Value) {
    println!("{v}");
}

fn to_value(x: &BoundReport<f64>) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn factor_value(a: &SpectralFactor<f64>) -> Value {
    serde_json::from_str(&factor_to_json(&a.trimmed(OUTPUT_TRIM))).expect("factor JSON is valid")
}

/// `max(f, floor)` and the number of raised samples.
fn floored(f: GridFunction<f64>, floor: Option<f64>) -> Result<(GridFunction<f64>, usize)> {
    match floor {
        None => Ok((f, 0)),
        Some(d) if d > 0.0 => {
            let raised = f.require_real("floor")?.iter().filter(|&&v| v < d).count();
            Ok((f.map_real(|v| v.max(d))?, raised))
        }
        Some(d) => Err(Error::Parameter(format!("floor {d} must be positive"))),
    }
}

/// Outer check on the grid, falling back to the sign of `a_0` when the
/// density has zeros on the grid (possible for polynomial inputs).
fn outer_report(a: &SpectralFactor<f64>, f: &GridFunction<f64>) -> Result<BoundReport<f64>> {
    match outer_check(a.coeffs(), f) {
        Err(Error::NonPositiveSample { .. }) => {
            let a0 = a.coeffs()[0];
            Ok(BoundReport::with_verdict("outer_check", a0.re, a0.re, a0.re > 0.0 && a0.im == 0.0)
                .note("density vanishes on the grid; outerness follows from the root selection"))
        }
        other => other,
    }
}

pub fn factorize(
    path: Option<&Path>,
    method: Method,
    n: Option<usize>,
    floor: Option<f64>,
    degree: Option<usize>,
) -> Result<bool> {
    let input = read_input(path)?;
    let mut out = json!({ "method": method.to_possible_value().map(|v| v.get_name().to_string()) });
    let (factor, grid) = match method {
        Method::FejerRiesz => {
            let series = match input {
                Input::Series(s) => s,
                Input::Grid(f) => {
                    let d = degree.ok_or_else(|| {
                        Error::Parameter("fejer-riesz on grid input needs --degree".into())
                    })?;
                    fourier_analyze(&f, d)?
                }
            };
            let a = fejer_riesz(&series, FejerRieszOptions::default())?;
            let grid = fourier_synthesize(&series, n.unwrap_or(DEFAULT_GRID))?;
            (a, grid)
        }
        Method::Boundary => {
            let (f, raised) = floored(to_grid(input, n)?, floor)?;
            out["floored_samples"] = json!(raised);
            let b = factorize_boundary(&f, BoundaryOptions::default())?;
            out["negative_energy"] = json!(b.negative_energy);
            out["origin_phase_error"] = json!(b.origin_phase_error);
            (b.factor, f)
        }
        Method::Herglotz => {
            let (f, raised) = floored(to_grid(input, n)?, floor)?;
            out["floored_samples"] = json!(raised);
            let degree = degree.unwrap_or(HERGLOTZ_DEGREE.min(f.len() / 2 - 1));
            let a = herglotz_factor(&f, degree, HERGLOTZ_RADIUS)?;
            (a, f)
        }
    };
    let report = outer_report(&factor, &grid)?;
    out["factor"] = factor_value(&factor);
    out["outer_check"] = to_value(&report);
    print(&out);
    Ok(report.pass)
}

fn g_spec(choice: GChoice) -> GSpec<f64> {
    match choice {
        GChoice::OneMinusCos => GSpec::one_minus_cos(),
        GChoice::ClippedSquare => GSpec::clipped_square(),
    }
}

fn run_check(
    check: Check,
    f: &GridFunction<f64>,
    g: Option<&GridFunction<f64>>,
    p: f64,
    phi: &NFunction<f64>,
    g_fn: GChoice,
) -> Result<BoundReport<f64>> {
    let pair = || g.ok_or_else(|| Error::Parameter("this check needs two densities".into()));
    match check {
        Check::Thm2 => check_theorem_2(f, pair()?),
        Check::CorP => check_corollary_p(f, pair()?, p),
        Check::Main => check_theorem_main(f, pair()?, phi),
        Check::Identity => identity_report(f, pair()?),
        Check::LemmaOrl => check_lemma_orl(f, phi),
        Check::LemmaL1 => check_lemma_l1(f),
        Check::LemmaG => lemma_g_report(&g_spec(g_fn), f),
        Check::Weak11 => weak11_report(f),
    }
}

pub fn bounds(
    f: &Path,
    g: Option<&Path>,
    check: Check,
    p: f64,
    phi: Option<&str>,
    g_fn: GChoice,
    n: Option<usize>,
) -> Result<bool> {
    let phi = read_phi(phi)?;
    let f = read_grid(Some(f), n)?;
    let g = match (check.is_single(), g) {
        (true, Some(_)) => {
            return Err(Error::Parameter("single-function checks take one input".into()));
        }
        (true, None) => None,
        (false, Some(path)) => Some(read_grid(Some(path), Some(f.len()))?),
        (false, None) => return Err(Error::Parameter("this check needs two densities".into())),
    };
    let report = run_check(check, &f, g.as_ref(), p, &phi, g_fn)?;
    print(&to_value(&report));
    Ok(report.pass)
}

fn counterexample_row(n: usize, du: f64, variant: Variant) -> Result<(Value, bool)> {
    let fam = build_family::<f64>(n, du, variant)?;
    let m = family_metrics(&fam)?;
    let report = verify_family(&fam)?;
    let row = json!({
        "n": n,
        "l1_diff": m.m1,
        "log_l1_diff": m.m2,
        "h2_lower": m.m3.max(0.0).sqrt(),
        "h2_identity": m.m4.max(0.0).sqrt(),
        "budget": fam.budget(),
        "pass": report.pass,
    });
    Ok((row, report.pass))
}

pub fn counterexample(n: Option<usize>, sweep: Option<usize>, du: f64, variant: Variant) -> Result<bool> {
    let range = match (n, sweep) {
        (_, Some(0)) => return Err(Error::Parameter("--sweep needs at least one row".into())),
        (_, Some(max)) => 1..=max,
        (Some(0), None) => return Err(Error::Parameter("n must be at least 1".into())),
        (Some(n), None) => n..=n,
        (None, None) => 1..=1,
    };
    let mut all = true;
    for k in range {
        let (row, pass) = counterexample_row(k, du, variant)?;
        print(&row);
        all &= pass;
    }
    Ok(all)
}

pub fn constants() -> Result<bool> {
    print(&json!({
        "K": davis_constant::<f64>(),
        "K0": k0_constant::<f64>(),
        "C2": corollary_constant::<f64>(2.0),
        "C_inf": sup_norm_constant::<f64>(),
    }));
    Ok(true)
}

fn trial(check: Check, seed: u64, index: u64, n: usize, p: f64, phi: &NFunction<f64>) -> Result<BoundReport<f64>> {
    let mut s = Sampler::trial(seed, index);
    if check.is_single() {
        let psi = s.band_limited::<f64>(n)?;
        run_check(check, &psi, None, p, phi, GChoice::OneMinusCos)
    } else {
        let (f, g) = s.pair::<f64>(n)?;
        run_check(check, &f, Some(&g), p, phi, GChoice::OneMinusCos)
    }
}

pub fn sweep(check: Check, trials: usize, seed: u64, jobs: usize, n: usize, p: f64, phi: Option<&str>) -> Result<bool> {
    let phi = read_phi(phi)?;
    let run = |i: usize| trial(check, seed, i as u64, n, p, &phi);
    let results: Vec<Result<BoundReport<f64>>> = if jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start {jobs} workers: {e}")))?
            .install(|| (0..trials).into_par_iter().map(run).collect())
    } else {
        (0..trials).map(run).collect()
    };

    let mut failures = Vec::new();
    let mut passed = 0usize;
    let mut min_slack = f64::INFINITY;
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(rep) => {
                min_slack = min_slack.min(rep.slack);
                if rep.pass {
                    passed += 1;
                } else {
                    failures.push(json!({ "trial": i, "lhs": rep.lhs, "rhs": rep.rhs, "notes": rep.notes }));
                }
            }
            Err(e) => failures.push(json!({ "trial": i, "error": e.to_string() })),
        }
    }
    print(&json!({
        "check": check.to_possible_value().map(|v| v.get_name().to_string()),
        "trials": trials,
        "seed": seed,
        "n": n,
        "passed": passed,
        "failed": trials - passed,
        "min_slack": if min_slack.is_finite() { json!(min_slack) } else { Value::Null },
        "failures": failures,
    }));
    Ok(passed == trials)
}
