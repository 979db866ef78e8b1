//! Continuity estimates for `f -> f+` in the H_2 metric, evaluated as
//! checkable inequalities, and the exact expansion of `||f+ - g+||^2`.

use serde::{Deserialize, Serialize};

use crate::circle::{lp_norm, GridFunction};
use crate::constants::{corollary_constant, k0_constant, sup_norm_constant};
use crate::error::{Error, Result};
use crate::factorization::{factorize_boundary, positive_samples, BoundaryOptions};
use crate::fourier::{conjugate_samples, h2_distance};
use crate::orlicz::{lambda_phi, luxemburg_norm, orlicz_norm, NFunction};
use crate::report::BoundReport;
use crate::scalar::Real;

/// Constant of the sup-norm estimate as stated.
pub const SUP_NORM_CONSTANT_STATED: f64 = 2.5;

/// Relative tolerance for comparisons of spectrally accurate quantities.
pub const SMOOTH_TOL: f64 = 1e-9;
pub const SMOOTH_ATOL: f64 = 1e-12;

/// Relative agreement required between the expansion and the direct distance.
pub const IDENTITY_RTOL: f64 = 1e-6;

/// Grid quantities shared by all pair estimates.
struct Pair<T> {
    f: Vec<T>,
    g: Vec<T>,
    spacing: T,
    /// `psi^ = (1/2) (log f - log g)~`.
    psi_hat: Vec<T>,
    l1_diff: T,
    log_l1_diff: T,
}

impl<T: Real> Pair<T> {
    fn new(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<Self> {
        if f.len() != g.len() {
            return Err(Error::Parameter(format!(
                "grid sizes differ: {} vs {}",
                f.len(),
                g.len()
            )));
        }
        let (f_vals, _) = positive_samples(f, None)?;
        let (g_vals, _) = positive_samples(g, None)?;
        let spacing = f.spacing();
        let half_log_ratio: Vec<T> = f_vals
            .iter()
            .zip(&g_vals)
            .map(|(&a, &b)| (a.ln() - b.ln()) * T::half())
            .collect();
        let psi_hat = conjugate_samples(&half_log_ratio);
        let l1_diff = f_vals
            .iter()
            .zip(&g_vals)
            .fold(T::zero(), |s, (&a, &b)| s + (a - b).abs())
            * spacing;
        let log_l1_diff = half_log_ratio
            .iter()
            .fold(T::zero(), |s, &x| s + x.abs())
            * spacing
            * T::two();
        Ok(Self {
            f: f_vals,
            g: g_vals,
            spacing,
            psi_hat,
            l1_diff,
            log_l1_diff,
        })
    }

    /// `1 - cos(psi^)` in the cancellation-free form `2 sin^2(psi^/2)`.
    fn one_minus_cos(&self, j: usize) -> T {
        let s = (self.psi_hat[j] * T::half()).sin();
        T::two() * s * s
    }

    fn t3(&self) -> T {
        (0..self.f.len()).fold(T::zero(), |s, j| s + self.f[j] * self.one_minus_cos(j))
            * self.spacing
            * T::two()
    }

    fn f_grid(&self) -> GridFunction<T> {
        GridFunction::from_real(self.f.clone()).expect("validated samples")
    }
}

/// Squared H_2 distance of the outer factors, both computed by the boundary route.
pub fn h2_distance_squared<T: Real>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<T> {
    let a = factorize_boundary(f, BoundaryOptions::default())?;
    let b = factorize_boundary(g, BoundaryOptions::default())?;
    let d = h2_distance(&a.factor, &b.factor);
    Ok(d * d)
}

/// The three terms of `||f+ - g+||^2 = T1 + T2 + T3` and the direct value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
pub struct IdentityTerms<T> {
    /// `int (sqrt f - sqrt g)^2`.
    pub t1: T,
    /// `2 int sqrt f (sqrt g - sqrt f) (1 - cos psi^)`.
    pub t2: T,
    /// `2 int f (1 - cos psi^)`.
    pub t3: T,
    pub sum: T,
    /// `||f+ - g+||^2` from the factor coefficients.
    pub direct: T,
    /// `|sum - direct| / max(direct, ||f||_1 eps)`.
    pub rel_error: T,
}

pub fn h2_identity_terms<T: Real>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<IdentityTerms<T>> {
    let pair = Pair::new(f, g)?;
    let mut t1 = T::zero();
    let mut t2 = T::zero();
    for j in 0..pair.f.len() {
        let (sf, sg) = (pair.f[j].sqrt(), pair.g[j].sqrt());
        t1 = t1 + (sf - sg) * (sf - sg);
        t2 = t2 + sf * (sg - sf) * pair.one_minus_cos(j);
    }
    let t1 = t1 * pair.spacing;
    let t2 = t2 * pair.spacing * T::two();
    let t3 = pair.t3();
    let sum = t1 + t2 + t3;
    let direct = h2_distance_squared(f, g)?;
    let f_l1 = pair.f.iter().fold(T::zero(), |s, &x| s + x) * pair.spacing;
    let floor = f_l1 * T::epsilon() * T::from_count(pair.f.len());
    let rel_error = (sum - direct).abs() / direct.max(floor);
    Ok(IdentityTerms {
        t1,
        t2,
        t3,
        sum,
        direct,
        rel_error,
    })
}

/// Report form of [`h2_identity_terms`]: passes iff the expansion matches the
/// direct distance to [`IDENTITY_RTOL`].
pub fn identity_report<T: Real>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<BoundReport<T>> {
    let terms = h2_identity_terms(f, g)?;
    let pass = terms.rel_error <= T::lit(IDENTITY_RTOL);
    Ok(BoundReport::with_verdict("h2_expansion", terms.sum, terms.direct, pass)
        .detail("t1", terms.t1)
        .detail("t2", terms.t2)
        .detail("t3", terms.t3)
        .detail("rel_error", terms.rel_error)
        .detail("rtol", T::lit(IDENTITY_RTOL)))
}

/// `T3 - 4 ||f - g||_1`, a lower bound for `||f+ - g+||^2`.
pub fn lower_bound_terms<T: Real>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<T> {
    let pair = Pair::new(f, g)?;
    Ok(pair.t3() - T::lit(4.0) * pair.l1_diff)
}

fn smooth_inequality<T: Real>(name: &str, lhs: T, rhs: T) -> BoundReport<T> {
    BoundReport::inequality(name, lhs, rhs, T::lit(SMOOTH_TOL), T::lit(SMOOTH_ATOL))
}

/// `||f+ - g+||^2 <= 2 ||f - g||_1 + 2.5 ||f||_inf ||log f - log g||_1`,
/// checked also with the sharper constant `2 K0`.
pub fn check_theorem_2<T: Real>(f: &GridFunction<T>, g: &GridFunction<T>) -> Result<BoundReport<T>> {
    let pair = Pair::new(f, g)?;
    let lhs = h2_distance_squared(f, g)?;
    let sup = lp_norm(&pair.f_grid(), T::infinity())?;
    let stated = T::lit(SUP_NORM_CONSTANT_STATED);
    let sharp = sup_norm_constant::<T>();
    let linear = T::two() * pair.l1_diff;
    let rhs = linear + stated * sup * pair.log_l1_diff;
    let rhs_sharp = linear + sharp * sup * pair.log_l1_diff;
    let tol = T::lit(SMOOTH_TOL);
    let atol = T::lit(SMOOTH_ATOL);
    Ok(smooth_inequality("h2_sup_norm_bound", lhs, rhs)
        .require(
            lhs <= rhs_sharp * (T::one() + tol) + atol,
            "bound with constant 2 K0",
        )
        .detail("l1_diff", pair.l1_diff)
        .detail("log_l1_diff", pair.log_l1_diff)
        .detail("f_sup", sup)
        .detail("constant", stated)
        .detail("constant_2k0", sharp)
        .detail("rhs_2k0", rhs_sharp))
}

/// `||f+ - g+||^2 <= 2 ||f - g||_1 + C(p) ||f||_p ||log f - log g||_1^{(p-1)/p}`.
pub fn check_corollary_p<T: Real>(f: &GridFunction<T>, g: &GridFunction<T>, p: T) -> Result<BoundReport<T>> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::Parameter(format!("exponent p = {p} must satisfy 1 < p < inf")));
    }
    let pair = Pair::new(f, g)?;
    let lhs = h2_distance_squared(f, g)?;
    let c = corollary_constant(p);
    let f_p = lp_norm(&pair.f_grid(), p)?;
    let power = (p - T::one()) / p;
    let rhs = T::two() * pair.l1_diff + c * f_p * pair.log_l1_diff.powf(power);
    Ok(smooth_inequality("h2_lp_bound", lhs, rhs)
        .detail("p", p)
        .detail("C_p", c)
        .detail("f_lp", f_p)
        .detail("l1_diff", pair.l1_diff)
        .detail("log_l1_diff", pair.log_l1_diff))
}

/// `||f+ - g+||^2 <= 2 ||f - g||_1 + 4 ||f||_Psi Lambda_Phi((K0/2) ||log f - log g||_1)`,
/// `Psi` the complement of `Phi`.
pub fn check_theorem_main<T: Real>(
    f: &GridFunction<T>,
    g: &GridFunction<T>,
    phi: &NFunction<T>,
) -> Result<BoundReport<T>> {
    let pair = Pair::new(f, g)?;
    let lhs = h2_distance_squared(f, g)?;
    let psi = phi.complement();
    let f_psi = orlicz_norm(&pair.f_grid(), &psi)?;
    let k0 = k0_constant::<T>();
    let s = k0 * T::half() * pair.log_l1_diff;
    let lambda = if s > T::zero() { lambda_phi(phi, s)? } else { T::zero() };
    let rhs = T::two() * pair.l1_diff + T::lit(4.0) * f_psi * lambda;
    Ok(smooth_inequality("h2_orlicz_bound", lhs, rhs)
        .detail("f_orlicz_psi", f_psi)
        .detail("lambda_phi", lambda)
        .detail("lambda_arg", s)
        .detail("K0", k0)
        .detail("l1_diff", pair.l1_diff)
        .detail("log_l1_diff", pair.log_l1_diff))
}

fn one_minus_cos_of_conjugate<T: Real>(psi: &GridFunction<T>) -> Result<GridFunction<T>> {
    let values = psi.require_real("conjugate estimate")?;
    let conj = conjugate_samples(values);
    GridFunction::from_real(
        conj.into_iter()
            .map(|x| {
                let s = (x * T::half()).sin();
                T::two() * s * s
            })
            .collect(),
    )
}

/// `||1 - cos psi~||_(Phi) <= 2 Lambda_Phi(K0 ||psi||_1)`.
pub fn check_lemma_orl<T: Real>(psi: &GridFunction<T>, phi: &NFunction<T>) -> Result<BoundReport<T>> {
    let lhs = luxemburg_norm(&one_minus_cos_of_conjugate(psi)?, phi)?;
    let l1 = lp_norm(psi, T::one())?;
    let k0 = k0_constant::<T>();
    let lambda = if l1 > T::zero() { lambda_phi(phi, k0 * l1)? } else { T::zero() };
    Ok(smooth_inequality("conjugate_orlicz_bound", lhs, T::two() * lambda)
        .detail("psi_l1", l1)
        .detail("lambda_phi", lambda)
        .detail("K0", k0))
}

/// `||1 - cos psi~||_1 <= 2 K0 ||psi||_1`.
pub fn check_lemma_l1<T: Real>(psi: &GridFunction<T>) -> Result<BoundReport<T>> {
    let lhs = one_minus_cos_of_conjugate(psi)?.integral()?;
    let l1 = lp_norm(psi, T::one())?;
    let k0 = k0_constant::<T>();
    Ok(smooth_inequality("conjugate_l1_bound", lhs, T::two() * k0 * l1)
        .detail("psi_l1", l1)
        .detail("K0", k0))
}

/// Perturbations `f_k` of a fixed density with parameter `1/k`.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule<T> {
    /// `f_k = f (1 + 1/k)`.
    Scale,
    /// `f_k = f + b / k` for a nonnegative bump `b`.
    AdditiveBump(GridFunction<T>),
    /// `f_k = f exp(phi / k)`.
    LogPerturbation(GridFunction<T>),
}

impl<T: Real> Schedule<T> {
    fn member(&self, f: &GridFunction<T>, k: usize) -> Result<GridFunction<T>> {
        let t = T::from_count(k).recip();
        match self {
            Self::Scale => f.map_real(|v| v * (T::one() + t)),
            Self::AdditiveBump(b) => {
                if b.require_real("bump")?.iter().any(|&v| v < T::zero()) {
                    return Err(Error::Parameter("additive bump must be nonnegative".into()));
                }
                f.zip_real(b, |v, w| v + w * t)
            }
            Self::LogPerturbation(phi) => f.zip_real(phi, |v, w| v * (w * t).exp()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
pub struct ConvergenceRow<T> {
    pub k: usize,
    pub l1_diff: T,
    pub log_l1_diff: T,
    pub h2_distance: T,
}

/// Distances between `f_k` and `f` for `k = 1..=steps`.
pub fn convergence_demo<T: Real>(
    f: &GridFunction<T>,
    schedule: &Schedule<T>,
    steps: usize,
) -> Result<Vec<ConvergenceRow<T>>> {
    let base = factorize_boundary(f, BoundaryOptions::default())?;
    (1..=steps)
        .map(|k| {
            let fk = schedule.member(f, k)?;
            let pair = Pair::new(&fk, f)?;
            let factor = factorize_boundary(&fk, BoundaryOptions::default())?;
            Ok(ConvergenceRow {
                k,
                l1_diff: pair.l1_diff,
                log_l1_diff: pair.log_l1_diff,
                h2_distance: h2_distance(&factor.factor, &base.factor),
            })
        })
        .collect()
}

/// Whether every column is nonincreasing up to `rtol` relative to the first row.
pub fn is_monotone_decreasing<T: Real>(rows: &[ConvergenceRow<T>], rtol: T) -> bool {
    let cols: [fn(&ConvergenceRow<T>) -> T; 3] = [|r| r.l1_diff, |r| r.log_l1_diff, |r| r.h2_distance];
    cols.iter().all(|col| {
        let scale = rows.first().map(col).unwrap_or_else(T::zero);
        rows.windows(2)
            .all(|w| col(&w[1]) <= col(&w[0]) + rtol * scale)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::k0_constant;
    use std::f64::consts::PI;

    fn smooth_f(n: usize) -> GridFunction<f64> {
        GridFunction::from_fn(n, |t: f64| (0.6 * t.cos() - 0.3 * (2.0 * t).sin() + 0.2 * (3.0 * t).cos()).exp())
            .unwrap()
    }

    fn smooth_g(n: usize) -> GridFunction<f64> {
        GridFunction::from_fn(n, |t: f64| (0.4 * t.sin() + 0.5 * (2.0 * t).cos() - 0.1).exp()).unwrap()
    }

    #[test]
    fn identity_vanishes_for_equal_inputs() {
        let f = smooth_f(512);
        let t = h2_identity_terms(&f, &f).unwrap();
        assert_eq!((t.t1, t.t2, t.t3), (0.0, 0.0, 0.0));
        assert!(t.direct.abs() < 1e-24);
        assert!(identity_report(&f, &f).unwrap().pass);
        assert_eq!(lower_bound_terms(&f, &f).unwrap(), 0.0);
    }

    #[test]
    fn identity_for_scaled_pair() {
        let f = smooth_f(512);
        let l1 = f.integral().unwrap();
        for c in [0.5, 2.0, 9.0] {
            let g = f.map_real(|v| c * v).unwrap();
            let t = h2_identity_terms(&f, &g).unwrap();
            let expect = (1.0 - c.sqrt()).powi(2) * l1;
            assert!((t.sum - expect).abs() < 1e-12 * expect);
            assert!((t.direct - expect).abs() < 1e-10 * expect);
            assert!(t.t2.abs() < 1e-20 && t.t3.abs() < 1e-20);
            let lb = lower_bound_terms(&f, &g).unwrap();
            assert!((lb + 4.0 * (1.0 - c).abs() * l1).abs() < 1e-10 * l1);
            assert!(lb <= t.sum);
        }
    }

    #[test]
    fn identity_matches_direct_distance() {
        let t = h2_identity_terms(&smooth_f(1024), &smooth_g(1024)).unwrap();
        assert!(t.rel_error < 1e-10, "{t:?}");
        assert!(t.t3 > 0.0);
    }

    #[test]
    fn nonpositive_input_is_rejected() {
        let f = smooth_f(64);
        let g = GridFunction::from_fn(64, |t: f64| t.cos()).unwrap();
        assert!(matches!(h2_identity_terms(&f, &g), Err(Error::NonPositiveSample { .. })));
        assert!(check_theorem_2(&g, &f).is_err());
    }

    #[test]
    fn sup_norm_bound_scaled_pairs() {
        let f = smooth_f(512);
        let l1 = f.integral().unwrap();
        let sup = lp_norm(&f, f64::INFINITY).unwrap();
        for c in [0.5f64, 2.0] {
            let g = f.map_real(|v| c * v).unwrap();
            let r = check_theorem_2(&f, &g).unwrap();
            assert!(r.pass);
            assert!((r.lhs - (1.0 - c.sqrt()).powi(2) * l1).abs() < 1e-10);
            let rhs = 2.0 * (1.0 - c).abs() * l1 + 2.5 * sup * 2.0 * PI * c.ln().abs();
            assert!((r.rhs - rhs).abs() < 1e-9 * rhs);
            assert!(r.get("rhs_2k0").unwrap() <= r.rhs);
        }
        let r = check_theorem_2(&f, &f).unwrap();
        assert!(r.pass && r.lhs.abs() < 1e-24 && r.rhs == 0.0);
    }

    #[test]
    fn lp_bound() {
        let (f, g) = (smooth_f(512), smooth_g(512));
        for p in [1.5, 2.0, 4.0] {
            assert!(check_corollary_p(&f, &g, p).unwrap().pass);
            assert!(check_corollary_p(&f, &f, p).unwrap().pass);
        }
        let r = check_corollary_p(&f, &g, 2.0).unwrap();
        assert!((r.get("C_p").unwrap() - 4.0 * k0_constant::<f64>().sqrt()).abs() < 1e-12);
        assert!(check_corollary_p(&f, &g, 1.0).is_err());
        assert!(check_corollary_p(&f, &g, f64::INFINITY).is_err());
    }

    #[test]
    fn orlicz_bound_reduces_to_lp_shape_for_square() {
        let (f, g) = (smooth_f(512), smooth_g(512));
        let main = check_theorem_main(&f, &g, &NFunction::power(2.0).unwrap()).unwrap();
        let cor = check_corollary_p(&f, &g, 2.0).unwrap();
        assert!(main.pass);
        assert!((main.rhs - cor.rhs).abs() < 1e-7 * cor.rhs, "{} vs {}", main.rhs, cor.rhs);
        for q in [1.5, 3.0] {
            let phi = NFunction::power(q).unwrap();
            assert!(check_theorem_main(&f, &g, &phi).unwrap().pass);
            assert!(check_theorem_main(&f, &f, &phi).unwrap().pass);
        }
    }

    #[test]
    fn conjugate_l1_bound() {
        let zero = GridFunction::constant(256, 0.0).unwrap();
        let r = check_lemma_l1(&zero).unwrap();
        assert!(r.pass && r.lhs == 0.0 && r.rhs == 0.0);
        // int (1 - cos(sin t)) = 2 pi (1 - J0(1)).
        let psi = GridFunction::from_fn(256, f64::cos).unwrap();
        let r = check_lemma_l1(&psi).unwrap();
        let j0_1 = 0.765_197_686_557_966_6;
        assert!((r.lhs - 2.0 * PI * (1.0 - j0_1)).abs() < 1e-12);
        let l1 = lp_norm(&psi, 1.0).unwrap();
        assert!((l1 - 4.0).abs() < 1e-3);
        assert!((r.rhs - 2.0 * k0_constant::<f64>() * l1).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn conjugate_orlicz_bound() {
        let phi = NFunction::power(2.0).unwrap();
        let zero = GridFunction::constant(256, 0.0).unwrap();
        let r = check_lemma_orl(&zero, &phi).unwrap();
        assert!(r.pass && r.lhs == 0.0 && r.rhs == 0.0);
        let eps = 0.05;
        let psi = GridFunction::from_fn(256, |t: f64| eps * t.cos()).unwrap();
        let r = check_lemma_orl(&psi, &phi).unwrap();
        let direct = GridFunction::from_fn(256, |t: f64| 1.0 - (eps * t.sin()).cos()).unwrap();
        let expect = (direct.map_real(|v| v * v / 2.0).unwrap().integral().unwrap()).sqrt();
        assert!((r.lhs - expect).abs() < 1e-10 * expect);
        assert!(r.pass);
    }

    #[test]
    fn scaling_schedule_closed_form() {
        let f = smooth_f(256);
        let l1 = f.integral().unwrap();
        let rows = convergence_demo(&f, &Schedule::Scale, 16).unwrap();
        for r in &rows {
            let c = 1.0 + 1.0 / r.k as f64;
            assert!((r.h2_distance - (c.sqrt() - 1.0) * l1.sqrt()).abs() < 1e-10);
            assert!((r.l1_diff - (c - 1.0) * l1).abs() < 1e-10);
        }
        assert!(is_monotone_decreasing(&rows, 1e-12));
    }

    #[test]
    fn trivial_and_bump_schedules() {
        let f = smooth_f(256);
        let zero = GridFunction::constant(256, 0.0).unwrap();
        let rows = convergence_demo(&f, &Schedule::LogPerturbation(zero), 4).unwrap();
        assert!(rows.iter().all(|r| r.l1_diff == 0.0 && r.log_l1_diff == 0.0 && r.h2_distance < 1e-14));
        let bump = GridFunction::from_fn(256, |t: f64| (-(4.0 * t * t)).exp()).unwrap();
        let rows = convergence_demo(&f, &Schedule::AdditiveBump(bump), 32).unwrap();
        assert!(is_monotone_decreasing(&rows, 1e-12));
        assert!(rows[31].h2_distance < rows[0].h2_distance / 10.0);
        let negative = GridFunction::constant(256, -1.0).unwrap();
        assert!(convergence_demo(&f, &Schedule::AdditiveBump(negative), 2).is_err());
    }
}
