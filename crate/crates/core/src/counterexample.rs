//! Pairs `f_n, g_n` with `||f_n - g_n||_1 <= 1/n` and
//! `||log f_n - log g_n||_1 <= 1/n` whose outer factors stay at H_2 distance
//! at least `2 - 1/n`.
//!
//! The pair is `g = h f` with `h = exp(Re w)` for the strip map
//! `w(z) = -eps/2 + i (eps/pi) Log((1+z)/(1-z))`: `h = e^{-eps}` on the arc
//! `(0, pi)` and `1` elsewhere, and `psi^ = (1/2)(log f - log g)~` equals
//! `kappa u` with `kappa = eps / (2 pi)` and `u = log|tan(theta/2)|`.
//! `f` is a box bump in `u` around `u* = pi / kappa`, where `1 - cos psi^ = 2`,
//! plus a constant. On the arc `d theta = du / cosh u`.
//!
//! The bump height `c ~ e^{u*}` overflows quickly, so everything is computed
//! from `log c` and integrals over the bump use `s = u - u*`, in which the
//! weight is `e^{-s} / (1 + e^{-2(u* + s)})` up to the factor `2 e^{-u*}`.

use serde::{Deserialize, Serialize};

use crate::bounds::h2_identity_terms;
use crate::circle::{grid_angle, GridFunction};
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::report::BoundReport;
use crate::scalar::Real;

pub const DEFAULT_DELTA_U: f64 = 0.1;

/// Largest admissible `|psi^ - pi|` on the bump.
pub const PSI_WINDOW: f64 = 0.1;

/// Fewest grid samples the bump must cover in the grid pipeline.
pub const MIN_BUMP_SAMPLES: usize = 32;

/// Largest bump centre the grid pipeline accepts.
pub const MAX_GRID_CENTRE: f64 = 12.0;

/// Relative agreement required between the analytic and grid pipelines.
pub const CROSS_VALIDATION_RTOL: f64 = 0.02;

const SUBSTITUTION_NOTE: &str =
    "witness pair built from the strip map w(z) = -eps/2 + i (eps/pi) Log((1+z)/(1-z)) with a box bump at psi^ = pi";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `f = (1 - eps/2) f0 + eps / (4 pi)`, so `||f||_1 = 1`.
    Floored,
    /// `f = f0 + 1`.
    PlusOne,
}

impl Variant {
    /// Coefficients `(a, b)` of `f = a f0 + b`.
    fn coefficients<T: Real>(self, eps: T) -> (T, T) {
        match self {
            Self::Floored => (
                T::one() - eps * T::half(),
                eps / (T::lit(4.0) * T::PI()),
            ),
            Self::PlusOne => (T::one(), T::one()),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "floored" => Ok(Self::Floored),
            "plus-one" => Ok(Self::PlusOne),
            other => Err(Error::Parse(format!(
                "unknown variant '{other}' (expected floored or plus-one)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
pub struct CounterexampleFamily<T> {
    /// Index `n` when `eps = 1 / (2 pi n)`.
    pub n: Option<usize>,
    pub epsilon: T,
    pub variant: Variant,
    /// `kappa = eps / (2 pi)`, the slope of `psi^` in `u`.
    pub kappa: T,
    pub bump_center_u: T,
    pub bump_halfwidth_u: T,
    /// `log c` for the bump height `c`.
    pub log_bump_height: T,
    /// `f = a f0 + b`.
    pub a: T,
    pub b: T,
}

fn quad_options<T: Real>() -> QuadOptions<T> {
    QuadOptions {
        abs_tol: T::lit(1e-15),
        rel_tol: T::lit(1e-13).max(T::epsilon() * T::lit(64.0)),
        max_intervals: 2000,
    }
}

/// `log(atan(e^{-(u-d)}) - atan(e^{-(u+d)}))`, i.e. the log of half the
/// bump width in `theta`, without underflow.
fn log_half_bump_width<T: Real>(u: T, d: T) -> T {
    // atan x - atan y = atan((x - y)/(1 + xy)) with x y = e^{-2u}.
    let log_y = -u + (T::two() * d.sinh()).ln() - (-T::two() * u).exp().ln_1p();
    let y = log_y.exp();
    let log_ratio = if y < T::lit(1e-8) {
        -y * y / T::lit(3.0)
    } else {
        (y.atan() / y).ln()
    };
    log_y + log_ratio
}

impl<T: Real> CounterexampleFamily<T> {
    /// Family with a given `eps`; no index and no window check on `psi^`.
    pub fn from_epsilon(epsilon: T, delta_u: T, variant: Variant) -> Result<Self> {
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(Error::Parameter(format!("eps = {epsilon} must be positive")));
        }
        if !(delta_u > T::zero()) || delta_u > T::one() {
            return Err(Error::Parameter(format!(
                "bump half-width {delta_u} must lie in (0, 1]"
            )));
        }
        let (a, b) = variant.coefficients(epsilon);
        if !(a > T::zero()) {
            return Err(Error::Parameter(format!(
                "floored variant needs eps < 2, got {epsilon}"
            )));
        }
        let kappa = epsilon / (T::two() * T::PI());
        let u_star = T::PI() / kappa;
        // c = 1 / (2 (atan e^{-(u*-d)} - atan e^{-(u*+d)})).
        let log_c = -T::two().ln() - log_half_bump_width(u_star, delta_u);
        Ok(Self {
            n: None,
            epsilon,
            variant,
            kappa,
            bump_center_u: u_star,
            bump_halfwidth_u: delta_u,
            log_bump_height: log_c,
            a,
            b,
        })
    }

    pub fn u_star(&self) -> T {
        self.bump_center_u
    }

    /// `h(theta)`: `e^{-eps}` on `(0, pi)`, `1` on `(-pi, 0)`.
    pub fn h(&self, theta: T) -> T {
        if theta > T::zero() && theta < T::PI() {
            (-self.epsilon).exp()
        } else {
            T::one()
        }
    }

    /// `psi^(theta) = kappa log|tan(theta/2)|`.
    pub fn psi(&self, theta: T) -> T {
        self.kappa * (theta * T::half()).tan().abs().ln()
    }

    /// Bump interval `[theta_lo, theta_hi]` inside `(0, pi)`.
    pub fn bump_interval(&self) -> (T, T) {
        let (u, d) = (self.bump_center_u, self.bump_halfwidth_u);
        let at = |x: T| T::PI() - T::two() * (-x).exp().atan();
        (at(u - d), at(u + d))
    }

    /// Headroom `log(T::MAX) - log c`; negative when `f` is not representable.
    pub fn budget(&self) -> T {
        T::max_value().ln() - self.log_bump_height
    }

    pub fn within_budget(&self) -> bool {
        self.budget() > T::zero()
    }

    fn require_budget(&self) -> Result<T> {
        if !self.within_budget() {
            return Err(Error::PrecisionBudget(format!(
                "bump height e^{} exceeds the largest representable value",
                self.log_bump_height
            )));
        }
        Ok(self.log_bump_height.exp())
    }

    /// `f(theta)`; fails when the bump height is not representable.
    pub fn f_value(&self, theta: T) -> Result<T> {
        let c = self.require_budget()?;
        let (lo, hi) = self.bump_interval();
        let bump = if theta >= lo && theta <= hi { c } else { T::zero() };
        Ok(self.a * bump + self.b)
    }

    pub fn g_value(&self, theta: T) -> Result<T> {
        Ok(self.h(theta) * self.f_value(theta)?)
    }

    /// `||f||_1 = a + 2 pi b`.
    pub fn f_l1(&self) -> T {
        self.a + T::two() * T::PI() * self.b
    }

    /// `||log f||_1`, with bump measure `1/c` and `log(a c + b)` kept in log form.
    pub fn log_f_l1(&self) -> T {
        let log_c = self.log_bump_height;
        let inv_c = (-log_c).exp();
        // log(a c + b) = log a + log c + log(1 + b / (a c))
        let log_top = self.a.ln() + log_c + (self.b / self.a * inv_c).ln_1p();
        inv_c * log_top.abs() + (T::two() * T::PI() - inv_c) * self.b.ln().abs()
    }

    /// Cell averages of `f` and `g` on an `n`-point grid.
    pub fn sample(&self, n: usize) -> Result<(GridFunction<T>, GridFunction<T>)> {
        let c = self.require_budget()?;
        let (lo, hi) = self.bump_interval();
        let step = T::two() * T::PI() / T::from_count(n);
        let e = (-self.epsilon).exp();
        let mut f = Vec::with_capacity(n);
        let mut g = Vec::with_capacity(n);
        for j in 0..n {
            let theta = grid_angle::<T>(j, n);
            let (left, right) = (theta - step * T::half(), theta + step * T::half());
            let overlap = (right.min(hi) - left.max(lo)).max(T::zero());
            let fj = self.a * c * overlap / step + self.b;
            // Cells centred on the jumps of h at 0 and -pi straddle both arcs.
            let hj = if j == 0 || 2 * j == n {
                (T::one() + e) * T::half()
            } else {
                self.h(theta)
            };
            f.push(fj);
            g.push(hj * fj);
        }
        Ok((GridFunction::from_real(f)?, GridFunction::from_real(g)?))
    }

    /// Number of grid points inside the bump.
    pub fn bump_samples(&self, n: usize) -> usize {
        let (lo, hi) = self.bump_interval();
        (0..n)
            .filter(|&j| {
                let t = grid_angle::<T>(j, n);
                t >= lo && t <= hi
            })
            .count()
    }
}

/// The family for index `n`: `eps = 1 / (2 pi n)`.
pub fn build_family<T: Real>(n: usize, delta_u: T, variant: Variant) -> Result<CounterexampleFamily<T>> {
    if n == 0 {
        return Err(Error::Parameter("family index n must be at least 1".into()));
    }
    let eps = (T::two() * T::PI() * T::from_count(n)).recip();
    let mut fam = CounterexampleFamily::from_epsilon(eps, delta_u, variant)?;
    fam.n = Some(n);
    let window = fam.kappa * delta_u;
    if window > T::lit(PSI_WINDOW) {
        return Err(Error::Parameter(format!(
            "|psi^ - pi| reaches {window} on the bump (limit {PSI_WINDOW})"
        )));
    }
    Ok(fam)
}

/// Analytic metrics of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Real"))]
pub struct FamilyMetrics<T> {
    /// `||f - g||_1`.
    pub m1: T,
    /// `||log f - log g||_1 = eps pi`.
    pub m2: T,
    /// `T3 - 4 m1`, a lower bound for `||f+ - g+||^2`.
    pub m3: T,
    /// `T1 + T2 + T3 = ||f+ - g+||^2`.
    pub m4: T,
    pub t1: T,
    pub t2: T,
    pub t3: T,
    /// Weighted mean of `1 - cos psi^` over the bump (at most 2).
    pub r: T,
    /// `||f||_1` with the bump mass integrated in shifted coordinates.
    pub f_l1: T,
    /// Quadrature error estimate of `r`.
    pub quad_error: T,
}

/// Closed forms plus one-dimensional quadrature over the bump.
pub fn family_metrics<T: Real>(fam: &CounterexampleFamily<T>) -> Result<FamilyMetrics<T>> {
    let (eps, a, b) = (fam.epsilon, fam.a, fam.b);
    let (u_star, d, kappa) = (fam.bump_center_u, fam.bump_halfwidth_u, fam.kappa);
    let weight = move |s: T| (-s).exp() / (T::one() + (-T::two() * (u_star + s)).exp());
    let opts = quad_options::<T>();
    let mass = integrate(weight, -d, d, opts)?;
    let top = integrate(move |s: T| (T::one() + (kappa * s).cos()) * weight(s), -d, d, opts)?;
    let r = top.value / mass.value;
    let quad_error = (top.error + r * mass.error) / mass.value;

    let pi = T::PI();
    // c * 2 e^{-u*} * int w = 1 exactly; the product is recomputed as a check.
    let bump_mass = (fam.log_bump_height - u_star + T::two().ln() + mass.value.ln()).exp();
    let f_l1 = a * bump_mass + T::two() * pi * b;

    let arc = pi * (T::one() - (eps / T::lit(4.0)).cosh().recip());
    let plus_mass = a + b * pi;
    let b_plus = a * r + b * arc;
    let b_minus = b * arc;
    let half_decay = (-eps * T::half()).exp();
    let t1 = (T::one() - half_decay).powi(2) * plus_mass;
    let t2 = T::two() * (half_decay - T::one()) * b_plus;
    let t3 = T::two() * (b_plus + b_minus);
    let m1 = -(-eps).exp_m1() * plus_mass;
    let m2 = eps * pi;
    Ok(FamilyMetrics {
        m1,
        m2,
        m3: t3 - T::lit(4.0) * m1,
        m4: t1 + t2 + t3,
        t1,
        t2,
        t3,
        r,
        f_l1,
        quad_error,
    })
}

/// Verdict for one family: `m1 <= 1/n`, `m2 <= 1/n` and `sqrt(m3) >= 2 - 1/n`.
pub fn verify_family<T: Real>(fam: &CounterexampleFamily<T>) -> Result<BoundReport<T>> {
    let n = fam
        .n
        .ok_or_else(|| Error::Parameter("verification needs an indexed family".into()))?;
    fam.require_budget()?;
    let m = family_metrics(fam)?;
    let inv_n = T::from_count(n).recip();
    let lower = m.m3.max(T::zero()).sqrt();
    let target = T::two() - inv_n;
    let pass = m.m1 <= inv_n && m.m2 <= inv_n && m.m3 > T::zero() && lower >= target;
    Ok(BoundReport::with_verdict("h2_distance_not_controlled", target, lower, pass)
        .detail("n", T::from_count(n))
        .detail("epsilon", fam.epsilon)
        .detail("l1_diff", m.m1)
        .detail("log_l1_diff", m.m2)
        .detail("h2_lower_sq", m.m3)
        .detail("h2_identity_sq", m.m4)
        .detail("h2_identity", m.m4.max(T::zero()).sqrt())
        .detail("t1", m.t1)
        .detail("t2", m.t2)
        .detail("t3", m.t3)
        .detail("f_l1", m.f_l1)
        .detail("log_bump_height", fam.log_bump_height)
        .detail("bump_center_u", fam.bump_center_u)
        .detail("delta_r", T::one() - m.r * T::half())
        .detail("weight_correction", (-T::two() * (fam.bump_center_u - fam.bump_halfwidth_u)).exp())
        .detail("quad_error", m.quad_error)
        .detail("budget", fam.budget())
        .note(SUBSTITUTION_NOTE))
}

/// [`verify_family`] for the floored family with index `n`.
pub fn verify_theorem_1<T: Real>(n: usize, delta_u: T) -> Result<BoundReport<T>> {
    verify_family(&build_family(n, delta_u, Variant::Floored)?)
}

/// Largest `n` whose family is representable in `T` for the given half-width.
pub fn max_feasible_n<T: Real>(delta_u: T) -> usize {
    (1..)
        .take_while(|&n| {
            build_family::<T>(n, delta_u, Variant::Floored)
                .map(|f| f.within_budget())
                .unwrap_or(false)
        })
        .last()
        .unwrap_or(0)
}

/// Compares the analytic metrics with a direct grid computation (plus-one
/// variant at moderate `eps`).
pub fn cross_validate_pipeline<T: Real>(epsilon: T, delta_u: T, n_pts: usize) -> Result<BoundReport<T>> {
    let fam = CounterexampleFamily::from_epsilon(epsilon, delta_u, Variant::PlusOne)?;
    if fam.bump_center_u > T::lit(MAX_GRID_CENTRE) {
        return Err(Error::Parameter(format!(
            "bump centre u* = {} exceeds {MAX_GRID_CENTRE}; increase eps",
            fam.bump_center_u
        )));
    }
    let covered = fam.bump_samples(n_pts);
    if covered < MIN_BUMP_SAMPLES {
        return Err(Error::Parameter(format!(
            "bump covers {covered} grid samples, need at least {MIN_BUMP_SAMPLES}"
        )));
    }
    let analytic = family_metrics(&fam)?;
    let (f, g) = fam.sample(n_pts)?;
    let grid = h2_identity_terms(&f, &g)?;

    let rel = |x: T, y: T| (x - y).abs() / x.abs().max(y.abs()).max(T::min_positive_value());
    let errors = [
        rel(analytic.t1, grid.t1),
        rel(analytic.t2, grid.t2),
        rel(analytic.t3, grid.t3),
        rel(analytic.m4, grid.sum),
        rel(analytic.m4, grid.direct),
    ];
    let worst = errors.iter().fold(T::zero(), |m, &e| m.max(e));
    let tol = T::lit(CROSS_VALIDATION_RTOL);
    Ok(BoundReport::with_verdict("pipeline_agreement", worst, tol, worst <= tol)
        .detail("epsilon", epsilon)
        .detail("delta_u", delta_u)
        .detail("n_pts", T::from_count(n_pts))
        .detail("bump_samples", T::from_count(covered))
        .detail("t1_analytic", analytic.t1)
        .detail("t1_grid", grid.t1)
        .detail("t2_analytic", analytic.t2)
        .detail("t2_grid", grid.t2)
        .detail("t3_analytic", analytic.t3)
        .detail("t3_grid", grid.t3)
        .detail("m4_analytic", analytic.m4)
        .detail("m4_grid", grid.sum)
        .detail("h2_sq_direct", grid.direct)
        .note(SUBSTITUTION_NOTE))
}
