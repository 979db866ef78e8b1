//! N-functions, Orlicz and Luxemburg norms, the scale function `Lambda_Phi`,
//! and the distribution-function estimates for the conjugation operator.

use std::fmt;
use std::sync::Arc;

use crate::circle::{lp_norm, GridFunction};
use crate::constants::davis_constant;
use crate::error::{Error, Result};
use crate::fourier::harmonic_conjugate;
use crate::quad::{integrate, QuadOptions};
use crate::report::BoundReport;
use crate::scalar::Real;

/// Relative width at which the monotone bisections stop.
const BISECTION_RTOL: f64 = 1e-13;

/// Log-step used while expanding brackets.
const BRACKET_STEP: f64 = 2.0;

/// Right-continuous nondecreasing density `u` given by nodes `(t_i, u_i)`,
/// interpolated as a power law between nodes (linear in log-log scale) and
/// extended by power laws below the first and beyond the last node.
///
/// Repeated abscissae encode jumps. `Phi` is integrated exactly per segment.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTable<T> {
    t: Vec<T>,
    u: Vec<T>,
    /// `Phi(t_i)`.
    cumulative: Vec<T>,
    low_exponent: T,
    high_exponent: T,
}

fn log_slope<T: Real>(t0: T, u0: T, t1: T, u1: T) -> T {
    (u1 / u0).ln() / (t1 / t0).ln()
}

/// `int_{t0}^{x} u0 (t/t0)^alpha dt`.
fn power_segment<T: Real>(t0: T, u0: T, alpha: T, x: T) -> T {
    let e = alpha + T::one();
    u0 * t0 / e * ((x / t0).powf(e) - T::one())
}

impl<T: Real> DensityTable<T> {
    /// Validates and tabulates `u` from `(t, u(t))` nodes. A leading `(0, 0)` node is allowed.
    pub fn new(nodes: &[(T, T)]) -> Result<Self> {
        let mut nodes: Vec<(T, T)> = nodes.to_vec();
        if let Some(&(t0, u0)) = nodes.first() {
            if t0 == T::zero() {
                if u0 != T::zero() {
                    return Err(Error::Parameter("density must satisfy u(0) = 0".into()));
                }
                nodes.remove(0);
            }
        }
        if nodes.len() < 2 {
            return Err(Error::Parameter(
                "density needs at least two nodes with t > 0".into(),
            ));
        }
        for w in nodes.windows(2) {
            let ((ta, ua), (tb, ub)) = (w[0], w[1]);
            if tb < ta || ub < ua {
                return Err(Error::Parameter(
                    "density nodes must be nondecreasing in t and u".into(),
                ));
            }
            if ta == tb && ua == ub {
                return Err(Error::Parameter("duplicate density node".into()));
            }
        }
        if nodes
            .iter()
            .any(|&(t, u)| !(t > T::zero()) || !(u > T::zero()) || !t.is_finite() || !u.is_finite())
        {
            return Err(Error::Parameter(
                "density nodes need finite t > 0 and u(t) > 0".into(),
            ));
        }
        let (t, u): (Vec<T>, Vec<T>) = nodes.into_iter().unzip();
        let last = t.len() - 1;
        let degenerate = |a: usize, b: usize| t[a] == t[b] || u[a] == u[b];
        if degenerate(0, 1) {
            return Err(Error::Parameter(
                "first segment must be strictly increasing so that u(0+) = 0".into(),
            ));
        }
        if degenerate(last - 1, last) {
            return Err(Error::Parameter(
                "last segment must be strictly increasing so that u(inf) = inf".into(),
            ));
        }
        let low_exponent = log_slope(t[0], u[0], t[1], u[1]);
        let high_exponent = log_slope(t[last - 1], u[last - 1], t[last], u[last]);

        let mut cumulative = Vec::with_capacity(t.len());
        cumulative.push(u[0] * t[0] / (low_exponent + T::one()));
        for i in 0..last {
            let add = if t[i] == t[i + 1] {
                T::zero()
            } else {
                let alpha = log_slope(t[i], u[i], t[i + 1], u[i + 1]);
                power_segment(t[i], u[i], alpha, t[i + 1])
            };
            cumulative.push(cumulative[i] + add);
        }
        Ok(Self {
            t,
            u,
            cumulative,
            low_exponent,
            high_exponent,
        })
    }

    pub fn nodes(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.t.iter().copied().zip(self.u.iter().copied())
    }

    /// Index of the last node with `t_i <= x`, or `None` below the first node.
    fn segment(&self, x: T) -> Option<usize> {
        let idx = self.t.partition_point(|&ti| ti <= x);
        idx.checked_sub(1)
    }

    fn density(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        let last = self.t.len() - 1;
        match self.segment(x) {
            None => self.u[0] * (x / self.t[0]).powf(self.low_exponent),
            Some(i) if i == last => self.u[last] * (x / self.t[last]).powf(self.high_exponent),
            Some(i) => {
                let alpha = log_slope(self.t[i], self.u[i], self.t[i + 1], self.u[i + 1]);
                self.u[i] * (x / self.t[i]).powf(alpha)
            }
        }
    }

    fn integral(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        let last = self.t.len() - 1;
        match self.segment(x) {
            None => {
                self.u[0] * self.t[0] / (self.low_exponent + T::one())
                    * (x / self.t[0]).powf(self.low_exponent + T::one())
            }
            Some(i) if i == last => {
                self.cumulative[last]
                    + power_segment(self.t[last], self.u[last], self.high_exponent, x)
            }
            Some(i) => {
                let alpha = log_slope(self.t[i], self.u[i], self.t[i + 1], self.u[i + 1]);
                self.cumulative[i] + power_segment(self.t[i], self.u[i], alpha, x)
            }
        }
    }

    /// Table of `v(x) = sup{t : u(t) <= x}`: the nodes with coordinates swapped.
    fn complement(&self) -> Self {
        let nodes: Vec<(T, T)> = self.u.iter().copied().zip(self.t.iter().copied()).collect();
        Self::new(&nodes).expect("complement of a valid density is valid")
    }
}

/// An N-function `Phi(x) = int_0^{|x|} u(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub enum NFunction<T> {
    /// `Phi(x) = |x|^q / q`, `q > 1`.
    Power { q: T },
    Density(DensityTable<T>),
}

impl<T: Real> NFunction<T> {
    pub fn power(q: T) -> Result<Self> {
        if !(q > T::one()) || !q.is_finite() {
            return Err(Error::Parameter(format!("power N-function needs 1 < q < inf, got {q}")));
        }
        Ok(Self::Power { q })
    }

    pub fn from_density(nodes: &[(T, T)]) -> Result<Self> {
        Ok(Self::Density(DensityTable::new(nodes)?))
    }

    pub fn value(&self, x: T) -> T {
        let x = x.abs();
        match self {
            Self::Power { q } => x.powf(*q) / *q,
            Self::Density(table) => table.integral(x),
        }
    }

    /// Right derivative `u(x)` for `x >= 0`.
    pub fn derivative(&self, x: T) -> T {
        let x = x.abs();
        match self {
            Self::Power { q } => x.powf(*q - T::one()),
            Self::Density(table) => table.density(x),
        }
    }

    /// The complementary N-function `Psi`, with density `v(x) = sup{t : u(t) <= x}`.
    pub fn complement(&self) -> Self {
        match self {
            Self::Power { q } => Self::Power {
                q: *q / (*q - T::one()),
            },
            Self::Density(table) => Self::Density(table.complement()),
        }
    }

    /// `Phi^{-1}(y)` for `y >= 0`.
    pub fn inverse(&self, y: T) -> T {
        if y <= T::zero() {
            return T::zero();
        }
        match self {
            Self::Power { q } => (*q * y).powf(q.recip()),
            Self::Density(_) => {
                // Phi is strictly increasing; largest x with Phi(x) <= y.
                let (lo, hi) = geometric_bisection(|x| self.value(x) <= y);
                (lo * hi).sqrt()
            }
        }
    }

    /// Midpoint convexity `Phi((x+y)/2) <= (Phi(x) + Phi(y))/2` at the given pairs.
    pub fn is_midpoint_convex(&self, pairs: &[(T, T)], tol: T) -> bool {
        pairs.iter().all(|&(x, y)| {
            let mid = self.value((x + y) * T::half());
            let avg = (self.value(x) + self.value(y)) * T::half();
            mid <= avg + tol * (T::one() + avg.abs())
        })
    }
}

/// Finds the transition of a predicate that is true below and false above
/// some positive threshold. Returns `(lo, hi)` with `pred(lo)`, `!pred(hi)`
/// and `hi / lo - 1` below the bisection tolerance.
fn geometric_bisection<T: Real>(pred: impl Fn(T) -> bool) -> (T, T) {
    let step = T::lit(BRACKET_STEP);
    let (mut lo, mut hi);
    if pred(T::one()) {
        lo = T::one();
        hi = step;
        while pred(hi) {
            lo = hi;
            hi = hi * step;
            if !hi.is_finite() {
                return (lo, T::infinity());
            }
        }
    } else {
        hi = T::one();
        lo = hi / step;
        while !pred(lo) {
            hi = lo;
            lo = lo / step;
            if lo == T::zero() {
                return (T::zero(), hi);
            }
        }
    }
    let rtol = T::lit(BISECTION_RTOL).max(T::epsilon() * T::lit(4.0));
    while hi / lo - T::one() > rtol {
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// `Lambda_Phi(s) = inf{t > 0 : (1/t) Phi'(1/t) <= 1/s}`.
///
/// With `tau = 1/t`, the condition reads `tau u(tau) <= 1/s`, and
/// `tau u(tau)` is nondecreasing, so `Lambda_Phi(s) = 1 / sup{tau : tau u(tau) <= 1/s}`.
pub fn lambda_phi<T: Real>(phi: &NFunction<T>, s: T) -> Result<T> {
    if !(s > T::zero()) || !s.is_finite() {
        return Err(Error::Parameter(format!("Lambda_Phi needs s > 0, got {s}")));
    }
    let level = s.recip();
    let (lo, hi) = geometric_bisection(|tau| tau * phi.derivative(tau) <= level);
    if !hi.is_finite() || lo == T::zero() {
        return Err(Error::Domain(format!(
            "Lambda_Phi({s}) out of range of the scalar type"
        )));
    }
    Ok(((lo * hi).sqrt()).recip())
}

fn modular<T: Real>(moduli: &[T], spacing: T, phi: &NFunction<T>, scale: T) -> T {
    moduli
        .iter()
        .fold(T::zero(), |acc, &x| acc + phi.value(x * scale))
        * spacing
}

/// Luxemburg norm `inf{kappa > 0 : int Phi(f / kappa) <= 1}`.
pub fn luxemburg_norm<T: Real>(f: &GridFunction<T>, phi: &NFunction<T>) -> Result<T> {
    let moduli = f.moduli();
    let max = moduli.iter().fold(T::zero(), |m, &x| m.max(x));
    if max == T::zero() {
        return Ok(T::zero());
    }
    let spacing = f.spacing();
    // Work with kappa = max * r so the bracket starts near r = 1.
    let nan = std::cell::Cell::new(false);
    let (_, hi) = geometric_bisection(|r: T| {
        let m = modular(&moduli, spacing, phi, (max * r).recip());
        if m.is_nan() {
            nan.set(true);
        }
        // The predicate is true on the small-kappa side.
        !(m <= T::one())
    });
    if nan.get() || !hi.is_finite() {
        return Err(Error::Domain(
            "Orlicz modular not finite while bracketing the Luxemburg norm".into(),
        ));
    }
    Ok(max * hi)
}

/// Orlicz norm in the Amemiya form `inf_{k > 0} (1 + int Phi(k f)) / k`,
/// minimized by golden-section search in `log k`.
pub fn orlicz_norm<T: Real>(f: &GridFunction<T>, phi: &NFunction<T>) -> Result<T> {
    let lux = luxemburg_norm(f, phi)?;
    if lux == T::zero() {
        return Ok(T::zero());
    }
    let moduli = f.moduli();
    let spacing = f.spacing();
    let amemiya = |log_k: T| {
        let k = log_k.exp();
        let v = (T::one() + modular(&moduli, spacing, phi, k)) / k;
        if v.is_finite() {
            v
        } else {
            T::infinity()
        }
    };

    // The minimizer lies above 1/(2 lux): below it (1 + I)/k >= 1/k >= 2 lux >= A(1/lux).
    let ln2 = T::two().ln();
    let mut left = -lux.ln() - ln2;
    let mut mid = -lux.ln();
    let mut f_mid = amemiya(mid);
    if !f_mid.is_finite() {
        return Err(Error::Domain("Amemiya functional overflows at 1/||f||".into()));
    }
    let mut right = mid + ln2;
    let mut f_right = amemiya(right);
    let mut guard = 0;
    while f_right <= f_mid {
        left = mid;
        mid = right;
        f_mid = f_right;
        right = right + ln2;
        f_right = amemiya(right);
        guard += 1;
        if guard > 2000 {
            return Err(Error::Domain("Amemiya minimizer not bracketed".into()));
        }
    }

    let ratio = T::lit(0.381_966_011_250_105_1);
    let tol = T::lit(1e-10);
    let (mut a, mut b) = (left, right);
    let mut x1 = a + ratio * (b - a);
    let mut x2 = b - ratio * (b - a);
    let mut f1 = amemiya(x1);
    let mut f2 = amemiya(x2);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + ratio * (b - a);
            f1 = amemiya(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - ratio * (b - a);
            f2 = amemiya(x2);
        }
    }
    let best = f1.min(f2).min(f_mid);
    if !best.is_finite() {
        return Err(Error::Domain("Amemiya minimum not finite".into()));
    }
    Ok(best)
}

/// Hoelder inequality `|int f g| <= ||f||_Psi ||g||_(Phi)`, `Phi` the complement of `Psi`.
pub fn holder_check<T: Real>(
    f: &GridFunction<T>,
    g: &GridFunction<T>,
    psi: &NFunction<T>,
) -> Result<BoundReport<T>> {
    let pairing = f.zip_real(g, |a, b| a * b)?.integral()?.abs();
    let phi = psi.complement();
    let f_norm = orlicz_norm(f, psi)?;
    let g_norm = luxemburg_norm(g, &phi)?;
    Ok(
        BoundReport::inequality("holder", pairing, f_norm * g_norm, T::lit(1e-9), T::lit(1e-12))
            .detail("orlicz_norm_f", f_norm)
            .detail("luxemburg_norm_g", g_norm),
    )
}

type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A bounded absolutely continuous `G : [0, inf) -> [0, inf)` with `G(0) = 0`,
/// nondecreasing on `[0, a]` and maximal at `a`.
#[derive(Clone)]
pub struct GSpec<T> {
    name: String,
    g: ScalarFn<T>,
    dg: ScalarFn<T>,
    a: T,
}

impl<T: Real> fmt::Debug for GSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GSpec")
            .field("name", &self.name)
            .field("a", &self.a)
            .finish()
    }
}

impl<T: Real> GSpec<T> {
    /// Closed-form `G` with derivative `dg`; the shape conditions are checked
    /// at sample points on `[0, 8a]`.
    pub fn new(
        name: impl Into<String>,
        g: impl Fn(T) -> T + Send + Sync + 'static,
        dg: impl Fn(T) -> T + Send + Sync + 'static,
        a: T,
    ) -> Result<Self> {
        let spec = Self {
            name: name.into(),
            g: Arc::new(g),
            dg: Arc::new(dg),
            a,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `G(lambda) = 1 - cos(lambda)`, maximal at `a = pi`.
    pub fn one_minus_cos() -> Self {
        Self::new("1 - cos", |x: T| T::one() - x.cos(), |x: T| x.sin(), T::PI())
            .expect("valid G")
    }

    /// `G(lambda) = min(lambda^2, 1)`, maximal at `a = 1`.
    pub fn clipped_square() -> Self {
        Self::new(
            "min(x^2, 1)",
            |x: T| (x * x).min(T::one()),
            |x: T| if x < T::one() { T::two() * x } else { T::zero() },
            T::one(),
        )
        .expect("valid G")
    }

    /// `G` given by samples of `G'` on an increasing grid starting at 0;
    /// `G'` is linear between samples and zero beyond the last one.
    pub fn from_derivative_grid(name: impl Into<String>, nodes: Vec<(T, T)>, a: T) -> Result<Self> {
        if nodes.len() < 2 || nodes[0].0 != T::zero() {
            return Err(Error::Parameter(
                "derivative grid must start at 0 and have two nodes".into(),
            ));
        }
        if nodes.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::Parameter("derivative grid must be increasing".into()));
        }
        let mut cumulative = vec![T::zero()];
        for w in nodes.windows(2) {
            let last = *cumulative.last().expect("non-empty");
            cumulative.push(last + (w[1].0 - w[0].0) * (w[0].1 + w[1].1) * T::half());
        }
        let nodes = Arc::new(nodes);
        let cumulative = Arc::new(cumulative);
        let locate = {
            let nodes = Arc::clone(&nodes);
            move |x: T| -> Option<(usize, T)> {
                let i = nodes.partition_point(|&(t, _)| t <= x);
                if i == 0 || i >= nodes.len() {
                    return None;
                }
                let (t0, _) = nodes[i - 1];
                Some((i - 1, x - t0))
            }
        };
        let dg = {
            let nodes = Arc::clone(&nodes);
            let locate = locate.clone();
            move |x: T| match locate(x) {
                None => T::zero(),
                Some((i, dx)) => {
                    let (t0, d0) = nodes[i];
                    let (t1, d1) = nodes[i + 1];
                    d0 + (d1 - d0) * dx / (t1 - t0)
                }
            }
        };
        let g = {
            let nodes = Arc::clone(&nodes);
            let cumulative = Arc::clone(&cumulative);
            move |x: T| {
                if x <= T::zero() {
                    return T::zero();
                }
                match locate(x) {
                    None => *cumulative.last().expect("non-empty"),
                    Some((i, dx)) => {
                        let (t0, d0) = nodes[i];
                        let (t1, d1) = nodes[i + 1];
                        let slope = (d1 - d0) / (t1 - t0);
                        cumulative[i] + d0 * dx + slope * dx * dx * T::half()
                    }
                }
            }
        };
        Self::new(name, g, dg, a)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a > T::zero()) || !self.a.is_finite() {
            return Err(Error::Parameter(format!("maximizer a = {} must be positive", self.a)));
        }
        if (self.g)(T::zero()).abs() > T::lit(1e-14) {
            return Err(Error::Parameter("G(0) must vanish".into()));
        }
        let samples = 512;
        let ga = (self.g)(self.a);
        let slack = T::lit(1e-12) * (T::one() + ga.abs());
        let mut prev = T::zero();
        for j in 1..=samples {
            let x = self.a * T::from_count(j) / T::from_count(samples);
            let v = (self.g)(x);
            if v < prev - slack || v < T::zero() {
                return Err(Error::Parameter(format!(
                    "G must be nonnegative and nondecreasing on [0, a] (fails near {x})"
                )));
            }
            prev = v;
        }
        for j in 0..=8 * samples {
            let x = self.a * T::from_count(j) / T::from_count(samples);
            if (self.g)(x) > ga + slack {
                return Err(Error::Parameter(format!(
                    "G exceeds G(a) at {x}; a is not a maximizer"
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn eval(&self, x: T) -> T {
        (self.g)(x)
    }

    /// `I(G) = int_0^a G'(lambda) / lambda d lambda`.
    pub fn i_of_g(&self) -> Result<T> {
        let dg = Arc::clone(&self.dg);
        integrate(
            move |x: T| dg(x) / x,
            T::zero(),
            self.a,
            QuadOptions {
                abs_tol: T::lit(1e-13),
                rel_tol: T::lit(1e-11),
                max_intervals: 4000,
            },
        )
        .map(|q| q.value)
        .map_err(|e| Error::Domain(format!("I(G) diverges or is not computable: {e}")))
    }
}

/// `int G(|psi~|) <= K I(G) ||psi||_1` for the harmonic conjugate `psi~`.
pub fn lemma_g_report<T: Real>(g: &GSpec<T>, psi: &GridFunction<T>) -> Result<BoundReport<T>> {
    let conj = harmonic_conjugate(psi)?;
    let lhs = conj
        .as_real()
        .expect("conjugate is real")
        .iter()
        .fold(T::zero(), |s, &x| s + g.eval(x.abs()))
        * conj.spacing();
    let i_g = g.i_of_g()?;
    let k = davis_constant::<T>();
    let l1 = lp_norm(psi, T::one())?;
    Ok(
        BoundReport::inequality("weak_type_g", lhs, k * i_g * l1, T::lit(0.02), T::lit(1e-12))
            .detail("I_G", i_g)
            .detail("K", k)
            .detail("psi_l1", l1)
            .detail("a", g.a())
            .note(format!("G = {}", g.name())),
    )
}

/// `sup_lambda lambda m{|psi~| >= lambda} / ||psi||_1` with the grid measure.
///
/// Without an explicit `lambdas` list the supremum is taken exactly over the
/// sample magnitudes of `|psi~|`, where the step function attains it.
pub fn weak11_ratio<T: Real>(psi: &GridFunction<T>, lambdas: Option<&[T]>) -> Result<T> {
    let l1 = lp_norm(psi, T::one())?;
    if l1 == T::zero() {
        return Err(Error::Parameter("weak (1,1) ratio needs psi != 0".into()));
    }
    let conj = harmonic_conjugate(psi)?;
    let spacing = conj.spacing();
    let mut mags: Vec<T> = conj.as_real().expect("real").iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let count_at_least = |lambda: T| mags.partition_point(|&m| m >= lambda);
    let best = match lambdas {
        Some(ls) => ls
            .iter()
            .filter(|&&l| l > T::zero())
            .fold(T::zero(), |best, &l| {
                best.max(l * T::from_count(count_at_least(l)) * spacing)
            }),
        None => mags
            .iter()
            .filter(|&&l| l > T::zero())
            .fold(T::zero(), |best, &l| {
                best.max(l * T::from_count(count_at_least(l)) * spacing)
            }),
    };
    Ok(best / l1)
}

/// [`weak11_ratio`] against Davis' constant with the 5% grid tolerance.
pub fn weak11_report<T: Real>(psi: &GridFunction<T>) -> Result<BoundReport<T>> {
    let ratio = weak11_ratio(psi, None)?;
    let k = davis_constant::<T>();
    Ok(BoundReport::inequality("weak_type_1_1", ratio, k, T::lit(0.05), T::zero()).detail("K", k))
}
