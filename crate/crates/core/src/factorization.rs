//! Outer spectral factor of a density on the circle.
//!
//! Three routes produce the same normalized factor (`f+(0) > 0`):
//!
//! * [`factorize_boundary`]: boundary values `sqrt(f) exp((i/2) (log f)~)`
//!   followed by coefficient extraction. This is the reference algorithm.
//! * [`factorize_herglotz`]: direct quadrature of
//!   `exp((1/4pi) int (e^{it} + z)/(e^{it} - z) log f(t) dt)` inside the disk.
//! * [`fejer_riesz`]: root splitting for nonnegative trigonometric polynomials.

use num_complex::Complex;

use crate::circle::{check_grid_size, grid_angle, GridFunction};
use crate::error::{Error, Result};
use crate::fourier::{
    conjugate_samples, dft_forward, fourier_synthesize, signed_frequency, FourierSeries,
    SpectralFactor,
};
use crate::report::BoundReport;
use crate::roots::{
    polish_multiple_root, polish_root, polynomial_roots, product_from_roots,
};
use crate::scalar::Real;

/// Largest admissible `|z|` for Herglotz quadrature by default.
pub const HERGLOTZ_R_MAX: f64 = 0.95;

/// Relative negative part tolerated by [`fejer_riesz`].
pub const FEJER_RIESZ_TOL_NEG: f64 = 1e-10;

/// Width of the band around the unit circle in which roots count as on-circle.
pub const FEJER_RIESZ_TOL_CIRCLE: f64 = 1e-7;

/// Options for [`factorize_boundary`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BoundaryOptions<T> {
    /// Replace `f` by `max(f, floor)` instead of rejecting non-positive samples.
    pub floor: Option<T>,
}

/// Result of the boundary (cepstral) route.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryFactorization<T> {
    /// Coefficients `a_0 .. a_{n/2 - 1}`.
    pub factor: SpectralFactor<T>,
    /// Floor that was applied, if any.
    pub floor: Option<T>,
    /// Number of samples raised to the floor.
    pub floored_samples: usize,
    /// Energy of the boundary product at negative frequencies (and Nyquist),
    /// relative to its total energy. Small values witness outerness.
    pub negative_energy: T,
    /// `|Im a_0| / |a_0|` of the discrete product before `a_0` is made real.
    pub origin_phase_error: T,
}

pub(crate) fn positive_samples<T: Real>(f: &GridFunction<T>, floor: Option<T>) -> Result<(Vec<T>, usize)> {
    let values = f.require_real("spectral factorization")?;
    match floor {
        Some(delta) => {
            if !(delta > T::zero()) {
                return Err(Error::Parameter(format!("floor {delta} must be positive")));
            }
            let floored = values.iter().filter(|&&v| v < delta).count();
            Ok((values.iter().map(|&v| v.max(delta)).collect(), floored))
        }
        None => {
            if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| !(v > T::zero())) {
                return Err(Error::NonPositiveSample {
                    index,
                    theta: f.theta(index).to_f64_lossy(),
                    value: value.to_f64_lossy(),
                });
            }
            Ok((values.to_vec(), 0))
        }
    }
}

/// Outer factor from the boundary formula `f+ = sqrt(f) exp((i/2) (log f)~)`.
pub fn factorize_boundary<T: Real>(
    f: &GridFunction<T>,
    options: BoundaryOptions<T>,
) -> Result<BoundaryFactorization<T>> {
    let (values, floored_samples) = positive_samples(f, options.floor)?;
    let n = values.len();
    let log_f: Vec<T> = values.iter().map(|v| v.ln()).collect();
    let conj = conjugate_samples(&log_f);
    let boundary: Vec<Complex<T>> = values
        .iter()
        .zip(&conj)
        .map(|(&v, &c)| Complex::from_polar(v.sqrt(), c * T::half()))
        .collect();

    let spectrum = dft_forward(&boundary);
    let inv_n = T::from_count(n).recip();
    let mut coeffs = Vec::with_capacity(n / 2);
    let mut total = T::zero();
    let mut negative = T::zero();
    for (b, x) in spectrum.iter().enumerate() {
        let k = signed_frequency(b, n);
        let energy = x.norm_sqr();
        total = total + energy;
        if k < 0 || 2 * k as usize == n {
            negative = negative + energy;
        }
    }
    for (k, x) in spectrum.iter().take(n / 2).enumerate() {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        coeffs.push(*x * (sign * inv_n));
    }
    let origin_phase_error = coeffs[0].im.abs() / coeffs[0].norm();
    coeffs[0] = Complex::new(coeffs[0].re, T::zero());
    let factor = SpectralFactor::new(coeffs)?;
    Ok(BoundaryFactorization {
        factor,
        floor: options.floor,
        floored_samples,
        negative_energy: negative / total,
        origin_phase_error,
    })
}

/// Values of the outer factor at interior points by quadrature of the
/// Herglotz representation on the grid of `f`.
pub fn factorize_herglotz<T: Real>(
    f: &GridFunction<T>,
    points: &[Complex<T>],
    r_max: T,
) -> Result<Vec<Complex<T>>> {
    if let Some(z) = points.iter().find(|z| !(z.norm() <= r_max)) {
        return Err(Error::Parameter(format!(
            "|z| = {} exceeds r_max = {r_max}; the kernel is not resolved on the grid",
            z.norm()
        )));
    }
    let (values, _) = positive_samples(f, None)?;
    let n = values.len();
    let log_f: Vec<T> = values.iter().map(|v| v.ln()).collect();
    let nodes: Vec<Complex<T>> = (0..n)
        .map(|j| Complex::from_polar(T::one(), grid_angle::<T>(j, n)))
        .collect();
    // (1/4pi) * (2pi/n) = 1/(2n)
    let weight = (T::two() * T::from_count(n)).recip();
    Ok(points
        .iter()
        .map(|&z| {
            let sum = nodes
                .iter()
                .zip(&log_f)
                .fold(Complex::new(T::zero(), T::zero()), |acc, (&e, &l)| {
                    acc + (e + z) / (e - z) * l
                });
            (sum * weight).exp()
        })
        .collect())
}

/// Outer factor coefficients `a_0..a_degree` from Herglotz values on the
/// circle `|z| = radius`, by a discrete Cauchy integral.
pub fn herglotz_factor<T: Real>(
    f: &GridFunction<T>,
    degree: usize,
    radius: T,
) -> Result<SpectralFactor<T>> {
    if !(radius > T::zero()) {
        return Err(Error::Parameter(format!("radius {radius} must be positive")));
    }
    let m = (4 * (degree + 1)).next_power_of_two().max(1024);
    let points: Vec<Complex<T>> = (0..m)
        .map(|j| {
            Complex::from_polar(
                radius,
                T::two() * T::PI() * T::from_count(j) / T::from_count(m),
            )
        })
        .collect();
    let values = factorize_herglotz(f, &points, T::lit(HERGLOTZ_R_MAX))?;
    let spectrum = dft_forward(&values);
    let inv_m = T::from_count(m).recip();
    let coeffs = (0..=degree)
        .map(|k| spectrum[k] * inv_m / radius.powi(k as i32))
        .collect();
    SpectralFactor::new(coeffs)
}

/// Checks `log f+(0) = (1/4pi) int log f` for a candidate factor.
///
/// The candidate is given by its one-sided coefficients so that factors
/// violating the normalization (e.g. inner multiples) can be tested.
pub fn outer_check<T: Real>(coeffs: &[Complex<T>], f: &GridFunction<T>) -> Result<BoundReport<T>> {
    let (values, _) = positive_samples(f, None)?;
    let n = T::from_count(values.len());
    let mean_log = values.iter().fold(T::zero(), |s, v| s + v.ln()) / n;
    let rhs = mean_log * T::half();
    let a0 = coeffs
        .first()
        .copied()
        .unwrap_or_else(|| Complex::new(T::zero(), T::zero()));
    let lhs = a0.norm().max(T::min_positive_value()).ln();
    let tol = T::lit(1e-8);
    let close = (lhs - rhs).abs() <= tol * (T::one() + rhs.abs());
    let positive = a0.re > T::zero() && a0.im.abs() <= T::lit(1e-10) * a0.re;
    Ok(BoundReport::with_verdict("outer_check", lhs, rhs, close && positive)
        .detail("a0_re", a0.re)
        .detail("a0_im", a0.im)
        .detail("tol", tol))
}

/// Options for [`fejer_riesz`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FejerRieszOptions<T> {
    pub tol_neg: T,
    pub tol_circle: T,
}

impl<T: Real> Default for FejerRieszOptions<T> {
    fn default() -> Self {
        Self {
            tol_neg: T::lit(FEJER_RIESZ_TOL_NEG),
            tol_circle: T::lit(FEJER_RIESZ_TOL_CIRCLE),
        }
    }
}

/// Fejer-Riesz factorization `f = |sum_{k=0}^N a_k e^{ikt}|^2` of a
/// nonnegative trigonometric polynomial of degree `N`, with `a_0 > 0` and
/// all roots of `sum a_k z^k` outside the open unit disk.
pub fn fejer_riesz<T: Real>(
    c: &FourierSeries<T>,
    options: FejerRieszOptions<T>,
) -> Result<SpectralFactor<T>> {
    if !c.is_real_valued() {
        return Err(Error::Parameter(
            "Fejer-Riesz factorization needs c_{-k} = conj(c_k)".into(),
        ));
    }
    let degree = c.effective_degree(T::lit(1e-15));
    let c0 = c.get(0).re;

    // Nonnegativity on a validation grid well above the Nyquist rate.
    let n_check = (16 * (degree + 1)).next_power_of_two().max(256);
    let grid = fourier_synthesize(&c.truncated(degree), n_check)?;
    let samples = grid.require_real("nonnegativity check")?;
    let max = samples.iter().fold(T::zero(), |m, &v| m.max(v));
    let min = samples.iter().fold(T::infinity(), |m, &v| m.min(v));
    if !(max > T::zero()) || min < -options.tol_neg * max {
        return Err(Error::Domain(format!(
            "trigonometric polynomial is not nonnegative (min {min}, max {max})"
        )));
    }

    if degree == 0 {
        return SpectralFactor::new(vec![Complex::new(c0.sqrt(), T::zero())]);
    }

    // t^N f(t) as an ordinary polynomial of degree 2N.
    let poly: Vec<Complex<T>> = (0..=2 * degree)
        .map(|j| c.get(j as i64 - degree as i64))
        .collect();
    let roots = polynomial_roots(&poly)?;
    let selected = select_outer_roots(&poly, &roots, degree, options.tol_circle)?;

    let monic = product_from_roots(&selected);
    let energy = monic.iter().fold(T::zero(), |s, b| s + b.norm_sqr());
    let scale = (c0 / energy).sqrt();
    let coeffs: Vec<Complex<T>> = monic.into_iter().map(|b| b * scale).collect();
    let factor = SpectralFactor::new(coeffs)?;

    let residual = fejer_riesz_residual(&factor, c, n_check)?;
    if residual > T::lit(1e-6) {
        return Err(Error::Conditioning(format!(
            "reconstructed |a|^2 deviates from f by {residual} relative"
        )));
    }
    Ok(factor)
}

/// `max_j ||a(e^{it_j})|^2 - f(t_j)| / max f` on an `n`-point grid.
pub fn fejer_riesz_residual<T: Real>(
    factor: &SpectralFactor<T>,
    c: &FourierSeries<T>,
    n: usize,
) -> Result<T> {
    check_grid_size(n)?;
    let f = fourier_synthesize(c, n)?;
    let f = f.require_real("residual")?;
    let a = factor.boundary(n)?.to_complex();
    let max = f.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    Ok(a.iter()
        .zip(f)
        .fold(T::zero(), |m, (z, &v)| m.max((z.norm_sqr() - v).abs()))
        / max)
}

/// Maximum distance at which root estimates are merged into one cluster.
/// Estimates of an `m`-fold zero scatter by about `eps^(1/m)`.
const CLUSTER_LINK: f64 = 1e-3;

/// Picks one root from each reciprocal pair `(r, 1/conj r)`: every root
/// strictly outside the circle, and half of each even cluster on the circle.
///
/// Estimates are clustered by proximity; a cluster whose refined centre lies
/// within `tol_circle` of the unit circle is a zero of `f` on the circle and
/// must have even size.
fn select_outer_roots<T: Real>(
    poly: &[Complex<T>],
    roots: &[Complex<T>],
    degree: usize,
    tol_circle: T,
) -> Result<Vec<Complex<T>>> {
    let one = T::one();
    let link = T::lit(CLUSTER_LINK);

    let mut assigned = vec![false; roots.len()];
    let mut selected = Vec::with_capacity(degree);
    for seed in 0..roots.len() {
        if assigned[seed] {
            continue;
        }
        assigned[seed] = true;
        let mut members = vec![seed];
        let mut i = 0;
        while i < members.len() {
            let centre = roots[members[i]];
            for j in 0..roots.len() {
                if !assigned[j] && (roots[j] - centre).norm() <= link {
                    assigned[j] = true;
                    members.push(j);
                }
            }
            i += 1;
        }

        let m = members.len();
        let mean = members
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |s, &i| s + roots[i])
            / T::from_count(m);
        let centre = if m > 1 {
            polish_multiple_root(poly, mean, m)
        } else {
            mean
        };
        if (centre.norm() - one).abs() <= tol_circle {
            if m % 2 == 1 {
                return Err(Error::Conditioning(format!(
                    "odd cluster of {m} roots on the unit circle near {centre}"
                )));
            }
            let on_unit = centre / centre.norm();
            selected.extend(std::iter::repeat(on_unit).take(m / 2));
        } else {
            selected.extend(
                members
                    .iter()
                    .map(|&i| roots[i])
                    .filter(|r| r.norm() > one + tol_circle)
                    .map(|r| polish_root(poly, r, 8)),
            );
        }
    }

    if selected.len() != degree {
        return Err(Error::Conditioning(format!(
            "root pairing selected {} roots for a factor of degree {degree}",
            selected.len()
        )));
    }
    Ok(selected)
}
