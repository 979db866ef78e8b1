//! Fourier analysis on the circle: coefficient sequences, the harmonic
//! conjugation operator, the analytic (Herglotz) projection and the H_2 metric.

use std::collections::BTreeMap;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::circle::{check_grid_size, GridFunction, Samples};
use crate::error::{Error, Result};
use crate::scalar::{is_finite_complex, Real};

/// Relative tolerance under which a coefficient sequence counts as Hermitian.
const HERMITIAN_TOL: f64 = 1e-12;

/// Unnormalized forward DFT, `X_k = sum_j x_j e^{-2 pi i jk/n}`.
pub(crate) fn dft_forward<T: Real>(values: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut buf = values.to_vec();
    FftPlanner::<T>::new()
        .plan_fft_forward(buf.len())
        .process(&mut buf);
    buf
}

/// Unnormalized inverse DFT, `x_j = sum_k X_k e^{2 pi i jk/n}`.
pub(crate) fn dft_inverse<T: Real>(spectrum: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut buf = spectrum.to_vec();
    FftPlanner::<T>::new()
        .plan_fft_inverse(buf.len())
        .process(&mut buf);
    buf
}

/// Signed frequency of DFT bin `b` on an `n`-point grid; the Nyquist bin maps to `n/2`.
#[inline]
pub(crate) fn signed_frequency(b: usize, n: usize) -> i64 {
    if b <= n / 2 {
        b as i64
    } else {
        b as i64 - n as i64
    }
}

/// `(-1)^k`, the phase between the `[-pi, pi)` grid and the standard DFT.
#[inline]
fn alternating<T: Real>(k: i64) -> T {
    if k.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Finite two-sided coefficient sequence `c_k`, `k` in `[-K, K]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries<T> {
    bandwidth: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> FourierSeries<T> {
    /// `coeffs[i]` is the coefficient of frequency `i - bandwidth`.
    pub fn new(bandwidth: usize, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.len() != 2 * bandwidth + 1 {
            return Err(Error::Parameter(format!(
                "bandwidth {bandwidth} needs {} coefficients, got {}",
                2 * bandwidth + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !is_finite_complex(c)) {
            return Err(Error::Parameter("non-finite Fourier coefficient".into()));
        }
        Ok(Self { bandwidth, coeffs })
    }

    pub fn zero(bandwidth: usize) -> Self {
        Self {
            bandwidth,
            coeffs: vec![Complex::new(T::zero(), T::zero()); 2 * bandwidth + 1],
        }
    }

    /// Builds a series from sparse `(frequency, coefficient)` entries.
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, Complex<T>)>) -> Result<Self> {
        let map: BTreeMap<i64, Complex<T>> = entries.into_iter().collect();
        let bandwidth = map.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut s = Self::zero(bandwidth);
        for (k, c) in map {
            if !is_finite_complex(&c) {
                return Err(Error::Parameter(format!("coefficient {k} is not finite")));
            }
            *s.get_mut(k).expect("within bandwidth") = c;
        }
        Ok(s)
    }

    /// Real trigonometric polynomial `c_0 + sum_k (a_k cos k t + b_k sin k t)`.
    pub fn real_trig(c0: T, cos: &[T], sin: &[T]) -> Self {
        let bandwidth = cos.len().max(sin.len());
        let mut s = Self::zero(bandwidth);
        s.coeffs[bandwidth] = Complex::new(c0, T::zero());
        for k in 1..=bandwidth {
            let a = cos.get(k - 1).copied().unwrap_or_else(T::zero);
            let b = sin.get(k - 1).copied().unwrap_or_else(T::zero);
            // a cos + b sin = (a - ib)/2 e^{ikt} + (a + ib)/2 e^{-ikt}
            let c = Complex::new(a * T::half(), -b * T::half());
            s.coeffs[bandwidth + k] = c;
            s.coeffs[bandwidth - k] = c.conj();
        }
        s
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn get(&self, k: i64) -> Complex<T> {
        let idx = k + self.bandwidth as i64;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex::new(T::zero(), T::zero())
        } else {
            self.coeffs[idx as usize]
        }
    }

    fn get_mut(&mut self, k: i64) -> Option<&mut Complex<T>> {
        let idx = k + self.bandwidth as i64;
        if idx < 0 {
            return None;
        }
        self.coeffs.get_mut(idx as usize)
    }

    /// Iterates `(k, c_k)` in increasing frequency.
    pub fn entries(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        let b = self.bandwidth as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - b, c))
    }

    /// Largest `|k|` with a coefficient above `tol * max |c|`.
    pub fn effective_degree(&self, tol: T) -> usize {
        let scale = self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        if scale == T::zero() {
            return 0;
        }
        self.entries()
            .filter(|(_, c)| c.norm() > tol * scale)
            .map(|(k, _)| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Drops frequencies above `bandwidth`.
    pub fn truncated(&self, bandwidth: usize) -> Self {
        let b = bandwidth.min(self.bandwidth) as i64;
        Self::from_entries((-b..=b).map(|k| (k, self.get(k)))).expect("finite")
    }

    /// Whether `c_{-k} = conj(c_k)`, i.e. the series represents a real function.
    pub fn is_real_valued(&self) -> bool {
        let scale = self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        let tol = T::lit(HERMITIAN_TOL) * scale.max(T::min_positive_value());
        (0..=self.bandwidth as i64).all(|k| (self.get(-k) - self.get(k).conj()).norm() <= tol)
    }

    /// Value of the series at the point `e^{i theta}`.
    pub fn eval_angle(&self, theta: T) -> Complex<T> {
        self.entries().fold(Complex::new(T::zero(), T::zero()), |acc, (k, c)| {
            acc + c * Complex::from_polar(T::one(), T::from_i64(k).unwrap() * theta)
        })
    }
}

/// `c_k = (1/n) sum_j f_j e^{-ik theta_j}` for `|k| <= bandwidth`.
pub fn fourier_analyze<T: Real>(f: &GridFunction<T>, bandwidth: usize) -> Result<FourierSeries<T>> {
    let n = f.len();
    if 2 * bandwidth >= n {
        return Err(Error::Aliasing { bandwidth, n });
    }
    let spectrum = dft_forward(&f.to_complex());
    let inv_n = T::from_count(n).recip();
    let b = bandwidth as i64;
    let coeffs = (-b..=b)
        .map(|k| {
            let bin = k.rem_euclid(n as i64) as usize;
            spectrum[bin] * (alternating::<T>(k) * inv_n)
        })
        .collect();
    FourierSeries::new(bandwidth, coeffs)
}

/// Evaluates `sum_k c_k e^{ik theta_j}` on an `n`-point grid.
///
/// The result is tagged real when the series is Hermitian.
pub fn fourier_synthesize<T: Real>(s: &FourierSeries<T>, n: usize) -> Result<GridFunction<T>> {
    check_grid_size(n)?;
    if n <= 2 * s.bandwidth() {
        return Err(Error::Aliasing {
            bandwidth: s.bandwidth(),
            n,
        });
    }
    let mut spectrum = vec![Complex::new(T::zero(), T::zero()); n];
    for (k, c) in s.entries() {
        spectrum[k.rem_euclid(n as i64) as usize] = c * alternating::<T>(k);
    }
    let values = dft_inverse(&spectrum);
    if s.is_real_valued() {
        GridFunction::from_real(values.into_iter().map(|z| z.re).collect())
    } else {
        GridFunction::from_complex(values)
    }
}

/// Harmonic conjugate `f~`, the Fourier multiplier `-i sgn(k)`.
///
/// With this sign `cos -> sin`, matching the kernel `(1/2pi) PV int f(t) cot((x - t)/2) dt`.
/// The mean and the Nyquist mode are mapped to zero.
pub fn harmonic_conjugate<T: Real>(f: &GridFunction<T>) -> Result<GridFunction<T>> {
    let values = f.require_real("harmonic conjugation")?;
    GridFunction::from_real(conjugate_samples(values))
}

pub(crate) fn conjugate_samples<T: Real>(values: &[T]) -> Vec<T> {
    let n = values.len();
    let input: Vec<Complex<T>> = values.iter().map(|&x| Complex::new(x, T::zero())).collect();
    let mut spectrum = dft_forward(&input);
    let inv_n = T::from_count(n).recip();
    for (b, c) in spectrum.iter_mut().enumerate() {
        let k = signed_frequency(b, n);
        *c = if k == 0 || 2 * k.unsigned_abs() as usize == n {
            Complex::new(T::zero(), T::zero())
        } else if k > 0 {
            // -i * c
            Complex::new(c.im, -c.re) * inv_n
        } else {
            Complex::new(-c.im, c.re) * inv_n
        };
    }
    dft_inverse(&spectrum).into_iter().map(|z| z.re).collect()
}

/// Herglotz-kernel action on a real series: `c_0/2 + sum_{k>=1} c_k e^{ik theta}`.
///
/// The boundary real part of the result is half the input and its imaginary
/// part is half the harmonic conjugate of the input.
pub fn analytic_half_projection<T: Real>(s: &FourierSeries<T>) -> Result<FourierSeries<T>> {
    if !s.is_real_valued() {
        return Err(Error::Parameter(
            "analytic projection requires a real-valued series".into(),
        ));
    }
    let mut out = FourierSeries::zero(s.bandwidth());
    let half = s.get(0).re * T::half();
    *out.get_mut(0).expect("zero mode") = Complex::new(half, T::zero());
    for k in 1..=s.bandwidth() as i64 {
        *out.get_mut(k).expect("within bandwidth") = s.get(k);
    }
    Ok(out)
}

/// One-sided boundary series `sum_{k>=0} a_k e^{ik theta}` of an outer function,
/// normalized so that `a_0 > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFactor<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> SpectralFactor<T> {
    /// Validates the normalization: `a_0` real and strictly positive.
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Result<Self> {
        let a0 = *coeffs
            .first()
            .ok_or_else(|| Error::Parameter("spectral factor needs a_0".into()))?;
        if coeffs.iter().any(|c| !is_finite_complex(c)) {
            return Err(Error::Parameter("non-finite factor coefficient".into()));
        }
        if !(a0.re > T::zero()) || a0.im.abs() > T::lit(1e-10) * a0.re {
            return Err(Error::Domain(format!(
                "factor value at the origin {} + {}i is not real positive",
                a0.re, a0.im
            )));
        }
        coeffs[0] = Complex::new(a0.re, T::zero());
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Coefficients of `|a(e^{it})|^2`: `c_k = sum_j a_{j+k} conj(a_j)`.
    pub fn squared_modulus(&self) -> FourierSeries<T> {
        let a = &self.coeffs;
        let d = a.len() - 1;
        let mut s = FourierSeries::zero(d);
        for k in 0..=d {
            let c = (0..=d - k).fold(Complex::new(T::zero(), T::zero()), |acc, j| acc + a[j + k] * a[j].conj());
            s.coeffs[d + k] = c;
            s.coeffs[d - k] = c.conj();
        }
        s
    }

    /// Highest stored frequency.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value_at_zero(&self) -> T {
        self.coeffs[0].re
    }

    /// Evaluates `sum a_k z^k` by Horner's rule.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }

    /// Keeps `a_0..a_K`.
    pub fn truncated(&self, degree: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=degree.min(self.degree())].to_vec(),
        }
    }

    /// Drops trailing coefficients below `tol * max |a_k|`.
    pub fn trimmed(&self, tol: T) -> Self {
        let scale = self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
        let last = self
            .coeffs
            .iter()
            .rposition(|c| c.norm() > tol * scale)
            .unwrap_or(0);
        self.truncated(last)
    }

    /// Boundary series as a two-sided sequence with zero negative part.
    pub fn as_series(&self) -> FourierSeries<T> {
        FourierSeries::from_entries(self.coeffs.iter().enumerate().map(|(k, &c)| (k as i64, c)))
            .expect("finite")
    }

    /// The reflected factor `f^-`: frequency `-k` carries `conj(a_k)`.
    pub fn reflected(&self) -> FourierSeries<T> {
        FourierSeries::from_entries(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (-(k as i64), c.conj())),
        )
        .expect("finite")
    }

    /// Boundary values `f^+(e^{i theta_j})` on an `n`-point grid.
    pub fn boundary(&self, n: usize) -> Result<GridFunction<T>> {
        let values = match fourier_synthesize(&self.as_series(), n)?.samples() {
            Samples::Real(v) => v.iter().map(|&x| Complex::new(x, T::zero())).collect(),
            Samples::Complex(v) => v.clone(),
        };
        GridFunction::from_complex(values)
    }
}

fn h2_distance_coeffs<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> T {
    let zero = Complex::new(T::zero(), T::zero());
    let len = a.len().max(b.len());
    let sum = (0..len).fold(T::zero(), |acc, k| {
        let d = a.get(k).copied().unwrap_or(zero) - b.get(k).copied().unwrap_or(zero);
        acc + d.norm_sqr()
    });
    (T::two() * T::PI() * sum).sqrt()
}

/// `||a - b||_{H_2} = sqrt(2 pi sum_k |a_k - b_k|^2)`.
pub fn h2_distance<T: Real>(a: &SpectralFactor<T>, b: &SpectralFactor<T>) -> T {
    h2_distance_coeffs(a.coeffs(), b.coeffs())
}

/// `||a||_{H_2}`.
pub fn h2_norm<T: Real>(a: &SpectralFactor<T>) -> T {
    h2_distance_coeffs(a.coeffs(), &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::lp_norm;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn analyze_cosine_and_constant() {
        let f = GridFunction::from_fn(64, f64::cos).unwrap();
        let s = fourier_analyze(&f, 4).unwrap();
        for (k, ck) in s.entries() {
            let expect = if k.abs() == 1 { 0.5 } else { 0.0 };
            assert!((ck - c(expect, 0.0)).norm() < 1e-15, "k={k}: {ck}");
        }
        let f = GridFunction::constant(16, 3.0).unwrap();
        let s = fourier_analyze(&f, 3).unwrap();
        assert!((s.get(0) - c(3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn analyze_rejects_aliasing_bandwidth() {
        let f = GridFunction::constant(16, 1.0).unwrap();
        assert_eq!(
            fourier_analyze(&f, 8),
            Err(Error::Aliasing { bandwidth: 8, n: 16 })
        );
        let s = FourierSeries::<f64>::zero(8);
        assert!(matches!(fourier_synthesize(&s, 16), Err(Error::Aliasing { .. })));
    }

    #[test]
    fn synthesize_cosine_and_constant() {
        let s = FourierSeries::from_entries([(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))]).unwrap();
        let f = fourier_synthesize(&s, 32).unwrap();
        let v = f.as_real().expect("hermitian series gives a real function");
        for (j, x) in v.iter().enumerate() {
            assert!((x - f.theta(j).cos()).abs() < 1e-15);
        }
        let s = FourierSeries::from_entries([(0, c(3.0, 0.0))]).unwrap();
        let f = fourier_synthesize(&s, 8).unwrap();
        assert!(f.as_real().unwrap().iter().all(|&x| (x - 3.0).abs() < 1e-15));
    }

    #[test]
    fn one_sided_series_synthesizes_complex() {
        let s = FourierSeries::from_entries([(1, c(1.0, 0.0))]).unwrap();
        let f = fourier_synthesize(&s, 16).unwrap();
        assert!(!f.is_real());
    }

    #[test]
    fn real_trig_matches_pointwise() {
        let s = FourierSeries::<f64>::real_trig(0.3, &[0.5, -0.25], &[0.1]);
        let f = fourier_synthesize(&s, 64).unwrap();
        for (j, x) in f.as_real().unwrap().iter().enumerate() {
            let t = f.theta(j);
            let expect = 0.3 + 0.5 * t.cos() - 0.25 * (2.0 * t).cos() + 0.1 * t.sin();
            assert!((x - expect).abs() < 1e-14);
            assert!((s.eval_angle(t).re - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn conjugate_of_cosine_is_sine() {
        let f = GridFunction::from_fn(128, f64::cos).unwrap();
        let g = harmonic_conjugate(&f).unwrap();
        for (j, x) in g.as_real().unwrap().iter().enumerate() {
            assert!((x - g.theta(j).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn conjugate_kills_constants_and_rejects_complex() {
        let f = GridFunction::constant(32, 2.5).unwrap();
        let g = harmonic_conjugate(&f).unwrap();
        assert!(g.max_abs() < 1e-15);
        let z = GridFunction::from_complex_fn(32, |t: f64| Complex::new(t.cos(), t.sin())).unwrap();
        assert!(matches!(harmonic_conjugate(&z), Err(Error::Parameter(_))));
    }

    /// Principal-value quadrature of `(1/2pi) PV int f(t) cot((x - t)/2) dt`
    /// on a grid offset by half a step from the evaluation points.
    fn pv_conjugate(f: impl Fn(f64) -> f64, x: f64, m: usize) -> f64 {
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|j| {
                let t = x + (j as f64 + 0.5) * h;
                f(t) / ((x - t) / 2.0).tan()
            })
            .sum::<f64>()
            * h
            / (2.0 * PI)
    }

    #[test]
    fn multiplier_sign_agrees_with_cotangent_kernel() {
        let f = GridFunction::from_fn(64, |t: f64| t.cos() + 0.5 * (3.0 * t).sin()).unwrap();
        let g = harmonic_conjugate(&f).unwrap();
        for j in [0, 5, 17, 40] {
            let x = f.theta(j);
            let pv = pv_conjugate(|t: f64| t.cos() + 0.5 * (3.0 * t).sin(), x, 4096);
            assert!((g.as_real().unwrap()[j] - pv).abs() < 1e-10, "j={j}");
        }
    }

    #[test]
    fn conjugate_of_half_circle_indicator() {
        // Oracle: (1/pi) log|tan(x/2)| from the fine-grid kernel quadrature,
        // compared away from the jumps at 0 and pi.
        let n = 1 << 14;
        let f = GridFunction::from_fn(n, |t: f64| if t > 0.0 && t < PI { 1.0 } else { 0.0 }).unwrap();
        let g = harmonic_conjugate(&f).unwrap();
        let gv = g.as_real().unwrap();
        for &x in &[-2.5, -1.0, -0.3, 0.4, 1.3, 2.9] {
            let j = ((x + PI) / (2.0 * PI) * n as f64).round() as usize;
            let t = f.theta(j);
            let closed = (t / 2.0).tan().abs().ln() / PI;
            let pv = pv_conjugate(
                |s: f64| {
                    let s = (s + PI).rem_euclid(2.0 * PI) - PI;
                    if s > 0.0 && s < PI {
                        1.0
                    } else {
                        0.0
                    }
                },
                t,
                1 << 16,
            );
            assert!((pv - closed).abs() < 1e-3, "pv {pv} closed {closed}");
            assert!((gv[j] - closed).abs() < 2e-3, "x={x}: {} vs {closed}", gv[j]);
        }
    }

    #[test]
    fn projection_examples() {
        let s = FourierSeries::real_trig(0.0, &[2.0], &[]);
        let p = analytic_half_projection(&s).unwrap();
        assert!((p.get(1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(p.get(0).norm() < 1e-15 && p.get(-1).norm() < 1e-15);
        let s = FourierSeries::from_entries([(0, c(2.0 * 1.7, 0.0))]).unwrap();
        let p = analytic_half_projection(&s).unwrap();
        assert!((p.get(0) - c(1.7, 0.0)).norm() < 1e-15);
        let bad = FourierSeries::from_entries([(1, c(1.0, 0.0))]).unwrap();
        assert!(analytic_half_projection(&bad).is_err());
    }

    #[test]
    fn projection_exponential_reproduces_density() {
        // log f = 2 cos t, f = e^{2 cos t}; |exp(e^{it})|^2 = e^{2 cos t}.
        let n = 64;
        let f = GridFunction::from_fn(n, |t: f64| (2.0 * t.cos()).exp()).unwrap();
        let logf = fourier_analyze(&f.map_real(f64::ln).unwrap(), 8).unwrap();
        let phi = fourier_synthesize(&analytic_half_projection(&logf).unwrap(), n).unwrap();
        let values = phi.to_complex();
        for (j, v) in values.iter().enumerate() {
            let fp = v.exp();
            assert!((fp.norm_sqr() - f.as_real().unwrap()[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn h2_distance_examples() {
        let one = SpectralFactor::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(h2_distance(&one, &one), 0.0);
        assert!((h2_norm(&one) - (2.0 * PI).sqrt()).abs() < 1e-15);
        let a = SpectralFactor::new(vec![c(1.0, 0.0), c(0.3, -0.2), c(0.0, 0.1)]).unwrap();
        let b = SpectralFactor::new(vec![c(2.0, 0.0), c(-0.5, 0.0)]).unwrap();
        let n = 16;
        let diff: Vec<_> = a
            .boundary(n)
            .unwrap()
            .to_complex()
            .iter()
            .zip(b.boundary(n).unwrap().to_complex())
            .map(|(x, y)| x - y)
            .collect();
        let l2 = lp_norm(&GridFunction::from_complex(diff).unwrap(), 2.0).unwrap();
        assert!((h2_distance(&a, &b) - l2).abs() < 1e-12);
    }

    #[test]
    fn reflected_factor_is_boundary_conjugate() {
        let a = SpectralFactor::new(vec![c(1.0, 0.0), c(0.3, -0.2), c(0.0, 0.1)]).unwrap();
        let plus = a.boundary(32).unwrap().to_complex();
        let minus = fourier_synthesize(&a.reflected(), 32).unwrap().to_complex();
        for (p, m) in plus.iter().zip(&minus) {
            assert!((p.conj() - m).norm() < 1e-14);
        }
    }

    #[test]
    fn factor_normalization_is_enforced() {
        assert!(SpectralFactor::new(vec![c(-1.0, 0.0)]).is_err());
        assert!(SpectralFactor::new(vec![c(1.0, 0.5)]).is_err());
        assert!(SpectralFactor::<f64>::new(vec![]).is_err());
    }
}
