//! Seeded random inputs for property sweeps.
//!
//! Trial `i` of a sweep with seed `s` draws from a ChaCha20 stream keyed by
//! `s` with stream id `i`, so trials are reproducible and independent of the
//! order in which they run.

use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::circle::GridFunction;
use crate::error::Result;
use crate::fourier::{fourier_synthesize, FourierSeries, SpectralFactor};
use crate::roots::product_from_roots;
use crate::scalar::Real;

/// Largest degree of the random trigonometric polynomials.
pub const MAX_DEGREE: usize = 16;

/// Root moduli of random Fejer-Riesz instances lie in this range.
pub const ROOT_MODULUS_RANGE: (f64, f64) = (1.05, 4.0);

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha20Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Generator for trial `index` of the sweep with the given seed.
    pub fn trial(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng }
    }

    fn uniform<T: Real>(&mut self, lo: f64, hi: f64) -> T {
        T::lit(self.rng.gen_range(lo..hi))
    }

    fn log_uniform<T: Real>(&mut self, lo: f64, hi: f64) -> T {
        T::lit(self.rng.gen_range(lo.ln()..hi.ln()).exp())
    }

    pub fn degree(&mut self, max: usize) -> usize {
        self.rng.gen_range(1..=max.max(1))
    }

    /// Real trigonometric polynomial of the given degree with all
    /// coefficients uniform in `[-1, 1]`.
    pub fn trig_poly<T: Real>(&mut self, degree: usize) -> FourierSeries<T> {
        let c0 = self.uniform(-1.0, 1.0);
        let cos: Vec<T> = (0..degree).map(|_| self.uniform(-1.0, 1.0)).collect();
        let sin: Vec<T> = (0..degree).map(|_| self.uniform(-1.0, 1.0)).collect();
        FourierSeries::real_trig(c0, &cos, &sin)
    }

    fn trig_samples<T: Real>(&mut self, n: usize, degree: usize) -> Result<Vec<T>> {
        let s = self.trig_poly::<T>(degree);
        Ok(fourier_synthesize(&s, n)?
            .as_real()
            .expect("Hermitian series synthesizes to real samples")
            .to_vec())
    }

    /// `f = exp(p)` for a random real trigonometric polynomial `p` of degree at most 16.
    pub fn density<T: Real>(&mut self, n: usize) -> Result<GridFunction<T>> {
        let d = self.degree(MAX_DEGREE);
        let p = self.trig_samples::<T>(n, d)?;
        GridFunction::from_real(p.into_iter().map(|x| x.exp()).collect())
    }

    /// A pair of densities: independent draws, or `g = f exp(delta p)` with
    /// `delta` log-uniform in `[1e-3, 0.3]`, each with probability 1/2.
    pub fn pair<T: Real>(&mut self, n: usize) -> Result<(GridFunction<T>, GridFunction<T>)> {
        let f = self.density::<T>(n)?;
        let g = if self.rng.gen_bool(0.5) {
            self.density::<T>(n)?
        } else {
            let delta: T = self.log_uniform(1e-3, 0.3);
            let d = self.degree(MAX_DEGREE);
            let p = GridFunction::from_real(self.trig_samples::<T>(n, d)?)?;
            f.zip_real(&p, |v, w| v * (delta * w).exp())?
        };
        Ok((f, g))
    }

    /// Band-limited real `psi` with amplitude log-uniform in `[1e-2, 10]`.
    pub fn band_limited<T: Real>(&mut self, n: usize) -> Result<GridFunction<T>> {
        let d = self.degree(MAX_DEGREE);
        let amp: T = self.log_uniform(1e-2, 10.0);
        let p = self.trig_samples::<T>(n, d)?;
        GridFunction::from_real(p.into_iter().map(|x| x * amp).collect())
    }

    /// Roots with modulus in [`ROOT_MODULUS_RANGE`] and uniform argument.
    pub fn outside_roots<T: Real>(&mut self, count: usize) -> Vec<Complex<T>> {
        let (lo, hi) = ROOT_MODULUS_RANGE;
        (0..count)
            .map(|_| {
                let r: T = self.uniform(lo, hi);
                let arg: T = self.uniform(-std::f64::consts::PI, std::f64::consts::PI);
                Complex::from_polar(r, arg)
            })
            .collect()
    }

    /// Outer polynomial `a = s prod (1 - z / r_j)` of random degree at most 16
    /// with `s` uniform in `[0.5, 2]`, and the coefficients of `|a|^2`.
    pub fn fejer_riesz_instance<T: Real>(&mut self) -> Result<(SpectralFactor<T>, FourierSeries<T>)> {
        let d = self.degree(MAX_DEGREE);
        let roots = self.outside_roots::<T>(d);
        let scale: T = self.uniform(0.5, 2.0);
        let coeffs = product_from_roots(&roots)
            .into_iter()
            .map(|c| c * scale)
            .collect();
        let a = SpectralFactor::new(coeffs)?;
        let c = a.squared_modulus();
        Ok((a, c))
    }
}
