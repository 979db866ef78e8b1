//! Sampled functions on the unit circle and their L_p norms.
//!
//! Sample `j` of an `n`-point grid sits at `theta_j = -pi + 2 pi j / n`.
//! Integrals use the unnormalized measure `d theta` on `[-pi, pi)`, so the
//! constant function 1 has L_1 norm `2 pi`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite_complex, Real};

/// Smallest admissible grid.
pub const MIN_GRID: usize = 8;

/// Grid size used when callers do not specify one.
pub const DEFAULT_GRID: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum Samples<T> {
    Real(Vec<T>),
    Complex(Vec<Complex<T>>),
}

/// Samples of a function on a uniform power-of-two grid of `[-pi, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    samples: Samples<T>,
}

pub(crate) fn check_grid_size(n: usize) -> Result<()> {
    if n < MIN_GRID || !n.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "grid size {n} must be a power of two and at least {MIN_GRID}"
        )));
    }
    Ok(())
}

/// Location of sample `j` on an `n`-point grid.
#[inline]
pub fn grid_angle<T: Real>(j: usize, n: usize) -> T {
    -T::PI() + T::two() * T::PI() * T::from_count(j) / T::from_count(n)
}

impl<T: Real> GridFunction<T> {
    pub fn from_real(values: Vec<T>) -> Result<Self> {
        check_grid_size(values.len())?;
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("sample {j} is not finite")));
        }
        Ok(Self {
            samples: Samples::Real(values),
        })
    }

    pub fn from_complex(values: Vec<Complex<T>>) -> Result<Self> {
        check_grid_size(values.len())?;
        if let Some(j) = values.iter().position(|v| !is_finite_complex(v)) {
            return Err(Error::Parameter(format!("sample {j} is not finite")));
        }
        Ok(Self {
            samples: Samples::Complex(values),
        })
    }

    /// Samples a real function of the angle.
    pub fn from_fn(n: usize, f: impl Fn(T) -> T) -> Result<Self> {
        check_grid_size(n)?;
        Self::from_real((0..n).map(|j| f(grid_angle(j, n))).collect())
    }

    /// Samples a complex function of the angle.
    pub fn from_complex_fn(n: usize, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
        check_grid_size(n)?;
        Self::from_complex((0..n).map(|j| f(grid_angle(j, n))).collect())
    }

    pub fn constant(n: usize, c: T) -> Result<Self> {
        Self::from_real(vec![c; n])
    }

    pub fn len(&self) -> usize {
        match &self.samples {
            Samples::Real(v) => v.len(),
            Samples::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_real(&self) -> bool {
        matches!(self.samples, Samples::Real(_))
    }

    pub fn samples(&self) -> &Samples<T> {
        &self.samples
    }

    pub fn theta(&self, j: usize) -> T {
        grid_angle(j, self.len())
    }

    /// Grid spacing `2 pi / n`, the weight of the rectangle rule.
    pub fn spacing(&self) -> T {
        T::two() * T::PI() / T::from_count(self.len())
    }

    pub fn as_real(&self) -> Option<&[T]> {
        match &self.samples {
            Samples::Real(v) => Some(v),
            Samples::Complex(_) => None,
        }
    }

    /// Real samples, or a parameter error naming `what` for complex input.
    pub fn require_real(&self, what: &str) -> Result<&[T]> {
        self.as_real()
            .ok_or_else(|| Error::Parameter(format!("{what} requires a real-valued function")))
    }

    pub fn to_complex(&self) -> Vec<Complex<T>> {
        match &self.samples {
            Samples::Real(v) => v.iter().map(|&x| Complex::new(x, T::zero())).collect(),
            Samples::Complex(v) => v.clone(),
        }
    }

    /// Pointwise moduli.
    pub fn moduli(&self) -> Vec<T> {
        match &self.samples {
            Samples::Real(v) => v.iter().map(|x| x.abs()).collect(),
            Samples::Complex(v) => v.iter().map(|z| z.norm()).collect(),
        }
    }

    /// Applies `op` to each real sample. Fails for complex functions.
    pub fn map_real(&self, op: impl Fn(T) -> T) -> Result<Self> {
        let v = self.require_real("map_real")?;
        Self::from_real(v.iter().map(|&x| op(x)).collect())
    }

    /// Combines two real functions on the same grid sample by sample.
    pub fn zip_real(&self, other: &Self, op: impl Fn(T, T) -> T) -> Result<Self> {
        let a = self.require_real("zip_real")?;
        let b = other.require_real("zip_real")?;
        if a.len() != b.len() {
            return Err(Error::Parameter(format!(
                "grid sizes differ: {} vs {}",
                a.len(),
                b.len()
            )));
        }
        Self::from_real(a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect())
    }

    /// Rectangle-rule integral of a real function.
    pub fn integral(&self) -> Result<T> {
        let v = self.require_real("integral")?;
        Ok(v.iter().fold(T::zero(), |acc, &x| acc + x) * self.spacing())
    }

    pub fn max_abs(&self) -> T {
        self.moduli()
            .into_iter()
            .fold(T::zero(), |acc, x| acc.max(x))
    }
}

/// L_p norm with the unnormalized measure; `p = T::infinity()` gives the sup norm.
///
/// Finite `p` uses the periodic rectangle rule `(sum |f_j|^p 2 pi / n)^(1/p)`.
pub fn lp_norm<T: Real>(f: &GridFunction<T>, p: T) -> Result<T> {
    if p.is_nan() || p < T::one() {
        return Err(Error::Parameter(format!("L_p exponent {p} must lie in [1, inf]")));
    }
    let moduli = f.moduli();
    if p.is_infinite() {
        return Ok(moduli.into_iter().fold(T::zero(), |acc, x| acc.max(x)));
    }
    // Scale by the maximum to keep |f|^p in range for large p.
    let scale = moduli.iter().fold(T::zero(), |acc, &x| acc.max(x));
    if scale == T::zero() {
        return Ok(T::zero());
    }
    let sum = if p == T::one() {
        moduli.iter().fold(T::zero(), |acc, &x| acc + x) / scale
    } else {
        moduli
            .iter()
            .fold(T::zero(), |acc, &x| acc + (x / scale).powf(p))
    };
    Ok(scale * (sum * f.spacing()).powf(p.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_one_has_l1_norm_two_pi() {
        let f = GridFunction::<f64>::constant(64, 1.0).unwrap();
        assert!((lp_norm(&f, 1.0).unwrap() - 2.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn sup_norm_of_cosine() {
        let f = GridFunction::<f64>::from_fn(256, f64::cos).unwrap();
        assert!((lp_norm(&f, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn l1_norm_of_positive_trig_polynomial() {
        let f = GridFunction::<f64>::from_fn(128, |t| 1.25 - t.cos()).unwrap();
        assert!((lp_norm(&f, 1.0).unwrap() - 2.5 * PI).abs() < 1e-12);
    }

    #[test]
    fn l2_norm_of_complex_exponential() {
        let f = GridFunction::<f64>::from_complex_fn(64, |t| Complex::new(t.cos(), t.sin()))
            .unwrap();
        assert!((lp_norm(&f, 2.0).unwrap() - (2.0 * PI).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn invalid_exponent_and_grid() {
        let f = GridFunction::<f64>::constant(8, 1.0).unwrap();
        assert!(matches!(lp_norm(&f, 0.5), Err(Error::Parameter(_))));
        assert!(matches!(lp_norm(&f, f64::NAN), Err(Error::Parameter(_))));
        assert!(GridFunction::<f64>::constant(12, 1.0).is_err());
        assert!(GridFunction::<f64>::constant(4, 1.0).is_err());
        assert!(GridFunction::<f64>::from_real(vec![f64::NAN; 8]).is_err());
    }

    #[test]
    fn first_sample_sits_at_minus_pi() {
        let f = GridFunction::<f64>::constant(16, 0.0).unwrap();
        assert_eq!(f.theta(0), -PI);
        assert!((f.theta(8)).abs() < 1e-15);
    }

    #[test]
    fn works_in_single_precision() {
        let f = GridFunction::<f32>::constant(32, 1.0).unwrap();
        let l1 = lp_norm(&f, 1.0f32).unwrap();
        assert!((l1 - 2.0 * std::f32::consts::PI).abs() < 1e-5);
    }
}
