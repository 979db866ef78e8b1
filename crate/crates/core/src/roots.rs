//! Simultaneous polynomial root finding (Aberth-Ehrlich) with Newton polishing.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `p(z)` and `p'(z)` for ascending coefficients.
pub fn eval_with_derivative<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let zero = Complex::new(T::zero(), T::zero());
    coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
}

/// All complex roots of `sum_j coeffs[j] z^j` (leading coefficient nonzero).
pub fn polynomial_roots<T: Real>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let degree = coeffs
        .iter()
        .rposition(|c| c.norm() > T::zero())
        .ok_or_else(|| Error::Parameter("zero polynomial has no roots".into()))?;
    let coeffs = &coeffs[..=degree];
    if degree == 0 {
        return Ok(Vec::new());
    }
    if coeffs[0].norm() == T::zero() {
        return Err(Error::Parameter(
            "polynomial has a root at the origin; strip it first".into(),
        ));
    }

    // Initial guesses on a circle of the geometric-mean root radius, offset
    // from the real axis to avoid symmetric stagnation.
    let radius = (coeffs[0].norm() / coeffs[degree].norm()).powf(T::from_count(degree).recip());
    let two_pi = T::two() * T::PI();
    let mut z: Vec<Complex<T>> = (0..degree)
        .map(|k| {
            let angle = two_pi * T::from_count(k) / T::from_count(degree) + T::lit(0.4);
            Complex::from_polar(radius, angle)
        })
        .collect();

    let tol = T::epsilon() * T::lit(4.0);
    let mut converged = vec![false; degree];
    for _ in 0..1000 {
        for i in 0..degree {
            if converged[i] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coeffs, z[i]);
            if p.norm() == T::zero() {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion = (0..degree)
                .filter(|&j| j != i)
                .fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                    acc + (z[i] - z[j]).inv()
                });
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                // Nudge off a critical point.
                z[i] = z[i] * Complex::new(T::one() + T::lit(1e-3), T::lit(1e-3));
                continue;
            }
            z[i] = z[i] - step;
            if step.norm() <= tol * z[i].norm() {
                converged[i] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            break;
        }
    }
    Ok(z)
}

/// Newton refinement of a single root; keeps the iterate with smallest residual.
pub fn polish_root<T: Real>(coeffs: &[Complex<T>], mut z: Complex<T>, steps: usize) -> Complex<T> {
    let (mut p, _) = eval_with_derivative(coeffs, z);
    for _ in 0..steps {
        let (_, dp) = eval_with_derivative(coeffs, z);
        if dp.norm() == T::zero() {
            break;
        }
        let candidate = z - p / dp;
        let (pc, _) = eval_with_derivative(coeffs, candidate);
        if pc.norm() < p.norm() {
            z = candidate;
            p = pc;
        } else {
            break;
        }
    }
    z
}

/// Coefficients of the `order`-th derivative.
pub fn derivative<T: Real>(coeffs: &[Complex<T>], order: usize) -> Vec<Complex<T>> {
    let mut d = coeffs.to_vec();
    for _ in 0..order {
        if d.len() <= 1 {
            return vec![Complex::new(T::zero(), T::zero())];
        }
        d = d
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * T::from_count(k))
            .collect();
    }
    d
}

/// Refines the centre of a cluster of `multiplicity` root estimates, using
/// that a root of multiplicity `m` is a simple root of the `(m-1)`-th derivative.
pub fn polish_multiple_root<T: Real>(
    coeffs: &[Complex<T>],
    centre: Complex<T>,
    multiplicity: usize,
) -> Complex<T> {
    let d = derivative(coeffs, multiplicity.saturating_sub(1));
    polish_root(&d, centre, 16)
}

/// Ascending coefficients of `prod_i (1 - z / r_i)`.
pub fn product_from_roots<T: Real>(roots: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut poly = vec![Complex::new(T::one(), T::zero())];
    for r in roots {
        let shift = -r.inv();
        let mut next = vec![Complex::new(T::zero(), T::zero()); poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k] = next[k] + c;
            next[k + 1] = next[k + 1] + c * shift;
        }
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn quadratic_roots() {
        // -1/2 + 5/4 z - 1/2 z^2 has roots 1/2 and 2.
        let mut roots = polynomial_roots(&[c(-0.5, 0.0), c(1.25, 0.0), c(-0.5, 0.0)]).unwrap();
        roots.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        assert!((roots[0] - c(0.5, 0.0)).norm() < 1e-14);
        assert!((roots[1] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn roots_round_trip_through_product() {
        let truth = vec![c(1.5, 0.3), c(-2.0, 1.0), c(0.2, -3.0), c(1.1, -0.1), c(-1.3, -1.3)];
        let poly = product_from_roots(&truth);
        let found = polynomial_roots(&poly).unwrap();
        for r in &truth {
            let best = found
                .iter()
                .map(|f| (f - r).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-12, "missed root {r}");
        }
    }

    #[test]
    fn double_root_is_found_to_half_precision() {
        // (z - 1)^2
        let roots = polynomial_roots(&[c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)]).unwrap();
        for r in roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-7);
        }
    }

    #[test]
    fn multiple_root_polishing() {
        // (z - 1)^4 (z - 2i)
        let p = product_from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 2.0)]);
        let rough = c(1.0 + 3e-4, -2e-4);
        let fine = polish_multiple_root(&p, rough, 4);
        assert!((fine - c(1.0, 0.0)).norm() < 1e-12, "{fine}");
        assert_eq!(derivative(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], 1), vec![c(2.0, 0.0), c(6.0, 0.0)]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(polynomial_roots::<f64>(&[c(0.0, 0.0)]).is_err());
        assert!(polynomial_roots(&[c(3.0, 0.0)]).unwrap().is_empty());
        assert!(polynomial_roots(&[c(0.0, 0.0), c(1.0, 0.0)]).is_err());
    }
}
