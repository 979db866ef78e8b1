//! Numerical constants of the continuity estimates.
//!
//! `K` is the best constant of Kolmogorov's weak type (1, 1) inequality for
//! the conjugation operator (Davis):
//! `K = (1 + 3^-2 + 5^-2 + ...) / (1 - 3^-2 + 5^-2 - ...) = (pi^2 / 8) / G`
//! with `G` Catalan's constant. `K0 = (K / 2) * int_0^pi sin(x)/x dx`.

use crate::quad::{integrate, QuadOptions};
use crate::scalar::Real;

/// Catalan's constant from the rapidly convergent representation
/// `G = (pi/8) log(2 + sqrt 3) + (3/8) sum_k 1 / ((2k+1)^2 C(2k, k))`.
pub fn catalan<T: Real>() -> T {
    let mut sum = T::zero();
    // 1 / C(2k, k), updated by the ratio C(2k+2, k+1) / C(2k, k) = (2k+1)(2k+2)/(k+1)^2.
    let mut inv_binom = T::one();
    for k in 0..60usize {
        let odd = T::from_count(2 * k + 1);
        let term = inv_binom / (odd * odd);
        sum = sum + term;
        if term < T::epsilon() * sum * T::lit(1e-3) {
            break;
        }
        let kp1 = T::from_count(k + 1);
        inv_binom = inv_binom * kp1 * kp1 / (odd * T::from_count(2 * k + 2));
    }
    let three = T::lit(3.0);
    T::PI() / T::lit(8.0) * (T::two() + three.sqrt()).ln() + three / T::lit(8.0) * sum
}

/// Davis' constant `K ~ 1.347`, the best constant in the weak (1, 1) bound
/// `m{|psi~| >= lambda} <= (K / lambda) ||psi||_1`.
pub fn davis_constant<T: Real>() -> T {
    T::PI() * T::PI() / T::lit(8.0) / catalan::<T>()
}

/// `sin(x) / x` with the removable singularity filled in.
pub fn sinc<T: Real>(x: T) -> T {
    if x.abs() < T::lit(1e-8) {
        T::one() - x * x / T::lit(6.0)
    } else {
        x.sin() / x
    }
}

/// `Si(pi) = int_0^pi sin(x)/x dx` by adaptive quadrature.
pub fn sine_integral_pi<T: Real>() -> T {
    let opts = QuadOptions {
        abs_tol: T::lit(1e-15),
        rel_tol: T::lit(1e-14).max(T::epsilon() * T::lit(8.0)),
        ..QuadOptions::default()
    };
    integrate(sinc::<T>, T::zero(), T::PI(), opts)
        .expect("sinc is smooth on [0, pi]")
        .value
}

/// `K0 = (K / 2) Si(pi) ~ 1.2472`.
pub fn k0_constant<T: Real>() -> T {
    davis_constant::<T>() * T::half() * sine_integral_pi::<T>()
}

/// Constant of the L_p corollary:
/// `C(p) = 2^{(p+1)/p} K0^{(p-1)/p} (p/(p-1))^{(p-1)/p}`, for `1 < p < inf`.
pub fn corollary_constant<T: Real>(p: T) -> T {
    let k0 = k0_constant::<T>();
    let r = (p - T::one()) / p;
    T::two().powf((p + T::one()) / p) * k0.powf(r) * (p / (p - T::one())).powf(r)
}

/// Constant of the L_inf corollary, `2 K0 < 2.5`.
pub fn sup_norm_constant<T: Real>() -> T {
    T::two() * k0_constant::<T>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn catalan_against_slow_alternating_series() {
        // Averaged partial sums of sum (-1)^k / (2k+1)^2 bracket G tightly.
        let mut s = 0.0f64;
        let mut prev = 0.0;
        for k in 0..200_000u64 {
            prev = s;
            let odd = (2 * k + 1) as f64;
            s += if k % 2 == 0 { 1.0 } else { -1.0 } / (odd * odd);
        }
        let averaged = 0.5 * (s + prev);
        assert!((catalan::<f64>() - averaged).abs() < 1e-12);
        assert!((catalan::<f64>() - 0.915_965_594_177_219).abs() < 1e-15);
    }

    #[test]
    fn numerator_series_is_pi_squared_over_eight() {
        let partial: f64 = (0..2_000_000u64)
            .map(|k| 1.0 / ((2 * k + 1) as f64).powi(2))
            .sum();
        // Tail ~ 1/(4N).
        let tail = 1.0 / (4.0 * 2_000_000.0);
        assert!((partial + tail - PI * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn davis_constant_value() {
        let k = davis_constant::<f64>();
        assert!(k > 1.0);
        assert!((k - 1.347).abs() < 5e-4);
        assert!((k - 1.346_885_251_999_406_6).abs() < 1e-14);
    }

    #[test]
    fn sine_integral_against_power_series() {
        let x = PI;
        let mut term = x;
        let mut series = 0.0;
        for k in 0..40 {
            let n = (2 * k + 1) as f64;
            series += term / n;
            term *= -x * x / ((n + 1.0) * (n + 2.0));
        }
        assert!((sine_integral_pi::<f64>() - series).abs() < 1e-13);
        assert!((series - 1.851_937).abs() < 1e-6);
    }

    #[test]
    fn k0_and_corollary_constants() {
        let k0 = k0_constant::<f64>();
        assert!(k0 < 1.25);
        assert!((k0 - 1.247).abs() < 1e-3);
        let c2 = corollary_constant(2.0);
        assert!((c2 - 4.0 * k0.sqrt()).abs() < 1e-13);
        assert!((c2 - 4.466).abs() < 2e-3);
        assert!(sup_norm_constant::<f64>() < 2.5);
    }

    #[test]
    fn single_precision_constants() {
        assert!((davis_constant::<f32>() - 1.346_885).abs() < 1e-5);
        assert!((k0_constant::<f32>() - 1.247_173).abs() < 1e-5);
    }
}
