//! Globally adaptive Gauss-Kronrod (7, 15) quadrature on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    /// Sum of the Gauss/Kronrod discrepancies over the final partition.
    pub error: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-14),
            rel_tol: T::lit(1e-13),
            max_intervals: 2000,
        }
    }
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

fn kronrod<T: Real>(f: &impl Fn(T) -> T, a: T, b: T) -> Result<Segment<T>> {
    let centre = (a + b) * T::half();
    let half = (b - a) * T::half();
    let fc = f(centre);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let s = f(centre - dx) + f(centre + dx);
        kron = kron + s * T::lit(WGK[i]);
        if i % 2 == 1 {
            gauss = gauss + s * T::lit(WG[i / 2]);
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).abs();
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::Domain(format!(
            "integrand not finite on [{a}, {b}]"
        )));
    }
    Ok(Segment { a, b, value, error })
}

/// Integrates `f` over `[a, b]`, bisecting the worst interval until the
/// summed error estimate meets `max(abs_tol, rel_tol |I|)`.
///
/// Fails with a domain error when the integrand is not finite at a node or
/// the tolerance is not met within `max_intervals` (e.g. a divergent integral).
pub fn integrate<T: Real>(
    f: impl Fn(T) -> T,
    a: T,
    b: T,
    opts: QuadOptions<T>,
) -> Result<Quadrature<T>> {
    if a == b {
        return Ok(Quadrature {
            value: T::zero(),
            error: T::zero(),
            intervals: 0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(&f, a, b)?;
    let mut value = first.value;
    let mut error = first.error;
    heap.push(first);
    while error > opts.abs_tol.max(opts.rel_tol * value.abs()) {
        if heap.len() >= opts.max_intervals {
            return Err(Error::Domain(format!(
                "quadrature on [{a}, {b}] did not converge: estimate {value}, error {error}"
            )));
        }
        let worst = heap.pop().expect("non-empty");
        let mid = (worst.a + worst.b) * T::half();
        let left = kronrod(&f, worst.a, mid)?;
        let right = kronrod(&f, mid, worst.b)?;
        value = value - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        // Re-sum periodically to shed accumulated cancellation in the running totals.
        if heap.len() % 64 == 0 {
            value = heap.iter().fold(T::zero(), |s, seg| s + seg.value);
            error = heap.iter().fold(T::zero(), |s, seg| s + seg.error);
        }
    }
    let intervals = heap.len();
    let value = heap.iter().fold(T::zero(), |s, seg| s + seg.value);
    Ok(Quadrature {
        value,
        error,
        intervals,
    })
}
