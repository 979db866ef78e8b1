//! Outer spectral factorization of scalar densities on the unit circle.
//!
//! Computes the outer factor `f+` of a density `f >= 0` with integrable
//! logarithm, normalized by `f+(0) > 0`, by three routes (cepstral boundary
//! formula, Herglotz quadrature, Fejer-Riesz root splitting) and checks the
//! quantitative continuity estimates of `f -> f+` in the H_2 metric.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`.

pub mod bounds;
pub mod circle;
pub mod constants;
pub mod counterexample;
pub mod error;
pub mod factorization;
pub mod fourier;
pub mod io;
pub mod orlicz;
pub mod quad;
pub mod report;
pub mod roots;
pub mod sampling;
pub mod scalar;

pub use bounds::{
    check_corollary_p, check_lemma_l1, check_lemma_orl, check_theorem_2, check_theorem_main,
    convergence_demo, h2_identity_terms, identity_report, lower_bound_terms, ConvergenceRow,
    IdentityTerms, Schedule,
};
pub use circle::{lp_norm, GridFunction, Samples, DEFAULT_GRID};
pub use counterexample::{
    build_family, cross_validate_pipeline, family_metrics, verify_family, verify_theorem_1,
    CounterexampleFamily, FamilyMetrics, Variant,
};
pub use error::{Error, Result};
pub use factorization::{
    factorize_boundary, factorize_herglotz, fejer_riesz, herglotz_factor, outer_check,
    BoundaryFactorization, BoundaryOptions, FejerRieszOptions,
};
pub use fourier::{
    analytic_half_projection, fourier_analyze, fourier_synthesize, h2_distance, h2_norm,
    harmonic_conjugate, FourierSeries, SpectralFactor,
};
pub use num_complex::Complex;
pub use orlicz::{
    holder_check, lambda_phi, lemma_g_report, luxemburg_norm, orlicz_norm, weak11_ratio,
    weak11_report, DensityTable, GSpec, NFunction,
};
pub use report::BoundReport;
pub use sampling::Sampler;
pub use scalar::Real;

pub type GridFunctionF64 = GridFunction<f64>;
pub type GridFunctionF32 = GridFunction<f32>;
pub type FourierSeriesF64 = FourierSeries<f64>;
pub type SpectralFactorF64 = SpectralFactor<f64>;
pub type BoundReportF64 = BoundReport<f64>;
pub type NFunctionF64 = NFunction<f64>;
