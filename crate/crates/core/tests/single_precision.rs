use spectral_factor::constants::{davis_constant, k0_constant};
use spectral_factor::counterexample::{max_feasible_n, verify_theorem_1};
use spectral_factor::factorization::{factorize_boundary, BoundaryOptions};
use spectral_factor::{check_theorem_2, Error, GridFunctionF32, Sampler};

#[test]
fn constants_in_f32() {
    assert!((davis_constant::<f32>() - 1.346_885_3).abs() < 1e-5);
    assert!(k0_constant::<f32>() < 1.25);
}

#[test]
fn factor_of_smooth_density_in_f32() {
    let f = GridFunctionF32::from_fn(256, |t| (0.4 * t.cos()).exp()).unwrap();
    let b = factorize_boundary(&f, BoundaryOptions::default()).unwrap();
    let a = b.factor.boundary(256).unwrap();
    let worst = a
        .moduli()
        .iter()
        .zip(f.as_real().unwrap())
        .fold(0.0f32, |m, (z, v)| m.max((z * z - v).abs() / v));
    assert!(worst < 1e-4, "{worst}");
}

#[test]
fn sweep_pairs_in_f32() {
    let mut s = Sampler::new(11);
    for _ in 0..10 {
        let (f, g) = s.pair::<f32>(256).unwrap();
        assert!(check_theorem_2(&f, &g).unwrap().pass);
    }
}

#[test]
fn counterexample_has_no_f32_budget() {
    assert_eq!(max_feasible_n::<f32>(0.1), 0);
    assert!(matches!(
        verify_theorem_1::<f32>(1, 0.1),
        Err(Error::PrecisionBudget(_))
    ));
}
