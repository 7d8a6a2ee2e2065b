use std::f64::consts::{FRAC_1_SQRT_2, PI};

use mathieu_wavelets::cascade::{refinement_residual, run, two_scale_residual};
use mathieu_wavelets::filterbank::DEFAULT_THRESHOLD;
use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::{FilterBank, MathieuParams};

fn corrected(nu: i64, q: f64) -> FilterBank {
    let p = MathieuParams::new(nu, q).unwrap();
    let sol = solve_even(p, DEFAULT_TOLERANCE).unwrap();
    FilterBank::build(p, &sol, DEFAULT_THRESHOLD)
        .unwrap()
        .sign_correct()
        .unwrap()
}

#[test]
fn haar_from_the_mathieu_limit() {
    let b = corrected(1, 0.0);
    assert!((b.h().get(0) - FRAC_1_SQRT_2).abs() < 1e-15);
    let out = run(&b, 6, 6).unwrap();
    for ((&t, &p), &s) in out.t.iter().zip(&out.phi).zip(&out.psi) {
        let boxed = if (0.0..1.0).contains(&t) { 1.0 } else { 0.0 };
        assert!((p - boxed).abs() <= 1e-12);
        // The raw detail filter starts with +, so ψ is the usual Haar wavelet.
        let wave = if (0.0..0.5).contains(&t) {
            1.0
        } else if (0.5..1.0).contains(&t) {
            -1.0
        } else {
            0.0
        };
        assert!((s - wave).abs() <= 1e-12);
    }
    assert!(refinement_residual(&run(&b, 8, 8).unwrap(), &b) <= 1e-10);
}

#[test]
fn deltas_decrease() {
    for (nu, q) in [(3i64, 3.0), (5, 15.0)] {
        let b = corrected(nu, q);
        let deltas: Vec<f64> = [2u32, 4, 6]
            .iter()
            .map(|&i| run(&b, i, 6).unwrap().delta)
            .collect();
        assert!(
            deltas[2] < deltas[1] && deltas[1] < deltas[0],
            "nu={nu}: {deltas:?}"
        );
    }
}

#[test]
fn delta_golden() {
    let b = corrected(3, 3.0);
    let out = run(&b, 6, 6).unwrap();
    assert!((out.delta - 0.294_126_661_837_044_45).abs() <= 1e-12);
}

#[test]
fn integral_and_grid() {
    for (nu, q) in [(3i64, 3.0), (5, 15.0)] {
        let out = run(&corrected(nu, q), 8, 8).unwrap();
        assert!((out.phi_integral() - 1.0).abs() <= 1e-3);
        assert_eq!(out.t.len(), out.phi.len());
        assert_eq!(out.t.len(), out.psi.len());
        for w in out.t.windows(2) {
            assert_eq!(w[1] - w[0], out.spacing());
        }
    }
}

#[test]
fn refinement_residual_golden() {
    let b = corrected(3, 3.0);
    let out = run(&b, 10, 10).unwrap();
    let r = refinement_residual(&out, &b);
    // Measured; dominated by the jumps of the piecewise-constant iterate.
    assert!((r - 6.010_792_108_483_642e-2).abs() <= 1e-9, "{r}");
}

#[test]
fn refinement_residual_non_increasing() {
    let b = corrected(3, 3.0);
    let residuals: Vec<f64> = [2u32, 4, 6, 8, 10, 12]
        .iter()
        .map(|&i| refinement_residual(&run(&b, i, i.max(10)).unwrap(), &b))
        .collect();
    assert!(residuals.windows(2).all(|w| w[1] <= w[0]), "{residuals:?}");
}

#[test]
fn two_scale_spectrum() {
    let omegas: Vec<f64> = (0..64).map(|k| k as f64 * PI / 32.0).collect();
    let haar = corrected(1, 0.0);
    assert!(two_scale_residual(&run(&haar, 8, 8).unwrap(), &haar, &omegas) <= 1e-10);
    let b = corrected(3, 3.0);
    let r = two_scale_residual(&run(&b, 10, 10).unwrap(), &b, &omegas);
    assert!((r - 8.621_208_017_268_882e-5).abs() <= 1e-10, "{r}");
}

#[test]
fn uncorrected_bank_refused() {
    let p = MathieuParams::new(3, 3.0).unwrap();
    let sol = solve_even(p, DEFAULT_TOLERANCE).unwrap();
    let raw = FilterBank::build(p, &sol, DEFAULT_THRESHOLD).unwrap();
    assert!(run(&raw, 4, 4).is_err());
}
