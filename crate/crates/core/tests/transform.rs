use mathieu_wavelets::filterbank::DEFAULT_THRESHOLD;
use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::transform::{forward, inverse, round_trip_error};
use mathieu_wavelets::{FilterBank, MathieuParams};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corrected(nu: i64, q: f64) -> FilterBank {
    let p = MathieuParams::new(nu, q).unwrap();
    let sol = solve_even(p, DEFAULT_TOLERANCE).unwrap();
    FilterBank::build(p, &sol, DEFAULT_THRESHOLD)
        .unwrap()
        .sign_correct()
        .unwrap()
}

fn seeded_signal() -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..64).map(|_| rng.random_range(-1.0..1.0)).collect()
}

#[test]
fn exact_at_zero_intensity() {
    let x = seeded_signal();
    for nu in [1i64, 3, 5] {
        let b = corrected(nu, 0.0);
        assert!(round_trip_error(&x, &b, 3).unwrap() <= 1e-12);
        let res = forward(&x, &b, 3).unwrap();
        let energy: f64 = x.iter().map(|v| v * v).sum();
        assert!((res.energy() - energy).abs() <= 1e-10);
    }
}

#[test]
fn round_trip_golden() {
    let x = seeded_signal();
    let golden = [
        (0.001, 4.264_617_215_555_822e-4),
        (0.01, 4.260_208_712_438_263e-3),
        (0.1, 4.214_174_478_993_904e-2),
        (3.0, 7.237_195_403_541_932e-1),
    ];
    let mut previous = 0.0;
    for (q, want) in golden {
        let err = round_trip_error(&x, &corrected(3, q), 3).unwrap();
        assert!((err - want).abs() <= 1e-12 * (1.0 + want), "q={q}: {err}");
        assert!(err > previous);
        previous = err;
    }
}

#[test]
fn subband_lengths() {
    let x = seeded_signal();
    let res = forward(&x, &corrected(3, 3.0), 3).unwrap();
    let lengths: Vec<usize> = res.details.iter().map(Vec::len).collect();
    assert_eq!(lengths, vec![32, 16, 8]);
    assert_eq!(res.approx.len(), 8);
    assert_eq!(res.coefficients().count(), 64);
    assert_eq!(inverse(&res, &corrected(3, 3.0)).unwrap().len(), 64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn linear(seed in any::<u64>(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..32).map(|_| rng.random_range(-1.0..1.0)).collect();
        let y: Vec<f64> = (0..32).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mix: Vec<f64> = x.iter().zip(&y).map(|(u, v)| a * u + b * v).collect();
        let bank = corrected(3, 3.0);
        let fx = forward(&x, &bank, 2).unwrap();
        let fy = forward(&y, &bank, 2).unwrap();
        let fm = forward(&mix, &bank, 2).unwrap();
        for ((m, u), v) in fm.coefficients().zip(fx.coefficients()).zip(fy.coefficients()) {
            prop_assert!((m - (a * u + b * v)).abs() <= 1e-12);
        }
    }
}
