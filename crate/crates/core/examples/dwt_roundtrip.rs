//! Periodic DWT round trip with a truncated bank, across q.
//!
//! Only the q = 0 bank is an exact QMF pair, so reconstruction error grows
//! with q.
//!
//! ```text
//! cargo run --example dwt_roundtrip
//! ```

use mathieu_wavelets::filterbank::DEFAULT_THRESHOLD;
use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::transform::{forward, inverse};
use mathieu_wavelets::{FilterBank, MathieuParams};
use rand::{Rng, SeedableRng};

fn main() -> mathieu_wavelets::Result<()> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let signal: Vec<f64> = (0..64).map(|_| rng.random_range(-1.0..1.0)).collect();
    let energy: f64 = signal.iter().map(|x| x * x).sum();
    let levels = 3;

    println!("    q        max error     energy ratio");
    for q in [0.0, 0.001, 0.01, 0.1, 1.0, 3.0] {
        let params = MathieuParams::new(3, q)?;
        let sol = solve_even(params, DEFAULT_TOLERANCE)?;
        let bank = FilterBank::build(params, &sol, DEFAULT_THRESHOLD)?.sign_correct()?;
        let bands = forward(&signal, &bank, levels)?;
        let back = inverse(&bands, &bank)?;
        let err = back
            .iter()
            .zip(&signal)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("  {q:6}   {err:.4e}    {:.6}", bands.energy() / energy);
    }
    Ok(())
}
