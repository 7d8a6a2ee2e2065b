//! Smoothing and detail taps, truncated at a threshold.
//!
//! ```text
//! cargo run --example filter_bank -- 5 15 1e-10
//! ```

use mathieu_wavelets::filterbank::DEFAULT_THRESHOLD;
use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::{FilterBank, MathieuParams};

fn main() -> mathieu_wavelets::Result<()> {
    let mut args = std::env::args().skip(1);
    let nu: i64 = args.next().map_or(3, |s| s.parse().expect("nu"));
    let q: f64 = args.next().map_or(3.0, |s| s.parse().expect("q"));
    let threshold: f64 = args
        .next()
        .map_or(DEFAULT_THRESHOLD, |s| s.parse().expect("threshold"));

    let params = MathieuParams::new(nu, q)?;
    let sol = solve_even(params, DEFAULT_TOLERANCE)?;
    let bank = FilterBank::build(params, &sol, threshold)?;

    println!("nu = {nu}, q = {q}, threshold = {threshold:e}");
    println!("{} h taps, {} g taps", bank.h().len(), bank.g().len());
    let (hf, hl) = bank.h().support().expect("non-empty");
    let (gf, gl) = bank.g().support().expect("non-empty");
    println!("\n  l   h_l                      g_l");
    for l in hf.min(gf)..=hl.max(gl) {
        println!(
            "{l:3}   {:+.15e}  {:+.15e}",
            bank.h().get(l),
            bank.g().get(l)
        );
    }

    println!(
        "\n(1/sqrt2) sum h   = {:+.12}",
        bank.h().sum() / std::f64::consts::SQRT_2
    );
    println!("sum (-1)^k h_k    = {:+.3e}", bank.h().alternating_sum());
    println!("symmetry defect   = {:.3e}", bank.symmetry_defect());

    let lowpass = bank.sign_correct()?;
    println!(
        "after sign_correct, H(0) = {:+.12}",
        lowpass.h().dtft(0.0).re
    );

    println!("\nretained taps per threshold:");
    for e in [4, 6, 8, 10, 12, 14] {
        let t = 10f64.powi(-e);
        let b = FilterBank::build(params, &sol, t)?;
        println!("  1e-{e:<2}  {}", b.h().len());
    }
    Ok(())
}
