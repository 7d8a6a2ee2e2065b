//! Scaling function and wavelet by the cascade algorithm.
//!
//! Writes `t,phi,psi` to standard output and convergence diagnostics to
//! standard error, so the table can be piped straight into a plotting tool.
//!
//! ```text
//! cargo run --example cascade -- 3 3 6 > phi.csv
//! ```

use std::f64::consts::PI;

use mathieu_wavelets::cascade::{self, refinement_residual, two_scale_residual};
use mathieu_wavelets::filterbank::DEFAULT_THRESHOLD;
use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::{FilterBank, MathieuParams};

fn main() -> mathieu_wavelets::Result<()> {
    let mut args = std::env::args().skip(1);
    let nu: i64 = args.next().map_or(3, |s| s.parse().expect("nu"));
    let q: f64 = args.next().map_or(3.0, |s| s.parse().expect("q"));
    let iterations: u32 = args.next().map_or(6, |s| s.parse().expect("iterations"));

    let params = MathieuParams::new(nu, q)?;
    let sol = solve_even(params, DEFAULT_TOLERANCE)?;
    let bank = FilterBank::build(params, &sol, DEFAULT_THRESHOLD)?.sign_correct()?;

    for i in (2..=iterations).step_by(2) {
        let out = cascade::run(&bank, i, iterations)?;
        eprintln!("iterations {i:2}: delta {:.4}", out.delta);
    }

    let out = cascade::run(&bank, iterations, iterations)?;
    let omegas: Vec<f64> = (0..64).map(|k| k as f64 * PI / 32.0).collect();
    eprintln!("integral of phi      {:.10}", out.phi_integral());
    eprintln!(
        "refinement residual  {:.4e}",
        refinement_residual(&out, &bank)
    );
    eprintln!(
        "two-scale residual   {:.4e}",
        two_scale_residual(&out, &bank, &omegas)
    );

    println!("t,phi,psi");
    for ((t, p), s) in out.t.iter().zip(&out.phi).zip(&out.psi) {
        println!("{t},{p:e},{s:e}");
    }
    Ok(())
}
