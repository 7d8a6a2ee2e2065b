//! Transfer functions, the phase relation and the power-complementarity
//! residual, plus the zeros of |H| and |G|.
//!
//! ```text
//! cargo run --example spectrum -- 3 3
//! ```

use std::f64::consts::PI;

use mathieu_wavelets::filterbank::{self, magnitude_g_via_se, qmf_report};
use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::MathieuParams;

fn main() -> mathieu_wavelets::Result<()> {
    let mut args = std::env::args().skip(1);
    let nu: i64 = args.next().map_or(3, |s| s.parse().expect("nu"));
    let q: f64 = args.next().map_or(3.0, |s| s.parse().expect("q"));
    let params = MathieuParams::new(nu, q)?;
    let sol = solve_even(params, DEFAULT_TOLERANCE)?;

    let grid = qmf_report(&sol, 16)?;
    println!("  omega      |H|        |G|        |G| via se   power residual");
    for i in 0..grid.len() {
        let w = grid.omegas[i];
        println!(
            "  {w:6.4}   {:9.6}  {:9.6}  {:9.6}    {:.3e}",
            grid.h[i].norm(),
            grid.g[i].norm(),
            magnitude_g_via_se(params, w)?,
            grid.qmf_residual[i]
        );
    }

    let fine = qmf_report(&sol, 8192)?;
    println!(
        "\nmax phase-relation residual  {:.3e}",
        fine.max_phase_residual()
    );
    println!(
        "max power residual           {:.6}",
        fine.max_qmf_residual()
    );

    let fmt = |z: Vec<f64>| {
        z.iter()
            .map(|w| format!("{:.6}", w / PI))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!(
        "\nzeros of |H| / pi: {}",
        fmt(filterbank::zeros_of_h(&sol)?)
    );
    println!("zeros of |G| / pi: {}", fmt(filterbank::zeros_of_g(&sol)?));

    println!("\npower residual as q -> 0 (nu = {nu}):");
    for q in [1.0, 0.1, 0.01, 0.001] {
        let s = solve_even(MathieuParams::new(nu, q)?, DEFAULT_TOLERANCE)?;
        println!(
            "  q = {q:<6} {:.4e}",
            qmf_report(&s, 8192)?.max_qmf_residual()
        );
    }
    Ok(())
}
