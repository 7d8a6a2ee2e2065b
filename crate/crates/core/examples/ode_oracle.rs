//! Cross-check of the matrix solver against direct integration of the ODE.
//!
//! ```text
//! cargo run --release --example ode_oracle
//! ```

use std::f64::consts::PI;

use mathieu_wavelets::mathieu::{solve_even, DEFAULT_TOLERANCE};
use mathieu_wavelets::ode::{self, compare, integrate, shoot_even, DEFAULT_STEP};
use mathieu_wavelets::MathieuParams;

fn main() -> mathieu_wavelets::Result<()> {
    println!(" nu     q    matrix a              shooting a            diff      series vs RK");
    for nu in [1, 3, 5] {
        for q in [0.0, 1.0, 3.0, 15.0] {
            let params = MathieuParams::new(nu, q)?;
            let sol = solve_even(params, DEFAULT_TOLERANCE)?;
            let a = sol.characteristic_value();
            let shot = shoot_even(params, ode::default_bracket(params)?, 1e-12)?;
            let traj = integrate(a, q, 1.0, 0.0, 2.0 * PI, DEFAULT_STEP)?;
            println!(
                "{nu:3} {q:5}    {a:<20.15}  {shot:<20.15}  {:.1e}   {:.1e}",
                (a - shot).abs(),
                compare(&sol, &traj)?
            );
        }
    }

    // Halving the step on y'' + y = 0 shows the global order.
    println!("\nstep        |y(pi) + 1|");
    for k in 4..8 {
        let h = PI / f64::from(1 << k);
        match integrate(1.0, 0.0, 1.0, 0.0, PI, h) {
            Ok(t) => println!("pi/{:<5}    {:.3e}", 1 << k, (t.end().0 + 1.0).abs()),
            Err(e) => println!("pi/{:<5}    refused: {e}", 1 << k),
        }
    }
    Ok(())
}
