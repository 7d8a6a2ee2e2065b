//! Characteristic values and Fourier coefficients of ce and se.
//!
//! ```text
//! cargo run --example eigenvalues -- 3 3
//! ```

use mathieu_wavelets::mathieu::{self, solve_even, solve_odd, DEFAULT_TOLERANCE};
use mathieu_wavelets::MathieuParams;

fn main() -> mathieu_wavelets::Result<()> {
    let mut args = std::env::args().skip(1);
    let nu: i64 = args.next().map_or(3, |s| s.parse().expect("nu"));
    let q: f64 = args.next().map_or(3.0, |s| s.parse().expect("q"));
    let params = MathieuParams::new(nu, q)?;

    let ce = solve_even(params, DEFAULT_TOLERANCE)?;
    let se = solve_odd(params, DEFAULT_TOLERANCE)?;
    println!("a_{nu}({q}) = {:.15}", ce.characteristic_value());
    println!("b_{nu}({q}) = {:.15}", se.characteristic_value());
    println!("ce_{nu}(0) = {:.15}", ce.value_at_zero()?);
    println!("truncation order {}", ce.truncation_order());

    println!("\n  m   A_m                     B_m");
    for (i, (a, b)) in ce.coeffs().iter().zip(se.coeffs()).enumerate().take(10) {
        println!("{:3}   {a:+.15e}  {b:+.15e}", 2 * i + 1);
    }

    let zeros = mathieu::zeros(&ce, mathieu::ZERO_GRID_POINTS)?;
    println!("\nzeros of ce_{nu} on [0, pi):");
    for z in zeros {
        println!("  {z:.12}");
    }

    // The first few even characteristic values at this q.
    print!("\na_1, a_3, ... :");
    for k in 0..5 {
        let a = solve_even(MathieuParams::new(2 * k + 1, q)?, DEFAULT_TOLERANCE)?;
        print!(" {:.6}", a.characteristic_value());
    }
    println!();
    Ok(())
}
