//! Wavelets from odd-order periodic Mathieu functions.
//!
//! The crate solves the periodic Mathieu eigenproblem for odd order ν
//! ([`mathieu`]), turns the Fourier coefficients of `ce_ν(·, q)` into a
//! smoothing/detail filter pair ([`filterbank`]), iterates the refinement
//! equation to sample the scaling function and wavelet ([`cascade`]) and
//! applies the filters as a periodic DWT ([`transform`]). [`ode`] integrates
//! the Mathieu equation directly and serves as an independent check on the
//! series solutions.
//!
//! ```
//! use mathieu_wavelets::{filterbank::FilterBank, mathieu, MathieuParams};
//!
//! let params = MathieuParams::new(3, 3.0).unwrap();
//! let sol = mathieu::solve_even(params, mathieu::DEFAULT_TOLERANCE).unwrap();
//! assert!((sol.characteristic_value() - 9.915506290452134).abs() < 1e-9);
//!
//! let bank = FilterBank::build(params, &sol, 1e-10).unwrap();
//! assert!((bank.h().dtft(0.0).re + 1.0).abs() < 1e-9);
//! ```

pub mod cascade;
pub mod cli;
pub mod error;
pub mod filterbank;
pub mod mathieu;
pub mod ode;
pub mod transform;
pub mod tridiag;

pub use error::{Error, Result};
pub use filterbank::FilterBank;
pub use mathieu::{EigenSolution, Kind, MathieuParams};
