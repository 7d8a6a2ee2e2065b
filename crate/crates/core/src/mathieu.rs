//! Odd-order periodic Mathieu functions.
//!
//! The Mathieu equation `y'' + (a − 2q cos 2x) y = 0` has 2π-periodic,
//! π-antiperiodic solutions of odd order ν:
//!
//! ```text
//! ce_ν(x, q) = Σ A_m cos(m x),   a = a_ν(q)
//! se_ν(x, q) = Σ B_m sin(m x),   a = b_ν(q)      m = 1, 3, 5, …
//! ```
//!
//! Substituting the series into the equation gives the three-term recurrence
//!
//! ```text
//! (a − 1 ∓ q) A_1 − q A_3 = 0
//! (a − m²) A_m − q (A_{m−2} + A_{m+2}) = 0,      m ≥ 3 odd
//! ```
//!
//! (upper sign for `ce`, lower for `se`), i.e. a symmetric tridiagonal
//! eigenproblem with diagonal `1 ± q, 9, 25, …` and off-diagonal `q`.
//! The characteristic value of order `2n + 1` is its `(n + 1)`-th smallest
//! eigenvalue.

use crate::error::{Error, Result};
use crate::tridiag::SymTridiagonal;

/// Default absolute tolerance on the characteristic value.
pub const DEFAULT_TOLERANCE: f64 = 1e-13;

/// Upper bound for the adaptive truncation order.
pub const MAX_TRUNCATION_ORDER: usize = 1 << 14;

/// Largest admissible `|A_{2N−1}| / max |A_m|`.
pub const TAIL_DECAY_BOUND: f64 = 1e-14;

/// The pair (ν, q): odd characteristic exponent and intensity parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathieuParams {
    nu: u32,
    q: f64,
}

impl MathieuParams {
    pub fn new(nu: i64, q: f64) -> Result<Self> {
        if nu % 2 == 0 {
            return Err(Error::EvenOrder(nu));
        }
        if nu < 1 {
            return Err(Error::NonPositiveOrder(nu));
        }
        if !q.is_finite() {
            return Err(Error::NonFiniteQ(q));
        }
        let nu = u32::try_from(nu)
            .map_err(|_| Error::InvalidArgument(format!("nu = {nu} is too large")))?;
        Ok(Self { nu, q })
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Same order, parameter `−q`.
    pub fn negated(&self) -> Self {
        Self {
            nu: self.nu,
            q: -self.q,
        }
    }

    /// Starting truncation order `max(25, ν + ⌈2√|q|⌉ + 10)`.
    pub fn initial_truncation(&self) -> usize {
        let spread = (2.0 * self.q.abs().sqrt()).ceil() as usize;
        25.max(self.nu as usize + spread + 10)
    }
}

/// Which periodic solution a coefficient vector describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Even solution `ce_ν`, cosine series.
    Even,
    /// Odd solution `se_ν`, sine series.
    Odd,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Even => "even-ce",
            Kind::Odd => "odd-se",
        }
    }
}

/// Characteristic value and truncated Fourier coefficients `[A_1, A_3, …]`.
///
/// Coefficients have unit Euclidean norm. The sign is fixed so that
/// `ce_ν(0, q) > 0` (even kind) or `se_ν'(0, q) > 0` (odd kind).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    kind: Kind,
    params: MathieuParams,
    a: f64,
    coeffs: Vec<f64>,
}

impl EigenSolution {
    /// Wraps an arbitrary coefficient vector. No recurrence check is made;
    /// this exists for rescaled or externally supplied series.
    pub fn from_parts(kind: Kind, params: MathieuParams, a: f64, coeffs: Vec<f64>) -> Self {
        Self {
            kind,
            params,
            a,
            coeffs,
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn params(&self) -> MathieuParams {
        self.params
    }

    pub fn nu(&self) -> u32 {
        self.params.nu
    }

    pub fn q(&self) -> f64 {
        self.params.q
    }

    /// Characteristic value `a_ν(q)` (even kind) or `b_ν(q)` (odd kind).
    pub fn characteristic_value(&self) -> f64 {
        self.a
    }

    /// `[A_1, A_3, …, A_{2N−1}]`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of harmonic `m`; zero for even `m` or `m` beyond the
    /// truncation.
    pub fn coeff(&self, m: usize) -> f64 {
        if m.is_multiple_of(2) {
            return 0.0;
        }
        self.coeffs.get((m - 1) / 2).copied().unwrap_or(0.0)
    }

    /// Number of retained harmonics N.
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len()
    }

    /// Same solution with every coefficient multiplied by `factor`.
    pub fn rescaled(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    /// Series value at `x`, summed in ascending harmonic order.
    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = (2 * i + 1) as f64;
            acc += match self.kind {
                Kind::Even => c * (m * x).cos(),
                Kind::Odd => c * (m * x).sin(),
            };
        }
        acc
    }

    /// Derivative of the series at `x`.
    pub fn eval_derivative(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = (2 * i + 1) as f64;
            acc += match self.kind {
                Kind::Even => -c * m * (m * x).sin(),
                Kind::Odd => c * m * (m * x).cos(),
            };
        }
        acc
    }

    /// `ce_ν(0, q) = Σ A_m`.
    pub fn value_at_zero(&self) -> Result<f64> {
        self.expect_kind(Kind::Even)?;
        Ok(self.coeffs.iter().sum())
    }

    /// `se_ν'(0, q) = Σ m B_m`.
    pub fn slope_at_zero(&self) -> Result<f64> {
        self.expect_kind(Kind::Odd)?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (2 * i + 1) as f64 * c)
            .sum())
    }

    /// Largest recurrence residual `|(a − m²)A_m − q(A_{m−2} + A_{m+2})|`
    /// relative to `max |A_m|`, with the first row using `a − 1 ∓ q`.
    pub fn recurrence_residual(&self) -> f64 {
        let q = self.params.q;
        let n = self.coeffs.len();
        let peak = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let mut worst = 0.0f64;
        for i in 0..n {
            let m = (2 * i + 1) as f64;
            let below = if i > 0 { self.coeffs[i - 1] } else { 0.0 };
            let above = if i + 1 < n { self.coeffs[i + 1] } else { 0.0 };
            let r = if i == 0 {
                let first = match self.kind {
                    Kind::Even => self.a - 1.0 - q,
                    Kind::Odd => self.a - 1.0 + q,
                };
                first * self.coeffs[0] - q * above
            } else {
                (self.a - m * m) * self.coeffs[i] - q * (below + above)
            };
            worst = worst.max(r.abs());
        }
        worst / peak
    }

    /// `|A_{2N−1}| / max |A_m|`.
    pub fn tail_ratio(&self) -> f64 {
        let peak = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        self.coeffs.last().map_or(0.0, |c| c.abs() / peak)
    }

    fn expect_kind(&self, kind: Kind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }
}

/// Even solution `ce_ν(·, q)` and `a_ν(q)`.
pub fn solve_even(params: MathieuParams, tolerance: f64) -> Result<EigenSolution> {
    solve(params, Kind::Even, tolerance)
}

/// Odd solution `se_ν(·, q)` and `b_ν(q)`.
pub fn solve_odd(params: MathieuParams, tolerance: f64) -> Result<EigenSolution> {
    solve(params, Kind::Odd, tolerance)
}

fn solve(params: MathieuParams, kind: Kind, tolerance: f64) -> Result<EigenSolution> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive (got {tolerance})"
        )));
    }
    let mut order = params.initial_truncation();
    let mut previous = solve_truncated(params, kind, order)?;
    while order < MAX_TRUNCATION_ORDER {
        order = (2 * order).min(MAX_TRUNCATION_ORDER);
        let current = solve_truncated(params, kind, order)?;
        let change = (current.a - previous.a).abs();
        if change < tolerance && current.tail_ratio() < TAIL_DECAY_BOUND {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NoConvergence(format!(
        "{} of order {} at q = {} not converged at truncation {}",
        kind.name(),
        params.nu,
        params.q,
        MAX_TRUNCATION_ORDER
    )))
}

/// Eigenpair of the recurrence matrix truncated to `order` harmonics.
pub fn solve_truncated(params: MathieuParams, kind: Kind, order: usize) -> Result<EigenSolution> {
    let index = (params.nu as usize - 1) / 2;
    if order <= index {
        return Err(Error::InvalidArgument(format!(
            "truncation order {order} too small for nu = {}",
            params.nu
        )));
    }
    let q = params.q;
    let mut diag: Vec<f64> = (0..order)
        .map(|i| {
            let m = (2 * i + 1) as f64;
            m * m
        })
        .collect();
    match kind {
        Kind::Even => diag[0] += q,
        Kind::Odd => diag[0] -= q,
    }

    if q == 0.0 {
        // Diagonal operator: eigenvalue ν² with the unit harmonic.
        let mut coeffs = vec![0.0; order];
        coeffs[index] = 1.0;
        return Ok(EigenSolution {
            kind,
            params,
            a: diag[index],
            coeffs,
        });
    }

    let matrix = SymTridiagonal::new(diag, vec![q; order - 1])?;
    // Bisection is only good to eps·‖T‖, which grows like N²; the Rayleigh
    // quotient is weighted by the eigenvector and stays at eps·|a|.
    let shift = matrix.kth_eigenvalue(index)?;
    let rough = matrix.eigenvector(shift)?;
    let shift = matrix.rayleigh_quotient(&rough);
    let mut coeffs = matrix.eigenvector(shift)?;
    let a = matrix.rayleigh_quotient(&coeffs);
    let orientation: f64 = match kind {
        Kind::Even => coeffs.iter().sum(),
        Kind::Odd => coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (2 * i + 1) as f64 * c)
            .sum(),
    };
    if orientation < 0.0 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(EigenSolution {
        kind,
        params,
        a,
        coeffs,
    })
}

/// Sign changes of `f` on `[lo, hi)` sampled at `points` cells, each refined
/// by bisection. A cell whose endpoint values share a sign but that hides a
/// pair of roots (the extremum between them crosses zero) makes the grid
/// too coarse; the grid is then doubled up to `max_points`.
pub(crate) fn locate_zeros<F, D>(
    f: F,
    df: D,
    lo: f64,
    hi: f64,
    points: usize,
    max_points: usize,
) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut n = points.max(2);
    loop {
        if let Some(roots) = scan_grid(&f, &df, lo, hi, n) {
            return Ok(roots);
        }
        if n >= max_points {
            return Err(Error::GridTooCoarse(n));
        }
        n *= 2;
    }
}

/// One pass of [`locate_zeros`] with `n` cells; `None` if a cell hides a
/// root pair.
fn scan_grid<F, D>(f: &F, df: &D, lo: f64, hi: f64, n: usize) -> Option<Vec<f64>>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let step = (hi - lo) / n as f64;
    let mut roots = Vec::new();
    let mut left = f(lo);
    let mut dleft = df(lo);
    for i in 0..n {
        let x0 = lo + step * i as f64;
        let x1 = lo + step * (i + 1) as f64;
        let right = f(x1);
        let dright = df(x1);
        if left == 0.0 {
            roots.push(x0);
        } else if left * right < 0.0 {
            roots.push(bisect(f, x0, x1, left));
        } else if dleft * dright < 0.0 && right != 0.0 {
            // An interior extremum; check it keeps the sign of the ends.
            let xe = bisect(df, x0, x1, dleft);
            if f(xe) * left < 0.0 {
                return None;
            }
        }
        left = right;
        dleft = dright;
    }
    Some(roots)
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut x0: f64, mut x1: f64, mut f0: f64) -> f64 {
    while x1 - x0 > 1e-12 {
        let mid = 0.5 * (x0 + x1);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm * f0 < 0.0 {
            x1 = mid;
        } else {
            x0 = mid;
            f0 = fm;
        }
    }
    0.5 * (x0 + x1)
}

/// Default grid size for [`count_zeros`].
pub const ZERO_GRID_POINTS: usize = 4096;

/// Zeros of `ce_ν(·, q)` on `[0, π)`, each to 1e−12.
pub fn zeros(sol: &EigenSolution, points: usize) -> Result<Vec<f64>> {
    sol.expect_kind(Kind::Even)?;
    locate_zeros(
        |x| sol.eval(x),
        |x| sol.eval_derivative(x),
        0.0,
        std::f64::consts::PI,
        points,
        points << 6,
    )
}

/// Number of zeros of `ce_ν(·, q)` on `[0, π)`.
pub fn count_zeros(sol: &EigenSolution) -> Result<usize> {
    zeros(sol, ZERO_GRID_POINTS).map(|z| z.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn even(nu: i64, q: f64) -> EigenSolution {
        solve_even(MathieuParams::new(nu, q).unwrap(), DEFAULT_TOLERANCE).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(MathieuParams::new(2, 1.0), Err(Error::EvenOrder(2)));
        assert_eq!(MathieuParams::new(0, 1.0), Err(Error::EvenOrder(0)));
        assert_eq!(
            MathieuParams::new(-3, 1.0),
            Err(Error::NonPositiveOrder(-3))
        );
        assert!(matches!(
            MathieuParams::new(3, f64::NAN),
            Err(Error::NonFiniteQ(_))
        ));
        assert!(MathieuParams::new(3, -2.5).is_ok());
        assert_eq!(Error::EvenOrder(2).to_string(), "nu must be odd (got 2)");
    }

    #[test]
    fn initial_truncation_rule() {
        assert_eq!(MathieuParams::new(3, 3.0).unwrap().initial_truncation(), 25);
        // 101 + ceil(2·sqrt 400) + 10
        assert_eq!(
            MathieuParams::new(101, 400.0).unwrap().initial_truncation(),
            151
        );
    }

    #[test]
    fn bad_tolerance() {
        let p = MathieuParams::new(1, 1.0).unwrap();
        assert!(solve_even(p, 0.0).is_err());
        assert!(solve_even(p, f64::NAN).is_err());
    }

    #[test]
    fn zero_q_is_the_harmonic_oscillator() {
        for nu in [1i64, 3, 5, 7] {
            for sol in [
                even(nu, 0.0),
                solve_odd(MathieuParams::new(nu, 0.0).unwrap(), DEFAULT_TOLERANCE).unwrap(),
            ] {
                assert_eq!(sol.characteristic_value(), (nu * nu) as f64);
                for m in (1..2 * sol.truncation_order()).step_by(2) {
                    let expected = if m as i64 == nu { 1.0 } else { 0.0 };
                    assert_eq!(sol.coeff(m), expected);
                }
            }
        }
    }

    #[test]
    fn eval_at_zero_q() {
        let sol = even(3, 0.0);
        assert!(sol.eval(PI / 6.0).abs() < 1e-15);
        assert_eq!(even(1, 0.0).value_at_zero().unwrap(), 1.0);
    }

    #[test]
    fn value_at_zero_is_eval_at_zero() {
        for (nu, q) in [(1, 1.0), (3, 3.0), (5, 15.0), (7, -4.0)] {
            let sol = even(nu, q);
            let v = sol.value_at_zero().unwrap();
            assert!(v > 0.0);
            assert_eq!(v, sol.eval(0.0));
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let odd = solve_odd(MathieuParams::new(3, 3.0).unwrap(), DEFAULT_TOLERANCE).unwrap();
        assert!(matches!(odd.value_at_zero(), Err(Error::WrongKind { .. })));
        assert!(matches!(count_zeros(&odd), Err(Error::WrongKind { .. })));
        assert!(even(3, 3.0).slope_at_zero().is_err());
        assert!(odd.slope_at_zero().unwrap() > 0.0);
    }

    #[test]
    fn odd_order_vanishes_at_half_pi() {
        let sol = even(3, 3.0);
        assert!(sol.eval(PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn recurrence_and_tail() {
        for (nu, q) in [(1, 1.0), (3, 3.0), (5, 15.0), (7, 40.0), (3, -6.0)] {
            let p = MathieuParams::new(nu, q).unwrap();
            for sol in [solve_even(p, 1e-12).unwrap(), solve_odd(p, 1e-12).unwrap()] {
                assert!(sol.recurrence_residual() <= 1e-10, "{nu} {q}");
                assert!(sol.tail_ratio() < TAIL_DECAY_BOUND);
                let norm: f64 = sol.coeffs().iter().map(|c| c * c).sum();
                assert!((norm - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn zero_counts() {
        assert_eq!(count_zeros(&even(1, 0.0)).unwrap(), 1);
        let z = zeros(&even(1, 0.0), ZERO_GRID_POINTS).unwrap();
        assert!((z[0] - PI / 2.0).abs() < 1e-12);
        assert_eq!(count_zeros(&even(3, 3.0)).unwrap(), 3);
        assert_eq!(count_zeros(&even(5, 15.0)).unwrap(), 5);
    }

    #[test]
    fn hidden_root_pair_forces_refinement() {
        // Two roots 1e−3 apart inside one cell of an 8-point grid.
        let f = |x: f64| (x - 1.0) * (x - 1.001);
        let df = |x: f64| 2.0 * x - 2.001;
        let roots = locate_zeros(f, df, 0.0, 3.0, 8, 1 << 16).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(matches!(
            locate_zeros(f, df, 0.0, 3.0, 8, 8),
            Err(Error::GridTooCoarse(8))
        ));
    }

    #[test]
    fn truncation_too_small() {
        let p = MathieuParams::new(9, 1.0).unwrap();
        assert!(solve_truncated(p, Kind::Even, 4).is_err());
        assert!(solve_truncated(p, Kind::Even, 5).is_ok());
    }
}
