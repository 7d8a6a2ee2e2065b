//! Direct integration of the Mathieu equation, used as an independent check
//! on the series solutions.
//!
//! The integrator is the fifth-order solution of the Dormand–Prince pair run
//! at a fixed step. The embedded fourth-order solution only serves as a local
//! error estimate; a step whose estimate exceeds [`LOCAL_ERROR_BOUND`] is
//! refused.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mathieu::{self, EigenSolution, Kind, MathieuParams};

/// Default integration step.
pub const DEFAULT_STEP: f64 = PI / 4096.0;

/// Largest accepted local error estimate per step, relative to
/// `1 + |y| + |y'|`.
pub const LOCAL_ERROR_BOUND: f64 = 1e-6;

/// Half-width of the default shooting bracket around the matrix eigenvalue.
pub const DEFAULT_BRACKET_HALF_WIDTH: f64 = 0.5;

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Samples of one solution of `y'' + (a − 2q cos 2z) y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub grid: Vec<f64>,
    pub y: Vec<f64>,
    pub yprime: Vec<f64>,
    pub a: f64,
    pub q: f64,
    /// Effective uniform step (`z_end / steps`).
    pub step: f64,
}

impl Trajectory {
    pub fn end(&self) -> (f64, f64) {
        let last = self.y.len() - 1;
        (self.y[last], self.yprime[last])
    }
}

#[inline]
fn rhs(a: f64, q: f64, z: f64, y: f64, p: f64) -> (f64, f64) {
    (p, -(a - 2.0 * q * (2.0 * z).cos()) * y)
}

/// One Dormand–Prince step; returns the fifth-order state and the local
/// error estimate.
fn dp_step(a: f64, q: f64, z: f64, y: f64, p: f64, h: f64) -> ((f64, f64), f64) {
    let mut ky = [0.0; 7];
    let mut kp = [0.0; 7];
    for s in 0..7 {
        let mut ys = y;
        let mut ps = p;
        for j in 0..s {
            ys += h * A[s][j] * ky[j];
            ps += h * A[s][j] * kp[j];
        }
        let (dy, dp) = rhs(a, q, z + C[s] * h, ys, ps);
        ky[s] = dy;
        kp[s] = dp;
    }
    let mut y5 = y;
    let mut p5 = p;
    let mut ey = 0.0;
    let mut ep = 0.0;
    for s in 0..7 {
        y5 += h * B5[s] * ky[s];
        p5 += h * B5[s] * kp[s];
        ey += h * (B5[s] - B4[s]) * ky[s];
        ep += h * (B5[s] - B4[s]) * kp[s];
    }
    ((y5, p5), ey.abs().max(ep.abs()))
}

/// Fixed-step integration from `z = 0` to `z_end`.
///
/// The step is shrunk to `z_end / ⌈z_end / step⌉` when `step` does not
/// divide the interval.
pub fn integrate(
    a: f64,
    q: f64,
    y0: f64,
    yprime0: f64,
    z_end: f64,
    step: f64,
) -> Result<Trajectory> {
    if !(step.is_finite() && z_end.is_finite() && step > 0.0 && z_end > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need step > 0 and z_end > 0 (got step {step}, z_end {z_end})"
        )));
    }
    if ![a, q, y0, yprime0].iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite ODE data".into()));
    }
    let ratio = z_end / step;
    let steps = if (ratio - ratio.round()).abs() <= 1e-9 * ratio {
        ratio.round()
    } else {
        ratio.ceil()
    }
    .max(1.0) as usize;
    let h = z_end / steps as f64;

    let mut grid = Vec::with_capacity(steps + 1);
    let mut ys = Vec::with_capacity(steps + 1);
    let mut ps = Vec::with_capacity(steps + 1);
    let (mut y, mut p) = (y0, yprime0);
    grid.push(0.0);
    ys.push(y);
    ps.push(p);
    for i in 0..steps {
        let z = i as f64 * h;
        let ((yn, pn), estimate) = dp_step(a, q, z, y, p, h);
        let bound = LOCAL_ERROR_BOUND * (1.0 + y.abs() + p.abs());
        if estimate > bound {
            let required = 0.9 * h * (bound / estimate).powf(0.2);
            return Err(Error::StepTooLarge {
                step: h,
                estimate,
                bound,
                required,
            });
        }
        if !(yn.is_finite() && pn.is_finite()) {
            return Err(Error::NoConvergence(format!(
                "trajectory left the finite range at z = {z}"
            )));
        }
        y = yn;
        p = pn;
        grid.push((i + 1) as f64 * h);
        ys.push(y);
        ps.push(p);
    }
    Ok(Trajectory {
        grid,
        y: ys,
        yprime: ps,
        a,
        q,
        step: h,
    })
}

/// `[a − 0.5, a + 0.5]` around the matrix characteristic value.
pub fn default_bracket(params: MathieuParams) -> Result<(f64, f64)> {
    let a = mathieu::solve_even(params, mathieu::DEFAULT_TOLERANCE)?.characteristic_value();
    Ok((
        a - DEFAULT_BRACKET_HALF_WIDTH,
        a + DEFAULT_BRACKET_HALF_WIDTH,
    ))
}

/// Value at `π/2` of the even solution `y(0) = 1, y'(0) = 0`. Its roots in
/// `a` are the characteristic values of the odd-order `ce` functions.
pub fn shooting_residual(a: f64, q: f64) -> Result<f64> {
    let traj = integrate(a, q, 1.0, 0.0, PI / 2.0, DEFAULT_STEP)?;
    Ok(traj.end().0)
}

/// Characteristic value `a_ν(q)` by bisection on [`shooting_residual`].
///
/// The bracket must isolate the root of order ν; [`default_bracket`] does.
pub fn shoot_even(params: MathieuParams, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bad bracket [{lo}, {hi}] or tolerance {tol}"
        )));
    }
    let q = params.q();
    let mut f_lo = shooting_residual(lo, q)?;
    let f_hi = shooting_residual(hi, q)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::NoBracket { lo, hi });
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Stagnation(format!(
                "interval [{lo}, {hi}] cannot be split further"
            )));
        }
        let f_mid = shooting_residual(mid, q)?;
        if !f_mid.is_finite() {
            return Err(Error::Stagnation(format!(
                "non-finite residual at a = {mid}"
            )));
        }
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid * f_lo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    Err(Error::Stagnation(format!(
        "no convergence to {tol} within [{lo}, {hi}]"
    )))
}

/// Sup-norm difference between the series solution and a trajectory.
///
/// The series is rescaled to the trajectory's normalisation: unit value at
/// zero for `ce`, unit slope at zero for `se`.
pub fn compare(sol: &EigenSolution, traj: &Trajectory) -> Result<f64> {
    let q_scale = 1.0 + sol.q().abs();
    if (sol.q() - traj.q).abs() > 1e-12 * q_scale {
        return Err(Error::Mismatch(format!(
            "q = {} in the series, {} in the trajectory",
            sol.q(),
            traj.q
        )));
    }
    let a = sol.characteristic_value();
    if (a - traj.a).abs() > 1e-8 * (1.0 + a.abs()) {
        return Err(Error::Mismatch(format!(
            "a = {a} in the series, {} in the trajectory",
            traj.a
        )));
    }
    let (y0, p0) = (traj.y[0], traj.yprime[0]);
    let scale = match sol.kind() {
        Kind::Even => {
            if y0 != 1.0 || p0 != 0.0 {
                return Err(Error::Mismatch(format!(
                    "even series needs y(0) = 1, y'(0) = 0, trajectory has ({y0}, {p0})"
                )));
            }
            sol.value_at_zero()?
        }
        Kind::Odd => {
            if y0 != 0.0 || p0 != 1.0 {
                return Err(Error::Mismatch(format!(
                    "odd series needs y(0) = 0, y'(0) = 1, trajectory has ({y0}, {p0})"
                )));
            }
            sol.slope_at_zero()?
        }
    };
    Ok(traj
        .grid
        .iter()
        .zip(&traj.y)
        .map(|(&z, &y)| (sol.eval(z) / scale - y).abs())
        .fold(0.0, f64::max))
}
