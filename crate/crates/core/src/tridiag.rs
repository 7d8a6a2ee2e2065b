//! Symmetric tridiagonal eigenpairs by Sturm-sequence bisection and inverse
//! iteration.
//!
//! Only single eigenpairs are needed downstream, so each one costs O(n) per
//! bisection step and O(n) per inverse-iteration sweep. The eigenvector solve
//! runs the elimination top-down and the back substitution bottom-up, which
//! is the stable direction for vectors whose entries decay with the index;
//! tail components keep their relative accuracy far below machine epsilon
//! times the peak.

use crate::error::{Error, Result};

const BISECTION_MAX_STEPS: usize = 256;
const INVERSE_ITERATION_SWEEPS: usize = 4;

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidArgument("empty tridiagonal matrix".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::InvalidArgument(format!(
                "off-diagonal length {} does not match diagonal length {}",
                off.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(off.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly less than `x` (Sturm count from the
    /// pivots of the LDLᵀ factorisation of T − xI).
    pub fn count_below(&self, x: f64) -> usize {
        let (lo, hi) = self.gershgorin();
        let tiny = f64::MIN_POSITIVE.sqrt() * (1.0 + lo.abs().max(hi.abs()));
        let mut count = 0;
        let mut pivot = self.diag[0] - x;
        if pivot == 0.0 {
            pivot = tiny;
        }
        if pivot < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let e = self.off[i - 1];
            pivot = (self.diag[i] - x) - e * e / pivot;
            if pivot == 0.0 {
                pivot = tiny;
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected to machine precision.
    pub fn kth_eigenvalue(&self, k: usize) -> Result<f64> {
        if k >= self.dim() {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue index {k} out of range for dimension {}",
                self.dim()
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        for _ in 0..BISECTION_MAX_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
                return Ok(mid);
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::NoConvergence(format!(
            "bisection for eigenvalue {k} left interval [{lo}, {hi}]"
        )))
    }

    /// Unit eigenvector for the (already accurate) eigenvalue `lambda`.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.dim();
        if n == 1 {
            return Ok(vec![1.0]);
        }
        let (lo, hi) = self.gershgorin();
        let norm = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        let lu = ShiftedLu::factor(self, lambda, f64::EPSILON * norm);
        let mut x = vec![1.0; n];
        for _ in 0..INVERSE_ITERATION_SWEEPS {
            lu.solve_in_place(&mut x);
            let len = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !len.is_finite() || len == 0.0 {
                return Err(Error::NoConvergence(format!(
                    "inverse iteration broke down at shift {lambda}"
                )));
            }
            x.iter_mut().for_each(|v| *v /= len);
        }
        self.rebuild_tail(lambda, &mut x);
        let len = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= len);
        Ok(x)
    }

    /// `xᵀ T x / xᵀ x`.
    pub fn rayleigh_quotient(&self, x: &[f64]) -> f64 {
        let mut num = 0.0;
        for (i, (&d, &xi)) in self.diag.iter().zip(x).enumerate() {
            num += d * xi * xi;
            if i + 1 < x.len() {
                num += 2.0 * self.off[i] * xi * x[i + 1];
            }
        }
        num / x.iter().map(|v| v * v).sum::<f64>()
    }

    /// Recomputes the entries of `x` over the trailing block where
    /// `|d_i − λ| > 2(|e_{i−1}| + |e_i|)` from the backward ratio recurrence
    /// `x_i / x_{i−1} = −e_{i−1} / ((d_i − λ) + e_i x_{i+1}/x_i)`, which
    /// yields the decaying (minimal) solution to full relative precision.
    fn rebuild_tail(&self, lambda: f64, x: &mut [f64]) {
        let n = self.dim();
        let dominant = |i: usize| {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            (self.diag[i] - lambda).abs() > 2.0 * (left + right)
        };
        let mut start = n;
        while start > 1 && dominant(start - 1) {
            start -= 1;
        }
        if start >= n {
            return;
        }
        let mut ratios = vec![0.0; n];
        let mut next = 0.0;
        for i in (start..n).rev() {
            let right = if i + 1 < n { self.off[i] * next } else { 0.0 };
            let denom = (self.diag[i] - lambda) + right;
            next = -self.off[i - 1] / denom;
            ratios[i] = next;
        }
        for i in start..n {
            x[i] = ratios[i] * x[i - 1];
        }
    }
}

/// LU factorisation with partial pivoting of T − λI. U carries two
/// superdiagonals after row swaps.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, lambda: f64, pivot_floor: f64) -> Self {
        let n = t.dim();
        let mut u0: Vec<f64> = t.diag.iter().map(|d| d - lambda).collect();
        let mut u1: Vec<f64> = t.off.clone();
        u1.push(0.0);
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];
        for i in 0..n - 1 {
            let sub = t.off[i];
            if sub.abs() > u0[i].abs() {
                // Swap rows i and i + 1.
                swapped[i] = true;
                let (a0, a1, a2) = (u0[i], u1[i], u2[i]);
                u0[i] = sub;
                u1[i] = u0[i + 1];
                u2[i] = u1[i + 1];
                let m = a0 / sub;
                mult[i] = m;
                u0[i + 1] = a1 - m * u1[i];
                u1[i + 1] = a2 - m * u2[i];
            } else {
                if u0[i] == 0.0 {
                    u0[i] = pivot_floor;
                }
                let m = sub / u0[i];
                mult[i] = m;
                u0[i + 1] -= m * u1[i];
                u1[i + 1] -= m * u2[i];
            }
        }
        if u0[n - 1].abs() < pivot_floor {
            u0[n - 1] = if u0[n - 1] < 0.0 {
                -pivot_floor
            } else {
                pivot_floor
            };
        }
        Self {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.mult[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                acc -= self.u2[i] * b[i + 2];
            }
            b[i] = acc / self.u0[i];
        }
    }
}
