//! Cascade algorithm for the scaling function and wavelet.
//!
//! Starting from the unit impulse, each iteration upsamples by two and
//! convolves with `√2 h`. After `i` iterations the sequence `v_i[n]` is the
//! value of the piecewise-constant approximation `φ_i` on
//! `[n 2^{−i}, (n + 1) 2^{−i})`; equivalently `φ_0` is the indicator of
//! `[0, 1)` and `φ_{i+1}(t) = √2 Σ h_k φ_i(2t − k)`. The wavelet is
//! `ψ(t) = √2 Σ g_k φ_i(2t − k)`, piecewise constant at level `i + 1`.
//! Filter index 0 sits at `t = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::filterbank::FilterBank;

/// Finest dyadic level accepted by [`run`].
pub const MAX_LEVEL: u32 = 20;

/// Sup-norm growth per iteration treated as divergence.
pub const DIVERGENCE_GROWTH: f64 = 10.0;

/// Samples of `φ` and `ψ` on the dyadic grid `t = n 2^{−J}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeOutput {
    pub level: u32,
    pub t: Vec<f64>,
    pub phi: Vec<f64>,
    pub psi: Vec<f64>,
    pub iterations: u32,
    /// `sup |φ_i − φ_{i−1}|` for the final iteration.
    pub delta: f64,
    first_index: i64,
}

impl CascadeOutput {
    pub fn spacing(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    /// `2^{−J} Σ φ`, the discrete integral of the scaling function.
    pub fn phi_integral(&self) -> f64 {
        self.phi.iter().sum::<f64>() * self.spacing()
    }

    /// Linear interpolation of the `φ` samples; zero outside the grid.
    pub fn phi_at(&self, x: f64) -> f64 {
        let pos = x / self.spacing() - self.first_index as f64;
        if pos < 0.0 || pos > (self.phi.len() - 1) as f64 {
            return 0.0;
        }
        let i = pos.floor() as usize;
        let frac = pos - i as f64;
        if frac == 0.0 || i + 1 >= self.phi.len() {
            self.phi[i]
        } else {
            self.phi[i] * (1.0 - frac) + self.phi[i + 1] * frac
        }
    }
}

/// A piecewise-constant function with pieces of width `2^{−level}`.
struct Steps {
    level: u32,
    start: i64,
    values: Vec<f64>,
}

impl Steps {
    fn impulse() -> Self {
        Self {
            level: 0,
            start: 0,
            values: vec![1.0],
        }
    }

    /// `(first, one past last)` in units of `2^{−fine}`.
    fn extent(&self, fine: u32) -> (i64, i64) {
        let (first, end) = (self.start, self.start + self.values.len() as i64);
        if fine >= self.level {
            let s = fine - self.level;
            (first << s, end << s)
        } else {
            let s = self.level - fine;
            (first >> s, (end + (1 << s) - 1) >> s)
        }
    }

    /// Value at `t = m 2^{−fine}`.
    fn sample(&self, m: i64, fine: u32) -> f64 {
        let piece = if fine >= self.level {
            m >> (fine - self.level)
        } else {
            m << (self.level - fine)
        };
        let i = piece - self.start;
        if i < 0 || i >= self.values.len() as i64 {
            0.0
        } else {
            self.values[i as usize]
        }
    }

    /// `t ↦ √2 Σ_k f_k self(2t − k)`: the sequence `self ∗ (√2 f ↑ 2^level)`
    /// read one level finer.
    fn dilate_with(&self, filter_start: i64, filter: &[f64]) -> Self {
        let stride = 1usize << self.level;
        let len = self.values.len() + stride * (filter.len() - 1);
        let mut out = vec![0.0; len];
        for (k, &f) in filter.iter().enumerate() {
            if f == 0.0 {
                continue;
            }
            for (m, &v) in self.values.iter().enumerate() {
                out[m + k * stride] += std::f64::consts::SQRT_2 * f * v;
            }
        }
        Self {
            level: self.level + 1,
            start: self.start + filter_start * stride as i64,
            values: out,
        }
    }

    /// `√2 filter ∗ (↑2 self)`.
    fn refine(&self, filter_start: i64, filter: &[f64]) -> Self {
        let len = 2 * (self.values.len() - 1) + filter.len();
        let mut out = vec![0.0; len];
        for (m, &v) in self.values.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            for (k, &f) in filter.iter().enumerate() {
                out[2 * m + k] += std::f64::consts::SQRT_2 * f * v;
            }
        }
        Self {
            level: self.level + 1,
            start: 2 * self.start + filter_start,
            values: out,
        }
    }

    fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Runs `iterations` cascade steps and samples `φ` and `ψ` at resolution
/// `2^{−level}`.
pub fn run(bank: &FilterBank, iterations: u32, level: u32) -> Result<CascadeOutput> {
    if !bank.is_sign_corrected() {
        return Err(Error::NotSignCorrected);
    }
    if iterations < 1 || level < iterations || level > MAX_LEVEL {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= iterations <= level <= {MAX_LEVEL} (got iterations {iterations}, level {level})"
        )));
    }
    let (h_start, h) = bank.h().dense();
    let (g_start, g) = bank.g().dense();
    if h.is_empty() || g.is_empty() {
        return Err(Error::InvalidArgument("empty filter".into()));
    }

    let mut current = Steps::impulse();
    let mut previous = Steps::impulse();
    for i in 1..=iterations {
        let next = current.refine(h_start, &h);
        let (before, after) = (current.sup(), next.sup());
        if after > DIVERGENCE_GROWTH * before || !after.is_finite() {
            return Err(Error::Divergence {
                iteration: i as usize,
                before,
                after,
            });
        }
        previous = std::mem::replace(&mut current, next);
    }
    let wavelet = current.dilate_with(g_start, &g);

    let extents = [
        previous.extent(level),
        current.extent(level),
        wavelet.extent(level),
    ];
    let first = extents.iter().map(|e| e.0).min().unwrap_or(0);
    let last = extents.iter().map(|e| e.1).max().unwrap_or(0);

    let spacing = (-(level as f64)).exp2();
    let count = (last - first + 1) as usize;
    let mut t = Vec::with_capacity(count);
    let mut phi = Vec::with_capacity(count);
    let mut psi = Vec::with_capacity(count);
    let mut delta = 0.0f64;
    for m in first..=last {
        let p = current.sample(m, level);
        t.push(m as f64 * spacing);
        phi.push(p);
        psi.push(wavelet.sample(m, level));
        delta = delta.max((p - previous.sample(m, level)).abs());
    }
    Ok(CascadeOutput {
        level,
        t,
        phi,
        psi,
        iterations,
        delta,
        first_index: first,
    })
}

/// `max_t |φ(t) − √2 Σ h_k φ(2t − k)|` over the output grid, with `φ`
/// linearly interpolated between samples.
pub fn refinement_residual(out: &CascadeOutput, bank: &FilterBank) -> f64 {
    let sqrt2 = std::f64::consts::SQRT_2;
    out.t
        .iter()
        .zip(&out.phi)
        .map(|(&t, &p)| {
            let rhs: f64 = bank
                .h()
                .iter()
                .map(|(k, c)| sqrt2 * c * out.phi_at(2.0 * t - k as f64))
                .sum();
            (p - rhs).abs()
        })
        .fold(0.0, f64::max)
}

/// Riemann-sum spectrum `s Σ φ(t) e^{−jωt}` using every `stride`-th sample
/// (counted from `t = 0`).
fn riemann_spectrum(out: &CascadeOutput, omega: f64, stride: i64) -> Complex64 {
    let s = out.spacing() * stride as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, (&t, &p)) in out.t.iter().zip(&out.phi).enumerate() {
        if (out.first_index + i as i64).rem_euclid(stride) == 0 && p != 0.0 {
            acc += p * Complex64::from_polar(1.0, -omega * t);
        }
    }
    acc * s
}

/// Largest `|Φ_s(2ω) − H(ω) Φ_{2s}(ω)|` over `omegas`, where `Φ_s` is the
/// Riemann sum of `φ` at spacing `s = 2^{−J}`.
///
/// For samples satisfying the refinement equation exactly this is zero up to
/// rounding; otherwise it measures how far the discrete spectrum is from the
/// two-scale relation.
pub fn two_scale_residual(out: &CascadeOutput, bank: &FilterBank, omegas: &[f64]) -> f64 {
    omegas
        .iter()
        .map(|&w| {
            let lhs = riemann_spectrum(out, 2.0 * w, 1);
            let rhs = bank.h().dtft(w) * riemann_spectrum(out, w, 2);
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max)
}
