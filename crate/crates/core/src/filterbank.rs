//! Smoothing and detail filters of the Mathieu multiresolution analysis.
//!
//! With `ce_ν(x, q) = Σ A_m cos(m x)` normalised by `ce_ν(0, q)`, the
//! transfer functions are
//!
//! ```text
//! H(ω) = −e^{−jνω/2} ce_ν(ω/2, q) / ce_ν(0, q)
//! G(ω) =  e^{j(ν−2)(ω−π)/2} ce_ν((ω−π)/2, q) / ce_ν(0, q)
//! ```
//!
//! and their impulse responses, under `H(ω) = 2^{−1/2} Σ h_l e^{−jωl}`, are
//!
//! ```text
//! h_l = −√2 A_{|2l−ν|} / (2 ce_ν(0, q))
//! g_l =  √2 (−1)^l A_{|2l+ν−2|} / (2 ce_ν(0, q))
//! ```
//!
//! As built, `2^{−1/2} Σ h_l = −1`; [`FilterBank::sign_correct`] flips `h`
//! to the usual `H(0) = +1` convention needed by the cascade and the DWT.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mathieu::{self, locate_zeros, EigenSolution, Kind, MathieuParams};

/// Default FIR truncation threshold.
pub const DEFAULT_THRESHOLD: f64 = 1e-10;

/// Grid size used when counting zeros of `|H|` and `|G|`.
pub const ZERO_GRID_POINTS: usize = 8192;

/// A finitely supported real sequence indexed by integers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Taps(BTreeMap<i64, f64>);

impl Taps {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, index: i64, value: f64) {
        self.0.insert(index, value);
    }

    /// Coefficient at `index`, zero off the support.
    pub fn get(&self, index: i64) -> f64 {
        self.0.get(&index).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(index, value)` pairs in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    /// Smallest and largest stored index.
    pub fn support(&self) -> Option<(i64, i64)> {
        let first = *self.0.keys().next()?;
        let last = *self.0.keys().next_back()?;
        Some((first, last))
    }

    /// Dense copy `(first index, values)` with zeros filling the gaps.
    pub fn dense(&self) -> (i64, Vec<f64>) {
        match self.support() {
            None => (0, Vec::new()),
            Some((first, last)) => (first, (first..=last).map(|k| self.get(k)).collect()),
        }
    }

    pub fn sum(&self) -> f64 {
        self.0.values().sum()
    }

    /// `Σ (−1)^k c_k`.
    pub fn alternating_sum(&self) -> f64 {
        self.iter()
            .map(|(k, v)| if k.rem_euclid(2) == 0 { v } else { -v })
            .sum()
    }

    /// `2^{−1/2} Σ c_k e^{−jωk}`, summed in ascending index order.
    pub fn dtft(&self, omega: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.iter() {
            acc += c * Complex64::from_polar(1.0, -omega * k as f64);
        }
        acc * FRAC_1_SQRT_2
    }

    fn negated(&self) -> Self {
        Self(self.0.iter().map(|(&k, &v)| (k, -v)).collect())
    }
}

impl FromIterator<(i64, f64)> for Taps {
    fn from_iter<I: IntoIterator<Item = (i64, f64)>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Smoothing filter `h` and detail filter `g` of one Mathieu MRA.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    nu: u32,
    q: f64,
    h: Taps,
    g: Taps,
    threshold: f64,
    sign_corrected: bool,
}

impl FilterBank {
    /// Filter coefficients from the Fourier coefficients of `ce_ν(·, q)`.
    ///
    /// Exact zeros and taps with magnitude below `threshold` are dropped.
    pub fn build(params: MathieuParams, sol: &EigenSolution, threshold: f64) -> Result<Self> {
        check_solution(params, sol)?;
        if !(threshold.is_finite() && threshold >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "threshold must be finite and non-negative (got {threshold})"
            )));
        }
        let nu = params.nu() as i64;
        let top = 2 * sol.truncation_order() as i64 - 1;
        let scale = SQRT_2 / (2.0 * sol.value_at_zero()?);
        let keep = |v: f64| v != 0.0 && v.abs() >= threshold;

        let h: Taps = ((nu - top) / 2..=(nu + top) / 2)
            .map(|l| (l, -scale * sol.coeff((2 * l - nu).unsigned_abs() as usize)))
            .filter(|&(_, v)| keep(v))
            .collect();
        let g: Taps = ((2 - nu - top) / 2..=(2 - nu + top) / 2)
            .map(|l| {
                let sign = if l.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                (
                    l,
                    sign * scale * sol.coeff((2 * l + nu - 2).unsigned_abs() as usize),
                )
            })
            .filter(|&(_, v)| keep(v))
            .collect();

        if h.len() < 2 || g.len() < 2 {
            return Err(Error::TooFewTaps(threshold));
        }
        Ok(Self {
            nu: params.nu(),
            q: params.q(),
            h,
            g,
            threshold,
            sign_corrected: false,
        })
    }

    /// Assembles a bank from explicit taps.
    pub fn from_taps(nu: u32, q: f64, h: Taps, g: Taps, sign_corrected: bool) -> Self {
        Self {
            nu,
            q,
            h,
            g,
            threshold: 0.0,
            sign_corrected,
        }
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn h(&self) -> &Taps {
        &self.h
    }

    pub fn g(&self) -> &Taps {
        &self.g
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn is_sign_corrected(&self) -> bool {
        self.sign_corrected
    }

    /// Negates `h` so that `H(0) = +1`; `g` is untouched.
    pub fn sign_correct(&self) -> Result<Self> {
        if self.sign_corrected {
            return Err(Error::AlreadyCorrected);
        }
        Ok(Self {
            h: self.h.negated(),
            sign_corrected: true,
            ..self.clone()
        })
    }

    /// Largest `|h_{−l} − h_{l+ν}|` over `l > 0`.
    pub fn symmetry_defect(&self) -> f64 {
        let nu = self.nu as i64;
        let Some((first, last)) = self.h.support() else {
            return 0.0;
        };
        let reach = first.unsigned_abs().max(last.unsigned_abs()) as i64;
        (1..=reach)
            .map(|l| (self.h.get(-l) - self.h.get(l + nu)).abs())
            .fold(0.0, f64::max)
    }
}

fn check_solution(params: MathieuParams, sol: &EigenSolution) -> Result<()> {
    if sol.kind() != Kind::Even {
        return Err(Error::WrongKind {
            expected: Kind::Even.name(),
            found: sol.kind().name(),
        });
    }
    if sol.nu() != params.nu() || sol.q() != params.q() {
        return Err(Error::Mismatch(format!(
            "solution is for (nu {}, q {}), parameters are (nu {}, q {})",
            sol.nu(),
            sol.q(),
            params.nu(),
            params.q()
        )));
    }
    Ok(())
}

/// Closed-form smoothing transfer function `H_ν(ω)`.
pub fn transfer_h(sol: &EigenSolution, omega: f64) -> Result<Complex64> {
    let ce0 = sol.value_at_zero()?;
    let nu = sol.nu() as f64;
    Ok(-Complex64::from_polar(1.0, -nu * omega / 2.0) * (sol.eval(omega / 2.0) / ce0))
}

/// Closed-form detail transfer function `G_ν(ω)`.
pub fn transfer_g(sol: &EigenSolution, omega: f64) -> Result<Complex64> {
    let ce0 = sol.value_at_zero()?;
    let nu = sol.nu() as f64;
    let shifted = (omega - PI) / 2.0;
    Ok(Complex64::from_polar(1.0, (nu - 2.0) * shifted) * (sol.eval(shifted) / ce0))
}

/// `|se_ν(ω/2, −q)| / ce_ν(0, q)` at each frequency.
///
/// Both functions carry unit-norm coefficient vectors, under which this
/// equals `|G_ν(ω)|`.
pub fn magnitudes_g_via_se(params: MathieuParams, omegas: &[f64]) -> Result<Vec<f64>> {
    let ce = mathieu::solve_even(params, mathieu::DEFAULT_TOLERANCE)?;
    let se = mathieu::solve_odd(params.negated(), mathieu::DEFAULT_TOLERANCE)?;
    let ce0 = ce.value_at_zero()?;
    Ok(omegas
        .iter()
        .map(|w| se.eval(w / 2.0).abs() / ce0)
        .collect())
}

/// Single-frequency form of [`magnitudes_g_via_se`].
pub fn magnitude_g_via_se(params: MathieuParams, omega: f64) -> Result<f64> {
    Ok(magnitudes_g_via_se(params, &[omega])?[0])
}

/// Transfer functions sampled on `[0, 2π)` with their QMF residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    pub omegas: Vec<f64>,
    pub h: Vec<Complex64>,
    pub g: Vec<Complex64>,
    /// `| |H(ω)|² + |H(ω+π)|² − 1 |`.
    pub qmf_residual: Vec<f64>,
    /// `|H(ω) + e^{−jω} G*(ω+π)|`.
    pub phase_residual: Vec<f64>,
}

impl SpectrumGrid {
    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn max_qmf_residual(&self) -> f64 {
        self.qmf_residual.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_phase_residual(&self) -> f64 {
        self.phase_residual.iter().copied().fold(0.0, f64::max)
    }
}

/// Samples `H` and `G` at `ω_k = 2πk / n` and evaluates both QMF conditions.
pub fn qmf_report(sol: &EigenSolution, n_samples: usize) -> Result<SpectrumGrid> {
    if n_samples < 2 || !n_samples.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "sample count must be even and at least 2 (got {n_samples})"
        )));
    }
    let mut grid = SpectrumGrid {
        omegas: Vec::with_capacity(n_samples),
        h: Vec::with_capacity(n_samples),
        g: Vec::with_capacity(n_samples),
        qmf_residual: Vec::with_capacity(n_samples),
        phase_residual: Vec::with_capacity(n_samples),
    };
    for k in 0..n_samples {
        let w = 2.0 * PI * k as f64 / n_samples as f64;
        let h = transfer_h(sol, w)?;
        let g = transfer_g(sol, w)?;
        let h_pi = transfer_h(sol, w + PI)?;
        let g_pi = transfer_g(sol, w + PI)?;
        grid.omegas.push(w);
        grid.h.push(h);
        grid.g.push(g);
        grid.qmf_residual
            .push((h.norm_sqr() + h_pi.norm_sqr() - 1.0).abs());
        grid.phase_residual
            .push((h + Complex64::from_polar(1.0, -w) * g_pi.conj()).norm());
    }
    Ok(grid)
}

/// Zeros of `|H_ν|` on `[0, 2π)`: the roots of the real factor `ce_ν(ω/2, q)`.
pub fn zeros_of_h(sol: &EigenSolution) -> Result<Vec<f64>> {
    transfer_zeros(sol, 0.0, transfer_h)
}

/// Zeros of `|G_ν|` on `[0, 2π)`: the roots of `ce_ν((ω−π)/2, q)`.
pub fn zeros_of_g(sol: &EigenSolution) -> Result<Vec<f64>> {
    transfer_zeros(sol, -PI, transfer_g)
}

fn transfer_zeros(
    sol: &EigenSolution,
    offset: f64,
    transfer: fn(&EigenSolution, f64) -> Result<Complex64>,
) -> Result<Vec<f64>> {
    let ce0 = sol.value_at_zero()?;
    // |H| and |G| are 2π-periodic and G vanishes at ω = 0 exactly, so the
    // search window is shifted off the grid by half a cell and wrapped back.
    let shift = PI / ZERO_GRID_POINTS as f64;
    let mut roots = locate_zeros(
        |w| sol.eval((w + offset) / 2.0),
        |w| 0.5 * sol.eval_derivative((w + offset) / 2.0),
        -shift,
        2.0 * PI - shift,
        ZERO_GRID_POINTS,
        ZERO_GRID_POINTS << 6,
    )?;
    for w in roots.iter_mut() {
        if *w < 0.0 {
            *w += 2.0 * PI;
        }
    }
    roots.sort_by(f64::total_cmp);
    for &w in &roots {
        let m = transfer(sol, w)?.norm();
        if m > 1e-6 {
            return Err(Error::NoConvergence(format!(
                "located zero at {w} has |transfer| = {m:e} (ce(0) = {ce0})"
            )));
        }
    }
    Ok(roots)
}
