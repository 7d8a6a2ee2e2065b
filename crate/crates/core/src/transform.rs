//! Periodic discrete wavelet transform with a Mathieu filter bank.
//!
//! Analysis at one level:
//!
//! ```text
//! a[n] = Σ_k h_k x[(2n + k) mod N]
//! d[n] = Σ_k g_k x[(2n + k) mod N]
//! ```
//!
//! and synthesis is the adjoint, so the round trip is exact whenever the
//! bank is an orthonormal QMF pair and carries no circular shift.

use crate::error::{Error, Result};
use crate::filterbank::{FilterBank, Taps};

/// Signal extension at the boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
}

/// Subbands of a multi-level decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DwtResult {
    pub levels: usize,
    /// Level-`levels` approximation.
    pub approx: Vec<f64>,
    /// `details[0]` is level 1 (finest), `details[levels − 1]` the coarsest.
    pub details: Vec<Vec<f64>>,
    pub length: usize,
    pub boundary: Boundary,
}

impl DwtResult {
    /// All coefficients, coarsest approximation first.
    pub fn coefficients(&self) -> impl Iterator<Item = f64> + '_ {
        self.approx
            .iter()
            .chain(self.details.iter().rev().flatten())
            .copied()
    }

    pub fn energy(&self) -> f64 {
        self.coefficients().map(|c| c * c).sum()
    }

    fn check_shape(&self) -> Result<()> {
        if self.levels == 0 || self.details.len() != self.levels {
            return Err(Error::ShapeMismatch(format!(
                "{} detail bands for {} levels",
                self.details.len(),
                self.levels
            )));
        }
        for (i, band) in self.details.iter().enumerate() {
            let expected = self.length >> (i + 1);
            if band.len() != expected {
                return Err(Error::ShapeMismatch(format!(
                    "detail level {} has {} samples, expected {expected}",
                    i + 1,
                    band.len()
                )));
            }
        }
        if self.approx.len() != self.length >> self.levels {
            return Err(Error::ShapeMismatch(format!(
                "approximation has {} samples, expected {}",
                self.approx.len(),
                self.length >> self.levels
            )));
        }
        Ok(())
    }
}

fn check_bank(bank: &FilterBank) -> Result<()> {
    if !bank.is_sign_corrected() {
        return Err(Error::NotSignCorrected);
    }
    if bank.h().is_empty() || bank.g().is_empty() {
        return Err(Error::InvalidArgument("empty filter bank".into()));
    }
    Ok(())
}

fn analyse(x: &[f64], filter: &Taps) -> Vec<f64> {
    let n = x.len() as i64;
    (0..n / 2)
        .map(|i| {
            filter
                .iter()
                .map(|(k, c)| c * x[(2 * i + k).rem_euclid(n) as usize])
                .sum()
        })
        .collect()
}

fn synthesise_into(out: &mut [f64], band: &[f64], filter: &Taps) {
    let n = out.len() as i64;
    for (i, &b) in band.iter().enumerate() {
        for (k, c) in filter.iter() {
            out[(2 * i as i64 + k).rem_euclid(n) as usize] += c * b;
        }
    }
}

/// `levels`-level analysis of `signal`.
pub fn forward(signal: &[f64], bank: &FilterBank, levels: usize) -> Result<DwtResult> {
    check_bank(bank)?;
    if levels == 0 {
        return Err(Error::InvalidArgument("levels must be at least 1".into()));
    }
    let length = signal.len();
    if length == 0 || levels >= usize::BITS as usize || !length.is_multiple_of(1usize << levels) {
        return Err(Error::LengthNotDivisible { length, levels });
    }
    let mut approx = signal.to_vec();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let d = analyse(&approx, bank.g());
        approx = analyse(&approx, bank.h());
        details.push(d);
    }
    Ok(DwtResult {
        levels,
        approx,
        details,
        length,
        boundary: Boundary::Periodic,
    })
}

/// Synthesis from all subbands back to a signal of the original length.
pub fn inverse(res: &DwtResult, bank: &FilterBank) -> Result<Vec<f64>> {
    check_bank(bank)?;
    res.check_shape()?;
    let mut approx = res.approx.clone();
    for detail in res.details.iter().rev() {
        let mut out = vec![0.0; 2 * approx.len()];
        synthesise_into(&mut out, &approx, bank.h());
        synthesise_into(&mut out, detail, bank.g());
        approx = out;
    }
    Ok(approx)
}

/// `max |inverse(forward(x)) − x|`.
pub fn round_trip_error(signal: &[f64], bank: &FilterBank, levels: usize) -> Result<f64> {
    let rebuilt = inverse(&forward(signal, bank, levels)?, bank)?;
    Ok(rebuilt
        .iter()
        .zip(signal)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}
