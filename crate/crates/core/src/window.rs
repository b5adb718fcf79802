//! Raised-cosine window family.
//!
//! The family is parameterized by a single coefficient `alpha`:
//!
//! ```text
//! w(n) = 1 - 2*alpha*cos(2*pi*n / N),   n = 0..N-1
//! ```
//!
//! `alpha = 0` gives the rectangular window, `alpha = 1/2` the Hanning
//! window. The period equals the window length, so the window's DFT has
//! exactly three nonzero impulses (at bins 0 and +-1 before zero-padding),
//! which is what makes the three-tap frequency-domain form exact.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Weight sequence `1 - 2*alpha*cos(2*pi*i/n)` for `i = 0..n`.
pub fn raised_cosine_weights(alpha: f64, n: usize) -> Result<Vec<f64>> {
    if !(0.0..=0.5).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let step = 2.0 * std::f64::consts::PI / n as f64;
    Ok((0..n)
        .map(|i| 1.0 - 2.0 * alpha * (step * i as f64).cos())
        .collect())
}

/// A raised-cosine window with precomputed weights.
#[derive(Debug, Clone)]
pub struct RaisedCosineWindow {
    alpha: f64,
    weights: Vec<f64>,
}

impl RaisedCosineWindow {
    pub fn new(alpha: f64, length: usize) -> Result<Self> {
        Ok(Self {
            alpha,
            weights: raised_cosine_weights(alpha, length)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Elementwise product of a complex sequence with the window.
pub fn apply_window_time(x: &[Complex64], w: &RaisedCosineWindow) -> Result<Vec<Complex64>> {
    if x.len() != w.len() {
        return Err(Error::LengthMismatch {
            data: x.len(),
            window: w.len(),
        });
    }
    Ok(x.iter().zip(w.weights()).map(|(v, wi)| v * wi).collect())
}
