//! N-point DFT with zero-padding and circular bin access.
//!
//! Forward transform uses the negative-exponent convention, unnormalized;
//! the inverse carries the 1/N factor. The FFT kernel comes from `rustfft`;
//! correctness is defined by the direct summation formula and pinned against
//! an independent direct-summation oracle in the integration tests.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// A length-N complex spectrum with circular indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    bins: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn from_bins(bins: Vec<Complex64>) -> Self {
        assert!(!bins.is_empty(), "spectrum must have at least one bin");
        Self { bins }
    }

    pub fn dft_size(&self) -> usize {
        self.bins.len()
    }

    pub fn bins(&self) -> &[Complex64] {
        &self.bins
    }

    /// Bin k with wrap-around; negative and out-of-range indices are valid.
    pub fn bin_circular(&self, k: i64) -> Complex64 {
        let n = self.bins.len() as i64;
        self.bins[k.rem_euclid(n) as usize]
    }

    /// Mean magnitude over all bins; the reference scale for the
    /// degenerate-denominator test in the apodization engine.
    pub fn mean_magnitude(&self) -> f64 {
        self.bins.iter().map(|c| c.norm()).sum::<f64>() / self.bins.len() as f64
    }
}

/// Forward N-point DFT of `x`, zero-padded to length `n`.
pub fn dft(x: &[Complex64], n: usize) -> Result<ComplexSpectrum> {
    if n < x.len() {
        return Err(Error::DftTooSmall { n, len: x.len() });
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    buf[..x.len()].copy_from_slice(x);
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    Ok(ComplexSpectrum::from_bins(buf))
}

/// Inverse DFT, scaled by 1/N so that `idft(dft(x, n))` recovers the
/// zero-padded `x`.
pub fn idft(spectrum: &ComplexSpectrum) -> Vec<Complex64> {
    let n = spectrum.dft_size();
    let mut buf = spectrum.bins().to_vec();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Three-tap frequency-domain window: `X[k] - alpha*(X[k-K] + X[k+K])`,
/// indices circular. Exact (not an approximation) because the raised-cosine
/// window of length M has spectral impulses landing K = N/M bins away after
/// zero-padding to N.
pub fn apply_window_freq(x: &ComplexSpectrum, k: usize, big_k: usize, alpha: f64) -> Complex64 {
    let k = k as i64;
    let big_k = big_k as i64;
    x.bin_circular(k) - alpha * (x.bin_circular(k - big_k) + x.bin_circular(k + big_k))
}
