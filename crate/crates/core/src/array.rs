//! Uniform linear array model: geometry, plane-wave snapshot synthesis, and
//! seeded complex Gaussian noise.
//!
//! Sensor outputs are the narrowband complex amplitudes at the carrier; no
//! time-domain waveform is simulated. Azimuth is measured from the positive
//! x-axis (the array axis): endfire at 0°/180°, broadside at 90°. Sensor 0
//! is the phase reference.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayGeometry {
    pub sensor_count: usize,
    /// Element spacing over wavelength, d/lambda. 1/2 is the classic
    /// grating-lobe-free choice.
    pub spacing_ratio: f64,
}

impl ArrayGeometry {
    pub fn new(sensor_count: usize, spacing_ratio: f64) -> Result<Self> {
        if sensor_count < 2 {
            return Err(Error::TooFewSensors(sensor_count));
        }
        if !(spacing_ratio > 0.0) {
            return Err(Error::BadSpacing(spacing_ratio));
        }
        Ok(Self {
            sensor_count,
            spacing_ratio,
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub azimuth_deg: f64,
    /// Power relative to the strongest source; 0 dB marks the reference.
    pub power_db: f64,
    /// Initial phase of the complex amplitude at sensor 0.
    #[serde(default)]
    pub phase_rad: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub geometry: ArrayGeometry,
    pub sources: Vec<SourceSpec>,
    /// Per-sensor SNR against the strongest source; infinite means no noise.
    #[serde(default = "infinite_snr")]
    pub snr_db: f64,
    #[serde(default)]
    pub seed: u64,
}

fn infinite_snr() -> f64 {
    f64::INFINITY
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        ArrayGeometry::new(self.geometry.sensor_count, self.geometry.spacing_ratio)?;
        if self.sources.is_empty() {
            return Err(Error::EmptySources);
        }
        for s in &self.sources {
            if !(0.0..=180.0).contains(&s.azimuth_deg) {
                return Err(Error::AngleOutOfRange(s.azimuth_deg));
            }
        }
        Ok(())
    }

    /// Noise variance per sensor implied by `snr_db`, relative to the
    /// strongest source amplitude. Zero when the SNR is infinite.
    pub fn noise_variance(&self) -> f64 {
        if self.snr_db.is_infinite() {
            return 0.0;
        }
        let a_max = self
            .sources
            .iter()
            .map(|s| 10f64.powf(s.power_db / 20.0))
            .fold(0.0, f64::max);
        a_max * a_max * 10f64.powf(-self.snr_db / 10.0)
    }
}

/// Phase advance of a unit plane wave from azimuth `azimuth_deg` at sensor
/// `m`, relative to sensor 0: `2*pi*d1*m*cos(phi)`. The sign pairs with the
/// conventional beamformer's `e^{-j...}` kernel so the steered sum is
/// coherent at the true azimuth.
pub fn steering_phase(geometry: &ArrayGeometry, azimuth_deg: f64, m: usize) -> Result<f64> {
    if m >= geometry.sensor_count {
        return Err(Error::SensorOutOfRange {
            m,
            count: geometry.sensor_count,
        });
    }
    Ok(2.0 * std::f64::consts::PI * geometry.spacing_ratio * m as f64 * cos_azimuth(azimuth_deg))
}

/// cos of the azimuth via sin(90deg - phi): exact 0 at broadside and exact
/// +-1 at the endfires, where the direct cosine picks up the pi/2 rounding.
pub(crate) fn cos_azimuth(azimuth_deg: f64) -> f64 {
    (90.0 - azimuth_deg).to_radians().sin()
}

/// Complex sensor outputs for the scenario: superposed plane waves plus
/// circularly-symmetric Gaussian noise. Fixed seed, fixed draw order
/// (re, im per sensor in index order) — snapshots are bit-reproducible.
pub fn synthesize_snapshot(scenario: &Scenario) -> Result<Vec<Complex64>> {
    scenario.validate()?;
    let geom = &scenario.geometry;
    let m_count = geom.sensor_count;

    let mut x = vec![Complex64::new(0.0, 0.0); m_count];
    for src in &scenario.sources {
        let amp = 10f64.powf(src.power_db / 20.0);
        for (m, out) in x.iter_mut().enumerate() {
            let phase = src.phase_rad + steering_phase(geom, src.azimuth_deg, m)?;
            *out += Complex64::from_polar(amp, phase);
        }
    }

    let sigma2 = scenario.noise_variance();
    if sigma2 > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
        add_noise(&mut x, sigma2, &mut rng);
    }
    Ok(x)
}

/// The noise field for a scenario alone, without any sources — the same
/// samples `synthesize_snapshot` would add for the same seed. Useful as a
/// noise-floor reference.
pub fn noise_only_snapshot(scenario: &Scenario) -> Result<Vec<Complex64>> {
    scenario.validate()?;
    let mut x = vec![Complex64::new(0.0, 0.0); scenario.geometry.sensor_count];
    let sigma2 = scenario.noise_variance();
    if sigma2 > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
        add_noise(&mut x, sigma2, &mut rng);
    }
    Ok(x)
}

fn add_noise(x: &mut [Complex64], sigma2: f64, rng: &mut ChaCha8Rng) {
    let per_component = (sigma2 / 2.0).sqrt();
    for out in x.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *out += Complex64::new(per_component * re, per_component * im);
    }
}
