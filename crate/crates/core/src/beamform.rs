//! Conventional and apodized beamforming for a uniform linear array.
//!
//! The conventional beamformer `sum_m x_m e^{-j m 2 pi d1 cos(phi)}` is the
//! DTFT of the snapshot evaluated at spatial frequency `2 pi d1 cos(phi)`,
//! so the whole pattern is obtained from one zero-padded DFT plus a
//! nonlinear bin-to-angle mapping: `k = int(N d1 cos(phi))`, rounding half
//! away from zero. Bins are signed; negative bins land in (90deg, 180deg].
//! Apodized variants window the snapshot (or run the per-bin optimizer on
//! the spatial spectrum) before sampling.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::array::ArrayGeometry;
use crate::error::{Error, Result};
use crate::sva::{sva_jointly, sva_separately, SvaMode, SvaOptions};
use crate::transform::{dft, ComplexSpectrum};
use crate::window::{apply_window_time, RaisedCosineWindow};

/// Level floor in dB for normalized patterns; keeps exact-zero responses
/// finite in reports and CSVs.
pub const DB_FLOOR: f64 = -400.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Rect,
    Hanning,
    RaisedCosine(f64),
    SvaJointly,
    SvaSeparately,
}

impl Method {
    /// Stable name used for CSV files and report keys.
    pub fn label(&self) -> String {
        match self {
            Method::Rect => "rect".into(),
            Method::Hanning => "hanning".into(),
            Method::RaisedCosine(a) => format!("raised-cosine-{a:.3}"),
            Method::SvaJointly => "sva-jointly".into(),
            Method::SvaSeparately => "sva-separately".into(),
        }
    }

    /// Spelling accepted back by the parser; used when emitting configs.
    pub fn config_name(&self) -> String {
        match self {
            Method::RaisedCosine(a) => format!("raised-cosine:{a}"),
            other => other.label(),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rect" | "rectangular" => Ok(Method::Rect),
            "hanning" | "hann" => Ok(Method::Hanning),
            "sva-jointly" | "sva" => Ok(Method::SvaJointly),
            "sva-separately" => Ok(Method::SvaSeparately),
            other => {
                if let Some(a) = other.strip_prefix("raised-cosine:") {
                    let alpha: f64 = a
                        .parse()
                        .map_err(|_| Error::Config(format!("bad alpha in method {other:?}")))?;
                    if !(0.0..=0.5).contains(&alpha) {
                        return Err(Error::AlphaOutOfRange(alpha));
                    }
                    Ok(Method::RaisedCosine(alpha))
                } else {
                    Err(Error::Config(format!("unknown method {other:?}")))
                }
            }
        }
    }
}

/// The signed-bin DFT <-> azimuth mapping.
#[derive(Debug, Clone, Copy)]
pub struct BinAngleMap {
    pub dft_size: usize,
    pub spacing_ratio: f64,
}

impl BinAngleMap {
    pub fn new(dft_size: usize, spacing_ratio: f64) -> Self {
        Self {
            dft_size,
            spacing_ratio,
        }
    }

    fn edge(&self) -> f64 {
        self.spacing_ratio * self.dft_size as f64
    }

    /// `k = int(N d1 cos(phi))`, rounding half away from zero.
    pub fn angle_to_bin(&self, angle_deg: f64) -> Result<i64> {
        if !(0.0..=180.0).contains(&angle_deg) {
            return Err(Error::AngleOutOfRange(angle_deg));
        }
        // f64::round is round-half-away-from-zero, the documented tie-break
        Ok((self.edge() * crate::array::cos_azimuth(angle_deg)).round() as i64)
    }

    /// `phi = arccos(k / (d1 N))` for signed bins in the visible region.
    pub fn bin_to_angle(&self, k: i64) -> Result<f64> {
        let edge = self.edge();
        if k.abs() as f64 > edge {
            return Err(Error::BinOutOfRange {
                k,
                max: edge.floor() as i64,
            });
        }
        Ok((k as f64 / edge).acos().to_degrees())
    }
}

/// Per-angle complex response with max-normalized power levels and, for the
/// per-bin-optimized methods, the record of the applied coefficient.
#[derive(Debug, Clone)]
pub struct Beampattern {
    pub method: Method,
    pub angles_deg: Vec<f64>,
    pub response: Vec<Complex64>,
    /// 20 log10 |response| normalized so the maximum is exactly 0 dB,
    /// floored at [`DB_FLOOR`].
    pub power_db: Vec<f64>,
    pub alpha_trace: Option<Vec<f64>>,
}

impl Beampattern {
    pub fn len(&self) -> usize {
        self.angles_deg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles_deg.is_empty()
    }

    /// Unnormalized peak level, 20 log10 of the largest response magnitude.
    /// The quantity to compare across methods, since `power_db` is
    /// per-pattern normalized.
    pub fn peak_raw_db(&self) -> f64 {
        let max = self.response.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if max > 0.0 {
            20.0 * max.log10()
        } else {
            f64::NEG_INFINITY
        }
    }
}

fn normalized_db(response: &[Complex64]) -> Vec<f64> {
    let max = response.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return vec![0.0; response.len()];
    }
    response
        .iter()
        .map(|c| {
            let r = c.norm() / max;
            if r > 0.0 {
                (20.0 * r.log10()).max(DB_FLOOR)
            } else {
                DB_FLOOR
            }
        })
        .collect()
}

/// Uniform angle grid from 0 to 180 degrees inclusive (when the step
/// divides 180), strictly increasing.
pub fn angle_grid(step_deg: f64) -> Vec<f64> {
    assert!(step_deg > 0.0, "angle step must be positive");
    let count = (180.0 / step_deg).round() as usize;
    (0..=count)
        .map(|i| (i as f64 * step_deg).min(180.0))
        .collect()
}

/// True when the spacing admits grating lobes (d1 > 1/2); patterns are
/// still computed, with bins taken modulo N.
pub fn has_grating_lobes(geometry: &ArrayGeometry) -> bool {
    geometry.spacing_ratio > 0.5
}

fn sample_spectrum(
    spectrum: &ComplexSpectrum,
    map: &BinAngleMap,
    angles: &[f64],
    alphas: Option<&[f64]>,
) -> Result<(Vec<Complex64>, Option<Vec<f64>>)> {
    let n = spectrum.dft_size() as i64;
    let mut response = Vec::with_capacity(angles.len());
    let mut trace = alphas.map(|_| Vec::with_capacity(angles.len()));
    for &angle in angles {
        let k = map.angle_to_bin(angle)?;
        response.push(spectrum.bin_circular(k));
        if let (Some(t), Some(a)) = (&mut trace, alphas) {
            t.push(a[k.rem_euclid(n) as usize]);
        }
    }
    Ok((response, trace))
}

fn check_snapshot(snapshot: &[Complex64], geometry: &ArrayGeometry) -> Result<()> {
    if snapshot.len() != geometry.sensor_count {
        return Err(Error::SnapshotLength {
            got: snapshot.len(),
            want: geometry.sensor_count,
        });
    }
    Ok(())
}

/// Rectangular (unshaded) pattern: DFT of the snapshot sampled through the
/// bin-angle map.
pub fn conventional_beampattern(
    snapshot: &[Complex64],
    geometry: &ArrayGeometry,
    angles: &[f64],
    dft_size: usize,
) -> Result<Beampattern> {
    check_snapshot(snapshot, geometry)?;
    let spectrum = dft(snapshot, dft_size)?;
    let map = BinAngleMap::new(dft_size, geometry.spacing_ratio);
    let (response, _) = sample_spectrum(&spectrum, &map, angles, None)?;
    Ok(Beampattern {
        method: Method::Rect,
        angles_deg: angles.to_vec(),
        power_db: normalized_db(&response),
        response,
        alpha_trace: None,
    })
}

/// Pattern of the spatially windowed snapshot (window length M).
pub fn shaded_beampattern(
    snapshot: &[Complex64],
    geometry: &ArrayGeometry,
    angles: &[f64],
    dft_size: usize,
    alpha: f64,
) -> Result<Beampattern> {
    check_snapshot(snapshot, geometry)?;
    let w = RaisedCosineWindow::new(alpha, snapshot.len())?;
    let shaded = apply_window_time(snapshot, &w)?;
    let mut p = conventional_beampattern(&shaded, geometry, angles, dft_size)?;
    p.method = Method::RaisedCosine(alpha);
    Ok(p)
}

/// Per-bin-optimized pattern: the spatial spectrum is processed bin by bin
/// (the +-K taps live in bin space, so the optimizer runs before any angle
/// resampling), then mapped to angles. Requires N to be an integer multiple
/// of M so that K = N/M lands the window impulses exactly on bins.
pub fn sva_beampattern(
    snapshot: &[Complex64],
    geometry: &ArrayGeometry,
    angles: &[f64],
    opts: &SvaOptions,
) -> Result<Beampattern> {
    check_snapshot(snapshot, geometry)?;
    let n = opts.dft_size;
    let m = geometry.sensor_count;
    if n % m != 0 {
        return Err(Error::NotMultipleOfSensors { n, m });
    }
    debug_assert_eq!(opts.padding_factor, n / m);

    let spectrum = dft(snapshot, n)?;
    let result = match opts.mode {
        SvaMode::Jointly => sva_jointly(&spectrum, opts),
        SvaMode::Separately => sva_separately(&spectrum, opts),
    };
    let map = BinAngleMap::new(n, geometry.spacing_ratio);
    let (response, trace) = sample_spectrum(&result.output, &map, angles, Some(&result.alphas))?;
    Ok(Beampattern {
        method: match opts.mode {
            SvaMode::Jointly => Method::SvaJointly,
            SvaMode::Separately => Method::SvaSeparately,
        },
        angles_deg: angles.to_vec(),
        power_db: normalized_db(&response),
        response,
        alpha_trace: trace,
    })
}

/// Dispatch a method descriptor to the matching pattern routine.
pub fn beampattern(
    snapshot: &[Complex64],
    geometry: &ArrayGeometry,
    angles: &[f64],
    dft_size: usize,
    method: Method,
    denom_epsilon: f64,
) -> Result<Beampattern> {
    match method {
        Method::Rect => conventional_beampattern(snapshot, geometry, angles, dft_size),
        Method::Hanning => {
            let mut p = shaded_beampattern(snapshot, geometry, angles, dft_size, 0.5)?;
            p.method = Method::Hanning;
            Ok(p)
        }
        Method::RaisedCosine(alpha) => {
            shaded_beampattern(snapshot, geometry, angles, dft_size, alpha)
        }
        Method::SvaJointly | Method::SvaSeparately => {
            let m = geometry.sensor_count;
            if dft_size % m != 0 {
                return Err(Error::NotMultipleOfSensors { n: dft_size, m });
            }
            let mut opts = match method {
                Method::SvaJointly => SvaOptions::jointly(dft_size, dft_size / m),
                _ => SvaOptions::separately(dft_size, dft_size / m),
            };
            opts.denom_epsilon = denom_epsilon;
            sva_beampattern(snapshot, geometry, angles, &opts)
        }
    }
}
