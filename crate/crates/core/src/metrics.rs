//! Beampattern analysis: peaks, mainlobe width, sidelobe level, two-source
//! resolvability, and weak-target detection.
//!
//! Peak detection is plateau-aware: the nonlinear bin mapping makes a fine
//! angle grid sample the same DFT bin repeatedly near broadside, so a "local
//! maximum" is a run of equal values flanked by strictly lower neighbors,
//! reported at the run's center.

use crate::beamform::Beampattern;
use crate::error::{Error, Result};

/// Summary statistics for one pattern, computed against a set of declared
/// source directions (whose lobes are excluded from sidelobe statistics).
#[derive(Debug, Clone)]
pub struct PatternMetrics {
    /// Peaks with >= 3 dB prominence, level-descending.
    pub peaks: Vec<(f64, f64)>,
    /// -3 dB width of the highest peak, degrees.
    pub mainlobe_width_deg: f64,
    /// Highest level outside all declared mainlobe spans.
    pub peak_sidelobe_db: f64,
    /// Median level outside all declared mainlobe spans.
    pub noise_floor_db: f64,
}

/// Index ranges of plateau local maxima (inclusive), interior only.
fn plateau_maxima(levels: &[f64]) -> Vec<(usize, usize)> {
    let n = levels.len();
    let mut runs = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if levels[i] > levels[i - 1] {
            let mut j = i;
            while j + 1 < n && levels[j + 1] == levels[i] {
                j += 1;
            }
            if j + 1 < n && levels[j + 1] < levels[i] {
                runs.push((i, j));
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    runs
}

/// Prominence of the peak at `run`: height above the higher of the two
/// valley floors separating it from taller terrain (or from the ends).
fn prominence(levels: &[f64], run: (usize, usize)) -> f64 {
    let peak = levels[run.0];
    let mut left_min = peak;
    for i in (0..run.0).rev() {
        if levels[i] > peak {
            break;
        }
        left_min = left_min.min(levels[i]);
    }
    let mut right_min = peak;
    for &l in &levels[run.1 + 1..] {
        if l > peak {
            break;
        }
        right_min = right_min.min(l);
    }
    peak - left_min.max(right_min)
}

/// Local maxima with at least `min_prominence_db` of prominence, as
/// (angle, level) pairs sorted by level descending.
pub fn find_peaks(pattern: &Beampattern, min_prominence_db: f64) -> Vec<(f64, f64)> {
    let mut peaks: Vec<(f64, f64)> = plateau_maxima(&pattern.power_db)
        .into_iter()
        .filter(|&run| prominence(&pattern.power_db, run) >= min_prominence_db)
        .map(|(a, b)| {
            let mid = (a + b) / 2;
            (pattern.angles_deg[mid], pattern.power_db[mid])
        })
        .collect();
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    peaks
}

fn peak_runs_with_centers(pattern: &Beampattern) -> Vec<usize> {
    plateau_maxima(&pattern.power_db)
        .into_iter()
        .map(|(a, b)| (a + b) / 2)
        .collect()
}

/// Grid index of the highest plateau peak within `window_deg` of `angle`,
/// if any.
fn best_peak_near(pattern: &Beampattern, angle: f64, window_deg: f64) -> Option<usize> {
    peak_runs_with_centers(pattern)
        .into_iter()
        .filter(|&i| (pattern.angles_deg[i] - angle).abs() <= window_deg)
        .max_by(|&a, &b| pattern.power_db[a].total_cmp(&pattern.power_db[b]))
}

/// Width between the -3 dB crossings around the peak nearest `peak_angle`,
/// with linear interpolation between grid samples.
pub fn mainlobe_width(pattern: &Beampattern, peak_angle: f64) -> Result<f64> {
    let levels = &pattern.power_db;
    let angles = &pattern.angles_deg;
    if levels.is_empty() {
        return Err(Error::CrossingsNotFound(peak_angle));
    }

    // nearest grid point, then hill-climb to the lobe top
    let mut i = angles
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - peak_angle)
                .abs()
                .total_cmp(&(b.1 - peak_angle).abs())
        })
        .map(|(i, _)| i)
        .unwrap();
    while i + 1 < levels.len() && levels[i + 1] > levels[i] {
        i += 1;
    }
    while i > 0 && levels[i - 1] > levels[i] {
        i -= 1;
    }

    let target = levels[i] - 3.0;
    let cross = |a: usize, b: usize| -> f64 {
        // linear interpolation in (angle, dB) between samples a and b
        angles[a] + (angles[b] - angles[a]) * (target - levels[a]) / (levels[b] - levels[a])
    };

    let mut r = i;
    while r < levels.len() && levels[r] > target {
        r += 1;
    }
    if r == levels.len() {
        return Err(Error::CrossingsNotFound(peak_angle));
    }
    let right = cross(r - 1, r);

    let mut l = i;
    loop {
        if levels[l] <= target {
            break;
        }
        if l == 0 {
            return Err(Error::CrossingsNotFound(peak_angle));
        }
        l -= 1;
    }
    let left = cross(l + 1, l);

    Ok(right - left)
}

/// True when distinct peaks appear near both directions and the pattern dips
/// at least `min_dip_db` below the lower peak between them.
pub fn resolvability(
    pattern: &Beampattern,
    angle_a: f64,
    angle_b: f64,
    min_dip_db: f64,
) -> bool {
    let half = 0.5 * (angle_a - angle_b).abs();
    let (Some(ia), Some(ib)) = (
        best_peak_near(pattern, angle_a, half),
        best_peak_near(pattern, angle_b, half),
    ) else {
        return false;
    };
    if ia == ib {
        return false;
    }
    let (lo, hi) = if ia < ib { (ia, ib) } else { (ib, ia) };
    let between = pattern.power_db[lo..=hi]
        .iter()
        .fold(f64::INFINITY, |m, &v| m.min(v));
    let lower_peak = pattern.power_db[ia].min(pattern.power_db[ib]);
    lower_peak - between >= min_dip_db
}

/// True when a local peak within `window_deg` of `angle` sits at or below
/// `max_level_db` (it must look like the weak target, not a strong-source
/// sidelobe) and at least 3 dB above the surrounding floor, taken as the
/// highest level over the annulus (2w, 4w] on both sides.
pub fn detects_target(
    pattern: &Beampattern,
    angle: f64,
    max_level_db: f64,
    window_deg: f64,
) -> bool {
    let Some(ip) = best_peak_near(pattern, angle, window_deg) else {
        return false;
    };
    let level = pattern.power_db[ip];
    let floor = pattern
        .angles_deg
        .iter()
        .zip(&pattern.power_db)
        .filter(|(a, _)| {
            let d = (*a - angle).abs();
            d > 2.0 * window_deg && d <= 4.0 * window_deg
        })
        .map(|(_, &l)| l)
        .fold(f64::NEG_INFINITY, f64::max);
    level <= max_level_db && level >= floor + 3.0
}

/// Span (inclusive index range) of the lobe containing the local maximum
/// nearest `angle`: out to the first flanking level minima.
fn lobe_span(pattern: &Beampattern, angle: f64) -> (usize, usize) {
    let levels = &pattern.power_db;
    let mut i = pattern
        .angles_deg
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - angle).abs().total_cmp(&(b.1 - angle).abs()))
        .map(|(i, _)| i)
        .unwrap();
    while i + 1 < levels.len() && levels[i + 1] > levels[i] {
        i += 1;
    }
    while i > 0 && levels[i - 1] > levels[i] {
        i -= 1;
    }
    let mut lo = i;
    while lo > 0 && levels[lo - 1] <= levels[lo] {
        lo -= 1;
    }
    let mut hi = i;
    while hi + 1 < levels.len() && levels[hi + 1] <= levels[hi] {
        hi += 1;
    }
    (lo, hi)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Full metric set for a pattern. `declared_angles` are the known source
/// directions; their lobes (peak to first flanking minima) are excluded from
/// the sidelobe and floor statistics.
pub fn pattern_metrics(pattern: &Beampattern, declared_angles: &[f64]) -> Result<PatternMetrics> {
    let peaks = find_peaks(pattern, 3.0);
    let Some(&(top_angle, _)) = peaks.first() else {
        return Err(Error::CrossingsNotFound(f64::NAN));
    };
    let width = mainlobe_width(pattern, top_angle)?;

    let mut excluded = vec![false; pattern.len()];
    for &angle in declared_angles {
        let (lo, hi) = lobe_span(pattern, angle);
        for e in &mut excluded[lo..=hi] {
            *e = true;
        }
    }
    let outside: Vec<f64> = pattern
        .power_db
        .iter()
        .zip(&excluded)
        .filter(|(_, &e)| !e)
        .map(|(&l, _)| l)
        .collect();
    let (psl, floor) = if outside.is_empty() {
        (f64::NEG_INFINITY, f64::NAN)
    } else {
        (
            outside.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v)),
            median(outside),
        )
    };
    Ok(PatternMetrics {
        peaks,
        mainlobe_width_deg: width,
        peak_sidelobe_db: psl,
        noise_floor_db: floor,
    })
}
