//! Scenario execution: compute the requested beampatterns, write one CSV per
//! method plus a metrics report, and drive parameter sweeps.
//!
//! All files are written through a temp-file-plus-rename so concurrent sweep
//! points never interleave partial data, and all numeric output uses fixed
//! 6-decimal formatting, so identical configs produce byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::array::synthesize_snapshot;
use crate::beamform::{angle_grid, beampattern, has_grating_lobes, Beampattern};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::metrics::{detects_target, pattern_metrics, resolvability};

/// Window half-width used for the report's per-source detection checks.
pub const DETECT_WINDOW_DEG: f64 = 1.5;
/// Detection level cap: a candidate peak louder than this is treated as a
/// strong-source sidelobe, not the weak target.
pub const DETECT_MAX_LEVEL_DB: f64 = -40.0;
/// Minimum dip for the report's two-source resolvability checks.
pub const RESOLVE_MIN_DIP_DB: f64 = 3.0;

#[derive(Debug)]
pub struct RunOutputs {
    pub csv_paths: Vec<PathBuf>,
    pub metrics_path: PathBuf,
    pub gnuplot_path: Option<PathBuf>,
}

/// Compute the pattern for every configured method, in order.
pub fn compute_patterns(config: &RunConfig) -> Result<Vec<Beampattern>> {
    config.validate()?;
    let snapshot = synthesize_snapshot(&config.scenario)?;
    let angles = angle_grid(config.angle_step_deg);
    config
        .methods
        .iter()
        .map(|&method| {
            beampattern(
                &snapshot,
                &config.scenario.geometry,
                &angles,
                config.dft_size,
                method,
                config.denom_epsilon,
            )
        })
        .collect()
}

/// Execute a run config: one `<method>.csv` per method, a `metrics.txt`
/// report, and optionally a gnuplot script referencing the CSVs.
pub fn run(config: &RunConfig, gnuplot: bool) -> Result<RunOutputs> {
    let patterns = compute_patterns(config)?;
    std::fs::create_dir_all(&config.output_dir)?;

    let mut csv_paths = Vec::new();
    for pattern in &patterns {
        let path = config
            .output_dir
            .join(format!("{}.csv", pattern.method.label()));
        write_atomic(&path, &pattern_csv(pattern, config.emit_alpha_trace))?;
        csv_paths.push(path);
    }

    let metrics_path = config.output_dir.join("metrics.txt");
    write_atomic(&metrics_path, &metrics_report(config, &patterns))?;

    let gnuplot_path = if gnuplot {
        let path = config.output_dir.join("plot.gp");
        write_atomic(&path, &gnuplot_script(&patterns))?;
        Some(path)
    } else {
        None
    };

    Ok(RunOutputs {
        csv_paths,
        metrics_path,
        gnuplot_path,
    })
}

fn pattern_csv(pattern: &Beampattern, emit_alpha: bool) -> String {
    let with_alpha = emit_alpha && pattern.alpha_trace.is_some();
    let mut out = String::new();
    out.push_str(if with_alpha {
        "angle_deg,power_db,alpha\n"
    } else {
        "angle_deg,power_db\n"
    });
    for i in 0..pattern.len() {
        if with_alpha {
            let alpha = pattern.alpha_trace.as_ref().unwrap()[i];
            let _ = writeln!(
                out,
                "{:.6},{:.6},{:.6}",
                pattern.angles_deg[i], pattern.power_db[i], alpha
            );
        } else {
            let _ = writeln!(out, "{:.6},{:.6}", pattern.angles_deg[i], pattern.power_db[i]);
        }
    }
    out
}

fn metrics_report(config: &RunConfig, patterns: &[Beampattern]) -> String {
    let sources = &config.scenario.sources;
    let declared: Vec<f64> = sources.iter().map(|s| s.azimuth_deg).collect();

    // the two strongest sources define the resolvability pair, if any
    let pair = {
        let mut by_power: Vec<_> = sources.iter().collect();
        by_power.sort_by(|a, b| b.power_db.total_cmp(&a.power_db));
        (by_power.len() >= 2).then(|| (by_power[0].azimuth_deg, by_power[1].azimuth_deg))
    };
    let weak: Vec<f64> = sources
        .iter()
        .filter(|s| s.power_db < 0.0)
        .map(|s| s.azimuth_deg)
        .collect();

    let mut out = String::new();
    let _ = writeln!(out, "seed={}", config.scenario.seed);
    let _ = writeln!(out, "snr_db={:.6}", config.scenario.snr_db);
    let _ = writeln!(out, "sensor_count={}", config.scenario.geometry.sensor_count);
    let _ = writeln!(out, "dft_size={}", config.dft_size);
    if has_grating_lobes(&config.scenario.geometry) {
        let _ = writeln!(out, "grating_lobes=true");
    }
    for pattern in patterns {
        let label = pattern.method.label();
        let _ = writeln!(out, "{label}.peak_raw_db={:.6}", pattern.peak_raw_db());
        match pattern_metrics(pattern, &declared) {
            Ok(m) => {
                if let Some(&(angle, _)) = m.peaks.first() {
                    let _ = writeln!(out, "{label}.peak_angle_deg={angle:.6}");
                }
                let _ = writeln!(out, "{label}.mainlobe_width_deg={:.6}", m.mainlobe_width_deg);
                let _ = writeln!(out, "{label}.peak_sidelobe_db={:.6}", m.peak_sidelobe_db);
                let _ = writeln!(out, "{label}.noise_floor_db={:.6}", m.noise_floor_db);
            }
            Err(e) => {
                let _ = writeln!(out, "{label}.metrics_error={e}");
            }
        }
        if let Some((a, b)) = pair {
            let _ = writeln!(
                out,
                "{label}.resolves_{a:.1}_{b:.1}={}",
                resolvability(pattern, a, b, RESOLVE_MIN_DIP_DB)
            );
        }
        for &az in &weak {
            let _ = writeln!(
                out,
                "{label}.detects_{az:.1}={}",
                detects_target(pattern, az, DETECT_MAX_LEVEL_DB, DETECT_WINDOW_DEG)
            );
        }
    }
    out
}

fn gnuplot_script(patterns: &[Beampattern]) -> String {
    let mut out = String::from(
        "set datafile separator ','\n\
         set xlabel 'azimuth (deg)'\n\
         set ylabel 'relative level (dB)'\n\
         set yrange [-80:5]\n\
         set key outside\n",
    );
    let plots: Vec<String> = patterns
        .iter()
        .map(|p| {
            let label = p.method.label();
            format!("'{label}.csv' using 1:2 with lines title '{label}'")
        })
        .collect();
    let _ = writeln!(out, "plot {}", plots.join(", \\\n     "));
    out
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.to_path_buf();
    tmp.set_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    SensorCount,
    SnrDb,
    DftSize,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::SensorCount => "sensor-count",
            SweepParam::SnrDb => "snr-db",
            SweepParam::DftSize => "dft-size",
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sensor-count" | "sensorCount" | "sensor_count" => Ok(SweepParam::SensorCount),
            "snr-db" | "snrDb" | "snr_db" => Ok(SweepParam::SnrDb),
            "dft-size" | "dftSize" | "dft_size" => Ok(SweepParam::DftSize),
            other => Err(Error::UnknownSweepParam(other.into())),
        }
    }
}

fn apply_sweep_value(config: &RunConfig, param: SweepParam, value: f64) -> Result<RunConfig> {
    let mut c = config.clone();
    match param {
        SweepParam::SensorCount => {
            if value.fract() != 0.0 || value < 2.0 {
                return Err(Error::Config(format!(
                    "sensor-count sweep value {value} is not an integer >= 2"
                )));
            }
            c.scenario.geometry.sensor_count = value as usize;
        }
        SweepParam::SnrDb => c.scenario.snr_db = value,
        SweepParam::DftSize => {
            if value.fract() != 0.0 || value < 1.0 {
                return Err(Error::Config(format!(
                    "dft-size sweep value {value} is not a positive integer"
                )));
            }
            c.dft_size = value as usize;
        }
    }
    Ok(c)
}

/// Run the config once per sweep value. Each point writes its full output
/// set under `<output_dir>/<param>-<value>/`; a `sweep-<param>.csv` summary
/// collects one row per (value, method) with the pattern metrics.
pub fn sweep(config: &RunConfig, param: SweepParam, values: &[f64]) -> Result<PathBuf> {
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    config.validate()?;
    std::fs::create_dir_all(&config.output_dir)?;

    let mut summary = String::from(
        "param,value,method,peak_raw_db,peak_angle_deg,mainlobe_width_deg,peak_sidelobe_db,noise_floor_db\n",
    );
    for &value in values {
        let mut point = apply_sweep_value(config, param, value)?;
        point.output_dir = config
            .output_dir
            .join(format!("{}-{}", param.name(), trim_value(value)));
        let patterns = compute_patterns(&point)?;
        run(&point, false)?;

        let declared: Vec<f64> = point.scenario.sources.iter().map(|s| s.azimuth_deg).collect();
        for pattern in &patterns {
            let m = pattern_metrics(pattern, &declared);
            let (angle, width, psl, floor) = match &m {
                Ok(m) => (
                    m.peaks.first().map_or(f64::NAN, |p| p.0),
                    m.mainlobe_width_deg,
                    m.peak_sidelobe_db,
                    m.noise_floor_db,
                ),
                Err(_) => (f64::NAN, f64::NAN, f64::NAN, f64::NAN),
            };
            let _ = writeln!(
                summary,
                "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6}",
                param.name(),
                trim_value(value),
                pattern.method.label(),
                pattern.peak_raw_db(),
                angle,
                width,
                psl,
                floor
            );
        }
    }
    let path = config
        .output_dir
        .join(format!("sweep-{}.csv", param.name()));
    write_atomic(&path, &summary)?;
    Ok(path)
}

/// Integer-valued sweep points print without decimals so directory names
/// stay tidy; everything else keeps full precision.
fn trim_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{ArrayGeometry, Scenario, SourceSpec};
    use crate::beamform::Method;

    fn small_config(dir: &Path) -> RunConfig {
        RunConfig {
            scenario: Scenario {
                geometry: ArrayGeometry::new(16, 0.5).unwrap(),
                sources: vec![SourceSpec {
                    azimuth_deg: 90.0,
                    power_db: 0.0,
                    phase_rad: 0.0,
                }],
                snr_db: f64::INFINITY,
                seed: 0,
            },
            methods: vec![Method::Rect, Method::SvaJointly],
            dft_size: 256,
            angle_step_deg: 0.5,
            output_dir: dir.to_path_buf(),
            emit_alpha_trace: true,
            denom_epsilon: crate::sva::DEFAULT_DENOM_EPSILON,
        }
    }

    #[test]
    fn run_writes_expected_files() {
        let dir = tempfile::tempdir().unwrap();
        let config = small_config(dir.path());
        let out = run(&config, true).unwrap();
        assert_eq!(out.csv_paths.len(), 2);
        for p in &out.csv_paths {
            assert!(p.exists(), "{p:?}");
        }
        assert!(out.metrics_path.exists());
        assert!(out.gnuplot_path.unwrap().exists());

        let rect = std::fs::read_to_string(&out.csv_paths[0]).unwrap();
        let mut lines = rect.lines();
        assert_eq!(lines.next(), Some("angle_deg,power_db"));
        assert_eq!(lines.count(), 361); // one row per grid angle

        let sva = std::fs::read_to_string(&out.csv_paths[1]).unwrap();
        assert!(sva.starts_with("angle_deg,power_db,alpha\n"));
    }

    #[test]
    fn reruns_are_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let config = small_config(dir.path());
        run(&config, false).unwrap();
        let first = std::fs::read(dir.path().join("rect.csv")).unwrap();
        run(&config, false).unwrap();
        let second = std::fs::read(dir.path().join("rect.csv")).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn sweep_summary_has_row_per_value_and_method() {
        let dir = tempfile::tempdir().unwrap();
        let config = small_config(dir.path());
        let path = sweep(&config, SweepParam::DftSize, &[128.0, 256.0]).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        assert_eq!(text.lines().count(), 1 + 2 * 2);
        assert!(dir.path().join("dft-size-128").join("rect.csv").exists());
    }

    #[test]
    fn sweep_rejects_fractional_sensor_count() {
        let dir = tempfile::tempdir().unwrap();
        let config = small_config(dir.path());
        assert!(sweep(&config, SweepParam::SensorCount, &[16.5]).is_err());
    }

    #[test]
    fn sweep_param_names_parse() {
        assert_eq!("sensor-count".parse::<SweepParam>().unwrap(), SweepParam::SensorCount);
        assert_eq!("snrDb".parse::<SweepParam>().unwrap(), SweepParam::SnrDb);
        assert_eq!("dft_size".parse::<SweepParam>().unwrap(), SweepParam::DftSize);
        assert!(matches!(
            "bandwidth".parse::<SweepParam>(),
            Err(Error::UnknownSweepParam(_))
        ));
    }
}
