//! TOML run configuration: a `[scenario]` table (geometry, sources, SNR,
//! seed) plus a `[run]` table (methods, DFT size, angle grid, output
//! directory). `snr_db = inf` is valid TOML and means no noise; omitting it
//! does the same.
//!
//! A parsed config serializes back to an equivalent document, so `dump-config`
//! output can be fed straight into `run`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::array::Scenario;
use crate::beamform::Method;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    scenario: Scenario,
    #[serde(default)]
    run: RunSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RunSection {
    dft_size: usize,
    angle_step_deg: f64,
    methods: Vec<String>,
    output_dir: PathBuf,
    emit_alpha_trace: bool,
    denom_epsilon: f64,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            dft_size: 1024,
            angle_step_deg: 0.1,
            methods: vec![
                "rect".into(),
                "hanning".into(),
                "sva-jointly".into(),
                "sva-separately".into(),
            ],
            output_dir: PathBuf::from("out"),
            emit_alpha_trace: true,
            denom_epsilon: crate::sva::DEFAULT_DENOM_EPSILON,
        }
    }
}

/// A validated run description with method names resolved.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub methods: Vec<Method>,
    pub dft_size: usize,
    pub angle_step_deg: f64,
    pub output_dir: PathBuf,
    pub emit_alpha_trace: bool,
    pub denom_epsilon: f64,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: ConfigFile =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let methods = file
            .run
            .methods
            .iter()
            .map(|name| name.parse())
            .collect::<Result<Vec<Method>>>()?;
        let config = Self {
            scenario: file.scenario,
            methods,
            dft_size: file.run.dft_size,
            angle_step_deg: file.run.angle_step_deg,
            output_dir: file.run.output_dir,
            emit_alpha_trace: file.run.emit_alpha_trace,
            denom_epsilon: file.run.denom_epsilon,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    /// Checks everything that does not require running: scenario shape,
    /// grid step, and the N-multiple-of-M constraint for per-bin methods.
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        if self.methods.is_empty() {
            return Err(Error::Config("no methods selected".into()));
        }
        if self.dft_size == 0 {
            return Err(Error::Config("dft_size must be positive".into()));
        }
        if !(self.angle_step_deg > 0.0) {
            return Err(Error::Config("angle_step_deg must be positive".into()));
        }
        if !(self.denom_epsilon > 0.0) {
            return Err(Error::Config("denom_epsilon must be positive".into()));
        }
        let m = self.scenario.geometry.sensor_count;
        if self.dft_size < m {
            return Err(Error::DftTooSmall {
                n: self.dft_size,
                len: m,
            });
        }
        let wants_sva = self
            .methods
            .iter()
            .any(|mth| matches!(mth, Method::SvaJointly | Method::SvaSeparately));
        if wants_sva && self.dft_size % m != 0 {
            return Err(Error::NotMultipleOfSensors {
                n: self.dft_size,
                m,
            });
        }
        Ok(())
    }

    /// Serialize back to TOML; parsing the result yields an equivalent run.
    pub fn to_toml_string(&self) -> String {
        let file = ConfigFile {
            scenario: self.scenario.clone(),
            run: RunSection {
                dft_size: self.dft_size,
                angle_step_deg: self.angle_step_deg,
                methods: self.methods.iter().map(Method::config_name).collect(),
                output_dir: self.output_dir.clone(),
                emit_alpha_trace: self.emit_alpha_trace,
                denom_epsilon: self.denom_epsilon,
            },
        };
        toml::to_string(&file).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[scenario]
seed = 3

[scenario.geometry]
sensor_count = 64
spacing_ratio = 0.5

[[scenario.sources]]
azimuth_deg = 90.0
power_db = 0.0
"#;

    #[test]
    fn minimal_config_fills_defaults() {
        let c = RunConfig::from_toml_str(MINIMAL).unwrap();
        assert_eq!(c.dft_size, 1024);
        assert_eq!(c.angle_step_deg, 0.1);
        assert_eq!(c.methods.len(), 4);
        assert!(c.scenario.snr_db.is_infinite());
        assert_eq!(c.scenario.seed, 3);
        assert_eq!(c.scenario.sources[0].phase_rad, 0.0);
    }

    #[test]
    fn explicit_inf_snr_parses() {
        let text = MINIMAL.replace("seed = 3", "seed = 3\nsnr_db = inf");
        let c = RunConfig::from_toml_str(&text).unwrap();
        assert!(c.scenario.snr_db.is_infinite());
    }

    #[test]
    fn unknown_field_is_named_in_error() {
        let text = MINIMAL.replace("seed = 3", "seed = 3\nbogus_field = 1");
        let err = RunConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("bogus_field"), "{err}");
    }

    #[test]
    fn unknown_method_rejected() {
        let text = format!("{MINIMAL}\n[run]\nmethods = [\"kaiser\"]\n");
        assert!(matches!(
            RunConfig::from_toml_str(&text),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn non_multiple_dft_size_is_numerical_error() {
        let text = format!("{MINIMAL}\n[run]\ndft_size = 1000\n");
        let err = RunConfig::from_toml_str(&text).unwrap_err();
        assert!(matches!(err, Error::NotMultipleOfSensors { .. }));
        assert!(!err.is_config());
    }

    #[test]
    fn non_multiple_allowed_without_sva_methods() {
        let text = format!("{MINIMAL}\n[run]\ndft_size = 1000\nmethods = [\"rect\"]\n");
        assert!(RunConfig::from_toml_str(&text).is_ok());
    }

    #[test]
    fn round_trips_through_dump() {
        let text = format!(
            "{MINIMAL}\n[run]\nmethods = [\"rect\", \"raised-cosine:0.25\"]\ndft_size = 512\n"
        );
        let a = RunConfig::from_toml_str(&text).unwrap();
        let dumped = a.to_toml_string();
        let b = RunConfig::from_toml_str(&dumped).unwrap();
        assert_eq!(a.methods, b.methods);
        assert_eq!(a.dft_size, b.dft_size);
        assert_eq!(a.scenario.seed, b.scenario.seed);
        assert_eq!(b.to_toml_string(), dumped);
    }
}
