use thiserror::Error;

/// Errors across the library. Configuration problems and numerical-constraint
/// violations are kept distinct so the CLI can map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alpha {0} outside [0, 0.5]")]
    AlphaOutOfRange(f64),

    #[error("dft size {n} smaller than input length {len}")]
    DftTooSmall { n: usize, len: usize },

    #[error("length mismatch: data has {data} samples, window has {window}")]
    LengthMismatch { data: usize, window: usize },

    #[error("dft size {n} is not an integer multiple of sensor count {m}")]
    NotMultipleOfSensors { n: usize, m: usize },

    #[error("sensor count {0} too small (need at least 2)")]
    TooFewSensors(usize),

    #[error("spacing ratio {0} must be positive")]
    BadSpacing(f64),

    #[error("azimuth {0} deg outside [0, 180]")]
    AngleOutOfRange(f64),

    #[error("scenario has no sources")]
    EmptySources,

    #[error("sensor index {m} out of range for {count}-sensor array")]
    SensorOutOfRange { m: usize, count: usize },

    #[error("snapshot has {got} samples but the array has {want} sensors")]
    SnapshotLength { got: usize, want: usize },

    #[error("bin {k} outside visible region |k| <= {max}")]
    BinOutOfRange { k: i64, max: i64 },

    #[error("alpha grid is empty")]
    EmptyAlphaGrid,

    #[error("-3 dB crossings not found around peak at {0} deg")]
    CrossingsNotFound(f64),

    #[error("config: {0}")]
    Config(String),

    #[error("unknown sweep parameter {0:?} (expected sensor-count, snr-db, or dft-size)")]
    UnknownSweepParam(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that indicate bad configuration (file contents,
    /// method names, sweep parameters) rather than a numerical constraint.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::UnknownSweepParam(_) | Error::Io(_)
        )
    }
}
