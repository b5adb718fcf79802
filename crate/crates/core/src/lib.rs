//! Narrowband beamforming for uniform line arrays with spatially variant
//! apodization: per-bin cosine-on-pedestal shading chosen to minimize each
//! output bin's magnitude, so mainlobes keep rectangular-window width while
//! sidelobes drop to shaded-window levels.
//!
//! Layers, bottom up:
//! - [`window`] / [`transform`]: raised-cosine weights, DFT wrappers, and the
//!   exact three-tap frequency-domain form of cosine-family windowing.
//! - [`sva`]: the per-bin optimizer (joint and per-component variants) plus a
//!   brute-force dense-grid reference.
//! - [`array`] / [`beamform`]: snapshot synthesis for point sources, the
//!   bin-angle map, and the pattern routines for each method.
//! - [`metrics`] / [`config`] / [`runner`]: peak analysis, TOML scenario
//!   files, and the CSV/report pipeline behind the `svabeam` binary.

pub mod array;
pub mod beamform;
pub mod config;
pub mod error;
pub mod metrics;
pub mod runner;
pub mod sva;
pub mod transform;
pub mod window;

pub use array::{
    noise_only_snapshot, steering_phase, synthesize_snapshot, ArrayGeometry, Scenario, SourceSpec,
};
pub use beamform::{
    angle_grid, beampattern, conventional_beampattern, shaded_beampattern, sva_beampattern,
    Beampattern, BinAngleMap, Method, DB_FLOOR,
};
pub use config::RunConfig;
pub use error::{Error, Result};
pub use metrics::{
    detects_target, find_peaks, mainlobe_width, pattern_metrics, resolvability, PatternMetrics,
};
pub use sva::{
    multi_apodization_oracle, sva_alpha, sva_jointly, sva_separately, SvaMode, SvaOptions,
    SvaResult, ALPHA_DEGENERATE, DEFAULT_DENOM_EPSILON,
};
pub use transform::{apply_window_freq, dft, idft, ComplexSpectrum};
pub use window::{apply_window_time, raised_cosine_weights, RaisedCosineWindow};
