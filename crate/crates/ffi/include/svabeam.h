#ifndef SVABEAM_H
#define SVABEAM_H

/* Generated by cbindgen from the svabeam-ffi crate; do not edit by hand. */

#include <stdint.h>
#include <stddef.h>
#include <stdbool.h>

/**
 * Beampattern methods exposed across the ABI. The parameterized
 * raised-cosine shading has its own entry point taking alpha explicitly.
 */
typedef enum {
  SVABEAM_METHOD_RECT = 0,
  SVABEAM_METHOD_HANNING = 1,
  SVABEAM_METHOD_SVA_JOINTLY = 2,
  SVABEAM_METHOD_SVA_SEPARATELY = 3,
} svabeam_method;

/**
 * Status code returned by every fallible call. `OK` is zero; config-shaped
 * failures and numerical-constraint failures use the same split as the CLI
 * exit codes (2 and 3).
 */
typedef enum {
  SVABEAM_STATUS_OK = 0,
  SVABEAM_STATUS_NULL_ARGUMENT = 1,
  SVABEAM_STATUS_INVALID_CONFIG = 2,
  SVABEAM_STATUS_NUMERICAL_CONSTRAINT = 3,
  SVABEAM_STATUS_BUFFER_TOO_SMALL = 4,
  SVABEAM_STATUS_NO_ALPHA_TRACE = 5,
  SVABEAM_STATUS_INTERNAL = 6,
} svabeam_status;

/**
 * A computed beampattern: angle grid, normalized levels, optional per-angle
 * coefficient trace. Opaque.
 */
typedef struct svabeam_pattern svabeam_pattern;

/**
 * Array geometry, sources, and noise settings. Opaque.
 */
typedef struct svabeam_scenario svabeam_scenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy the most recent error message for this thread into `buf` (always
 * NUL-terminated, truncated if needed) and return the full length the
 * message requires including the terminator. `buf` may be null (with
 * `cap` 0) to query the required size. Returns 0 when no error is stored.
 */
size_t svabeam_last_error_message(char *buf, size_t cap);

/**
 * Create a scenario for a uniform line array. Returns null (with the error
 * retrievable via [`svabeam_last_error_message`]) when the geometry is
 * rejected. Free with [`svabeam_scenario_free`].
 */
svabeam_scenario *svabeam_scenario_new(size_t sensor_count, double spacing_ratio);

/**
 * Load the scenario section of a TOML config file. Returns null on any
 * parse or validation failure. Free with [`svabeam_scenario_free`].
 */
svabeam_scenario *svabeam_scenario_load_config(const char *path);

/**
 * Append a point source (azimuth in degrees, level in dB relative to the
 * strongest source, carrier phase in radians). Validated when a pattern is
 * computed.
 */
svabeam_status svabeam_scenario_add_source(svabeam_scenario *scenario,
                                           double azimuth_deg,
                                           double power_db,
                                           double phase_rad);

/**
 * Set sensor-noise level (SNR in dB relative to the strongest source;
 * +infinity disables noise) and the generator seed.
 */
svabeam_status svabeam_scenario_set_noise(svabeam_scenario *scenario, double snr_db, uint64_t seed);

void svabeam_scenario_free(svabeam_scenario *scenario);

/**
 * Compute a beampattern over the closed [0, 180] degree grid with the given
 * step. On success `*out` owns the pattern; free it with
 * [`svabeam_pattern_free`].
 */
svabeam_status svabeam_compute(const svabeam_scenario *scenario,
                               svabeam_method method,
                               size_t dft_size,
                               double angle_step_deg,
                               svabeam_pattern **out);

/**
 * Compute a fixed raised-cosine-shaded pattern with pedestal parameter
 * `alpha` in [0, 1/2].
 */
svabeam_status svabeam_compute_shaded(const svabeam_scenario *scenario,
                                      double alpha,
                                      size_t dft_size,
                                      double angle_step_deg,
                                      svabeam_pattern **out);

/**
 * Number of grid angles in the pattern (buffer size for the accessors).
 */
size_t svabeam_pattern_len(const svabeam_pattern *pattern);

/**
 * Copy the angle grid (degrees) into `buf` (capacity `cap` doubles).
 */
svabeam_status svabeam_pattern_angles(const svabeam_pattern *pattern, double *buf, size_t cap);

/**
 * Copy the normalized levels (dB, max = 0) into `buf`.
 */
svabeam_status svabeam_pattern_levels(const svabeam_pattern *pattern, double *buf, size_t cap);

/**
 * Whether the pattern carries a per-angle coefficient trace (true for the
 * per-bin-optimized methods).
 */
bool svabeam_pattern_has_alphas(const svabeam_pattern *pattern);

/**
 * Copy the per-angle coefficient trace into `buf`; fails with
 * `NO_ALPHA_TRACE` for methods that do not produce one.
 */
svabeam_status svabeam_pattern_alphas(const svabeam_pattern *pattern, double *buf, size_t cap);

/**
 * Unnormalized peak level in dB (20 log10 of the largest response
 * magnitude); comparable across methods on the same snapshot.
 */
svabeam_status svabeam_pattern_peak_raw_db(const svabeam_pattern *pattern, double *out);

void svabeam_pattern_free(svabeam_pattern *pattern);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SVABEAM_H */
