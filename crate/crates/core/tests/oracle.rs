//! Direct-summation reference checks. The oracle below evaluates every DFT
//! sum literally, term by term, so these tests hold the fast transform path
//! and the beampattern pipeline to an implementation-independent standard.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use svabeam::transform::{apply_window_freq, dft, idft, ComplexSpectrum};
use svabeam::window::{apply_window_time, RaisedCosineWindow};
use svabeam::{conventional_beampattern, ArrayGeometry};

/// Transform agreement: direct sum and fast path round the same products in
/// different orders, so equality holds to a few eps times the term count.
const TRANSFORM_RTOL: f64 = 1e-12;
/// Identities that stack two transforms or a transform and a windowing pass.
const IDENTITY_RTOL: f64 = 1e-10;

/// O(N^2) forward DFT with zero padding: X[k] = sum_m x[m] e^{-j2pi km/N}.
fn dft_oracle(x: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, &xm) in x.iter().enumerate() {
            let theta = -2.0 * std::f64::consts::PI * (k * m) as f64 / n as f64;
            acc += xm * Complex64::from_polar(1.0, theta);
        }
        out.push(acc);
    }
    out
}

fn random_signal(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0))
        .collect()
}

fn max_mag(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[test]
fn fast_dft_matches_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    for &(m, n) in &[(4usize, 8usize), (7, 7), (16, 64), (12, 96), (64, 1024)] {
        let x = random_signal(&mut rng, m);
        let fast = dft(&x, n).unwrap();
        let slow = dft_oracle(&x, n);
        let scale = max_mag(&slow).max(1.0);
        for k in 0..n {
            let err = (fast.bins()[k] - slow[k]).norm();
            assert!(err <= TRANSFORM_RTOL * scale, "m={m} n={n} k={k} err={err}");
        }
    }
}

#[test]
fn on_grid_exponential_concentrates_in_one_bin() {
    // x[m] = e^{j 2pi 2m/8}, 4 samples padded to 8: bin 2 sums coherently
    let n = 8;
    let x: Vec<Complex64> = (0..4)
        .map(|m| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 2.0 * m as f64 / n as f64))
        .collect();
    let spec = dft(&x, n).unwrap();
    assert!((spec.bins()[2] - Complex64::new(4.0, 0.0)).norm() < 1e-12);
    assert!((spec.bins()[2].norm() - 4.0).abs() < 1e-12);
}

#[test]
fn dft_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(702);
    let (m, n) = (10, 40);
    let x = random_signal(&mut rng, m);
    let y = random_signal(&mut rng, m);
    let (a, b) = (Complex64::new(1.3, -0.4), Complex64::new(-0.7, 2.1));
    let combo: Vec<Complex64> = x.iter().zip(&y).map(|(&xi, &yi)| a * xi + b * yi).collect();
    let lhs = dft(&combo, n).unwrap();
    let fx = dft(&x, n).unwrap();
    let fy = dft(&y, n).unwrap();
    let scale = max_mag(lhs.bins()).max(1.0);
    for k in 0..n {
        let rhs = a * fx.bins()[k] + b * fy.bins()[k];
        assert!((lhs.bins()[k] - rhs).norm() <= TRANSFORM_RTOL * scale);
    }
}

#[test]
fn energy_is_preserved_up_to_padding_factor() {
    let mut rng = ChaCha8Rng::seed_from_u64(703);
    let (m, n) = (24, 96);
    let x = random_signal(&mut rng, m);
    let spec = dft(&x, n).unwrap();
    let time_energy: f64 = x.iter().map(|c| c.norm_sqr()).sum();
    let freq_energy: f64 = spec.bins().iter().map(|c| c.norm_sqr()).sum::<f64>() / n as f64;
    assert!((time_energy - freq_energy).abs() <= IDENTITY_RTOL * time_energy);
}

#[test]
fn inverse_recovers_padded_signal() {
    let mut rng = ChaCha8Rng::seed_from_u64(704);
    let (m, n) = (20, 80);
    let x = random_signal(&mut rng, m);
    let back = idft(&dft(&x, n).unwrap());
    assert_eq!(back.len(), n);
    for i in 0..n {
        let want = if i < m { x[i] } else { Complex64::new(0.0, 0.0) };
        assert!((back[i] - want).norm() <= TRANSFORM_RTOL);
    }
}

#[test]
fn time_and_frequency_windowing_agree() {
    // multiplying the M samples by 1 - 2a cos(2pi m/M) must equal the
    // three-tap combination X[k] - a(X[k-K] + X[k+K]) on the padded spectrum
    let mut rng = ChaCha8Rng::seed_from_u64(705);
    for &alpha in &[0.1, 0.25, 0.5] {
        for &(m, n) in &[(8usize, 64usize), (16, 64), (12, 48)] {
            let x = random_signal(&mut rng, m);
            let w = RaisedCosineWindow::new(alpha, m).unwrap();
            let shaded = apply_window_time(&x, &w).unwrap();
            let via_time = dft(&shaded, n).unwrap();
            let padded = dft(&x, n).unwrap();
            let scale = max_mag(via_time.bins()).max(1.0);
            for k in 0..n {
                let tap = apply_window_freq(&padded, k, n / m, alpha);
                let err = (via_time.bins()[k] - tap).norm();
                assert!(err <= IDENTITY_RTOL * scale, "alpha={alpha} m={m} n={n} k={k}");
            }
        }
    }
}

#[test]
fn beampattern_matches_per_angle_direct_sum() {
    // whole pipeline vs a from-scratch evaluation: nearest bin for the
    // angle, then the literal steering sum at that bin's frequency
    let mut rng = ChaCha8Rng::seed_from_u64(706);
    let m = 64;
    let n = 1024;
    let geom = ArrayGeometry::new(m, 0.5).unwrap();
    let x = random_signal(&mut rng, m);
    let angles = [
        0.0, 13.7, 42.1, 60.0, 75.0, 88.3, 90.0, 101.5, 121.9, 152.4, 177.2, 180.0,
    ];
    let p = conventional_beampattern(&x, &geom, &angles, n).unwrap();
    for (i, &angle) in angles.iter().enumerate() {
        let k = (0.5 * n as f64 * angle.to_radians().cos()).round();
        let mut acc = Complex64::new(0.0, 0.0);
        for (mm, &xm) in x.iter().enumerate() {
            let theta = -2.0 * std::f64::consts::PI * k * mm as f64 / n as f64;
            acc += xm * Complex64::from_polar(1.0, theta);
        }
        let err = (p.response[i] - acc).norm();
        assert!(err <= TRANSFORM_RTOL * m as f64, "angle={angle} err={err}");
    }
}

#[test]
fn spectrum_indexing_is_circular() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let x = random_signal(&mut rng, 6);
    let spec: ComplexSpectrum = dft(&x, 12).unwrap();
    assert_eq!(spec.bin_circular(-1), spec.bins()[11]);
    assert_eq!(spec.bin_circular(12), spec.bins()[0]);
    assert_eq!(spec.bin_circular(-13), spec.bins()[11]);
}
