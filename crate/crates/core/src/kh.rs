//! Linearized Kelvin-Helmholtz stability about the flat stationary sheet.
//!
//! In 2d the linearization closes into a two-component mode system per
//! wavenumber whose growth rate scales linearly in |k| (Hadamard
//! instability). Two conventions ship because the first-order system and
//! its second-order reduction imply different powers of the background
//! vorticity density in the rate, and this module reports rather than
//! adjudicates. In 3d the linearization about the flat sheet with in-plane
//! background vorticity is a 4x4 complex matrix per Fourier direction whose
//! spectrum {0, 0, +-|k ^ w|/2} loses ellipticity along k parallel to w.

use crate::error::{Error, Result};
use crate::linalg::{complex_eigenvalues, expm2};
use crate::quad::linear_fit;
use crate::rng::SplitMix64;
use num_complex::Complex64;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Which 2d linearization to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeConvention {
    /// First-order pair: dt y_x = Omega0 |D| w, dt w = |D| y_x.
    /// Growth rate sqrt(Omega0) |2 pi k|.
    FirstOrder,
    /// Second-order reduction dtt v = Omega0^2 (2 pi k)^2 v in companion
    /// form. Growth rate Omega0 |2 pi k|.
    SecondOrder,
}

/// One 2d Fourier mode of the linearized sheet: interface slope and
/// vorticity-density perturbation.
#[derive(Debug, Clone)]
pub struct Mode2D {
    pub k: i32,
    pub omega0: f64,
    pub state: [Complex64; 2],
}

/// The 2x2 real mode matrix of the chosen convention.
pub fn mode2d_matrix(k: i32, omega0: f64, conv: ModeConvention) -> Result<[[f64; 2]; 2]> {
    if k == 0 {
        return Err(Error::ZeroMode);
    }
    let kk = TAU * k.abs() as f64;
    Ok(match conv {
        ModeConvention::FirstOrder => [[0.0, omega0 * kk], [kk, 0.0]],
        ModeConvention::SecondOrder => [[0.0, 1.0], [omega0 * omega0 * kk * kk, 0.0]],
    })
}

/// Largest real part over the mode-matrix spectrum, computed numerically.
pub fn growth_rate(k: i32, omega0: f64, conv: ModeConvention) -> Result<f64> {
    let m = mode2d_matrix(k, omega0, conv)?;
    let a = [
        Complex64::new(m[0][0], 0.0),
        Complex64::new(m[0][1], 0.0),
        Complex64::new(m[1][0], 0.0),
        Complex64::new(m[1][1], 0.0),
    ];
    Ok(complex_eigenvalues(&a, 2)
        .iter()
        .map(|l| l.re)
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Exact evolution of a mode by the closed-form matrix exponential.
pub fn evolve_mode2d(mode: &Mode2D, conv: ModeConvention, t: f64) -> Result<[Complex64; 2]> {
    let m = mode2d_matrix(mode.k, mode.omega0, conv)?;
    let e = expm2(m, t);
    Ok([
        mode.state[0] * e[0][0] + mode.state[1] * e[0][1],
        mode.state[0] * e[1][0] + mode.state[1] * e[1][1],
    ])
}

/// The 4x4 complex linearization at one 2d Fourier direction
/// k = |k| (cos theta, sin theta), acting on (x3_hat, w1_hat, w2_hat,
/// w3_hat), for an in-plane background vorticity density.
#[derive(Debug, Clone)]
pub struct StabilityMatrix3D {
    pub kmag: f64,
    pub theta: f64,
    pub omega0: [f64; 3],
    pub entries: [[Complex64; 4]; 4],
}

/// Assemble the matrix entry by entry.
pub fn assemble_3d_matrix(kmag: f64, theta: f64, omega0: [f64; 3]) -> Result<StabilityMatrix3D> {
    if omega0[2] != 0.0 {
        return Err(Error::InvalidBackground(omega0[2]));
    }
    if kmag <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "wavenumber magnitude must be positive, got {kmag}"
        )));
    }
    let (s, c) = theta.sin_cos();
    let w2 = omega0[0] * omega0[0] + omega0[1] * omega0[1];
    let kw = kmag * (omega0[0] * c + omega0[1] * s); // k . w
    let half_i = Complex64::new(0.0, 0.5);
    let z = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let entries = [
        [z, half_i * s, -half_i * c, z],
        [-half_i * kmag * kmag * w2 * s, z, z, re(0.5 * kw * s)],
        [half_i * kmag * kmag * w2 * c, z, z, re(-0.5 * kw * c)],
        [z, re(-0.5 * kw * s), re(0.5 * kw * c), z],
    ];
    Ok(StabilityMatrix3D {
        kmag,
        theta,
        omega0,
        entries,
    })
}

impl StabilityMatrix3D {
    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// In-plane cross product k ^ w at this direction.
    pub fn k_cross_omega(&self) -> f64 {
        let (s, c) = self.theta.sin_cos();
        self.kmag * (c * self.omega0[1] - s * self.omega0[0])
    }

    fn flat(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(16);
        for row in &self.entries {
            v.extend_from_slice(row);
        }
        v
    }
}

/// Computed spectrum next to the predicted multiset {0, 0, +-|k ^ w|/2},
/// with their Hausdorff distance.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub eigenvalues: [Complex64; 4],
    pub predicted: [Complex64; 4],
    pub max_deviation: f64,
}

fn sort_spectrum(v: &mut [Complex64]) {
    v.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// Symmetric Hausdorff distance between two (sorted) multisets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Numerically computed eigenvalues of the assembled matrix against the
/// predicted multiset. Deviations are reported, never raised: a persistent
/// gap would be a finding about the printed matrix, not a runtime fault.
pub fn spectrum_3d(m: &StabilityMatrix3D) -> SpectrumReport {
    let mut eig = complex_eigenvalues(&m.flat(), 4);
    sort_spectrum(&mut eig);
    let half = 0.5 * m.k_cross_omega().abs();
    let mut predicted = vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(-half, 0.0),
        Complex64::new(half, 0.0),
    ];
    sort_spectrum(&mut predicted);
    let max_deviation = hausdorff(&eig, &predicted);
    SpectrumReport {
        eigenvalues: [eig[0], eig[1], eig[2], eig[3]],
        predicted: [predicted[0], predicted[1], predicted[2], predicted[3]],
        max_deviation,
    }
}

/// Parameters drawn for one random spectrum sample.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumSample {
    pub kmag: f64,
    pub theta: f64,
    pub omega0: [f64; 3],
}

/// Deterministic-under-seed random sweep over (|k|, theta, w0).
pub fn spectrum_samples(count: usize, seed: u64) -> Vec<(SpectrumSample, SpectrumReport)> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            let sample = SpectrumSample {
                kmag: rng.range(0.1, 10.0),
                theta: rng.range(0.0, TAU),
                omega0: [rng.range(-2.0, 2.0), rng.range(-2.0, 2.0), 0.0],
            };
            let m = assemble_3d_matrix(sample.kmag, sample.theta, sample.omega0)
                .expect("sample parameters are valid");
            (sample, spectrum_3d(&m))
        })
        .collect()
}

/// 2d ellipticity data: growth-rate-to-wavenumber ratios over a k range.
#[derive(Debug, Clone)]
pub struct Ellipticity2D {
    pub ratios: Vec<(i32, f64)>,
    pub min_ratio: f64,
    /// Log-log slope of sigma(k) against |k|; 1 means growth unbounded in
    /// k, the Hadamard-instability signature.
    pub loglog_slope: f64,
}

pub fn ellipticity_scan_2d(omega0: f64, k_max: i32, conv: ModeConvention) -> Result<Ellipticity2D> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be >= 1".into()));
    }
    let mut ratios = Vec::new();
    let mut min_ratio = f64::INFINITY;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 1..=k_max {
        for kk in [k, -k] {
            let sigma = growth_rate(kk, omega0, conv)?;
            let ratio = sigma / (TAU * kk.abs() as f64);
            ratios.push((kk, ratio));
            min_ratio = min_ratio.min(ratio);
        }
        let sigma = growth_rate(k, omega0, conv)?;
        if sigma > 0.0 {
            xs.push((k as f64).ln());
            ys.push(sigma.ln());
        }
    }
    let loglog_slope = if xs.len() >= 2 {
        linear_fit(&xs, &ys).0
    } else {
        f64::NAN
    };
    Ok(Ellipticity2D {
        ratios,
        min_ratio,
        loglog_slope,
    })
}

/// 3d ellipticity data: the direction sweep of max |eigenvalue| / |k|.
#[derive(Debug, Clone)]
pub struct Ellipticity3D {
    /// (theta, computed ratio, predicted ratio) per sampled direction.
    pub directions: Vec<(f64, f64, f64)>,
    pub min_ratio: f64,
    pub min_theta: f64,
    /// Predicted minimum of |k ^ w| / (2 |k|) over the sampled directions;
    /// exactly zero when a sample aligns k with the background vorticity.
    pub predicted_min: f64,
}

pub fn ellipticity_scan_3d(
    omega0: [f64; 3],
    kmag: f64,
    samples: usize,
) -> Result<Ellipticity3D> {
    if samples < 16 {
        return Err(Error::InvalidArgument(
            "direction scan needs at least 16 samples".into(),
        ));
    }
    let mut directions = Vec::with_capacity(samples);
    let mut min_ratio = f64::INFINITY;
    let mut min_theta = 0.0;
    let mut predicted_min = f64::INFINITY;
    for i in 0..samples {
        let theta = TAU * i as f64 / samples as f64;
        let m = assemble_3d_matrix(kmag, theta, omega0)?;
        let rep = spectrum_3d(&m);
        let computed = rep
            .eigenvalues
            .iter()
            .map(|l| l.norm())
            .fold(0.0f64, f64::max)
            / kmag;
        let predicted = 0.5 * m.k_cross_omega().abs() / kmag;
        directions.push((theta, computed, predicted));
        predicted_min = predicted_min.min(predicted);
        if computed < min_ratio {
            min_ratio = computed;
            min_theta = theta;
        }
    }
    Ok(Ellipticity3D {
        directions,
        min_ratio,
        min_theta,
        predicted_min,
    })
}
