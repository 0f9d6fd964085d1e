//! Fourier multiplier operators on 1-periodic grid functions: the Hilbert
//! transform H (multiplier -i sgn k), the operator |D| (multiplier 2 pi |k|),
//! and the even-order terms of the expansion of the principal-value kernel
//! 1 / ((x-x')^2 + eps^2 (y(x)-y(x'))^2) in powers of eps^2.
//!
//! The multiplier definitions are primary; kernel quadratures use the exact
//! horizontal periodization of the real-line kernels, so that both routes
//! agree on the torus and can cross-check each other.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::FftPlanner;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Uniform periodic grid with a power-of-two number of nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicGrid {
    n: usize,
}

impl PeriodicGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        Ok(Self { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 / self.n as f64
    }
}

/// Fourier-coefficient representation of a periodic grid function.
///
/// Coefficient slot j carries wavenumber j for j < n/2 and j - n otherwise;
/// real data keeps the coefficients conjugate-symmetric up to roundoff.
#[derive(Debug, Clone)]
pub struct SpectralField {
    n: usize,
    coef: Vec<Complex64>,
}

impl SpectralField {
    /// Forward transform of real samples on the plain uniform grid j/n.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let grid = PeriodicGrid::new(samples.len())?;
        let n = grid.len();
        let mut buf: Vec<Complex64> = samples
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let scale = 1.0 / n as f64;
        for c in buf.iter_mut() {
            *c *= scale;
        }
        Ok(Self { n, coef: buf })
    }

    /// Sample a closed-form function on the grid and transform.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let grid = PeriodicGrid::new(n)?;
        let samples: Vec<f64> = (0..n).map(|j| f(grid.node(j))).collect();
        Self::from_samples(&samples)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.coef.is_empty()
    }

    /// Wavenumber carried by coefficient slot j.
    pub fn wavenumber(&self, j: usize) -> i64 {
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    pub fn coefficient(&self, j: usize) -> Complex64 {
        self.coef[j]
    }

    /// Inverse transform back to real grid samples.
    pub fn to_samples(&self) -> Vec<f64> {
        let mut buf = self.coef.clone();
        FftPlanner::new().plan_fft_inverse(self.n).process(&mut buf);
        buf.iter().map(|c| c.re).collect()
    }

    /// Apply a multiplier m(k) coefficient-wise; the unpaired Nyquist mode
    /// is zeroed (its sign is ambiguous under odd multipliers).
    fn apply_multiplier(&self, m: impl Fn(i64) -> Complex64) -> Self {
        let mut coef = self.coef.clone();
        for (j, c) in coef.iter_mut().enumerate() {
            if j == self.n / 2 {
                *c = Complex64::new(0.0, 0.0);
            } else {
                *c *= m(self.wavenumber(j));
            }
        }
        Self { n: self.n, coef }
    }
}

/// Hilbert transform: multiplier -i sgn(k), mean annihilated.
pub fn hilbert_transform(f: &SpectralField) -> SpectralField {
    f.apply_multiplier(|k| match k.cmp(&0) {
        std::cmp::Ordering::Greater => Complex64::new(0.0, -1.0),
        std::cmp::Ordering::Less => Complex64::new(0.0, 1.0),
        std::cmp::Ordering::Equal => Complex64::new(0.0, 0.0),
    })
}

/// |D|: multiplier 2 pi |k| (derivative convention d/dx e^{2 pi i k x} =
/// 2 pi i k e^{2 pi i k x} on the unit period).
pub fn abs_derivative(f: &SpectralField) -> SpectralField {
    f.apply_multiplier(|k| Complex64::new(TAU * k.abs() as f64, 0.0))
}

/// Spectral derivative: multiplier 2 pi i k.
pub fn derivative(f: &SpectralField) -> SpectralField {
    f.apply_multiplier(|k| Complex64::new(0.0, TAU * k as f64))
}

/// Sharp band-pass: keeps coefficients with lo < |k| <= hi, zeroes the rest
/// (including the Nyquist slot). Used for dyadic frequency blocks.
pub fn band_pass(f: &SpectralField, lo: i64, hi: i64) -> SpectralField {
    f.apply_multiplier(|k| {
        if k.abs() > lo && k.abs() <= hi {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Periodization of the real-line kernel 1/z^{2p}: g_p(z) = sum_m 1/(z-m)^{2p}.
///
/// Closed forms obtained by differentiating pi^2 / sin^2(pi z); expressed in
/// P = csc^2(pi z) and Q = cot^2(pi z) = P - 1.
pub fn image_kernel(p: usize, z: f64) -> f64 {
    let s = (PI * z).sin();
    let c = (PI * z).cos();
    let pp = 1.0 / (s * s);
    let q = (c * c) * pp;
    match p {
        1 => PI.powi(2) * pp,
        2 => PI.powi(4) / 3.0 * pp * (pp + 2.0 * q),
        3 => PI.powi(6) / 15.0 * pp * (2.0 * pp * pp + 11.0 * pp * q + 2.0 * q * q),
        4 => {
            PI.powi(8) / 315.0
                * pp
                * (17.0 * pp.powi(3) + 180.0 * pp * pp * q + 114.0 * pp * q * q + 4.0 * q.powi(3))
        }
        5 => {
            PI.powi(10) / 2835.0
                * pp
                * (62.0 * pp.powi(4)
                    + 1072.0 * pp.powi(3) * q
                    + 1452.0 * pp * pp * q * q
                    + 247.0 * pp * q.powi(3)
                    + 2.0 * q.powi(4))
        }
        _ => panic!("image kernel implemented for p <= 5"),
    }
}

/// n-th coefficient field of the eps^{2n} expansion of the principal-value
/// integral (1/pi) PV int (f(x)-f(x')) / (x-x')^2 *
/// ((y(x)-y(x')) / (x-x'))^{2n} dx', on the torus.
///
/// The n = 0 term is |D| f. Quadrature: punctured trapezoidal sum with the
/// diagonal replaced by the even-part limit of the integrand; the odd
/// (principal-value) part cancels exactly between mirror nodes, so the rule
/// is spectrally accurate for band-limited f and y.
pub fn pv_expansion_term(
    f: &SpectralField,
    y: &SpectralField,
    order: usize,
) -> Result<SpectralField> {
    if order > 4 {
        return Err(Error::ExpansionOrderTooHigh(order));
    }
    if f.len() != y.len() {
        return Err(Error::InvalidArgument(
            "f and y must share a grid".into(),
        ));
    }
    let n = f.len();
    let fs = f.to_samples();
    let ys = y.to_samples();
    let f1 = derivative(f).to_samples();
    let f2 = derivative(&derivative(f)).to_samples();
    let y1 = derivative(y).to_samples();
    let y2 = derivative(&derivative(y)).to_samples();

    // Kernel values depend only on the node separation.
    let kernel: Vec<f64> = (0..n)
        .map(|d| {
            if d == 0 {
                0.0
            } else {
                image_kernel(order + 1, d as f64 / n as f64)
            }
        })
        .collect();

    let mut out = vec![0.0; n];
    let inv_n = 1.0 / n as f64;
    for i in 0..n {
        let mut acc = crate::quad::KahanSum::new();
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = (i + n - j) % n;
            let dy = ys[i] - ys[j];
            let term = (fs[i] - fs[j]) * dy.powi(2 * order as i32) * kernel[d];
            acc.add(term);
        }
        // Even-part limit of the integrand at the diagonal.
        let yp = y1[i];
        let diag = if order == 0 {
            -f2[i] / 2.0
        } else {
            -(f2[i] * yp.powi(2 * order as i32) / 2.0
                + order as f64 * f1[i] * yp.powi(2 * order as i32 - 1) * y2[i])
        };
        acc.add(diag);
        out[i] = acc.value() * inv_n / PI;
    }
    SpectralField::from_samples(&out)
}

/// Full-kernel principal-value integral
/// (1/pi) PV int (f(x)-f(x')) / ((x-x')^2 + eps^2 (y(x)-y(x'))^2) dx'
/// on the torus, via the closed-form periodized kernel
/// sum_m 1/((z-m)^2 + a^2) = (pi/a) sinh(2 pi a) / (cosh(2 pi a) - cos(2 pi z))
/// and the alternate-point trapezoidal rule (spectrally accurate for
/// principal-value poles). Serves as the independent oracle for the
/// expansion terms.
pub fn pv_full_kernel(f: &SpectralField, y: &SpectralField, eps: f64) -> Result<Vec<f64>> {
    if f.len() != y.len() {
        return Err(Error::InvalidArgument(
            "f and y must share a grid".into(),
        ));
    }
    let n = f.len();
    let fs = f.to_samples();
    let ys = y.to_samples();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut acc = crate::quad::KahanSum::new();
        for j in 0..n {
            if (i + n - j).is_multiple_of(2) {
                continue; // alternate-point rule: opposite parity only
            }
            let z = (i as f64 - j as f64) / n as f64;
            let a = eps * (ys[i] - ys[j]).abs();
            let g = periodized_eps_kernel(z, a);
            acc.add((fs[i] - fs[j]) * g);
        }
        out[i] = acc.value() * 2.0 / (n as f64 * PI);
    }
    Ok(out)
}

/// Independent oracle for the order-1 expansion coefficient from the full
/// kernel: the quotient (|D|f - full(e)) / e^2 equals the order-1 term up
/// to O(e^2), and that truncation bias is removed by Richardson
/// extrapolation in e^2 over evaluations at eps, eps/2 and eps/4. The
/// |D| route is the multiplier, not the punctured quadrature, so the
/// oracle shares no code path with `pv_expansion_term`.
pub fn pv_order_one_oracle(f: &SpectralField, y: &SpectralField, eps: f64) -> Result<Vec<f64>> {
    let t0 = abs_derivative(f).to_samples();
    let quotient = |e: f64| -> Result<Vec<f64>> {
        let full = pv_full_kernel(f, y, e)?;
        Ok(t0
            .iter()
            .zip(full)
            .map(|(a, b)| (a - b) / (e * e))
            .collect())
    };
    let d0 = quotient(eps)?;
    let d1 = quotient(eps / 2.0)?;
    let d2 = quotient(eps / 4.0)?;
    Ok((0..f.len())
        .map(|i| {
            let r0 = (4.0 * d1[i] - d0[i]) / 3.0;
            let r1 = (4.0 * d2[i] - d1[i]) / 3.0;
            (16.0 * r1 - r0) / 15.0
        })
        .collect())
}

fn periodized_eps_kernel(z: f64, a: f64) -> f64 {
    if a < 1e-9 {
        image_kernel(1, z)
    } else {
        let ta = TAU * a;
        PI / a * ta.sinh() / (ta.cosh() - (TAU * z).cos())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn band_limited(n: usize, kmax: i32, seed: u64) -> SpectralField {
        let mut rng = SplitMix64::new(seed);
        let coefs: Vec<(f64, f64, f64)> = (1..=kmax)
            .map(|_| (rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(0.0, 1.0)))
            .collect();
        SpectralField::from_fn(n, move |x| {
            coefs
                .iter()
                .enumerate()
                .map(|(i, (a, b, ph))| {
                    let k = (i + 1) as f64;
                    a * (TAU * k * x + ph).cos() + b * (TAU * k * x).sin()
                })
                .sum()
        })
        .unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(PeriodicGrid::new(8).is_ok());
        assert!(PeriodicGrid::new(7).is_err());
        assert!(PeriodicGrid::new(4).is_err());
        assert!(PeriodicGrid::new(1024).is_ok());
    }

    #[test]
    fn round_trip_is_tight() {
        let mut rng = SplitMix64::new(10);
        let samples: Vec<f64> = (0..256).map(|_| rng.range(-1.0, 1.0)).collect();
        let f = SpectralField::from_samples(&samples).unwrap();
        let back = f.to_samples();
        let scale = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (a, b) in samples.iter().zip(&back) {
            assert!((a - b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn hilbert_of_constant_vanishes() {
        let f = SpectralField::from_fn(64, |_| 3.7).unwrap();
        let h = hilbert_transform(&f).to_samples();
        for v in h {
            assert!(v.abs() < 1e-13);
        }
    }

    #[test]
    fn hilbert_maps_cos_to_sin() {
        let f = SpectralField::from_fn(64, |x| (TAU * x).cos()).unwrap();
        let h = hilbert_transform(&f).to_samples();
        for (j, v) in h.iter().enumerate() {
            let x = j as f64 / 64.0;
            assert!((v - (TAU * x).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn hilbert_squares_to_minus_identity_off_mean() {
        let f = band_limited(128, 10, 11);
        let hh = hilbert_transform(&hilbert_transform(&f)).to_samples();
        let fs = f.to_samples();
        let mean: f64 = fs.iter().sum::<f64>() / fs.len() as f64;
        for (a, b) in hh.iter().zip(&fs) {
            assert!((a + (b - mean)).abs() < 1e-12);
        }
    }

    #[test]
    fn abs_derivative_eigenvalue_on_sin() {
        let f = SpectralField::from_fn(64, |x| (TAU * x).sin()).unwrap();
        let d = abs_derivative(&f).to_samples();
        for (j, v) in d.iter().enumerate() {
            let x = j as f64 / 64.0;
            assert!((v - TAU * (TAU * x).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn abs_derivative_is_derivative_of_hilbert() {
        let f = band_limited(256, 20, 12);
        let a = abs_derivative(&f).to_samples();
        let b = derivative(&hilbert_transform(&f)).to_samples();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn eigenfunction_relations_per_mode() {
        let n = 64;
        for k in 1..8i32 {
            let c = SpectralField::from_fn(n, move |x| (TAU * k as f64 * x).cos()).unwrap();
            let s = SpectralField::from_fn(n, move |x| (TAU * k as f64 * x).sin()).unwrap();
            // H cos(kx) = sin(kx), H sin(kx) = -cos(kx).
            let hc = hilbert_transform(&c).to_samples();
            let hs = hilbert_transform(&s).to_samples();
            let dc = abs_derivative(&c).to_samples();
            for j in 0..n {
                let x = j as f64 / n as f64;
                let kk = TAU * k as f64;
                assert!((hc[j] - (kk * x).sin()).abs() < 1e-12);
                assert!((hs[j] + (kk * x).cos()).abs() < 1e-12);
                assert!((dc[j] - kk * (kk * x).cos()).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn hilbert_is_skew_adjoint_and_abs_derivative_nonnegative() {
        let f = band_limited(128, 15, 13);
        let g = band_limited(128, 15, 14);
        let fs = f.to_samples();
        let gs = g.to_samples();
        let hf = hilbert_transform(&f).to_samples();
        let hg = hilbert_transform(&g).to_samples();
        let dot = |a: &[f64], b: &[f64]| -> f64 {
            a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / a.len() as f64
        };
        assert!((dot(&hf, &gs) + dot(&fs, &hg)).abs() < 1e-12);
        let df = abs_derivative(&f).to_samples();
        assert!(dot(&df, &fs) >= -1e-13);
    }

    #[test]
    fn hilbert_and_abs_derivative_commute() {
        let f = band_limited(128, 12, 15);
        let a = hilbert_transform(&abs_derivative(&f)).to_samples();
        let b = abs_derivative(&hilbert_transform(&f)).to_samples();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12 * (1.0 + x.abs()));
        }
    }

    #[test]
    fn nyquist_mode_is_annihilated() {
        let n = 16usize;
        // Pure Nyquist oscillation (-1)^j.
        let samples: Vec<f64> = (0..n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let f = SpectralField::from_samples(&samples).unwrap();
        for v in hilbert_transform(&f).to_samples() {
            assert!(v.abs() < 1e-13);
        }
        for v in abs_derivative(&f).to_samples() {
            assert!(v.abs() < 1e-13);
        }
    }

    /// The closed-form periodized kernels against brute-force image sums.
    #[test]
    fn image_kernels_match_truncated_sums() {
        for p in 1..=5usize {
            for &z in &[0.1, 0.23, 0.5, 0.77] {
                let exact = image_kernel(p, z);
                let m_max = if p == 1 { 200_000i64 } else { 2_000 };
                let mut s = 0.0;
                for m in -m_max..=m_max {
                    s += (z - m as f64).powi(-(2 * p as i32));
                }
                if p == 1 {
                    // Integral tail correction for the slowly converging case.
                    s += 2.0 / m_max as f64;
                }
                let rel = ((s - exact) / exact).abs();
                assert!(rel < 1e-6, "p={p} z={z}: rel err {rel}");
            }
        }
    }

    #[test]
    fn expansion_order_zero_equals_abs_derivative() {
        let f = band_limited(256, 6, 16);
        let y = band_limited(256, 4, 17);
        let t0 = pv_expansion_term(&f, &y, 0).unwrap().to_samples();
        let d = abs_derivative(&f).to_samples();
        let scale = d.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in t0.iter().zip(&d) {
            assert!(
                (a - b).abs() < 1e-8 * scale,
                "order-0 term vs |D|: {a} vs {b}"
            );
        }
    }

    #[test]
    fn constant_y_kills_higher_orders() {
        let f = band_limited(128, 5, 18);
        let y = SpectralField::from_fn(128, |_| 0.42).unwrap();
        for order in 1..=4 {
            let t = pv_expansion_term(&f, &y, order).unwrap().to_samples();
            for v in t {
                assert!(v.abs() < 1e-10, "order {order} should vanish, got {v}");
            }
        }
    }

    #[test]
    fn order_budget_is_enforced() {
        let f = band_limited(64, 3, 19);
        assert!(matches!(
            pv_expansion_term(&f, &f, 5),
            Err(Error::ExpansionOrderTooHigh(5))
        ));
    }

    /// Partial sums of the expansion must converge to the full kernel:
    /// full(eps) = T0 - eps^2 T1 + eps^4 T2 - eps^6 T3 + O(eps^8). This
    /// exercises every implemented order (and the image kernels up to
    /// 1/z^10) against the independent closed-form epsilon kernel.
    #[test]
    fn expansion_partial_sums_converge_to_the_full_kernel() {
        let n = 128;
        let f = SpectralField::from_fn(n, |x| (TAU * x).sin() + 0.4 * (2.0 * TAU * x).cos())
            .unwrap();
        let y = SpectralField::from_fn(n, |x| 0.5 * (TAU * x).sin()).unwrap();
        let eps = 0.05;
        let full = pv_full_kernel(&f, &y, eps).unwrap();
        let terms: Vec<Vec<f64>> = (0..=3)
            .map(|ord| pv_expansion_term(&f, &y, ord).unwrap().to_samples())
            .collect();
        let scale = full.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let mut prev_err = f64::INFINITY;
        for order in 0..=3usize {
            let mut worst = 0.0f64;
            for i in 0..n {
                let mut partial = 0.0;
                for (m, term) in terms.iter().take(order + 1).enumerate() {
                    partial += (-1.0f64).powi(m as i32) * eps.powi(2 * m as i32) * term[i];
                }
                worst = worst.max((partial - full[i]).abs());
            }
            assert!(
                worst < prev_err || worst < 1e-10 * scale,
                "order {order}: partial-sum error {worst} did not shrink (prev {prev_err})"
            );
            prev_err = worst;
        }
        // Remainder after order 3 is ~ (eps max|y'|)^8 ~ 4e-6 relative for
        // these amplitudes; demand that with margin.
        assert!(
            prev_err <= 1e-5 * scale,
            "order-3 partial sum error {prev_err} vs scale {scale}"
        );
    }

    /// Order-1 term against the full-kernel oracle. The raw quotient
    /// (T0 - full(eps)) / eps^2 equals T1 - eps^2 T2 + eps^4 T3 - ..., and
    /// for unit-amplitude sines T2 is of order (2 pi)^5, so the oracle is
    /// Richardson-extrapolated in eps^2 (evaluations at eps, eps/2, eps/4)
    /// to remove its own truncation bias before the 1e-4 comparison.
    #[test]
    fn order_one_matches_full_kernel_oracle() {
        let n = 256;
        let f = SpectralField::from_fn(n, |x| (TAU * x).sin()).unwrap();
        let y = SpectralField::from_fn(n, |x| (TAU * x).sin()).unwrap();
        let eps = 1e-2;
        let t1 = pv_expansion_term(&f, &y, 1).unwrap().to_samples();
        let oracle = pv_order_one_oracle(&f, &y, eps).unwrap();
        let mut max_err = 0.0f64;
        for i in 0..n {
            max_err = max_err.max((t1[i] - oracle[i]).abs());
        }
        assert!(max_err < 1e-4, "order-1 vs oracle max err {max_err}");
    }
}
