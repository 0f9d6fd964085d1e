//! Dense linear algebra for small matrices: a complex eigensolver
//! (balancing, Householder Hessenberg reduction, shifted QR) and a
//! closed-form 2x2 matrix exponential.
//!
//! The eigensolver is deliberately generic: it never looks at the
//! structure of the stability matrices it is applied to, so spectra
//! computed here are an independent check of any predicted eigenvalue
//! formula.

use num_complex::Complex64;

/// Eigenvalues of a dense complex n x n matrix, row-major storage.
///
/// Intended for small n (the crate uses n <= 4); no eigenvectors.
pub fn complex_eigenvalues(a: &[Complex64], n: usize) -> Vec<Complex64> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![a[0]];
    }
    let mut h = a.to_vec();
    balance(&mut h, n);
    hessenberg(&mut h, n);
    qr_eigenvalues(&mut h, n)
}

#[inline]
fn at(m: &[Complex64], n: usize, i: usize, j: usize) -> Complex64 {
    m[i * n + j]
}

#[inline]
fn at_mut(m: &mut [Complex64], n: usize, i: usize, j: usize) -> &mut Complex64 {
    &mut m[i * n + j]
}

/// Radix-2 diagonal balancing (similarity transform, exact in floating point).
fn balance(m: &mut [Complex64], n: usize) {
    let radix = 2.0f64;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += at(m, n, j, i).norm();
                    r += at(m, n, i, j).norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut c2 = c;
            let mut r2 = r;
            while c2 < r2 / radix {
                c2 *= radix;
                r2 /= radix;
                f *= radix;
            }
            while c2 >= r2 * radix {
                c2 /= radix;
                r2 *= radix;
                f /= radix;
            }
            if (c2 + r2) < 0.95 * s && f != 1.0 {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    *at_mut(m, n, i, j) *= inv;
                }
                for j in 0..n {
                    *at_mut(m, n, j, i) *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// In-place reduction to upper Hessenberg form by complex Householder
/// reflections.
fn hessenberg(m: &mut [Complex64], n: usize) {
    for k in 0..n.saturating_sub(2) {
        // Column k below the subdiagonal.
        let mut norm2 = 0.0;
        for i in k + 1..n {
            norm2 += at(m, n, i, k).norm_sqr();
        }
        if norm2 == 0.0 {
            continue;
        }
        let x0 = at(m, n, k + 1, k);
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * norm2.sqrt()
        } else {
            Complex64::new(-norm2.sqrt(), 0.0)
        };
        // v = x - alpha e1, normalized.
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| at(m, n, i, k)).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // Left: rows k+1..n of all columns, H <- (I - 2 v v*) H.
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, i) in (k + 1..n).enumerate() {
                dot += v[idx].conj() * at(m, n, i, j);
            }
            let dot = dot * 2.0;
            for (idx, i) in (k + 1..n).enumerate() {
                *at_mut(m, n, i, j) -= v[idx] * dot;
            }
        }
        // Right: columns k+1..n of all rows, H <- H (I - 2 v v*).
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for (idx, j) in (k + 1..n).enumerate() {
                dot += at(m, n, i, j) * v[idx];
            }
            let dot = dot * 2.0;
            for (idx, j) in (k + 1..n).enumerate() {
                *at_mut(m, n, i, j) -= dot * v[idx].conj();
            }
        }
    }
}

/// Shifted QR iteration on an upper Hessenberg matrix.
fn qr_eigenvalues(h: &mut [Complex64], n: usize) -> Vec<Complex64> {
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter_budget = 0usize;
    loop {
        // Deflate trailing 1x1 / 2x2 blocks as subdiagonals vanish.
        loop {
            let lo = active_block_start(h, n, hi);
            if lo == hi {
                eigs.push(at(h, n, hi, hi));
                if hi == 0 {
                    return finish(eigs);
                }
                hi -= 1;
            } else if lo + 1 == hi {
                let (l1, l2) = eig2(
                    at(h, n, lo, lo),
                    at(h, n, lo, hi),
                    at(h, n, hi, lo),
                    at(h, n, hi, hi),
                );
                eigs.push(l1);
                eigs.push(l2);
                if lo == 0 {
                    return finish(eigs);
                }
                hi = lo - 1;
            } else {
                break;
            }
        }
        let lo = active_block_start(h, n, hi);
        // Wilkinson shift: eigenvalue of the trailing 2x2 closest to h[hi][hi].
        let (l1, l2) = eig2(
            at(h, n, hi - 1, hi - 1),
            at(h, n, hi - 1, hi),
            at(h, n, hi, hi - 1),
            at(h, n, hi, hi),
        );
        let corner = at(h, n, hi, hi);
        let mut shift = if (l1 - corner).norm() <= (l2 - corner).norm() {
            l1
        } else {
            l2
        };
        iter_budget += 1;
        if iter_budget.is_multiple_of(20) {
            // Exceptional shift to break rare stagnation.
            shift = corner + Complex64::new(at(h, n, hi, hi - 1).norm(), 0.0);
        }
        if iter_budget > 500 {
            // Give up gracefully: report diagonal of what we have.
            for i in (0..=hi).rev() {
                eigs.push(at(h, n, i, i));
            }
            return finish(eigs);
        }
        qr_step(h, n, lo, hi, shift);
    }
}

fn finish(mut eigs: Vec<Complex64>) -> Vec<Complex64> {
    // Deterministic order regardless of deflation order.
    eigs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    eigs
}

fn active_block_start(h: &mut [Complex64], n: usize, hi: usize) -> usize {
    let mut lo = hi;
    while lo > 0 {
        let sub = at(h, n, lo, lo - 1).norm();
        let scale = at(h, n, lo - 1, lo - 1).norm() + at(h, n, lo, lo).norm();
        let tiny = f64::EPSILON * scale.max(1e-300);
        if sub <= tiny {
            *at_mut(h, n, lo, lo - 1) = Complex64::new(0.0, 0.0);
            break;
        }
        lo -= 1;
    }
    lo
}

/// One explicit shifted QR sweep on the active Hessenberg block [lo, hi].
fn qr_step(h: &mut [Complex64], n: usize, lo: usize, hi: usize, shift: Complex64) {
    let m = hi - lo + 1;
    // Shift the diagonal.
    for i in lo..=hi {
        *at_mut(h, n, i, i) -= shift;
    }
    // Factor with Givens rotations, zeroing the subdiagonal.
    let mut rot = Vec::with_capacity(m - 1);
    for i in lo..hi {
        let a = at(h, n, i, i);
        let b = at(h, n, i + 1, i);
        let (c, s) = givens(a, b);
        rot.push((c, s));
        // Apply from the left to rows i, i+1.
        for j in i..n {
            let x = at(h, n, i, j);
            let y = at(h, n, i + 1, j);
            *at_mut(h, n, i, j) = x * c + y * s.conj();
            *at_mut(h, n, i + 1, j) = -x * s + y * c;
        }
    }
    // Multiply back R * Q^*: apply rotations from the right.
    for (idx, (c, s)) in rot.iter().enumerate() {
        let j = lo + idx;
        let top = (j + 2).min(hi);
        for i in 0..=top {
            let x = at(h, n, i, j);
            let y = at(h, n, i, j + 1);
            *at_mut(h, n, i, j) = x * c + y * s;
            *at_mut(h, n, i, j + 1) = -x * s.conj() + y * c;
        }
    }
    // Undo the shift.
    for i in lo..=hi {
        *at_mut(h, n, i, i) += shift;
    }
}

/// Complex Givens rotation with real cosine: [c, conj(s); -s, c] [a; b] = [r; 0].
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b / bn);
    }
    let r = (an * an + bn * bn).sqrt();
    let c = an / r;
    // s chosen so the rotation is unitary and zeroes the second entry.
    let s = (a / an).conj() * b / r;
    (c, s)
}

/// Eigenvalues of a complex 2x2 matrix by the quadratic formula.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let tr = a + d;
    let half = tr * 0.5;
    let disc = (a - d) * (a - d) * 0.25 + b * c;
    let root = disc.sqrt();
    (half + root, half - root)
}

/// Closed-form exponential exp(t M) of a real 2x2 matrix.
///
/// Splits M = tau I + B with tr B = 0, so B^2 = mu^2 I and the exponential
/// is hyperbolic (mu^2 > 0), trigonometric (mu^2 < 0) or affine (mu^2 = 0)
/// in closed form.
pub fn expm2(m: [[f64; 2]; 2], t: f64) -> [[f64; 2]; 2] {
    let tau = 0.5 * (m[0][0] + m[1][1]);
    let b = [
        [m[0][0] - tau, m[0][1]],
        [m[1][0], m[1][1] - tau],
    ];
    let mu2 = b[0][0] * b[0][0] + b[0][1] * b[1][0]; // B^2 = mu2 * I
    let (ch, shs) = phi_pair(mu2, t);
    let e = (tau * t).exp();
    [
        [e * (ch + shs * b[0][0]), e * shs * b[0][1]],
        [e * shs * b[1][0], e * (ch + shs * b[1][1])],
    ]
}

/// Returns (cosh(t sqrt(mu2)), sinh(t sqrt(mu2)) / sqrt(mu2)) with the
/// trigonometric branch for mu2 < 0 and a series guard near zero.
fn phi_pair(mu2: f64, t: f64) -> (f64, f64) {
    let z = mu2 * t * t;
    if z.abs() < 1e-12 {
        return (1.0 + z / 2.0, t * (1.0 + z / 6.0));
    }
    if mu2 > 0.0 {
        let mu = mu2.sqrt();
        ((mu * t).cosh(), (mu * t).sinh() / mu)
    } else {
        let w = (-mu2).sqrt();
        ((w * t).cos(), (w * t).sin() / w)
    }
}
