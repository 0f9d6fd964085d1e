//! Quadrature building blocks: offset tensor grids, Gauss-Legendre rules,
//! compensated summation and small least-squares fits.

/// Irrational fraction of a cell by which every uniform spatial grid is
/// shifted. Keeps profile jumps off the nodes, so discontinuities never
/// coincide with quadrature points and convergence rates stay honest.
pub const GRID_OFFSET: f64 = 0.618_033_988_749_894_8;

/// j-th node of the offset uniform grid with n cells on [0, 1).
#[inline]
pub fn grid_node(j: usize, n: usize) -> f64 {
    (j as f64 + GRID_OFFSET) / n as f64
}

/// Kahan-compensated accumulator. Grid reductions run over up to ~10^7
/// terms and the energy criteria sit at 1e-10 relative, so plain summation
/// order alone is not enough headroom.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Nodes and weights of the q-point Gauss-Legendre rule on [a, b].
///
/// Newton iteration on the Legendre polynomial, standard initial guesses;
/// accurate to machine precision for the orders used here (q <= 64).
pub fn gauss_legendre(q: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(q >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; q];
    let mut weights = vec![0.0; q];
    let n = q as f64;
    for i in 0..q {
        // Chebyshev-like initial guess for the i-th root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=q {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // Map from [-1, 1] to [a, b]; reverse so nodes come out increasing.
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut out_nodes = vec![0.0; q];
    let mut out_weights = vec![0.0; q];
    for i in 0..q {
        out_nodes[i] = mid - half * nodes[i];
        out_weights[i] = half * weights[i];
    }
    (out_nodes, out_weights)
}

/// Least-squares line fit. Returns (slope, intercept, rms residual).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let ss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    (slope, intercept, (ss / n).sqrt())
}

/// Least-squares quadratic fit y = a2 x^2 + a1 x + a0, returned as (a2, a1, a0).
pub fn quadratic_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 3);
    // Normal equations for the 3x3 system.
    let mut s = [0.0f64; 5];
    let mut b = [0.0f64; 3];
    for (&x, &y) in xs.iter().zip(ys) {
        let x2 = x * x;
        s[0] += 1.0;
        s[1] += x;
        s[2] += x2;
        s[3] += x2 * x;
        s[4] += x2 * x2;
        b[0] += y;
        b[1] += x * y;
        b[2] += x2 * y;
    }
    let m = [[s[0], s[1], s[2]], [s[1], s[2], s[3]], [s[2], s[3], s[4]]];
    let sol = solve3(m, b);
    (sol[2], sol[1], sol[0])
}

#[allow(clippy::needless_range_loop)]
fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    // Gaussian elimination with partial pivoting.
    for col in 0..3 {
        let mut piv = col;
        for row in col + 1..3 {
            if m[row][col].abs() > m[piv][col].abs() {
                piv = row;
            }
        }
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}
