//! Vortex sheets in the plane: Biot-Savart velocities off and on the sheet
//! by principal-value quadrature, jump relations across the sheet, and the
//! two singular-support geometries built from shear flows.
//!
//! Sheets are horizontally periodic curves r(l + 1) = r(l) + (1, 0). The
//! Biot-Savart kernel is summed over all integer horizontal images of the
//! curve, which has the exact closed form pi cot(pi w) in the complex
//! variable w = (x1 - r1) + i (x2 - r2); a truncated image sum is kept in
//! the tests as an independent check of that identity.

use crate::error::{Error, Result};
use crate::field::{wrap_sym, wrap_unit, ProfileFunction, ShearFlow};
use crate::quad::KahanSum;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = 2.0 * std::f64::consts::PI;

/// One sinusoidal term of a sheet elevation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub amp: f64,
    pub mode: i32,
    pub phase: f64,
}

impl Harmonic {
    fn eval(&self, l: f64) -> f64 {
        self.amp * (TAU * self.mode as f64 * l + self.phase).sin()
    }

    fn deriv(&self, l: f64) -> f64 {
        let w = TAU * self.mode as f64;
        self.amp * w * (w * l + self.phase).cos()
    }
}

/// Geometry of the sheet: flat, or the graph of a trigonometric elevation.
#[derive(Debug, Clone, PartialEq)]
pub enum SheetShape {
    Flat,
    Graph { harmonics: Vec<Harmonic> },
}

/// Scalar vorticity density along the sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SheetDensity {
    Uniform(f64),
    Harmonic {
        mean: f64,
        amp: f64,
        mode: i32,
        phase: f64,
    },
}

/// A parameterized, horizontally periodic vortex sheet with M quadrature
/// nodes.
#[derive(Debug, Clone)]
pub struct SheetCurve2D {
    pub m: usize,
    pub shape: SheetShape,
    pub density: SheetDensity,
}

impl SheetCurve2D {
    pub fn new(m: usize, shape: SheetShape, density: SheetDensity) -> Result<Self> {
        if m < 8 || !m.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "node count must be even and >= 8, got {m}"
            )));
        }
        Ok(Self { m, shape, density })
    }

    pub fn elevation(&self, l: f64) -> f64 {
        match &self.shape {
            SheetShape::Flat => 0.0,
            SheetShape::Graph { harmonics } => harmonics.iter().map(|h| h.eval(l)).sum(),
        }
    }

    pub fn elevation_deriv(&self, l: f64) -> f64 {
        match &self.shape {
            SheetShape::Flat => 0.0,
            SheetShape::Graph { harmonics } => harmonics.iter().map(|h| h.deriv(l)).sum(),
        }
    }

    pub fn point(&self, l: f64) -> [f64; 2] {
        [l, self.elevation(l)]
    }

    /// |d r / d lambda|.
    pub fn metric(&self, l: f64) -> f64 {
        let d = self.elevation_deriv(l);
        (1.0 + d * d).sqrt()
    }

    pub fn unit_tangent(&self, l: f64) -> [f64; 2] {
        let d = self.elevation_deriv(l);
        let m = (1.0 + d * d).sqrt();
        [1.0 / m, d / m]
    }

    /// Left normal (the quarter-turn of the tangent).
    pub fn unit_normal(&self, l: f64) -> [f64; 2] {
        let t = self.unit_tangent(l);
        [-t[1], t[0]]
    }

    pub fn density_at(&self, l: f64) -> f64 {
        match self.density {
            SheetDensity::Uniform(c) => c,
            SheetDensity::Harmonic {
                mean,
                amp,
                mode,
                phase,
            } => mean + amp * (TAU * mode as f64 * l + phase).cos(),
        }
    }

    fn node(&self, j: usize) -> f64 {
        j as f64 / self.m as f64
    }

    /// Largest sampled ratio of parameter distance to chord distance over
    /// the node pairs; finite and moderate for honestly immersed sheets.
    pub fn chord_arc_constant(&self) -> f64 {
        let m = self.m;
        let pts: Vec<[f64; 2]> = (0..m).map(|j| self.point(self.node(j))).collect();
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in i + 1..m {
                let dl_raw = (j - i) as f64 / m as f64;
                let dl = dl_raw.min(1.0 - dl_raw);
                let dx = wrap_sym(pts[j][0] - pts[i][0]);
                let dy = pts[j][1] - pts[i][1];
                let chord = (dx * dx + dy * dy).sqrt();
                if chord > 0.0 {
                    worst = worst.max(dl / chord);
                }
            }
        }
        worst
    }

    fn min_node_distance(&self, x: [f64; 2]) -> f64 {
        let mut best = f64::INFINITY;
        for j in 0..self.m {
            let p = self.point(self.node(j));
            let dx = wrap_sym(x[0] - p[0]);
            let dy = x[1] - p[1];
            best = best.min((dx * dx + dy * dy).sqrt());
        }
        best
    }

    fn max_metric(&self) -> f64 {
        (0..self.m)
            .map(|j| self.metric(self.node(j)))
            .fold(0.0f64, f64::max)
    }
}

/// Horizontally periodized Biot-Savart kernel vector
/// sum_m (z1 - m, z2) / |(z1 - m, z2)|^2 = (Re, -Im) of pi cot(pi w).
pub fn periodized_kernel(z: [f64; 2]) -> [f64; 2] {
    let w = Complex64::new(PI * z[0], PI * z[1]);
    let cot = w.cos() / w.sin();
    [PI * cot.re, -PI * cot.im]
}

/// Same kernel by truncated image summation; kept as the slow consistency
/// oracle for the closed form.
pub fn image_sum_kernel(z: [f64; 2], images: i64) -> [f64; 2] {
    let mut kx = 0.0;
    let mut ky = 0.0;
    for m in -images..=images {
        let dx = z[0] - m as f64;
        let r2 = dx * dx + z[1] * z[1];
        kx += dx / r2;
        ky += z[1] / r2;
    }
    [kx, ky]
}

/// Off-sheet Biot-Savart velocity: trapezoidal quadrature of the rotated
/// periodized kernel against the vorticity density.
pub fn biot_savart_2d(sheet: &SheetCurve2D, x: [f64; 2]) -> Result<[f64; 2]> {
    let floor = 3.0 * sheet.max_metric() / sheet.m as f64;
    let dist = sheet.min_node_distance(x);
    if dist < floor {
        return Err(Error::TooCloseToSheet { dist, floor });
    }
    let mut u1 = KahanSum::new();
    let mut u2 = KahanSum::new();
    for j in 0..sheet.m {
        let l = sheet.node(j);
        let p = sheet.point(l);
        let k = periodized_kernel([x[0] - p[0], x[1] - p[1]]);
        let w = sheet.density_at(l) * sheet.metric(l);
        // quarter-turn rotation of the kernel
        u1.add(-k[1] * w);
        u2.add(k[0] * w);
    }
    let scale = 1.0 / (TAU * sheet.m as f64);
    Ok([u1.value() * scale, u2.value() * scale])
}

/// Principal-value (averaged) velocity on the sheet at parameter lambda,
/// by the alternate-point trapezoidal rule: the singular node is excluded
/// and only nodes of opposite parity contribute, with doubled weight.
/// Spectrally accurate when lambda is one of the quadrature nodes.
pub fn average_velocity_on_sheet(sheet: &SheetCurve2D, lambda: f64) -> [f64; 2] {
    let m = sheet.m;
    let i = (wrap_unit(lambda) * m as f64).round() as usize % m;
    let xi = sheet.point(lambda);
    let mut u1 = KahanSum::new();
    let mut u2 = KahanSum::new();
    for j in 0..m {
        if (i + m - j).is_multiple_of(2) {
            continue;
        }
        let l = sheet.node(j);
        let p = sheet.point(l);
        let k = periodized_kernel([xi[0] - p[0], xi[1] - p[1]]);
        let w = sheet.density_at(l) * sheet.metric(l);
        u1.add(-k[1] * w);
        u2.add(k[0] * w);
    }
    let scale = 2.0 / (TAU * m as f64);
    [u1.value() * scale, u2.value() * scale]
}

/// Two-sided probe of the sheet at parameter lambda and offset delta.
#[derive(Debug, Clone, Copy)]
pub struct JumpCheck {
    /// (u+ - u-) . n; must vanish as delta -> 0 (incompressibility).
    pub normal_jump: f64,
    /// |(u+ - u-) . tangent|.
    pub tangential_jump: f64,
    /// | (u- - u+).tangent * metric - density * metric |: the jump-density
    /// relation in the metric-weighted convention, with the sign fixed so
    /// the flat stationary sheet yields zero residual.
    pub density_residual: f64,
}

pub fn jump_check(sheet: &SheetCurve2D, lambda: f64, delta: f64) -> Result<JumpCheck> {
    let p = sheet.point(lambda);
    let n = sheet.unit_normal(lambda);
    let tangent = sheet.unit_tangent(lambda);
    let up = biot_savart_2d(sheet, [p[0] + delta * n[0], p[1] + delta * n[1]])?;
    let um = biot_savart_2d(sheet, [p[0] - delta * n[0], p[1] - delta * n[1]])?;
    let diff = [up[0] - um[0], up[1] - um[1]];
    let normal_jump = diff[0] * n[0] + diff[1] * n[1];
    let tang_signed = -(diff[0] * tangent[0] + diff[1] * tangent[1]);
    let metric = sheet.metric(lambda);
    let density_residual = (tang_signed * metric - sheet.density_at(lambda) * metric).abs();
    Ok(JumpCheck {
        normal_jump,
        tangential_jump: tang_signed.abs(),
        density_residual,
    })
}

/// Parameters of the corner-surface geometry: two-level profiles for u1
/// and u3 with jump locations xi2 and xi1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Example1Params {
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha3: f64,
    pub beta3: f64,
    pub xi1: f64,
    pub xi2: f64,
}

/// The singular support of the corner-example vorticity at time t: a
/// horizontal plane and two advected vertical half-planes meeting it.
#[derive(Debug, Clone)]
pub struct Example1Surface {
    pub params: Example1Params,
    pub t: f64,
    /// x1 offset of the piece below the horizontal plane (x2 <= xi2).
    pub x1_lower: f64,
    /// x1 offset of the piece above it (x2 >= xi2).
    pub x1_upper: f64,
}

/// Build the surface description at time t. The flow advects the vertical
/// jump plane of u3 with the local value of u1, splitting it at x2 = xi2.
pub fn example1_surface(params: Example1Params, t: f64) -> Result<Example1Surface> {
    if params.alpha1 < params.beta1 {
        return Err(Error::InvalidParameters(format!(
            "need alpha1 >= beta1, got {} < {}",
            params.alpha1, params.beta1
        )));
    }
    if params.alpha3 == params.beta3 {
        return Err(Error::InvalidParameters(
            "need alpha3 != beta3 (otherwise u3 carries no jump)".into(),
        ));
    }
    Ok(Example1Surface {
        params,
        t,
        x1_lower: wrap_unit(params.xi1 + t * params.alpha1),
        x1_upper: wrap_unit(params.xi1 + t * params.beta1),
    })
}

impl Example1Surface {
    /// Membership predicate on the torus, with tolerance for the plane
    /// offsets.
    pub fn contains(&self, x: [f64; 3], tol: f64) -> bool {
        let x2 = wrap_unit(x[1]);
        if wrap_sym(x[1] - self.params.xi2).abs() <= tol {
            return true;
        }
        if wrap_sym(x[0] - self.x1_lower).abs() <= tol && x2 <= self.params.xi2 {
            return true;
        }
        if wrap_sym(x[0] - self.x1_upper).abs() <= tol && x2 >= self.params.xi2 {
            return true;
        }
        false
    }

    /// The shear flow whose vorticity is concentrated on this surface.
    pub fn step_flow(&self) -> ShearFlow {
        ShearFlow::new(
            ProfileFunction::Step {
                below: self.params.alpha1,
                above: self.params.beta1,
                jump: self.params.xi2,
            },
            ProfileFunction::Step {
                below: self.params.alpha3,
                above: self.params.beta3,
                jump: self.params.xi1,
            },
        )
    }

    /// Human-readable description of the three planar pieces.
    pub fn describe(&self) -> String {
        format!(
            "piece 1: {{ x2 = {} }} (all x1, x3)\n\
             piece 2: {{ x1 = {} , x2 <= {} }} (below, advected at speed {})\n\
             piece 3: {{ x1 = {} , x2 >= {} }} (above, advected at speed {})\n",
            self.params.xi2,
            self.x1_lower,
            self.params.xi2,
            self.params.alpha1,
            self.x1_upper,
            self.params.xi2,
            self.params.beta1,
        )
    }
}

/// Singular vorticity geometries selectable by experiments.
#[derive(Debug, Clone)]
pub enum SingularSurface {
    Example1(Example1Surface),
    Example2 { u1: ProfileFunction, t: f64 },
}

/// Vorticity data of the graph sheet x1 = t u1(x2): the unit sheet-density
/// vector carried by the surface measure, the absolutely continuous third
/// component, and the residual of tangency to the sheet.
#[derive(Debug, Clone, Copy)]
pub struct SheetVorticity {
    pub density: [f64; 3],
    pub bulk: f64,
    pub tangency_residual: f64,
}

/// The sheet-concentrated vorticity of the graph example. The density
/// vector is the distributional limit of the smooth-profile curl, which
/// places it in the tangent plane of the sheet; its first two components
/// are normalized to unit length.
pub fn example2_vorticity(u1: &ProfileFunction, t: f64, x2: f64) -> Result<SheetVorticity> {
    let d1 = u1.derivative(x2)?;
    let g = t * d1;
    let norm = (1.0 + g * g).sqrt();
    let density = [g / norm, 1.0 / norm, 0.0];
    // Unit normal of { x1 = t u1(x2) }.
    let normal = [1.0 / norm, -g / norm, 0.0];
    let tangency_residual =
        (density[0] * normal[0] + density[1] * normal[1] + density[2] * normal[2]).abs();
    Ok(SheetVorticity {
        density,
        bulk: -d1,
        tangency_residual,
    })
}
