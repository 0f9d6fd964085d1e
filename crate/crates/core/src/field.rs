//! Shear-flow velocity fields on the unit torus.
//!
//! A flow is a pair of 1-periodic scalar profiles (u1, u3) inducing the
//! velocity field u(x, t) = (u1(x2), 0, u3(x1 - t u1(x2))), an exact
//! pressureless solution of the incompressible Euler equations whenever the
//! profiles are smooth, and a weak solution for merely square-integrable
//! profiles. The catalog deliberately includes rough kinds (power cusp,
//! step, sin(1/x)) whose evaluation is total but whose derivative is
//! refused where it does not exist: silently mollifying them would corrupt
//! every norm-growth experiment downstream.

use crate::error::{Error, Result};

pub type Point3 = [f64; 3];
pub type Vec3 = [f64; 3];
/// Row-major gradient: entry `[i][j]` holds the derivative of component i
/// along coordinate j.
pub type Mat3 = [[f64; 3]; 3];

/// Wrap to the fundamental cell [0, 1).
#[inline]
pub fn wrap_unit(x: f64) -> f64 {
    x - x.floor()
}

/// Wrap to the symmetric cell [-1/2, 1/2).
#[inline]
pub fn wrap_sym(x: f64) -> f64 {
    x - (x + 0.5).floor()
}

/// C-infinity step from 0 at u <= 0 to 1 at u >= 1, flat at both ends.
fn smoothstep(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / u).exp();
    let b = (-1.0 / (1.0 - u)).exp();
    a / (a + b)
}

fn smoothstep_deriv(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / u).exp();
    let b = (-1.0 / (1.0 - u)).exp();
    let da = a / (u * u);
    let db = b / ((1.0 - u) * (1.0 - u));
    // d/du [a / (a + b)] with b evaluated at 1 - u.
    (da * b + a * db) / ((a + b) * (a + b))
}

/// One-periodic scalar profile from the closed-form catalog or grid samples.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileFunction {
    /// |x|^alpha near the origin (coincides on |x| <= 1/4), blended to the
    /// constant (1/4)^alpha on 1/4 <= |x| <= 1/2 by a fixed smooth bump, so
    /// the profile is C-infinity away from 0. Blending toward the junction
    /// value keeps the blend slope at the cusp's own scale, so structure
    /// functions stay dominated by the cusp at every dyadic increment.
    Cusp { alpha: f64 },
    /// sin(2 pi k x + phase).
    Trig { k: i32, phase: f64 },
    /// Two levels with a jump at `jump`: `below` on [0, jump), `above` on
    /// [jump, 1). Right-continuous at the jump.
    Step { below: f64, above: f64, jump: f64 },
    /// sin(1/x) on 0 < |x| <= cutoff (value 0 at x = 0), decayed to 0 on
    /// cutoff <= |x| <= 1/2 by the same smooth bump.
    SinInverse { cutoff: f64 },
    /// `levels[i]` on `[breakpoints[i], breakpoints[i+1])`, last segment
    /// wraps around through 0.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        levels: Vec<f64>,
    },
    /// Uniform grid samples on x_j = j/len with interpolation order 0
    /// (nearest, right-continuous), 1 (linear) or 3 (Catmull-Rom).
    Sampled { values: Vec<f64>, order: usize },
}

impl ProfileFunction {
    /// Constant profile (a single-level piecewise constant).
    pub fn constant(c: f64) -> Self {
        ProfileFunction::PiecewiseConstant {
            breakpoints: vec![0.0],
            levels: vec![c],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ProfileFunction::Cusp { .. } => "cusp",
            ProfileFunction::Trig { .. } => "trig",
            ProfileFunction::Step { .. } => "step",
            ProfileFunction::SinInverse { .. } => "sin_inverse",
            ProfileFunction::PiecewiseConstant { .. } => "piecewise_constant",
            ProfileFunction::Sampled { .. } => "sampled",
        }
    }

    /// Check the structural constraints of the kind.
    pub fn validate(&self) -> Result<()> {
        match self {
            ProfileFunction::Cusp { alpha } => {
                if !(0.0 < *alpha && *alpha <= 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "cusp exponent must lie in (0, 1], got {alpha}"
                    )));
                }
            }
            ProfileFunction::SinInverse { cutoff } => {
                if !(0.0 < *cutoff && *cutoff < 0.5) {
                    return Err(Error::InvalidArgument(format!(
                        "sin_inverse cutoff must lie in (0, 1/2), got {cutoff}"
                    )));
                }
            }
            ProfileFunction::Step { jump, .. } => {
                if !(0.0 < *jump && *jump < 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "step jump must lie in (0, 1), got {jump}"
                    )));
                }
            }
            ProfileFunction::PiecewiseConstant {
                breakpoints,
                levels,
            } => {
                if breakpoints.is_empty() || breakpoints.len() != levels.len() {
                    return Err(Error::InvalidArgument(
                        "piecewise_constant needs equally many breakpoints and levels".into(),
                    ));
                }
                for w in breakpoints.windows(2) {
                    if w[0] >= w[1] {
                        return Err(Error::InvalidArgument(
                            "breakpoints must be strictly increasing".into(),
                        ));
                    }
                }
                if breakpoints[0] < 0.0 || *breakpoints.last().unwrap() >= 1.0 {
                    return Err(Error::InvalidArgument(
                        "breakpoints must lie in [0, 1)".into(),
                    ));
                }
            }
            ProfileFunction::Sampled { values, order } => {
                if values.len() < 2 {
                    return Err(Error::InvalidArgument(
                        "sampled profile needs at least two values".into(),
                    ));
                }
                if !matches!(order, 0 | 1 | 3) {
                    return Err(Error::InvalidArgument(format!(
                        "sampled interpolation order must be 0, 1 or 3, got {order}"
                    )));
                }
            }
            ProfileFunction::Trig { .. } => {}
        }
        Ok(())
    }

    /// Total 1-periodic evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            ProfileFunction::Cusp { alpha } => {
                let r = wrap_sym(x);
                let a = r.abs();
                let far = 0.25f64.powf(*alpha);
                if a <= 0.25 {
                    a.powf(*alpha)
                } else {
                    let u = (a - 0.25) * 4.0;
                    far + (1.0 - smoothstep(u)) * (a.powf(*alpha) - far)
                }
            }
            ProfileFunction::Trig { k, phase } => {
                (2.0 * std::f64::consts::PI * (*k as f64) * x + phase).sin()
            }
            ProfileFunction::Step { below, above, jump } => {
                let t = wrap_unit(x);
                if t < *jump {
                    *below
                } else {
                    *above
                }
            }
            ProfileFunction::SinInverse { cutoff } => {
                let r = wrap_sym(x);
                if r == 0.0 {
                    return 0.0;
                }
                let a = r.abs();
                let core = (1.0 / r).sin();
                if a <= *cutoff {
                    core
                } else {
                    let u = (a - cutoff) / (0.5 - cutoff);
                    (1.0 - smoothstep(u)) * core
                }
            }
            ProfileFunction::PiecewiseConstant {
                breakpoints,
                levels,
            } => {
                let t = wrap_unit(x);
                // partition_point = index of the first breakpoint > t.
                let idx = breakpoints.partition_point(|b| *b <= t);
                if idx == 0 {
                    // Before the first breakpoint: wrap-around segment.
                    *levels.last().unwrap()
                } else {
                    levels[idx - 1]
                }
            }
            ProfileFunction::Sampled { values, order } => {
                let n = values.len();
                let t = wrap_unit(x) * n as f64;
                let j = (t.floor() as usize).min(n - 1);
                let frac = t - j as f64;
                let v = |i: isize| values[(i.rem_euclid(n as isize)) as usize];
                match order {
                    0 => values[j],
                    1 => {
                        let a = v(j as isize);
                        let b = v(j as isize + 1);
                        a + (b - a) * frac
                    }
                    _ => {
                        // Catmull-Rom through the four surrounding samples.
                        let p0 = v(j as isize - 1);
                        let p1 = v(j as isize);
                        let p2 = v(j as isize + 1);
                        let p3 = v(j as isize + 2);
                        let s = frac;
                        0.5 * ((2.0 * p1)
                            + (-p0 + p2) * s
                            + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s
                            + (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * s * s * s)
                    }
                }
            }
        }
    }

    /// A point where the profile fails to be differentiable, if any.
    /// Kinds with such points are rejected by operations whose
    /// preconditions demand smoothness everywhere.
    pub fn nondifferentiable_point(&self) -> Option<f64> {
        match self {
            ProfileFunction::Cusp { .. } => Some(0.0),
            ProfileFunction::Trig { .. } => None,
            ProfileFunction::Step { below, above, jump } => {
                (below != above).then_some(*jump)
            }
            ProfileFunction::SinInverse { .. } => Some(0.0),
            ProfileFunction::PiecewiseConstant {
                breakpoints,
                levels,
            } => {
                let n = levels.len();
                (0..n).find_map(|i| {
                    let prev = if i == 0 { levels[n - 1] } else { levels[i - 1] };
                    (prev != levels[i]).then_some(breakpoints[i])
                })
            }
            ProfileFunction::Sampled { order, .. } => (*order < 3).then_some(0.0),
        }
    }

    /// Closed-form derivative where one exists; rough kinds refuse the
    /// points where they are not differentiable.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let refuse = |arg: f64| Error::NonDifferentiableProfile {
            kind: self.kind_name(),
            arg,
        };
        match self {
            ProfileFunction::Cusp { alpha } => {
                let r = wrap_sym(x);
                if r == 0.0 {
                    return Err(refuse(x));
                }
                let a = r.abs();
                let sign = r.signum();
                let far = 0.25f64.powf(*alpha);
                if a <= 0.25 {
                    Ok(sign * alpha * a.powf(alpha - 1.0))
                } else {
                    let u = (a - 0.25) * 4.0;
                    let ds = smoothstep_deriv(u) * 4.0;
                    Ok(sign
                        * ((1.0 - smoothstep(u)) * alpha * a.powf(alpha - 1.0)
                            - ds * (a.powf(*alpha) - far)))
                }
            }
            ProfileFunction::Trig { k, phase } => {
                let w = 2.0 * std::f64::consts::PI * (*k as f64);
                Ok(w * (w * x + phase).cos())
            }
            ProfileFunction::Step { below, above, jump } => {
                if below == above {
                    return Ok(0.0);
                }
                let t = wrap_unit(x);
                if t == *jump || t == 0.0 {
                    Err(refuse(x))
                } else {
                    Ok(0.0)
                }
            }
            ProfileFunction::SinInverse { cutoff } => {
                let r = wrap_sym(x);
                if r == 0.0 {
                    return Err(refuse(x));
                }
                let a = r.abs();
                let core = (1.0 / r).sin();
                let dcore = -(1.0 / r).cos() / (r * r);
                if a <= *cutoff {
                    Ok(dcore)
                } else {
                    let u = (a - cutoff) / (0.5 - cutoff);
                    let ds = smoothstep_deriv(u) * r.signum() / (0.5 - cutoff);
                    Ok((1.0 - smoothstep(u)) * dcore - ds * core)
                }
            }
            ProfileFunction::PiecewiseConstant {
                breakpoints,
                levels,
            } => {
                if levels.windows(2).all(|w| w[0] == w[1]) {
                    return Ok(0.0);
                }
                let t = wrap_unit(x);
                for (i, b) in breakpoints.iter().enumerate() {
                    if t == *b {
                        let prev = if i == 0 {
                            *levels.last().unwrap()
                        } else {
                            levels[i - 1]
                        };
                        if prev != levels[i] {
                            return Err(refuse(x));
                        }
                    }
                }
                Ok(0.0)
            }
            ProfileFunction::Sampled { values, order } => {
                let n = values.len();
                let t = wrap_unit(x) * n as f64;
                let j = (t.floor() as usize).min(n - 1);
                let frac = t - j as f64;
                let v = |i: isize| values[(i.rem_euclid(n as isize)) as usize];
                match order {
                    0 => {
                        if frac == 0.0 {
                            Err(refuse(x))
                        } else {
                            Ok(0.0)
                        }
                    }
                    1 => {
                        if frac == 0.0 {
                            Err(refuse(x))
                        } else {
                            Ok((v(j as isize + 1) - v(j as isize)) * n as f64)
                        }
                    }
                    _ => {
                        let p0 = v(j as isize - 1);
                        let p1 = v(j as isize);
                        let p2 = v(j as isize + 1);
                        let p3 = v(j as isize + 2);
                        let s = frac;
                        let d = 0.5
                            * ((-p0 + p2)
                                + 2.0 * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s
                                + 3.0 * (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * s * s);
                        Ok(d * n as f64)
                    }
                }
            }
        }
    }
}

/// The shear flow u(x, t) = (u1(x2), 0, u3(x1 - t u1(x2))).
#[derive(Debug, Clone)]
pub struct ShearFlow {
    pub u1: ProfileFunction,
    pub u3: ProfileFunction,
}

impl ShearFlow {
    pub fn new(u1: ProfileFunction, u3: ProfileFunction) -> Self {
        Self { u1, u3 }
    }

    /// Velocity at (x, t). Total: defined for every point and time, and the
    /// second component is exactly zero.
    pub fn eval_velocity(&self, x: Point3, t: f64) -> Vec3 {
        let a = self.u1.eval(x[1]);
        [a, 0.0, self.u3.eval(x[0] - t * a)]
    }

    /// Vorticity (curl of the velocity) where both profiles are
    /// differentiable at the arguments involved.
    pub fn eval_vorticity(&self, x: Point3, t: f64) -> Result<Vec3> {
        let a = self.u1.eval(x[1]);
        let s = x[0] - t * a;
        let d1 = self.u1.derivative(x[1])?;
        let d3 = self.u3.derivative(s)?;
        Ok([-t * d1 * d3, -d3, -d1])
    }

    /// Velocity gradient; entry `[i][j]` is the derivative of component i
    /// along coordinate j. The only nonzero entries are `[0][1]` = u1'(x2),
    /// `[2][0]` = u3'(s) and `[2][1]` = -t u1'(x2) u3'(s).
    pub fn eval_velocity_gradient(&self, x: Point3, t: f64) -> Result<Mat3> {
        let a = self.u1.eval(x[1]);
        let s = x[0] - t * a;
        let d1 = self.u1.derivative(x[1])?;
        let d3 = self.u3.derivative(s)?;
        let mut m = [[0.0; 3]; 3];
        m[0][1] = d1;
        m[2][0] = d3;
        m[2][1] = -t * d1 * d3;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    const TAU: f64 = 2.0 * std::f64::consts::PI;

    #[test]
    fn zero_u1_kills_advection() {
        let flow = ShearFlow::new(
            ProfileFunction::constant(0.0),
            ProfileFunction::Trig { k: 1, phase: 0.0 },
        );
        let mut rng = SplitMix64::new(1);
        for _ in 0..20 {
            let x = [rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)];
            let t = rng.range(-2.0, 2.0);
            let v = flow.eval_velocity(x, t);
            assert_eq!(v[0], 0.0);
            assert_eq!(v[1], 0.0);
            assert!((v[2] - (TAU * x[0]).sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_u1_is_a_galilean_shift() {
        let c = 0.37;
        let flow = ShearFlow::new(
            ProfileFunction::constant(c),
            ProfileFunction::Trig { k: 2, phase: 0.4 },
        );
        let mut rng = SplitMix64::new(2);
        for _ in 0..50 {
            let x = [rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)];
            let t = rng.range(-3.0, 3.0);
            let moving = flow.eval_velocity(x, t);
            let frozen = flow.eval_velocity([x[0] - t * c, x[1], x[2]], 0.0);
            for i in 0..3 {
                assert!((moving[i] - frozen[i]).abs() < 1e-14);
            }
        }
    }

    /// Composition trace: for cusp profiles the third component at
    /// (0, x2, .) equals |t|^alpha |x2|^(alpha^2) while the arguments stay
    /// inside the coincidence region.
    #[test]
    fn cusp_trace_realizes_exponent_product() {
        let alpha = 0.6;
        let flow = ShearFlow::new(
            ProfileFunction::Cusp { alpha },
            ProfileFunction::Cusp { alpha },
        );
        for &t in &[0.25f64, 1.0, 2.0] {
            for &x2 in &[1e-4f64, 1e-3, 0.01] {
                if t * x2.powf(alpha) > 0.25 {
                    continue;
                }
                let v = flow.eval_velocity([0.0, x2, 0.3], t);
                let expect = t.powf(alpha) * x2.powf(alpha * alpha);
                assert!(
                    (v[2] - expect).abs() < 1e-12 * expect.max(1.0),
                    "t={t} x2={x2}: {} vs {expect}",
                    v[2]
                );
            }
        }
    }

    #[test]
    fn pure_shear_vorticity() {
        let flow = ShearFlow::new(
            ProfileFunction::Trig { k: 1, phase: 0.0 },
            ProfileFunction::constant(0.0),
        );
        let x = [0.3, 0.2, 0.9];
        let w = flow.eval_vorticity(x, 1.3).unwrap();
        assert_eq!(w[0], 0.0);
        assert_eq!(w[1], 0.0);
        assert!((w[2] + TAU * (TAU * x[1]).cos()).abs() < 1e-14);
    }

    #[test]
    fn time_zero_vorticity_decouples() {
        let flow = ShearFlow::new(
            ProfileFunction::Trig { k: 1, phase: 0.2 },
            ProfileFunction::Trig { k: 3, phase: -0.5 },
        );
        let x = [0.11, 0.72, 0.0];
        let w = flow.eval_vorticity(x, 0.0).unwrap();
        let d1 = flow.u1.derivative(x[1]).unwrap();
        let d3 = flow.u3.derivative(x[0]).unwrap();
        assert_eq!(w[0], 0.0);
        assert!((w[1] + d3).abs() < 1e-14);
        assert!((w[2] + d1).abs() < 1e-14);
    }

    /// Finite-difference curl oracle: central differences of eval_velocity
    /// must converge to eval_vorticity at second order in h.
    #[test]
    fn vorticity_matches_finite_difference_curl() {
        let flow = ShearFlow::new(
            ProfileFunction::Trig { k: 2, phase: 0.3 },
            ProfileFunction::Trig { k: 1, phase: 1.1 },
        );
        let fd_curl = |x: Point3, t: f64, h: f64| -> Vec3 {
            let d = |i: usize, j: usize| {
                let mut xp = x;
                let mut xm = x;
                xp[j] += h;
                xm[j] -= h;
                (flow.eval_velocity(xp, t)[i] - flow.eval_velocity(xm, t)[i]) / (2.0 * h)
            };
            [d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)]
        };
        let mut rng = SplitMix64::new(3);
        for _ in 0..10 {
            let x = [rng.range(0.0, 1.0), rng.range(0.0, 1.0), rng.range(0.0, 1.0)];
            let t = rng.range(0.0, 2.0);
            let exact = flow.eval_vorticity(x, t).unwrap();
            let err_at = |h: f64| -> f64 {
                let fd = fd_curl(x, t, h);
                (0..3)
                    .map(|i| (fd[i] - exact[i]).abs())
                    .fold(0.0f64, f64::max)
            };
            // Halving h must shrink the truncation error by about 4; the
            // composition carries third derivatives up to ~(2 pi k t u1')^3,
            // so only the order is asserted, not a fixed magnitude.
            let (e1, e2) = (err_at(2e-4), err_at(1e-4));
            if e1 > 1e-9 {
                let order = (e1 / e2).log2();
                assert!(
                    (1.6..=2.4).contains(&order),
                    "convergence order {order} (errors {e1} {e2})"
                );
            }
            assert!(e2 < 1e-3, "h=1e-4 error {e2}");
        }
    }

    #[test]
    fn gradient_constant_profiles_vanish() {
        let flow = ShearFlow::new(ProfileFunction::constant(0.7), ProfileFunction::constant(-0.2));
        let g = flow.eval_velocity_gradient([0.1, 0.9, 0.4], 2.0).unwrap();
        for row in g {
            for e in row {
                assert_eq!(e, 0.0);
            }
        }
    }

    #[test]
    fn gradient_time_factor() {
        let flow = ShearFlow::new(
            ProfileFunction::Trig { k: 1, phase: 0.0 },
            ProfileFunction::Trig { k: 1, phase: 0.0 },
        );
        let g0 = flow.eval_velocity_gradient([0.3, 0.4, 0.0], 0.0).unwrap();
        assert_eq!(g0[2][1], 0.0);
        let g1 = flow.eval_velocity_gradient([0.3, 0.4, 0.0], 2.0).unwrap();
        assert!((g1[2][1] + 2.0 * g1[0][1] * g1[2][0]).abs() < 1e-14);
    }

    /// Finite-difference Jacobian oracle for the gradient.
    #[test]
    #[allow(clippy::needless_range_loop)]
    fn gradient_matches_finite_difference_jacobian() {
        let flow = ShearFlow::new(
            ProfileFunction::Trig { k: 3, phase: 0.9 },
            ProfileFunction::Trig { k: 2, phase: 0.1 },
        );
        let mut rng = SplitMix64::new(4);
        let h = 1e-5;
        for _ in 0..10 {
            let x = [rng.range(0.0, 1.0), rng.range(0.0, 1.0), rng.range(0.0, 1.0)];
            let t = rng.range(0.0, 1.5);
            let g = flow.eval_velocity_gradient(x, t).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let mut xp = x;
                    let mut xm = x;
                    xp[j] += h;
                    xm[j] -= h;
                    let fd =
                        (flow.eval_velocity(xp, t)[i] - flow.eval_velocity(xm, t)[i]) / (2.0 * h);
                    // h^2/6 times a third derivative that can reach ~1e7
                    // for these wavenumbers; scale the check accordingly.
                    assert!(
                        (fd - g[i][j]).abs() < 1e-4 * (1.0 + g[i][j].abs()),
                        "entry ({i},{j}): fd {fd} vs {}",
                        g[i][j]
                    );
                }
            }
        }
    }

    #[test]
    fn rough_kinds_refuse_derivatives_at_singular_points() {
        let cusp = ProfileFunction::Cusp { alpha: 0.5 };
        assert!(matches!(
            cusp.derivative(0.0),
            Err(Error::NonDifferentiableProfile { .. })
        ));
        assert!(cusp.derivative(0.1).is_ok());

        let step = ProfileFunction::Step {
            below: 1.0,
            above: 0.0,
            jump: 0.5,
        };
        assert!(step.derivative(0.5).is_err());
        assert!(step.derivative(0.25).is_ok());

        let sinv = ProfileFunction::SinInverse { cutoff: 0.25 };
        assert!(sinv.derivative(0.0).is_err());
        assert!(sinv.derivative(0.05).is_ok());
    }

    #[test]
    fn step_is_right_continuous() {
        let step = ProfileFunction::Step {
            below: 2.0,
            above: -1.0,
            jump: 0.5,
        };
        assert_eq!(step.eval(0.5), -1.0);
        assert_eq!(step.eval(0.5 - 1e-12), 2.0);
        assert_eq!(step.eval(0.0), 2.0);
    }

    #[test]
    fn cusp_coincides_with_power_near_origin() {
        for &alpha in &[0.3, 0.5, 0.7, 0.9, 1.0] {
            let p = ProfileFunction::Cusp { alpha };
            for &x in &[1e-6, 1e-3, 0.1, 0.25] {
                assert!((p.eval(x) - x.powf(alpha)).abs() < 1e-15);
                assert!((p.eval(-x) - x.powf(alpha)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn sin_inverse_coincides_near_origin() {
        let p = ProfileFunction::SinInverse { cutoff: 0.25 };
        for &x in &[1e-4, 0.01, 0.2, 0.25] {
            assert!((p.eval(x) - (1.0 / x).sin()).abs() < 1e-15);
            assert!((p.eval(-x) + (1.0 / x).sin()).abs() < 1e-15);
        }
        assert_eq!(p.eval(0.0), 0.0);
    }

    #[test]
    fn all_catalog_kinds_are_one_periodic() {
        let kinds = vec![
            ProfileFunction::Cusp { alpha: 0.55 },
            ProfileFunction::Trig { k: 3, phase: 0.7 },
            ProfileFunction::Step {
                below: 1.0,
                above: -0.5,
                jump: 0.37,
            },
            ProfileFunction::SinInverse { cutoff: 0.2 },
            ProfileFunction::PiecewiseConstant {
                breakpoints: vec![0.1, 0.4, 0.8],
                levels: vec![1.0, -1.0, 0.5],
            },
            ProfileFunction::Sampled {
                values: vec![0.0, 1.0, 0.5, -0.5, 0.2, 0.9, -0.1, 0.3],
                order: 3,
            },
        ];
        let mut rng = SplitMix64::new(5);
        for p in &kinds {
            p.validate().unwrap();
            for _ in 0..1000 {
                let x = rng.range(-2.0, 2.0);
                let diff = (p.eval(x + 1.0) - p.eval(x)).abs();
                assert!(diff < 1e-10, "{} not periodic at {x}: {diff}", p.kind_name());
            }
        }
    }

    #[test]
    fn velocity_is_periodic_under_every_coordinate_shift() {
        let flow = ShearFlow::new(
            ProfileFunction::Cusp { alpha: 0.6 },
            ProfileFunction::Step {
                below: 0.5,
                above: -1.0,
                jump: 0.3,
            },
        );
        let mut rng = SplitMix64::new(6);
        for _ in 0..200 {
            let x = [rng.range(-1.0, 1.0), rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)];
            let t = rng.range(-2.0, 2.0);
            let base = flow.eval_velocity(x, t);
            for axis in 0..3 {
                let mut shifted = x;
                shifted[axis] += 1.0;
                let v = flow.eval_velocity(shifted, t);
                for i in 0..3 {
                    assert!(
                        (v[i] - base[i]).abs() < 1e-10,
                        "axis {axis} component {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn sampled_orders_interpolate_the_knots() {
        let values = vec![0.0, 1.0, 0.0, -1.0];
        for order in [0usize, 1, 3] {
            let p = ProfileFunction::Sampled {
                values: values.clone(),
                order,
            };
            for (j, v) in values.iter().enumerate() {
                assert!((p.eval(j as f64 / 4.0) - v).abs() < 1e-15);
            }
        }
    }
}
