//! Experiment configuration: a single structured TOML file with a strict
//! schema (unknown keys are rejected) so every report can echo exactly what
//! was run.

use serde::{Deserialize, Serialize};
use shearlab_core::field::ProfileFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    WeakCheck,
    Fubini,
    Holder,
    Energy,
    W1pGrowth,
    Besov,
    SpectralSelftest,
    Kh2d,
    Kh3d,
    Sheet,
    Example1,
    Example2,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 12] = [
        ExperimentKind::WeakCheck,
        ExperimentKind::Fubini,
        ExperimentKind::Holder,
        ExperimentKind::Energy,
        ExperimentKind::W1pGrowth,
        ExperimentKind::Besov,
        ExperimentKind::SpectralSelftest,
        ExperimentKind::Kh2d,
        ExperimentKind::Kh3d,
        ExperimentKind::Sheet,
        ExperimentKind::Example1,
        ExperimentKind::Example2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::WeakCheck => "weak-check",
            ExperimentKind::Fubini => "fubini",
            ExperimentKind::Holder => "holder",
            ExperimentKind::Energy => "energy",
            ExperimentKind::W1pGrowth => "w1p-growth",
            ExperimentKind::Besov => "besov",
            ExperimentKind::SpectralSelftest => "spectral-selftest",
            ExperimentKind::Kh2d => "kh2d",
            ExperimentKind::Kh3d => "kh3d",
            ExperimentKind::Sheet => "sheet",
            ExperimentKind::Example1 => "example1",
            ExperimentKind::Example2 => "example2",
        }
    }

    /// One line per experiment naming the claim it checks.
    pub fn claim(&self) -> &'static str {
        match self {
            ExperimentKind::WeakCheck => {
                "weak Euler residual of shear flows vanishes under refinement (rough data included)"
            }
            ExperimentKind::Fubini => {
                "change-of-variables identity for the advected third component holds in quadrature"
            }
            ExperimentKind::Holder => {
                "Holder exponent drops from alpha to alpha^2 across the advection direction for t != 0"
            }
            ExperimentKind::Energy => {
                "kinetic energy of shear flows is conserved, including sgn/sin(1/x) rough data"
            }
            ExperimentKind::W1pGrowth => {
                "W^{1,2} norm grows linearly in t with the predicted rate ||u1' u3'||_2"
            }
            ExperimentKind::Besov => {
                "dyadic Besov seminorm probe agrees with Holder seminorms at the matching scale"
            }
            ExperimentKind::SpectralSelftest => {
                "Hilbert/|D| multipliers and the principal-value expansion satisfy their identities"
            }
            ExperimentKind::Kh2d => {
                "2d sheet linearization grows at sigma ~ |k|: Hadamard instability, elliptic symbol"
            }
            ExperimentKind::Kh3d => {
                "3d sheet linearization spectrum is {0, 0, +-|k^w|/2}; ellipticity fails along k || w"
            }
            ExperimentKind::Sheet => {
                "Biot-Savart velocities of vortex sheets satisfy the jump and tangency relations"
            }
            ExperimentKind::Example1 => {
                "two-level shear flow concentrates vorticity on three planar pieces with a corner"
            }
            ExperimentKind::Example2 => {
                "graph sheet x1 = t u1(x2) carries a unit tangent vorticity density plus a bulk part"
            }
        }
    }
}

/// Profile catalog entry addressable by kind + parameters.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Cusp {
        alpha: f64,
    },
    Trig {
        k: i32,
        #[serde(default)]
        phase: f64,
    },
    Step {
        below: f64,
        above: f64,
        jump: f64,
    },
    SinInverse {
        #[serde(default = "default_cutoff")]
        cutoff: f64,
    },
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        levels: Vec<f64>,
    },
    Sampled {
        values: Vec<f64>,
        order: usize,
    },
    /// Convenience alias for a single-level piecewise constant.
    Constant {
        value: f64,
    },
}

fn default_cutoff() -> f64 {
    0.25
}

impl ProfileSpec {
    pub fn build(&self) -> Result<ProfileFunction, String> {
        let p = match self {
            ProfileSpec::Cusp { alpha } => ProfileFunction::Cusp { alpha: *alpha },
            ProfileSpec::Trig { k, phase } => ProfileFunction::Trig {
                k: *k,
                phase: *phase,
            },
            ProfileSpec::Step { below, above, jump } => ProfileFunction::Step {
                below: *below,
                above: *above,
                jump: *jump,
            },
            ProfileSpec::SinInverse { cutoff } => ProfileFunction::SinInverse { cutoff: *cutoff },
            ProfileSpec::PiecewiseConstant {
                breakpoints,
                levels,
            } => ProfileFunction::PiecewiseConstant {
                breakpoints: breakpoints.clone(),
                levels: levels.clone(),
            },
            ProfileSpec::Sampled { values, order } => ProfileFunction::Sampled {
                values: values.clone(),
                order: *order,
            },
            ProfileSpec::Constant { value } => ProfileFunction::constant(*value),
        };
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Profiles {
    pub u1: Option<ProfileSpec>,
    pub u3: Option<ProfileSpec>,
}

/// Numeric parameters. Every field is optional; each experiment supplies
/// its own canonical default for the fields it reads, so a minimal config
/// reproduces the standard run of that experiment. Unknown keys are
/// rejected.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Spatial grid size per axis (sample count for 1d estimators).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Gauss-Legendre order for time integrals.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Time horizon of the residual quadratures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    /// Number of test functions in a generated basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    /// Largest wavevector component of generated test functions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_mode: Option<i32>,
    /// Times at which time-dependent quantities are evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_list: Option<Vec<f64>>,
    /// Largest 2d mode number in growth-rate sweeps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<i32>,
    /// Holder exponents of the cusp profiles under study.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    /// Sobolev integrability exponent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Besov regularity parameter.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    /// Largest dyadic block index.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    /// Sheet quadrature node count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Probe distances for jump checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas: Option<Vec<f64>>,
    /// Expansion parameter (sheet amplitude / oracle epsilon).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Random sample count for parameter sweeps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Wavenumber magnitude for the 3d stability matrix.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kmag: Option<f64>,
    /// In-plane background vorticity density (3d sheet).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<[f64; 2]>,
    /// Background vorticity density (2d sheet strength).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    /// Number of direction samples in ellipticity scans.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub directions: Option<usize>,
    /// Evaluation time for geometry experiments.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub out_dir: Option<String>,
    #[serde(default)]
    pub profiles: Profiles,
    #[serde(default)]
    pub params: Params,
}

fn default_seed() -> u64 {
    42
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Semantic validation beyond the schema.
    pub fn validate(&self) -> Result<(), String> {
        let p = &self.params;
        if let Some(n) = p.n {
            if n < 4 {
                return Err(format!("params.n must be >= 4, got {n}"));
            }
        }
        if let Some(q) = p.q {
            if q < 2 {
                return Err(format!("params.q must be >= 2, got {q}"));
            }
        }
        if let Some(t_end) = p.t_end {
            if t_end <= 0.0 {
                return Err("params.t_end must be positive".into());
            }
        }
        if let Some(mm) = p.max_mode {
            if mm < 1 {
                return Err("params.max_mode must be >= 1".into());
            }
        }
        if let Some(m) = p.m {
            if m < 8 || !m.is_multiple_of(2) {
                return Err("params.m must be even and >= 8".into());
            }
        }
        if let Some(spec) = &self.profiles.u1 {
            spec.build()?;
        }
        if let Some(spec) = &self.profiles.u3 {
            spec.build()?;
        }
        Ok(())
    }

    pub fn profile_u1(&self, default: ProfileFunction) -> Result<ProfileFunction, String> {
        match &self.profiles.u1 {
            Some(spec) => spec.build(),
            None => Ok(default),
        }
    }

    pub fn profile_u3(&self, default: ProfileFunction) -> Result<ProfileFunction, String> {
        match &self.profiles.u3 {
            Some(spec) => spec.build(),
            None => Ok(default),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_parses_with_defaults() {
        let cfg = ExperimentConfig::from_toml("experiment = \"holder\"").unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::Holder);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.params.n, None);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(ExperimentConfig::from_toml("experiment = \"holder\"\nbogus = 1").is_err());
        assert!(
            ExperimentConfig::from_toml("experiment = \"holder\"\n[params]\nmystery = 2").is_err()
        );
        assert!(ExperimentConfig::from_toml(
            "experiment = \"holder\"\n[profiles.u1]\nkind = \"cusp\"\nalpha = 0.5\nextra = 1"
        )
        .is_err());
    }

    #[test]
    fn semantic_validation_fires() {
        assert!(ExperimentConfig::from_toml("experiment = \"holder\"\n[params]\nn = 2").is_err());
        assert!(ExperimentConfig::from_toml(
            "experiment = \"holder\"\n[profiles.u1]\nkind = \"cusp\"\nalpha = 1.5"
        )
        .is_err());
    }

    #[test]
    fn twelve_experiments_in_catalog() {
        assert_eq!(ExperimentKind::ALL.len(), 12);
        let names: Vec<&str> = ExperimentKind::ALL.iter().map(|e| e.name()).collect();
        assert!(names.contains(&"weak-check"));
        assert!(names.contains(&"spectral-selftest"));
        assert!(names.contains(&"example2"));
    }
}
