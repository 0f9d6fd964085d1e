//! Numerical laboratory for shear-flow solutions of the 3d incompressible
//! Euler equations on the unit torus.
//!
//! The crate evaluates explicit shear-flow velocity fields built from a
//! catalog of smooth and rough profiles, measures how well they satisfy the
//! weak Euler formulation by quadrature, estimates Holder/Sobolev/Besov
//! norms and their growth in time, analyzes the linearized Kelvin-Helmholtz
//! operators in 2d and 3d, and evaluates Biot-Savart velocities of vortex
//! sheets by principal-value quadrature.

pub mod error;
pub mod field;
pub mod kh;
pub mod linalg;
pub mod norms;
pub mod quad;
pub mod rng;
pub mod sheet;
pub mod spectral;
pub mod weak_form;

pub use error::{Error, Result};
pub use field::{Mat3, Point3, ProfileFunction, ShearFlow, Vec3};
pub use kh::{Mode2D, ModeConvention, SpectrumReport, StabilityMatrix3D};
pub use norms::{ModulusEstimate, Sampled1D};
pub use sheet::{Example1Params, Example1Surface, SheetCurve2D, SingularSurface};
pub use spectral::{PeriodicGrid, SpectralField};
pub use weak_form::{QuadratureSpec, TestFunction, TimeWindow, VectorMode};
