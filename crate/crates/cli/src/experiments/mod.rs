//! The experiment catalog: each experiment wires core operations into a
//! reproducible run with declared tolerances, CSV tables and plots.

mod kh_exp;
mod norms_exp;
mod sheet_exp;
mod spectral_exp;
mod weak;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::output::{CsvTable, Plot};
use crate::report::CaseResult;

pub struct ExperimentOutput {
    pub cases: Vec<CaseResult>,
    pub tables: Vec<CsvTable>,
    pub plots: Vec<(String, Plot)>,
    /// Free-form artifacts (name, content), e.g. surface descriptions.
    pub texts: Vec<(String, String)>,
    /// Non-fatal warnings surfaced in the run log.
    pub warnings: Vec<String>,
}

impl ExperimentOutput {
    pub fn new() -> Self {
        ExperimentOutput {
            cases: Vec::new(),
            tables: Vec::new(),
            plots: Vec::new(),
            texts: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

pub fn run(config: &ExperimentConfig, threads: usize) -> Result<ExperimentOutput, String> {
    match config.experiment {
        ExperimentKind::WeakCheck => weak::weak_check(config, threads),
        ExperimentKind::Fubini => weak::fubini(config),
        ExperimentKind::Holder => norms_exp::holder(config, threads),
        ExperimentKind::Energy => norms_exp::energy(config, threads),
        ExperimentKind::W1pGrowth => norms_exp::w1p_growth(config),
        ExperimentKind::Besov => norms_exp::besov(config),
        ExperimentKind::SpectralSelftest => spectral_exp::selftest(config),
        ExperimentKind::Kh2d => kh_exp::kh2d(config),
        ExperimentKind::Kh3d => kh_exp::kh3d(config, threads),
        ExperimentKind::Sheet => sheet_exp::sheet(config, threads),
        ExperimentKind::Example1 => sheet_exp::example1(config),
        ExperimentKind::Example2 => sheet_exp::example2(config),
    }
}
