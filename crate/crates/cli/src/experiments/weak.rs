//! Weak-form experiments: residual decay for the two-level flow against a
//! seeded divergence-free basis, and the change-of-variables identity for
//! rough profile pairs.

use super::ExperimentOutput;
use crate::config::ExperimentConfig;
use crate::output::{int, num, CsvTable, Plot, Scale, Series};
use crate::report::CaseResult;
use shearlab_core::field::{ProfileFunction, ShearFlow};
use shearlab_core::weak_form::{
    divergence_residual, fubini_check, generate_test_basis, weak_residual_basis, FubiniFactors,
    QuadratureSpec, TimeWindow, TrigFactor,
};

fn two_level_default() -> ProfileFunction {
    ProfileFunction::Step {
        below: 1.0,
        above: 0.0,
        jump: 0.5,
    }
}

pub fn weak_check(config: &ExperimentConfig, _threads: usize) -> Result<ExperimentOutput, String> {
    let p = &config.params;
    let n = p.n.unwrap_or(256);
    let q = p.q.unwrap_or(16);
    let t_end = p.t_end.unwrap_or(1.0);
    let count = p.count.unwrap_or(20);
    let max_mode = p.max_mode.unwrap_or(3);

    let flow = ShearFlow::new(
        config.profile_u1(two_level_default())?,
        config.profile_u3(two_level_default())?,
    );
    let phis = generate_test_basis(max_mode, count, config.seed);

    let mut out = ExperimentOutput::new();
    let mut table = CsvTable::new("residuals", &["phi", "n", "q", "residual"]);
    let mut coarse_pts = Vec::new();
    let mut fine_pts = Vec::new();

    let coarse = weak_residual_basis(&flow, &phis, &QuadratureSpec::new(n, q, t_end).map_err(err)?);
    let fine = weak_residual_basis(
        &flow,
        &phis,
        &QuadratureSpec::new(2 * n, q, t_end).map_err(err)?,
    );
    for (i, r) in coarse.iter().enumerate() {
        table.push(&[int(i as i64), int(n as i64), int(q as i64), num(*r)]);
        coarse_pts.push((i as f64, r.abs().max(1e-18)));
    }
    let mut unsettled = 0usize;
    for (i, r) in fine.iter().enumerate() {
        table.push(&[int(i as i64), int(2 * n as i64), int(q as i64), num(*r)]);
        fine_pts.push((i as f64, r.abs().max(1e-18)));
        if coarse[i] != 0.0 && (r - coarse[i]).abs() > 0.5 * coarse[i].abs() {
            unsettled += 1;
        }
    }
    if unsettled > 0 {
        out.warnings.push(format!(
            "{unsettled} of {} test functions: residual changed by more than 50% when doubling n \
             (per-phi values at n = {n} are quadrature-dominated; expected while the residual decays toward zero)",
            phis.len()
        ));
    }

    let max_coarse = coarse.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let max_fine = fine.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let rms = |rs: &[f64]| (rs.iter().map(|r| r * r).sum::<f64>() / rs.len() as f64).sqrt();
    out.cases
        .push(CaseResult::le(format!("max-residual-n{n}"), max_coarse, 1e-3));
    out.cases
        .push(CaseResult::le(format!("rms-residual-n{n}"), rms(&coarse), 1e-3));
    out.cases.push(
        CaseResult::le(
            "refinement-ratio",
            if max_coarse > 0.0 {
                max_fine / max_coarse
            } else {
                0.0
            },
            0.6,
        )
        .with_note("max |R| must drop by at least 40% when n doubles"),
    );
    // Distributional divergence, checked on the same grid.
    let div = divergence_residual(&flow, 0.25, n);
    out.cases
        .push(CaseResult::le("divergence-residual", div, 1e-3));

    out.tables.push(table);
    out.plots.push((
        "residuals".into(),
        Plot {
            title: format!("weak residual |R| per test function (n={n} vs {})", 2 * n),
            x_scale: Scale::Linear,
            y_scale: Scale::Log10,
            series: vec![
                Series {
                    label: format!("n = {n}"),
                    points: coarse_pts,
                },
                Series {
                    label: format!("n = {}", 2 * n),
                    points: fine_pts,
                },
            ],
        },
    ));
    Ok(out)
}

pub fn fubini(config: &ExperimentConfig) -> Result<ExperimentOutput, String> {
    let p = &config.params;
    let n = p.n.unwrap_or(512);
    let q = p.q.unwrap_or(16);
    let t_end = p.t_end.unwrap_or(1.0);

    let u1 = config.profile_u1(two_level_default())?;
    let u3 = config.profile_u3(ProfileFunction::SinInverse { cutoff: 0.25 })?;
    // Three single-mode factors; the x3 factor is the k = 0 mode (a
    // constant), since nothing depends on x3 and a mean-free factor would
    // annihilate both sides.
    let factors = FubiniFactors {
        phi1: TrigFactor {
            mean: 0.0,
            amp: 1.0,
            k: 1,
            phase: 0.0,
        },
        phi2: TrigFactor {
            mean: 0.0,
            amp: 1.0,
            k: 1,
            phase: 0.0,
        },
        phi3: TrigFactor {
            mean: 1.0,
            amp: 0.0,
            k: 0,
            phase: 0.0,
        },
        window: TimeWindow::new(0.8),
    };

    let mut out = ExperimentOutput::new();
    let mut table = CsvTable::new("fubini", &["n", "q", "lhs", "rhs", "gap"]);
    let mut gaps = Vec::new();
    for grid in [n, 2 * n] {
        let quad = QuadratureSpec::new(grid, q, t_end).map_err(err)?;
        let (lhs, rhs) = fubini_check(&u1, &u3, &factors, &quad);
        let gap = (lhs - rhs).abs();
        table.push(&[
            int(grid as i64),
            int(q as i64),
            num(lhs),
            num(rhs),
            num(gap),
        ]);
        gaps.push((grid as f64, gap.max(1e-18)));
    }
    out.cases
        .push(CaseResult::le(format!("identity-gap-n{n}"), gaps[0].1, 1e-4));
    out.cases.push(
        CaseResult::le(
            "gap-refinement-ratio",
            if gaps[0].1 > 0.0 { gaps[1].1 / gaps[0].1 } else { 0.0 },
            1.0,
        )
        .with_note("the identity gap must not grow under refinement"),
    );
    out.tables.push(table);
    out.plots.push((
        "fubini".into(),
        Plot {
            title: "change-of-variables identity gap vs grid".into(),
            x_scale: Scale::Log10,
            y_scale: Scale::Log10,
            series: vec![Series {
                label: "|lhs - rhs|".into(),
                points: gaps,
            }],
        },
    ));
    Ok(out)
}

fn err(e: shearlab_core::Error) -> String {
    e.to_string()
}
