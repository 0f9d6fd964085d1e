//! Vortex-sheet experiments: Biot-Savart velocities of flat and near-flat
//! sheets, jump relations, and the two singular-support geometries.

use super::ExperimentOutput;
use crate::config::ExperimentConfig;
use crate::output::{num, text, CsvTable, Plot, Scale, Series};
use crate::par::map_indexed;
use crate::report::CaseResult;
use shearlab_core::field::ProfileFunction;
use shearlab_core::sheet::{
    average_velocity_on_sheet, biot_savart_2d, example1_surface, example2_vorticity, jump_check,
    Example1Params, Harmonic, SheetCurve2D, SheetDensity, SheetShape,
};
use shearlab_core::spectral::{abs_derivative, SpectralField};
use shearlab_core::weak_form::divergence_residual;

pub fn sheet(config: &ExperimentConfig, threads: usize) -> Result<ExperimentOutput, String> {
    let p = &config.params;
    let m = p.m.unwrap_or(256);
    let omega0 = p.omega0.unwrap_or(1.0);
    let eps = p.eps.unwrap_or(1e-3);
    let deltas = p.deltas.clone().unwrap_or(vec![0.05, 0.025, 0.0125]);

    let mut out = ExperimentOutput::new();

    // Flat uniform sheet: far field is -+ Omega0/2 and the on-sheet
    // averaged velocity vanishes.
    let flat = SheetCurve2D::new(m, SheetShape::Flat, SheetDensity::Uniform(omega0)).map_err(err)?;
    let above = biot_savart_2d(&flat, [0.3, 0.25]).map_err(err)?;
    let below = biot_savart_2d(&flat, [0.8, -0.4]).map_err(err)?;
    let far_err = (above[0] + 0.5 * omega0)
        .abs()
        .max(above[1].abs())
        .max((below[0] - 0.5 * omega0).abs())
        .max(below[1].abs());
    out.cases
        .push(CaseResult::le("flat-far-field-error", far_err, 1e-8));

    let lambdas: Vec<f64> = (0..m).step_by(m / 16).map(|j| j as f64 / m as f64).collect();
    let avg = map_indexed(threads, &lambdas, |&l| average_velocity_on_sheet(&flat, l));
    let worst_avg = avg
        .iter()
        .map(|v| (v[0] * v[0] + v[1] * v[1]).sqrt())
        .fold(0.0f64, f64::max);
    out.cases
        .push(CaseResult::le("flat-averaged-velocity", worst_avg, 1e-8));

    let jc = jump_check(&flat, 0.3, deltas[0]).map_err(err)?;
    out.cases
        .push(CaseResult::le("flat-normal-jump", jc.normal_jump.abs(), 1e-8));
    out.cases.push(CaseResult::le(
        "flat-density-residual",
        jc.density_residual,
        1e-6,
    ));
    out.cases.push(CaseResult::le(
        "flat-tangential-jump-error",
        (jc.tangential_jump - omega0.abs()).abs(),
        1e-6,
    ));

    // Near-flat sheet: tangential averaged velocity linearizes through the
    // |D| multiplier with the same kernel normalization.
    let wavy = SheetCurve2D::new(
        m,
        SheetShape::Graph {
            harmonics: vec![Harmonic {
                amp: eps,
                mode: 1,
                phase: 0.0,
            }],
        },
        SheetDensity::Uniform(omega0),
    )
    .map_err(err)?;
    let elevation: Vec<f64> = (0..m).map(|j| wavy.elevation(j as f64 / m as f64)).collect();
    let dy = abs_derivative(&SpectralField::from_samples(&elevation).map_err(err)?).to_samples();
    let mut vel_table = CsvTable::new("sheet-velocity", &["lambda", "v1", "v2"]);
    let nodes: Vec<usize> = (0..m).collect();
    let vels = map_indexed(threads, &nodes, |&j| {
        average_velocity_on_sheet(&wavy, j as f64 / m as f64)
    });
    let mut lin_err = 0.0f64;
    let mut pts_v1 = Vec::new();
    for (j, v) in vels.iter().enumerate() {
        let l = j as f64 / m as f64;
        vel_table.push(&[num(l), num(v[0]), num(v[1])]);
        lin_err = lin_err.max((v[0] - (-0.5 * omega0 * dy[j])).abs());
        pts_v1.push((l, v[0]));
    }
    out.cases.push(
        CaseResult::le("near-flat-linearization-error", lin_err, 1e-4)
            .with_note("v1 vs -(eps/2) Omega0 |D| elevation via the multiplier route"),
    );

    // Jump residuals decay linearly in the probe distance.
    let mut jump_table = CsvTable::new(
        "jump-convergence",
        &["delta", "normal_jump", "tangential_jump", "density_residual"],
    );
    let lambda0 = 0.21;
    let mut normal_seq = Vec::new();
    for &d in &deltas {
        let jc = jump_check(&wavy, lambda0, d).map_err(err)?;
        jump_table.push(&[
            num(d),
            num(jc.normal_jump),
            num(jc.tangential_jump),
            num(jc.density_residual),
        ]);
        normal_seq.push(jc.normal_jump.abs());
    }
    let mut worst_ratio: f64 = 0.0;
    for w in normal_seq.windows(2) {
        worst_ratio = worst_ratio.max(w[1] / w[0]);
    }
    out.cases.push(
        CaseResult::le("jump-residual-decay-ratio", worst_ratio, 0.8)
            .with_note("normal jump must shrink roughly linearly with delta"),
    );

    let chord_arc = wavy.chord_arc_constant();
    out.cases
        .push(CaseResult::le("chord-arc-constant", chord_arc, 1.1));

    // Sinusoidal density on the flat sheet decays like the first harmonic.
    let harmonic_density = SheetCurve2D::new(
        m,
        SheetShape::Flat,
        SheetDensity::Harmonic {
            mean: 0.0,
            amp: 1.0,
            mode: 1,
            phase: 0.0,
        },
    )
    .map_err(err)?;
    let speed = |x2: f64| -> Result<f64, String> {
        let u = biot_savart_2d(&harmonic_density, [0.0, x2]).map_err(err)?;
        Ok((u[0] * u[0] + u[1] * u[1]).sqrt())
    };
    let ratio = speed(1.0)? / speed(0.5)?;
    let expect = (-std::f64::consts::PI).exp();
    out.cases.push(CaseResult::le(
        "harmonic-density-decay-error",
        (ratio / expect - 1.0).abs(),
        0.05,
    ));

    out.tables.push(vel_table);
    out.tables.push(jump_table);
    out.plots.push((
        "sheet-velocity".into(),
        Plot {
            title: format!("averaged tangential velocity on the near-flat sheet (m={m})"),
            x_scale: Scale::Linear,
            y_scale: Scale::Linear,
            series: vec![Series {
                label: "v1(lambda)".into(),
                points: pts_v1,
            }],
        },
    ));
    Ok(out)
}

pub fn example1(config: &ExperimentConfig) -> Result<ExperimentOutput, String> {
    let p = &config.params;
    let t = p.t.unwrap_or(0.25);
    let n = p.n.unwrap_or(256);
    let params = Example1Params {
        alpha1: 1.0,
        beta1: 0.0,
        alpha3: 1.0,
        beta3: 0.0,
        xi1: 0.5,
        xi2: 0.5,
    };
    let surface = example1_surface(params, t).map_err(err)?;

    let mut out = ExperimentOutput::new();
    out.texts.push(("surface".into(), surface.describe()));

    // Membership probes against the closed-form description.
    let mut probe_table = CsvTable::new(
        "membership",
        &["x1", "x2", "x3", "expected", "actual"],
    );
    let probes: Vec<([f64; 3], bool)> = vec![
        ([surface.x1_lower, 0.3, 0.0], true),
        ([surface.x1_lower, 0.3, 5.7], true),
        ([surface.x1_lower, 0.7, 0.0], surface.x1_lower == surface.x1_upper),
        ([surface.x1_upper, 0.7, 0.2], true),
        ([0.123, params.xi2, 0.9], true),
        ([0.2, 0.2, 0.2], false),
    ];
    let mut mismatches = 0i64;
    for (x, expected) in &probes {
        let actual = surface.contains(*x, 1e-12);
        if actual != *expected {
            mismatches += 1;
        }
        probe_table.push(&[
            num(x[0]),
            num(x[1]),
            num(x[2]),
            text(if *expected { "member" } else { "outside" }),
            text(if actual { "member" } else { "outside" }),
        ]);
    }
    out.cases.push(CaseResult::le(
        "membership-mismatches",
        mismatches as f64,
        0.0,
    ));

    // Piece offsets advect with the two levels of u1.
    let off_err = (surface.x1_lower - (params.xi1 + t * params.alpha1).rem_euclid(1.0))
        .abs()
        .max((surface.x1_upper - (params.xi1 + t * params.beta1).rem_euclid(1.0)).abs());
    out.cases
        .push(CaseResult::le("piece-offset-error", off_err, 1e-14));

    // The carrying flow stays weakly divergence-free on the grid.
    let flow = surface.step_flow();
    let div = divergence_residual(&flow, t, n);
    out.cases
        .push(CaseResult::le("flow-divergence-residual", div, 1e-3));

    out.tables.push(probe_table);
    Ok(out)
}

pub fn example2(config: &ExperimentConfig) -> Result<ExperimentOutput, String> {
    let p = &config.params;
    let t_list = p.t_list.clone().unwrap_or(vec![0.0, 0.5, 1.0, 2.0]);
    let n = p.n.unwrap_or(16);

    let u1 = config.profile_u1(ProfileFunction::Trig { k: 1, phase: 0.0 })?;

    let mut out = ExperimentOutput::new();
    let mut table = CsvTable::new(
        "sheet-density",
        &["t", "x2", "d1", "d2", "d3", "bulk", "tangency_residual"],
    );
    let mut worst_tangency = 0.0f64;
    let mut worst_norm = 0.0f64;
    for &t in &t_list {
        for j in 0..n {
            let x2 = shearlab_core::quad::grid_node(j, n);
            let v = example2_vorticity(&u1, t, x2).map_err(err)?;
            table.push(&[
                num(t),
                num(x2),
                num(v.density[0]),
                num(v.density[1]),
                num(v.density[2]),
                num(v.bulk),
                num(v.tangency_residual),
            ]);
            worst_tangency = worst_tangency.max(v.tangency_residual);
            let norm2 = v.density[0] * v.density[0] + v.density[1] * v.density[1];
            worst_norm = worst_norm.max((norm2 - 1.0).abs());
        }
    }
    out.cases
        .push(CaseResult::le("tangency-residual", worst_tangency, 1e-12));
    out.cases
        .push(CaseResult::le("unit-normalization-error", worst_norm, 1e-14));

    // At t = 0 the sheet is the plane x1 = 0 and the density is vertical.
    let v0 = example2_vorticity(&u1, 0.0, 0.37).map_err(err)?;
    let vertical_err = v0.density[0]
        .abs()
        .max((v0.density[1] - 1.0).abs())
        .max(v0.density[2].abs());
    out.cases
        .push(CaseResult::le("time-zero-density-error", vertical_err, 1e-15));

    out.tables.push(table);
    Ok(out)
}

fn err(e: shearlab_core::Error) -> String {
    e.to_string()
}
