//! Configuration-driven experiment runner: `shearlab run --config <toml>`
//! executes one experiment, writes CSV tables, SVG plots and a JSON report
//! into the output directory, and exits 0 only if every declared tolerance
//! passes. `shearlab list` prints the experiment catalog.

mod config;
mod experiments;
mod output;
mod par;
mod report;

use clap::{Parser, Subcommand};
use config::{ExperimentConfig, ExperimentKind};
use report::RunReport;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "shearlab", version, about = "Shear-flow verification experiments on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a TOML config.
    Run {
        /// Path to the experiment configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config's out_dir).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed override (overrides the config's seed).
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads for embarrassingly parallel sweeps.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// List the experiment catalog.
    List,
}

const EXIT_EXPERIMENT_FAILED: u8 = 1;
const EXIT_CONFIG_INVALID: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            for kind in ExperimentKind::ALL {
                println!("{:18} {}", kind.name(), kind.claim());
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            config,
            out,
            seed,
            threads,
        } => run(&config, out.as_deref(), seed, threads),
    }
}

fn run(config_path: &Path, out: Option<&Path>, seed: Option<u64>, threads: usize) -> ExitCode {
    // Validation happens before any file is created, so an invalid config
    // leaves no partial output behind.
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("config invalid: cannot read {}: {e}", config_path.display());
            return ExitCode::from(EXIT_CONFIG_INVALID);
        }
    };
    let mut cfg = match ExperimentConfig::from_toml(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config invalid: {e}");
            return ExitCode::from(EXIT_CONFIG_INVALID);
        }
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let out_dir: PathBuf = match out {
        Some(p) => p.to_path_buf(),
        None => cfg
            .out_dir
            .clone()
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("runs").join(cfg.experiment.name())),
    };

    let started = Instant::now();
    let result = match experiments::run(&cfg, threads) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("experiment failed: {e}");
            return ExitCode::from(EXIT_EXPERIMENT_FAILED);
        }
    };
    let elapsed = started.elapsed();

    // Assemble artifact names first so the report can list them.
    let exp = cfg.experiment.name();
    let mut artifacts: Vec<String> = Vec::new();
    for table in &result.tables {
        artifacts.push(format!("results-{}-{}.csv", exp, table.name));
    }
    for (name, _) in &result.plots {
        artifacts.push(format!("plot-{exp}-{name}.svg"));
    }
    for (name, _) in &result.texts {
        artifacts.push(format!("{exp}-{name}.txt"));
    }
    artifacts.push("report.json".into());

    let report = RunReport::new(&cfg, result.cases.clone(), artifacts);

    if let Err(e) = write_outputs(&out_dir, &report, &result) {
        eprintln!("experiment failed: cannot write outputs: {e}");
        return ExitCode::from(EXIT_EXPERIMENT_FAILED);
    }

    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    for case in &report.cases {
        println!(
            "{} {} = {:e} ({} {:e})",
            if case.pass { "pass" } else { "FAIL" },
            case.id,
            case.value,
            if case.direction == "max" { "<=" } else { ">=" },
            case.tolerance
        );
    }
    eprintln!(
        "{exp}: {} cases, {} in {:.2?} -> {}",
        report.cases.len(),
        if report.passed { "all passed" } else { "FAILED" },
        elapsed,
        out_dir.display()
    );

    if let Some(failing) = report.failing_case() {
        eprintln!("criterion failed: {}", failing.id);
        return ExitCode::from(EXIT_EXPERIMENT_FAILED);
    }
    ExitCode::SUCCESS
}

fn write_outputs(
    out_dir: &Path,
    report: &RunReport,
    result: &experiments::ExperimentOutput,
) -> std::io::Result<()> {
    std::fs::create_dir_all(out_dir)?;
    let exp = report.experiment;
    for table in &result.tables {
        std::fs::write(
            out_dir.join(format!("results-{}-{}.csv", exp, table.name)),
            table.render(),
        )?;
    }
    for (name, plot) in &result.plots {
        std::fs::write(out_dir.join(format!("plot-{exp}-{name}.svg")), plot.render())?;
    }
    for (name, content) in &result.texts {
        std::fs::write(out_dir.join(format!("{exp}-{name}.txt")), content)?;
    }
    std::fs::write(out_dir.join("report.json"), report.to_json())?;
    Ok(())
}
