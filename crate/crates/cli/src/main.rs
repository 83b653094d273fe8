//! gaplab: spectral gaps of barrier tunneling in symmetric-qubit
//! adiabatic optimization, three ways (exact tridiagonal, continuum
//! model, closed-form asymptotics), with deterministic CSV/JSON output.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gaplab_core::barrier::{BarrierSpec, Shape};
use gaplab_core::exec::with_workers;
use gaplab_core::gapscan::{critical_s, gap_at, min_gap};
use gaplab_core::hamiltonian::build_symmetric;
use gaplab_core::model::{
    asymptotic_gap, classify_region, model_wavefunction, solve_levels, ModelParams, Parity,
};
use gaplab_core::scaling::{run_study, SPolicy};
use gaplab_core::specfun::pcf_d;
use gaplab_core::villain::{delta_constant, semiclassical_potential, verify_jx_identity};

use crate::config::Config;
use crate::output::{csv_document, field, json_document, write_text};

#[derive(Parser)]
#[command(name = "gaplab", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ShapeArg {
    Rectangular,
    Gaussian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    /// Evaluate the discrete gap at s* exactly.
    CriticalS,
    /// Search the full schedule for the global minimum per n.
    GlobalMin,
}

/// Barrier parameters shared by every physics subcommand. A --config
/// file may supply any of them; explicit flags win.
#[derive(Args, Clone)]
struct BarrierArgs {
    /// Width exponent: barrier width is width-scale * (n/2)^alpha sites.
    #[arg(long)]
    alpha: Option<f64>,
    /// Height exponent: barrier height is height-scale * (n/2)^beta.
    #[arg(long)]
    beta: Option<f64>,
    /// Bump profile.
    #[arg(long, value_enum)]
    shape: Option<ShapeArg>,
    /// Barrier center as a fraction of n (the model assumes 1/4).
    #[arg(long)]
    center: Option<f64>,
    /// Height prefactor; 0 switches the barrier off entirely.
    #[arg(long = "height-scale")]
    height_scale: Option<f64>,
    /// Width prefactor.
    #[arg(long = "width-scale")]
    width_scale: Option<f64>,
    /// Continuum override: full bump width in x (half-width a = w/2).
    #[arg(long = "override-width")]
    override_width: Option<f64>,
    /// Continuum override: bump height in the model potential.
    #[arg(long = "override-height")]
    override_height: Option<f64>,
    /// Flat key-value file supplying defaults for the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Drop the tool-version metadata header for byte-diffable output.
    #[arg(long = "no-meta")]
    no_meta: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral gap of the (n+1)-dimensional Hamiltonian at one schedule point.
    Gap {
        /// Number of qubits.
        #[arg(long)]
        n: u64,
        /// Schedule point in [0, 1].
        #[arg(long)]
        s: f64,
        /// Also dump the tridiagonal matrix (CSV: diag, offdiag).
        #[arg(long = "dump-matrix")]
        dump_matrix: Option<PathBuf>,
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Global minimum gap over the schedule, plus the gap at s*.
    MinGap {
        /// Number of qubits.
        #[arg(long)]
        n: u64,
        /// Coarse scan points over [0.01, 0.99].
        #[arg(long = "coarse-points", default_value_t = 200)]
        coarse_points: usize,
        /// Golden-section refinement width in s.
        #[arg(long = "refine-tol", default_value_t = 1e-5)]
        refine_tol: f64,
        /// Also write the coarse scan as CSV
        /// (s, lambda0, lambda1, gap, precision_flag).
        #[arg(long = "scan-csv")]
        scan_csv: Option<PathBuf>,
        /// Worker threads for the scan (default: all cores or GAPLAB_WORKERS).
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Level pair and gap of the continuum quadratic-well model.
    ModelGap {
        /// Number of qubits (sets epsilon = 2/n).
        #[arg(long, conflicts_with = "epsilon")]
        n: Option<u64>,
        /// Semiclassical parameter in (0, 1).
        #[arg(long)]
        epsilon: Option<f64>,
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form leading-order gap for the barrier exponents.
    Asymptotic {
        /// Number of qubits (sets epsilon = 2/n).
        #[arg(long, conflicts_with = "epsilon")]
        n: Option<u64>,
        /// Semiclassical parameter in (0, 1).
        #[arg(long)]
        epsilon: Option<f64>,
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Scaling region of the (alpha, beta) plane with predicted exponents.
    Classify {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// n-sweep of discrete/model/asymptotic gaps with a fitted law.
    Study {
        /// Smallest n of the sweep (>= 10).
        #[arg(long = "n-min")]
        n_min: u64,
        /// Largest n of the sweep.
        #[arg(long = "n-max")]
        n_max: u64,
        /// Geometric grid size; n values are rounded to even integers.
        #[arg(long, default_value_t = 7)]
        points: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::CriticalS)]
        policy: PolicyArg,
        /// Include the exact tridiagonal gaps (slow for large n).
        #[arg(long)]
        discrete: bool,
        /// Write the fit and region as a JSON sidecar.
        #[arg(long = "fit-json")]
        fit_json: Option<PathBuf>,
        /// Write a matplotlib script that plots the study CSV.
        #[arg(long = "emit-plot")]
        emit_plot: Option<PathBuf>,
        /// Write the resolved barrier back out as a loadable config file.
        #[arg(long = "emit-config")]
        emit_config: Option<PathBuf>,
        /// Worker threads for the sweep (default: all cores or GAPLAB_WORKERS).
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Piecewise model eigenfunction sampled on a grid (CSV: x, psi).
    Wavefunction {
        /// Number of qubits (sets epsilon = 2/n).
        #[arg(long, conflicts_with = "epsilon")]
        n: Option<u64>,
        /// Semiclassical parameter in (0, 1).
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum)]
        parity: ParityArg,
        /// Half-width of the export window; defaults to four Gaussian
        /// widths of the harmonic ground state.
        #[arg(long = "x-max")]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 801)]
        points: usize,
        #[command(flatten)]
        barrier: BarrierArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exactness table for the spin-operator reconstruction identity.
    VillainCheck {
        /// Comma-separated list of spins J (half-integers allowed as 2J/2).
        #[arg(long = "J", value_delimiter = ',')]
        j_values: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Parabolic cylinder function D_nu(z) and derivative (debug aid).
    Pcf {
        /// Order, in [-1, 6].
        #[arg(long)]
        nu: f64,
        /// Argument, in [-30, 30].
        #[arg(long)]
        z: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum AppError {
    /// Invalid flag combination or value: exit code 2, nothing computed.
    Usage(String),
    /// A solver or I/O failure during computation: exit code 1.
    Computation(String),
}

impl From<gaplab_core::Error> for AppError {
    fn from(e: gaplab_core::Error) -> Self {
        AppError::Computation(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, AppError> {
    Err(AppError::Usage(msg.into()))
}

fn resolve_barrier(args: &BarrierArgs) -> Result<BarrierSpec, AppError> {
    let cfg = match &args.config {
        Some(path) => Config::load(path).map_err(AppError::Usage)?,
        None => Config::empty(),
    };
    let num = |flag: Option<f64>, key: &str| -> Result<Option<f64>, AppError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => cfg.get_f64(key).map_err(AppError::Usage),
        }
    };
    let shape = match args.shape {
        Some(ShapeArg::Rectangular) => Shape::Rectangular,
        Some(ShapeArg::Gaussian) => Shape::Gaussian,
        None => match cfg.get_str("shape") {
            Some("rectangular") | None => Shape::Rectangular,
            Some("gaussian") => Shape::Gaussian,
            Some(other) => return usage(format!("unknown shape in config: {other}")),
        },
    };
    let override_width = num(args.override_width, "override-width")?;
    let override_height = num(args.override_height, "override-height")?;
    let explicit_override = match (override_width, override_height) {
        (None, None) => None,
        (Some(w), Some(v)) => Some((0.5 * w, v)),
        _ => {
            return usage("override-width and override-height must be given together");
        }
    };
    let spec = BarrierSpec {
        alpha: num(args.alpha, "alpha")?.unwrap_or(0.0),
        beta: num(args.beta, "beta")?.unwrap_or(0.0),
        shape,
        center_fraction: num(args.center, "center")?.unwrap_or(0.25),
        height_scale: num(args.height_scale, "height-scale")?.unwrap_or(0.75),
        width_scale: num(args.width_scale, "width-scale")?.unwrap_or(1.0),
        explicit_override,
    };
    spec.validate().map_err(|e| AppError::Usage(e.to_string()))?;
    Ok(spec)
}

fn resolve_epsilon(n: Option<u64>, epsilon: Option<f64>) -> Result<f64, AppError> {
    match (n, epsilon) {
        (Some(n), None) => {
            if n < 3 {
                return usage("n must be >= 3 for the continuum model");
            }
            Ok(2.0 / n as f64)
        }
        (None, Some(e)) if e > 0.0 && e < 1.0 => Ok(e),
        (None, Some(e)) => usage(format!("epsilon must lie in (0,1), got {e}")),
        (None, None) => usage("one of --n or --epsilon is required"),
        (Some(_), Some(_)) => usage("--n conflicts with --epsilon"),
    }
}

fn workers_or_env(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("GAPLAB_WORKERS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    })
}

fn gap_point_json(p: &gaplab_core::gapscan::GapPoint) -> serde_json::Value {
    serde_json::to_value(p).expect("gap point serialization")
}

fn dispatch(cmd: Command) -> Result<(), AppError> {
    match cmd {
        Command::Gap { n, s, dump_matrix, barrier, out } => {
            if n < 1 {
                return usage("n must be >= 1");
            }
            if !(0.0..=1.0).contains(&s) {
                return usage(format!("s must lie in [0,1], got {s}"));
            }
            let spec = resolve_barrier(&barrier)?;
            if let Some(path) = &dump_matrix {
                let t = build_symmetric(n, s, &spec)?;
                let rows: Vec<String> = (0..t.dim())
                    .map(|i| {
                        let off = t.offdiag.get(i).copied();
                        format!("{},{}", field(Some(t.diag[i])), field(off))
                    })
                    .collect();
                write_text(Some(path), &csv_document(!out.no_meta, "diag,offdiag", &rows))
                    .map_err(AppError::Computation)?;
            }
            let p = gap_at(n, s, &spec)?;
            let doc = json_document(!out.no_meta, gap_point_json(&p));
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
        Command::MinGap { n, coarse_points, refine_tol, scan_csv, workers, barrier, out } => {
            if n < 1 {
                return usage("n must be >= 1");
            }
            if coarse_points < 3 {
                return usage("coarse-points must be >= 3");
            }
            if !(refine_tol > 0.0) {
                return usage("refine-tol must be positive");
            }
            let spec = resolve_barrier(&barrier)?;
            let (minimum, at_critical, scan) = with_workers(workers_or_env(workers), || {
                let scan = scan_csv
                    .as_ref()
                    .map(|_| gaplab_core::gapscan::scan_grid(n, &spec, coarse_points));
                let m = min_gap(n, &spec, coarse_points, refine_tol);
                let c = gap_at(n, critical_s(), &spec);
                (m, c, scan)
            });
            let (minimum, at_critical) = (minimum?, at_critical?);
            if let (Some(path), Some(scan)) = (&scan_csv, scan) {
                let rows: Vec<String> = scan?
                    .iter()
                    .map(|p| {
                        format!(
                            "{},{},{},{},{}",
                            field(Some(p.s)),
                            field(Some(p.lambda0)),
                            field(Some(p.lambda1)),
                            field(Some(p.gap)),
                            p.precision_flag,
                        )
                    })
                    .collect();
                let header = "s,lambda0,lambda1,gap,precision_flag";
                write_text(Some(path), &csv_document(!out.no_meta, header, &rows))
                    .map_err(AppError::Computation)?;
            }
            let doc = json_document(
                !out.no_meta,
                json!({
                    "minimum": gap_point_json(&minimum),
                    "at_critical_s": gap_point_json(&at_critical),
                    "critical_s": critical_s(),
                }),
            );
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
        Command::ModelGap { n, epsilon, barrier, out } => {
            let eps = resolve_epsilon(n, epsilon)?;
            let spec = resolve_barrier(&barrier)?;
            let params = ModelParams::from_spec(&spec, eps)?;
            let levels = solve_levels(&params)?;
            let doc = json_document(
                !out.no_meta,
                json!({
                    "params": serde_json::to_value(params).unwrap(),
                    "levels": serde_json::to_value(levels).unwrap(),
                }),
            );
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
        Command::Asymptotic { n, epsilon, barrier, out } => {
            let eps = resolve_epsilon(n, epsilon)?;
            let spec = resolve_barrier(&barrier)?;
            let params = ModelParams::from_spec(&spec, eps)?;
            let info = classify_region(spec.alpha, spec.beta)?;
            let gap = asymptotic_gap(&params)?;
            let doc = json_document(
                !out.no_meta,
                json!({
                    "region": serde_json::to_value(info.region).unwrap(),
                    "exponent": info.exponent,
                    "stretch_exponent": info.stretch_exponent,
                    "epsilon": eps,
                    "gap": gap,
                }),
            );
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
        Command::Classify { alpha, beta, out } => {
            let info = classify_region(alpha, beta)?;
            let doc = json_document(
                !out.no_meta,
                json!({
                    "region": serde_json::to_value(info.region).unwrap(),
                    "exponent": info.exponent,
                    "stretch_exponent": info.stretch_exponent,
                }),
            );
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
        Command::Study {
            n_min,
            n_max,
            points,
            policy,
            discrete,
            fit_json,
            emit_plot,
            emit_config,
            workers,
            barrier,
            out,
        } => {
            let spec = resolve_barrier(&barrier)?;
            if let Some(path) = &emit_config {
                write_text(Some(path), &config::render_barrier(&spec))
                    .map_err(AppError::Computation)?;
            }
            let policy = match policy {
                PolicyArg::CriticalS => SPolicy::AtCriticalS,
                PolicyArg::GlobalMin => SPolicy::GlobalMin,
            };
            let study = with_workers(workers_or_env(workers), || {
                run_study(&spec, n_min, n_max, points, policy, discrete)
            })?;
            let rows: Vec<String> = study
                .rows
                .iter()
                .map(|r| {
                    format!(
                        "{},{},{},{},{},{},{}",
                        r.n,
                        field(Some(r.epsilon)),
                        field(r.gap_discrete),
                        field(r.gap_model),
                        field(r.gap_asymptotic),
                        field(r.s_used),
                        if r.precision_limited { "precision-limited" } else { "" },
                    )
                })
                .collect();
            let header = "n,epsilon,gap_discrete,gap_model,gap_asymptotic,s_used,flags";
            let doc = csv_document(!out.no_meta, header, &rows);
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)?;
            if let Some(path) = &fit_json {
                let doc = json_document(
                    !out.no_meta,
                    json!({
                        "region": serde_json::to_value(study.region).unwrap(),
                        "fit": study.fit.map(|f| serde_json::to_value(f).unwrap()),
                        "s_policy": serde_json::to_value(study.s_policy).unwrap(),
                    }),
                );
                write_text(Some(path), &doc).map_err(AppError::Computation)?;
            }
            if let Some(path) = &emit_plot {
                let csv_name = out
                    .output
                    .as_deref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_else(|| "study.csv".into());
                write_text(Some(path), &plot_script(&csv_name)).map_err(AppError::Computation)?;
            }
            Ok(())
        }
        Command::Wavefunction { n, epsilon, parity, x_max, points, barrier, out } => {
            let eps = resolve_epsilon(n, epsilon)?;
            let spec = resolve_barrier(&barrier)?;
            let params = ModelParams::from_spec(&spec, eps)?;
            let levels = solve_levels(&params)?;
            let parity = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            let x_max = x_max.unwrap_or(4.0 * (eps / gaplab_core::model::OMEGA).sqrt());
            let wf = model_wavefunction(&params, &levels, parity, x_max, points)?;
            let rows: Vec<String> = wf
                .x_grid
                .iter()
                .zip(&wf.values)
                .map(|(x, v)| format!("{},{}", field(Some(*x)), field(Some(*v))))
                .collect();
            let doc = csv_document(!out.no_meta, "x,psi", &rows);
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
        Command::VillainCheck { j_values, out } => {
            if j_values.is_empty() {
                return usage("--J needs at least one spin value");
            }
            let mut lines = vec![format!(
                "{:>8} {:>14} {:>14} {:>14} {:>14}",
                "J", "jx_dev", "x2_coeff", "x2_expected", "delta"
            )];
            for &j in &j_values {
                let two_j = (2.0 * j).round();
                if two_j < 1.0 || (two_j - 2.0 * j).abs() > 1e-9 {
                    return usage(format!("J = {j} is not a positive half-integer"));
                }
                let two_j = two_j as u64;
                let dev = verify_jx_identity(two_j)?;
                let eps = 2.0 / two_j as f64;
                let coeff = quadratic_coefficient(eps)?;
                let expected = 2.0 / 3.0 * (3.0_f64.sqrt() - 1.0);
                lines.push(format!(
                    "{:>8} {:>14.3e} {:>14.10} {:>14.10} {:>14.10}",
                    j,
                    dev,
                    coeff,
                    expected,
                    delta_constant(eps)
                ));
            }
            let mut doc = String::new();
            if !out.no_meta {
                doc.push_str("# ");
                doc.push_str(output::TOOL_META);
                doc.push('\n');
            }
            for l in &lines {
                doc.push_str(l);
                doc.push('\n');
            }
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
        Command::Pcf { nu, z, out } => {
            let p = pcf_d(nu, z)?;
            let doc = json_document(
                !out.no_meta,
                json!({ "nu": nu, "z": z, "value": p.value, "derivative": p.derivative }),
            );
            write_text(out.output.as_deref(), &doc).map_err(AppError::Computation)
        }
    }
}

/// Curvature of the semiclassical potential at its minimum, five-point
/// second difference.
fn quadratic_coefficient(eps: f64) -> Result<f64, AppError> {
    let s_star = critical_s();
    let zero = BarrierSpec::zero();
    let f = |x: f64| -> Result<f64, AppError> {
        Ok(semiclassical_potential(s_star, -0.5 + x, eps, &zero)?.value)
    };
    let h = 1e-3;
    let second = (-f(2.0 * h)? + 16.0 * f(h)? - 30.0 * f(0.0)? + 16.0 * f(-h)? - f(-2.0 * h)?)
        / (12.0 * h * h);
    Ok(0.5 * second)
}

fn plot_script(csv_name: &str) -> String {
    format!(
        r##"#!/usr/bin/env python3
"""Log-log plot of a gaplab study CSV."""
import csv
import matplotlib.pyplot as plt

ns, cols = [], {{"gap_discrete": [], "gap_model": [], "gap_asymptotic": []}}
with open({csv_name:?}) as fh:
    rows = [r for r in csv.DictReader(line for line in fh if not line.startswith("#"))]
for r in rows:
    ns.append(float(r["n"]))
    for key in cols:
        cols[key].append(float(r[key]) if r[key] else None)

fig, ax = plt.subplots(figsize=(5, 4))
for key, ys in cols.items():
    pts = [(n, y) for n, y in zip(ns, ys) if y is not None]
    if pts:
        ax.loglog([p[0] for p in pts], [p[1] for p in pts], "o-", label=key)
ax.set_xlabel("n")
ax.set_ylabel("gap")
ax.legend()
fig.tight_layout()
fig.savefig({csv_name:?} + ".png", dpi=160)
print("wrote", {csv_name:?} + ".png")
"##
    )
}
