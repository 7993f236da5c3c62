//! Implementations behind the subcommands.

use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use seopt_core::mimo::{mimo_beta_opt_numeric, mimo_beta_opt_poly, mimo_objective, max_average_rate_mimo};
use seopt_core::ppp_field::{analytic_pi, pi_curve, simulate_collision_probability};
use seopt_core::siso::{
    max_average_rate_siso, siso_copt_exact, siso_copt_poly, siso_objective, POLY_ALPHA_RANGE,
};
use seopt_core::{OptMethod, OptimizationResult, PoissonFieldParams, ToleranceSpec};

use crate::config::RunConfig;
use crate::emit::{render_csv, render_json, CurveKind, CurveSample, FileFormat};
use crate::grid::GridSpec;
use crate::{CurveArgs, FieldArgs, MaxRateArgs, ReportFormat, ScalarArgs, ValidateArgs};

const SUCCESS: ExitCode = ExitCode::SUCCESS;

fn disagree_exit() -> ExitCode {
    ExitCode::from(3)
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Objective value and stationarity residual for a polynomial optimum, with
/// the same degenerate-at-zero convention the exact routes use.
fn poly_result<F>(value: f64, objective: F) -> Result<OptimizationResult>
where
    F: Fn(f64) -> seopt_core::Result<f64>,
{
    if value < 1e-12 {
        return Ok(OptimizationResult {
            c_opt: 0.0,
            objective_value: std::f64::consts::LN_2,
            stationarity_residual: 0.0,
            method: OptMethod::Polynomial,
            degenerate: true,
        });
    }
    let h = 1e-6 * value.abs().max(1.0);
    let fp = objective(value + h)?;
    let fm = objective(value - h)?;
    let f0 = objective(value)?;
    Ok(OptimizationResult {
        c_opt: value,
        objective_value: f0,
        stationarity_residual: ((fp - fm) / (2.0 * h)).abs() / f0.abs().max(f64::MIN_POSITIVE),
        method: OptMethod::Polynomial,
        degenerate: false,
    })
}

fn warn_poly_range(alpha: f64) {
    if !POLY_ALPHA_RANGE.contains(&alpha) {
        eprintln!(
            "warning: the polynomial fit is calibrated for alpha in [{}, {}]; alpha = {alpha} is outside it",
            POLY_ALPHA_RANGE.start(),
            POLY_ALPHA_RANGE.end()
        );
    }
}

#[derive(Serialize)]
struct ScalarReport {
    alpha: f64,
    #[serde(flatten)]
    result: OptimizationResult,
}

fn print_scalar(label: &str, alpha: f64, result: OptimizationResult, format: ReportFormat) {
    match format {
        ReportFormat::Text => {
            println!("{label} = {}", result.c_opt);
            println!("objective = {}", result.objective_value);
            println!("stationarity_residual = {}", result.stationarity_residual);
            println!("method = {}", result.method.as_str());
            if result.degenerate {
                println!("degenerate = true");
            }
        }
        ReportFormat::Json => {
            let report = ScalarReport { alpha, result };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
    }
}

pub fn siso_copt(args: ScalarArgs) -> Result<ExitCode> {
    let result = if args.poly {
        if args.alpha < 2.0 {
            bail!("the polynomial optimum requires alpha >= 2, got {}", args.alpha);
        }
        warn_poly_range(args.alpha);
        let alpha = args.alpha;
        poly_result(siso_copt_poly(alpha), |c| siso_objective(c, alpha))?
    } else {
        siso_copt_exact(args.alpha)?
    };
    print_scalar("c_opt", args.alpha, result, args.format);
    Ok(SUCCESS)
}

pub fn mimo_betaopt(args: ScalarArgs) -> Result<ExitCode> {
    let result = if args.poly {
        if args.alpha < 2.0 {
            bail!("the polynomial optimum requires alpha >= 2, got {}", args.alpha);
        }
        warn_poly_range(args.alpha);
        let alpha = args.alpha;
        poly_result(mimo_beta_opt_poly(alpha), |b| mimo_objective(b, alpha))?
    } else {
        mimo_beta_opt_numeric(args.alpha, ToleranceSpec::default())?
    };
    print_scalar("beta_opt", args.alpha, result, args.format);
    Ok(SUCCESS)
}

fn load_config(path: &Option<std::path::PathBuf>) -> Result<RunConfig> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

/// Poisson-field parameters from config defaults with flag overrides.
fn resolve_field(field: &FieldArgs, config: &RunConfig) -> Result<PoissonFieldParams> {
    let mut params = config.poisson_or_default();
    if let Some(rho) = field.rho {
        params.rho = rho;
    }
    if let Some(lambda) = field.lambda {
        params.lambda_rate = lambda;
    }
    if let Some(r_link) = field.r_link {
        params.r_link = r_link;
    }
    if let Some(eta) = field.eta_i {
        params.eta_i = eta;
    }
    if let Some(db) = field.eta_i_db {
        params.eta_i = db_to_linear(db);
    }
    if let Some(sigma2) = field.sigma2 {
        params.sigma2 = sigma2;
    }
    if let Some(n_info) = field.n_info {
        params.n_info = n_info;
    }
    if let Some(alpha) = field.alpha {
        params.alpha = alpha;
    }
    if let Some(db) = field.loss_db {
        params.loss_l = db_to_linear(db);
    }
    params.validate()?;
    Ok(params)
}

/// Alpha for the objective-curve kinds: flag, then config channel, then the
/// nominal channel default.
fn resolve_alpha(field: &FieldArgs, config: &RunConfig) -> f64 {
    field.alpha.unwrap_or_else(|| config.channel_or_default().alpha)
}

pub fn curve(args: CurveArgs) -> Result<ExitCode> {
    let config = load_config(&args.config)?;
    let grid_spec = args
        .grid
        .clone()
        .or_else(|| config.grid.clone())
        .context("no grid given; pass --grid lo:hi:step or set it in the config")?;
    let points = GridSpec::parse(&grid_spec)?.points();

    let samples: Vec<CurveSample> = match args.kind {
        CurveKind::SisoCopt => points
            .iter()
            .map(|&alpha| {
                siso_copt_exact(alpha).map(|r| CurveSample { x: alpha, y: r.c_opt, kind: args.kind })
            })
            .collect::<seopt_core::Result<_>>()?,
        CurveKind::MimoBetaopt => points
            .iter()
            .map(|&alpha| {
                mimo_beta_opt_numeric(alpha, ToleranceSpec::default())
                    .map(|r| CurveSample { x: alpha, y: r.c_opt, kind: args.kind })
            })
            .collect::<seopt_core::Result<_>>()?,
        CurveKind::SisoObjective => {
            let alpha = resolve_alpha(&args.field, &config);
            points
                .iter()
                .map(|&c| siso_objective(c, alpha).map(|y| CurveSample { x: c, y, kind: args.kind }))
                .collect::<seopt_core::Result<_>>()?
        }
        CurveKind::MimoObjective => {
            let alpha = resolve_alpha(&args.field, &config);
            points
                .iter()
                .map(|&b| mimo_objective(b, alpha).map(|y| CurveSample { x: b, y, kind: args.kind }))
                .collect::<seopt_core::Result<_>>()?
        }
        CurveKind::PoissonPi => {
            let params = resolve_field(&args.field, &config)?;
            pi_curve(&params, &points)?
                .into_iter()
                .map(|(x, y)| CurveSample { x, y, kind: args.kind })
                .collect()
        }
    };

    let rendered = match args.format {
        FileFormat::Csv => render_csv(&samples),
        FileFormat::Json => render_json(&samples),
    };
    let out = args.out.clone().or_else(|| config.out.clone());
    match out {
        Some(path) => {
            fs::write(&path, rendered)
                .with_context(|| format!("cannot write {}", path.display()))?;
            eprintln!("wrote {} samples to {}", samples.len(), path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(SUCCESS)
}

#[derive(Serialize)]
struct ValidateReport {
    spectral_efficiency: f64,
    analytic_pi: f64,
    #[serde(flatten)]
    simulation: seopt_core::SimulationReport,
    sigma: f64,
    window_t: f64,
    agree: bool,
}

pub fn validate(args: ValidateArgs) -> Result<ExitCode> {
    let config = load_config(&args.config)?;
    let params = resolve_field(&args.field, &config)?;
    let trials = args.trials.or(config.trials).unwrap_or(100_000);
    let seed = args.seed.or(config.seed).unwrap_or(1);

    let c = match args.spectral_efficiency {
        Some(c) => c,
        None => siso_copt_exact(params.alpha)?.c_opt,
    };
    let analytic = analytic_pi(c, &params)? * args.analytic_bias;
    let window_t = match args.window_t {
        Some(w) => w,
        None => params.transmission_duration(c)?,
    };
    let region_radius = match args.region_radius {
        Some(r) => r,
        None => 3.0 * params.interference_radius(c)?,
    };
    let simulation = simulate_collision_probability(c, &params, trials, seed, window_t, region_radius)?;

    // Test against the larger of the empirical and analytic-rate standard
    // errors, so a zero-hit run at a tiny analytic probability still counts
    // as agreement.
    let sigma = simulation
        .std_error()
        .max((analytic * (1.0 - analytic) / trials as f64).sqrt());
    let agree = (simulation.p_hat - analytic).abs() <= 3.0 * sigma;

    let report = ValidateReport {
        spectral_efficiency: c,
        analytic_pi: analytic,
        simulation,
        sigma,
        window_t,
        agree,
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match args.format {
        ReportFormat::Text => {
            println!("spectral_efficiency = {c}");
            println!("analytic_pi = {analytic}");
            println!("p_hat = {}", report.simulation.p_hat);
            println!("trials = {trials}");
            println!("ci_halfwidth = {}", report.simulation.ci_halfwidth);
            println!("sigma = {sigma}");
            println!("seed = {seed}");
            println!("region_radius = {region_radius}");
            println!("window_t = {window_t}");
            println!(
                "verdict = {}",
                if agree { "AGREE within 3 sigma" } else { "DISAGREE beyond 3 sigma" }
            );
        }
        ReportFormat::Json => println!("{json}"),
    }
    if let Some(path) = &args.out {
        fs::write(path, format!("{json}\n"))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(if agree { SUCCESS } else { disagree_exit() })
}

#[derive(Serialize)]
struct MaxRateReport {
    mode: &'static str,
    alpha: f64,
    bandwidth: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_antennas: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    duty: Option<f64>,
    max_average_rate: f64,
}

pub fn max_rate(args: MaxRateArgs) -> Result<ExitCode> {
    let report = match (args.n_antennas, args.duty) {
        (Some(n), Some(d)) => MaxRateReport {
            mode: "mimo",
            alpha: args.alpha,
            bandwidth: args.bandwidth,
            n_antennas: Some(n),
            duty: Some(d),
            max_average_rate: max_average_rate_mimo(args.alpha, n, args.bandwidth, d)?,
        },
        _ => MaxRateReport {
            mode: "siso",
            alpha: args.alpha,
            bandwidth: args.bandwidth,
            n_antennas: None,
            duty: None,
            max_average_rate: max_average_rate_siso(args.alpha, args.bandwidth)?,
        },
    };
    match args.format {
        ReportFormat::Text => {
            println!("mode = {}", report.mode);
            println!("max_average_rate = {}", report.max_average_rate);
            if report.mode == "siso" {
                println!("note = requested average rates must stay below this bound (duty < 1/2)");
            }
        }
        ReportFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
    }
    Ok(SUCCESS)
}
