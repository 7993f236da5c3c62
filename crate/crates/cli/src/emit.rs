//! Curve samples and their CSV/JSON serializations.
//!
//! Numbers are written with Rust's shortest round-trip formatting in both
//! formats, so the CSV and JSON emissions of one run carry identical values
//! and reruns are byte-identical.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

/// Which curve a sample belongs to; doubles as the CLI `--kind` argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    /// Optimal SISO spectral efficiency vs channel exponent.
    SisoCopt,
    /// Optimal per-antenna MIMO spectral efficiency vs channel exponent.
    MimoBetaopt,
    /// SISO interference objective vs spectral efficiency at fixed alpha.
    SisoObjective,
    /// MIMO interference objective vs per-antenna spectral efficiency.
    MimoObjective,
    /// Poisson-field collision probability vs spectral efficiency.
    PoissonPi,
}

impl CurveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveKind::SisoCopt => "siso-copt",
            CurveKind::MimoBetaopt => "mimo-betaopt",
            CurveKind::SisoObjective => "siso-objective",
            CurveKind::MimoObjective => "mimo-objective",
            CurveKind::PoissonPi => "poisson-pi",
        }
    }
}

/// One `(x, y)` point of a named curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub x: f64,
    pub y: f64,
    pub kind: CurveKind,
}

/// File format for curve emission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FileFormat {
    Csv,
    Json,
}

pub fn render_csv(samples: &[CurveSample]) -> String {
    let mut out = String::from("x,y,kind\n");
    for s in samples {
        writeln!(out, "{},{},{}", s.x, s.y, s.kind.as_str()).expect("string write");
    }
    out
}

pub fn render_json(samples: &[CurveSample]) -> String {
    let mut text = serde_json::to_string_pretty(samples).expect("curve samples serialize");
    text.push('\n');
    text
}
