//! Spectrum and spin-texture tables over a (γ, β, p) grid.

use serde::Serialize;

use super::config::{OutputFormat, SuiteConfig};
use crate::error::{Error, Result};
use crate::spectrum::{eigensystem, spin_vector, Branch};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRow {
    pub gamma: f64,
    pub beta: f64,
    pub p1: f64,
    pub p2: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub phi_plus: f64,
    pub phi_minus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TextureRow {
    pub gamma: f64,
    pub beta: f64,
    pub p1: f64,
    pub p2: f64,
    pub branch: &'static str,
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

fn sweep(config: &SuiteConfig) -> Result<Vec<(f64, f64, [f64; 2])>> {
    config.validate()?;
    config.require_splitting()?;
    let mut out = Vec::new();
    for &g in &config.gamma_values {
        for &b in &config.beta_values {
            for p in config.momentum_grid.points() {
                out.push((g, b, p));
            }
        }
    }
    Ok(out)
}

pub fn spectrum_rows(config: &SuiteConfig) -> Result<Vec<SpectrumRow>> {
    sweep(config)?
        .into_iter()
        .map(|(g, b, p)| {
            let es = eigensystem(g, b, p, 1)?;
            Ok(SpectrumRow {
                gamma: g,
                beta: b,
                p1: p[0],
                p2: p[1],
                lambda_plus: es.lambda_plus,
                lambda_minus: es.lambda_minus,
                phi_plus: es.phi_plus,
                phi_minus: es.phi_minus,
            })
        })
        .collect()
}

pub fn texture_rows(config: &SuiteConfig) -> Result<Vec<TextureRow>> {
    let mut rows = Vec::new();
    for (g, b, p) in sweep(config)? {
        let es = eigensystem(g, b, p, 1)?;
        for (br, name) in [(Branch::Plus, "plus"), (Branch::Minus, "minus")] {
            let v = spin_vector(es.psi(br));
            rows.push(TextureRow {
                gamma: g,
                beta: b,
                p1: p[0],
                p2: p[1],
                branch: name,
                v1: v[0],
                v2: v[1],
                v3: v[2],
            });
        }
    }
    Ok(rows)
}

/// CSV floats carry 17 significant digits; JSON uses shortest round-trip.
pub fn render<T: Serialize>(rows: &[T], header: &[&str], fields: impl Fn(&T) -> Vec<String>, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(rows)?),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for r in rows {
                w.write_record(fields(r))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn f(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_spectrum(rows: &[SpectrumRow], format: OutputFormat) -> Result<String> {
    render(
        rows,
        &["gamma", "beta", "p1", "p2", "lambda_plus", "lambda_minus", "phi_plus", "phi_minus"],
        |r| {
            [r.gamma, r.beta, r.p1, r.p2, r.lambda_plus, r.lambda_minus, r.phi_plus, r.phi_minus]
                .into_iter()
                .map(f)
                .collect()
        },
        format,
    )
}

pub fn render_texture(rows: &[TextureRow], format: OutputFormat) -> Result<String> {
    render(
        rows,
        &["gamma", "beta", "p1", "p2", "branch", "v1", "v2", "v3"],
        |r| {
            vec![f(r.gamma), f(r.beta), f(r.p1), f(r.p2), r.branch.into(), f(r.v1), f(r.v2), f(r.v3)]
        },
        format,
    )
}
