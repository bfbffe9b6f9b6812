//! Row schemas and the two encodings. CSV floats carry 17 significant
//! digits so a reader recovers the exact f64; JSON mirrors the same fields
//! as an array of objects in serde's shortest round-trip encoding.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
pub struct SpectrumRow {
    pub nr: u32,
    pub l: u32,
    pub energy: f64,
    pub method: &'static str,
    pub residual: f64,
}

#[derive(Serialize)]
pub struct WavefunctionRow {
    pub r: f64,
    pub chi: f64,
}

#[derive(Serialize)]
pub struct ValidateRow {
    pub nr: u32,
    pub l: u32,
    pub analytic: f64,
    pub oracle: f64,
    pub rel_dev: f64,
    pub approx_error: f64,
}

fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

pub trait CsvRow {
    const HEADER: &'static str;
    fn csv_line(&self) -> String;
}

impl CsvRow for SpectrumRow {
    const HEADER: &'static str = "nr,l,energy,method,residual";
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.nr,
            self.l,
            f17(self.energy),
            self.method,
            f17(self.residual)
        )
    }
}

impl CsvRow for WavefunctionRow {
    const HEADER: &'static str = "r,chi";
    fn csv_line(&self) -> String {
        format!("{},{}", f17(self.r), f17(self.chi))
    }
}

impl CsvRow for ValidateRow {
    const HEADER: &'static str = "nr,l,analytic,oracle,rel_dev,approx_error";
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.nr,
            self.l,
            f17(self.analytic),
            f17(self.oracle),
            f17(self.rel_dev),
            f17(self.approx_error)
        )
    }
}

pub fn render<R: CsvRow + Serialize>(rows: &[R], format: Format) -> Result<String, String> {
    match format {
        Format::Csv => {
            let mut s = String::from(R::HEADER);
            s.push('\n');
            for row in rows {
                s.push_str(&row.csv_line());
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| format!("encoding json: {e}"))?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn emit(content: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("writing {}: {e}", path.display()))
        }
        None => io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| format!("writing stdout: {e}")),
    }
}
