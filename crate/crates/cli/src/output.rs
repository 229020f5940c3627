use std::fs::File;
use std::io::{self, Write};

use longrun_core::combinatorics::{format_exact, format_fixed, format_significant};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::args::{Format, OutputArgs};
use crate::error::CliError;

/// How decimals are rounded (both modes round half to even).
#[derive(Debug, Clone, Copy)]
pub enum Rounding {
    Significant(usize),
    Fixed(usize),
}

impl Rounding {
    pub const DEFAULT: Rounding = Rounding::Significant(6);

    pub fn from_args(args: &OutputArgs, fallback: Rounding) -> Self {
        match (args.decimals, args.digits) {
            (Some(places), _) => Rounding::Fixed(places),
            (None, Some(digits)) => Rounding::Significant(digits),
            (None, None) => fallback,
        }
    }

    pub fn render(self, value: &BigRational) -> String {
        match self {
            Rounding::Significant(digits) => format_significant(value, digits),
            Rounding::Fixed(places) => format_fixed(value, places),
        }
    }

    /// `{"exact": "num/den", "decimal": "..."}`
    pub fn json(self, value: &BigRational) -> Value {
        json!({ "exact": format_exact(value), "decimal": self.render(value) })
    }
}

/// A command result in every shape the formats need.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// `(q, probability)` pairs; `None` when the result is not a series over q.
    pub plot: Option<Vec<(usize, String)>>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.json).expect("report serializes");
                text.push('\n');
                Ok(text.into_bytes())
            }
            Format::Csv => self.delimited(b','),
            Format::Tsv => self.delimited(b'\t'),
            Format::Plot => {
                let series = self
                    .plot
                    .as_ref()
                    .ok_or_else(|| CliError::unsupported_format("plot output needs a series over q (pmf or cdf)"))?;
                let mut text = String::from("q probability\n");
                for (q, p) in series {
                    text.push_str(&format!("{q} {p}\n"));
                }
                Ok(text.into_bytes())
            }
        }
    }

    fn delimited(&self, delimiter: u8) -> Result<Vec<u8>, CliError> {
        let mut writer = csv::WriterBuilder::new().delimiter(delimiter).from_writer(Vec::new());
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.into_inner().map_err(|e| CliError::new("io", 74, e.to_string()))
    }
}

pub fn emit(report: &Report, args: &OutputArgs) -> Result<(), CliError> {
    let bytes = report.render(args.format)?;
    match &args.out {
        Some(path) => File::create(path)?.write_all(&bytes)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}
