use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Config;
use crate::scan::ResultRecord;

pub const CSV_HEADER: &str = "x,y,z,value,normalized,err,converged";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

pub fn write_csv(w: &mut impl Write, records: &[ResultRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            r.x, r.y, r.z, r.value, r.normalized, r.err, r.converged
        )?;
    }
    Ok(())
}

pub fn write_json(w: &mut impl Write, records: &[ResultRecord]) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, records)?;
    writeln!(w)
}

pub fn write_records(w: &mut impl Write, records: &[ResultRecord], format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(w, records),
        OutputFormat::Json => write_json(w, records),
    }
}

#[derive(Serialize)]
pub struct Timing {
    pub started_unix: f64,
    pub elapsed_seconds: f64,
    pub threads: usize,
}

#[derive(Serialize)]
pub struct Summary {
    pub points: usize,
    pub converged: usize,
}

#[derive(Serialize)]
pub struct Sidecar<'a> {
    pub version: &'static str,
    pub results: String,
    pub timing: Timing,
    pub summary: Summary,
    pub config: &'a Config,
}

/// `out.csv` → `out.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

pub fn write_sidecar(path: &Path, sidecar: &Sidecar) -> io::Result<()> {
    let mut f = io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(&mut f, sidecar)?;
    writeln!(f)?;
    f.flush()
}
