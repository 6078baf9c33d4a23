//! CSV emission to stdout or a file, plus metadata and axis-label companions.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use kuramotoq::phase_diagram::SweepResult;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::CliError;

/// `fig.csv` → `fig.<suffix>`.
pub fn companion(path: &Path, suffix: &str) -> PathBuf {
    path.with_extension(suffix)
}

fn open(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_rows<P: Serialize>(path: Option<&Path>, rows: &[P]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(open(path)?);
    for r in rows {
        w.serialize(r).map_err(kuramotoq::Error::from)?;
    }
    w.flush().map_err(|e| CliError::io(path.unwrap_or(Path::new("<stdout>")), e))?;
    Ok(())
}

pub fn write_sweep<P: Serialize>(path: Option<&Path>, sweep: &SweepResult<P>) -> Result<(), CliError> {
    sweep.write_csv(open(path)?)?;
    Ok(())
}

/// Run description written next to an output file; never part of the CSV, so
/// the CSV itself stays byte-identical across reruns.
pub fn metadata(command: &str, seed: u64, body: Value) -> Value {
    let created = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let mut meta = json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "created_unix": created,
    });
    if let (Some(m), Value::Object(extra)) = (meta.as_object_mut(), body) {
        m.extend(extra);
    }
    meta
}

pub fn write_companions(path: &Path, meta: &Value, labels: &str) -> Result<(), CliError> {
    let meta_path = companion(path, "meta.json");
    let text = serde_json::to_string_pretty(meta).expect("metadata is plain JSON") + "\n";
    std::fs::write(&meta_path, text).map_err(|e| CliError::io(&meta_path, e))?;
    let labels_path = companion(path, "labels.txt");
    std::fs::write(&labels_path, labels).map_err(|e| CliError::io(&labels_path, e))?;
    Ok(())
}

pub const TEMPERATURE_LABELS: &str = "\
x: temp = k_B T / (hbar gamma), logarithmic axis
jc: critical coupling J_C in units of hbar gamma
jc_classical_ext: classical critical coupling with noise D = m gamma k_B T
ratio: J_C / jc_classical_ext
inv_jc_temp_units: inverse critical coupling in temperature units, k_B T / J_C
inv_jc: inverse critical coupling, hbar gamma / J_C
jc_error: quadrature error estimate of jc
";

pub const SIGMA_LABELS: &str = "\
x: temp = k_B T / (hbar gamma), logarithmic axis
y: critical coupling J_C in units of hbar gamma, one curve per sigma
sigma: Gaussian width of the natural frequencies in units of gamma
noiseless companion: classical noiseless threshold 2 / (pi g(0)) per sigma, plotted at temp = 0
";

pub const BOUNDARY_LABELS: &str = "\
x: coupling J in units of hbar gamma
y: temp_c = k_B T_C / (hbar gamma); synchronized below the curve
status: ok, or no_transition where J is below the zero-temperature threshold
";
