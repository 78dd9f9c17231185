//! Artifact writers. Column names and order are part of the schema and are
//! pinned by golden tests; bump [`SCHEMA_VERSION`] when they change.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use talbot_gkp::{ideal_lattice, LogicalLabel, MU_PITCH, TAU_PITCH};

use crate::config::{Diagnostic, Resolved};
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub const CARPET_CSV: &str = "carpet.csv";
pub const MAP_CSV: &str = "map.csv";
pub const HOM_CSV: &str = "hom.csv";
pub const STATE_CSV: &str = "state.csv";
pub const JSA_CSV: &str = "jsa.csv";
pub const LATTICE_JSON: &str = "lattice.json";
pub const MANIFEST_JSON: &str = "manifest.json";

pub const CARPET_HEADER: [&str; 3] = ["beta_over_betaT", "t_times_fsr", "intensity"];
pub const MAP_HEADER: [&str; 3] = ["kappa_over_fsr", "sigma_over_fsr", "value"];
pub const HOM_HEADER: [&str; 3] = ["mu_over_fsr", "tau_times_fsr", "coincidence"];
pub const STATE_HEADER: [&str; 4] = ["omega_over_fsr", "real", "imag", "probability"];
pub const JSA_HEADER: [&str; 4] = ["omega_s_over_fsr", "omega_i_over_fsr", "amplitude", "intensity"];

/// Shortest round-trip decimal, switching to exponent form far from unity.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".to_string()
    } else if !v.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Long-format CSV with a fixed header.
pub fn write_csv<const N: usize>(
    path: &Path,
    header: [&str; N],
    rows: impl IntoIterator<Item = [f64; N]>,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&v| format_float(v)))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct LatticeEntry {
    label: &'static str,
    s_range: [i64; 2],
    k_range: [i64; 2],
    native_pitch: [f64; 2],
    weight: f64,
    /// `sign[s − s_min][k − k_min]`.
    sign: Vec<Vec<i8>>,
}

#[derive(Debug, Serialize)]
struct LatticeFile {
    schema_version: u32,
    tau_pitch: f64,
    mu_pitch: f64,
    lattices: Vec<LatticeEntry>,
}

/// Ideal sign lattices of the six codewords.
pub fn write_lattice(path: &Path) -> Result<(), CliError> {
    let lattices = LogicalLabel::CODEWORDS
        .iter()
        .map(|&label| {
            let l = ideal_lattice(label);
            LatticeEntry {
                label: label.name(),
                s_range: [l.s_range.0, l.s_range.1],
                k_range: [l.k_range.0, l.k_range.1],
                native_pitch: [l.native_pitch.0, l.native_pitch.1],
                weight: l.weight,
                sign: l.sign.outer_iter().map(|row| row.to_vec()).collect(),
            }
        })
        .collect();
    let file = LatticeFile { schema_version: SCHEMA_VERSION, tau_pitch: TAU_PITCH, mu_pitch: MU_PITCH, lattices };
    write_json(path, &file)
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellNote {
    pub kappa: f64,
    pub sigma: f64,
    pub message: String,
}

#[derive(Debug, Serialize)]
struct PhysicalUnits {
    fsr_over_2pi_ghz: f64,
    beta_talbot_ps2: f64,
}

#[derive(Debug, Serialize)]
struct Units {
    frequency: &'static str,
    time: &'static str,
    beta: &'static str,
    example: PhysicalUnits,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    schema_version: u32,
    scenario: &'static str,
    config: &'a Resolved,
    files: Vec<String>,
    diagnostics: &'a [Diagnostic],
    warnings: &'a [String],
    cell_warnings: &'a [CellNote],
    units: Units,
}

/// `β_T = π/ω̄²` in ps² for `ω̄ = 2π·f`.
pub fn beta_talbot_ps2(fsr_ghz: f64) -> f64 {
    let omega = 2.0 * PI * fsr_ghz * 1e9;
    PI / (omega * omega) * 1e24
}

pub struct ManifestInput<'a> {
    pub config: &'a Resolved,
    pub files: &'a [PathBuf],
    pub diagnostics: &'a [Diagnostic],
    pub warnings: &'a [String],
    pub cell_warnings: &'a [CellNote],
}

pub fn write_manifest(path: &Path, input: ManifestInput<'_>) -> Result<(), CliError> {
    let files = input
        .files
        .iter()
        .map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default())
        .collect();
    let manifest = Manifest {
        tool: "talbot-gkp",
        version: env!("CARGO_PKG_VERSION"),
        schema_version: SCHEMA_VERSION,
        scenario: input.config.scenario.name(),
        config: input.config,
        files,
        diagnostics: input.diagnostics,
        warnings: input.warnings,
        cell_warnings: input.cell_warnings,
        units: Units {
            frequency: "comb spacing (free spectral range) = 1",
            time: "inverse comb spacing",
            beta: "multiples of the Talbot chirp pi/fsr^2",
            example: PhysicalUnits { fsr_over_2pi_ghz: 40.0, beta_talbot_ps2: beta_talbot_ps2(40.0) },
        },
    };
    write_json(path, &manifest)
}
