//! Scenario execution.

use std::fs;
use std::path::PathBuf;

use talbot_gkp::{
    analytic_overlap_freq, analytic_overlap_time, apply_chirp, asymptotic_overlap_freq, asymptotic_overlap_time,
    build_jsa, build_physical_state, error_map, fidelity_sweep, hom_coincidence, linspace, talbot_carpet_in,
    visibility, Chirp, CombSpec, FidelityMap, GateMatrix, GridSpec, JsaSpec, LogicalLabel, SpectralState,
    SweepTarget, DEFAULT_MAX_CHIRP,
};

use crate::config::{validate, Diagnostic, Resolved, RunConfig, Scenario, Severity};
use crate::error::CliError;
use crate::output::{self, CellNote, ManifestInput};

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    pub diagnostics: Vec<Diagnostic>,
    pub warnings: Vec<String>,
    pub cell_warnings: Vec<CellNote>,
}

impl RunReport {
    /// 0, or 3 when some sweep cells failed and were written as NaN.
    pub fn exit_code(&self) -> i32 {
        if self.cell_warnings.is_empty() {
            0
        } else {
            3
        }
    }
}

#[derive(Default)]
struct Artifacts {
    files: Vec<PathBuf>,
    warnings: Vec<String>,
    cells: Vec<CellNote>,
}

fn label(r: &Resolved, key: &str) -> Result<LogicalLabel, CliError> {
    r.text(key).parse().map_err(|e| CliError::Config(vec![format!("`{key}`: {e}")]))
}

fn chirp(r: &Resolved, key: &str) -> Result<Chirp, CliError> {
    Ok(Chirp::talbot(r.number(key))?)
}

/// Target gate named by `target` (and `theta` for `r_y`).
pub fn gate_target(r: &Resolved) -> Result<GateMatrix, String> {
    match r.text("target").to_ascii_lowercase().as_str() {
        "x_t" | "x" => Ok(GateMatrix::x_t()),
        "identity" | "i" => Ok(GateMatrix::identity()),
        "s" => Ok(GateMatrix::s()),
        "s_ry_s_dagger" | "half_talbot" => Ok(GateMatrix::s_ry_s_dagger()),
        "r_y" => r
            .maybe_number("theta")
            .map(GateMatrix::r_y)
            .ok_or_else(|| "target `r_y` needs `theta`".to_string()),
        other => Err(format!(
            "unknown gate target `{other}` (expected x_t, identity, s, s_ry_s_dagger or r_y)"
        )),
    }
}

fn axes(r: &Resolved) -> (Vec<f64>, Vec<f64>) {
    (
        linspace(r.number("kappa_min"), r.number("kappa_max"), r.count("n_kappa")),
        linspace(r.number("sigma_min"), r.number("sigma_max"), r.count("n_sigma")),
    )
}

fn chirped_comb(r: &Resolved, beta_reach: f64) -> Result<CombSpec, CliError> {
    Ok(CombSpec::for_chirp(r.number("sigma"), r.number("kappa"), beta_reach.abs().max(DEFAULT_MAX_CHIRP))?)
}

fn write_map(dir: &PathBuf, map: &FidelityMap, art: &mut Artifacts) -> Result<(), CliError> {
    let path = dir.join(output::MAP_CSV);
    let rows = map.kappa_axis.iter().enumerate().flat_map(|(i, &k)| {
        map.sigma_axis.iter().enumerate().map(move |(j, &s)| [k, s, map.values[[i, j]]])
    });
    output::write_csv(&path, output::MAP_HEADER, rows)?;
    art.files.push(path);
    art.cells.extend(
        map.warnings
            .iter()
            .map(|w| CellNote { kappa: w.kappa, sigma: w.sigma, message: w.message.clone() }),
    );
    Ok(())
}

fn minimal_comb(sigma: f64, kappa: f64) -> talbot_gkp::Result<CombSpec> {
    CombSpec::with_parts(sigma, kappa, 1, GridSpec::covering(16, 4.0 + 10.0 * sigma)?)
}

fn run_state(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let spec = chirped_comb(r, r.number("beta"))?;
    let state = apply_chirp(&build_physical_state(label(r, "label")?, &spec)?, chirp(r, "beta")?)?;
    let reach = spec.n_max() as f64 + 1.0 + 10.0 * spec.sigma();
    let grid = spec.grid();
    let rows = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|&(j, _)| grid.omega(j).abs() <= reach)
        .map(|(j, a)| [grid.omega(j), a.re, a.im, a.norm_sqr()]);
    let path = dir.join(output::STATE_CSV);
    output::write_csv(&path, output::STATE_HEADER, rows)?;
    art.files.push(path);
    Ok(())
}

fn run_carpet(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let (b0, b1) = (r.number("beta_min"), r.number("beta_max"));
    let spec = chirped_comb(r, b0.abs().max(b1.abs()))?;
    let carpet = talbot_carpet_in(
        &spec,
        label(r, "label")?,
        (b0, b1),
        r.count("n_beta"),
        (r.number("t_min"), r.number("t_max")),
        r.count("n_t"),
    )?;
    let lost = carpet.raw_norms.iter().cloned().fold(f64::INFINITY, f64::min);
    if lost < 0.9 {
        art.warnings.push(format!("time window keeps as little as {lost:.3} of the norm"));
    }
    let rows = carpet.beta_axis.iter().enumerate().flat_map(|(b, &beta)| {
        let carpet = &carpet;
        carpet.t_axis.iter().enumerate().map(move |(k, &t)| [beta, t, carpet.intensity[[b, k]]])
    });
    let path = dir.join(output::CARPET_CSV);
    output::write_csv(&path, output::CARPET_HEADER, rows)?;
    art.files.push(path);
    Ok(())
}

fn run_overlap_map(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let (ka, sa) = axes(r);
    let time = r.text("basis") == "time";
    let exact = r.text("method") == "exact";
    let map = FidelityMap::evaluate(&ka, &sa, None, |kappa, sigma| {
        Ok(match (time, exact) {
            (true, true) => analytic_overlap_time(&minimal_comb(sigma, kappa)?),
            (false, true) => analytic_overlap_freq(&minimal_comb(sigma, kappa)?),
            (true, false) => asymptotic_overlap_time(kappa),
            (false, false) => asymptotic_overlap_freq(sigma),
        })
    });
    write_map(dir, &map, art)
}

fn run_fidelity_sweep(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let (ka, sa) = axes(r);
    let target = SweepTarget::State { input: label(r, "input")?, target: label(r, "target")? };
    let map = fidelity_sweep(chirp(r, "beta")?, target, &ka, &sa);
    write_map(dir, &map, art)
}

fn run_gate_fidelity(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let (ka, sa) = axes(r);
    let gate = gate_target(r).map_err(|e| CliError::Config(vec![e]))?;
    let map = fidelity_sweep(chirp(r, "beta")?, SweepTarget::Gate(gate), &ka, &sa);
    write_map(dir, &map, art)
}

fn run_ec_map(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let (ka, sa) = axes(r);
    let map = error_map(&ka, &sa, r.number("threshold_fraction"));
    write_map(dir, &map, art)
}

fn run_hom_map(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let spec = chirped_comb(r, r.number("beta"))?;
    let state: SpectralState = apply_chirp(&build_physical_state(label(r, "label")?, &spec)?, chirp(r, "beta")?)?;
    let step = spec.grid().d_omega();
    let requested = linspace(r.number("mu_min"), r.number("mu_max"), r.count("n_mu"));
    let mus: Vec<f64> = requested.iter().map(|&m| (m / step).round() * step).collect();
    let moved = requested.iter().zip(&mus).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if moved > 1e-12 {
        art.warnings.push(format!("frequency shifts snapped to the grid step {step}, by at most {moved:.3e}"));
    }
    let taus = linspace(r.number("tau_min"), r.number("tau_max"), r.count("n_tau"));
    let map = hom_coincidence(&state, &mus, &taus)?;
    let rows = mus.iter().enumerate().flat_map(|(i, &mu)| {
        let map = &map;
        taus.iter().enumerate().map(move |(k, &tau)| [mu, tau, map.values[[i, k]]])
    });
    let path = dir.join(output::HOM_CSV);
    output::write_csv(&path, output::HOM_HEADER, rows)?;
    art.files.push(path);
    let path = dir.join(output::LATTICE_JSON);
    output::write_lattice(&path)?;
    art.files.push(path);
    Ok(())
}

fn run_visibility_sweep(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let (ka, sa) = axes(r);
    let codeword = label(r, "label")?;
    let beta = chirp(r, "beta")?;
    let point = (r.number("s") as i64, r.number("k") as i64);
    let reach = beta.in_talbot_units().abs().max(DEFAULT_MAX_CHIRP);
    let map = FidelityMap::evaluate(&ka, &sa, Some(beta), |kappa, sigma| {
        let spec = CombSpec::for_chirp(sigma, kappa, reach)?;
        visibility(&apply_chirp(&build_physical_state(codeword, &spec)?, beta)?, point)
    });
    write_map(dir, &map, art)
}

fn run_jsa(r: &Resolved, dir: &PathBuf, art: &mut Artifacts) -> Result<(), CliError> {
    let spec = JsaSpec::new(
        r.number("pump_width"),
        r.number("pm_width"),
        r.maybe_number("cavity_width"),
        r.number("pump_center"),
    )?;
    let jsa = build_jsa(&spec, r.count("n"))?;
    let rows = jsa.amplitude.indexed_iter().map(|((a, b), v)| [jsa.omega_s[a], jsa.omega_i[b], v.re, v.norm_sqr()]);
    let path = dir.join(output::JSA_CSV);
    output::write_csv(&path, output::JSA_HEADER, rows)?;
    art.files.push(path);
    if let Some((sigma, kappa)) = spec.effective_widths() {
        art.warnings.push(format!("collective comb: sigma_eff = {sigma}, kappa_eff = {kappa}"));
    }
    Ok(())
}

/// Validate, compute and write every artifact plus `manifest.json`.
pub fn run(config: &RunConfig) -> Result<RunReport, CliError> {
    let diagnostics = validate(config);
    let errors: Vec<String> = diagnostics
        .iter()
        .filter(|d| d.severity == Severity::Error)
        .map(|d| d.message.clone())
        .collect();
    if !errors.is_empty() {
        return Err(CliError::Config(errors));
    }
    for d in &diagnostics {
        log::warn!("{}", d.message);
    }
    let resolved = config.resolve()?;
    let dir = config.out.clone();
    fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;

    let mut art = Artifacts::default();
    match resolved.scenario {
        Scenario::State => run_state(&resolved, &dir, &mut art),
        Scenario::Carpet => run_carpet(&resolved, &dir, &mut art),
        Scenario::OverlapMap => run_overlap_map(&resolved, &dir, &mut art),
        Scenario::FidelitySweep => run_fidelity_sweep(&resolved, &dir, &mut art),
        Scenario::GateFidelity => run_gate_fidelity(&resolved, &dir, &mut art),
        Scenario::EcMap => run_ec_map(&resolved, &dir, &mut art),
        Scenario::HomMap => run_hom_map(&resolved, &dir, &mut art),
        Scenario::VisibilitySweep => run_visibility_sweep(&resolved, &dir, &mut art),
        Scenario::Jsa => run_jsa(&resolved, &dir, &mut art),
    }?;
    for w in &art.warnings {
        log::warn!("{w}");
    }

    output::write_manifest(
        &dir.join(output::MANIFEST_JSON),
        ManifestInput {
            config: &resolved,
            files: &art.files,
            diagnostics: &diagnostics,
            warnings: &art.warnings,
            cell_warnings: &art.cells,
        },
    )?;
    Ok(RunReport { files: art.files, diagnostics, warnings: art.warnings, cell_warnings: art.cells })
}
