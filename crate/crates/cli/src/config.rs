//! Scenario parameters: flat key/value sets with per-scenario schemas.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    State,
    Carpet,
    OverlapMap,
    FidelitySweep,
    GateFidelity,
    EcMap,
    HomMap,
    VisibilitySweep,
    Jsa,
}

impl Scenario {
    pub const ALL: [Scenario; 9] = [
        Scenario::State,
        Scenario::Carpet,
        Scenario::OverlapMap,
        Scenario::FidelitySweep,
        Scenario::GateFidelity,
        Scenario::EcMap,
        Scenario::HomMap,
        Scenario::VisibilitySweep,
        Scenario::Jsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::State => "state",
            Scenario::Carpet => "carpet",
            Scenario::OverlapMap => "overlap-map",
            Scenario::FidelitySweep => "fidelity-sweep",
            Scenario::GateFidelity => "gate-fidelity",
            Scenario::EcMap => "ec-map",
            Scenario::HomMap => "hom-map",
            Scenario::VisibilitySweep => "visibility-sweep",
            Scenario::Jsa => "jsa",
        }
    }

    /// Accepted keys, with defaults where optional.
    pub fn schema(self) -> &'static [Param] {
        match self {
            Scenario::State => STATE,
            Scenario::Carpet => CARPET,
            Scenario::OverlapMap => OVERLAP_MAP,
            Scenario::FidelitySweep => FIDELITY_SWEEP,
            Scenario::GateFidelity => GATE_FIDELITY,
            Scenario::EcMap => EC_MAP,
            Scenario::HomMap => HOM_MAP,
            Scenario::VisibilitySweep => VISIBILITY_SWEEP,
            Scenario::Jsa => JSA,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Number,
    Count,
    Text,
}

#[derive(Debug, Clone, Copy)]
pub enum Default {
    Required,
    Number(f64),
    Text(&'static str),
    Absent,
}

#[derive(Debug, Clone, Copy)]
pub struct Param {
    pub key: &'static str,
    pub kind: Kind,
    pub default: Default,
}

const fn req(key: &'static str, kind: Kind) -> Param {
    Param { key, kind, default: Default::Required }
}

const fn num(key: &'static str, value: f64) -> Param {
    Param { key, kind: Kind::Number, default: Default::Number(value) }
}

const fn count(key: &'static str, value: f64) -> Param {
    Param { key, kind: Kind::Count, default: Default::Number(value) }
}

const fn text(key: &'static str, value: &'static str) -> Param {
    Param { key, kind: Kind::Text, default: Default::Text(value) }
}

const fn optional(key: &'static str, kind: Kind) -> Param {
    Param { key, kind, default: Default::Absent }
}

use Kind::{Count, Number, Text};

const KAPPA_AXIS: [Param; 6] = [
    req("kappa_min", Number),
    req("kappa_max", Number),
    req("n_kappa", Count),
    req("sigma_min", Number),
    req("sigma_max", Number),
    req("n_sigma", Count),
];

const STATE: &[Param] = &[req("kappa", Number), req("sigma", Number), req("label", Text), num("beta", 0.0)];

const CARPET: &[Param] = &[
    req("kappa", Number),
    req("sigma", Number),
    text("label", "zero_t"),
    req("beta_min", Number),
    req("beta_max", Number),
    req("n_beta", Count),
    num("t_min", -4.0 * std::f64::consts::PI),
    num("t_max", 4.0 * std::f64::consts::PI),
    count("n_t", 512.0),
];

const OVERLAP_MAP: &[Param] = &[
    KAPPA_AXIS[0],
    KAPPA_AXIS[1],
    KAPPA_AXIS[2],
    KAPPA_AXIS[3],
    KAPPA_AXIS[4],
    KAPPA_AXIS[5],
    text("basis", "time"),
    text("method", "exact"),
];

const FIDELITY_SWEEP: &[Param] = &[
    KAPPA_AXIS[0],
    KAPPA_AXIS[1],
    KAPPA_AXIS[2],
    KAPPA_AXIS[3],
    KAPPA_AXIS[4],
    KAPPA_AXIS[5],
    req("beta", Number),
    text("input", "zero_t"),
    text("target", "one_t"),
];

const GATE_FIDELITY: &[Param] = &[
    KAPPA_AXIS[0],
    KAPPA_AXIS[1],
    KAPPA_AXIS[2],
    KAPPA_AXIS[3],
    KAPPA_AXIS[4],
    KAPPA_AXIS[5],
    req("beta", Number),
    req("target", Text),
    optional("theta", Number),
];

const EC_MAP: &[Param] = &[
    KAPPA_AXIS[0],
    KAPPA_AXIS[1],
    KAPPA_AXIS[2],
    KAPPA_AXIS[3],
    KAPPA_AXIS[4],
    KAPPA_AXIS[5],
    num("threshold_fraction", 1.0 / 6.0),
];

const HOM_MAP: &[Param] = &[
    req("kappa", Number),
    req("sigma", Number),
    req("label", Text),
    num("beta", 0.0),
    num("mu_min", -1.0),
    num("mu_max", 1.0),
    count("n_mu", 5.0),
    num("tau_min", -2.0 * std::f64::consts::PI),
    num("tau_max", 2.0 * std::f64::consts::PI),
    count("n_tau", 401.0),
];

const VISIBILITY_SWEEP: &[Param] = &[
    KAPPA_AXIS[0],
    KAPPA_AXIS[1],
    KAPPA_AXIS[2],
    KAPPA_AXIS[3],
    KAPPA_AXIS[4],
    KAPPA_AXIS[5],
    text("label", "zero_t"),
    num("beta", 0.0),
    num("s", 2.0),
    num("k", 1.0),
];

const JSA: &[Param] = &[
    req("pm_width", Number),
    num("pump_width", 0.0),
    optional("cavity_width", Number),
    num("pump_center", 0.0),
    count("n", 512.0),
];

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Text(String),
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Number(x) if x.fract() == 0.0 && x.abs() < 1e15 => s.serialize_i64(*x as i64),
            Value::Number(x) => s.serialize_f64(*x),
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

impl Value {
    /// Numbers where they parse, text otherwise.
    pub fn parse(raw: &str) -> Self {
        let raw = raw.trim();
        match f64::from_str(raw) {
            Ok(v) => Value::Number(v),
            Err(_) => Value::Text(raw.trim_matches('"').to_string()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(v) => write!(f, "{v}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub params: BTreeMap<String, Value>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(scenario: Scenario, out: impl Into<PathBuf>) -> Self {
        Self { scenario, params: BTreeMap::new(), out: out.into() }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Merge a flat TOML file.
    pub fn load_toml(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.merge_toml(&text)
    }

    pub fn merge_toml(&mut self, text: &str) -> Result<(), CliError> {
        let table: toml::Table = text.parse().map_err(|e| CliError::Config(vec![format!("config: {e}")]))?;
        let mut problems = Vec::new();
        for (key, v) in table {
            let value = match v {
                toml::Value::Integer(i) => Value::Number(i as f64),
                toml::Value::Float(x) => Value::Number(x),
                toml::Value::String(s) => Value::Text(s),
                other => {
                    problems.push(format!("key `{key}`: unsupported value type {}", other.type_str()));
                    continue;
                }
            };
            self.params.insert(key, value);
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(problems))
        }
    }

    /// Apply a `key=value` override.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(vec![format!("--set expects key=value, got `{assignment}`")]))?;
        self.params.insert(key.trim().to_string(), Value::parse(value));
        Ok(())
    }

    /// Fill defaults and type-check; every problem is reported at once.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let schema = self.scenario.schema();
        let mut problems = Vec::new();
        for key in self.params.keys() {
            if !schema.iter().any(|p| p.key == key) {
                problems.push(format!("unknown key `{key}` for scenario {}", self.scenario));
            }
        }
        let missing: Vec<&str> = schema
            .iter()
            .filter(|p| matches!(p.default, Default::Required) && !self.params.contains_key(p.key))
            .map(|p| p.key)
            .collect();
        if !missing.is_empty() {
            problems.push(format!("missing keys: {}", missing.join(", ")));
        }
        let mut values = BTreeMap::new();
        for p in schema {
            let value = match (self.params.get(p.key), p.default) {
                (Some(v), _) => v.clone(),
                (None, Default::Number(x)) => Value::Number(x),
                (None, Default::Text(s)) => Value::Text(s.to_string()),
                (None, _) => continue,
            };
            match (p.kind, &value) {
                (Kind::Text, _) => {}
                (Kind::Number, Value::Number(x)) if x.is_finite() => {}
                (Kind::Count, Value::Number(x)) if *x >= 1.0 && x.fract() == 0.0 && *x <= 1e9 => {}
                (Kind::Count, _) => {
                    problems.push(format!("key `{}` must be a positive integer, got {value}", p.key));
                }
                (Kind::Number, _) => problems.push(format!("key `{}` must be a finite number, got {value}", p.key)),
            }
            let value = match (p.kind, value) {
                (Kind::Text, Value::Number(x)) => Value::Text(x.to_string()),
                (_, v) => v,
            };
            values.insert(p.key.to_string(), value);
        }
        if problems.is_empty() {
            Ok(Resolved { scenario: self.scenario, values })
        } else {
            Err(CliError::Config(problems))
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Number(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

/// Schema-checked parameters with defaults filled in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolved {
    pub scenario: Scenario,
    pub values: BTreeMap<String, Value>,
}

impl Resolved {
    pub fn number(&self, key: &str) -> f64 {
        match self.values.get(key) {
            Some(Value::Number(x)) => *x,
            _ => panic!("resolved config lacks numeric `{key}`"),
        }
    }

    pub fn maybe_number(&self, key: &str) -> Option<f64> {
        match self.values.get(key) {
            Some(Value::Number(x)) => Some(*x),
            _ => None,
        }
    }

    pub fn count(&self, key: &str) -> usize {
        self.number(key) as usize
    }

    pub fn text(&self, key: &str) -> &str {
        match self.values.get(key) {
            Some(Value::Text(s)) => s,
            _ => panic!("resolved config lacks text `{key}`"),
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn warning(message: impl Into<String>) -> Self {
        Self { severity: Severity::Warning, message: message.into() }
    }

    fn error(message: impl Into<String>) -> Self {
        Self { severity: Severity::Error, message: message.into() }
    }
}

pub const OVERLAP_WARNING: &str = "peaks overlap; asymptotic formulas unreliable";
pub const ENVELOPE_WARNING: &str = "envelope narrower than the comb spacing; codewords barely resolve";

fn check_sigma(key: &str, sigma: f64, out: &mut Vec<Diagnostic>) {
    if sigma <= 0.0 {
        out.push(Diagnostic::error(format!("`{key}` must be positive, got {sigma}")));
    } else if sigma >= 0.5 {
        out.push(Diagnostic::warning(format!("{key} = {sigma}: {OVERLAP_WARNING}")));
    }
}

fn check_kappa(key: &str, kappa: f64, out: &mut Vec<Diagnostic>) {
    if kappa <= 0.0 {
        out.push(Diagnostic::error(format!("`{key}` must be positive, got {kappa}")));
    } else if kappa < 1.0 {
        out.push(Diagnostic::warning(format!("{key} = {kappa}: {ENVELOPE_WARNING}")));
    }
}

fn check_range(lo: &str, hi: &str, r: &Resolved, out: &mut Vec<Diagnostic>) {
    if r.number(lo) > r.number(hi) {
        out.push(Diagnostic::error(format!("`{lo}` exceeds `{hi}`")));
    }
}

fn check_label(key: &str, r: &Resolved, out: &mut Vec<Diagnostic>) {
    if r.text(key).parse::<talbot_gkp::LogicalLabel>().is_err() {
        out.push(Diagnostic::error(format!("`{key}`: unknown codeword `{}`", r.text(key))));
    }
}

/// Pure check of a config. Schema problems come back as error diagnostics.
pub fn validate(config: &RunConfig) -> Vec<Diagnostic> {
    let r = match config.resolve() {
        Ok(r) => r,
        Err(CliError::Config(problems)) => return problems.into_iter().map(Diagnostic::error).collect(),
        Err(e) => return vec![Diagnostic::error(e.to_string())],
    };
    let mut out = Vec::new();
    for key in ["sigma", "sigma_min", "sigma_max", "cavity_width"] {
        if let Some(v) = r.maybe_number(key) {
            check_sigma(key, v, &mut out);
        }
    }
    for key in ["kappa", "kappa_min", "kappa_max"] {
        if let Some(v) = r.maybe_number(key) {
            check_kappa(key, v, &mut out);
        }
    }
    if r.has("kappa_min") {
        check_range("kappa_min", "kappa_max", &r, &mut out);
        check_range("sigma_min", "sigma_max", &r, &mut out);
    }
    for key in ["label", "input"] {
        if r.has(key) {
            check_label(key, &r, &mut out);
        }
    }
    match r.scenario {
        Scenario::FidelitySweep => check_label("target", &r, &mut out),
        Scenario::GateFidelity => {
            if let Err(e) = crate::run::gate_target(&r) {
                out.push(Diagnostic::error(e));
            }
        }
        Scenario::OverlapMap => {
            if !matches!(r.text("basis"), "time" | "frequency") {
                out.push(Diagnostic::error("`basis` must be `time` or `frequency`"));
            }
            if !matches!(r.text("method"), "exact" | "asymptotic") {
                out.push(Diagnostic::error("`method` must be `exact` or `asymptotic`"));
            }
        }
        Scenario::EcMap => {
            let f = r.number("threshold_fraction");
            if !(f > 0.0 && f <= 0.5) {
                out.push(Diagnostic::error("`threshold_fraction` must lie in (0, 1/2]"));
            }
        }
        Scenario::Carpet => {
            check_range("beta_min", "beta_max", &r, &mut out);
            if r.count("n_beta") < 2 || r.count("n_t") < 2 {
                out.push(Diagnostic::error("carpet needs `n_beta` and `n_t` of at least 2"));
            }
            if r.number("t_min") >= r.number("t_max") {
                out.push(Diagnostic::error("`t_min` must be below `t_max`"));
            }
        }
        Scenario::HomMap => {
            check_range("mu_min", "mu_max", &r, &mut out);
            check_range("tau_min", "tau_max", &r, &mut out);
        }
        Scenario::VisibilitySweep => {
            for key in ["s", "k"] {
                if r.number(key).fract() != 0.0 {
                    out.push(Diagnostic::error(format!("`{key}` must be an integer lattice index")));
                }
            }
        }
        Scenario::Jsa => {
            if r.number("pm_width") <= 0.0 {
                out.push(Diagnostic::error("`pm_width` must be positive"));
            }
            if r.number("pump_width") < 0.0 {
                out.push(Diagnostic::error("`pump_width` must be non-negative"));
            }
            if r.count("n") < 64 {
                out.push(Diagnostic::error("`n` must be at least 64"));
            }
        }
        Scenario::State => {}
    }
    out
}
