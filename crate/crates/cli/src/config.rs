//! Run configuration from command-line flags and an optional flat
//! `key = value` file. Flags win over the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Arg, ArgAction};
use triwell::scan::{Axis, Deviation, GridSpec, Quantity, SweepSpec};
use triwell::{EnergyUnit, ModelParams};

/// Every key accepted on the command line (as `--key`) and in config files.
pub const KEYS: &[(&str, &str)] = &[
    ("n", "boson number"),
    ("u", "interaction strength U"),
    ("j", "tunneling amplitude J"),
    ("eps", "tilt amplitude"),
    ("axis", "swept coupling: u, j or eps"),
    ("start", "first value of the swept coupling"),
    ("end", "last value of the swept coupling"),
    ("steps", "number of sweep points"),
    ("u-min", "grid: smallest U/J"),
    ("u-max", "grid: largest U/J"),
    ("eps-min", "grid: smallest eps/J"),
    ("eps-max", "grid: largest eps/J"),
    ("u-steps", "grid: number of U values"),
    ("eps-steps", "grid: number of eps values"),
    ("quantity", "grid: n1, n2 or n3"),
    ("family", "critical: j0, eps0 or tilted"),
    ("deviation", "correspond: energy or occupations"),
    ("tol", "correspond: agreement tolerance"),
    ("n-max", "correspond: largest boson number tried"),
    ("levels", "spectrum: list every eigenvalue (true/false)"),
    ("per", "energy unit: J, eps or none"),
    ("format", "csv or json"),
    ("precision", "significant digits"),
    ("output", "output file (default: stdout)"),
];

pub const COMMANDS: &[&str] = &["spectrum", "stationary", "sweep", "grid", "critical", "correspond"];

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("missing required key '{0}'")]
    Missing(String),
    #[error("malformed value for '{key}': '{value}' (expected {expected})")]
    Malformed { key: String, value: String, expected: &'static str },
    #[error("unknown command '{0}' (expected one of {list})", list = COMMANDS.join(", "))]
    UnknownCommand(String),
    #[error("invalid value for '{key}': {reason}")]
    Invalid { key: String, reason: String },
    #[error("config file {path}: line {line}: {reason}")]
    FileSyntax { path: String, line: usize, reason: String },
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("{0}")]
    Usage(String),
    /// `--help` or `--version`; the payload is the text to print.
    #[error("{0}")]
    Info(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalFamily {
    NoTunneling,
    NoTilt,
    /// `J = 1` with a fixed nonzero tilt.
    Tilted,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Spectrum { params: ModelParams, levels: bool },
    Stationary { params: ModelParams },
    Sweep { spec: SweepSpec },
    Grid { spec: GridSpec, quantity: Quantity },
    Critical { family: CriticalFamily, eps: f64 },
    Correspond { spec: SweepSpec, deviation: Deviation, tol: f64, n_max: u64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Stationary { .. } => "stationary",
            Command::Sweep { .. } => "sweep",
            Command::Grid { .. } => "grid",
            Command::Critical { .. } => "critical",
            Command::Correspond { .. } => "correspond",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub per: EnergyUnit,
    pub format: Format,
    pub precision: usize,
    pub output: Option<PathBuf>,
    /// Effective value of every key the command used, defaults included.
    pub echo: BTreeMap<String, String>,
}

fn cli() -> clap::Command {
    let mut cmd = clap::Command::new("triwell")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Quantum and semiclassical analysis of bosons in a tilted triple well")
        .allow_negative_numbers(true)
        .arg(Arg::new("command").value_name("COMMAND").help(COMMANDS.join(" | ")))
        .arg(Arg::new("config").long("config").value_name("FILE").help("flat key = value file"));
    for (key, help) in KEYS {
        cmd = cmd.arg(Arg::new(*key).long(*key).action(ArgAction::Set).help(*help));
    }
    cmd
}

fn from_clap(err: clap::Error) -> ConfigError {
    match err.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ConfigError::Info(err.to_string()),
        ErrorKind::UnknownArgument => match err.get(ContextKind::InvalidArg) {
            Some(ContextValue::String(s)) => {
                let name = s.trim_start_matches('-');
                let name = name.split(['=', ' ']).next().unwrap_or(name);
                ConfigError::UnknownKey(name.to_string())
            }
            _ => ConfigError::Usage(err.to_string()),
        },
        _ => ConfigError::Usage(err.to_string()),
    }
}

fn normalize_key(k: &str) -> String {
    k.trim().to_ascii_lowercase().replace('_', "-")
}

/// Parses a flat config file: one `key = value` per line, `#` comments.
pub fn parse_config_text(text: &str, origin: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(ConfigError::FileSyntax {
                path: origin.to_string(),
                line: i + 1,
                reason: format!("expected 'key = value', got '{line}'"),
            });
        };
        let key = normalize_key(k);
        if key != "command" && !KEYS.iter().any(|(name, _)| *name == key) {
            return Err(ConfigError::UnknownKey(key));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io(path.display().to_string(), e.to_string()))?;
    parse_config_text(&text, &path.display().to_string())
}

/// Builds a [`RunConfig`] from `argv` (program name first).
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let m = cli().try_get_matches_from(argv).map_err(from_clap)?;
    let mut values = match m.get_one::<String>("config") {
        Some(path) => read_config_file(Path::new(path))?,
        None => BTreeMap::new(),
    };
    if let Some(c) = m.get_one::<String>("command") {
        values.insert("command".into(), c.clone());
    }
    for (key, _) in KEYS {
        if let Some(v) = m.get_one::<String>(key) {
            values.insert((*key).to_string(), v.clone());
        }
    }
    resolve(values)
}

struct Resolver {
    values: BTreeMap<String, String>,
    echo: BTreeMap<String, String>,
}

impl Resolver {
    fn raw(&mut self, key: &str) -> Option<String> {
        let v = self.values.get(key).cloned();
        if let Some(v) = &v {
            self.echo.insert(key.to_string(), v.clone());
        }
        v
    }

    fn parsed<T>(
        &mut self,
        key: &str,
        default: Option<T>,
        expected: &'static str,
        parse: impl Fn(&str) -> Option<T>,
        show: impl Fn(&T) -> String,
    ) -> Result<T, ConfigError> {
        match self.raw(key) {
            Some(v) => parse(&v).ok_or_else(|| ConfigError::Malformed {
                key: key.to_string(),
                value: v.clone(),
                expected,
            }),
            None => {
                let d = default.ok_or_else(|| ConfigError::Missing(key.to_string()))?;
                self.echo.insert(key.to_string(), show(&d));
                Ok(d)
            }
        }
    }

    fn real(&mut self, key: &str, default: Option<f64>) -> Result<f64, ConfigError> {
        self.parsed(
            key,
            default,
            "a finite decimal number",
            |s| s.parse::<f64>().ok().filter(|x| x.is_finite()),
            |x| x.to_string(),
        )
    }

    fn count(&mut self, key: &str, default: Option<u64>) -> Result<u64, ConfigError> {
        self.parsed(key, default, "a non-negative integer", |s| s.parse().ok(), |x| x.to_string())
    }

    fn choice<T: Copy + PartialEq>(
        &mut self,
        key: &str,
        default: Option<T>,
        expected: &'static str,
        options: &[(&str, T)],
    ) -> Result<T, ConfigError> {
        let name_of = |t: &T| -> String {
            options
                .iter()
                .find(|(_, o)| o == t)
                .map(|(n, _)| n.to_string())
                .unwrap_or_default()
        };
        self.parsed(
            key,
            default,
            expected,
            |s| {
                let s = s.to_ascii_lowercase();
                options.iter().find(|(n, _)| *n == s).map(|(_, t)| *t)
            },
            name_of,
        )
    }

    fn model(&mut self, need_n: bool) -> Result<ModelParams, ConfigError> {
        let n = if need_n { self.count("n", None)? } else { 1 };
        let p = ModelParams {
            u: self.real("u", None)?,
            j: self.real("j", None)?,
            eps: self.real("eps", None)?,
            n,
        };
        if need_n && n == 0 {
            return Err(invalid("n", "must be at least 1"));
        }
        Ok(p)
    }

    fn sweep(&mut self, need_n: bool) -> Result<SweepSpec, ConfigError> {
        let axis = self.choice("axis", None, "u, j or eps", &[("u", Axis::U), ("j", Axis::J), ("eps", Axis::Eps)])?;
        let start = self.real("start", None)?;
        let end = self.real("end", None)?;
        let steps = self.count("steps", None)?;
        if steps < 2 {
            return Err(invalid("steps", "must be at least 2"));
        }
        let n = if need_n { self.count("n", None)? } else { 1 };
        if n == 0 {
            return Err(invalid("n", "must be at least 1"));
        }
        let mut fixed = ModelParams { u: 0.0, j: 0.0, eps: 0.0, n };
        for (key, ax) in [("u", Axis::U), ("j", Axis::J), ("eps", Axis::Eps)] {
            if ax != axis {
                fixed = ax.set(&fixed, self.real(key, None)?);
            }
        }
        Ok(SweepSpec { axis, start, end, steps: steps as usize, fixed })
    }
}

fn invalid(key: &str, reason: &str) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), reason: reason.to_string() }
}

/// Turns merged key/value pairs into a [`RunConfig`].
pub fn resolve(values: BTreeMap<String, String>) -> Result<RunConfig, ConfigError> {
    for key in values.keys() {
        if key != "command" && !KEYS.iter().any(|(k, _)| k == key) {
            return Err(ConfigError::UnknownKey(key.clone()));
        }
    }
    let mut r = Resolver { values, echo: BTreeMap::new() };
    let name = r.raw("command").ok_or_else(|| ConfigError::Missing("command".into()))?;

    let command = match name.as_str() {
        "spectrum" => {
            let params = r.model(true)?;
            let levels = r.choice("levels", Some(false), "true or false", &[("true", true), ("false", false)])?;
            Command::Spectrum { params, levels }
        }
        "stationary" => Command::Stationary { params: r.model(false)? },
        "sweep" => Command::Sweep { spec: r.sweep(true)? },
        "grid" => {
            let d = GridSpec::default();
            let u_range = (r.real("u-min", Some(d.u_range.0))?, r.real("u-max", Some(d.u_range.1))?);
            let eps_range =
                (r.real("eps-min", Some(d.eps_range.0))?, r.real("eps-max", Some(d.eps_range.1))?);
            let steps = (
                r.count("u-steps", Some(d.steps.0 as u64))? as usize,
                r.count("eps-steps", Some(d.steps.1 as u64))? as usize,
            );
            for (key, s) in [("u-steps", steps.0), ("eps-steps", steps.1)] {
                if s < 2 {
                    return Err(invalid(key, "must be at least 2"));
                }
            }
            let quantity = r.choice(
                "quantity",
                None,
                "n1, n2 or n3",
                &[("n1", Quantity::N1), ("n2", Quantity::N2), ("n3", Quantity::N3)],
            )?;
            Command::Grid { spec: GridSpec { u_range, eps_range, steps }, quantity }
        }
        "critical" => {
            let family = r.choice(
                "family",
                None,
                "j0, eps0 or tilted",
                &[
                    ("j0", CriticalFamily::NoTunneling),
                    ("eps0", CriticalFamily::NoTilt),
                    ("tilted", CriticalFamily::Tilted),
                ],
            )?;
            let eps = match family {
                CriticalFamily::Tilted => {
                    let e = r.real("eps", Some(0.5))?;
                    if e == 0.0 {
                        return Err(invalid("eps", "tilted family needs a nonzero tilt"));
                    }
                    e
                }
                _ => 0.0,
            };
            Command::Critical { family, eps }
        }
        "correspond" => {
            let spec = r.sweep(false)?;
            let deviation = r.choice(
                "deviation",
                None,
                "energy or occupations",
                &[("energy", Deviation::Energy), ("occupations", Deviation::Occupations)],
            )?;
            let tol = r.real("tol", None)?;
            if !(tol > 0.0) {
                return Err(invalid("tol", "must be positive"));
            }
            let n_max = r.count("n-max", None)?;
            if n_max == 0 {
                return Err(invalid("n-max", "must be at least 1"));
            }
            Command::Correspond { spec, deviation, tol, n_max }
        }
        other => return Err(ConfigError::UnknownCommand(other.to_string())),
    };

    let per = r.choice(
        "per",
        Some(EnergyUnit::None),
        "J, eps or none",
        &[("j", EnergyUnit::J), ("eps", EnergyUnit::Eps), ("none", EnergyUnit::None)],
    )?;
    let format = r.choice("format", Some(Format::Csv), "csv or json", &[("csv", Format::Csv), ("json", Format::Json)])?;
    let precision = r.count("precision", Some(12))?;
    if !(1..=17).contains(&precision) {
        return Err(invalid("precision", "must be between 1 and 17"));
    }
    let output = r.raw("output").map(PathBuf::from);
    Ok(RunConfig { command, per, format, precision: precision as usize, output, echo: r.echo })
}
