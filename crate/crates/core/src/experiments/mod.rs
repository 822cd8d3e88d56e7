//! End-to-end experiments behind the command-line driver. Each run produces
//! CSV tables, a JSON summary and a list of checked assertions.

mod commands;
pub mod ensemble;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

pub use commands::run;

/// Experiment selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    DeficitSweep,
    Stability,
    Reconstruct,
    Homogenize,
    Instability,
    Sharpness,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Spectrum,
        Command::DeficitSweep,
        Command::Stability,
        Command::Reconstruct,
        Command::Homogenize,
        Command::Instability,
        Command::Sharpness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::DeficitSweep => "deficit-sweep",
            Command::Stability => "stability",
            Command::Reconstruct => "reconstruct",
            Command::Homogenize => "homogenize",
            Command::Instability => "instability",
            Command::Sharpness => "sharpness",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown command {s:?}")))
    }
}

/// Parameters of one run. [`ExperimentConfig::new`] fills in per-command defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    /// Expression or coefficient CSV path; see [`crate::parse::parse_weight`].
    pub weight: String,
    /// Galerkin truncation (or number of map terms for `reconstruct`); `None` picks from the bandwidth.
    pub n_modes: Option<usize>,
    pub grid: usize,
    pub k_max: usize,
    /// Amplitudes for `deficit-sweep`; Hölder exponent (first entry) elsewhere.
    pub alpha: Vec<f64>,
    /// Frequencies or orders of the ladder.
    pub sweep: Vec<usize>,
    pub eps: f64,
    pub teeth: Vec<usize>,
    /// `(rings, sectors)` of the finite element mesh.
    pub mesh: (usize, usize),
    pub seed: u64,
    pub tol: f64,
    /// Ensemble size for `stability`.
    pub samples: usize,
    pub out: PathBuf,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        let weight = match command {
            Command::Homogenize => "1.2 + 0.1*cos(2*t)",
            Command::Reconstruct => "1 + 0.2*cos(3*t)",
            _ => "1",
        };
        let sweep = match command {
            Command::DeficitSweep | Command::Instability => vec![4, 8, 16, 32, 64],
            Command::Sharpness => vec![8, 16, 32, 64],
            _ => Vec::new(),
        };
        let alpha = match command {
            Command::DeficitSweep => vec![0.05, 0.1, 0.2, 0.4],
            _ => vec![1.0],
        };
        Self {
            command,
            weight: weight.into(),
            n_modes: None,
            grid: crate::disk::DEFAULT_GRID,
            k_max: 6,
            alpha,
            sweep,
            eps: 0.5,
            teeth: vec![8, 16, 32],
            mesh: (16, 512),
            seed: 0,
            tol: 1e-10,
            samples: 200,
            out: PathBuf::from("out"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if !(self.tol > 0.0) {
            return bad(format!("tolerance {} must be positive", self.tol));
        }
        if self.grid < 16 {
            return bad(format!("grid {} is too small", self.grid));
        }
        if self.alpha.is_empty() || self.alpha.iter().any(|&a| !(a > 0.0)) {
            return bad("alpha values must be positive".into());
        }
        match self.command {
            Command::DeficitSweep => {
                if self.alpha.iter().any(|&a| a >= 1.0) {
                    return bad("amplitudes must be below 1".into());
                }
                if self.sweep.is_empty() || self.sweep.iter().any(|&n| n < 4) {
                    return bad("frequency sweep must be non-empty with N ≥ 4".into());
                }
            }
            Command::Instability | Command::Sharpness => {
                if self.sweep.is_empty() || self.sweep.iter().any(|&n| n == 0) {
                    return bad("order sweep must be non-empty and positive".into());
                }
            }
            Command::Homogenize => {
                if self.teeth.is_empty() || self.teeth.iter().any(|&k| k < 2 || k % 2 == 1) {
                    return bad("tooth counts must be non-empty, even and at least 2".into());
                }
                if self.mesh.0 < 2 || self.mesh.1 < 8 {
                    return bad("mesh needs at least 2 rings and 8 sectors".into());
                }
            }
            Command::Stability | Command::Reconstruct => {
                if self.alpha[0] > 1.0 {
                    return bad("Hölder exponent must lie in (0, 1]".into());
                }
                if self.command == Command::Stability && self.samples == 0 {
                    return bad("ensemble size must be positive".into());
                }
            }
            Command::Spectrum => {}
        }
        if self.command == Command::Sharpness && !(self.eps > 0.0 && self.eps < 1.0) {
            return bad(format!("eps = {} not in (0, 1)", self.eps));
        }
        Ok(())
    }
}

/// `N=a..b` (doubling from `a` to `b`), `a..b`, or a comma list `4,8,16`.
pub fn parse_sweep(text: &str) -> Result<Vec<usize>> {
    let body = text.split_once('=').map_or(text, |(_, b)| b).trim();
    let int = |s: &str| {
        s.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("invalid sweep value {s:?}")))
    };
    let values = if let Some((a, b)) = body.split_once("..") {
        let (mut a, b) = (int(a)?, int(b)?);
        if a == 0 || a > b {
            return Err(Error::InvalidInput(format!("empty sweep range {body:?}")));
        }
        let mut v = Vec::new();
        while a <= b {
            v.push(a);
            a *= 2;
        }
        v
    } else {
        body.split(',').map(int).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        return Err(Error::InvalidInput("empty sweep".into()));
    }
    Ok(values)
}

/// Comma-separated reals.
pub fn parse_reals(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| Error::InvalidInput(format!("invalid number {s:?}"))))
        .collect()
}

/// `rings,sectors`.
pub fn parse_mesh(text: &str) -> Result<(usize, usize)> {
    let v = parse_sweep(text)?;
    match v[..] {
        [r, s] if !text.contains("..") => Ok((r, s)),
        _ => Err(Error::InvalidInput(format!("mesh must be given as rings,sectors, got {text:?}"))),
    }
}

/// A named CSV table with string cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("UTF-8 cells")
    }
}

/// One checked bracket.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`run`]. The first table is the primary one.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: Command,
    pub tables: Vec<Table>,
    pub results: Map<String, Value>,
    pub assertions: Vec<Assertion>,
}

impl Report {
    fn new(command: Command) -> Self {
        Self { command, tables: Vec::new(), results: Map::new(), assertions: Vec::new() }
    }

    fn assert(&mut self, name: &str, passed: bool, detail: String) {
        self.assertions.push(Assertion { name: name.into(), passed, detail });
    }

    fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.into(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    fn file_name(&self, table: &Table) -> String {
        if table.name == self.command.name() {
            format!("{}.csv", table.name)
        } else {
            format!("{}_{}.csv", self.command.name(), table.name)
        }
    }

    /// Summary with config echo, results, assertions, seed and versions.
    pub fn to_json(&self, config: &ExperimentConfig) -> Value {
        json!({
            "command": self.command.name(),
            "config": config,
            "seed": config.seed,
            "results": self.results,
            "assertions": self.assertions,
            "passed": self.passed(),
            "tables": self.tables.iter().map(|t| self.file_name(t)).collect::<Vec<_>>(),
            "versions": { "steklov": env!("CARGO_PKG_VERSION") },
            "generated_unix": unix_time(),
        })
    }

    /// Writes the CSV tables and `<command>.json` into `dir`; returns the paths.
    pub fn write(&self, config: &ExperimentConfig, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        for t in &self.tables {
            let path = dir.join(self.file_name(t));
            std::fs::write(&path, t.to_csv())?;
            paths.push(path);
        }
        let path = dir.join(format!("{}.json", self.command.name()));
        std::fs::write(&path, serde_json::to_string_pretty(&self.to_json(config))?)?;
        paths.push(path);
        Ok(paths)
    }
}

fn unix_time() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Exit status: 0 when every assertion holds, 1 on a failed assertion, 2 for
/// invalid input, 3 for a numerical failure.
pub fn exit_code(outcome: &Result<Report>) -> i32 {
    match outcome {
        Ok(r) if r.passed() => 0,
        Ok(_) => 1,
        Err(e) if e.is_numerical() => 3,
        Err(_) => 2,
    }
}

/// Structured record written in place of a report when a run fails.
pub fn error_record(config: &ExperimentConfig, error: &Error) -> Value {
    json!({
        "command": config.command.name(),
        "config": config,
        "seed": config.seed,
        "error": {
            "kind": if error.is_numerical() { "numerical" } else { "input" },
            "message": error.to_string(),
        },
        "generated_unix": unix_time(),
    })
}
