use std::path::Path;
use std::process::ExitCode;

use serde::Deserialize;
use stairgb::groebner::FanBudget;
use stairgb::poly::VarNames;
use stairgb::Error;

use crate::{Cli, Format};

pub const DEFAULT_SEED: u64 = 20_240_501;

/// A failed run: message for stderr plus process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn report(&self) -> ExitCode {
        eprintln!("error: {}", self.message);
        ExitCode::from(self.code)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => 3,
            Error::WitnessMismatch(_) | Error::Overflow(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Contents of `--config file.json`. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    p: Option<u64>,
    n: Option<usize>,
    max_box: Option<u64>,
    max_points: Option<usize>,
    max_states: Option<u64>,
    max_sets: Option<u64>,
    max_augment: Option<usize>,
    names: Option<String>,
    format: Option<Format>,
    seed: Option<u64>,
    threads: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Modulus and dimension for CSV point files.
    pub csv: Option<(u64, usize)>,
    pub fan: FanBudget,
    pub max_states: u64,
    pub max_sets: u64,
    pub max_augment: usize,
    pub names: Option<String>,
    pub format: Format,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            csv: None,
            fan: FanBudget::default(),
            max_states: 1 << 16,
            max_sets: 1_000_000,
            max_augment: 8,
            names: None,
            format: Format::Json,
            seed: DEFAULT_SEED,
            threads: None,
        }
    }
}

fn positive<T: PartialOrd + Default>(name: &str, v: T) -> Result<T, Failure> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(Failure::input(format!("{name} must be positive")))
    }
}

fn parse_csv_flag(text: &str) -> Result<(u64, usize), Failure> {
    let bad = || Failure::input(format!("--csv expects P,N, got {text:?}"));
    let (p, n) = text.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, Failure> {
        let mut c = RunConfig::default();
        if let Some(path) = &cli.config {
            c.merge(load(path)?)?;
        }
        if let Some(text) = &cli.csv {
            c.csv = Some(parse_csv_flag(text)?);
        }
        if let Some(f) = cli.format {
            c.format = f;
        }
        if let Some(names) = &cli.names {
            c.names = Some(names.clone());
        }
        if let Some(t) = cli.threads {
            c.threads = Some(positive("threads", t)?);
        }
        Ok(c)
    }

    fn merge(&mut self, f: ConfigFile) -> Result<(), Failure> {
        match (f.p, f.n) {
            (Some(p), Some(n)) => self.csv = Some((p, n)),
            (None, None) => {}
            _ => return Err(Failure::input("config needs both p and n or neither")),
        }
        if let Some(v) = f.max_box {
            self.fan.max_box = positive("max_box", v)?;
        }
        if let Some(v) = f.max_points {
            self.fan.max_points = positive("max_points", v)?;
        }
        if let Some(v) = f.max_states {
            self.max_states = positive("max_states", v)?;
        }
        if let Some(v) = f.max_sets {
            self.max_sets = positive("max_sets", v)?;
        }
        if let Some(v) = f.max_augment {
            self.max_augment = positive("max_augment", v)?;
        }
        if let Some(v) = f.threads {
            self.threads = Some(positive("threads", v)?);
        }
        self.names = f.names.or(self.names.take());
        self.format = f.format.unwrap_or(self.format);
        self.seed = f.seed.unwrap_or(self.seed);
        Ok(())
    }

    /// Variable names for `n` variables, falling back to `fallback` then x1..xn.
    pub fn names(&self, n: usize, fallback: Option<VarNames>) -> Result<VarNames, Failure> {
        match &self.names {
            Some(text) => Ok(VarNames::from_assignments(n, text)?),
            None => Ok(fallback.filter(|v| v.len() == n).unwrap_or_else(|| VarNames::standard(n))),
        }
    }
}

fn load(path: &Path) -> Result<ConfigFile, Failure> {
    let text = stairgb::io::read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("bad config {}: {e}", path.display())))
}
