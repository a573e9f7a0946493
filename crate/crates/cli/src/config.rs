//! Command-line flags, `key = value` config files and the resolved run
//! configuration. Flags override file values; unset keys take per-command
//! defaults.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tunneltimes::wavepacket::{DelayMethod, Symmetrization};
use tunneltimes::NormalizationMode;

use crate::error::CliError;

/// Tunneling times for a rectangular barrier: sweeps, figure data, wave-packet
/// runs and self-checks, written as CSV.
#[derive(Debug, Parser)]
#[command(name = "tunneltimes", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Times,
    Figure1,
    Figure2,
    Packet,
    Scan,
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep n and tabulate the one-way and symmetric times.
    Times(Flags),
    /// One-way and symmetric phase times against wL for a few values of n.
    Figure1(Flags),
    /// Symmetric and one-way times against n, normalized by τ_w and by τ_k.
    Figure2(Flags),
    /// Synthesize a symmetric collision and extract the centroid delay.
    Packet(Flags),
    /// Flag where |T|² > 1/2 and the symmetric phase time beats τ_k.
    Scan(Flags),
    /// Run the invariant suite; exits with status 3 if any check fails.
    Verify(Flags),
}

impl Command {
    pub fn split(self) -> (CommandKind, Flags) {
        match self {
            Command::Times(f) => (CommandKind::Times, f),
            Command::Figure1(f) => (CommandKind::Figure1, f),
            Command::Figure2(f) => (CommandKind::Figure2, f),
            Command::Packet(f) => (CommandKind::Packet, f),
            Command::Scan(f) => (CommandKind::Scan, f),
            Command::Verify(f) => (CommandKind::Verify, f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymArg {
    Plus,
    Minus,
    Single,
}

impl From<SymArg> for Symmetrization {
    fn from(s: SymArg) -> Self {
        match s {
            SymArg::Plus => Symmetrization::Plus,
            SymArg::Minus => Symmetrization::Minus,
            SymArg::Single => Symmetrization::SingleLeft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Abs,
    Tauk,
    Tauw,
}

impl From<NormArg> for NormalizationMode {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Abs => NormalizationMode::Absolute,
            NormArg::Tauk => NormalizationMode::ByTauK,
            NormArg::Tauw => NormalizationMode::ByTauW,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Centroid,
    Peak,
}

impl From<MethodArg> for DelayMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Centroid => DelayMethod::Centroid,
            MethodArg::Peak => DelayMethod::Peak,
        }
    }
}

/// Every setting, optional so that file values and defaults can fill gaps.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Dimensionless barrier strength wL.
    #[arg(long)]
    pub wl: Option<f64>,
    #[arg(long)]
    pub n_min: Option<f64>,
    #[arg(long)]
    pub n_max: Option<f64>,
    #[arg(long)]
    pub n_steps: Option<usize>,
    /// Momentum spread σ_k/k0 of the packets.
    #[arg(long)]
    pub sigma_rel: Option<f64>,
    /// Drop momenta k ≥ (1 − delta)·w from the packets.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum)]
    pub sym: Option<SymArg>,
    #[arg(long, value_enum)]
    pub norm: Option<NormArg>,
    /// Output file (a directory for `packet`); stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Seed for the randomized verification points.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Keep points within 1e-6 of the barrier top.
    #[arg(long)]
    pub series: bool,
    /// Comma-separated n values for `figure1`.
    #[arg(long, value_delimiter = ',')]
    pub n_values: Option<Vec<f64>>,
    #[arg(long)]
    pub wl_min: Option<f64>,
    #[arg(long)]
    pub wl_max: Option<f64>,
    #[arg(long)]
    pub wl_steps: Option<usize>,
    /// Central n = k0²/w² for `packet`.
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Propagate the packets without the barrier.
    #[arg(long)]
    pub free: bool,
    /// Verify with the doubled-argument transmission phase.
    #[arg(long)]
    pub inject_tanh2: bool,
}

impl Flags {
    /// Values from `self` win over `other`.
    fn or(self, other: Flags) -> Flags {
        Flags {
            wl: self.wl.or(other.wl),
            n_min: self.n_min.or(other.n_min),
            n_max: self.n_max.or(other.n_max),
            n_steps: self.n_steps.or(other.n_steps),
            sigma_rel: self.sigma_rel.or(other.sigma_rel),
            delta: self.delta.or(other.delta),
            sym: self.sym.or(other.sym),
            norm: self.norm.or(other.norm),
            out: self.out.or(other.out),
            config: self.config.or(other.config),
            seed: self.seed.or(other.seed),
            series: self.series || other.series,
            n_values: self.n_values.or(other.n_values),
            wl_min: self.wl_min.or(other.wl_min),
            wl_max: self.wl_max.or(other.wl_max),
            wl_steps: self.wl_steps.or(other.wl_steps),
            n: self.n.or(other.n),
            method: self.method.or(other.method),
            free: self.free || other.free,
            inject_tanh2: self.inject_tanh2 || other.inject_tanh2,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value `{value}` for `{key}`")))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, CliError> {
    T::from_str(value, true).map_err(|_| CliError::Config(format!("invalid value `{value}` for `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Config(format!("invalid value `{value}` for `{key}`"))),
    }
}

/// Parses `key = value` lines; `#` starts a comment, keys accept `-` or `_`.
pub fn parse_config(text: &str) -> Result<Flags, CliError> {
    let mut f = Flags::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "wl" => f.wl = Some(parse_value(&key, value)?),
            "n_min" => f.n_min = Some(parse_value(&key, value)?),
            "n_max" => f.n_max = Some(parse_value(&key, value)?),
            "n_steps" => f.n_steps = Some(parse_value(&key, value)?),
            "sigma_rel" => f.sigma_rel = Some(parse_value(&key, value)?),
            "delta" => f.delta = Some(parse_value(&key, value)?),
            "sym" => f.sym = Some(parse_enum(&key, value)?),
            "norm" => f.norm = Some(parse_enum(&key, value)?),
            "out" => f.out = Some(PathBuf::from(value)),
            "seed" => f.seed = Some(parse_value(&key, value)?),
            "series" => f.series = parse_bool(&key, value)?,
            "n_values" => {
                let values = value
                    .split(',')
                    .map(|v| parse_value(&key, v.trim()))
                    .collect::<Result<Vec<f64>, _>>()?;
                f.n_values = Some(values);
            }
            "wl_min" => f.wl_min = Some(parse_value(&key, value)?),
            "wl_max" => f.wl_max = Some(parse_value(&key, value)?),
            "wl_steps" => f.wl_steps = Some(parse_value(&key, value)?),
            "n" => f.n = Some(parse_value(&key, value)?),
            "method" => f.method = Some(parse_enum(&key, value)?),
            "free" => f.free = parse_bool(&key, value)?,
            "inject_tanh2" => f.inject_tanh2 = parse_bool(&key, value)?,
            other => return Err(CliError::Config(format!("line {}: unknown key `{other}`", lineno + 1))),
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub wl: f64,
    pub n_min: f64,
    pub n_max: f64,
    pub n_steps: usize,
    pub sigma_rel: f64,
    pub delta: f64,
    pub sym: SymArg,
    pub norm: NormArg,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub series: bool,
    pub n_values: Vec<f64>,
    pub wl_min: f64,
    pub wl_max: f64,
    pub wl_steps: usize,
    pub n: f64,
    pub method: MethodArg,
    pub free: bool,
    pub inject_tanh2: bool,
}

pub const DEFAULT_SEED: u64 = 20_240_521;

impl RunConfig {
    pub fn resolve(command: CommandKind, flags: Flags) -> Result<Self, CliError> {
        let flags = match &flags.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                flags.or(parse_config(&text)?)
            }
            None => flags,
        };
        let (n_min, n_max, n_steps) = match command {
            CommandKind::Scan => (0.01, 4.0, 400),
            _ => (0.01, 0.99, 99),
        };
        let cfg = RunConfig {
            command,
            wl: flags.wl.unwrap_or(4.0 * PI),
            n_min: flags.n_min.unwrap_or(n_min),
            n_max: flags.n_max.unwrap_or(n_max),
            n_steps: flags.n_steps.unwrap_or(n_steps),
            sigma_rel: flags.sigma_rel.unwrap_or(0.01),
            delta: flags.delta.unwrap_or(0.0),
            sym: flags.sym.unwrap_or(SymArg::Plus),
            norm: flags.norm.unwrap_or(NormArg::Tauk),
            out: flags.out,
            seed: flags.seed.unwrap_or(DEFAULT_SEED),
            series: flags.series,
            n_values: flags.n_values.unwrap_or_else(|| vec![0.25, 0.5, 0.75]),
            wl_min: flags.wl_min.unwrap_or(0.1),
            wl_max: flags.wl_max.unwrap_or(8.0 * PI),
            wl_steps: flags.wl_steps.unwrap_or(200),
            n: flags.n.unwrap_or(0.5),
            method: flags.method.unwrap_or(MethodArg::Centroid),
            free: flags.free,
            inject_tanh2: flags.inject_tanh2,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !(self.wl > 0.0 && self.wl.is_finite()) {
            return bad(format!("wl must be positive, got {}", self.wl));
        }
        if !(self.n_min > 0.0 && self.n_min < self.n_max && self.n_max.is_finite()) {
            return bad(format!("need 0 < n_min < n_max, got {} and {}", self.n_min, self.n_max));
        }
        if self.n_steps < 2 {
            return bad(format!("n_steps must be at least 2, got {}", self.n_steps));
        }
        if !(self.wl_min > 0.0 && self.wl_min < self.wl_max && self.wl_max.is_finite()) {
            return bad(format!("need 0 < wl_min < wl_max, got {} and {}", self.wl_min, self.wl_max));
        }
        if self.wl_steps < 2 {
            return bad(format!("wl_steps must be at least 2, got {}", self.wl_steps));
        }
        if self.n_values.is_empty() || self.n_values.iter().any(|n| !(*n > 0.0 && *n < 1.0)) {
            return bad("n_values must be a non-empty list inside (0, 1)".into());
        }
        if !(self.sigma_rel > 0.0 && self.sigma_rel < 1.0) {
            return bad(format!("sigma_rel must lie in (0, 1), got {}", self.sigma_rel));
        }
        if !(0.0..1.0).contains(&self.delta) {
            return bad(format!("delta must lie in [0, 1), got {}", self.delta));
        }
        if !(self.n > 0.0 && self.n < 1.0) {
            return bad(format!("packet n must lie in (0, 1), got {}", self.n));
        }
        Ok(())
    }

    /// Echo of the settings relevant to the command, for CSV headers.
    pub fn provenance(&self) -> String {
        let name = format!("{:?}", self.command).to_lowercase();
        let mut s = format!("tunneltimes {} {name}", env!("CARGO_PKG_VERSION"));
        let sweep = format!(
            " wl={} n_min={} n_max={} n_steps={}",
            self.wl, self.n_min, self.n_max, self.n_steps
        );
        match self.command {
            CommandKind::Times => {
                s += &sweep;
                s += &format!(" norm={:?} series={}", self.norm, self.series).to_lowercase();
            }
            CommandKind::Figure1 => {
                let ns: Vec<String> = self.n_values.iter().map(f64::to_string).collect();
                s += &format!(
                    " n_values={} wl_min={} wl_max={} wl_steps={}",
                    ns.join(","),
                    self.wl_min,
                    self.wl_max,
                    self.wl_steps
                );
            }
            CommandKind::Figure2 | CommandKind::Scan => s += &sweep,
            CommandKind::Packet => {
                s += &format!(
                    " wl={} n={} sigma_rel={} delta={} sym={:?} method={:?} free={}",
                    self.wl, self.n, self.sigma_rel, self.delta, self.sym, self.method, self.free
                )
                .to_lowercase();
            }
            CommandKind::Verify => {
                s += &format!(" seed={} inject_tanh2={}", self.seed, self.inject_tanh2);
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_fill_gaps_and_flags_win() {
        let file = parse_config("# sweep\nwl = 3.5\nn-steps = 7 # inline\nsym = minus\n\nseries = true\n").unwrap();
        let flags = Flags { wl: Some(2.0), ..Flags::default() }.or(file);
        assert_eq!(flags.wl, Some(2.0));
        assert_eq!(flags.n_steps, Some(7));
        assert_eq!(flags.sym, Some(SymArg::Minus));
        assert!(flags.series);
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(parse_config("wl 3").is_err());
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("n_steps = -1").is_err());
        assert!(parse_config("norm = furlongs").is_err());
    }

    #[test]
    fn invalid_sweeps_are_rejected() {
        let flags = |f: Flags| RunConfig::resolve(CommandKind::Times, f);
        assert!(flags(Flags { n_steps: Some(1), ..Flags::default() }).is_err());
        assert!(flags(Flags { n_min: Some(0.5), n_max: Some(0.4), ..Flags::default() }).is_err());
        assert!(flags(Flags { wl: Some(-1.0), ..Flags::default() }).is_err());
        assert!(flags(Flags::default()).is_ok());
    }

    #[test]
    fn scan_defaults_reach_past_two() {
        let cfg = RunConfig::resolve(CommandKind::Scan, Flags::default()).unwrap();
        assert_eq!(cfg.n_max, 4.0);
    }
}
