//! JSON run configuration. Every field has a default; unknown keys are
//! rejected so a typo cannot silently fall back to a default.

use rotmorse::{MoleculeParams, RadialGrid};
use serde::Deserialize;
use std::path::PathBuf;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Molecular constants in atomic units; defaults are the I₂ values.
    pub molecule: MoleculeConfig,
    /// Rotational quantum numbers to process.
    pub j_list: Vec<u32>,
    /// Coherent-state parameter α.
    pub alpha: f64,
    /// Ladder size: "auto" uses n_max of each channel, or a fixed integer.
    pub n_prime: NPrimePolicy,
    /// Times: JSON numbers are absolute atomic-unit times; strings "r/s"
    /// are exact fractions of T_rev.
    pub times: Vec<TimeSpec>,
    /// Radial grid for densities, scans, and wave-packet support.
    pub radial_grid: GridConfig,
    /// Phase-space window for the Wigner transform.
    pub phase_space: PhaseSpaceConfig,
    /// Output directory (created if missing).
    pub out_dir: PathBuf,
    /// Grid serialization format: "csv" or "bin".
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            molecule: MoleculeConfig::default(),
            j_list: vec![0],
            alpha: 2.15,
            n_prime: NPrimePolicy::Auto("auto".into()),
            times: vec![TimeSpec::Fraction("1/4".into())],
            radial_grid: GridConfig::default(),
            phase_space: PhaseSpaceConfig::default(),
            out_dir: PathBuf::from("out"),
            format: OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MoleculeConfig {
    pub beta: f64,
    pub mu: f64,
    pub r0: f64,
    pub d: f64,
}

impl Default for MoleculeConfig {
    fn default() -> Self {
        let p = MoleculeParams::i2();
        Self {
            beta: p.beta,
            mu: p.mu,
            r0: p.r0,
            d: p.d,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NPrimePolicy {
    Fixed(u32),
    Auto(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TimeSpec {
    Absolute(f64),
    Fraction(String),
}

impl TimeSpec {
    /// Time in atomic units given the revival period.
    pub fn resolve(&self, t_rev: f64) -> Result<f64, CliError> {
        match self {
            TimeSpec::Absolute(t) => {
                if !t.is_finite() || *t < 0.0 {
                    return Err(CliError::Config(format!("invalid time {t}")));
                }
                Ok(*t)
            }
            TimeSpec::Fraction(s) => {
                let (numer, denom) = parse_fraction(s)?;
                Ok(numer as f64 / denom as f64 * t_rev)
            }
        }
    }

    /// Stable label used in output file names.
    pub fn label(&self) -> String {
        match self {
            TimeSpec::Absolute(t) => format!("{t}").replace('.', "p"),
            TimeSpec::Fraction(s) => s.replace('/', "over"),
        }
    }
}

fn parse_fraction(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Config(format!("time \"{s}\" is not an r/s fraction of T_rev"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let numer: u64 = n.trim().parse().map_err(|_| bad())?;
    let denom: u64 = d.trim().parse().map_err(|_| bad())?;
    if denom == 0 {
        return Err(bad());
    }
    Ok((numer, denom))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        // wide enough to support the default phase-space correlation window
        Self {
            r_min: 0.6,
            r_max: 10.6,
            count: 2048,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhaseSpaceConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub p_max: f64,
    pub n_p: usize,
}

impl Default for PhaseSpaceConfig {
    fn default() -> Self {
        Self {
            r_min: 4.2,
            r_max: 7.0,
            n_r: 256,
            p_max: 60.0,
            n_p: 256,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Bin,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "bin" => Ok(OutputFormat::Bin),
            other => Err(CliError::Config(format!(
                "format must be csv or bin, got \"{other}\""
            ))),
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&std::path::Path>) -> Result<Self, CliError> {
        let cfg = match path {
            None => Self::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Config(format!("cannot read config {}: {e}", p.display()))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("config parse error: {e}")))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        self.params()?;
        self.grid()?;
        if self.j_list.is_empty() {
            return Err(CliError::Config("j_list is empty".into()));
        }
        if self.times.is_empty() {
            return Err(CliError::Config("times is empty".into()));
        }
        for t in &self.times {
            t.resolve(1.0)?;
        }
        if let NPrimePolicy::Auto(s) = &self.n_prime {
            if s != "auto" {
                return Err(CliError::Config(format!(
                    "n_prime must be an integer or \"auto\", got \"{s}\""
                )));
            }
        }
        let ps = &self.phase_space;
        if ps.n_r < 2 || ps.n_p < 2 || !ps.n_p.is_multiple_of(2) {
            return Err(CliError::Config(format!(
                "phase_space needs n_r >= 2 and even n_p >= 2, got {} x {}",
                ps.n_r, ps.n_p
            )));
        }
        if !(ps.p_max > 0.0 && ps.r_min > 0.0 && ps.r_max > ps.r_min) {
            return Err(CliError::Config(format!(
                "phase_space window invalid: r in [{}, {}], p_max {}",
                ps.r_min, ps.r_max, ps.p_max
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> Result<MoleculeParams, CliError> {
        let m = &self.molecule;
        MoleculeParams::new(m.beta, m.mu, m.r0, m.d)
            .map_err(|e| CliError::Config(format!("molecule: {e}")))
    }

    pub fn grid(&self) -> Result<RadialGrid, CliError> {
        let g = &self.radial_grid;
        RadialGrid::new(g.r_min, g.r_max, g.count)
            .map_err(|e| CliError::Config(format!("radial_grid: {e}")))
    }

    pub fn n_prime_for(&self, n_max: u32) -> u32 {
        match self.n_prime {
            NPrimePolicy::Fixed(n) => n,
            NPrimePolicy::Auto(_) => n_max,
        }
    }
}
