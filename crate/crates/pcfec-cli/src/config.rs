//! Run configuration: presets, explicit code parameters, sweep
//! settings. Values come from an optional TOML file with command-line
//! flags taking precedence.

use std::path::PathBuf;

use pcfec::component::CodeSpec;
use serde::Deserialize;

/// Raw configuration file contents; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub preset: Option<String>,
    pub family: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub t: Option<usize>,
    pub b: Option<u32>,
    pub shorten: Option<usize>,
    pub extended: Option<bool>,
    pub solver: Option<String>,
    pub primitive_poly: Option<u32>,
    pub pp_guard: Option<String>,
    pub p: Option<Vec<f64>>,
    pub p_range: Option<String>,
    pub iters: Option<u32>,
    pub pp: Option<bool>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub stop_frame_errors: Option<u64>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

/// Post-processing flip guard selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardChoice {
    /// Stall-sized default: at most t+1 failures per dimension.
    Stall,
    /// No cap on the failed sets.
    Off,
    /// Explicit cap applied to both dimensions.
    Limit(usize),
}

impl GuardChoice {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "stall" => Ok(Self::Stall),
            "off" => Ok(Self::Off),
            other => other
                .parse::<usize>()
                .map(Self::Limit)
                .map_err(|_| format!("pp-guard must be `stall`, `off`, or a number, got `{other}`")),
        }
    }
}

/// Code selection shared by the code-carrying subcommands.
#[derive(Debug, Clone, clap::Args)]
pub struct CodeArgs {
    /// Code preset: `bch195` (extended shortened BCH (195,178,2)) or
    /// `rs32` (extended RS (32,27,2), b=5).
    #[arg(long)]
    pub preset: Option<String>,
    /// Component family (registry name: `binary-bch`, `reed-solomon`).
    #[arg(long)]
    pub family: Option<String>,
    /// Base code length in symbols, after shortening, before extension.
    #[arg(long)]
    pub n: Option<usize>,
    /// Information symbols.
    #[arg(long)]
    pub k: Option<usize>,
    /// Correction radius in symbols.
    #[arg(long)]
    pub t: Option<usize>,
    /// Bits per symbol (1 for binary BCH).
    #[arg(long)]
    pub b: Option<u32>,
    /// Leading information symbols fixed to zero.
    #[arg(long)]
    pub shorten: Option<usize>,
    /// Append the overall-parity extension symbol.
    #[arg(long)]
    pub extended: bool,
    /// Key-equation solver (`berlekamp-massey` or `peterson`).
    #[arg(long)]
    pub solver: Option<String>,
    /// Post-processing flip guard: `stall` (default), `off`, or a count.
    #[arg(long)]
    pub pp_guard: Option<String>,
}

impl CodeArgs {
    /// Resolves the component-code spec, flags over config over preset.
    pub fn resolve(&self, file: &FileConfig) -> Result<CodeSpec, String> {
        let preset = self.preset.as_ref().or(file.preset.as_ref());
        let mut spec = match preset.map(String::as_str) {
            Some("bch195") => CodeSpec::new("binary-bch", 194, 178, 2, 1)
                .shortened_by(61)
                .extended(true),
            Some("rs32") => CodeSpec::new("reed-solomon", 31, 27, 2, 5).extended(true),
            Some(other) => return Err(format!("unknown preset `{other}` (try bch195, rs32)")),
            None => {
                let family = self
                    .family
                    .clone()
                    .or(file.family.clone())
                    .ok_or("need --preset or --family with explicit parameters")?;
                let n = self.n.or(file.n).ok_or("missing --n")?;
                let k = self.k.or(file.k).ok_or("missing --k")?;
                let t = self.t.or(file.t).ok_or("missing --t")?;
                let b = self.b.or(file.b).ok_or("missing --b")?;
                let mut s = CodeSpec::new(&family, n, k, t, b);
                s.shorten_by = self.shorten.or(file.shorten).unwrap_or(0);
                s.extended = self.extended || file.extended.unwrap_or(false);
                s
            }
        };
        if let Some(solver) = self.solver.as_ref().or(file.solver.as_ref()) {
            spec.solver = solver.clone();
        }
        if let Some(poly) = file.primitive_poly {
            spec.primitive_poly = Some(poly);
        }
        Ok(spec)
    }

    pub fn guard(&self, file: &FileConfig) -> Result<GuardChoice, String> {
        match self.pp_guard.as_ref().or(file.pp_guard.as_ref()) {
            None => Ok(GuardChoice::Stall),
            Some(s) => GuardChoice::parse(s),
        }
    }
}

/// Sweep grid shared by `bounds` and `simulate`.
#[derive(Debug, Clone, clap::Args)]
pub struct GridArgs {
    /// Channel bit error probabilities (repeatable or comma-separated).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub p: Vec<f64>,
    /// Log-spaced grid `lo:hi:points` (points may be 0 for an empty grid).
    #[arg(long)]
    pub p_range: Option<String>,
}

impl GridArgs {
    pub fn resolve(&self, file: &FileConfig) -> Result<Vec<f64>, String> {
        if !self.p.is_empty() {
            return validated(self.p.clone());
        }
        if let Some(range) = self.p_range.as_ref().or(file.p_range.as_ref()) {
            return parse_range(range);
        }
        if let Some(p) = &file.p {
            return validated(p.clone());
        }
        Err("need --p or --p-range".into())
    }
}

fn validated(ps: Vec<f64>) -> Result<Vec<f64>, String> {
    for &p in &ps {
        if !(0.0..=1.0).contains(&p) {
            return Err(format!("p={p} outside [0,1]"));
        }
    }
    Ok(ps)
}

fn parse_range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("p-range wants lo:hi:points, got `{s}`"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| format!("bad lo in `{s}`"))?;
    let hi: f64 = parts[1].parse().map_err(|_| format!("bad hi in `{s}`"))?;
    let points: usize = parts[2].parse().map_err(|_| format!("bad points in `{s}`"))?;
    if points == 0 {
        return Ok(Vec::new());
    }
    if lo <= 0.0 || hi <= 0.0 || lo > hi {
        return Err(format!("p-range needs 0 < lo <= hi, got `{s}`"));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    Ok((0..points)
        .map(|i| (llo + (lhi - llo) * i as f64 / (points - 1) as f64).exp())
        .collect())
}
