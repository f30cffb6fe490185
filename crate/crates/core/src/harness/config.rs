//! Experiment configuration: flat `key = value` lines, `#` starts a comment.
//!
//! Keys: `x` (comma list, `1e6` notation allowed), `y_rule`
//! (`fixed:Y`, `power:ALPHA`, `ratio:BETA`, `exp_rule:C`), `k` (`K` or
//! `A..B`), `predictors` (comma list, may be empty), `out`, `svg`,
//! `cache_dir`, and the validity constants `c_small_y`, `k_small_y`, `kappa`,
//! `selberg_r`.

use std::fmt;
use std::path::{Path, PathBuf};

use log::warn;

use crate::error::{Error, Result};
use crate::predictors::{PredictorId, Settings};

pub const CACHE_ENV: &str = "SPF_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".spf-cache";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum YRule {
    Fixed(f64),
    /// y = x^{1/α}
    Power(f64),
    /// y = x/β
    Ratio(f64),
    /// y = exp(log x/(c loglog x))
    Exp(f64),
}

/// y as used by the harness: an integer threshold in [2, x].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedY {
    pub y: u64,
    pub raw: f64,
    pub clamped: bool,
}

impl YRule {
    pub fn raw(&self, x: u64) -> f64 {
        let xf = x as f64;
        match *self {
            YRule::Fixed(y) => y,
            YRule::Power(a) => xf.powf(1.0 / a),
            YRule::Ratio(b) => xf / b,
            YRule::Exp(c) => (xf.ln() / (c * xf.ln().ln())).exp(),
        }
    }

    /// Rounds y up to the next integer (p < y and p < ⌈y⌉ select the same
    /// primes), snapping values within 1e-9 of an integer, then clamps to
    /// [2, x] with a warning.
    pub fn derive(&self, x: u64) -> DerivedY {
        let raw = self.raw(x);
        let r = raw.round();
        let mut y = if (raw - r).abs() <= 1e-9 * r.max(1.0) {
            r
        } else {
            raw.ceil()
        };
        let lo = 2.0;
        let hi = (x.max(2)) as f64;
        let clamped = !(raw >= lo && y <= hi);
        if clamped {
            warn!("y = {raw} from rule {self} lies outside [2, {x}]; clamped");
            y = if y.is_nan() { lo } else { y.clamp(lo, hi) };
        }
        DerivedY { y: y as u64, raw, clamped }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (kind, v) = s
            .split_once(':')
            .ok_or_else(|| Error::Usage(format!("y_rule '{s}' must look like kind:value")))?;
        let v = parse_real(v.trim())?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Usage(format!("y_rule parameter must be positive, got {v}")));
        }
        match kind.trim() {
            "fixed" => Ok(YRule::Fixed(v)),
            "power" => Ok(YRule::Power(v)),
            "ratio" => Ok(YRule::Ratio(v)),
            "exp_rule" | "exp" => Ok(YRule::Exp(v)),
            other => Err(Error::Usage(format!("unknown y_rule kind '{other}'"))),
        }
    }
}

impl fmt::Display for YRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YRule::Fixed(v) => write!(f, "fixed:{v}"),
            YRule::Power(v) => write!(f, "power:{v}"),
            YRule::Ratio(v) => write!(f, "ratio:{v}"),
            YRule::Exp(v) => write!(f, "exp_rule:{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub x_list: Vec<u64>,
    pub y_rule: Option<YRule>,
    pub k_min: u32,
    pub k_max: u32,
    pub predictors: Vec<PredictorId>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub settings: Settings,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            x_list: Vec::new(),
            y_rule: None,
            k_min: 0,
            k_max: 4,
            predictors: Vec::new(),
            out: None,
            svg: None,
            cache_dir: None,
            settings: Settings::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Usage(format!("config line {}: expected key = value", i + 1))
            })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| Error::Usage(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "x" | "x_list" => self.x_list = parse_count_list(value)?,
            "y_rule" => self.y_rule = Some(YRule::parse(value)?),
            "k" | "k_range" => {
                let (a, b) = parse_k_range(value)?;
                self.k_min = a;
                self.k_max = b;
            }
            "predictors" | "model" => self.predictors = parse_predictors(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "svg" => self.svg = Some(PathBuf::from(value)),
            "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
            "c_small_y" => self.settings.c_small_y = parse_real(value)?,
            "k_small_y" => self.settings.k_small_y = parse_real(value)?,
            "kappa" => self.settings.kappa = parse_real(value)?,
            "selberg_r" => self.settings.selberg_r = parse_real(value)?,
            other => return Err(Error::Usage(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<YRule> {
        if self.x_list.is_empty() {
            return Err(Error::Usage("no x values given".into()));
        }
        if self.k_min > self.k_max {
            return Err(Error::Usage(format!(
                "empty k range {}..{}",
                self.k_min, self.k_max
            )));
        }
        if let Some(id) = self.predictors.iter().find(|id| id.is_sum()) {
            return Err(Error::Usage(format!(
                "{id} predicts S_z, not N_k; use the sum command"
            )));
        }
        self.y_rule
            .ok_or_else(|| Error::Usage("no y_rule given".into()))
    }

    pub fn resolved_cache_dir(&self) -> PathBuf {
        resolve_cache_dir(self.cache_dir.as_deref())
    }
}

/// Flag or config value, then `SPF_CACHE_DIR`, then `./.spf-cache`.
pub fn resolve_cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    match std::env::var_os(CACHE_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

pub fn parse_real(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Usage(format!("'{s}' is not a number")))
}

/// Nonnegative integer, accepting `1e8` style input.
pub fn parse_count(s: &str) -> Result<u64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let v = parse_real(s)?;
    if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 {
        Ok(v as u64)
    } else {
        Err(Error::Usage(format!("'{s}' is not a nonnegative integer")))
    }
}

pub fn parse_count_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(parse_count)
        .collect()
}

pub fn parse_k_range(s: &str) -> Result<(u32, u32)> {
    let to_u32 = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Error::Usage(format!("bad k value '{t}'")))
    };
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((to_u32(a)?, to_u32(b)?))
        }
        None => {
            let k = to_u32(s)?;
            Ok((k, k))
        }
    }
}

pub fn parse_predictors(s: &str) -> Result<Vec<PredictorId>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_file() {
        let cfg = ExperimentConfig::parse(
            "# sweep\nx = 1e6, 1e7 ,10000000\ny_rule = ratio:30\nk = 1..3 # inclusive\npredictors = thm2,landau\nkappa=0.1\n\n",
        )
        .unwrap();
        assert_eq!(cfg.x_list, vec![1_000_000, 10_000_000, 10_000_000]);
        assert_eq!(cfg.y_rule, Some(YRule::Ratio(30.0)));
        assert_eq!((cfg.k_min, cfg.k_max), (1, 3));
        assert_eq!(cfg.predictors, vec![PredictorId::Thm2, PredictorId::Landau]);
        assert_eq!(cfg.settings.kappa, 0.1);
        assert!(ExperimentConfig::parse("bogus = 1").is_err());
        assert!(ExperimentConfig::parse("x 1").is_err());
        assert!(ExperimentConfig::parse("x = 1.5").is_err());
        let empty = ExperimentConfig::parse("x=100\ny_rule=fixed:10\npredictors=\n").unwrap();
        assert!(empty.predictors.is_empty());
        assert!(empty.validate().is_ok());
        let bad = ExperimentConfig::parse("x=100\ny_rule=fixed:10\nk=3..1").unwrap();
        assert!(bad.validate().is_err());
        let sum = ExperimentConfig::parse("x=100\ny_rule=fixed:10\npredictors=sum_small_y").unwrap();
        assert!(sum.validate().is_err());
    }

    #[test]
    fn derived_y() {
        assert_eq!(YRule::Power(4.0).derive(100_000_000).y, 100);
        assert_eq!(YRule::Power(2.0).derive(1_000_000).y, 1000);
        assert_eq!(YRule::Ratio(30.0).derive(1_000_000).y, 33_334);
        assert_eq!(YRule::Ratio(10.0).derive(1_000_000).y, 100_000);
        let d = YRule::Exp(12.0).derive(100_000_000);
        assert!(d.clamped && d.y == 2 && (d.raw - 1.69).abs() < 0.01);
        let d = YRule::Fixed(500.0).derive(100);
        assert!(d.clamped && d.y == 100);
        assert!(!YRule::Fixed(2.0).derive(100).clamped);
    }

    #[test]
    fn cache_dir_precedence() {
        assert_eq!(resolve_cache_dir(Some(Path::new("/tmp/c"))), PathBuf::from("/tmp/c"));
    }
}
