//! Layered settings: command-line flags over `ZSTR_*` environment variables
//! over a `key = value` config file over built-in defaults.

use crate::error::{Error, Result};
use crate::eta::{PrecisionSpec, Strategy};
use std::path::{Path, PathBuf};

pub const ENV_CACHE_DIR: &str = "ZSTR_CACHE_DIR";
pub const ENV_PRECISION: &str = "ZSTR_PRECISION";
pub const ENV_STRATEGY: &str = "ZSTR_STRATEGY";
pub const ENV_COMPENSATED_PHASE: &str = "ZSTR_COMPENSATED_PHASE";

const KEYS: [&str; 4] = ["precision", "strategy", "compensated_phase", "cache_dir"];

/// One layer of optional overrides.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub precision: Option<f64>,
    pub strategy: Option<Strategy>,
    pub compensated_phase: Option<bool>,
    pub cache_dir: Option<PathBuf>,
}

impl Overrides {
    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            precision: self.precision.or(lower.precision),
            strategy: self.strategy.or(lower.strategy),
            compensated_phase: self.compensated_phase.or(lower.compensated_phase),
            cache_dir: self.cache_dir.or(lower.cache_dir),
        }
    }

    fn set(&mut self, key: &str, value: &str, origin: &str) -> Result<()> {
        let bad = |what: &str| Error::Usage(format!("{origin}: {what} '{value}' for {key}"));
        match key {
            "precision" => {
                let p: f64 = value.parse().map_err(|_| bad("invalid number"))?;
                if !(p > 0.0 && p.is_finite()) {
                    return Err(bad("precision must be positive, got"));
                }
                self.precision = Some(p);
            }
            "strategy" => {
                self.strategy = Some(value.parse().map_err(|_| bad("unknown strategy"))?);
            }
            "compensated_phase" => {
                self.compensated_phase = Some(parse_bool(value).ok_or_else(|| bad("not a boolean"))?);
            }
            "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
            _ => return Err(Error::Usage(format!("{origin}: unknown key '{key}'"))),
        }
        Ok(())
    }
}

pub fn parse_bool(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Some(true),
        "0" | "false" | "no" | "off" => Some(false),
        _ => None,
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str, origin: &str) -> Result<Overrides> {
    let mut o = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Usage(format!("{origin}:{}: expected key = value", lineno + 1))
        })?;
        let key = key.trim();
        let at = format!("{origin}:{}", lineno + 1);
        o.set(key, value.trim(), &at)?;
    }
    Ok(o)
}

pub fn load_config_file(path: &Path) -> Result<Overrides> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("config {}: {e}", path.display())))?;
    parse_config(&text, &path.display().to_string())
}

/// Reads the `ZSTR_*` variables through `get`, so tests can supply their own environment.
pub fn env_overrides<F>(get: F) -> Result<Overrides>
where
    F: Fn(&str) -> Option<String>,
{
    let mut o = Overrides::default();
    let pairs = [
        (ENV_PRECISION, KEYS[0]),
        (ENV_STRATEGY, KEYS[1]),
        (ENV_COMPENSATED_PHASE, KEYS[2]),
        (ENV_CACHE_DIR, KEYS[3]),
    ];
    for (var, key) in pairs {
        if let Some(v) = get(var) {
            if !v.trim().is_empty() {
                o.set(key, v.trim(), var)?;
            }
        }
    }
    Ok(o)
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    /// `None` means "use the operation's own default".
    pub precision: Option<f64>,
    pub strategy: Strategy,
    pub compensated_phase: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(flags: Overrides, env: Overrides, file: Overrides) -> Settings {
        let o = flags.over(env).over(file);
        Settings {
            precision: o.precision,
            strategy: o.strategy.unwrap_or(Strategy::Accelerated),
            compensated_phase: o.compensated_phase.unwrap_or(false),
            cache_dir: o.cache_dir,
        }
    }

    /// Precision spec with `default_p` standing in for an unset precision.
    pub fn spec_with_default(&self, default_p: f64) -> PrecisionSpec {
        PrecisionSpec {
            p: self.precision.unwrap_or(default_p),
            strategy: self.strategy,
            compensated_phase: self.compensated_phase,
        }
    }

    pub fn spec(&self) -> PrecisionSpec {
        self.spec_with_default(PrecisionSpec::default().p)
    }
}
