//! Gateway configuration: one TOML file plus `ATREYA_*` environment
//! overrides. Every key is optional.

use std::fmt;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use atreya_core::chembl::endpoints::{DEFAULT_BASE_URL, MIN_SIMILARITY};
use atreya_core::presenter::{DEFAULT_RASTER_SIZE, MAX_RASTER_SIZE, MIN_RASTER_SIZE};
use serde::Deserialize;

pub const ENV_PREFIX: &str = "ATREYA_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Live,
    Replay,
    Record,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Live => "live",
            Mode::Replay => "replay",
            Mode::Record => "record",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "live" => Ok(Mode::Live),
            "replay" => Ok(Mode::Replay),
            "record" => Ok(Mode::Record),
            other => bail!("unknown mode `{other}` (expected live, replay or record)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub mode: Mode,
    pub fixture_dir: PathBuf,
    pub listen: SocketAddr,
    pub base_url: String,
    /// Ceiling on outbound ChEMBL requests per second.
    pub rate_limit: f64,
    pub raster_size: u32,
    pub pattern_book: Option<PathBuf>,
    pub log_level: String,
    pub max_sessions: usize,
    pub history_cap: usize,
    pub similarity_threshold: u8,
    pub page_size: usize,
    pub max_records: usize,
    /// Chat-transport access token checked at startup.
    pub token: Option<String>,
    /// Directory of static web assets served at `/`.
    pub static_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            mode: Mode::Replay,
            fixture_dir: PathBuf::from("fixtures/chembl"),
            listen: SocketAddr::from(([127, 0, 0, 1], 8080)),
            base_url: DEFAULT_BASE_URL.to_owned(),
            rate_limit: 5.0,
            raster_size: DEFAULT_RASTER_SIZE,
            pattern_book: None,
            log_level: "info".to_owned(),
            max_sessions: 1000,
            history_cap: atreya_core::dialog::DEFAULT_HISTORY_CAP,
            similarity_threshold: 70,
            page_size: 20,
            max_records: 200,
            token: None,
            static_dir: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| anyhow::anyhow!("{ENV_PREFIX}{}: {e}", key.to_ascii_uppercase()))
}

impl Config {
    /// Reads `path` (when given), then applies the process environment.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut config = match path {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        config.apply_env(std::env::vars())?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut config: Config = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        // Relative paths in the file are relative to the file itself.
        let base = path.parent().unwrap_or(Path::new(""));
        let anchor = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        anchor(&mut config.fixture_dir);
        config.pattern_book.as_mut().map(anchor);
        config.static_dir.as_mut().map(anchor);
        Ok(config)
    }

    /// Applies `ATREYA_<KEY>` overrides. Unknown `ATREYA_` variables are
    /// rejected so typos do not go unnoticed.
    pub fn apply_env<I: IntoIterator<Item = (String, String)>>(&mut self, vars: I) -> Result<()> {
        for (name, value) in vars {
            let Some(key) = name.strip_prefix(ENV_PREFIX) else {
                continue;
            };
            let key = key.to_ascii_lowercase();
            match key.as_str() {
                "mode" => self.mode = parse(&key, &value)?,
                "fixture_dir" => self.fixture_dir = PathBuf::from(value),
                "listen" => self.listen = parse(&key, &value)?,
                "base_url" => self.base_url = value,
                "rate_limit" => self.rate_limit = parse(&key, &value)?,
                "raster_size" => self.raster_size = parse(&key, &value)?,
                "pattern_book" => self.pattern_book = Some(PathBuf::from(value)),
                "log_level" => self.log_level = value,
                "max_sessions" => self.max_sessions = parse(&key, &value)?,
                "history_cap" => self.history_cap = parse(&key, &value)?,
                "similarity_threshold" => self.similarity_threshold = parse(&key, &value)?,
                "page_size" => self.page_size = parse(&key, &value)?,
                "max_records" => self.max_records = parse(&key, &value)?,
                "token" => self.token = Some(value),
                "static_dir" => self.static_dir = Some(PathBuf::from(value)),
                // Read directly as the tracing filter.
                "log" => {}
                _ => bail!("unknown configuration variable {name}"),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_RASTER_SIZE..=MAX_RASTER_SIZE).contains(&self.raster_size) {
            bail!("raster_size must be in {MIN_RASTER_SIZE}..={MAX_RASTER_SIZE}");
        }
        if !(MIN_SIMILARITY..=100).contains(&self.similarity_threshold) {
            bail!("similarity_threshold must be in {MIN_SIMILARITY}..=100");
        }
        if !(self.rate_limit.is_finite() && self.rate_limit > 0.0) {
            bail!("rate_limit must be a positive number");
        }
        if self.max_sessions == 0 || self.history_cap == 0 || self.page_size == 0 || self.max_records == 0 {
            bail!("max_sessions, history_cap, page_size and max_records must be at least 1");
        }
        Ok(())
    }
}
