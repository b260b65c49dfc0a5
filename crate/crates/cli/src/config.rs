//! Flat `key = value` run configuration. Every subcommand flag has a config
//! key of the same name (minus the `--`); flags given on the command line
//! win over config values.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::CliError;

#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn empty() -> Self {
        FileConfig::default()
    }

    /// Parses `path`: one `key = value` per line, lines starting with `#`
    /// are comments, blank lines ignored. Values are taken verbatim (no
    /// inline comments), and keys outside `allowed` or repeated keys are
    /// rejected.
    pub fn load(path: &Path, allowed: &[&str]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let stripped = raw.trim();
            if stripped.is_empty() || stripped.starts_with('#') {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or_else(|| {
                CliError::Validation(format!(
                    "config {} line {line}: expected `key = value`, got {raw:?}",
                    path.display()
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            if !allowed.contains(&key) {
                return Err(CliError::Validation(format!(
                    "config {} line {line}: unknown key {key:?} (allowed: {})",
                    path.display(),
                    allowed.join(", ")
                )));
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Validation(format!(
                    "config {} line {line}: duplicate key {key:?}",
                    path.display()
                )));
            }
        }
        Ok(FileConfig { values })
    }

    /// Loads `path` when given, otherwise an empty config.
    pub fn load_opt(path: Option<&Path>, allowed: &[&str]) -> Result<Self, CliError> {
        match path {
            Some(p) => FileConfig::load(p, allowed),
            None => Ok(FileConfig::empty()),
        }
    }

    /// The parsed value under `key`, if present.
    pub fn get<T>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|e| {
                CliError::Validation(format!("config key {key:?}: cannot parse {raw:?}: {e}"))
            }),
        }
    }
}

/// Command-line flag if given, else the config value under `key`.
pub fn merged<T>(flag: Option<T>, cfg: &FileConfig, key: &str) -> Result<Option<T>, CliError>
where
    T: FromStr,
    T::Err: Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}

/// Unwraps a setting that must come from either the flag or the config.
pub fn require<T>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Validation(format!(
            "missing required --{name} (flag or config key `{name}`)"
        ))
    })
}

/// Shorthand for the common flag > config > required-path chain.
pub fn required_path(
    flag: Option<PathBuf>,
    cfg: &FileConfig,
    key: &str,
) -> Result<PathBuf, CliError> {
    require(merged(flag, cfg, key)?, key)
}
