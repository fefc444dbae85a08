//! Flat key-value experiment configs with one section per module.
//!
//! ```text
//! # comment
//! [model]
//! c0 = 1.0
//! a0 = 1.0
//! b0 = auto
//! gamma = 0.75
//! family = treeby-cox
//! ```
//!
//! Unknown keys are hard errors: a silent typo in `gamma` or `a0` would
//! invalidate an experiment. Every getter consumes its key; [`Config::finish`]
//! rejects whatever is left.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use fracwave_core::model::{derive_b0, ModelFamily, WaveModel};
use fracwave_core::synth::GridConfig;
use fracwave_core::transform::TaperMode;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Parsed config: sections of key → (value, consumed flag).
#[derive(Debug, Default)]
pub struct Config {
    sections: BTreeMap<String, BTreeMap<String, (String, bool)>>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut sections: BTreeMap<String, BTreeMap<String, (String, bool)>> = BTreeMap::new();
        let mut current = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let Some(name) = name.strip_suffix(']') else {
                    return err(format!("line {}: malformed section header", lineno + 1));
                };
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return err(format!("line {}: expected `key = value`", lineno + 1));
            };
            if current.is_empty() {
                return err(format!(
                    "line {}: key `{}` appears before any [section]",
                    lineno + 1,
                    key.trim()
                ));
            }
            let prev = sections
                .get_mut(&current)
                .unwrap()
                .insert(key.trim().into(), (value.trim().into(), false));
            if prev.is_some() {
                return err(format!("duplicate key `{current}.{}`", key.trim()));
            }
        }
        Ok(Self { sections })
    }

    fn take(&mut self, section: &str, key: &str) -> Option<String> {
        let entry = self.sections.get_mut(section)?.get_mut(key)?;
        entry.1 = true;
        Some(entry.0.clone())
    }

    pub fn take_str(&mut self, section: &str, key: &str) -> Result<String, ConfigError> {
        self.take(section, key)
            .ok_or_else(|| ConfigError(format!("missing key `{section}.{key}`")))
    }

    pub fn take_f64(&mut self, section: &str, key: &str) -> Result<f64, ConfigError> {
        parse_f64(section, key, &self.take_str(section, key)?)
    }

    pub fn take_f64_or(
        &mut self,
        section: &str,
        key: &str,
        default: f64,
    ) -> Result<f64, ConfigError> {
        match self.take(section, key) {
            Some(v) => parse_f64(section, key, &v),
            None => Ok(default),
        }
    }

    pub fn take_usize_or(
        &mut self,
        section: &str,
        key: &str,
        default: usize,
    ) -> Result<usize, ConfigError> {
        match self.take(section, key) {
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| ConfigError(format!("key `{section}.{key}`: invalid integer `{v}`"))),
            None => Ok(default),
        }
    }

    pub fn take_f64_list(&mut self, section: &str, key: &str) -> Result<Vec<f64>, ConfigError> {
        let raw = self.take_str(section, key)?;
        raw.split(',')
            .map(|s| parse_f64(section, key, s.trim()))
            .collect()
    }

    pub fn take_str_list(&mut self, section: &str, key: &str) -> Result<Vec<String>, ConfigError> {
        Ok(self
            .take_str(section, key)?
            .split(',')
            .map(|s| s.trim().to_string())
            .collect())
    }

    /// Errors on any key that no command schema consumed.
    pub fn finish(&self) -> Result<(), ConfigError> {
        for (section, keys) in &self.sections {
            for (key, (_, consumed)) in keys {
                if !consumed {
                    return err(format!("unknown key `{section}.{key}`"));
                }
            }
        }
        Ok(())
    }

    /// Fully resolved view for the run manifest.
    pub fn resolved(&self) -> BTreeMap<String, BTreeMap<String, String>> {
        self.sections
            .iter()
            .map(|(s, keys)| {
                (
                    s.clone(),
                    keys.iter()
                        .map(|(k, (v, _))| (k.clone(), v.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    /// Read a `[model]`-shaped section into a validated [`WaveModel`];
    /// `b0 = auto` invokes the tan coupling.
    pub fn take_model(&mut self, section: &str) -> Result<WaveModel, ConfigError> {
        let c0 = self.take_f64(section, "c0")?;
        let a0 = self.take_f64(section, "a0")?;
        let gamma = self.take_f64(section, "gamma")?;
        let family = match self.take_str(section, "family")?.as_str() {
            "lossless" => ModelFamily::Lossless,
            "chen-holm" => ModelFamily::ChenHolm,
            "treeby-cox" => ModelFamily::TreebyCox,
            "custom" => ModelFamily::Custom,
            other => {
                return err(format!(
                    "key `{section}.family`: unknown family `{other}` \
                     (expected lossless | chen-holm | treeby-cox | custom)"
                ))
            }
        };
        let b0_raw = self.take_str(section, "b0")?;
        let b0 = if b0_raw == "auto" {
            derive_b0(a0, c0, gamma)
                .map_err(|e| ConfigError(format!("key `{section}.b0`: {e}")))?
        } else {
            parse_f64(section, "b0", &b0_raw)?
        };
        WaveModel::validate(c0, a0, b0, gamma, family)
            .map_err(|e| ConfigError(format!("section `[{section}]`: {e}")))
    }

    /// Read the `[grid]` section, falling back to the model defaults for
    /// absent keys. `taper` is decided by the CLI flag, not the file.
    pub fn take_grid(
        &mut self,
        model: &WaveModel,
        t: f64,
        taper: TaperMode,
    ) -> Result<GridConfig, ConfigError> {
        let defaults = GridConfig::for_model(model, t);
        let r_max = self.take_f64_or("grid", "r_max", defaults.r_max)?;
        let dr = self.take_f64_or("grid", "dr", r_max / 200.0)?;
        if dr <= 0.0 || r_max <= dr {
            return err("section `[grid]`: need r_max > dr > 0");
        }
        let k_max = self.take_f64_or("grid", "k_max", 40.0 / dr)?;
        let nodes_per_period = self.take_usize_or("grid", "nodes_per_period", 8)?;
        Ok(GridConfig {
            r_max,
            dr,
            k_max,
            nodes_per_period,
            taper,
        })
    }
}

fn parse_f64(section: &str, key: &str, raw: &str) -> Result<f64, ConfigError> {
    let v: f64 = raw
        .parse()
        .map_err(|_| ConfigError(format!("key `{section}.{key}`: invalid number `{raw}`")))?;
    if !v.is_finite() {
        return err(format!("key `{section}.{key}`: non-finite value `{raw}`"));
    }
    Ok(v)
}
