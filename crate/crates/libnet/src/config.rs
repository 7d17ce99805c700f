//! Scenario configuration: a flat `key = value` text format with explicit
//! angle units, full invariant validation at load, and a byte-stable
//! writer so that `load(write(c)) == c`.
//!
//! Schema keys: `dimension`, `h_m`, `theta_h`, `theta_f`, `lambda`, `z_m`,
//! `omega`, `trials`, `seed`, `mode`, and the optional sweep block
//! `sweep_param`, `sweep_start`, `sweep_stop`, `sweep_steps`. Angles carry
//! a mandatory `deg` or `rad` suffix; sweep bounds for `theta_f` are in
//! radians.

use crate::channel::LambertianChannel;
use crate::montecarlo::SamplingMode;
use crate::sampler::Dim;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing key '{0}'")]
    MissingKey(&'static str),
    #[error("key '{key}': {message}")]
    InvalidValue { key: String, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

/// Angle with the unit it was written in, preserved for round-tripping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle {
    pub value: f64,
    pub unit: AngleUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleUnit {
    Degrees,
    Radians,
}

impl Angle {
    pub fn degrees(value: f64) -> Self {
        Self {
            value,
            unit: AngleUnit::Degrees,
        }
    }

    pub fn radians(value: f64) -> Self {
        Self {
            value,
            unit: AngleUnit::Radians,
        }
    }

    /// Value converted to radians.
    pub fn as_radians(&self) -> f64 {
        match self.unit {
            AngleUnit::Degrees => self.value.to_radians(),
            AngleUnit::Radians => self.value,
        }
    }

    /// Value converted to degrees.
    pub fn as_degrees(&self) -> f64 {
        match self.unit {
            AngleUnit::Degrees => self.value,
            AngleUnit::Radians => self.value.to_degrees(),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit {
            AngleUnit::Degrees => write!(f, "{:?} deg", self.value),
            AngleUnit::Radians => write!(f, "{:?} rad", self.value),
        }
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let (number, unit) = if let Some(rest) = trimmed.strip_suffix("deg") {
            (rest, AngleUnit::Degrees)
        } else if let Some(rest) = trimmed.strip_suffix("rad") {
            (rest, AngleUnit::Radians)
        } else {
            return Err(format!(
                "angle '{trimmed}' must carry an explicit 'deg' or 'rad' suffix"
            ));
        };
        let value: f64 = number
            .trim()
            .parse()
            .map_err(|_| format!("cannot parse angle value from '{trimmed}'"))?;
        Ok(Angle { value, unit })
    }
}

/// Which scenario parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Lambda,
    ZM,
    ThetaF,
    HM,
    Omega,
}

impl SweepParam {
    pub fn key(&self) -> &'static str {
        match self {
            SweepParam::Lambda => "lambda",
            SweepParam::ZM => "z_m",
            SweepParam::ThetaF => "theta_f",
            SweepParam::HM => "h_m",
            SweepParam::Omega => "omega",
        }
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lambda" => Ok(SweepParam::Lambda),
            "z_m" => Ok(SweepParam::ZM),
            "theta_f" => Ok(SweepParam::ThetaF),
            "h_m" => Ok(SweepParam::HM),
            "omega" => Ok(SweepParam::Omega),
            other => Err(format!(
                "unknown sweep parameter '{other}' (expected lambda, z_m, theta_f, h_m or omega)"
            )),
        }
    }
}

/// Sweep description: `steps` evenly spaced values from `start` to `stop`
/// inclusive. `theta_f` sweeps are specified in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub steps: u32,
}

impl Sweep {
    /// The swept values, start to stop inclusive.
    pub fn values(&self) -> Vec<f64> {
        if self.steps <= 1 {
            return vec![self.start];
        }
        let n = self.steps as usize;
        (0..n)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Full experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub dimension: Dim,
    pub h_m: f64,
    pub theta_h: Angle,
    pub theta_f: Angle,
    pub lambda: f64,
    pub z_m: f64,
    pub omega: f64,
    pub trials: u64,
    pub seed: u64,
    pub mode: SamplingMode,
    pub sweep: Option<Sweep>,
}

impl ScenarioConfig {
    /// The emitter optics implied by `theta_h` and `h_m`, with the derived
    /// order `m` and exponent `beta`.
    pub fn channel(&self) -> Result<LambertianChannel, ConfigError> {
        LambertianChannel::new(self.theta_h.as_radians(), self.h_m)
            .map_err(|e| ConfigError::Invariant(e.to_string()))
    }

    /// Horizontal FOV radius `h * tan(theta_f)` (infinite at 90 degrees).
    pub fn fov_radius(&self) -> f64 {
        let tf = self.theta_f.as_radians();
        if tf >= std::f64::consts::FRAC_PI_2 {
            f64::INFINITY
        } else {
            self.h_m * tf.tan()
        }
    }

    /// Re-validate every component-type invariant. Errors name the rule.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let th = self.theta_h.as_radians();
        if !(th > 0.0 && th < std::f64::consts::FRAC_PI_2) {
            return Err(ConfigError::Invariant(format!(
                "theta_h must lie in (0, 90) deg exclusive, got {}",
                self.theta_h
            )));
        }
        let tf = self.theta_f.as_radians();
        if !(tf > 0.0 && tf <= std::f64::consts::FRAC_PI_2) {
            return Err(ConfigError::Invariant(format!(
                "fov out of range: theta_f must lie in (0, 90] deg, got {}",
                self.theta_f
            )));
        }
        if !(self.h_m > 0.0) || !self.h_m.is_finite() {
            return Err(ConfigError::Invariant(format!(
                "h_m must be positive and finite, got {}",
                self.h_m
            )));
        }
        if !(self.lambda >= 0.0) || !self.lambda.is_finite() {
            return Err(ConfigError::Invariant(format!(
                "lambda must be non-negative and finite, got {}",
                self.lambda
            )));
        }
        if !(self.z_m >= 0.0) || !self.z_m.is_finite() {
            return Err(ConfigError::Invariant(format!(
                "z_m must be non-negative and finite, got {}",
                self.z_m
            )));
        }
        if !(self.omega >= 0.0) || !self.omega.is_finite() {
            return Err(ConfigError::Invariant(format!(
                "omega must be non-negative and finite, got {}",
                self.omega
            )));
        }
        if self.trials == 0 {
            return Err(ConfigError::Invariant("trials must be at least 1".into()));
        }
        if let Some(sweep) = &self.sweep {
            if sweep.steps == 0 {
                return Err(ConfigError::Invariant("sweep_steps must be at least 1".into()));
            }
            if !sweep.start.is_finite() || !sweep.stop.is_finite() {
                return Err(ConfigError::Invariant(
                    "sweep bounds must be finite".into(),
                ));
            }
        }
        // the channel constructor re-checks theta_h and h jointly
        self.channel()?;
        Ok(())
    }
}

/// Parse a config from text. Unknown and duplicate keys are errors.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut raw: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_number = lineno + 1;
        let stripped = line.trim();
        if stripped.is_empty() || stripped.starts_with('#') {
            continue;
        }
        let (key, value) = stripped.split_once('=').ok_or(ConfigError::Parse {
            line: line_number,
            message: format!("expected 'key = value', got '{stripped}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(ConfigError::Parse {
                line: line_number,
                message: format!("unknown key '{key}'"),
            });
        }
        if raw.insert(key, (line_number, value)).is_some() {
            return Err(ConfigError::Parse {
                line: line_number,
                message: format!("duplicate key '{key}'"),
            });
        }
    }

    let config = ScenarioConfig {
        dimension: match required(&raw, "dimension")? {
            "1" => Dim::One,
            "2" => Dim::Two,
            other => {
                return Err(invalid("dimension", format!("must be 1 or 2, got '{other}'")));
            }
        },
        h_m: parse_f64(&raw, "h_m")?,
        theta_h: parse_angle(&raw, "theta_h")?,
        theta_f: parse_angle(&raw, "theta_f")?,
        lambda: parse_f64(&raw, "lambda")?,
        z_m: parse_f64(&raw, "z_m")?,
        omega: parse_f64(&raw, "omega")?,
        trials: parse_u64(&raw, "trials")?,
        seed: parse_u64(&raw, "seed")?,
        mode: match raw.get("mode") {
            None => SamplingMode::SupportSampling,
            Some((_, v)) => v
                .parse()
                .map_err(|e: String| invalid("mode", e))?,
        },
        sweep: parse_sweep(&raw)?,
    };
    config.validate()?;
    Ok(config)
}

const KNOWN_KEYS: [&str; 14] = [
    "dimension",
    "h_m",
    "theta_h",
    "theta_f",
    "lambda",
    "z_m",
    "omega",
    "trials",
    "seed",
    "mode",
    "sweep_param",
    "sweep_start",
    "sweep_stop",
    "sweep_steps",
];

fn invalid(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::InvalidValue {
        key: key.to_string(),
        message: message.into(),
    }
}

fn required<'a>(
    raw: &BTreeMap<&str, (usize, &'a str)>,
    key: &'static str,
) -> Result<&'a str, ConfigError> {
    raw.get(key)
        .map(|(_, v)| *v)
        .ok_or(ConfigError::MissingKey(key))
}

fn parse_f64(raw: &BTreeMap<&str, (usize, &str)>, key: &'static str) -> Result<f64, ConfigError> {
    required(raw, key)?
        .parse()
        .map_err(|_| invalid(key, "expected a real number"))
}

fn parse_u64(raw: &BTreeMap<&str, (usize, &str)>, key: &'static str) -> Result<u64, ConfigError> {
    required(raw, key)?
        .parse()
        .map_err(|_| invalid(key, "expected a non-negative integer"))
}

fn parse_angle(
    raw: &BTreeMap<&str, (usize, &str)>,
    key: &'static str,
) -> Result<Angle, ConfigError> {
    required(raw, key)?
        .parse()
        .map_err(|e: String| invalid(key, e))
}

fn parse_sweep(raw: &BTreeMap<&str, (usize, &str)>) -> Result<Option<Sweep>, ConfigError> {
    let keys = ["sweep_param", "sweep_start", "sweep_stop", "sweep_steps"];
    let present: Vec<&str> = keys.iter().copied().filter(|k| raw.contains_key(k)).collect();
    if present.is_empty() {
        return Ok(None);
    }
    if present.len() != keys.len() {
        return Err(ConfigError::Invariant(format!(
            "sweep requires all of {keys:?}, found only {present:?}"
        )));
    }
    let param: SweepParam = required(raw, "sweep_param")?
        .parse()
        .map_err(|e: String| invalid("sweep_param", e))?;
    let steps_raw = parse_u64(raw, "sweep_steps")?;
    let steps = u32::try_from(steps_raw)
        .map_err(|_| invalid("sweep_steps", "value too large"))?;
    Ok(Some(Sweep {
        param,
        start: parse_f64(raw, "sweep_start")?,
        stop: parse_f64(raw, "sweep_stop")?,
        steps,
    }))
}

/// Serialize a config in the canonical key order. Floats use the shortest
/// round-trip representation, so `parse_config(write_config(c)) == c`.
pub fn write_config(config: &ScenarioConfig) -> String {
    let mut out = String::new();
    out.push_str(&format!("dimension = {}\n", config.dimension.as_u8()));
    out.push_str(&format!("h_m = {:?}\n", config.h_m));
    out.push_str(&format!("theta_h = {}\n", config.theta_h));
    out.push_str(&format!("theta_f = {}\n", config.theta_f));
    out.push_str(&format!("lambda = {:?}\n", config.lambda));
    out.push_str(&format!("z_m = {:?}\n", config.z_m));
    out.push_str(&format!("omega = {:?}\n", config.omega));
    out.push_str(&format!("trials = {}\n", config.trials));
    out.push_str(&format!("seed = {}\n", config.seed));
    out.push_str(&format!("mode = {}\n", config.mode));
    if let Some(sweep) = &config.sweep {
        out.push_str(&format!("sweep_param = {}\n", sweep.param.key()));
        out.push_str(&format!("sweep_start = {:?}\n", sweep.start));
        out.push_str(&format!("sweep_stop = {:?}\n", sweep.stop));
        out.push_str(&format!("sweep_steps = {}\n", sweep.steps));
    }
    out
}

/// Load and validate a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}

/// Write a config file.
pub fn save_config(path: impl AsRef<Path>, config: &ScenarioConfig) -> Result<(), ConfigError> {
    std::fs::write(path, write_config(config))?;
    Ok(())
}
