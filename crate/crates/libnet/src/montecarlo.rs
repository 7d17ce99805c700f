//! Empirical estimation engine: samples interferer fields, accumulates
//! interference, SINR and Laplace-functional statistics, and compares the
//! estimates against the closed forms.
//!
//! Determinism: trial `i` draws from the substream `(seed, i)`, so the
//! per-trial values are identical whether trials run sequentially or on a
//! thread pool; the reduction itself always runs in trial order with
//! compensated summation, making summaries bit-identical across modes.

use crate::channel::{self, fov_gate, ChannelError, LambertianChannel, Receiver, Sinr};
use crate::config::ScenarioConfig;
use crate::sampler::{
    expected_count, sample_ppp_capped, Dim, Region, SampleError, DEFAULT_MAX_EXPECTED_POINTS,
};
use crate::stats::{mean_and_std_error, CompensatedSum};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Truncation radius for unbounded-FOV supports, as a multiple of the
/// emitter height, when no explicit radius is configured.
pub const DEFAULT_TRUNCATION_FACTOR: f64 = 50.0;

/// How interferer positions are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    /// Sample directly on the visible support `[z, h*tan(theta_f)]`
    /// (annular in 2D). This is the reference mode used for validating
    /// the closed forms.
    SupportSampling,
    /// Sample on the full region around the receiver (`[-R, R]` in 1D, a
    /// disc in 2D) and keep interferers at distance `>= z`, FOV-gated.
    FullRegionFiltering,
}

impl fmt::Display for SamplingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SamplingMode::SupportSampling => "support_sampling",
            SamplingMode::FullRegionFiltering => "full_region_filtering",
        })
    }
}

impl FromStr for SamplingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "support_sampling" => Ok(SamplingMode::SupportSampling),
            "full_region_filtering" => Ok(SamplingMode::FullRegionFiltering),
            other => Err(format!(
                "unknown mode '{other}' (expected support_sampling or full_region_filtering)"
            )),
        }
    }
}

/// Monte Carlo run description.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub scenario: ScenarioConfig,
    pub trials: u64,
    pub seed: u64,
    pub mode: SamplingMode,
    /// Truncation radius used when the FOV radius is unbounded
    /// (`theta_f = pi/2`); defaults to [`DEFAULT_TRUNCATION_FACTOR`]
    /// times the height.
    pub r_max: Option<f64>,
    /// Cap on the expected point count per realization.
    pub max_expected_points: f64,
    /// Evaluate trials on the rayon pool. Summaries are bit-identical to
    /// sequential runs either way.
    pub parallel: bool,
}

impl McConfig {
    pub fn from_scenario(scenario: &ScenarioConfig) -> Self {
        Self {
            scenario: scenario.clone(),
            trials: scenario.trials,
            seed: scenario.seed,
            mode: scenario.mode,
            r_max: None,
            max_expected_points: DEFAULT_MAX_EXPECTED_POINTS,
            parallel: true,
        }
    }

    fn channel(&self) -> Result<LambertianChannel, McError> {
        LambertianChannel::new(self.scenario.theta_h.as_radians(), self.scenario.h_m)
            .map_err(McError::Channel)
    }

    fn receiver(&self) -> Result<Receiver, McError> {
        Receiver::new(
            self.scenario.theta_f.as_radians(),
            self.scenario.z_m,
            self.scenario.omega,
        )
        .map_err(McError::Channel)
    }

    /// Radius actually sampled: the FOV radius when finite, else the
    /// configured (or default) truncation radius.
    pub fn effective_radius(&self) -> f64 {
        let fov_radius = self.scenario.fov_radius();
        match self.r_max {
            Some(r) => fov_radius.min(r),
            None => {
                if fov_radius.is_finite() {
                    fov_radius
                } else {
                    (DEFAULT_TRUNCATION_FACTOR * self.scenario.h_m).max(2.0 * self.scenario.z_m)
                }
            }
        }
    }
}

/// Estimate with a 95% normal confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalResult {
    pub mean: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    pub trials: u64,
    pub mode: SamplingMode,
}

impl EmpiricalResult {
    fn from_values(values: &[f64], mode: SamplingMode) -> Self {
        let (mean, std_error) = mean_and_std_error(values);
        Self {
            mean,
            std_error,
            ci95: (mean - 1.96 * std_error, mean + 1.96 * std_error),
            trials: values.len() as u64,
            mode,
        }
    }

    fn exact(value: f64, trials: u64, mode: SamplingMode) -> Self {
        Self {
            mean: value,
            std_error: 0.0,
            ci95: (value, value),
            trials,
            mode,
        }
    }
}

/// Pass/fail verdict of an empirical estimate against an analytic value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub pass: bool,
    pub z_score: f64,
}

/// Three-sigma acceptance: pass iff `|mean - analytic| <= 3 * std_error`,
/// with the degenerate zero-error case requiring exact agreement.
pub fn compare(analytic: f64, empirical: &EmpiricalResult) -> Comparison {
    let diff = (empirical.mean - analytic).abs();
    if empirical.std_error > 0.0 {
        Comparison {
            pass: diff <= 3.0 * empirical.std_error,
            z_score: diff / empirical.std_error,
        }
    } else if diff == 0.0 {
        Comparison {
            pass: true,
            z_score: 0.0,
        }
    } else {
        Comparison {
            pass: false,
            z_score: f64::INFINITY,
        }
    }
}

#[derive(Debug, Error)]
pub enum McError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("transform variable must be non-negative, got {0}")]
    NegativeTransform(f64),
    #[error(
        "zero noise with a possibly-empty interferer field makes infinite SINR likely; \
         enable infinite-gamma accounting to proceed"
    )]
    InfiniteSinrRejected,
}

/// The sampling region for interferers, together with the minimum kept
/// distance, or `None` when the visible support is empty.
fn interferer_region(cfg: &McConfig) -> Option<(Region, f64)> {
    let z = cfg.scenario.z_m;
    let radius = cfg.effective_radius();
    if z >= radius {
        return None;
    }
    match (cfg.mode, cfg.scenario.dimension) {
        (SamplingMode::SupportSampling, Dim::One) => {
            Some((Region::interval(z, radius).expect("z < radius"), 0.0))
        }
        (SamplingMode::SupportSampling, Dim::Two) => {
            Some((Region::annulus(z, radius).expect("z < radius"), 0.0))
        }
        (SamplingMode::FullRegionFiltering, Dim::One) => {
            Some((Region::interval(-radius, radius).expect("radius > 0"), z))
        }
        (SamplingMode::FullRegionFiltering, Dim::Two) => {
            Some((Region::annulus(0.0, radius).expect("radius > 0"), z))
        }
    }
}

/// Upper bound on the mean interference lost to truncating an unbounded
/// support at `r_max`; add it to comparison tolerances when validating
/// `theta_f = pi/2` scenarios.
pub fn truncation_tail(dim: Dim, lambda: f64, h: f64, beta: f64, r_max: f64) -> f64 {
    match dim {
        // int_r^inf (x^2+h^2)^-beta dx <= int_r^inf x^-2beta dx
        Dim::One => lambda * r_max.powf(1.0 - 2.0 * beta) / (2.0 * beta - 1.0),
        // exact closed-form tail of the polar integral
        Dim::Two => {
            lambda * std::f64::consts::PI * (r_max * r_max + h * h).powf(1.0 - beta)
                / (beta - 1.0)
        }
    }
}

fn check_cap(cfg: &McConfig, region: &Region) -> Result<(), McError> {
    let expected = expected_count(region, cfg.scenario.lambda);
    if expected > cfg.max_expected_points {
        return Err(McError::Sample(SampleError::CapExceeded {
            expected,
            cap: cfg.max_expected_points,
        }));
    }
    Ok(())
}

/// Evaluate `f` for every trial index, in parallel if configured, then
/// hand back the per-trial values in index order.
fn per_trial_values<F>(cfg: &McConfig, f: F) -> Vec<f64>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    if cfg.parallel {
        (0..cfg.trials).into_par_iter().map(f).collect()
    } else {
        (0..cfg.trials).map(f).collect()
    }
}

/// Sum of FOV-gated path gains for one sampled realization.
fn trial_interference(
    cfg: &McConfig,
    channel: &LambertianChannel,
    fov: f64,
    region: &Region,
    min_keep: f64,
    index: u64,
) -> f64 {
    let field = sample_ppp_capped(
        region,
        cfg.scenario.lambda,
        cfg.seed,
        index,
        cfg.max_expected_points,
    )
    .expect("sampling preconditions checked before the trial loop");
    let mut sum = CompensatedSum::default();
    for d in field.horizontal_distances() {
        if d < min_keep {
            continue;
        }
        let gate = fov_gate(d, channel.height(), fov);
        if gate > 0.0 {
            sum.add(channel.path_gain(d) * gate);
        }
    }
    sum.value()
}

/// Per-trial interference values `I = sum f(d_i) rho(d_i)`.
pub fn interference_values(cfg: &McConfig) -> Result<Vec<f64>, McError> {
    let channel = cfg.channel()?;
    let fov = cfg.scenario.theta_f.as_radians();
    match interferer_region(cfg) {
        None => Ok(vec![0.0; cfg.trials as usize]),
        Some((region, min_keep)) => {
            check_cap(cfg, &region)?;
            Ok(per_trial_values(cfg, |i| {
                trial_interference(cfg, &channel, fov, &region, min_keep, i)
            }))
        }
    }
}

/// Monte Carlo estimate of the mean co-channel interference.
pub fn empirical_mean_interference(cfg: &McConfig) -> Result<EmpiricalResult, McError> {
    let values = interference_values(cfg)?;
    Ok(EmpiricalResult::from_values(&values, cfg.mode))
}

/// Monte Carlo estimate of the Laplace functional `E[e^(-s I)]` at each
/// requested `s`. Returns exactly 1 with zero error at `s = 0`.
pub fn empirical_laplace(
    cfg: &McConfig,
    s_values: &[f64],
) -> Result<Vec<EmpiricalResult>, McError> {
    for &s in s_values {
        if !(s >= 0.0) {
            return Err(McError::NegativeTransform(s));
        }
    }
    let interference = interference_values(cfg)?;
    let mut results = Vec::with_capacity(s_values.len());
    for &s in s_values {
        if s == 0.0 {
            results.push(EmpiricalResult::exact(1.0, cfg.trials, cfg.mode));
            continue;
        }
        let transformed: Vec<f64> = interference.iter().map(|&i| (-s * i).exp()).collect();
        results.push(EmpiricalResult::from_values(&transformed, cfg.mode));
    }
    Ok(results)
}

/// Options for SINR estimation.
#[derive(Debug, Clone, Default)]
pub struct SinrOptions {
    /// Coverage thresholds `T` for the empirical `P(gamma > T)`.
    pub thresholds: Vec<f64>,
    /// Accept scenarios where infinite SINR has positive probability
    /// (zero noise with a random field); such trials are counted apart.
    pub allow_infinite: bool,
    /// Test hook: fixed interferer horizontal distances used for every
    /// trial instead of sampling.
    pub injected: Option<Vec<f64>>,
}

/// Summary of a SINR run.
#[derive(Debug, Clone, PartialEq)]
pub struct SinrSummary {
    pub trials: u64,
    /// Mean over trials with finite SINR.
    pub finite_mean: f64,
    pub finite_count: u64,
    pub infinite_count: u64,
    pub undefined_count: u64,
    /// `(threshold, empirical P(gamma > threshold))` per requested
    /// threshold; infinite-SINR trials exceed every threshold.
    pub coverage: Vec<(f64, f64)>,
}

impl SinrSummary {
    pub fn infinite_fraction(&self) -> f64 {
        self.infinite_count as f64 / self.trials as f64
    }
}

/// Per-trial SINR values plus their summary.
#[derive(Debug, Clone)]
pub struct SinrRun {
    pub samples: Vec<Sinr>,
    pub summary: SinrSummary,
}

/// Sample per-trial SINR values in the interference support.
///
/// The tagged emitter contributes the fixed numerator at distance `z`;
/// interferers are sampled per trial (or injected via the test hook).
pub fn sinr_samples(cfg: &McConfig, opts: &SinrOptions) -> Result<SinrRun, McError> {
    let channel = cfg.channel()?;
    let receiver = cfg.receiver()?;
    let radius = receiver.fov_radius(channel.height());
    if receiver.offset_z() > radius {
        return Err(McError::Channel(ChannelError::OffsetOutsideFov {
            offset: receiver.offset_z(),
            radius,
        }));
    }

    let samples: Vec<Sinr> = if let Some(injected) = &opts.injected {
        let gamma = channel::sinr_from_distances(injected.iter().copied(), &channel, &receiver);
        vec![gamma; cfg.trials as usize]
    } else {
        if cfg.scenario.omega == 0.0 && !opts.allow_infinite {
            return Err(McError::InfiniteSinrRejected);
        }
        let fov = cfg.scenario.theta_f.as_radians();
        match interferer_region(cfg) {
            None => {
                let gamma = channel::sinr_from_distances([], &channel, &receiver);
                vec![gamma; cfg.trials as usize]
            }
            Some((region, min_keep)) => {
                check_cap(cfg, &region)?;
                let values = per_trial_values(cfg, |i| {
                    let interference =
                        trial_interference(cfg, &channel, fov, &region, min_keep, i);
                    interference
                });
                let numerator = channel.path_gain(receiver.offset_z())
                    * fov_gate(receiver.offset_z(), channel.height(), fov);
                values
                    .into_iter()
                    .map(|i| {
                        let denominator = i + receiver.noise_omega();
                        if denominator > 0.0 {
                            Sinr::Finite(numerator / denominator)
                        } else if numerator > 0.0 {
                            Sinr::Infinite
                        } else {
                            Sinr::Undefined
                        }
                    })
                    .collect()
            }
        }
    };

    let mut finite_sum = CompensatedSum::default();
    let mut finite_count = 0u64;
    let mut infinite_count = 0u64;
    let mut undefined_count = 0u64;
    for s in &samples {
        match s {
            Sinr::Finite(v) => {
                finite_sum.add(*v);
                finite_count += 1;
            }
            Sinr::Infinite => infinite_count += 1,
            Sinr::Undefined => undefined_count += 1,
        }
    }
    let coverage = opts
        .thresholds
        .iter()
        .map(|&t| {
            let hits = samples.iter().filter(|s| s.exceeds(t)).count();
            (t, hits as f64 / samples.len() as f64)
        })
        .collect();

    let summary = SinrSummary {
        trials: cfg.trials,
        finite_mean: if finite_count > 0 {
            finite_sum.value() / finite_count as f64
        } else {
            0.0
        },
        finite_count,
        infinite_count,
        undefined_count,
        coverage,
    };
    Ok(SinrRun { samples, summary })
}

/// Raw per-trial samples as CSV (`trial,I,gamma` rows). Infinite and
/// undefined SINR print as `inf` and `nan`. Intended for debugging and
/// external plotting; values carry 17 significant digits.
pub fn per_trial_csv(cfg: &McConfig, opts: &SinrOptions) -> Result<String, McError> {
    use std::fmt::Write as _;
    let interference = interference_values(cfg)?;
    let run = sinr_samples(cfg, opts)?;
    let mut out = String::from("trial,I,gamma\n");
    for (trial, (i, gamma)) in interference.iter().zip(&run.samples).enumerate() {
        let gamma_text = match gamma {
            Sinr::Finite(v) => format!("{v:.16e}"),
            Sinr::Infinite => "inf".to_string(),
            Sinr::Undefined => "nan".to_string(),
        };
        let _ = writeln!(out, "{trial},{i:.16e},{gamma_text}");
    }
    Ok(out)
}
