//! Implementations behind the `libnet` CLI subcommands. Each command is a
//! plain function returning a report value, so the whole surface is
//! exercisable from tests without spawning the binary; the binary only
//! parses arguments, dispatches, and maps results to exit codes.
//!
//! Exit codes: 0 success, 2 usage/config error, 3 math-validation
//! failure, 4 statistical failure.

use crate::analytic::{
    campbell_integral, interference_support, mean_interference_1d, mean_interference_2d,
    AnalyticError, AnalyticResult, MeanInterferenceInputs, QuadTol,
};
use crate::channel::ChannelError;
use crate::config::{ConfigError, ScenarioConfig, SweepParam};
use crate::montecarlo::{
    compare, empirical_mean_interference, sinr_samples, truncation_tail, Comparison,
    EmpiricalResult, McConfig, McError, SinrOptions, SinrSummary,
};
use crate::sampler::{sample_ppp_capped, Dim, DEFAULT_MAX_EXPECTED_POINTS};
use std::fmt::Write as _;
use thiserror::Error;

/// Relative agreement required between the closed form and the
/// quadrature oracle.
pub const CF_QUAD_REL_TOL: f64 = 1e-8;

/// Statistical commands refuse to run with fewer trials than this; the
/// library itself stays permissive for tests and exploration.
pub const MIN_STATISTICAL_TRIALS: u64 = 100;

/// Exit codes for the CLI; disjoint and stable.
pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH_FAILURE: i32 = 3;
pub const EXIT_STAT_FAILURE: i32 = 4;

#[derive(Debug, Error)]
pub enum CmdError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("sweep point {index}: {source}")]
    SweepPoint {
        index: usize,
        #[source]
        source: Box<CmdError>,
    },
    #[error("config has no sweep block; add sweep_param/sweep_start/sweep_stop/sweep_steps")]
    MissingSweep,
    #[error("statistical runs require at least {min} trials, got {got}")]
    TooFewTrials { min: u64, got: u64 },
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
}

impl CmdError {
    /// Map an error to the CLI exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            // bad inputs: config files, preconditions, sweep descriptions
            CmdError::Config(_) | CmdError::MissingSweep | CmdError::TooFewTrials { .. } => {
                EXIT_USAGE
            }
            CmdError::Channel(_) => EXIT_USAGE,
            CmdError::Mc(McError::Channel(_)) => EXIT_USAGE,
            CmdError::Mc(McError::Sample(_)) => EXIT_USAGE,
            CmdError::Mc(_) => EXIT_MATH_FAILURE,
            // numerical machinery failed to deliver the requested accuracy
            CmdError::Analytic(_) => EXIT_MATH_FAILURE,
            CmdError::SweepPoint { source, .. } => source.exit_code(),
        }
    }
}

/// CLI-level overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    /// Sampler cap override (the `LIBNET_MAX_POINTS` environment
    /// variable).
    pub max_points: Option<f64>,
}

impl Overrides {
    fn apply(&self, scenario: &ScenarioConfig) -> McConfig {
        let mut mc = McConfig::from_scenario(scenario);
        if let Some(seed) = self.seed {
            mc.seed = seed;
        }
        if let Some(trials) = self.trials {
            mc.trials = trials;
        }
        mc.max_expected_points = self.max_points.unwrap_or(DEFAULT_MAX_EXPECTED_POINTS);
        mc
    }

    fn apply_statistical(&self, scenario: &ScenarioConfig) -> Result<McConfig, CmdError> {
        let mc = self.apply(scenario);
        if mc.trials < MIN_STATISTICAL_TRIALS {
            return Err(CmdError::TooFewTrials {
                min: MIN_STATISTICAL_TRIALS,
                got: mc.trials,
            });
        }
        Ok(mc)
    }
}

/// Fixed-width scientific float with 17 significant digits, enough to
/// reproduce the exact f64 bit pattern. All CSV output funnels through
/// this so identical runs emit identical bytes.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn mean_inputs(scenario: &ScenarioConfig) -> Result<MeanInterferenceInputs, CmdError> {
    let channel = scenario.channel()?;
    Ok(MeanInterferenceInputs::from_channel(
        scenario.lambda,
        &channel,
        scenario.z_m,
        scenario.theta_f.as_radians(),
    )?)
}

fn analytic_mean(scenario: &ScenarioConfig) -> Result<AnalyticResult, CmdError> {
    let inputs = mean_inputs(scenario)?;
    Ok(match scenario.dimension {
        Dim::One => mean_interference_1d(&inputs)?,
        Dim::Two => mean_interference_2d(&inputs)?,
    })
}

fn quadrature_mean(scenario: &ScenarioConfig) -> Result<f64, CmdError> {
    let inputs = mean_inputs(scenario)?;
    let Some(support) = interference_support(&inputs, scenario.dimension) else {
        return Ok(0.0);
    };
    let beta = inputs.beta();
    let h = inputs.h();
    let lambda = inputs.lambda();
    let q = campbell_integral(
        move |_| lambda,
        move |d| (d * d + h * h).powf(-beta),
        &support,
        QuadTol::default(),
    )?;
    Ok(q.value)
}

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

/// Three-way comparison of the closed form, the quadrature oracle, and a
/// Monte Carlo run.
#[derive(Debug, Clone)]
pub struct ValidateReport {
    pub scenario: ScenarioConfig,
    pub m: f64,
    pub beta: f64,
    pub closed_form: AnalyticResult,
    pub quadrature: f64,
    pub empirical: EmpiricalResult,
    /// Relative difference between the closed form and the quadrature.
    pub rel_cf_quad: f64,
    /// Mean interference lost to truncating an unbounded support; added
    /// to the statistical tolerance.
    pub truncation_allowance: f64,
    pub comparison: Comparison,
    pub math_pass: bool,
    pub stat_pass: bool,
}

impl ValidateReport {
    pub fn pass(&self) -> bool {
        self.math_pass && self.stat_pass
    }

    pub fn exit_code(&self) -> i32 {
        if !self.math_pass {
            EXIT_MATH_FAILURE
        } else if !self.stat_pass {
            EXIT_STAT_FAILURE
        } else {
            EXIT_SUCCESS
        }
    }

    /// Human-readable comparison table.
    pub fn render_text(&self) -> String {
        let sc = &self.scenario;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "scenario: dimension={} lambda={:?} h={:?} m z={:?} m omega={:?} mode={}",
            sc.dimension.as_u8(),
            sc.lambda,
            sc.h_m,
            sc.z_m,
            sc.omega,
            sc.mode
        );
        let _ = writeln!(
            out,
            "angles:   theta_h = {} = {} deg = {} rad",
            sc.theta_h,
            fmt_g17(sc.theta_h.as_degrees()),
            fmt_g17(sc.theta_h.as_radians()),
        );
        let _ = writeln!(
            out,
            "          theta_f = {} = {} deg = {} rad",
            sc.theta_f,
            fmt_g17(sc.theta_f.as_degrees()),
            fmt_g17(sc.theta_f.as_radians()),
        );
        let _ = writeln!(
            out,
            "derived:  m = {}  beta = {}",
            fmt_g17(self.m),
            fmt_g17(self.beta)
        );
        if self.closed_form.clamped_empty_support {
            let _ = writeln!(out, "warning:  empty interference support (z beyond FOV radius)");
        }
        let _ = writeln!(out, "closed form : {}", fmt_g17(self.closed_form.value));
        let _ = writeln!(
            out,
            "quadrature  : {}  (rel diff {})",
            fmt_g17(self.quadrature),
            fmt_g17(self.rel_cf_quad)
        );
        let _ = writeln!(
            out,
            "monte carlo : {}  se {}  ci95 [{}, {}]  trials {}  z-score {}",
            fmt_g17(self.empirical.mean),
            fmt_g17(self.empirical.std_error),
            fmt_g17(self.empirical.ci95.0),
            fmt_g17(self.empirical.ci95.1),
            self.empirical.trials,
            fmt_g17(self.comparison.z_score)
        );
        let _ = writeln!(
            out,
            "verdict     : math {}  statistics {}",
            if self.math_pass { "PASS" } else { "FAIL" },
            if self.stat_pass { "PASS" } else { "FAIL" }
        );
        out
    }

    /// One CSV row with a fixed header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "dimension,lambda,h_m,z_m,theta_f_rad,beta,closed_form,quadrature,\
             empirical_mean,std_error,ci_lo,ci_hi,rel_cf_quad,z_score,verdict\n",
        );
        let sc = &self.scenario;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            sc.dimension.as_u8(),
            fmt_g17(sc.lambda),
            fmt_g17(sc.h_m),
            fmt_g17(sc.z_m),
            fmt_g17(sc.theta_f.as_radians()),
            fmt_g17(self.beta),
            fmt_g17(self.closed_form.value),
            fmt_g17(self.quadrature),
            fmt_g17(self.empirical.mean),
            fmt_g17(self.empirical.std_error),
            fmt_g17(self.empirical.ci95.0),
            fmt_g17(self.empirical.ci95.1),
            fmt_g17(self.rel_cf_quad),
            fmt_g17(self.comparison.z_score),
            if self.pass() { "pass" } else { "fail" }
        );
        out
    }
}

/// Run the closed form, the quadrature oracle, and Monte Carlo on one
/// scenario. Math passes iff closed form and quadrature agree to
/// [`CF_QUAD_REL_TOL`]; statistics pass iff the Monte Carlo mean lies
/// within three standard errors (plus any truncation allowance).
pub fn cmd_validate(
    scenario: &ScenarioConfig,
    overrides: &Overrides,
) -> Result<ValidateReport, CmdError> {
    scenario.validate()?;
    let channel = scenario.channel()?;
    let closed_form = analytic_mean(scenario)?;
    let quadrature = quadrature_mean(scenario)?;

    let mc = overrides.apply_statistical(scenario)?;
    let empirical = empirical_mean_interference(&mc)?;

    let truncation_allowance = if scenario.fov_radius().is_finite() {
        0.0
    } else {
        truncation_tail(
            scenario.dimension,
            scenario.lambda,
            scenario.h_m,
            channel.beta(),
            mc.effective_radius(),
        )
    };

    let scale = closed_form.value.abs().max(quadrature.abs());
    let rel_cf_quad = if scale > 0.0 {
        (closed_form.value - quadrature).abs() / scale
    } else {
        0.0
    };
    let math_pass = rel_cf_quad <= CF_QUAD_REL_TOL;

    let comparison = compare(closed_form.value, &empirical);
    // truncated supports concede the analytically-bounded tail
    let stat_pass = comparison.pass
        || (empirical.mean - closed_form.value).abs()
            <= 3.0 * empirical.std_error + truncation_allowance;

    Ok(ValidateReport {
        scenario: scenario.clone(),
        m: channel.order(),
        beta: channel.beta(),
        closed_form,
        quadrature,
        empirical,
        rel_cf_quad,
        truncation_allowance,
        comparison,
        math_pass,
        stat_pass,
    })
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: f64,
    pub analytic: f64,
    pub empirical: EmpiricalResult,
    pub rel_error: f64,
    pub z_score: f64,
}

#[derive(Debug, Clone)]
pub struct SweepTable {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
    /// Set when the analytic column violates the expected monotonicity
    /// for the swept parameter.
    pub monotonicity_violation: Option<String>,
}

impl SweepTable {
    pub const CSV_HEADER: &'static str =
        "sweep_value,analytic_mean,empirical_mean,ci_lo,ci_hi,rel_error,z_score";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                fmt_g17(row.value),
                fmt_g17(row.analytic),
                fmt_g17(row.empirical.mean),
                fmt_g17(row.empirical.ci95.0),
                fmt_g17(row.empirical.ci95.1),
                fmt_g17(row.rel_error),
                fmt_g17(row.z_score)
            );
        }
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.monotonicity_violation.is_some() {
            EXIT_MATH_FAILURE
        } else {
            EXIT_SUCCESS
        }
    }
}

fn apply_sweep_value(scenario: &ScenarioConfig, param: SweepParam, value: f64) -> ScenarioConfig {
    use crate::config::Angle;
    let mut sc = scenario.clone();
    sc.sweep = None;
    match param {
        SweepParam::Lambda => sc.lambda = value,
        SweepParam::ZM => sc.z_m = value,
        SweepParam::ThetaF => sc.theta_f = Angle::radians(value),
        SweepParam::HM => sc.h_m = value,
        SweepParam::Omega => sc.omega = value,
    }
    sc
}

/// Sweep the configured parameter, producing one row per value. Each
/// point runs the closed form and a Monte Carlo estimate; the analytic
/// column is checked for monotonicity where a direction is known
/// (non-decreasing in lambda and theta_f, non-increasing in z).
pub fn cmd_sweep(scenario: &ScenarioConfig, overrides: &Overrides) -> Result<SweepTable, CmdError> {
    scenario.validate()?;
    let sweep = scenario.sweep.ok_or(CmdError::MissingSweep)?;

    let mut rows = Vec::with_capacity(sweep.steps as usize);
    for (index, value) in sweep.values().into_iter().enumerate() {
        let point = apply_sweep_value(scenario, sweep.param, value);
        let run = || -> Result<SweepRow, CmdError> {
            point.validate()?;
            let analytic = analytic_mean(&point)?;
            let mc = overrides.apply_statistical(&point)?;
            let empirical = empirical_mean_interference(&mc)?;
            let comparison = compare(analytic.value, &empirical);
            let rel_error = if analytic.value.abs() > 0.0 {
                (empirical.mean - analytic.value).abs() / analytic.value.abs()
            } else if empirical.mean == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            Ok(SweepRow {
                value,
                analytic: analytic.value,
                empirical,
                rel_error,
                z_score: comparison.z_score,
            })
        };
        match run() {
            Ok(row) => rows.push(row),
            Err(source) => {
                return Err(CmdError::SweepPoint {
                    index,
                    source: Box::new(source),
                })
            }
        }
    }

    let monotonicity_violation = check_monotonicity(sweep.param, &rows, sweep.stop >= sweep.start);
    Ok(SweepTable {
        param: sweep.param,
        rows,
        monotonicity_violation,
    })
}

fn check_monotonicity(param: SweepParam, rows: &[SweepRow], ascending: bool) -> Option<String> {
    // expected direction of the analytic mean along increasing parameter
    let non_decreasing = match param {
        SweepParam::Lambda | SweepParam::ThetaF => true,
        SweepParam::ZM => false,
        // no monotonicity property for h; omega does not enter the mean
        SweepParam::HM | SweepParam::Omega => return None,
    };
    let expect_up = non_decreasing == ascending;
    for pair in rows.windows(2) {
        let (a, b) = (pair[0].analytic, pair[1].analytic);
        let slack = 1e-12 + 1e-9 * a.abs().max(b.abs());
        let ok = if expect_up { b >= a - slack } else { b <= a + slack };
        if !ok {
            return Some(format!(
                "analytic column not {} at sweep values {:?} -> {:?} ({} -> {})",
                if expect_up { "non-decreasing" } else { "non-increasing" },
                pair[0].value,
                pair[1].value,
                fmt_g17(a),
                fmt_g17(b)
            ));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// sinr
// ---------------------------------------------------------------------------

/// Coverage table plus summary for a SINR run.
#[derive(Debug, Clone)]
pub struct SinrReport {
    pub summary: SinrSummary,
}

impl SinrReport {
    /// CSV: `threshold,coverage` rows followed by a summary comment line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("threshold,coverage\n");
        for (t, p) in &self.summary.coverage {
            let _ = writeln!(out, "{},{}", fmt_g17(*t), fmt_g17(*p));
        }
        let _ = writeln!(
            out,
            "# mean_finite_gamma={} infinite_fraction={} trials={}",
            fmt_g17(self.summary.finite_mean),
            fmt_g17(self.summary.infinite_fraction()),
            self.summary.trials
        );
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (t, p) in &self.summary.coverage {
            let _ = writeln!(out, "P(gamma > {}) = {}", fmt_g17(*t), fmt_g17(*p));
        }
        let _ = writeln!(
            out,
            "mean finite gamma = {} over {} trials ({} infinite, {} undefined)",
            fmt_g17(self.summary.finite_mean),
            self.summary.trials,
            self.summary.infinite_count,
            self.summary.undefined_count
        );
        out
    }
}

/// Empirical SINR coverage at the given thresholds. Zero-noise scenarios
/// run with infinite-SINR accounting enabled and report the infinite
/// fraction separately.
pub fn cmd_sinr(
    scenario: &ScenarioConfig,
    overrides: &Overrides,
    thresholds: &[f64],
) -> Result<SinrReport, CmdError> {
    scenario.validate()?;
    let mc = overrides.apply_statistical(scenario)?;
    let run = sinr_samples(
        &mc,
        &SinrOptions {
            thresholds: thresholds.to_vec(),
            allow_infinite: true,
            injected: None,
        },
    )?;
    Ok(SinrReport {
        summary: run.summary,
    })
}

// ---------------------------------------------------------------------------
// sample-dump
// ---------------------------------------------------------------------------

/// Dump realization 0 of the scenario's interferer field as CSV
/// (`x` or `x,y` rows).
pub fn cmd_sample_dump(
    scenario: &ScenarioConfig,
    overrides: &Overrides,
) -> Result<String, CmdError> {
    scenario.validate()?;
    let mc = overrides.apply(scenario);

    let mut out = String::from(match scenario.dimension {
        Dim::One => "x\n",
        Dim::Two => "x,y\n",
    });
    let radius = mc.effective_radius();
    if scenario.z_m >= radius {
        return Ok(out);
    }
    let region = match (mc.mode, scenario.dimension) {
        (crate::montecarlo::SamplingMode::SupportSampling, Dim::One) => {
            crate::sampler::Region::interval(scenario.z_m, radius)
        }
        (crate::montecarlo::SamplingMode::SupportSampling, Dim::Two) => {
            crate::sampler::Region::annulus(scenario.z_m, radius)
        }
        (crate::montecarlo::SamplingMode::FullRegionFiltering, Dim::One) => {
            crate::sampler::Region::interval(-radius, radius)
        }
        (crate::montecarlo::SamplingMode::FullRegionFiltering, Dim::Two) => {
            crate::sampler::Region::annulus(0.0, radius)
        }
    }
    .expect("non-empty support");
    let field = sample_ppp_capped(
        &region,
        scenario.lambda,
        mc.seed,
        0,
        mc.max_expected_points,
    )
    .map_err(McError::Sample)?;
    for p in field.points() {
        match scenario.dimension {
            Dim::One => {
                let _ = writeln!(out, "{}", fmt_g17(p[0]));
            }
            Dim::Two => {
                let _ = writeln!(out, "{},{}", fmt_g17(p[0]), fmt_g17(p[1]));
            }
        }
    }
    Ok(out)
}
