//! Closed-form and quadrature evaluation of mean co-channel interference
//! for Poisson fields of Lambertian emitters, plus the interference
//! Laplace functional.
//!
//! The 1D closed form is a hypergeometric expression in the gain integral
//! `int (x^2 + h^2)^(-beta) dx` over the visible support; the 2D form is
//! elementary. The general Campbell integral (adaptive quadrature of
//! `int lambda(x) f(x) dx`) serves as the independent oracle for both.

pub mod hyp2f1;
pub mod quad;

pub use hyp2f1::{hyp2f1, hyp2f1_direct, hyp2f1_via_pfaff, Hyp2F1Params, MAX_SERIES_TERMS};
pub use quad::{integrate, QuadResult, QuadTol};

use crate::channel::LambertianChannel;
use crate::sampler::{Dim, Region};
use hyp2f1::ln_gamma;
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

/// Errors from analytic evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("hypergeometric series hit the {max_terms}-term cap (argument {z_arg})")]
    SeriesNonConvergence { max_terms: usize, z_arg: f64 },
    #[error("quadrature did not converge: requested {requested:e}, achieved {achieved:e}")]
    QuadratureNonConvergence { requested: f64, achieved: f64 },
    #[error("unsupported support region: {0}")]
    UnsupportedSupport(&'static str),
}

/// Relative tolerance used for internal hypergeometric evaluations.
const HYP_TOL: f64 = 1e-13;

/// Above this FOV tangent the 1D evaluation splits the gain integral at
/// the half-line constant instead of differencing two near-equal
/// hypergeometric terms.
const TAIL_SPLIT: f64 = 2.0;

/// Validated parameter set for the mean-interference closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanInterferenceInputs {
    lambda: f64,
    h: f64,
    z: f64,
    theta_f: f64,
    beta: f64,
}

impl MeanInterferenceInputs {
    /// Requires `lambda >= 0`, `h > 0`, `z >= 0`, `theta_f in (0, pi/2]`
    /// and `beta > 1`.
    pub fn new(
        lambda: f64,
        h: f64,
        z: f64,
        theta_f: f64,
        beta: f64,
    ) -> Result<Self, AnalyticError> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(AnalyticError::Domain(format!(
                "intensity must be non-negative and finite, got {lambda}"
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(AnalyticError::Domain(format!(
                "height must be positive and finite, got {h}"
            )));
        }
        if !(z >= 0.0) || !z.is_finite() {
            return Err(AnalyticError::Domain(format!(
                "offset must be non-negative and finite, got {z}"
            )));
        }
        if !(theta_f > 0.0 && theta_f <= FRAC_PI_2) {
            return Err(AnalyticError::Domain(format!(
                "fov out of range: theta_f must lie in (0, pi/2], got {theta_f}"
            )));
        }
        if !(beta > 1.0) || !beta.is_finite() {
            return Err(AnalyticError::Domain(format!(
                "exponent beta must exceed 1, got {beta}"
            )));
        }
        Ok(Self {
            lambda,
            h,
            z,
            theta_f,
            beta,
        })
    }

    /// Build from a channel and receiver geometry.
    pub fn from_channel(
        lambda: f64,
        channel: &LambertianChannel,
        z: f64,
        theta_f: f64,
    ) -> Result<Self, AnalyticError> {
        Self::new(lambda, channel.height(), z, theta_f, channel.beta())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    pub fn z(&self) -> f64 {
        self.z
    }
    pub fn theta_f(&self) -> f64 {
        self.theta_f
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// FOV tangent, infinite for the unbounded sentinel `theta_f = pi/2`.
    pub fn fov_tan(&self) -> f64 {
        if self.theta_f >= FRAC_PI_2 {
            f64::INFINITY
        } else {
            self.theta_f.tan()
        }
    }

    /// Horizontal FOV radius `h * tan(theta_f)`.
    pub fn fov_radius(&self) -> f64 {
        self.h * self.fov_tan()
    }
}

/// Closed-form value together with the empty-support clamp flag.
///
/// When `z > h*tan(theta_f)` the support of the interference integral is
/// empty (inverted limits in the raw formula); the value is defined as 0
/// and `clamped_empty_support` is raised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticResult {
    pub value: f64,
    pub clamped_empty_support: bool,
}

impl AnalyticResult {
    fn exact_zero(clamped: bool) -> Self {
        Self {
            value: 0.0,
            clamped_empty_support: clamped,
        }
    }
}

// ---------------------------------------------------------------------------
// normalized gain integrals over the unit-height kernel (1 + u^2)^(-beta)
// ---------------------------------------------------------------------------

/// `int_0^x (1+u^2)^(-beta) du = x * 2F1(1/2, beta; 3/2; -x^2)`.
///
/// Evaluated through the Pfaff route, which stays fast and
/// cancellation-free for arguments arbitrarily close to -1 (for example
/// `theta_f = pi/4`, whose tangent squares to 1 minus one ulp).
fn gain_integral_from_zero(x: f64, beta: f64) -> Result<f64, AnalyticError> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let p = Hyp2F1Params::new(0.5, beta, 1.5, -x * x)?;
    Ok(x * hyp2f1_via_pfaff(&p, HYP_TOL)?)
}

/// `int_x^inf (1+u^2)^(-beta) du
///  = x^(1-2 beta) / (2 beta - 1) * 2F1(beta, beta - 1/2; beta + 1/2; -1/x^2)`,
/// accurate in the far tail where the from-zero difference would cancel.
fn gain_integral_tail(x: f64, beta: f64) -> Result<f64, AnalyticError> {
    debug_assert!(x > 0.0);
    let p = Hyp2F1Params::new(beta, beta - 0.5, beta + 0.5, -1.0 / (x * x))?;
    Ok(x.powf(1.0 - 2.0 * beta) / (2.0 * beta - 1.0) * hyp2f1_via_pfaff(&p, HYP_TOL)?)
}

/// `int_0^inf (1+u^2)^(-beta) du = sqrt(pi) Gamma(beta-1/2) / (2 Gamma(beta))`.
fn gain_integral_half_line(beta: f64) -> f64 {
    0.5 * PI.sqrt() * (ln_gamma(beta - 0.5) - ln_gamma(beta)).exp()
}

/// `int_{lo}^{hi} (1+u^2)^(-beta) du` with `0 <= lo < hi <= inf`, choosing
/// a representation that avoids catastrophic cancellation across the whole
/// parameter range.
fn gain_integral_between(lo: f64, hi: f64, beta: f64) -> Result<f64, AnalyticError> {
    let value = if lo >= 1.0 {
        // both limits in the tail: difference of two tail integrals keeps
        // full relative accuracy because the tail decays geometrically
        let upper = if hi.is_finite() {
            gain_integral_tail(hi, beta)?
        } else {
            0.0
        };
        gain_integral_tail(lo, beta)? - upper
    } else if hi.is_finite() && hi <= TAIL_SPLIT {
        gain_integral_from_zero(hi, beta)? - gain_integral_from_zero(lo, beta)?
    } else {
        let upper = if hi.is_finite() {
            gain_integral_tail(hi, beta)?
        } else {
            0.0
        };
        gain_integral_half_line(beta) - gain_integral_from_zero(lo, beta)? - upper
    };
    Ok(value.max(0.0))
}

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

/// Mean co-channel interference of a 1D homogeneous Poisson field over the
/// one-sided visible support `[z, h*tan(theta_f)]`:
///
/// `lambda * ( h^(1-2b) tan(tf) 2F1(1/2, b; 3/2; -tan^2 tf)
///           - z h^(-2b) 2F1(1/2, b; 3/2; -z^2/h^2) )`
///
/// with `b = beta`. Empty support (`z > h*tan(theta_f)`) clamps to 0 with
/// a flag; the exact boundary `z = h*tan(theta_f)` is 0 without the flag.
pub fn mean_interference_1d(inputs: &MeanInterferenceInputs) -> Result<AnalyticResult, AnalyticError> {
    let t = inputs.fov_tan();
    if t.is_finite() && inputs.z >= inputs.h * t {
        return Ok(AnalyticResult::exact_zero(inputs.z > inputs.h * t));
    }
    let zp = inputs.z / inputs.h;
    let normalized = gain_integral_between(zp, t, inputs.beta)?;
    Ok(AnalyticResult {
        value: inputs.lambda * inputs.h.powf(1.0 - 2.0 * inputs.beta) * normalized,
        clamped_empty_support: false,
    })
}

/// Symmetric two-sided variant of [`mean_interference_1d`]: interferers on
/// both sides of the receiver, i.e. exactly twice the one-sided value.
/// The one-sided support is the reference convention used everywhere else;
/// this variant exists to match the full-line sampling picture.
pub fn mean_interference_1d_two_sided(
    inputs: &MeanInterferenceInputs,
) -> Result<AnalyticResult, AnalyticError> {
    let one_sided = mean_interference_1d(inputs)?;
    Ok(AnalyticResult {
        value: 2.0 * one_sided.value,
        clamped_empty_support: one_sided.clamped_empty_support,
    })
}

/// Mean co-channel interference of a 2D homogeneous Poisson field over the
/// annular visible support `z <= r <= h*tan(theta_f)`:
///
/// `lambda * pi/(beta-1) * ( (h^2+z^2)^(1-beta)
///                         - h^(2-2beta) cos^(2beta-2)(theta_f) )`
///
/// At `theta_f = pi/2` the cosine term vanishes and the support is the
/// full plane beyond `z`.
pub fn mean_interference_2d(inputs: &MeanInterferenceInputs) -> Result<AnalyticResult, AnalyticError> {
    let t = inputs.fov_tan();
    if t.is_finite() && inputs.z >= inputs.h * t {
        return Ok(AnalyticResult::exact_zero(inputs.z > inputs.h * t));
    }
    let h2 = inputs.h * inputs.h;
    let near = (h2 + inputs.z * inputs.z).powf(1.0 - inputs.beta);
    let far = if t.is_finite() {
        inputs.h.powf(2.0 - 2.0 * inputs.beta)
            * inputs.theta_f.cos().powf(2.0 * inputs.beta - 2.0)
    } else {
        0.0
    };
    let value = inputs.lambda * PI / (inputs.beta - 1.0) * (near - far);
    Ok(AnalyticResult {
        value: value.max(0.0),
        clamped_empty_support: false,
    })
}

/// Visible-interference support region for the given dimension, or `None`
/// when it is empty (`z >= h*tan(theta_f)`).
pub fn interference_support(inputs: &MeanInterferenceInputs, dim: Dim) -> Option<Region> {
    let radius = inputs.fov_radius();
    if inputs.z >= radius {
        return None;
    }
    match dim {
        Dim::One => Region::interval(inputs.z, radius).ok(),
        Dim::Two => Region::annulus(inputs.z, radius).ok(),
    }
}

// ---------------------------------------------------------------------------
// quadrature forms
// ---------------------------------------------------------------------------

/// Mean of a shot-noise sum over a Poisson field by direct integration:
/// `int lambda(x) f(x) dx` over an interval, or the polar-reduced
/// `int 2 pi r lambda(r) f(r) dr` over an annulus. Infinite upper limits
/// are reduced to proper integrals by the radial change of variable
/// `u = r^2` followed by endpoint compactification (proper for kernels
/// decaying faster than `r^-2`, i.e. any `beta > 1`).
///
/// This is the independent oracle for both closed forms above.
pub fn campbell_integral<L, K>(
    lambda_fn: L,
    kernel: K,
    support: &Region,
    tol: QuadTol,
) -> Result<QuadResult, AnalyticError>
where
    L: Fn(f64) -> f64,
    K: Fn(f64) -> f64,
{
    match *support {
        Region::Interval { a, b } => integrate(|x| lambda_fn(x) * kernel(x), a, b, tol),
        Region::Annulus { r_min, r_max } => {
            let integrand = move |u: f64| {
                let r = u.sqrt();
                PI * lambda_fn(r) * kernel(r)
            };
            integrate(
                integrand,
                r_min * r_min,
                if r_max.is_finite() {
                    r_max * r_max
                } else {
                    f64::INFINITY
                },
                tol,
            )
        }
        Region::Rectangle { .. } => Err(AnalyticError::UnsupportedSupport(
            "rectangle supports are sampling-only",
        )),
    }
}

/// Laplace functional of the interference at transform variable `s >= 0`:
///
/// `L(s) = exp( -lambda * int_support (1 - e^(-s f(x))) dx )`
///
/// evaluated by adaptive quadrature (polar form over annuli). Returns
/// exactly 1 at `s = 0` and is non-increasing in `s`.
pub fn laplace_functional(
    s: f64,
    lambda: f64,
    channel: &LambertianChannel,
    support: &Region,
    tol: QuadTol,
) -> Result<f64, AnalyticError> {
    if !(s >= 0.0) || s.is_nan() {
        return Err(AnalyticError::Domain(format!(
            "transform variable must be non-negative, got {s}"
        )));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(AnalyticError::Domain(format!(
            "intensity must be non-negative and finite, got {lambda}"
        )));
    }
    if s == 0.0 || lambda == 0.0 {
        return Ok(1.0);
    }
    let exponent_kernel = |d: f64| -(-s * channel.path_gain(d)).exp_m1();
    let integral = match *support {
        Region::Interval { a, b } => integrate(exponent_kernel, a, b, tol)?,
        Region::Annulus { r_min, r_max } => {
            let integrand = move |u: f64| PI * exponent_kernel(u.sqrt());
            integrate(
                integrand,
                r_min * r_min,
                if r_max.is_finite() {
                    r_max * r_max
                } else {
                    f64::INFINITY
                },
                tol,
            )?
        }
        Region::Rectangle { .. } => {
            return Err(AnalyticError::UnsupportedSupport(
                "rectangle supports are sampling-only",
            ))
        }
    };
    Ok((-lambda * integral.value).exp())
}
