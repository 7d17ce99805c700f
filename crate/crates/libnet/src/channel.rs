//! Optical downlink channel model for an attocell network served from a
//! uniform height `h`:
//!
//! - Lambertian emission order `m` from the half-power semi-angle
//! - path-gain kernel `(d^2 + h^2)^(-beta)` with `beta = m + 3`
//! - receiver field-of-view gate with horizontal radius `h*tan(theta_f)`
//! - instantaneous SINR of a tagged emitter against a field of co-channel
//!   interferers
//!
//! All quantities are receiver-anchored: `d` is the horizontal
//! (ground-projected) distance between an emitter and the receiver.

use std::f64::consts::{FRAC_PI_2, LN_2};

use thiserror::Error;

use crate::sampler::PointField;

/// Errors from constructing or evaluating channel-model types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("half-power semi-angle must lie in (0, pi/2) rad, got {0}")]
    InvalidHalfPowerAngle(f64),
    #[error("emitter height must be positive and finite, got {0}")]
    InvalidHeight(f64),
    #[error("fov out of range: field-of-view half-angle must lie in (0, pi/2] rad, got {0}")]
    InvalidFov(f64),
    #[error("receiver offset must be non-negative and finite, got {0}")]
    InvalidOffset(f64),
    #[error("noise power must be non-negative and finite, got {0}")]
    InvalidNoise(f64),
    #[error("receiver offset {offset} exceeds the field-of-view radius {radius}")]
    OffsetOutsideFov { offset: f64, radius: f64 },
}

/// Lambertian emission order `m = -ln(2) / ln(cos(theta_h))` for a
/// half-power semi-angle `theta_h` in radians.
///
/// Strictly decreasing on the valid domain `(0, pi/2)`: a wider
/// half-power cone means a broader, lower-order beam (`m(60 deg) = 1`,
/// `m(45 deg) = 2`, `m -> inf` as the beam narrows).
pub fn lambertian_order(theta_h: f64) -> Result<f64, ChannelError> {
    if !(theta_h > 0.0 && theta_h < FRAC_PI_2) || theta_h.is_nan() {
        return Err(ChannelError::InvalidHalfPowerAngle(theta_h));
    }
    Ok(-LN_2 / theta_h.cos().ln())
}

/// Field-of-view gate: 1 if the emitter at horizontal distance
/// `horizontal_distance` falls inside the receiver acceptance cone,
/// 0 otherwise. The boundary `|d| = h*tan(fov)` is inclusive.
///
/// `fov = pi/2` is the unbounded-FOV sentinel and always gates to 1.
pub fn fov_gate(horizontal_distance: f64, h: f64, fov: f64) -> f64 {
    debug_assert!(h > 0.0, "gate height must be positive");
    debug_assert!(fov > 0.0 && fov <= FRAC_PI_2, "fov outside (0, pi/2]");
    if fov >= FRAC_PI_2 {
        return 1.0;
    }
    if horizontal_distance.abs() <= h * fov.tan() {
        1.0
    } else {
        0.0
    }
}

/// Downlink emitter optics shared by every balloon in a scenario.
///
/// Invariants held by construction: `m = -ln(2)/ln(cos(theta_h))`,
/// `beta = m + 3`, `m > 0`, `h > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambertianChannel {
    theta_h: f64,
    m: f64,
    beta: f64,
    h: f64,
}

impl LambertianChannel {
    /// Build a channel from the half-power semi-angle (radians) and the
    /// emitter height above the receiver plane (metres).
    pub fn new(theta_h: f64, h: f64) -> Result<Self, ChannelError> {
        let m = lambertian_order(theta_h)?;
        if !(h > 0.0) || !h.is_finite() {
            return Err(ChannelError::InvalidHeight(h));
        }
        Ok(Self {
            theta_h,
            m,
            beta: m + 3.0,
            h,
        })
    }

    /// Half-power semi-angle in radians.
    pub fn theta_h(&self) -> f64 {
        self.theta_h
    }

    /// Lambertian emission order `m`.
    pub fn order(&self) -> f64 {
        self.m
    }

    /// Combined interference exponent `beta = m + 3`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Emitter height in metres.
    pub fn height(&self) -> f64 {
        self.h
    }

    /// Path gain `(d^2 + h^2)^(-beta)` at horizontal distance `d`.
    ///
    /// Strictly positive and strictly decreasing in `|d|`.
    pub fn path_gain(&self, horizontal_distance: f64) -> f64 {
        let d = horizontal_distance;
        (d * d + self.h * self.h).powf(-self.beta)
    }
}

/// Receiver photodiode: field of view, horizontal offset from its tagged
/// emitter, and additive noise power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Receiver {
    fov: f64,
    offset_z: f64,
    noise_omega: f64,
}

impl Receiver {
    /// `fov` in radians within `(0, pi/2]` (`pi/2` meaning unbounded),
    /// `offset_z >= 0` metres, `noise_omega >= 0`.
    pub fn new(fov: f64, offset_z: f64, noise_omega: f64) -> Result<Self, ChannelError> {
        if !(fov > 0.0 && fov <= FRAC_PI_2) || fov.is_nan() {
            return Err(ChannelError::InvalidFov(fov));
        }
        if !(offset_z >= 0.0) || !offset_z.is_finite() {
            return Err(ChannelError::InvalidOffset(offset_z));
        }
        if !(noise_omega >= 0.0) || !noise_omega.is_finite() {
            return Err(ChannelError::InvalidNoise(noise_omega));
        }
        Ok(Self {
            fov,
            offset_z,
            noise_omega,
        })
    }

    /// Field-of-view half-angle in radians.
    pub fn fov(&self) -> f64 {
        self.fov
    }

    /// Horizontal distance from the tagged emitter, metres.
    pub fn offset_z(&self) -> f64 {
        self.offset_z
    }

    /// Noise power in the same units as received interference power.
    pub fn noise_omega(&self) -> f64 {
        self.noise_omega
    }

    /// Horizontal radius of the acceptance cone at height `h`:
    /// `h*tan(fov)`, or infinity for the unbounded sentinel `fov = pi/2`.
    pub fn fov_radius(&self, h: f64) -> f64 {
        if self.fov >= FRAC_PI_2 {
            f64::INFINITY
        } else {
            h * self.fov.tan()
        }
    }
}

/// Instantaneous SINR outcome. The zero-noise, zero-interference case is
/// reported as `Infinite` rather than a division error, and the 0/0 case
/// (gated-out numerator with zero denominator) as `Undefined`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sinr {
    Finite(f64),
    Infinite,
    Undefined,
}

impl Sinr {
    /// The finite value, if there is one.
    pub fn finite(&self) -> Option<f64> {
        match self {
            Sinr::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Sinr::Infinite)
    }

    /// True if the SINR exceeds `threshold` (infinite SINR exceeds any
    /// threshold, undefined exceeds none).
    pub fn exceeds(&self, threshold: f64) -> bool {
        match self {
            Sinr::Finite(v) => *v > threshold,
            Sinr::Infinite => true,
            Sinr::Undefined => false,
        }
    }
}

/// SINR of the tagged emitter for a sampled interferer field.
///
/// The tagged emitter sits at horizontal distance `rx.offset_z()`; every
/// point of `field` is an interferer. Rejects receivers whose offset lies
/// outside the field-of-view radius.
pub fn sinr(
    field: &PointField,
    channel: &LambertianChannel,
    rx: &Receiver,
) -> Result<Sinr, ChannelError> {
    let radius = rx.fov_radius(channel.height());
    if rx.offset_z() > radius {
        return Err(ChannelError::OffsetOutsideFov {
            offset: rx.offset_z(),
            radius,
        });
    }
    Ok(sinr_from_distances(
        field.horizontal_distances(),
        channel,
        rx,
    ))
}

/// SINR from raw interferer horizontal distances, without the offset
/// precondition check. The numerator gate is still evaluated, so an
/// out-of-view tagged emitter yields `Undefined` at zero noise.
pub fn sinr_from_distances<I>(distances: I, channel: &LambertianChannel, rx: &Receiver) -> Sinr
where
    I: IntoIterator<Item = f64>,
{
    let h = channel.height();
    let z = rx.offset_z();
    let numerator = channel.path_gain(z) * fov_gate(z, h, rx.fov());

    let mut interference = 0.0;
    for d in distances {
        let gate = fov_gate(d, h, rx.fov());
        if gate > 0.0 {
            interference += channel.path_gain(d) * gate;
        }
    }

    let denominator = interference + rx.noise_omega();
    if denominator > 0.0 {
        Sinr::Finite(numerator / denominator)
    } else if numerator > 0.0 {
        Sinr::Infinite
    } else {
        Sinr::Undefined
    }
}
