//! Interference and SINR analysis for networks of optical attocells
//! served from Poisson-distributed emitters at uniform height.
//!
//! The crate is organized around four layers:
//!
//! - [`channel`]: Lambertian optics, path gain, field-of-view gating and
//!   instantaneous SINR.
//! - [`sampler`]: seeded homogeneous Poisson point process realizations
//!   over 1D and 2D regions.
//! - [`analytic`]: closed-form mean interference (hypergeometric in 1D,
//!   elementary in 2D), Campbell-integral quadrature oracle, and the
//!   interference Laplace functional.
//! - [`montecarlo`]: empirical estimators with confidence intervals that
//!   cross-validate the analytic layer.
//!
//! [`config`] and [`commands`] back the `libnet` command-line front end.

pub mod analytic;
pub mod channel;
pub mod commands;
pub mod config;
pub mod montecarlo;
pub mod sampler;
pub mod stats;

pub use analytic::{
    campbell_integral, hyp2f1, laplace_functional, mean_interference_1d, mean_interference_2d,
    AnalyticError, AnalyticResult, Hyp2F1Params, MeanInterferenceInputs, QuadResult, QuadTol,
};
pub use channel::{
    fov_gate, lambertian_order, sinr, ChannelError, LambertianChannel, Receiver, Sinr,
};
pub use config::{ScenarioConfig, SweepParam};
pub use montecarlo::{compare, Comparison, EmpiricalResult, McConfig, SamplingMode};
pub use sampler::{expected_count, sample_ppp, Dim, PointField, Region, SampleError};
