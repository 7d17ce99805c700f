//! Homogeneous Poisson point process realizations over explicit 1D and 2D
//! regions, with deterministic seeded substreams.
//!
//! Reproducibility contract: realization `i` of master seed `s` draws from
//! `ChaCha12Rng::seed_from_u64(s)` with the ChaCha stream id set to `i`.
//! Identical `(seed, index)` therefore yields a bit-identical field on any
//! thread and platform, independent of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Poisson};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

/// Default cap on `lambda * measure` to prevent runaway allocation.
pub const DEFAULT_MAX_EXPECTED_POINTS: f64 = 1e7;

/// Errors from region construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionError {
    #[error("interval requires a < b with finite a, got [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("annulus requires 0 <= r_min < r_max, got [{r_min}, {r_max}]")]
    InvalidAnnulus { r_min: f64, r_max: f64 },
    #[error("rectangle requires finite x0 < x1 and y0 < y1, got x [{x0}, {x1}], y [{y0}, {y1}]")]
    InvalidRectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
}

/// Errors from sampling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("intensity must be non-negative, got {0}")]
    NegativeIntensity(f64),
    #[error("cannot sample a region of unbounded measure")]
    UnboundedRegion,
    #[error("expected point count {expected:.3e} exceeds the cap {cap:.3e}")]
    CapExceeded { expected: f64, cap: f64 },
    #[error("point ({x}, {y}) lies outside the field region")]
    PointOutsideRegion { x: f64, y: f64 },
}

/// Spatial dimension of a region or field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    One,
    Two,
}

impl Dim {
    pub fn as_u8(self) -> u8 {
        match self {
            Dim::One => 1,
            Dim::Two => 2,
        }
    }
}

/// Sampling (and integration) support region. Upper bounds of intervals
/// and annuli may be `f64::INFINITY` for analytic use; such regions are
/// rejected by [`sample_ppp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// 1D interval `[a, b]` of receiver-anchored horizontal coordinates.
    Interval { a: f64, b: f64 },
    /// 2D annulus `r_min <= r <= r_max` centred on the receiver.
    Annulus { r_min: f64, r_max: f64 },
    /// Axis-aligned rectangle.
    Rectangle { x0: f64, x1: f64, y0: f64, y1: f64 },
}

impl Region {
    pub fn interval(a: f64, b: f64) -> Result<Self, RegionError> {
        if a.is_finite() && a < b && !b.is_nan() {
            Ok(Region::Interval { a, b })
        } else {
            Err(RegionError::InvalidInterval { a, b })
        }
    }

    pub fn annulus(r_min: f64, r_max: f64) -> Result<Self, RegionError> {
        if r_min.is_finite() && r_min >= 0.0 && r_min < r_max && !r_max.is_nan() {
            Ok(Region::Annulus { r_min, r_max })
        } else {
            Err(RegionError::InvalidAnnulus { r_min, r_max })
        }
    }

    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self, RegionError> {
        let finite = x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite();
        if finite && x0 < x1 && y0 < y1 {
            Ok(Region::Rectangle { x0, x1, y0, y1 })
        } else {
            Err(RegionError::InvalidRectangle { x0, x1, y0, y1 })
        }
    }

    /// Length (1D) or area (2D).
    pub fn measure(&self) -> f64 {
        match *self {
            Region::Interval { a, b } => b - a,
            Region::Annulus { r_min, r_max } => PI * (r_max * r_max - r_min * r_min),
            Region::Rectangle { x0, x1, y0, y1 } => (x1 - x0) * (y1 - y0),
        }
    }

    pub fn dimension(&self) -> Dim {
        match self {
            Region::Interval { .. } => Dim::One,
            _ => Dim::Two,
        }
    }

    /// Boundary-inclusive membership test. The `y` component is ignored
    /// for intervals.
    pub fn contains(&self, point: [f64; 2]) -> bool {
        match *self {
            Region::Interval { a, b } => point[0] >= a && point[0] <= b,
            Region::Annulus { r_min, r_max } => {
                let r = point[0].hypot(point[1]);
                r >= r_min && r <= r_max
            }
            Region::Rectangle { x0, x1, y0, y1 } => {
                point[0] >= x0 && point[0] <= x1 && point[1] >= y0 && point[1] <= y1
            }
        }
    }
}

/// Provenance of one realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedInfo {
    pub seed: u64,
    pub index: u64,
}

/// One realization of emitter positions. Coordinates are
/// receiver-anchored; 1D fields carry `y = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointField {
    dimension: Dim,
    points: Vec<[f64; 2]>,
    region: Region,
    seed_info: SeedInfo,
}

impl PointField {
    /// Wrap explicit 1D coordinates, validating containment. Intended for
    /// replaying dumped fields and for deterministic test fixtures.
    pub fn from_coords_1d(
        xs: Vec<f64>,
        region: Region,
        seed: u64,
        index: u64,
    ) -> Result<Self, SampleError> {
        let points: Vec<[f64; 2]> = xs.into_iter().map(|x| [x, 0.0]).collect();
        for p in &points {
            if !region.contains(*p) {
                return Err(SampleError::PointOutsideRegion { x: p[0], y: p[1] });
            }
        }
        Ok(Self {
            dimension: Dim::One,
            points,
            region,
            seed_info: SeedInfo { seed, index },
        })
    }

    /// Wrap explicit 2D points, validating containment.
    pub fn from_points_2d(
        points: Vec<[f64; 2]>,
        region: Region,
        seed: u64,
        index: u64,
    ) -> Result<Self, SampleError> {
        for p in &points {
            if !region.contains(*p) {
                return Err(SampleError::PointOutsideRegion { x: p[0], y: p[1] });
            }
        }
        Ok(Self {
            dimension: Dim::Two,
            points,
            region,
            seed_info: SeedInfo { seed, index },
        })
    }

    pub fn dimension(&self) -> Dim {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn seed_info(&self) -> SeedInfo {
        self.seed_info
    }

    /// Horizontal distance of every point from the receiver at the origin.
    pub fn horizontal_distances(&self) -> impl Iterator<Item = f64> + '_ {
        let dim = self.dimension;
        self.points.iter().map(move |p| match dim {
            Dim::One => p[0].abs(),
            Dim::Two => p[0].hypot(p[1]),
        })
    }
}

/// The substream generator for realization `index` under `seed`.
pub fn realization_rng(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Expected point count `lambda * measure(region)`.
pub fn expected_count(region: &Region, lambda: f64) -> f64 {
    lambda * region.measure()
}

/// Sample one homogeneous PPP realization with the default point cap.
pub fn sample_ppp(
    region: &Region,
    lambda: f64,
    seed: u64,
    index: u64,
) -> Result<PointField, SampleError> {
    sample_ppp_capped(region, lambda, seed, index, DEFAULT_MAX_EXPECTED_POINTS)
}

/// Sample one homogeneous PPP realization.
///
/// The count is Poisson with mean `lambda * measure`; given the count,
/// points are i.i.d. uniform on the region. Annulus radii use the
/// inverse-CDF `r = sqrt(r_min^2 + u*(r_max^2 - r_min^2))` rather than
/// rejection, so the uniform-draw consumption per point is fixed (one
/// draw per interval point, two per annulus or rectangle point, radius
/// before angle, x before y).
pub fn sample_ppp_capped(
    region: &Region,
    lambda: f64,
    seed: u64,
    index: u64,
    max_expected_points: f64,
) -> Result<PointField, SampleError> {
    if !(lambda >= 0.0) || lambda.is_nan() {
        return Err(SampleError::NegativeIntensity(lambda));
    }
    let expected = expected_count(region, lambda);
    if lambda > 0.0 && !expected.is_finite() {
        return Err(SampleError::UnboundedRegion);
    }
    if expected > max_expected_points {
        return Err(SampleError::CapExceeded {
            expected,
            cap: max_expected_points,
        });
    }

    let mut rng = realization_rng(seed, index);
    let count = if expected > 0.0 {
        let poisson = Poisson::new(expected).expect("validated mean");
        poisson.sample(&mut rng) as usize
    } else {
        0
    };

    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        points.push(draw_point(region, &mut rng));
    }

    Ok(PointField {
        dimension: region.dimension(),
        points,
        region: *region,
        seed_info: SeedInfo { seed, index },
    })
}

fn draw_point(region: &Region, rng: &mut ChaCha12Rng) -> [f64; 2] {
    match *region {
        Region::Interval { a, b } => {
            let u: f64 = rng.random();
            [a + u * (b - a), 0.0]
        }
        Region::Annulus { r_min, r_max } => {
            let u_r: f64 = rng.random();
            let u_t: f64 = rng.random();
            let r = (r_min * r_min + u_r * (r_max * r_max - r_min * r_min)).sqrt();
            let theta = u_t * TAU;
            [r * theta.cos(), r * theta.sin()]
        }
        Region::Rectangle { x0, x1, y0, y1 } => {
            let u_x: f64 = rng.random();
            let u_y: f64 = rng.random();
            [x0 + u_x * (x1 - x0), y0 + u_y * (y1 - y0)]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn region_constructors_enforce_ordering() {
        assert!(Region::interval(1.0, 1.0).is_err());
        assert!(Region::interval(2.0, 1.0).is_err());
        assert!(Region::interval(f64::NEG_INFINITY, 1.0).is_err());
        assert!(Region::interval(0.0, f64::INFINITY).is_ok());
        assert!(Region::annulus(-0.1, 1.0).is_err());
        assert!(Region::annulus(1.0, 1.0).is_err());
        assert!(Region::annulus(1.0, f64::INFINITY).is_ok());
        assert!(Region::rectangle(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(Region::rectangle(0.0, f64::INFINITY, 0.0, 1.0).is_err());
    }

    #[test]
    fn measures_match_formulas() {
        assert_relative_eq!(
            Region::interval(0.0, 10.0).unwrap().measure(),
            10.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            Region::annulus(1.0, 2.0).unwrap().measure(),
            3.0 * PI,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            Region::rectangle(0.0, 2.0, -1.0, 3.0).unwrap().measure(),
            8.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn expected_count_examples() {
        assert_relative_eq!(
            expected_count(&Region::interval(0.0, 10.0).unwrap(), 2.0),
            20.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            expected_count(&Region::annulus(1.0, 2.0).unwrap(), 1.0),
            3.0 * PI,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            expected_count(&Region::rectangle(0.0, 1.0, 0.0, 1.0).unwrap(), 5.0),
            5.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn zero_intensity_gives_empty_field() {
        let region = Region::annulus(0.5, 4.0).unwrap();
        let field = sample_ppp(&region, 0.0, 7, 3).unwrap();
        assert!(field.is_empty());
        assert_eq!(field.seed_info(), SeedInfo { seed: 7, index: 3 });
    }

    #[test]
    fn sampling_is_deterministic_in_seed_and_index() {
        let region = Region::interval(-3.0, 9.0).unwrap();
        let a = sample_ppp(&region, 1.7, 42, 5).unwrap();
        let b = sample_ppp(&region, 1.7, 42, 5).unwrap();
        assert_eq!(a, b);

        let other_index = sample_ppp(&region, 1.7, 42, 6).unwrap();
        let other_seed = sample_ppp(&region, 1.7, 43, 5).unwrap();
        assert_ne!(a.points(), other_index.points());
        assert_ne!(a.points(), other_seed.points());
    }

    #[test]
    fn distinct_indices_give_distinct_fields() {
        let region = Region::interval(0.0, 50.0).unwrap();
        let a = sample_ppp(&region, 1.0, 9, 0).unwrap();
        let b = sample_ppp(&region, 1.0, 9, 1).unwrap();
        assert_ne!(a.points(), b.points());
    }

    #[test]
    fn all_points_inside_region() {
        for region in [
            Region::interval(2.0, 3.5).unwrap(),
            Region::annulus(1.0, 2.0).unwrap(),
            Region::rectangle(-1.0, 1.0, 5.0, 6.0).unwrap(),
        ] {
            for index in 0..50 {
                let field = sample_ppp(&region, 3.0, 11, index).unwrap();
                for p in field.points() {
                    assert!(region.contains(*p), "{p:?} escaped {region:?}");
                }
            }
        }
    }

    #[test]
    fn negative_intensity_rejected() {
        let region = Region::interval(0.0, 1.0).unwrap();
        assert!(matches!(
            sample_ppp(&region, -1.0, 0, 0),
            Err(SampleError::NegativeIntensity(_))
        ));
    }

    #[test]
    fn cap_and_unbounded_rejections() {
        let region = Region::interval(0.0, 1e9).unwrap();
        assert!(matches!(
            sample_ppp(&region, 1.0, 0, 0),
            Err(SampleError::CapExceeded { .. })
        ));
        let open = Region::interval(0.0, f64::INFINITY).unwrap();
        assert!(matches!(
            sample_ppp(&open, 0.5, 0, 0),
            Err(SampleError::UnboundedRegion)
        ));
        // zero intensity on an unbounded region is still fine
        assert!(sample_ppp(&open, 0.0, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn synthetic_fields_validate_containment() {
        let region = Region::interval(0.0, 1.0).unwrap();
        assert!(PointField::from_coords_1d(vec![0.0, 1.0], region, 0, 0).is_ok());
        assert!(matches!(
            PointField::from_coords_1d(vec![1.5], region, 0, 0),
            Err(SampleError::PointOutsideRegion { .. })
        ));
    }

    #[test]
    fn horizontal_distances_by_dimension() {
        let region1 = Region::interval(-5.0, 5.0).unwrap();
        let f1 = PointField::from_coords_1d(vec![-2.0, 3.0], region1, 0, 0).unwrap();
        let d1: Vec<f64> = f1.horizontal_distances().collect();
        assert_eq!(d1, vec![2.0, 3.0]);

        let region2 = Region::annulus(0.0, 10.0).unwrap();
        let f2 = PointField::from_points_2d(vec![[3.0, 4.0]], region2, 0, 0).unwrap();
        let d2: Vec<f64> = f2.horizontal_distances().collect();
        assert_relative_eq!(d2[0], 5.0, max_relative = 1e-15);
    }

    #[test]
    fn annulus_radii_follow_inverse_cdf_mean() {
        // E[r] for area-uniform sampling on [1, 2]:
        // int r * 2r/(r_max^2 - r_min^2) dr = 2(8-1)/(3*3) = 14/9
        let region = Region::annulus(1.0, 2.0).unwrap();
        let mut sum = 0.0;
        let mut n = 0usize;
        for index in 0..2000 {
            let field = sample_ppp(&region, 2.0, 123, index).unwrap();
            for p in field.points() {
                sum += p[0].hypot(p[1]);
                n += 1;
            }
        }
        let mean = sum / n as f64;
        assert!(
            (mean - 14.0 / 9.0).abs() < 0.01,
            "area-uniform radial mean off: {mean}"
        );
    }
}
