//! Globally adaptive Gauss-Kronrod (7, 15) quadrature with both absolute
//! and relative targets. An infinite upper limit is mapped onto (0, 1] by
//! `x = a + s*(1-t)/t`; Kronrod abscissae are interior, so the transformed
//! endpoint is never evaluated.

use super::AnalyticError;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Absolute-or-relative convergence target: refinement stops once the
/// total error estimate drops below `max(abs_tol, rel_tol * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadTol {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadTol {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
        }
    }
}

/// Converged integral with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

const MAX_SEGMENTS: usize = 4096;

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap on the error estimate; unsplittable segments sink
        match (self.splittable, other.splittable) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => self.error.total_cmp(&other.error),
        }
    }
}

/// Adaptive integral of `f` over `[a, b]`; `b` may be `f64::INFINITY`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: QuadTol) -> Result<QuadResult, AnalyticError>
where
    F: Fn(f64) -> f64,
{
    if !a.is_finite() || b.is_nan() {
        return Err(AnalyticError::Domain(format!(
            "integration bounds must have finite lower limit, got [{a}, {b}]"
        )));
    }
    if a > b {
        return Err(AnalyticError::Domain(format!(
            "inverted integration limits [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 0,
        });
    }

    if b.is_infinite() {
        // x = a + s*(1-t)/t maps t in (0, 1] onto [a, inf)
        let scale = a.abs().max(1.0);
        let g = move |t: f64| {
            let x = a + scale * (1.0 - t) / t;
            f(x) * scale / (t * t)
        };
        adaptive(&g, 0.0, 1.0, tol)
    } else {
        adaptive(&f, a, b, tol)
    }
}

fn adaptive<F>(f: &F, a: f64, b: f64, tol: QuadTol) -> Result<QuadResult, AnalyticError>
where
    F: Fn(f64) -> f64,
{
    let mut heap = BinaryHeap::with_capacity(64);
    heap.push(evaluate_segment(f, a, b));

    let mut total_value: f64 = heap.peek().unwrap().value;
    let mut total_error: f64 = heap.peek().unwrap().error;
    let mut subdivisions = 0usize;

    loop {
        if !total_value.is_finite() {
            return Err(AnalyticError::Domain(
                "integrand produced a non-finite value".into(),
            ));
        }
        let target = tol.abs_tol.max(tol.rel_tol * total_value.abs());
        if total_error <= target {
            let value = heap.iter().map(|s| s.value).sum();
            return Ok(QuadResult {
                value,
                error_estimate: total_error,
                subdivisions,
            });
        }
        if heap.len() >= MAX_SEGMENTS {
            return Err(AnalyticError::QuadratureNonConvergence {
                requested: target,
                achieved: total_error,
            });
        }
        let worst = heap.pop().unwrap();
        let mid = 0.5 * (worst.lo + worst.hi);
        if !worst.splittable || mid <= worst.lo || mid >= worst.hi {
            // cannot refine further; accept the segment as-is
            let mut stuck = worst;
            stuck.splittable = false;
            heap.push(stuck);
            if heap.iter().all(|s| !s.splittable) {
                if total_error <= target {
                    break;
                }
                return Err(AnalyticError::QuadratureNonConvergence {
                    requested: target,
                    achieved: total_error,
                });
            }
            continue;
        }
        let left = evaluate_segment(f, worst.lo, mid);
        let right = evaluate_segment(f, mid, worst.hi);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }
    let value = heap.iter().map(|s| s.value).sum();
    Ok(QuadResult {
        value,
        error_estimate: total_error,
        subdivisions,
    })
}

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights,
// with the embedded 7-point Gauss weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn evaluate_segment<F>(f: &F, lo: f64, hi: f64) -> Segment
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let fc = f(center);
    let mut values = [0.0_f64; 15];
    values[14] = fc;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();

    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[2 * j] = f1;
        values[2 * j + 1] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    // QUADPACK-style error estimate: inflate |K15 - G7| by the measured
    // oscillation resasc so kinked integrands are not underestimated.
    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for (j, &w) in WGK.iter().enumerate().take(7) {
        resasc += w * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }
    resasc *= half.abs();
    resabs *= half.abs();

    let mut error = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    let round_off = 50.0 * f64::EPSILON * resabs;
    if round_off > f64::MIN_POSITIVE && round_off > error {
        error = round_off;
    }

    Segment {
        lo,
        hi,
        value: kronrod * half,
        error,
        splittable: true,
    }
}
