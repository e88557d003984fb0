//! Certified bounds on `sup G'²/G` and `min G`.
//!
//! With `u = cos 2πx`,
//!
//! ```text
//! G'²/G = 16π² (1-u²) [1 ± (k+1) U_k(u) ± (k+2) U_{k+1}(u)]² / (3 + 2u ± 2T_{k+1}(u) ± 2T_{k+2}(u))
//! ```
//!
//! Maxima are found on a uniform grid, refined by golden-section search and
//! certified with a second-order Taylor slack per grid cell.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::poly::{chebyshev_t, chebyshev_u, Poly};
use super::deriv_sup_bounds;
use crate::error::{Error, Result};
use crate::trig::{EvalPoint, PolyFamily, Sign};

/// Grid cells on `[-1, 1]` for the rational maximization.
pub const RATIO_GRID: usize = 1_000_000;

/// Grid intervals on `[0, 1/2]` for the minimum of `G`.
pub const GMIN_GRID: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioBound {
    pub k: u32,
    pub sign: Sign,
    /// Best value found (grid + golden-section refinement).
    pub sup_estimate: f64,
    pub argmax_u: f64,
    /// `B` such that `B·D(u) − N(u) ≥ 0` is certified on `[-1, 1]`.
    pub certified: f64,
    /// `certified` rounded up to two significant digits.
    pub reported: f64,
    /// Certified lower bound of the (reduced) denominator on `[-1, 1]`.
    pub denominator_min: f64,
    /// Refined location and value of that minimum.
    pub denominator_argmin_u: f64,
    pub denominator_min_estimate: f64,
    /// True when the common factor `(2u+1)²` was cancelled first.
    pub cancelled: bool,
}

/// Numerator and denominator of `G'²/G` as polynomials in `u`.
pub fn ratio_polys(fam: PolyFamily) -> (Poly, Poly, bool) {
    let prefactor = Poly::new(vec![16.0 * PI * PI, 0.0, -16.0 * PI * PI]);
    if fam.k() == 3 && fam.sign() == Sign::Plus {
        // 80u⁴+32u³−60u²−16u+6 = (2u+1)(40u³−4u²−28u+6)
        // 32u⁵+16u⁴−40u³−16u²+12u+5 = (2u+1)²(8u³−4u²−8u+5)
        let q = Poly::new(vec![6.0, -28.0, -4.0, 40.0]);
        let d = Poly::new(vec![5.0, -8.0, -4.0, 8.0]);
        return (&prefactor * &(&q * &q), d, true);
    }
    let (q, d) = unreduced_parts(fam);
    (&prefactor * &(&q * &q), d, false)
}

/// `(1 ± (k+1)U_k ± (k+2)U_{k+1},  3 + 2u ± 2T_{k+1} ± 2T_{k+2})`.
pub fn unreduced_parts(fam: PolyFamily) -> (Poly, Poly) {
    let k = fam.k() as usize;
    let s = fam.sign().factor();
    let kf = k as f64;
    let q = &(&Poly::constant(1.0) + &chebyshev_u(k).scale(s * (kf + 1.0)))
        + &chebyshev_u(k + 1).scale(s * (kf + 2.0));
    let d = &(&Poly::new(vec![3.0, 2.0]) + &chebyshev_t(k + 1).scale(2.0 * s))
        + &chebyshev_t(k + 2).scale(2.0 * s);
    (q, d)
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..100 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Certified lower bound of `p` on `[lo, hi]` split into `cells` cells:
/// `p(u) ≥ p(c) − |p'(c)| h/2 − sup|p''| h²/8` around each cell centre `c`.
pub fn certified_min(p: &Poly, lo: f64, hi: f64, cells: usize) -> f64 {
    let dp = p.derivative();
    let curvature = p.derivative().derivative().sup_bound_unit();
    let h = (hi - lo) / cells as f64;
    let quad_slack = curvature * h * h / 8.0;
    (0..cells)
        .map(|i| {
            let c = lo + (i as f64 + 0.5) * h;
            p.eval(c) - dp.eval(c).abs() * h / 2.0 - quad_slack
        })
        .fold(f64::INFINITY, f64::min)
}

/// Round `x > 0` up to `digits` significant digits.
pub fn round_up_sig(x: f64, digits: i32) -> f64 {
    if x <= 0.0 {
        return x;
    }
    let e = x.log10().floor() as i32 - digits + 1;
    if e >= 0 {
        let scale = 10f64.powi(e);
        (x / scale).ceil() * scale
    } else {
        let scale = 10f64.powi(-e);
        (x * scale).ceil() / scale
    }
}

/// Certified upper bound on `sup_x G'²(x)/G(x)`.
pub fn ratio_bound(fam: PolyFamily) -> Result<RatioBound> {
    let (num, den, cancelled) = ratio_polys(fam);

    let den_min = certified_min(&den, -1.0, 1.0, RATIO_GRID);
    if den_min <= 0.0 {
        return Err(Error::DenominatorNotPositive(den_min));
    }
    let h = 2.0 / RATIO_GRID as f64;
    let centre = |i: usize| -1.0 + (i as f64 + 0.5) * h;

    let f = |u: f64| num.eval(u) / den.eval(u);
    let values: Vec<f64> = (0..RATIO_GRID).map(|i| f(centre(i))).collect();

    // local maxima of the grid (including the ends), best few refined
    let mut peaks: Vec<usize> = (0..RATIO_GRID)
        .filter(|&i| {
            let left = if i == 0 { f64::NEG_INFINITY } else { values[i - 1] };
            let right = values.get(i + 1).copied().unwrap_or(f64::NEG_INFINITY);
            values[i] >= left && values[i] >= right
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    peaks.truncate(5);

    let (mut argmax_u, mut sup_estimate) = (centre(peaks[0]), values[peaks[0]]);
    for &i in &peaks {
        let lo = (centre(i) - h).max(-1.0);
        let hi = (centre(i) + h).min(1.0);
        let (u, v) = golden_section_max(f, lo, hi);
        let (u, v) = [(u, v), (lo, f(lo)), (hi, f(hi))]
            .into_iter()
            .fold((u, v), |best, c| if c.1 > best.1 { c } else { best });
        if v > sup_estimate {
            sup_estimate = v;
            argmax_u = u;
        }
    }

    let mut candidate = sup_estimate * (1.0 + 1e-6);
    let mut certified = None;
    for _ in 0..40 {
        let gap = &den.scale(candidate) - &num;
        if certified_min(&gap, -1.0, 1.0, RATIO_GRID) >= 0.0 {
            certified = Some(candidate);
            break;
        }
        candidate *= 1.0 + 1e-5;
    }
    let certified = certified.ok_or(Error::DenominatorNotPositive(den_min))?;

    let (denominator_argmin_u, neg_min) = golden_section_max(|u| -den.eval(u), -1.0, 1.0);
    let grid_den_min = (0..=1000)
        .map(|i| den.eval(-1.0 + 2.0 * i as f64 / 1000.0))
        .fold(f64::INFINITY, f64::min);
    let (denominator_argmin_u, denominator_min_estimate) = if -neg_min <= grid_den_min {
        (denominator_argmin_u, -neg_min)
    } else {
        // golden section found a non-global minimum; fall back to the grid
        let i = (0..=1000)
            .min_by(|&a, &b| {
                den.eval(-1.0 + 2.0 * a as f64 / 1000.0)
                    .total_cmp(&den.eval(-1.0 + 2.0 * b as f64 / 1000.0))
            })
            .unwrap();
        let u = -1.0 + 2.0 * i as f64 / 1000.0;
        (u, den.eval(u))
    };

    Ok(RatioBound {
        k: fam.k(),
        sign: fam.sign(),
        sup_estimate,
        argmax_u,
        certified,
        reported: round_up_sig(certified, 2),
        denominator_min: den_min,
        denominator_argmin_u,
        denominator_min_estimate,
        cancelled,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GMinBound {
    pub k: u32,
    pub sign: Sign,
    /// Refined minimum value found.
    pub approx_min: f64,
    pub argmin_x: f64,
    /// `max(0, grid min − M₁·h)`.
    pub certified: f64,
    pub grid_step: f64,
}

/// Certified lower bound for `min G` over the circle.
pub fn g_min(fam: PolyFamily) -> GMinBound {
    let h = 0.5 / GMIN_GRID as f64;
    let (best_i, grid_min) = (0..=GMIN_GRID)
        .map(|i| (i, fam.g(i as f64 * h)))
        .fold((0, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best });

    let lo = (best_i as f64 * h - h).max(0.0);
    let hi = (best_i as f64 * h + h).min(0.5);
    let (x, neg) = golden_section_max(|x| -fam.g(x), lo, hi);
    let (argmin_x, approx_min) = if -neg < grid_min {
        (x, -neg)
    } else {
        (best_i as f64 * h, grid_min)
    };

    let m1 = deriv_sup_bounds(fam.k())[1];
    GMinBound {
        k: fam.k(),
        sign: fam.sign(),
        approx_min,
        argmin_x,
        certified: (grid_min - m1 * h).max(0.0),
        grid_step: h,
    }
}

/// `G'²(x)/G(x)` evaluated from the `u`-form at the point `x`.
pub fn ratio_at(fam: PolyFamily, x: f64) -> f64 {
    let (num, den, _) = ratio_polys(fam);
    let u = EvalPoint::from_x(x).u;
    num.eval(u) / den.eval(u)
}
