//! Fourth-order midpoint quadrature on `[0, 1/2]` with second-derivative
//! correction:
//!
//! ```text
//! ∫₀^{1/2} φ ≈ Σ_{n=1}^{N} [ φ(x_n)/(2N) + φ''(x_n)/(192 N³) ],   x_n = (2n-1)/(4N)
//! |error| ≤ ‖φ⁗‖∞ / (60 · 2¹⁰ · N⁴)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `60 · 2¹⁰`, the constant in the error certificate.
pub const ERROR_DENOMINATOR: f64 = 61_440.0;

/// Default ceiling on node counts; overridden by `MAJORANT_MAX_NODES`.
pub const DEFAULT_NODE_CAP: u32 = 500;

pub const NODE_CAP_ENV: &str = "MAJORANT_MAX_NODES";

/// Relative slack applied whenever a computed quantity is compared with a budget.
pub const FP_GUARD: f64 = 1e-9;

/// Node cap from the environment, falling back to [`DEFAULT_NODE_CAP`].
pub fn node_cap() -> u32 {
    std::env::var(NODE_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_NODE_CAP)
}

/// `lhs < rhs` with `lhs` inflated by [`FP_GUARD`].
pub fn guarded_lt(lhs: f64, rhs: f64) -> bool {
    lhs + lhs.abs() * FP_GUARD < rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_bound: f64,
    pub nodes: u32,
    pub fourth_bound: f64,
}

impl QuadResult {
    pub fn lower(&self) -> f64 {
        self.value - self.error_bound
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error_bound
    }

    pub fn contains(&self, exact: f64) -> bool {
        (exact - self.value).abs() <= self.error_bound
    }
}

/// Neumaier-compensated running sum. Order of `add` calls fixes the result.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Certified error of the rule for a given `‖φ⁗‖∞` and node count.
pub fn error_bound(fourth_bound: f64, nodes: u32) -> f64 {
    fourth_bound / (ERROR_DENOMINATOR * f64::from(nodes).powi(4))
}

fn check_fourth_bound(fourth_bound: f64) -> Result<()> {
    if fourth_bound.is_finite() && fourth_bound >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidFourthBound(fourth_bound))
    }
}

/// Integrate `f` over `[0, 1/2]` given its exact second derivative `f2`.
///
/// `fourth_bound` must dominate `sup |f⁗|`; the returned interval
/// `value ± error_bound` then contains the integral.
pub fn integrate<F, F2>(f: F, f2: F2, fourth_bound: f64, nodes: u32) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
    F2: Fn(f64) -> f64,
{
    if nodes == 0 {
        return Err(Error::ZeroNodes);
    }
    check_fourth_bound(fourth_bound)?;

    let n = f64::from(nodes);
    let mut values = CompensatedSum::new();
    let mut curvature = CompensatedSum::new();
    for i in 1..=nodes {
        let x = (2.0 * f64::from(i) - 1.0) / (4.0 * n);
        values.add(f(x));
        curvature.add(f2(x));
    }
    let value = values.total() / (2.0 * n) + curvature.total() / (192.0 * n * n * n);

    Ok(QuadResult {
        value,
        error_bound: error_bound(fourth_bound, nodes),
        nodes,
        fourth_bound,
    })
}

/// Least `N` with `fourth_bound / (60·2¹⁰·N⁴) < target_err`.
pub fn min_steps(fourth_bound: f64, target_err: f64) -> Result<u32> {
    check_fourth_bound(fourth_bound)?;
    if !(target_err > 0.0) || !target_err.is_finite() {
        return Err(Error::InvalidTarget(target_err));
    }
    if fourth_bound == 0.0 {
        return Ok(1);
    }
    let root = (fourth_bound / (ERROR_DENOMINATOR * target_err)).powf(0.25);
    let mut n = (root.ceil() as u32).max(1);
    // the fourth root can be off by one ulp either way
    while n > 1 && error_bound(fourth_bound, n - 1) < target_err {
        n -= 1;
    }
    while error_bound(fourth_bound, n) >= target_err {
        n += 1;
    }
    let cap = node_cap();
    if n > cap {
        log::warn!("planned node count {n} exceeds the cap {cap}");
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_integrand() {
        let r = integrate(|_| 1.0, |_| 0.0, 0.0, 10).unwrap();
        assert!((r.value - 0.5).abs() < 1e-15);
        assert_eq!(r.error_bound, 0.0);
        assert_eq!(r.nodes, 10);
    }

    #[test]
    fn quartic_within_certificate() {
        let r = integrate(|x| x.powi(4), |x| 12.0 * x * x, 24.0, 10).unwrap();
        let exact = 1.0 / 160.0;
        assert!((r.error_bound - 24.0 / (61_440.0 * 1e4)).abs() < 1e-20);
        // the certificate is attained for quartics, up to rounding
        let err = (r.value - exact).abs();
        assert!(err <= r.error_bound * (1.0 + 1e-6));
        assert!(err >= r.error_bound * (1.0 - 1e-6));
        assert!(r.error_bound < 3.91e-8);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(integrate(|x| x, |_| 0.0, 0.0, 0), Err(Error::ZeroNodes));
        assert!(matches!(
            integrate(|x| x, |_| 0.0, -1.0, 4),
            Err(Error::InvalidFourthBound(_))
        ));
        assert!(min_steps(1.0, 0.0).is_err());
        assert!(min_steps(-1.0, 1.0).is_err());
    }

    #[test]
    fn cubics_are_exact() {
        for nodes in [1, 2, 7, 50, 333] {
            let r = integrate(
                |x| 2.0 - 3.0 * x + 5.0 * x * x - 7.0 * x * x * x,
                |x| 10.0 - 42.0 * x,
                0.0,
                nodes,
            )
            .unwrap();
            let exact = 2.0 * 0.5 - 1.5 * 0.25 + 5.0 / 24.0 - 7.0 / 64.0;
            assert!((r.value - exact).abs() < 1e-14, "N={nodes}");
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let f = |x: f64| (2.0 * PI * x).sin();
        let f2 = |x: f64| -4.0 * PI * PI * (2.0 * PI * x).sin();
        let exact = 1.0 / PI;
        let err = |n| (integrate(f, f2, 0.0, n).unwrap().value - exact).abs();
        for n in [25, 50, 100] {
            let ratio = err(n) / err(2 * n);
            assert!((14.0..=18.0).contains(&ratio), "N={n}: ratio {ratio}");
        }
    }

    #[test]
    fn min_steps_examples() {
        // N0 = (2.3e10 / (61440 · 0.007))^{1/4} ≈ 85.5
        assert_eq!(min_steps(2.3e10, 0.007).unwrap(), 86);
        assert_eq!(min_steps(7e10, 0.04).unwrap(), 74);
        assert_eq!(min_steps(0.0, 123.0).unwrap(), 1);
        assert_eq!(min_steps(0.0, 1e-300).unwrap(), 1);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s: CompensatedSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(s.total(), 2.0);
    }

    #[test]
    fn guarded_comparison() {
        assert!(guarded_lt(1.0, 1.0 + 1e-6));
        assert!(!guarded_lt(1.0, 1.0 + 1e-12));
        assert!(guarded_lt(-1.0, 0.0));
    }
}
