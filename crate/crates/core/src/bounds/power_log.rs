//! Maxima of `α(v) = v^s |log v|^m` on intervals of `[0, ∞)`.
//!
//! `α` vanishes at 0 and 1, increases on `[0, v₀]` and `[1, ∞)` and decreases
//! on `[v₀, 1]`, where `v₀ = e^{-m/s}` and `α(v₀) = (m / (e s))^m`.

use std::f64::consts::E;
use std::sync::OnceLock;

fn alpha(s: f64, m: u32, v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    v.powf(s) * v.ln().abs().powi(m as i32)
}

/// `max_{[a,b]} v^s |log v|^m` for `0 ≤ a ≤ b`, `s > 0`.
pub fn power_log_max(s: f64, m: u32, a: f64, b: f64) -> f64 {
    debug_assert!(s > 0.0 && 0.0 <= a && a <= b);
    if m == 0 {
        return b.powf(s);
    }
    let v0 = (-(f64::from(m)) / s).exp();
    let peak = (f64::from(m) / (E * s)).powi(m as i32);
    if b <= v0 {
        alpha(s, m, b)
    } else if a <= v0 {
        if b <= 1.0 {
            peak
        } else {
            peak.max(alpha(s, m, b))
        }
    } else if a < 1.0 {
        if b <= 1.0 {
            alpha(s, m, a)
        } else {
            alpha(s, m, a).max(alpha(s, m, b))
        }
    } else {
        alpha(s, m, b)
    }
}

/// `α*_{s,m} = max_{[0, v_max]} v^s |log v|^m`.
pub fn alpha_star(s: f64, m: u32, v_max: f64) -> f64 {
    power_log_max(s, m, 0.0, v_max)
}

/// `max_{[0, b]} v^s Λ(v)^m` with `Λ = max(|log v|, 1)`.
pub fn lambda_power_max(s: f64, m: u32, b: f64) -> f64 {
    let inv_e = 1.0 / E;
    let mut best = power_log_max(s, m, 0.0, b.min(inv_e));
    if b > inv_e {
        best = best.max(b.min(E).powf(s));
    }
    if b > E {
        best = best.max(power_log_max(s, m, E, b));
    }
    best
}

/// Unique root of `σ 9^σ = 1/(e log 9)` (≈ 0.126).
pub fn sigma_zero() -> f64 {
    static SIGMA: OnceLock<f64> = OnceLock::new();
    *SIGMA.get_or_init(|| {
        let target = 1.0 / (E * 9f64.ln());
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * 9f64.powf(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    })
}

/// Whether `α*_{s,m}` on `[0, 9]` is attained at the endpoint 9, i.e. `m/s ≤ 1/σ₀`.
pub fn endpoint_dominates(s: f64, m: u32) -> bool {
    f64::from(m) / s <= 1.0 / sigma_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_max(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        (0..=n)
            .map(|i| f(a + (b - a) * i as f64 / n as f64))
            .fold(0.0, f64::max)
    }

    #[test]
    fn sigma_zero_value() {
        let s = sigma_zero();
        assert!((0.126..0.127).contains(&s), "{s}");
        assert!((s * 9f64.powf(s) - 1.0 / (E * 9f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn alpha_star_examples() {
        assert_eq!(alpha_star(1.0, 0, 9.0), 9.0);
        let expect = 9f64.powi(4) * 9f64.ln().powi(10);
        assert!((alpha_star(4.0, 10, 9.0) - expect).abs() < 1e-12 * expect);
        assert!(endpoint_dominates(4.0, 10));

        let expect = (3.0 / (0.1 * E)).powi(3);
        let got = alpha_star(0.1, 3, 9.0);
        assert!((got - expect).abs() < 1e-12 * expect);
        assert!(!endpoint_dominates(0.1, 3));
        // independent dense search, refined around the critical point
        let v0 = (-30.0f64).exp();
        let dense = grid_max(|v| v.powf(0.1) * v.ln().abs().powi(3), 0.5 * v0, 2.0 * v0, 200_000);
        assert!((dense - got).abs() < 1e-9 * got, "{dense} vs {got}");
    }

    #[test]
    fn case_table_matches_dense_search() {
        let cases = [
            (0.5, 2, 0.0, 0.01),
            (0.5, 2, 0.0, 0.5),
            (0.5, 2, 0.0, 3.0),
            (0.5, 2, 0.1, 0.9),
            (1.5, 3, 0.2, 5.0),
            (2.0, 1, 1.5, 9.0),
            (3.0, 5, 0.0, 9.0),
            (1.0, 7, 0.0, 1.0),
        ];
        for (s, m, a, b) in cases {
            let dense = grid_max(|v| alpha(s, m, v), a, b, 400_000);
            let got = power_log_max(s, m, a, b);
            assert!(got >= dense * (1.0 - 1e-12), "{s} {m} [{a},{b}]");
            assert!(got <= dense * (1.0 + 1e-6), "{s} {m} [{a},{b}]: {got} vs {dense}");
        }
    }

    #[test]
    fn lambda_max_matches_dense_search() {
        for &(s, m, b) in &[(1.5, 10, E), (1.0, 2, E), (2.5, 14, E), (1.0, 1, 3.0), (0.5, 4, 9.0)] {
            let lam = |v: f64| if v <= 0.0 { 0.0 } else { v.powf(s) * v.ln().abs().max(1.0).powi(m as i32) };
            let dense = grid_max(lam, 0.0, b, 400_000);
            let got = lambda_power_max(s, m, b);
            assert!(got >= dense * (1.0 - 1e-12) && got <= dense * (1.0 + 1e-5), "{s} {m} {b}");
        }
        let expect = (20.0 / (3.0 * E)).powi(10);
        assert!((lambda_power_max(1.5, 10, E) - expect).abs() < 1e-12 * expect);
    }

    proptest::proptest! {
        #[test]
        fn alpha_star_dominates_samples(s in 0.05f64..6.0, m in 0u32..16, v_max in 0.1f64..9.0, frac in 0.0f64..=1.0) {
            let v = frac * v_max;
            let bound = alpha_star(s, m, v_max);
            proptest::prop_assert!(alpha(s, m, v) <= bound * (1.0 + 1e-12) + 1e-12);
        }
    }
}
