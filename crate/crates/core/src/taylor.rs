//! Derivatives of `d(t) = ∫₀^{1/2} (G₋^t − G₊^t)`, certified positivity at
//! the left endpoint, and Taylor models of a high derivative of `d` with
//! explicit coefficient and remainder budgets.
//!
//! A model of `d^{(r)}` around `t₀` stores approximations `d̄_j` of
//! `d^{(j+r)}(t₀)` such that
//!
//! ```text
//! |d^{(j+r)}(t₀) − d̄_j| · radius^j / j! < δ_j        (j = 0..n)
//! |R_n| ≤ sup_ξ ‖H_{ξ, n+r+1}‖∞ · radius^{n+1} / (n+1)!  < δ_{n+1}
//! ```
//!
//! so `|d^{(r)} − P_n| < Σ δ_j ≤ δ` on `[t₀ − radius, t₀ + radius]`.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::bounds::power_log::sigma_zero;
use crate::bounds::{fourth_derivative_bound, BoundLedger};
use crate::error::{Error, Result};
use crate::quadrature::{guarded_lt, integrate, min_steps, node_cap, QuadResult};
use crate::trig::{HSpec, PolyFamily};

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeValue {
    pub t: f64,
    pub j: u32,
    /// `Q(H₋) − Q(H₊)`.
    pub value: f64,
    /// Sum of the two quadrature certificates.
    pub err: f64,
    pub fourth_bound: f64,
    pub minus: QuadResult,
    pub plus: QuadResult,
}

/// `d^{(j)}(t)` by quadrature with `nodes` nodes on each integrand.
pub fn d_derivative(ledger: &BoundLedger, t: f64, j: u32, nodes: u32) -> Result<DerivativeValue> {
    let spec = HSpec::new(t, j)?;
    let fourth = fourth_derivative_bound(t, j, ledger)?.value;
    let quad = |fam: PolyFamily| {
        integrate(|x| fam.h(spec, x), |x| fam.h_second(spec, x), fourth, nodes)
    };
    let minus = quad(PolyFamily::minus(ledger.k)?)?;
    let plus = quad(PolyFamily::plus(ledger.k)?)?;
    Ok(DerivativeValue {
        t,
        j,
        value: minus.value - plus.value,
        err: minus.error_bound + plus.error_bound,
        fourth_bound: fourth,
        minus,
        plus,
    })
}

/// Uncertified `d(t)` from a plain high-order evaluation (spot checks only).
pub fn d_value(k: u32, t: f64, nodes: u32) -> Result<f64> {
    let spec = HSpec::new(t, 0)?;
    let q = |fam: PolyFamily| {
        integrate(|x| fam.h(spec, x), |x| fam.h_second(spec, x), 0.0, nodes).map(|r| r.value)
    };
    Ok(q(PolyFamily::minus(k)?)? - q(PolyFamily::plus(k)?)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityStep {
    pub t: f64,
    pub j: u32,
    pub delta: f64,
    pub fourth_bound: f64,
    /// Least node count meeting `delta` for each integrand.
    pub planned_nodes: u32,
    pub nodes: u32,
    pub value: f64,
    pub err: f64,
    /// `value − 2δ`.
    pub margin: f64,
    pub passed: bool,
}

/// Certify `d^{(j)}(t) > 0` from `Q − 2δ > 0`, each quadrature within `δ`.
///
/// Uses `max(planned, nodes_hint)` nodes, capped at the node cap.
pub fn positivity_lemma(
    ledger: &BoundLedger,
    t: f64,
    j: u32,
    delta: f64,
    nodes_hint: u32,
) -> Result<PositivityStep> {
    if !(delta > 0.0) {
        return Err(Error::Config(format!("positivity budget must be positive, got {delta}")));
    }
    let fourth = fourth_derivative_bound(t, j, ledger)?.value;
    let planned = min_steps(fourth, delta)?;
    let cap = node_cap();
    let nodes = planned.max(nodes_hint).min(cap);
    let dv = d_derivative(ledger, t, j, nodes)?;
    let within = dv.minus.error_bound < delta && dv.plus.error_bound < delta;
    let margin = dv.value - 2.0 * delta;
    Ok(PositivityStep {
        t,
        j,
        delta,
        fourth_bound: fourth,
        planned_nodes: planned,
        nodes,
        value: dv.value,
        err: dv.err,
        margin,
        passed: within && guarded_lt(2.0 * delta, dv.value),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemainderBound {
    /// Log power `m = n + r + 1` of the remainder integrand.
    pub m: u32,
    pub xi_min: f64,
    pub xi_max: f64,
    /// Bound on `‖H_{ξ,m,±}‖∞` over the `ξ` range.
    pub sup: f64,
    pub value: f64,
}

/// Lagrange remainder of the order-`n` model of `d^{(r)}` around `t0`.
///
/// `‖H_{ξ,m}‖∞ ≤ max((m/(eξ))^m, 9^ξ log^m 9)`; the first branch decreases and
/// the second increases in `ξ`. Requires the endpoint branch to dominate for
/// every `ξ` in range, i.e. `m / ξ_min ≤ 1/σ₀`.
pub fn remainder_bound(r: u32, t0: f64, radius: f64, n: u32) -> Result<RemainderBound> {
    let m = n + r + 1;
    let (xi_min, xi_max) = (t0 - radius, t0 + radius);
    let limit = 1.0 / sigma_zero();
    if f64::from(m) / xi_min > limit {
        return Err(Error::OutsideValidityWindow { m, xi_min, limit });
    }
    let mf = f64::from(m);
    let peak = (mf / (E * xi_min)).powi(m as i32);
    let endpoint = 9f64.powf(xi_max) * 9f64.ln().powi(m as i32);
    let sup = peak.max(endpoint);
    Ok(RemainderBound {
        m,
        xi_min,
        xi_max,
        sup,
        value: sup * radius.powi(n as i32 + 1) / factorial(n + 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailKind {
    /// Top derivative `p^{(n)} = d̄_n` is a negative constant.
    ConstantNegative,
    /// `p^{(n-2)}` is a parabola with negative leading term and discriminant.
    ParabolaNegativeDefinite,
}

/// Configuration of one Taylor model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub k: u32,
    /// Derivative of `d` being modelled.
    pub order: u32,
    pub t0: f64,
    pub radius: f64,
    pub degree: u32,
    /// `δ_0..δ_n`.
    pub budgets: Vec<f64>,
    /// `δ_{n+1}`, the remainder allowance.
    pub remainder_budget: f64,
    /// Total `δ` added to `P_n` in the sign chain.
    pub total: f64,
    /// Nodes used for every `d̄_j`.
    pub nodes: u32,
    pub interval: (f64, f64),
    pub tail: TailKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub j: u32,
    pub fourth_bound: f64,
    /// Allowed quadrature error per integrand, `δ_j j! / (2 radius^j)`.
    pub eta: f64,
    pub planned_nodes: u32,
    pub nodes: u32,
    pub value: f64,
    pub err: f64,
    /// `err · radius^j / j!`, to be compared with `δ_j`.
    pub scaled_err: f64,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorModel {
    pub spec: ModelSpec,
    /// `d̄_0..d̄_n`.
    pub coeffs: Vec<f64>,
    pub records: Vec<CoefficientRecord>,
    pub remainder: RemainderBound,
    /// `Σ δ_j + δ_{n+1}` with the configured remainder allowance.
    pub nominal_budget: f64,
    /// `Σ δ_j + R`, with the computed remainder bound `R`.
    pub effective_budget: f64,
}

impl TaylorModel {
    /// `P_n^{(i)}(t) = Σ_{j≥i} d̄_j (t−t₀)^{j−i} / (j−i)!`, Horner in the shift.
    pub fn derivative_at(&self, t: f64, i: usize) -> f64 {
        let s = t - self.spec.t0;
        let n = self.coeffs.len();
        if i >= n {
            return 0.0;
        }
        let mut acc = 0.0;
        for j in (i..n).rev() {
            acc = acc * s / (j - i + 1) as f64 + self.coeffs[j];
        }
        acc
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.derivative_at(t, 0)
    }

    /// `p^{(i)}(t)` for `p = P_n + δ`.
    pub fn p_derivative(&self, t: f64, i: usize) -> f64 {
        self.derivative_at(t, i) + if i == 0 { self.spec.total } else { 0.0 }
    }

    pub fn range(&self) -> (f64, f64) {
        (self.spec.t0 - self.spec.radius, self.spec.t0 + self.spec.radius)
    }
}

/// Plan node counts, compute `d̄_j` and the remainder, and check the budgets.
pub fn build_taylor_model(ledger: &BoundLedger, spec: &ModelSpec) -> Result<TaylorModel> {
    let n = spec.degree as usize;
    if spec.budgets.len() != n + 1 {
        return Err(Error::Config(format!(
            "model at t0 = {} expects {} budgets, got {}",
            spec.t0,
            n + 1,
            spec.budgets.len()
        )));
    }
    if spec.budgets.iter().chain([&spec.remainder_budget]).any(|&d| !(d > 0.0)) {
        return Err(Error::Config("budgets must be positive".into()));
    }
    if ledger.k != spec.k {
        return Err(Error::Config(format!("ledger for k = {} used with k = {}", ledger.k, spec.k)));
    }

    let remainder = remainder_bound(spec.order, spec.t0, spec.radius, spec.degree)?;
    if !guarded_lt(remainder.value, spec.remainder_budget) {
        return Err(Error::Budget(format!(
            "remainder {} is not below its allowance {}",
            remainder.value, spec.remainder_budget
        )));
    }
    let coeff_sum: f64 = spec.budgets.iter().sum();
    let nominal_budget = coeff_sum + spec.remainder_budget;
    let effective_budget = coeff_sum + remainder.value;
    if !guarded_lt(effective_budget, spec.total) {
        return Err(Error::Budget(format!(
            "coefficient budgets {coeff_sum} plus remainder {} reach the total {}",
            remainder.value, spec.total
        )));
    }

    let cap = node_cap();
    let mut records = Vec::with_capacity(n + 1);
    for (j, &budget) in spec.budgets.iter().enumerate() {
        let ju = j as u32;
        let order = ju + spec.order;
        let scale = spec.radius.powi(ju as i32) / factorial(ju);
        let eta = budget / (2.0 * scale);
        let fourth = fourth_derivative_bound(spec.t0, order, ledger)?.value;
        let planned = min_steps(fourth, eta)?;
        if planned > cap {
            return Err(Error::NodeCapExceeded { j, planned, cap });
        }
        if spec.nodes < planned {
            return Err(Error::TooFewNodes { j, nodes: spec.nodes, planned });
        }
        let dv = d_derivative(ledger, spec.t0, order, spec.nodes)?;
        let scaled_err = dv.err * scale;
        if !guarded_lt(scaled_err, budget) {
            return Err(Error::Budget(format!(
                "coefficient {j}: scaled error {scaled_err} not below {budget}"
            )));
        }
        records.push(CoefficientRecord {
            j: ju,
            fourth_bound: fourth,
            eta,
            planned_nodes: planned,
            nodes: spec.nodes,
            value: dv.value,
            err: dv.err,
            scaled_err,
            budget,
        });
    }

    Ok(TaylorModel {
        spec: spec.clone(),
        coeffs: records.iter().map(|r| r.value).collect(),
        records,
        remainder,
        nominal_budget,
        effective_budget,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignChainCertificate {
    pub a: f64,
    pub b: f64,
    /// `p^{(j)}(a)` for `j = 0..=n`; the first `checked` are certified negative.
    pub values: Vec<f64>,
    pub checked: usize,
    pub tail: TailKind,
    pub discriminant: Option<f64>,
    /// Largest `p` over a dense sample of `[a, b]` (a sanity check).
    pub sampled_max: f64,
}

/// Certify `P_n + δ < 0` on `[a, b]`: all low derivatives negative at `a`
/// and a tail derivative negative on the whole line.
pub fn certify_negative(model: &TaylorModel, a: f64, b: f64) -> Result<SignChainCertificate> {
    let (lo, hi) = model.range();
    let tol = 1e-12;
    if a < lo - tol || b > hi + tol || a > b {
        return Err(Error::IntervalOutsideModel { a, b, lo, hi });
    }
    let n = model.coeffs.len() - 1;
    let values: Vec<f64> = (0..=n).map(|i| model.p_derivative(a, i)).collect();
    let tail = model.spec.tail;
    let checked = match tail {
        TailKind::ConstantNegative => n,
        TailKind::ParabolaNegativeDefinite => {
            if n < 2 {
                return Err(Error::Config("parabola tail needs degree at least 2".into()));
            }
            n - 2
        }
    };
    for (j, &v) in values.iter().enumerate().take(checked) {
        if !guarded_lt(v, 0.0) {
            return Err(Error::SignChainFailed { j, value: v });
        }
    }
    let d = &model.coeffs;
    let discriminant = match tail {
        TailKind::ConstantNegative => {
            if !guarded_lt(d[n], 0.0) {
                return Err(Error::SignChainFailed { j: n, value: d[n] });
            }
            None
        }
        TailKind::ParabolaNegativeDefinite => {
            let delta = d[n - 1] * d[n - 1] - 2.0 * d[n - 2] * d[n];
            if !guarded_lt(d[n], 0.0) {
                return Err(Error::SignChainFailed { j: n, value: d[n] });
            }
            if !guarded_lt(delta, 0.0) {
                return Err(Error::SignChainFailed { j: n - 2, value: delta });
            }
            Some(delta)
        }
    };
    let samples = 10_000;
    let sampled_max = (0..=samples)
        .map(|i| model.p_derivative(a + (b - a) * i as f64 / samples as f64, 0))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(SignChainCertificate {
        a,
        b,
        values,
        checked,
        tail,
        discriminant,
        sampled_max,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conclusion {
    pub a: f64,
    pub b: f64,
    /// Order `r` of the derivative certified negative on `[a, b]`.
    pub negative_order: u32,
    pub endpoints_vanish: bool,
    /// Orders `i` with `d^{(i)}(a) > 0` certified.
    pub positive_orders: Vec<u32>,
    /// The negativity certificates cover `[a, b]`.
    pub covered: bool,
    pub passed: bool,
}

/// The cap-shape argument: from `d(a) = d(b) = 0`, `d^{(i)}(a) > 0` for
/// `i = 1..r−2` and `d^{(r)} < 0` on `[a, b]`, conclude `d > 0` on `(a, b)`.
///
/// `d^{(r-2)}` is concave, positive at `a`, and negative somewhere (Rolle
/// applied down the chain), so it changes sign exactly once. Going down one
/// order at a time, each `d^{(i)}` with `d^{(i)}(a) > 0` then increases and
/// decreases once, hence also changes sign exactly once; at `i = 0` this
/// makes `d` a cap vanishing at both ends.
pub fn concluding_lemma(
    a: f64,
    b: f64,
    negative_order: u32,
    endpoints_vanish: bool,
    positive_orders: &[u32],
    negative_pieces: &[(f64, f64)],
) -> Conclusion {
    let needed: Vec<u32> = (1..negative_order.saturating_sub(1)).collect();
    let has_all = needed.iter().all(|i| positive_orders.contains(i));

    let mut pieces = negative_pieces.to_vec();
    pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut reach = a;
    let mut covered = !pieces.is_empty();
    for &(lo, hi) in &pieces {
        if lo > reach + 1e-12 {
            covered = false;
            break;
        }
        reach = reach.max(hi);
    }
    covered &= reach >= b - 1e-12;

    Conclusion {
        a,
        b,
        negative_order,
        endpoints_vanish,
        positive_orders: positive_orders.to_vec(),
        covered,
        passed: endpoints_vanish && has_all && covered && negative_order >= 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_model(coeffs: Vec<f64>, total: f64, tail: TailKind) -> TaylorModel {
        let n = coeffs.len() as u32 - 1;
        TaylorModel {
            spec: ModelSpec {
                k: 3,
                order: 4,
                t0: 3.5,
                radius: 0.5,
                degree: n,
                budgets: vec![0.0; coeffs.len()],
                remainder_budget: 0.0,
                total,
                nodes: 500,
                interval: (3.0, 4.0),
                tail,
            },
            coeffs,
            records: vec![],
            remainder: RemainderBound { m: 0, xi_min: 3.0, xi_max: 4.0, sup: 0.0, value: 0.0 },
            nominal_budget: 0.0,
            effective_budget: 0.0,
        }
    }

    #[test]
    fn remainder_examples() {
        let r = remainder_bound(4, 3.5, 0.5, 10).unwrap();
        assert_eq!(r.m, 15);
        assert!(r.value < 0.011 && r.value > 0.0107, "{}", r.value);
        let r = remainder_bound(5, 4.25, 0.25, 7).unwrap();
        assert!(r.value < 0.21 && r.value > 0.2, "{}", r.value);
        let r = remainder_bound(5, 4.75, 0.25, 6).unwrap();
        assert!(r.value < 9.1 && r.value > 9.0, "{}", r.value);
        // largest admissible degree around 3.5 is 18
        assert!(remainder_bound(4, 3.5, 0.5, 18).is_ok());
        assert!(matches!(
            remainder_bound(4, 3.5, 0.5, 19),
            Err(Error::OutsideValidityWindow { m: 24, .. })
        ));
    }

    #[test]
    fn taylor_self_consistency() {
        let m = toy_model(vec![-1.0, 2.0, -3.0, 4.0], 0.0, TailKind::ConstantNegative);
        assert_eq!(m.eval(3.5), -1.0);
        for i in 0..4 {
            assert_eq!(m.derivative_at(3.5, i), m.coeffs[i]);
        }
        // P(t) = -1 + 2s - 1.5 s² + (2/3) s³
        let s: f64 = 0.3;
        let direct = -1.0 + 2.0 * s - 1.5 * s * s + 4.0 / 6.0 * s.powi(3);
        assert!((m.eval(3.5 + s) - direct).abs() < 1e-15);
        assert!((m.derivative_at(3.5 + s, 1) - (2.0 - 3.0 * s + 2.0 * s * s)).abs() < 1e-15);
    }

    #[test]
    fn sign_chain_constant_and_parabola() {
        let m = toy_model(vec![-1.0, -1.0, -1.0], 0.5, TailKind::ConstantNegative);
        let c = certify_negative(&m, 3.0, 4.0).unwrap();
        assert_eq!(c.checked, 2);
        assert!(c.sampled_max < 0.0);

        let bad = toy_model(vec![-1.0, -1.0, -1.0], 2.0, TailKind::ConstantNegative);
        assert!(matches!(certify_negative(&bad, 3.0, 4.0), Err(Error::SignChainFailed { j: 0, .. })));

        // p'' = -2 - s - s²: discriminant 1 - 8 < 0
        let m = toy_model(vec![-1.0, -1.0, -2.0, -1.0, -2.0], 0.1, TailKind::ParabolaNegativeDefinite);
        let c = certify_negative(&m, 3.0, 4.0).unwrap();
        assert_eq!(c.discriminant, Some(1.0 - 8.0));

        assert!(matches!(
            certify_negative(&m, 2.9, 4.0),
            Err(Error::IntervalOutsideModel { .. })
        ));
    }

    #[test]
    fn concluding_lemma_rules() {
        let ok = concluding_lemma(3.0, 4.0, 4, true, &[1, 2], &[(3.0, 4.0)]);
        assert!(ok.passed);
        let split = concluding_lemma(4.0, 5.0, 5, true, &[1, 2, 3], &[(4.5, 5.0), (4.0, 4.5)]);
        assert!(split.passed);
        assert!(!concluding_lemma(4.0, 5.0, 5, true, &[1, 3], &[(4.0, 5.0)]).passed);
        assert!(!concluding_lemma(4.0, 5.0, 5, true, &[1, 2, 3], &[(4.0, 4.4), (4.5, 5.0)]).passed);
        assert!(!concluding_lemma(3.0, 4.0, 4, false, &[1, 2], &[(3.0, 4.0)]).passed);
    }

    proptest::proptest! {
        #[test]
        fn certification_is_monotone_in_delta(
            c0 in -5.0f64..-0.1, c1 in -5.0f64..-0.1, c2 in -5.0f64..-0.1,
            delta in 0.0f64..0.1, shrink in 0.0f64..1.0,
        ) {
            let m = toy_model(vec![c0, c1, c2], delta, TailKind::ConstantNegative);
            if certify_negative(&m, 3.0, 4.0).is_ok() {
                let smaller = toy_model(vec![c0, c1, c2], delta * shrink, TailKind::ConstantNegative);
                proptest::prop_assert!(certify_negative(&smaller, 3.0, 4.0).is_ok());
            }
        }
    }
}
