//! Upper bounds for `‖H^IV_{t,j,±}‖∞`.
//!
//! Every estimate is a sum of monomials `c · v^a · ℓ^b` in `v = G(x)` and
//! `ℓ = |log v|`, obtained from the general fourth-derivative formula by
//! replacing `|G^{(m)}|` with `M_m`. Three families are used:
//!
//! * large-v: `|G'| ≤ M₁`, valid for all `v` but singular at 0 when `t < 4`;
//! * small-v: `G'² ≤ M* v`, which absorbs the negative powers of `v`;
//! * Λ-form: the small-v estimate with `ℓ^{j-i} ≤ Λ^j`, `Λ = max(ℓ, 1)`, and
//!   `2√v ≤ 1 + v`.

use serde::{Deserialize, Serialize};

use super::power_log::{lambda_power_max, power_log_max};
use super::BoundLedger;
use crate::error::{Error, Result};

/// Cells used for the rigorous maximization over `v ∈ [v_split, 9]`.
pub const LARGE_V_CELLS: usize = 10_000;

const V_MAX: f64 = 9.0;

/// One monomial `coef · v^vpow · ℓ^lpow` with `coef ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub vpow: f64,
    pub lpow: u32,
}

/// `j (j-1) ⋯ (j-r+1)`.
fn falling(j: u32, r: u32) -> f64 {
    (0..r).map(|i| f64::from(j) - f64::from(i)).product()
}

/// Coefficient lists `(weight, log power)` of the four brace groups.
/// Entries with a zero weight are dropped, so no negative log power appears.
fn groups(t: f64, j: u32) -> [Vec<(f64, u32)>; 4] {
    let jf = f64::from(j);
    let raw: [Vec<(f64, i64)>; 4] = [
        vec![
            (falling(j, 4), -4),
            ((4.0 * t - 6.0) * falling(j, 3), -3),
            ((6.0 * t * t - 18.0 * t + 11.0) * falling(j, 2), -2),
            (2.0 * (2.0 * t.powi(3) - 9.0 * t * t + 11.0 * t - 3.0) * jf, -1),
            (t * (t - 1.0) * (t - 2.0) * (t - 3.0), 0),
        ],
        vec![
            (falling(j, 3), -3),
            (3.0 * (t - 1.0) * falling(j, 2), -2),
            ((3.0 * t * t - 6.0 * t + 2.0) * jf, -1),
            (t * (t - 1.0) * (t - 2.0), 0),
        ],
        vec![(jf, -1), (t, 0)],
        vec![
            (falling(j, 2), -2),
            ((2.0 * t - 1.0) * jf, -1),
            (t * (t - 1.0), 0),
        ],
    ];
    raw.map(|g| {
        g.into_iter()
            .filter(|&(w, _)| w != 0.0)
            .map(|(w, off)| (w.abs(), (i64::from(j) + off) as u32))
            .collect()
    })
}

/// Sum of a group's weights, i.e. the group evaluated at `ℓ = 1`.
fn group_sum(g: &[(f64, u32)]) -> f64 {
    g.iter().map(|&(w, _)| w).sum()
}

fn expand(out: &mut Vec<Term>, scale: f64, vpow: f64, group: &[(f64, u32)]) {
    out.extend(group.iter().map(|&(w, lpow)| Term {
        coef: scale * w,
        vpow,
        lpow,
    }));
}

/// Terms of the large-v estimate.
pub fn large_v_terms(m: &[f64; 5], t: f64, j: u32) -> Vec<Term> {
    let [_, m1, m2, m3, m4] = *m;
    let [c1, c2, c3, c4] = groups(t, j);
    let mut out = Vec::new();
    expand(&mut out, m1.powi(4), t - 4.0, &c1);
    expand(&mut out, 6.0 * m1 * m1 * m2, t - 3.0, &c2);
    expand(&mut out, m4, t - 1.0, &c3);
    expand(&mut out, 3.0 * m2 * m2 + 4.0 * m1 * m3, t - 2.0, &c4);
    out
}

/// Terms of the small-v estimate (before the Λ relaxation).
pub fn small_v_terms(m: &[f64; 5], m_star: f64, t: f64, j: u32) -> Vec<Term> {
    let [_, _, m2, m3, m4] = *m;
    let [c1, c2, c3, c4] = groups(t, j);
    let mut out = Vec::new();
    expand(&mut out, m_star * m_star, t - 2.0, &c1);
    expand(&mut out, 6.0 * m_star * m2, t - 2.0, &c2);
    expand(&mut out, 4.0 * m_star.sqrt() * m3, t - 1.5, &c4);
    expand(&mut out, m4, t - 1.0, &c3);
    expand(&mut out, 3.0 * m2 * m2, t - 2.0, &c4);
    out
}

/// Coefficients `(A, B)` of the Λ-form `A v^{t-2} Λ^j + B v^{t-1} Λ^j`.
pub fn lambda_form_coeffs(m: &[f64; 5], m_star: f64, t: f64, j: u32) -> (f64, f64) {
    let [_, _, m2, m3, m4] = *m;
    let [c1, c2, c3, c4] = groups(t, j);
    let s4 = group_sum(&c4);
    let root = m_star.sqrt();
    let a = m_star * m_star * group_sum(&c1)
        + 6.0 * m_star * m2 * group_sum(&c2)
        + 2.0 * root * m3 * s4
        + 3.0 * m2 * m2 * s4;
    let b = 2.0 * root * m3 * s4 + m4 * group_sum(&c3);
    (a, b)
}

/// Rigorous max of `Σ terms` over `v ∈ [lo, hi]` with `ℓ = log v`, `lo ≥ 1`.
///
/// On each cell `[va, vb]` every monomial is bounded by
/// `coef · max(va^a, vb^a) · (log vb)^b`.
pub fn max_over_large_v(terms: &[Term], lo: f64, hi: f64, cells: usize) -> f64 {
    debug_assert!(lo >= 1.0 && hi > lo);
    let h = (hi - lo) / cells as f64;
    (0..cells)
        .map(|i| {
            let va = lo + i as f64 * h;
            let vb = if i + 1 == cells { hi } else { va + h };
            let lb = vb.ln();
            terms
                .iter()
                .map(|tm| {
                    tm.coef * va.powf(tm.vpow).max(vb.powf(tm.vpow)) * lb.powi(tm.lpow as i32)
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Sum of the termwise maxima of `coef · v^a |log v|^b` over `[0, split]`.
pub fn max_over_small_v(terms: &[Term], split: f64) -> f64 {
    terms
        .iter()
        .map(|tm| tm.coef * power_log_max(tm.vpow, tm.lpow, 0.0, split))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmallVForm {
    /// Termwise `v^a ℓ^b` maxima (used for `j ≤ 1`).
    Plain,
    /// `A v^{t-2} Λ^j + B v^{t-1} Λ^j` (used for `j ≥ 2`).
    Lambda,
    /// No small-v region: every `v` power and `ℓ` replaced by its sup.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HivBound {
    pub t: f64,
    pub j: u32,
    pub v_split: f64,
    pub large: f64,
    pub small: f64,
    pub form: SmallVForm,
    /// `max(large, small)`.
    pub value: f64,
}

/// Two-region bound for `k` with a known `M*` (zeros of `G` allowed).
pub fn hiv_bound(t: f64, j: u32, ledger: &BoundLedger) -> Result<HivBound> {
    if !(t >= 3.0) || !t.is_finite() {
        return Err(Error::ExponentTooSmall(t));
    }
    let m_star = ledger.m_star.ok_or(Error::MissingRatioBound(ledger.k))?;
    let (v_split, form) = if j <= 1 {
        (3.0, SmallVForm::Plain)
    } else {
        (std::f64::consts::E, SmallVForm::Lambda)
    };

    let large = max_over_large_v(&large_v_terms(&ledger.m, t, j), v_split, V_MAX, LARGE_V_CELLS);
    let small = match form {
        SmallVForm::Plain => max_over_small_v(&small_v_terms(&ledger.m, m_star, t, j), v_split),
        _ => {
            let (a, b) = lambda_form_coeffs(&ledger.m, m_star, t, j);
            a * lambda_power_max(t - 2.0, j, v_split) + b * lambda_power_max(t - 1.0, j, v_split)
        }
    };
    Ok(HivBound {
        t,
        j,
        v_split,
        large,
        small,
        form,
        value: large.max(small),
    })
}

/// Large-v estimate with `ℓ → ell_max` and each `v^a` replaced by its max
/// over `[g_min, 9]`. Needs `G` bounded away from zero.
pub fn plain_substitution_bound(t: f64, j: u32, ledger: &BoundLedger) -> Result<HivBound> {
    let g_min = ledger.g_min();
    if !(g_min > 0.0) {
        return Err(Error::NonPositiveMinimum(ledger.k));
    }
    let ell = ledger.ell_max.ok_or(Error::NonPositiveMinimum(ledger.k))?;
    let value = large_v_terms(&ledger.m, t, j)
        .iter()
        .map(|tm| {
            let vmax = match tm.vpow.partial_cmp(&0.0) {
                Some(std::cmp::Ordering::Greater) => V_MAX.powf(tm.vpow),
                Some(std::cmp::Ordering::Less) => g_min.powf(tm.vpow),
                _ => 1.0,
            };
            tm.coef * vmax * ell.powi(tm.lpow as i32)
        })
        .sum();
    Ok(HivBound {
        t,
        j,
        v_split: g_min,
        large: value,
        small: 0.0,
        form: SmallVForm::None,
        value,
    })
}

/// The `k = 4` path: plain substitution for `t ∈ [4, 5]`.
pub fn hiv_bound_k4(t: f64, j: u32, ledger: &BoundLedger) -> Result<HivBound> {
    if !(4.0..=5.0).contains(&t) {
        return Err(Error::ExponentOutOfRange(t, 4.0, 5.0));
    }
    plain_substitution_bound(t, j, ledger)
}

/// Two-region bound when `M*` is known, plain substitution otherwise.
pub fn fourth_derivative_bound(t: f64, j: u32, ledger: &BoundLedger) -> Result<HivBound> {
    if ledger.m_star.is_some() {
        hiv_bound(t, j, ledger)
    } else {
        plain_substitution_bound(t, j, ledger)
    }
}
