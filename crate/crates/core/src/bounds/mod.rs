//! Sup-norm ledgers: `M_m`, `M*`, `min G`, power-log maxima and the
//! fourth-derivative bounds feeding the quadrature budgets.

pub mod fourth;
pub mod poly;
pub mod power_log;
pub mod ratio;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::trig::PolyFamily;

pub use fourth::{fourth_derivative_bound, hiv_bound, hiv_bound_k4, plain_substitution_bound, HivBound};
pub use power_log::{alpha_star, sigma_zero};
pub use ratio::{g_min, ratio_bound, GMinBound, RatioBound};

/// `[M₀, …, M₄]` with `M₀ = 9`, `M_m = 2^{m+1} π^m (1 + (k+1)^m + (k+2)^m)`.
pub fn deriv_sup_bounds(k: u32) -> [f64; 5] {
    let mut out = [9.0; 5];
    let (a, b) = (f64::from(k) + 1.0, f64::from(k) + 2.0);
    for (m, slot) in out.iter_mut().enumerate().skip(1) {
        let mi = m as i32;
        *slot = 2f64.powi(mi + 1) * PI.powi(mi) * (1.0 + a.powi(mi) + b.powi(mi));
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LedgerOptions {
    /// Published cap on `ℓ = |log G|`; the derived value must not exceed it.
    pub ell_cap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundLedger {
    pub k: u32,
    pub m: [f64; 5],
    /// `sup G'²/G`, set only when some `G±` vanishes.
    pub m_star: Option<f64>,
    pub g_min_plus: f64,
    pub g_min_minus: f64,
    /// Bound on `|log G|`, set only when both minima are positive.
    pub ell_max: Option<f64>,
    /// `max(|log g_min|, log 9)` before any cap is applied.
    pub ell_derived: Option<f64>,
    pub ratio_plus: Option<RatioBound>,
    pub ratio_minus: Option<RatioBound>,
    pub g_min_plus_detail: GMinBound,
    pub g_min_minus_detail: GMinBound,
}

impl BoundLedger {
    pub fn new(k: u32) -> Result<Self> {
        Self::with_options(k, LedgerOptions::default())
    }

    pub fn with_options(k: u32, opts: LedgerOptions) -> Result<Self> {
        let plus = PolyFamily::plus(k)?;
        let minus = PolyFamily::minus(k)?;
        let gp = g_min(plus);
        let gm = g_min(minus);

        let ratio_plus = ratio_bound(plus).ok();
        let ratio_minus = ratio_bound(minus).ok();
        let m_star = if gp.certified == 0.0 || gm.certified == 0.0 {
            match (&ratio_plus, &ratio_minus) {
                (Some(p), Some(m)) => Some(p.reported.max(m.reported)),
                _ => None,
            }
        } else {
            None
        };

        let lowest = gp.certified.min(gm.certified);
        let ell_derived = (lowest > 0.0).then(|| lowest.ln().abs().max(9f64.ln()));
        let ell_max = match (ell_derived, opts.ell_cap) {
            (Some(d), Some(cap)) if d > cap => {
                return Err(Error::LogBoundExceeded { derived: d, cap })
            }
            (Some(_), Some(cap)) => Some(cap),
            (d, _) => d,
        };

        Ok(Self {
            k,
            m: deriv_sup_bounds(k),
            m_star,
            g_min_plus: gp.certified,
            g_min_minus: gm.certified,
            ell_max,
            ell_derived,
            ratio_plus,
            ratio_minus,
            g_min_plus_detail: gp,
            g_min_minus_detail: gm,
        })
    }

    /// Lower bound for `min(G₊, G₋)`.
    pub fn g_min(&self) -> f64 {
        self.g_min_plus.min(self.g_min_minus)
    }
}
