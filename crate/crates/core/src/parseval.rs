//! Exact power integrals `∫₀^{1/2} G^ρ` for integer `ρ ≤ k+1`.
//!
//! For such `ρ` the exponents `μ(k+2) + λ` of `F^ρ = (1 + e₁ ± e_{k+2})^ρ`
//! never collide, so `F^ρ` has coefficients
//! `a(ν) = (±1)^μ C(ρ, μ) C(ρ-μ, λ)` with `ν = μ(k+2) + λ`, and
//! `∫₀^{1/2} G^ρ = ½ Σ a(ν)²`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bounds::{fourth_derivative_bound, BoundLedger};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadResult};
use crate::trig::{HSpec, PolyFamily, Sign};

/// Node count for the quadrature cross-check.
pub const CROSS_CHECK_NODES: u32 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffVector {
    pub rho: u32,
    /// `coeffs[ν]` for `ν = 0..=ρ(k+2)`.
    pub coeffs: Vec<i64>,
}

fn binomial(n: u32, r: u32) -> i64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn check_rho(fam: PolyFamily, rho: u32) -> Result<()> {
    let max = fam.k() + 1;
    if rho == 0 || rho > max {
        return Err(Error::RhoOutOfRange { rho, max });
    }
    Ok(())
}

/// Integer coefficients of `F±^ρ`.
pub fn fourier_coeffs(fam: PolyFamily, rho: u32) -> Result<CoeffVector> {
    check_rho(fam, rho)?;
    let period = fam.k() + 2;
    let coeffs = (0..=rho * period)
        .map(|nu| {
            let (mu, lambda) = (nu / period, nu % period);
            let sign = if fam.sign() == Sign::Minus && mu % 2 == 1 { -1 } else { 1 };
            sign * binomial(rho, mu) * binomial(rho.saturating_sub(mu), lambda)
        })
        .collect();
    Ok(CoeffVector { rho, coeffs })
}

/// `∫₀^{1/2} G±^ρ = ½ Σ a(ν)²` as an exact rational.
pub fn power_integral(fam: PolyFamily, rho: u32) -> Result<Ratio<i64>> {
    let c = fourier_coeffs(fam, rho)?;
    let sum: i64 = c.coeffs.iter().map(|a| a * a).sum();
    Ok(Ratio::new(sum, 2))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointRow {
    pub rho: u32,
    pub exact_plus: Ratio<i64>,
    pub exact_minus: Ratio<i64>,
    pub equal: bool,
    pub quad_plus: QuadResult,
    pub quad_minus: QuadResult,
    /// Both quadratures contain the exact value within their certificates.
    pub cross_check: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointCheck {
    pub k: u32,
    pub rows: Vec<EndpointRow>,
    pub passed: bool,
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `d(k) = d(k+1) = 0`: exact equality of the power integrals, plus a
/// quadrature cross-check of each against its certified error.
pub fn endpoint_check(ledger: &BoundLedger) -> Result<EndpointCheck> {
    let k = ledger.k;
    let plus = PolyFamily::plus(k)?;
    let minus = PolyFamily::minus(k)?;
    let mut rows = Vec::new();
    for rho in [k, k + 1] {
        let exact_plus = power_integral(plus, rho)?;
        let exact_minus = power_integral(minus, rho)?;
        let spec = HSpec::new(f64::from(rho), 0)?;
        let fourth = fourth_derivative_bound(spec.t, 0, ledger)?.value;
        let quad = |fam: PolyFamily| {
            integrate(|x| fam.h(spec, x), |x| fam.h_second(spec, x), fourth, CROSS_CHECK_NODES)
        };
        let quad_plus = quad(plus)?;
        let quad_minus = quad(minus)?;
        let cross_check = quad_plus.contains(ratio_to_f64(exact_plus))
            && quad_minus.contains(ratio_to_f64(exact_minus));
        rows.push(EndpointRow {
            rho,
            exact_plus,
            exact_minus,
            equal: exact_plus == exact_minus,
            quad_plus,
            quad_minus,
            cross_check,
        });
    }
    let passed = rows.iter().all(|r| r.equal && r.cross_check);
    Ok(EndpointCheck { k, rows, passed })
}
