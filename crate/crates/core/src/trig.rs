//! The trigonometric polynomials `G± = |1 + e(x) ± e((k+2)x)|²`, their
//! x-derivatives, and the integrands `H = G^t log^j G`.
//!
//! Everything here is evaluated from the closed cosine/sine forms in `x`.
//! The Chebyshev forms in `u = cos 2πx` live in [`crate::bounds`].

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value `G` is treated as an exact zero of the integrands.
pub const ZERO_GUARD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Selects `G₊` or `G₋` for a given `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyFamily {
    k: u32,
    sign: Sign,
}

impl PolyFamily {
    pub fn new(k: u32, sign: Sign) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDegree(k));
        }
        Ok(Self { k, sign })
    }

    pub fn plus(k: u32) -> Result<Self> {
        Self::new(k, Sign::Plus)
    }

    pub fn minus(k: u32) -> Result<Self> {
        Self::new(k, Sign::Minus)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The three frequencies `1, k+1, k+2` paired with their signs.
    fn modes(&self) -> [(f64, f64); 3] {
        let s = self.sign.factor();
        let k = f64::from(self.k);
        [(1.0, 1.0), (k + 1.0, s), (k + 2.0, s)]
    }

    /// `G(x) = 3 + 2[cos 2πx ± cos (2k+2)πx ± cos (2k+4)πx]`.
    pub fn g(&self, x: f64) -> f64 {
        let v = 2.0 * PI * x;
        3.0 + 2.0
            * self
                .modes()
                .iter()
                .map(|&(a, c)| c * (a * v).cos())
                .sum::<f64>()
    }

    /// The `m`-th x-derivative of `G` for `m ≤ 4` (m = 0 gives `G`).
    pub fn g_derivative(&self, m: u32, x: f64) -> Result<f64> {
        if m > 4 {
            return Err(Error::UnsupportedDerivative(m));
        }
        Ok(self.derivative_unchecked(m, x))
    }

    fn derivative_unchecked(&self, m: u32, x: f64) -> f64 {
        if m == 0 {
            return self.g(x);
        }
        let v = 2.0 * PI * x;
        let q = (m / 2) as i32;
        let mi = m as i32;
        if m % 2 == 1 {
            // (-4)^{q+1} π^m Σ c a^m sin(a v)
            let pre = (-4.0f64).powi(q + 1) * PI.powi(mi);
            pre * self
                .modes()
                .iter()
                .map(|&(a, c)| c * a.powi(mi) * (a * v).sin())
                .sum::<f64>()
        } else {
            // 2 (-4)^q π^m Σ c a^m cos(a v)
            let pre = 2.0 * (-4.0f64).powi(q) * PI.powi(mi);
            pre * self
                .modes()
                .iter()
                .map(|&(a, c)| c * a.powi(mi) * (a * v).cos())
                .sum::<f64>()
        }
    }

    /// `[G, G', G'', G''', G'''']` at `x`.
    pub fn jet(&self, x: f64) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (m, slot) in out.iter_mut().enumerate() {
            *slot = self.derivative_unchecked(m as u32, x);
        }
        out
    }

    /// `H(x) = G^t log^j G`, continuously extended by 0 at zeros of `G`.
    pub fn h(&self, spec: HSpec, x: f64) -> f64 {
        let v = self.g(x);
        if v < ZERO_GUARD {
            return 0.0;
        }
        v.powf(spec.t) * v.ln().powi(spec.j as i32)
    }

    /// Second x-derivative of `H`:
    ///
    /// `G'' G^{t-1} L^{j-1}(tL + j) + G'² G^{t-2} L^{j-2}(t(t-1)L² + j(2t-1)L + j(j-1))`
    ///
    /// with `L = log G`. Terms whose integer coefficient vanishes are dropped, so
    /// no negative power of `L` is ever formed. Requires `t ≥ 2`; returns 0 where
    /// `G` vanishes.
    pub fn h_second(&self, spec: HSpec, x: f64) -> f64 {
        let v = self.g(x);
        if v < ZERO_GUARD {
            return 0.0;
        }
        let g1 = self.derivative_unchecked(1, x);
        let g2 = self.derivative_unchecked(2, x);
        let (t, j) = (spec.t, spec.j);
        let jf = f64::from(j);
        let l = v.ln();
        let lp = |e: u32| l.powi(e as i32);

        let mut first = t * lp(j);
        let mut second = t * (t - 1.0) * lp(j);
        if j >= 1 {
            first += jf * lp(j - 1);
            second += jf * (2.0 * t - 1.0) * lp(j - 1);
        }
        if j >= 2 {
            second += jf * (jf - 1.0) * lp(j - 2);
        }
        g2 * v.powf(t - 1.0) * first + g1 * g1 * v.powf(t - 2.0) * second
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}(k={})", self.sign, self.k)
    }
}

/// A point of `[0, 1/2]` together with `u = cos 2πx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    pub x: f64,
    pub u: f64,
}

impl EvalPoint {
    pub fn from_x(x: f64) -> Self {
        Self {
            x,
            u: (2.0 * PI * x).cos(),
        }
    }

    /// Inverse of [`EvalPoint::from_x`] on `u ∈ [-1, 1]`.
    pub fn from_u(u: f64) -> Self {
        let u = u.clamp(-1.0, 1.0);
        Self {
            x: u.acos() / (2.0 * PI),
            u,
        }
    }
}

/// Exponent `t` and log power `j` of `H_{t,j} = G^t log^j G`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HSpec {
    pub t: f64,
    pub j: u32,
}

impl HSpec {
    pub fn new(t: f64, j: u32) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidExponent(t));
        }
        Ok(Self { t, j })
    }
}
