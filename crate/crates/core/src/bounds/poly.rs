//! Dense real polynomials in the monomial basis, plus Chebyshev `T_m`, `U_m`.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    /// Ascending: `coeffs[i]` multiplies `u^i`.
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// The identity `u`.
    pub fn identity() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(0.0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    /// Upper bound for `sup |p|` on `[-1, 1]`.
    pub fn sup_bound_unit(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Long division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree();
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if self.degree() < dd {
            return (Poly::constant(0.0), self.clone());
        }
        let mut quot = vec![0.0; self.degree() - dd + 1];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd] / lead;
            quot[i] = q;
            for (k, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + k] -= q * d;
            }
        }
        rem.truncate(dd.max(1));
        (Poly::new(quot), Poly::new(rem))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).copied().unwrap_or(0.0)
                        + rhs.coeffs.get(i).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

fn three_term(m: usize, first: Poly) -> Poly {
    let x = Poly::identity();
    let two_x = x.scale(2.0);
    let mut prev = Poly::constant(1.0);
    if m == 0 {
        return prev;
    }
    let mut cur = first;
    for _ in 1..m {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind, `T_m(cos v) = cos(m v)`.
pub fn chebyshev_t(m: usize) -> Poly {
    three_term(m, Poly::identity())
}

/// Chebyshev polynomial of the second kind, `U_m(cos v) = sin((m+1) v) / sin v`.
pub fn chebyshev_u(m: usize) -> Poly {
    three_term(m, Poly::identity().scale(2.0))
}
