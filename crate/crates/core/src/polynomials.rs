//! The three polynomial families: shifted Legendre `P_n`, binomial
//! `Q_n = (1 − x)^n`, and an explicit third polynomial `T_n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{factorial, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyFamily {
    ShiftedLegendre,
    Binomial,
    Explicit,
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PolyFamily::ShiftedLegendre => "shifted-legendre",
            PolyFamily::Binomial => "binomial",
            PolyFamily::Explicit => "explicit",
        };
        f.write_str(name)
    }
}

/// A polynomial `Σ coeffs[r]·x^r` of nominal degree `coeffs.len() − 1`.
///
/// Only explicit polynomials may have a zero leading coefficient; the
/// nominal degree is what the coefficient formulas index over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySpec {
    coeffs: Vec<Rat>,
    family: PolyFamily,
    cstar: Rat,
}

impl PolySpec {
    fn from_parts(coeffs: Vec<Rat>, family: PolyFamily) -> Self {
        let cstar = max_abs(&coeffs);
        Self {
            coeffs,
            family,
            cstar,
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> &Rat {
        &self.coeffs[r]
    }

    pub fn family(&self) -> PolyFamily {
        self.family
    }

    /// `c* = max_i |c_i|`.
    pub fn cstar(&self) -> &Rat {
        &self.cstar
    }

    /// `Σ_i |c_i|`.
    pub fn abs_sum(&self) -> Rat {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Same polynomial with nominal degree raised to `degree` by appending
    /// zero coefficients. Only explicit polynomials can be padded; lowering the
    /// degree is an error.
    pub fn padded_to(&self, degree: usize) -> Result<PolySpec> {
        if degree == self.degree() {
            return Ok(self.clone());
        }
        if self.family != PolyFamily::Explicit || degree < self.degree() {
            return Err(Error::DegreeMismatch(vec![self.degree(), degree]));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Rat::zero());
        Ok(PolySpec::from_parts(coeffs, PolyFamily::Explicit))
    }
}

fn max_abs(coeffs: &[Rat]) -> Rat {
    coeffs
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rat::zero)
}

/// `P_n(x) = (1/n!) (d/dx)^n (x^n (1 − x)^n)` with
/// `a_r = (−1)^r (n+r)! / ((r!)² (n−r)!)`.
pub fn shifted_legendre(n: usize) -> PolySpec {
    let coeffs = (0..=n)
        .map(|r| {
            let num = factorial((n + r) as u64);
            let r_fact = factorial(r as u64);
            let den = &r_fact * &r_fact * factorial((n - r) as u64);
            let value = num / den;
            Rat::from_integer(if r % 2 == 1 { -value } else { value })
        })
        .collect();
    PolySpec::from_parts(coeffs, PolyFamily::ShiftedLegendre)
}

/// `Q_n(x) = (1 − x)^n` with `b_r = (−1)^r n! / (r! (n−r)!)`.
pub fn binomial_poly(n: usize) -> PolySpec {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut binom = BigInt::from(1);
    for r in 0..=n {
        let signed = if r % 2 == 1 {
            -binom.clone()
        } else {
            binom.clone()
        };
        coeffs.push(Rat::from_integer(signed));
        binom = binom * BigInt::from(n - r) / BigInt::from(r + 1);
    }
    PolySpec::from_parts(coeffs, PolyFamily::Binomial)
}

pub fn explicit_poly(coeffs: Vec<Rat>) -> Result<PolySpec> {
    if coeffs.is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    Ok(PolySpec::from_parts(coeffs, PolyFamily::Explicit))
}

/// Horner evaluation.
pub fn eval_poly(p: &PolySpec, x: &Rat) -> Rat {
    p.coeffs
        .iter()
        .rev()
        .fold(Rat::zero(), |acc, c| acc * x + c)
}
