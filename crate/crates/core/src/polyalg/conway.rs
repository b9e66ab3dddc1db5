use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::laurent::{bigint_json, LaurentPolynomial};
use crate::error::{KnotError, Result};

/// Conway polynomial in `z`, coefficients indexed by power of `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayPolynomial {
    coeffs: Vec<BigInt>,
}

impl ConwayPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// As a Laurent polynomial in the variable `z` (only nonnegative powers).
    pub fn as_laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_ascending(0, self.coeffs.iter().cloned())
    }

    /// Expands `∇(x - x^-1)` as a Laurent polynomial in `x`.
    pub fn substitute_x(&self) -> LaurentPolynomial {
        let mut acc = LaurentPolynomial::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &z_power(k) * &LaurentPolynomial::monomial(c.clone(), 0);
            acc = &acc + &term;
        }
        acc
    }

    /// Rewrites a Laurent polynomial `D(x)`, symmetric with even exponents, in
    /// powers of `z = x - x^-1` by peeling off the top power repeatedly.
    pub fn from_x_laurent(d: &LaurentPolynomial) -> Result<Self> {
        let mut rest = d.clone();
        let top = rest.max_exp().unwrap_or(0).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); top + 1];
        while let Some(e) = rest.max_exp() {
            if e < 0 {
                break;
            }
            let c = rest.coeff(e);
            coeffs[e as usize] = c.clone();
            let term = &z_power(e as usize) * &LaurentPolynomial::monomial(c, 0);
            rest = &rest - &term;
        }
        if !rest.is_zero() {
            return Err(KnotError::Internal(format!("Conway re-expression left residue {}", rest.render("x"))));
        }
        if coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return Err(KnotError::Internal("Conway polynomial has odd powers".into()));
        }
        let conway = Self::new(coeffs);
        if !conway.coeffs.first().is_some_and(|c| c.is_one()) {
            return Err(KnotError::Internal(format!("Conway polynomial {conway} has constant term other than 1")));
        }
        Ok(conway)
    }
}

/// `(x - x^-1)^k`
fn z_power(k: usize) -> LaurentPolynomial {
    LaurentPolynomial::from_terms((0..=k).map(|j| {
        let c = binomial(BigInt::from(k), BigInt::from(j));
        let c = if j % 2 == 1 { -c } else { c };
        (k as i64 - 2 * j as i64, c)
    }))
}

impl fmt::Display for ConwayPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_laurent().render("z"))
    }
}

impl Serialize for ConwayPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<_> = self.coeffs.iter().map(bigint_json).collect();
        v.serialize(serializer)
    }
}
