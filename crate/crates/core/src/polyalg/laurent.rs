use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::qpoly::QPoly;
use crate::error::{KnotError, Result};

/// Integer Laurent polynomial in one variable, stored sparsely without zero
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coeff: BigInt, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Coefficients listed from exponent `low` upward.
    pub fn from_ascending<C: Into<BigInt>>(low: i64, coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (low + i as i64, c)))
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of the highest power.
    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Exponent span `max - min`; this is d(K) for an Alexander polynomial.
    pub fn span(&self) -> Result<u64> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as u64),
            _ => Err(KnotError::ZeroPolynomial),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_variable(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Substitutes `t -> t^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return Err(KnotError::Internal("evaluating a negative power at zero".into()));
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let pow = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += BigRational::from_integer(c.clone()) * pow;
        }
        Ok(acc)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// The representative `t^-min * p` with no negative exponents and nonzero
    /// constant term, as a rational polynomial.
    pub fn to_qpoly(&self) -> QPoly {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let coeffs = (lo..=hi).map(|e| BigRational::from_integer(self.coeff(e))).collect();
        QPoly::new(coeffs)
    }

    /// Normalizes an Alexander polynomial given up to units `±t^k`: the result
    /// is symmetric under `t -> t^-1` and takes the value 1 at `t = 1`.
    pub fn normalize_alexander(&self) -> Result<Self> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(KnotError::Degenerate("Alexander polynomial is zero".into())),
        };
        if (lo + hi) % 2 != 0 {
            return Err(KnotError::Internal(format!("Alexander polynomial has odd exponent span {}", hi - lo)));
        }
        let mut p = self.shift(-(lo + hi) / 2);
        let at_one = p.eval_at_one();
        if at_one == -BigInt::one() {
            p = -p;
        } else if !at_one.is_one() {
            return Err(KnotError::Internal(format!("Alexander polynomial evaluates to {at_one} at t = 1")));
        }
        if !p.is_symmetric() {
            return Err(KnotError::Internal(format!("Alexander polynomial {p} is not symmetric")));
        }
        Ok(p)
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs.clone())
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

/// JSON number when the value fits in an `i64`, decimal string otherwise.
pub(crate) fn bigint_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    exponent: i64,
    coefficient: serde_json::Value,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (e, c) in self.coeffs.iter().rev() {
            seq.serialize_element(&Term { exponent: *e, coefficient: bigint_json(c) })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let terms = Vec::<Term>::deserialize(deserializer)?;
        let mut p = LaurentPolynomial::zero();
        for t in terms {
            let c: BigInt = match &t.coefficient {
                serde_json::Value::Number(n) => {
                    n.as_i64().map(BigInt::from).ok_or_else(|| D::Error::custom("coefficient out of range"))?
                }
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("coefficient must be a number or string")),
            };
            p.add_term(t.exponent, c);
        }
        Ok(p)
    }
}
