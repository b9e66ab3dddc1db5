use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::laurent::LaurentPolynomial;
use super::qpoly::QPoly;
use crate::error::{KnotError, Result};

/// One rational root together with the integer `a` such that the root equals
/// `(a - 1) / a`, when such an `a` exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootWitness {
    #[serde(serialize_with = "ser_rational")]
    pub root: BigRational,
    #[serde(serialize_with = "ser_opt_int")]
    pub witness: Option<BigInt>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RationalRootReport {
    pub roots: Vec<RootWitness>,
}

impl RationalRootReport {
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn all_witnessed(&self) -> bool {
        self.roots.iter().all(|r| r.witness.is_some())
    }
}

pub(crate) fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_opt_int<S: Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(a) => super::laurent::bigint_json(a).serialize(s),
        None => s.serialize_none(),
    }
}

/// Returns `a = 1 / (1 - q)` when it is an integer outside `{0, 1}`.
pub fn root_form_witness(q: &BigRational) -> Option<BigInt> {
    if q.is_one() {
        return None;
    }
    let a = (BigRational::one() - q).recip();
    if !a.is_integer() {
        return None;
    }
    let a = a.to_integer();
    if a.is_zero() || a.is_one() {
        return None;
    }
    Some(a)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut k = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            k += 1;
        }
        if k > 0 {
            out.push((d.clone(), k));
        }
        d += if d == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, k) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
        for d in &divs {
            let mut pow = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pow);
                pow *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// All rational roots of `p` (on its no-negative-exponent representative),
/// each verified by exact evaluation, sorted ascending and listed once.
pub fn rational_roots(p: &LaurentPolynomial) -> Result<RationalRootReport> {
    let (lo, hi) = match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(KnotError::ZeroPolynomial),
    };
    let constant = p.coeff(lo);
    let lead = p.coeff(hi);
    let poly = p.to_qpoly();
    let mut roots = Vec::new();
    if hi > lo {
        for num in divisors(&constant) {
            for den in divisors(&lead) {
                for sign in [1, -1] {
                    let q = BigRational::new(&num * sign, den.clone());
                    if poly.eval(&q).is_zero() {
                        roots.push(q);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(RationalRootReport {
        roots: roots
            .into_iter()
            .map(|root| {
                let witness = root_form_witness(&root);
                RootWitness { root, witness }
            })
            .collect(),
    })
}

/// Which branch justified a prime-power leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "branch")]
pub enum LeadingCoefficientBranch {
    /// `|lead| = 1`: monic, the fibered case.
    Monic,
    PrimePower {
        prime: i64,
        exponent: u32,
    },
    NotPrimePower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePowerCheck {
    #[serde(serialize_with = "ser_int")]
    pub leading: BigInt,
    pub factorization: Vec<(String, u32)>,
    #[serde(flatten)]
    pub branch: LeadingCoefficientBranch,
}

fn ser_int<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    super::laurent::bigint_json(v).serialize(s)
}

impl PrimePowerCheck {
    pub fn holds(&self) -> bool {
        !matches!(self.branch, LeadingCoefficientBranch::NotPrimePower)
    }
}

/// Tests whether `|leading coefficient|` is 1 or a power of a single prime.
pub fn leading_coeff_prime_power(p: &LaurentPolynomial) -> Result<PrimePowerCheck> {
    let leading = p.leading_coefficient().ok_or(KnotError::ZeroPolynomial)?.clone();
    let factors = factorize(&leading);
    let branch = match factors.as_slice() {
        [] => LeadingCoefficientBranch::Monic,
        [(prime, exponent)] => LeadingCoefficientBranch::PrimePower {
            prime: prime.try_into().map_err(|_| KnotError::Internal("prime too large".into()))?,
            exponent: *exponent,
        },
        _ => LeadingCoefficientBranch::NotPrimePower,
    };
    Ok(PrimePowerCheck { leading, factorization: factors.iter().map(|(p, k)| (p.to_string(), *k)).collect(), branch })
}

/// Interval endpoint for Sturm counting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Bound {
    pub fn int(v: i64) -> Self {
        Bound::Finite(BigRational::from_integer(v.into()))
    }
}

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let p0 = p.square_free_part();
    let mut chain = vec![p0.clone(), p0.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sign_changes(chain: &[QPoly], at: &Bound) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|q| match at {
            Bound::NegInfinity => q.sign_at_infinity(false),
            Bound::PosInfinity => q.sign_at_infinity(true),
            Bound::Finite(x) => {
                let v = q.eval(x);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            }
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count_qpoly(p: &QPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(KnotError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    let left = sign_changes(&chain, lo);
    let right = sign_changes(&chain, hi);
    // counts roots in (lo, hi]
    let mut count = left.saturating_sub(right);
    if let Bound::Finite(b) = hi {
        if chain[0].eval(b).is_zero() && count > 0 {
            count -= 1;
        }
    }
    Ok(count)
}

/// Distinct real roots of a Laurent polynomial in `(lo, hi)`; `t = 0` is
/// never counted.
pub fn sturm_real_root_count(p: &LaurentPolynomial, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(KnotError::ZeroPolynomial);
    }
    sturm_count_qpoly(&p.to_qpoly(), lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_ascending(low, c.iter().copied())
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn witness_examples() {
        assert_eq!(root_form_witness(&r(1, 2)), Some(BigInt::from(2)));
        assert_eq!(root_form_witness(&r(2, 1)), Some(BigInt::from(-1)));
        assert_eq!(root_form_witness(&r(1, 3)), None);
        assert_eq!(root_form_witness(&r(1, 1)), None);
        assert_eq!(root_form_witness(&r(0, 1)), None);
        assert_eq!(root_form_witness(&r(-1, 1)), None);
    }

    #[test]
    fn rational_roots_of_6_1() {
        let rep = rational_roots(&lp(-1, &[-2, 5, -2])).unwrap();
        let roots: Vec<_> = rep.roots.iter().map(|w| w.root.clone()).collect();
        assert_eq!(roots, vec![r(1, 2), r(2, 1)]);
        let wit: Vec<_> = rep.roots.iter().map(|w| w.witness.clone().unwrap()).collect();
        assert_eq!(wit, vec![BigInt::from(2), BigInt::from(-1)]);
        assert!(rational_roots(&lp(-1, &[1, -1, 1])).unwrap().is_empty());
        assert!(rational_roots(&LaurentPolynomial::one()).unwrap().is_empty());
    }

    #[test]
    fn prime_power_examples() {
        let c = leading_coeff_prime_power(&lp(-1, &[-2, 5, -2])).unwrap();
        assert!(c.holds());
        assert_eq!(c.branch, LeadingCoefficientBranch::PrimePower { prime: 2, exponent: 1 });
        assert!(!leading_coeff_prime_power(&lp(-1, &[6, -11, 6])).unwrap().holds());
        let m = leading_coeff_prime_power(&lp(-1, &[1, -1, 1])).unwrap();
        assert_eq!(m.branch, LeadingCoefficientBranch::Monic);
        assert_eq!(
            leading_coeff_prime_power(&lp(0, &[1, 0, 8])).unwrap().branch,
            LeadingCoefficientBranch::PrimePower { prime: 2, exponent: 3 }
        );
    }

    #[test]
    fn sturm_examples() {
        let all = (Bound::NegInfinity, Bound::PosInfinity);
        assert_eq!(sturm_real_root_count(&lp(-1, &[1, -1, 1]), &all.0, &all.1).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&lp(-1, &[-2, 5, -2]), &Bound::int(0), &Bound::PosInfinity).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&lp(0, &[1, 0, 1]), &all.0, &all.1).unwrap(), 0);
        // open interval excludes endpoints that are roots
        let p = lp(-1, &[-2, 5, -2]);
        assert_eq!(sturm_real_root_count(&p, &Bound::int(2), &Bound::PosInfinity).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&p, &Bound::int(0), &Bound::int(2)).unwrap(), 1);
        // (t - 1)^2 (t + 2): distinct roots once
        let q = &(&lp(0, &[-1, 1]) * &lp(0, &[-1, 1])) * &lp(0, &[2, 1]);
        assert_eq!(sturm_real_root_count(&q, &all.0, &all.1).unwrap(), 2);
    }
}
