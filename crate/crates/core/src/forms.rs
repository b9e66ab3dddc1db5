//! Symmetrized Seifert form, isotropy tests and the rational Alexander module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{KnotError, Result};
use crate::linalg::{det_bareiss, IntMatrix};
use crate::polyalg::{degree_d, rational_roots, LaurentPolynomial, QPoly};
use crate::seifert::SeifertMatrix;

/// `V + V^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    entries: IntMatrix,
}

impl SymmetricForm {
    pub fn from_seifert(v: &SeifertMatrix) -> Self {
        let m = v.entries();
        let n = m.len();
        Self { entries: (0..n).map(|i| (0..n).map(|j| &m[i][j] + &m[j][i]).collect()).collect() }
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn determinant(&self) -> BigInt {
        det_bareiss(&self.entries)
    }

    /// Signature by symmetric Gaussian elimination over the rationals.
    /// Fails on a degenerate form.
    pub fn signature(&self) -> Result<i64> {
        let mut a: Vec<Vec<BigRational>> =
            self.entries.iter().map(|r| r.iter().cloned().map(BigRational::from_integer).collect()).collect();
        let mut sig = 0i64;
        while !a.is_empty() {
            let n = a.len();
            if let Some(k) = (0..n).find(|&k| !a[k][k].is_zero()) {
                sig += if a[k][k].is_positive() { 1 } else { -1 };
                a = schur_1(&a, k);
            } else if let Some((i, j)) =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
            {
                // [[0, b], [b, 0]] has one positive and one negative direction
                a = schur_2(&a, i, j);
            } else {
                return Err(KnotError::Internal("symmetrized Seifert form is degenerate".into()));
            }
        }
        if sig % 2 != 0 {
            return Err(KnotError::Internal(format!("odd signature {sig}")));
        }
        Ok(sig)
    }
}

fn schur_1(a: &[Vec<BigRational>], k: usize) -> Vec<Vec<BigRational>> {
    let rest: Vec<usize> = (0..a.len()).filter(|&i| i != k).collect();
    rest.iter().map(|&i| rest.iter().map(|&j| &a[i][j] - &a[i][k] * &a[k][j] / &a[k][k]).collect()).collect()
}

fn schur_2(a: &[Vec<BigRational>], p: usize, q: usize) -> Vec<Vec<BigRational>> {
    let b = &a[p][q];
    let rest: Vec<usize> = (0..a.len()).filter(|&i| i != p && i != q).collect();
    rest.iter()
        .map(|&i| rest.iter().map(|&j| &a[i][j] - (&a[i][p] * &a[q][j] + &a[i][q] * &a[p][j]) / b).collect())
        .collect()
}

pub fn signature(v: &SeifertMatrix) -> Result<i64> {
    SymmetricForm::from_seifert(v).signature()
}

/// `|sigma| >= d - 2`; both arguments must be even.
pub fn signature_bound_check(sigma: i64, d: i64) -> Result<bool> {
    for x in [sigma, d] {
        if x % 2 != 0 {
            return Err(KnotError::OddValue(x));
        }
    }
    Ok(sigma.abs() >= d - 2)
}

/// Whether the module has a one-dimensional invariant isotropic subspace,
/// which happens exactly when `delta` has a rational root.
pub fn one_dim_isotropic_exists(delta: &LaurentPolynomial) -> Result<bool> {
    Ok(!rational_roots(delta)?.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnisotropyStatus {
    CertifiedAnisotropic,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PremiseRecord {
    pub name: String,
    pub passed: bool,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnisotropyVerdict {
    pub status: AnisotropyStatus,
    pub premises: Vec<PremiseRecord>,
}

impl AnisotropyVerdict {
    pub fn is_certified(&self) -> bool {
        self.status == AnisotropyStatus::CertifiedAnisotropic
    }
}

/// No rational roots of `delta` and `|sigma| >= d - 2`. Positivity of the
/// knot is the caller's premise.
pub fn anisotropy_certificate(delta: &LaurentPolynomial, sigma: i64) -> Result<AnisotropyVerdict> {
    let roots = rational_roots(delta)?;
    let d = degree_d(delta)? as i64;
    let bound = signature_bound_check(sigma, d)?;
    let premises = vec![
        PremiseRecord {
            name: "no-rational-roots".into(),
            passed: roots.is_empty(),
            value: json!({ "alexander": delta.to_string(), "rational_roots": roots }),
        },
        PremiseRecord {
            name: "signature-bound".into(),
            passed: bound,
            value: json!({ "sigma": sigma, "d": d, "required": format!("|sigma| >= {}", d - 2) }),
        },
    ];
    let status = if premises.iter().all(|p| p.passed) {
        AnisotropyStatus::CertifiedAnisotropic
    } else {
        AnisotropyStatus::NotCertified
    };
    Ok(AnisotropyVerdict { status, premises })
}

/// Monic invariant factors `f1 | f2 | ...` of the rational Alexander module,
/// units omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModuleInvariantFactors {
    pub factors: Vec<QPoly>,
}

impl ModuleInvariantFactors {
    pub fn product(&self) -> QPoly {
        self.factors.iter().fold(QPoly::one(), |acc, f| &acc * f)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

impl Serialize for ModuleInvariantFactors {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        v.serialize(s)
    }
}

/// Smith normal form of `tV - V^T` over `Q[t]`.
pub fn invariant_factors(v: &SeifertMatrix) -> Result<ModuleInvariantFactors> {
    if det_bareiss(v.entries()).is_zero() {
        return Err(KnotError::SingularSeifert);
    }
    let m = v.entries();
    let n = m.len();
    let mut a: Vec<Vec<QPoly>> =
        (0..n).map(|i| (0..n).map(|j| QPoly::from_ints([-m[j][i].clone(), m[i][j].clone()])).collect()).collect();
    let diagonal = smith_diagonal(&mut a)?;
    let factors = diagonal.into_iter().filter(|f| !f.is_constant()).map(|f| f.monic()).collect::<Vec<_>>();
    for w in factors.windows(2) {
        if !w[1].div_rem(&w[0]).1.is_zero() {
            return Err(KnotError::Internal("invariant factors out of divisibility order".into()));
        }
    }
    Ok(ModuleInvariantFactors { factors })
}

#[allow(clippy::needless_range_loop)]
fn smith_diagonal(a: &mut [Vec<QPoly>]) -> Result<Vec<QPoly>> {
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].degree());
            let Some((pi, pj)) = pivot else {
                return Err(KnotError::Internal("presentation matrix is singular".into()));
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].div_rem(&a[k][k]);
                for j in k..n {
                    let sub = &q * &a[k][j];
                    a[i][j] = &a[i][j] - &sub;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].div_rem(&a[k][k]);
                for i in k..n {
                    let sub = &q * &a[i][k];
                    a[i][j] = &a[i][j] - &sub;
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].div_rem(&a[k][k]).1.is_zero());
            match offender {
                Some((i, _)) => {
                    for j in k..n {
                        let moved = &a[k][j] + &a[i][j];
                        a[k][j] = moved;
                    }
                }
                None => break,
            }
        }
        diag.push(a[k][k].clone());
    }
    Ok(diag)
}

pub fn modules_isomorphic(a: &ModuleInvariantFactors, b: &ModuleInvariantFactors) -> bool {
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;
    use crate::polyalg::alexander_from_seifert;

    fn sm(rows: &[Vec<i64>]) -> SeifertMatrix {
        SeifertMatrix::user_supplied(int_matrix(rows)).unwrap()
    }

    fn lp(low: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_ascending(low, c.iter().copied())
    }

    fn trefoil() -> SeifertMatrix {
        sm(&[vec![-1, 1], vec![0, -1]])
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&sm(&[])).unwrap(), 0);
        assert_eq!(signature(&trefoil()).unwrap(), -2);
        assert_eq!(signature(&trefoil().mirror()).unwrap(), 2);
        assert_eq!(signature(&sm(&[vec![1, 1], vec![0, -2]])).unwrap(), 0);
        // zero diagonal forces the 2x2 pivot
        assert_eq!(signature(&sm(&[vec![0, 1], vec![0, 0]])).unwrap(), 0);
        let sum = trefoil().direct_sum(&trefoil());
        assert_eq!(signature(&sum).unwrap(), -4);
    }

    #[test]
    fn signature_bound() {
        assert!(signature_bound_check(-2, 2).unwrap());
        assert!(!signature_bound_check(-4, 8).unwrap());
        assert!(signature_bound_check(0, 0).unwrap());
        assert_eq!(signature_bound_check(-3, 2), Err(KnotError::OddValue(-3)));
    }

    #[test]
    fn isotropy_and_anisotropy() {
        assert!(!one_dim_isotropic_exists(&lp(-1, &[1, -1, 1])).unwrap());
        assert!(one_dim_isotropic_exists(&lp(-1, &[-2, 5, -2])).unwrap());
        assert!(!one_dim_isotropic_exists(&LaurentPolynomial::one()).unwrap());
        assert!(anisotropy_certificate(&lp(-1, &[1, -1, 1]), -2).unwrap().is_certified());
        assert!(anisotropy_certificate(&LaurentPolynomial::one(), 0).unwrap().is_certified());
        // degree 8 with no rational roots
        let d8 = lp(-4, &[1, -1, 1, -1, 1, -1, 1, -1, 1]);
        let v = anisotropy_certificate(&d8, -4).unwrap();
        assert_eq!(v.status, AnisotropyStatus::NotCertified);
        assert!(v.premises[0].passed && !v.premises[1].passed);
    }

    #[test]
    fn invariant_factor_examples() {
        let f = QPoly::from_ints([1, -1, 1]);
        assert_eq!(invariant_factors(&trefoil()).unwrap().factors, vec![f.clone()]);
        assert!(invariant_factors(&sm(&[])).unwrap().is_trivial());
        let double = invariant_factors(&trefoil().direct_sum(&trefoil())).unwrap();
        assert_eq!(double.factors, vec![f.clone(), f.clone()]);
        let square = ModuleInvariantFactors { factors: vec![&f * &f] };
        assert!(!modules_isomorphic(&double, &square));
        assert!(modules_isomorphic(&double, &double.clone()));
        assert!(!modules_isomorphic(&invariant_factors(&trefoil()).unwrap(), &ModuleInvariantFactors::default()));
        assert_eq!(invariant_factors(&sm(&[vec![0, 1], vec![0, 0]])), Err(KnotError::SingularSeifert));
        let six = sm(&[vec![1, 1], vec![0, -2]]);
        let fac = invariant_factors(&six).unwrap();
        let delta = alexander_from_seifert(&six).unwrap().to_qpoly();
        assert_eq!(fac.product(), delta.monic());
    }
}
