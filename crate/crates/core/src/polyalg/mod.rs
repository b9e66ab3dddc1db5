//! Exact polynomial algebra for knot invariants.

mod conway;
mod laurent;
mod qpoly;
mod roots;

use num_bigint::BigInt;

pub use conway::ConwayPolynomial;
pub(crate) use laurent::bigint_json;
pub use laurent::LaurentPolynomial;
pub use qpoly::QPoly;
pub use roots::{
    factorize, leading_coeff_prime_power, rational_roots, root_form_witness, sturm_count_qpoly, sturm_real_root_count,
    Bound, LeadingCoefficientBranch, PrimePowerCheck, RationalRootReport, RootWitness,
};

use crate::diagram::WirtingerPresentation;
use crate::error::{KnotError, Result};
use crate::linalg::poly_det;
use crate::seifert::SeifertMatrix;

/// `det(V - tV^T)` before normalization.
pub(crate) fn seifert_determinant(v: &SeifertMatrix) -> Result<LaurentPolynomial> {
    let m = v.entries();
    let n = m.len();
    let entries: Vec<Vec<Vec<BigInt>>> =
        (0..n).map(|i| (0..n).map(|j| vec![m[i][j].clone(), -m[j][i].clone()]).collect()).collect();
    poly_det(&entries)
}

pub fn alexander_from_seifert(v: &SeifertMatrix) -> Result<LaurentPolynomial> {
    seifert_determinant(v)?.normalize_alexander()
}

/// Alexander polynomial from the Alexander matrix of a Wirtinger presentation:
/// abelianized Fox derivatives, last relator and last generator deleted.
pub fn alexander_from_fox(w: &WirtingerPresentation) -> Result<LaurentPolynomial> {
    let n = w.generator_count;
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut rows = Vec::with_capacity(w.relators.len());
    for rel in &w.relators {
        let mut row = vec![LaurentPolynomial::zero(); n];
        let mut prefix = 0i64;
        for &(g, e) in rel {
            let term = if e > 0 {
                LaurentPolynomial::monomial(BigInt::from(1), prefix)
            } else {
                LaurentPolynomial::monomial(BigInt::from(-1), prefix - 1)
            };
            row[g] = &row[g] + &term;
            prefix += e as i64;
        }
        rows.push(row);
    }
    let k = n - 1;
    let minor: Vec<Vec<Vec<BigInt>>> = rows
        .iter()
        .take(k)
        .map(|row| {
            let low = row[..k].iter().filter_map(|p| p.min_exp()).min().unwrap_or(0);
            row[..k]
                .iter()
                .map(|p| match p.max_exp() {
                    None => Vec::new(),
                    Some(hi) => (low..=hi).map(|e| p.coeff(e)).collect(),
                })
                .collect()
        })
        .collect();
    let det = poly_det(&minor)?;
    if det.is_zero() {
        return Err(KnotError::Degenerate("Alexander matrix minor vanishes".into()));
    }
    det.normalize_alexander()
}

/// Conway polynomial: `det(xV - x^-1 V^T)` rewritten in `z = x - x^-1`.
pub fn conway_from_seifert(v: &SeifertMatrix) -> Result<ConwayPolynomial> {
    let p = seifert_determinant(v)?;
    let n = v.size() as i64;
    let d = p.substitute_power(2).shift(-n);
    ConwayPolynomial::from_x_laurent(&d)
}

/// Exponent span of `p`.
pub fn degree_d(p: &LaurentPolynomial) -> Result<u64> {
    p.span()
}

/// Whether `q = p * r` for a Laurent polynomial `r` over the rationals.
pub fn divides(p: &LaurentPolynomial, q: &LaurentPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(KnotError::ZeroPolynomial);
    }
    if q.is_zero() {
        return Ok(true);
    }
    let (_, rem) = q.to_qpoly().div_rem(&p.to_qpoly());
    Ok(rem.is_zero())
}
