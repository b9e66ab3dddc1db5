//! Exact integer and polynomial matrix helpers shared by the invariant modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{KnotError, Result};
use crate::polyalg::LaurentPolynomial;

/// Square integer matrix in row-major nested form.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

/// Fraction-free Gaussian elimination (Bareiss). The empty matrix has
/// determinant 1.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a matrix whose entries are integer polynomials, each given
/// by ascending coefficients. Computed by exact evaluation at `deg + 1` integer
/// points and Newton interpolation.
pub fn poly_det(m: &[Vec<Vec<BigInt>>]) -> Result<LaurentPolynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let bound: usize = m.iter().map(|row| row.iter().map(|e| e.len().saturating_sub(1)).max().unwrap_or(0)).sum();
    let points: Vec<BigInt> = (0..=bound as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|x| {
            let evaluated: IntMatrix = m.iter().map(|row| row.iter().map(|e| eval_int_poly(e, x)).collect()).collect();
            det_bareiss(&evaluated)
        })
        .collect();
    let coeffs = interpolate(&points, &values)?;
    Ok(LaurentPolynomial::from_ascending(0, coeffs))
}

fn eval_int_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Newton interpolation through `(x_i, y_i)`, returning ascending integer
/// coefficients.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<Vec<BigInt>> {
    let n = xs.len();
    let mut table: Vec<BigRational> = ys.iter().cloned().map(BigRational::from_integer).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            table[i] = num / den;
        }
    }
    // expand sum_k table[k] * prod_{j<k} (t - x_j)
    let mut result = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for k in 0..n {
        for (i, b) in basis.iter().enumerate() {
            result[i] += &table[k] * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * BigRational::from_integer(xs[k].clone());
        }
        basis = next;
    }
    result
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(KnotError::Internal("non-integral interpolated determinant".into()))
            }
        })
        .collect()
}
