//! Exact Gauss-Jordan elimination over the rationals.

use num_traits::{One, Zero};

use super::scalar::ExactScalar;
use super::tensor::Tensor;
use crate::error::{CoreError, Result};

fn rows_of(m: &Tensor) -> Result<Vec<Vec<ExactScalar>>> {
    if !m.is_square() {
        return Err(CoreError::invalid(format!(
            "expected a square matrix, got shape {:?}",
            m.shape()
        )));
    }
    let n = m.shape()[0];
    Ok(m.entries().chunks(n).map(<[_]>::to_vec).collect())
}

/// Reduce `[m | rhs]` in place. Returns the rank of `m`; the left block is the
/// identity on success (full rank).
fn eliminate(a: &mut [Vec<ExactScalar>], rhs: &mut [Vec<ExactScalar>]) -> usize {
    let n = a.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        rhs.swap(rank, p);
        let inv = a[rank][col].recip();
        for x in a[rank].iter_mut() {
            *x *= &inv;
        }
        for x in rhs[rank].iter_mut() {
            *x *= &inv;
        }
        let (pivot_a, pivot_rhs) = (a[rank].clone(), rhs[rank].clone());
        for r in 0..n {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (x, p) in a[r].iter_mut().zip(&pivot_a) {
                *x -= &f * p;
            }
            for (x, p) in rhs[r].iter_mut().zip(&pivot_rhs) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Solve `m · x = rhs` exactly.
pub fn solve_linear(m: &Tensor, rhs: &Tensor) -> Result<Tensor> {
    let mut a = rows_of(m)?;
    let n = a.len();
    if rhs.shape() != [n] {
        return Err(CoreError::invalid(format!(
            "right-hand side has shape {:?}, expected [{n}]",
            rhs.shape()
        )));
    }
    let mut b: Vec<Vec<ExactScalar>> = rhs.entries().iter().map(|v| vec![v.clone()]).collect();
    let rank = eliminate(&mut a, &mut b);
    if rank < n {
        return Err(CoreError::Singular { size: n, rank });
    }
    Ok(Tensor::vector(b.into_iter().map(|mut r| r.remove(0)).collect()))
}

/// Exact inverse of a square matrix.
pub fn inverse(m: &Tensor) -> Result<Tensor> {
    let mut a = rows_of(m)?;
    let n = a.len();
    let mut b: Vec<Vec<ExactScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ExactScalar::one() } else { ExactScalar::zero() })
                .collect()
        })
        .collect();
    let rank = eliminate(&mut a, &mut b);
    if rank < n {
        return Err(CoreError::Singular { size: n, rank });
    }
    Tensor::from_vec(&[n, n], b.into_iter().flatten().collect())
}

/// Rank of a square matrix.
pub fn rank(m: &Tensor) -> Result<usize> {
    let mut a = rows_of(m)?;
    let mut none: Vec<Vec<ExactScalar>> = vec![Vec::new(); a.len()];
    Ok(eliminate(&mut a, &mut none))
}

/// Determinant by fraction-exact elimination.
pub fn determinant(m: &Tensor) -> Result<ExactScalar> {
    let mut a = rows_of(m)?;
    let n = a.len();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(ExactScalar::zero());
        };
        if p != col {
            a.swap(col, p);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let pivot_row = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    Ok(det)
}
