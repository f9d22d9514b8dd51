//! Dense multi-index tensors of exact scalars.

use std::fmt;

use num_traits::Zero;

use super::scalar::{format_rational, ExactScalar};
use crate::error::{CoreError, Result};

/// Dense tensor over a fixed basis, entries stored in row-major
/// (lexicographic) order.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<ExactScalar>,
}

impl Tensor {
    pub fn zeros(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![ExactScalar::zero(); len],
        }
    }

    pub fn from_vec(shape: &[usize], data: Vec<ExactScalar>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if shape.contains(&0) {
            return Err(CoreError::invalid("tensor extents must be positive"));
        }
        if data.len() != len {
            return Err(CoreError::invalid(format!(
                "tensor of shape {shape:?} needs {len} entries, got {}",
                data.len()
            )));
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
        })
    }

    /// Build by evaluating `f` at every multi-index, in lexicographic order.
    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> ExactScalar) -> Self {
        let mut t = Tensor::zeros(shape);
        let mut idx = vec![0usize; shape.len()];
        for slot in t.data.iter_mut() {
            *slot = f(&idx);
            advance(&mut idx, shape);
        }
        t
    }

    pub fn identity(n: usize) -> Self {
        Tensor::from_fn(&[n, n], |ix| {
            if ix[0] == ix[1] {
                super::scalar::one()
            } else {
                ExactScalar::zero()
            }
        })
    }

    pub fn vector(data: Vec<ExactScalar>) -> Self {
        Tensor {
            shape: vec![data.len()],
            data,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<ExactScalar> {
        self.data
    }

    fn offset(&self, index: &[usize]) -> usize {
        debug_assert_eq!(index.len(), self.shape.len());
        index
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &s)| {
                debug_assert!(i < s);
                acc * s + i
            })
    }

    pub fn get(&self, index: &[usize]) -> &ExactScalar {
        &self.data[self.offset(index)]
    }

    pub fn get_mut(&mut self, index: &[usize]) -> &mut ExactScalar {
        let o = self.offset(index);
        &mut self.data[o]
    }

    pub fn set(&mut self, index: &[usize], value: ExactScalar) {
        let o = self.offset(index);
        self.data[o] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Multi-indices and values of the nonzero entries, in lexicographic order.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &ExactScalar)> + '_ {
        let mut idx = vec![0usize; self.shape.len()];
        self.data.iter().filter_map(move |v| {
            let here = idx.clone();
            advance(&mut idx, &self.shape);
            (!v.is_zero()).then_some((here, v))
        })
    }

    /// First nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, ExactScalar)> {
        self.nonzero().next().map(|(i, v)| (i, v.clone()))
    }

    /// Contract axes `a` and `b` (summing the diagonal); the result drops both
    /// axes. Contracting a rank-2 tensor yields a rank-1 tensor of length 1.
    pub fn contract(&self, a: usize, b: usize) -> Result<Tensor> {
        let r = self.rank();
        if a >= r || b >= r || a == b {
            return Err(CoreError::invalid(format!(
                "cannot contract axes {a} and {b} of a rank-{r} tensor"
            )));
        }
        if self.shape[a] != self.shape[b] {
            return Err(CoreError::invalid(format!(
                "axis extents differ: {} vs {}",
                self.shape[a], self.shape[b]
            )));
        }
        let kept: Vec<usize> = (0..r).filter(|&k| k != a && k != b).collect();
        let out_shape: Vec<usize> = if kept.is_empty() {
            vec![1]
        } else {
            kept.iter().map(|&k| self.shape[k]).collect()
        };
        let mut full = vec![0usize; r];
        Ok(Tensor::from_fn(&out_shape, |out| {
            if !kept.is_empty() {
                for (pos, &k) in kept.iter().enumerate() {
                    full[k] = out[pos];
                }
            }
            let mut acc = ExactScalar::zero();
            for d in 0..self.shape[a] {
                full[a] = d;
                full[b] = d;
                acc += self.get(&full);
            }
            acc
        }))
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect(),
        })
    }

    fn same_shape(&self, other: &Tensor) -> Result<()> {
        if self.shape != other.shape {
            return Err(CoreError::invalid(format!(
                "shape mismatch: {:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    /// Reorder axes: output axis `k` is input axis `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Tensor> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
            return Err(CoreError::invalid(format!("{perm:?} is not a permutation of {r} axes")));
        }
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let mut src = vec![0usize; r];
        Ok(Tensor::from_fn(&shape, |out| {
            for (k, &p) in perm.iter().enumerate() {
                src[p] = out[k];
            }
            self.get(&src).clone()
        }))
    }

    /// Matrix-vector product for a rank-2 `self`.
    pub fn mat_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if self.rank() != 2 || self.shape[1] != v.len() {
            return Err(CoreError::invalid("mat_vec: shape mismatch"));
        }
        let cols = self.shape[1];
        Ok(self
            .data
            .chunks(cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Matrix product for rank-2 tensors.
    pub fn mat_mul(&self, other: &Tensor) -> Result<Tensor> {
        if self.rank() != 2 || other.rank() != 2 || self.shape[1] != other.shape[0] {
            return Err(CoreError::invalid("mat_mul: shape mismatch"));
        }
        let (n, m, p) = (self.shape[0], self.shape[1], other.shape[1]);
        Ok(Tensor::from_fn(&[n, p], |ix| {
            (0..m)
                .map(|k| self.get(&[ix[0], k]) * other.get(&[k, ix[1]]))
                .sum()
        }))
    }

    pub fn transpose(&self) -> Result<Tensor> {
        if self.rank() != 2 {
            return Err(CoreError::invalid("transpose needs a rank-2 tensor"));
        }
        self.permute(&[1, 0])
    }

    pub fn is_square(&self) -> bool {
        self.rank() == 2 && self.shape[0] == self.shape[1]
    }
}

/// Step a row-major multi-index; wraps to all zeros after the last index.
pub(crate) fn advance(idx: &mut [usize], shape: &[usize]) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < shape[k] {
            return;
        }
        idx[k] = 0;
    }
}

/// Every multi-index of `shape`, lexicographically.
pub fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    let mut idx = vec![0usize; shape.len()];
    (0..total).map(move |_| {
        let here = idx.clone();
        advance(&mut idx, shape);
        here
    })
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor{:?} {{", self.shape)?;
        let mut first = true;
        for (ix, v) in self.nonzero() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            let one_based: Vec<usize> = ix.iter().map(|i| i + 1).collect();
            write!(f, " {one_based:?}: {}", format_rational(v))?;
        }
        write!(f, " }}")
    }
}
