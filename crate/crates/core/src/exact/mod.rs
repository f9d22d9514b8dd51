//! Exact scalars, dense tensors, linear solving and the exterior algebra.

pub mod forms;
pub mod linalg;
pub mod scalar;
pub mod tensor;

pub use forms::{basis_monomials, increasing_tuples, Form};
pub use linalg::{determinant, inverse, rank, solve_linear};
pub use scalar::{format_rational, int, parse_rational, ratio, ExactScalar};
pub use tensor::Tensor;

/// Coefficient vector in a fixed basis (vectors and covectors alike).
pub type Vector = Vec<ExactScalar>;

pub(crate) fn zero_vec(n: usize) -> Vector {
    vec![scalar::zero(); n]
}

pub(crate) fn unit(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = scalar::one();
    v
}

pub(crate) fn axpy(acc: &mut [ExactScalar], coef: &ExactScalar, x: &[ExactScalar]) {
    use num_traits::Zero;
    if coef.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += coef * b;
        }
    }
}
