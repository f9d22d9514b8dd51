//! The exterior algebra over the dual of an `n`-dimensional space.
//!
//! A [`Form`] is a finite sum of monomials `c · e_{i1} ∧ … ∧ e_{ik}` with
//! strictly increasing indices (0-based in code, printed 1-based). Zero
//! coefficients are never stored, so structural equality is equality of forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{format_rational, is_negative, ExactScalar};
use super::tensor::Tensor;
use crate::error::{CoreError, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<Vec<usize>, ExactScalar>,
}

/// Sort `idx` in place, returning the permutation sign, or `None` when an
/// index repeats (the monomial vanishes).
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: ExactScalar) -> Self {
        let mut f = Form::zero(dim);
        f.add_term(Vec::new(), c);
        f
    }

    /// The basis 1-form `e_i` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        let mut f = Form::zero(dim);
        f.terms.insert(vec![i], ExactScalar::one());
        f
    }

    /// `coef · e_{idx[0]} ∧ e_{idx[1]} ∧ …` with arbitrary index order.
    pub fn monomial(dim: usize, idx: &[usize], coef: ExactScalar) -> Result<Self> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= dim) {
            return Err(CoreError::invalid(format!(
                "index {} out of range 1..{dim}",
                bad + 1
            )));
        }
        let mut f = Form::zero(dim);
        let mut sorted = idx.to_vec();
        if let Some(neg) = sort_with_sign(&mut sorted) {
            f.add_term(sorted, if neg { -coef } else { coef });
        }
        Ok(f)
    }

    /// Degree-1 form with the given coefficients.
    pub fn from_covector(v: &[ExactScalar]) -> Self {
        let mut f = Form::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            f.add_term(vec![i], c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials with nonzero coefficients, indices ascending.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &ExactScalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, idx: &[usize]) -> ExactScalar {
        let mut sorted = idx.to_vec();
        match sort_with_sign(&mut sorted) {
            None => ExactScalar::zero(),
            Some(neg) => {
                let c = self.terms.get(&sorted).cloned().unwrap_or_else(ExactScalar::zero);
                if neg {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Degree when the form is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Vec::len);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// True when every term has degree `k` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|t| t.len() == k)
    }

    pub fn homogeneous_part(&self, k: usize) -> Form {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.len() == k)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of a degree-1 form.
    pub fn as_covector(&self) -> Result<Vec<ExactScalar>> {
        if !self.is_homogeneous_of(1) {
            return Err(CoreError::invalid("expected a 1-form"));
        }
        let mut v = vec![ExactScalar::zero(); self.dim];
        for (t, c) in &self.terms {
            v[t[0]] = c.clone();
        }
        Ok(v)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Form) -> Result<()> {
        if self.dim != other.dim {
            return Err(CoreError::invalid(format!(
                "form dimension mismatch: {} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    /// `self += coef · other`. Panics on a dimension mismatch.
    pub fn add_scaled(&mut self, other: &Form, coef: &ExactScalar) {
        assert_eq!(self.dim, other.dim, "form dimension mismatch");
        if coef.is_zero() {
            return;
        }
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * coef);
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &ExactScalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-ExactScalar::one());
        Ok(out)
    }

    pub fn neg(&self) -> Form {
        self.scale(&-ExactScalar::one())
    }

    pub fn scale(&self, c: &ExactScalar) -> Form {
        let mut out = Form::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_dim(other)?;
        let mut out = Form::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.iter().any(|i| b.contains(i)) {
                    continue;
                }
                let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
                let neg = sort_with_sign(&mut idx).expect("disjoint indices");
                let c = ca * cb;
                out.add_term(idx, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Map each monomial through `f` (which returns a form), summing with the
    /// monomial coefficients. Used for linear operators defined on a basis.
    pub fn map_terms(&self, mut f: impl FnMut(&[usize]) -> Form) -> Form {
        let mut out = Form::zero(self.dim);
        for (t, c) in &self.terms {
            let image = f(t);
            assert_eq!(image.dim, self.dim, "operator changed the dimension");
            out.add_scaled(&image, c);
        }
        out
    }

    /// Same as [`Form::map_terms`] but into a form of a different dimension.
    pub fn map_terms_into(&self, dim: usize, mut f: impl FnMut(&[usize]) -> Form) -> Form {
        let mut out = Form::zero(dim);
        for (t, c) in &self.terms {
            out.add_scaled(&f(t), c);
        }
        out
    }

    /// Antisymmetric `n × n` matrix of a 2-form: entry `(a, b)` is the value
    /// on `(e_a, e_b)`.
    pub fn to_matrix(&self) -> Result<Tensor> {
        if !self.is_homogeneous_of(2) {
            return Err(CoreError::invalid("expected a 2-form"));
        }
        let n = self.dim;
        Ok(Tensor::from_fn(&[n, n], |ix| self.coefficient(ix)))
    }

    /// Full antisymmetric component tensor of a homogeneous degree-`k` form
    /// (shape `[n; k]`, or `[1]` holding the constant for `k = 0`).
    pub fn to_tensor(&self, k: usize) -> Result<Tensor> {
        if !self.is_homogeneous_of(k) {
            return Err(CoreError::invalid(format!("expected a {k}-form")));
        }
        if k == 0 {
            return Ok(Tensor::vector(vec![self.coefficient(&[])]));
        }
        Ok(Tensor::from_fn(&vec![self.dim; k], |ix| self.coefficient(ix)))
    }
}

/// All increasing index tuples of length `k` from `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Basis monomials of every degree `0..=n`, by degree then lexicographically.
pub fn basis_monomials(n: usize, max_degree: usize) -> Vec<Form> {
    (0..=max_degree.min(n))
        .flat_map(|k| increasing_tuples(n, k))
        .map(|t| Form::monomial(n, &t, ExactScalar::one()).expect("in range"))
        .collect()
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let basis: Vec<String> = t.iter().map(|i| format!("e{}", i + 1)).collect();
            if t.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", basis.join("^"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), basis.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({self})", self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn e(i: usize) -> Form {
        Form::basis(3, i - 1)
    }

    #[test]
    fn basis_wedge() {
        let w = e(1).wedge(&e(2)).unwrap();
        assert_eq!(w, Form::monomial(3, &[0, 1], int(1)).unwrap());
        assert_eq!(format!("{w}"), "e1^e2");
    }

    #[test]
    fn alternation() {
        assert!(e(1).wedge(&e(1)).unwrap().is_zero());
    }

    #[test]
    fn associativity() {
        let l = e(1).wedge(&e(2)).unwrap().wedge(&e(3)).unwrap();
        let r = e(1).wedge(&e(2).wedge(&e(3)).unwrap()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let m = Form::monomial(3, &[2, 0, 1], int(5)).unwrap();
        assert_eq!(m.coefficient(&[0, 1, 2]), int(5));
        let m = Form::monomial(3, &[1, 0], int(1)).unwrap();
        assert_eq!(m.coefficient(&[0, 1]), int(-1));
        assert_eq!(m.coefficient(&[1, 0]), int(1));
        assert!(Form::monomial(3, &[1, 1], int(1)).unwrap().is_zero());
        assert!(Form::monomial(3, &[3], int(1)).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(Form::basis(2, 0).wedge(&Form::basis(3, 0)).is_err());
    }

    #[test]
    fn cancellation_leaves_nothing_stored() {
        let a = e(1).wedge(&e(2)).unwrap();
        let b = e(2).wedge(&e(1)).unwrap();
        let s = a.add(&b).unwrap();
        assert!(s.is_zero());
        assert_eq!(s, Form::zero(3));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(basis_monomials(3, 3).len(), 8);
    }
}
