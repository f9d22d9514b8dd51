//! Deterministic brute-force searches over small integer structure constants
//! and metrics.
//!
//! Candidates are enumerated in a fixed lexicographic order and results are
//! returned in that order whatever the execution strategy.

use crate::exact::{int, Tensor};
use crate::exec::Exec;
use crate::lie::{LieAlgebra, LieBialgebra};
use crate::exact::Form;
use crate::hawkins::InvariantComplex;
use crate::metric::{curvature, levi_civita, prla_defect, MetricForm};

/// Every `i < j` slot paired with every output index, in lexicographic order.
fn slots(dim: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in 0..dim {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Decode candidate number `code` (base `values.len()`, least significant
/// digit in the last slot) into a structure table.
fn decode(dim: usize, code: usize, values: &[i64], slots: &[(usize, usize, usize)]) -> Tensor {
    let base = values.len();
    let mut c = Tensor::zeros(&[dim, dim, dim]);
    let mut rest = code;
    for &(i, j, k) in slots.iter().rev() {
        let v = values[rest % base];
        rest /= base;
        if v != 0 {
            c.set(&[i, j, k], int(v));
            c.set(&[j, i, k], int(-v));
        }
    }
    c
}

fn candidate_count(base: usize, slots: usize) -> usize {
    base.checked_pow(slots as u32)
        .expect("search space too large to enumerate")
}

/// All Lie algebras of the given dimension whose structure constants are
/// drawn from `values`, abelian one included.
pub fn enumerate_lie_algebras(dim: usize, values: &[i64], exec: Exec) -> Vec<LieAlgebra> {
    let s = slots(dim);
    let total = candidate_count(values.len(), s.len());
    exec.map_range(total, |code| {
        let alg = LieAlgebra::from_table(decode(dim, code, values, &s)).expect("antisymmetric");
        alg.jacobi_defect().is_zero().then_some(alg)
    })
    .into_iter()
    .flatten()
    .collect()
}

/// All bialgebras with both brackets nonzero, constants drawn from `values`.
/// Ordered by (index of g, index of g*) among the enumerated Lie algebras.
pub fn nontrivial_bialgebras(dim: usize, values: &[i64], exec: Exec) -> Vec<LieBialgebra> {
    let algs: Vec<LieAlgebra> = enumerate_lie_algebras(dim, values, exec)
        .into_iter()
        .filter(|a| !a.is_abelian())
        .collect();
    let per_g = exec.map(&algs, |g| {
        algs.iter()
            .filter_map(|gs| {
                let bi = LieBialgebra::from_parts(g.clone(), gs.clone()).expect("same dim");
                bi.is_cocycle().then_some(bi)
            })
            .collect::<Vec<_>>()
    });
    per_g.into_iter().flatten().collect()
}

/// Smallest-dimension hits in `dims`, stopping at the first dimension that
/// has any.
pub fn first_nontrivial_bialgebras(dims: &[usize], values: &[i64], exec: Exec) -> Vec<LieBialgebra> {
    for &d in dims {
        let hits = nontrivial_bialgebras(d, values, exec);
        if !hits.is_empty() {
            return hits;
        }
    }
    Vec::new()
}

/// Position of the first bialgebra in `hits` that, under the identity
/// metric, is flat and metaflat with a nonzero pre-Poisson bracket.
pub fn first_flat_metaflat_with_bracket(hits: &[LieBialgebra]) -> Option<usize> {
    hits.iter().position(|bi| {
        let n = bi.dim();
        let a = MetricForm::identity(n);
        let Ok(conn) = levi_civita(bi.gstar(), &a) else {
            return false;
        };
        if !curvature(&conn, bi.gstar()).is_zero() {
            return false;
        }
        let Ok(cx) = InvariantComplex::new(bi.g().clone(), bi.gstar().clone(), conn) else {
            return false;
        };
        let bracket_nonzero = (0..n).any(|i| {
            (0..n).any(|j| {
                cx.pre_poisson(&Form::basis(n, i), &Form::basis(n, j))
                    .map(|f| !f.is_zero())
                    .unwrap_or(false)
            })
        });
        bracket_nonzero && cx.is_metaflat()
    })
}

/// All symmetric nondegenerate metrics with entries from `values` for which
/// `(bracket, m)` is a pseudo-Riemannian Lie algebra, in lexicographic order
/// of the upper-triangular entries.
pub fn prla_metrics(bracket: &LieAlgebra, values: &[i64], exec: Exec) -> Vec<MetricForm> {
    let n = bracket.dim();
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let total = candidate_count(values.len(), upper.len());
    let base = values.len();
    exec.map_range(total, |code| {
        let mut m = Tensor::zeros(&[n, n]);
        let mut rest = code;
        for &(i, j) in upper.iter().rev() {
            let v = int(values[rest % base]);
            rest /= base;
            m.set(&[i, j], v.clone());
            m.set(&[j, i], v);
        }
        let metric = MetricForm::new(m).ok()?;
        prla_defect(bracket, &metric)
            .ok()
            .filter(Tensor::is_zero)
            .map(|_| metric)
    })
    .into_iter()
    .flatten()
    .collect()
}
