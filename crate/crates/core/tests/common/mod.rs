#![allow(dead_code)]

use plie_core::exact::{int, ExactScalar, Tensor};
use plie_core::lie::{BracketEntry, LieAlgebra, LieBialgebra};
use plie_core::metric::MetricForm;
use proptest::prelude::*;

/// 1-based bracket table: `(i, j, [(k, c)])` means `[e_i, e_j] += c e_k`.
pub fn alg(n: usize, entries: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
    let entries: Vec<BracketEntry> = entries
        .iter()
        .map(|(i, j, out)| BracketEntry {
            i: i - 1,
            j: j - 1,
            out: out.iter().map(|&(k, v)| (k - 1, int(v))).collect(),
        })
        .collect();
    LieAlgebra::from_brackets(n, &entries).unwrap()
}

pub fn r3_lambda(l: i64) -> LieAlgebra {
    alg(3, &[(1, 2, &[(3, l)]), (1, 3, &[(2, -l)])])
}

pub fn so3() -> LieAlgebra {
    alg(3, &[(1, 2, &[(3, 1)]), (1, 3, &[(2, -1)]), (2, 3, &[(1, 1)])])
}

pub fn h3() -> LieAlgebra {
    alg(3, &[(1, 2, &[(3, 1)])])
}

pub fn nontrivial_g() -> LieAlgebra {
    alg(3, &[(1, 2, &[(1, -1)]), (2, 3, &[(3, 1)])])
}

pub fn nontrivial_gstar() -> LieAlgebra {
    alg(3, &[(1, 2, &[(3, -1)]), (2, 3, &[(1, -1)])])
}

pub fn matrix(n: usize, rows: &[i64]) -> Tensor {
    Tensor::from_vec(&[n, n], rows.iter().map(|&v| int(v)).collect()).unwrap()
}

/// Covariant metric on h3 found by the lexicographic {−1,0,1} search.
pub fn heisenberg_metric() -> MetricForm {
    MetricForm::new(matrix(3, &[-1, -1, -1, -1, -1, 0, -1, 0, 0])).unwrap()
}

pub struct Entry {
    pub name: &'static str,
    pub bi: LieBialgebra,
    pub a: MetricForm,
}

pub fn catalog() -> Vec<Entry> {
    let id = MetricForm::identity(3);
    vec![
        Entry {
            name: "r3-lambda",
            bi: LieBialgebra::new(LieAlgebra::abelian(3), r3_lambda(-1)).unwrap(),
            a: id.clone(),
        },
        Entry {
            name: "heisenberg",
            bi: LieBialgebra::new(h3(), LieAlgebra::abelian(3)).unwrap(),
            a: heisenberg_metric().contravariant_from_covariant(),
        },
        Entry {
            name: "so3-dual",
            bi: LieBialgebra::new(LieAlgebra::abelian(3), so3()).unwrap(),
            a: id.clone(),
        },
        Entry {
            name: "abelian-trivial",
            bi: LieBialgebra::new(LieAlgebra::abelian(3), LieAlgebra::abelian(3)).unwrap(),
            a: id.clone(),
        },
        Entry {
            name: "nontrivial-bi",
            bi: LieBialgebra::new(nontrivial_g(), nontrivial_gstar()).unwrap(),
            a: id,
        },
    ]
}

pub fn entry(name: &str) -> Entry {
    catalog().into_iter().find(|e| e.name == name).unwrap()
}

/// `R ⋉_M R^{n−1}`: `[e_1, e_j] = Σ_k M[k][j] e_k` for `j ≥ 2`. Lie for every `M`.
pub fn almost_abelian(n: usize, m: &[i64]) -> LieAlgebra {
    let mut c = Tensor::zeros(&[n, n, n]);
    for j in 1..n {
        for k in 1..n {
            let v = m[(k - 1) * (n - 1) + (j - 1)];
            if v != 0 {
                c.set(&[0, j, k], int(v));
                c.set(&[j, 0, k], int(-v));
            }
        }
    }
    LieAlgebra::from_table(c).unwrap()
}

pub fn symmetric(n: usize, upper: &[i64]) -> Tensor {
    let mut m = Tensor::zeros(&[n, n]);
    let mut it = upper.iter();
    for i in 0..n {
        for j in i..n {
            let v = int(*it.next().unwrap());
            m.set(&[i, j], v.clone());
            m.set(&[j, i], v);
        }
    }
    m
}

pub fn metric_strategy(n: usize) -> impl Strategy<Value = MetricForm> {
    proptest::collection::vec(-2i64..=2, n * (n + 1) / 2)
        .prop_filter_map("singular", move |u| MetricForm::new(symmetric(n, &u)).ok())
}

pub fn algebra_strategy(n: usize) -> impl Strategy<Value = LieAlgebra> {
    proptest::collection::vec(-2i64..=2, (n - 1) * (n - 1)).prop_map(move |m| almost_abelian(n, &m))
}

/// Abelian g with a random almost-abelian dual: always a bialgebra.
pub fn abelian_base_family() -> impl Strategy<Value = (LieBialgebra, MetricForm)> {
    (2usize..=3).prop_flat_map(|n| {
        (algebra_strategy(n), metric_strategy(n))
            .prop_map(move |(gs, a)| (LieBialgebra::new(LieAlgebra::abelian(n), gs).unwrap(), a))
    })
}

/// Random almost-abelian g with abelian dual: always a bialgebra.
pub fn abelian_dual_family() -> impl Strategy<Value = (LieBialgebra, MetricForm)> {
    (2usize..=3).prop_flat_map(|n| {
        (algebra_strategy(n), metric_strategy(n))
            .prop_map(move |(g, a)| (LieBialgebra::new(g, LieAlgebra::abelian(n)).unwrap(), a))
    })
}

pub fn families() -> impl Strategy<Value = (LieBialgebra, MetricForm)> {
    prop_oneof![abelian_base_family(), abelian_dual_family()]
}

pub fn unit(n: usize, i: usize) -> Vec<ExactScalar> {
    (0..n).map(|k| int((k == i) as i64)).collect()
}

pub fn vec_of(v: &[i64]) -> Vec<ExactScalar> {
    v.iter().map(|&x| int(x)).collect()
}
