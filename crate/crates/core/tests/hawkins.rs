mod common;

use common::*;
use plie_core::exact::{basis_monomials, int, ExactScalar, Form, Tensor};
use plie_core::hawkins::*;
use plie_core::lie::{LieAlgebra, LieBialgebra};
use plie_core::metric::{curvature, levi_civita, Connection, MetricForm};
use proptest::prelude::*;

type V = Vec<ExactScalar>;

fn mat(n: usize, f: impl Fn(usize, usize) -> ExactScalar) -> Tensor {
    Tensor::from_fn(&[n, n], |ix| f(ix[0], ix[1]))
}

/// `(dβ)(e_a, e_b) = −β([e_a, e_b])`.
fn d1(g: &LieAlgebra, beta: &[ExactScalar]) -> Tensor {
    let n = g.dim();
    mat(n, |a, b| -g.bracket_basis(a, b).iter().zip(beta).map(|(x, y)| x * y).sum::<ExactScalar>())
}

/// Derivation acting on a 2-form matrix through its action `G[a][m]` on 1-forms.
fn act(gm: &Tensor, m: &Tensor) -> Tensor {
    gm.transpose().unwrap().mat_mul(m).unwrap().add(&m.mat_mul(gm).unwrap()).unwrap()
}

fn conn_mat(conn: &Connection, alpha: &[ExactScalar]) -> Tensor {
    let n = alpha.len();
    mat(n, |a, m| conn.apply(alpha, &unit(n, a))[m].clone())
}

fn koszul_mat(gs: &LieAlgebra, alpha: &[ExactScalar]) -> Tensor {
    let n = alpha.len();
    mat(n, |a, m| gs.bracket(alpha, &unit(n, a)).unwrap()[m].clone())
}

struct Oracle<'a> {
    g: &'a LieAlgebra,
    gs: &'a LieAlgebra,
    conn: &'a Connection,
}

impl Oracle<'_> {
    /// `−D_α dβ − D_β dα + d D_β α + [α, dβ]` with every term as a matrix.
    fn pp(&self, al: &[ExactScalar], be: &[ExactScalar]) -> Tensor {
        let da = d1(self.g, al);
        let db = d1(self.g, be);
        let t1 = act(&conn_mat(self.conn, al), &db);
        let t2 = act(&conn_mat(self.conn, be), &da);
        let t3 = d1(self.g, &self.conn.apply(be, al));
        let t4 = act(&koszul_mat(self.gs, al), &db);
        t3.add(&t4).unwrap().sub(&t1).unwrap().sub(&t2).unwrap()
    }

    /// `D_γ{α,β} − {D_γα, β} − {D_γβ, α}`.
    fn meta(&self, ga: &[ExactScalar], al: &[ExactScalar], be: &[ExactScalar]) -> Tensor {
        let first = act(&conn_mat(self.conn, ga), &self.pp(al, be));
        let second = self.pp(&self.conn.apply(ga, al), be);
        let third = self.pp(&self.conn.apply(ga, be), al);
        first.sub(&second).unwrap().sub(&third).unwrap()
    }
}

fn complex(bi: &LieBialgebra, a: &MetricForm) -> InvariantComplex {
    InvariantComplex::from_bialgebra(bi, a).unwrap()
}

fn assert_oracles(bi: &LieBialgebra, a: &MetricForm) -> bool {
    let n = bi.dim();
    let cx = complex(bi, a);
    let conn = levi_civita(bi.gstar(), a).unwrap();
    let o = Oracle { g: bi.g(), gs: bi.gstar(), conn: &conn };
    let meta = cx.metacurvature();
    let mut nonzero = false;
    for i in 0..n {
        for j in 0..n {
            let got = cx.pre_poisson(&Form::basis(n, i), &Form::basis(n, j)).unwrap();
            assert_eq!(got.to_matrix().unwrap(), o.pp(&unit(n, i), &unit(n, j)));
            nonzero |= !got.is_zero();
            for k in 0..n {
                let m = meta.get(i, j, k);
                assert_eq!(m.to_matrix().unwrap(), o.meta(&unit(n, i), &unit(n, j), &unit(n, k)));
                assert_eq!(m, meta.get(i, k, j));
            }
        }
    }
    assert_eq!(cx.is_metaflat(), meta.is_zero());
    nonzero
}

fn is_flat(bi: &LieBialgebra, a: &MetricForm) -> bool {
    curvature(&levi_civita(bi.gstar(), a).unwrap(), bi.gstar()).is_zero()
}

fn deg(f: &Form) -> usize {
    f.degree().unwrap_or(0)
}

fn sign(k: usize) -> ExactScalar {
    int(if k % 2 == 0 { 1 } else { -1 })
}

/// Hawkins axioms 1–3 over basis monomials; returns the number of checks.
fn assert_axioms(cx: &InvariantComplex, max_degree: usize) -> usize {
    let n = cx.dim();
    let mons = basis_monomials(n, max_degree);
    let mut checks = 0;
    for s in &mons {
        for u in &mons {
            let (p, q) = (deg(s), deg(u));
            let su = cx.bracket(s, u);
            // antisymmetry
            let us = cx.bracket(u, s).scale(&-sign(p * q));
            assert_eq!(su, us, "antisymmetry {s:?} {u:?}");
            // d is a derivation
            let lhs = cx.d(&su);
            let rhs = cx.bracket(&cx.d(s), u).add(&cx.bracket(s, &cx.d(u)).scale(&sign(p))).unwrap();
            assert_eq!(lhs, rhs, "d-derivation {s:?} {u:?}");
            checks += 2;
            // product rule
            for v in &mons {
                if p + q + deg(v) > n {
                    continue;
                }
                let lhs = cx.bracket(s, &u.wedge(v).unwrap());
                let rhs = su
                    .wedge(v)
                    .unwrap()
                    .add(&u.wedge(&cx.bracket(s, v)).unwrap().scale(&sign(p * q)))
                    .unwrap();
                assert_eq!(lhs, rhs, "product rule {s:?} {u:?} {v:?}");
                checks += 1;
            }
        }
    }
    checks
}

/// Graded Jacobi over basis triples of total degree ≤ 4.
fn assert_jacobi(cx: &InvariantComplex) -> usize {
    let n = cx.dim();
    let mons = basis_monomials(n, 4);
    let mut checks = 0;
    for s in &mons {
        for u in &mons {
            for v in &mons {
                if deg(s) + deg(u) + deg(v) > 4 {
                    continue;
                }
                assert!(cx.graded_jacobi_defect(s, u, v).is_zero(), "{s:?} {u:?} {v:?}");
                checks += 1;
            }
        }
    }
    checks
}

#[test]
fn d_squares_to_zero_on_catalog() {
    for e in catalog() {
        for cx in [complex(&e.bi, &e.a), complex(&e.bi.tangent().unwrap(), &e.a.complete_lift())] {
            for f in basis_monomials(cx.dim(), cx.dim()) {
                assert!(cx.d(&cx.d(&f)).is_zero(), "{}", e.name);
            }
        }
    }
}

#[test]
fn derived_examples() {
    // h3 as base: d(e3) = −e1∧e2
    let cx = complex(&entry("heisenberg").bi, &MetricForm::identity(3));
    let e = |i: usize| Form::basis(3, i - 1);
    assert_eq!(cx.d(&e(3)), e(1).wedge(&e(2)).unwrap().neg());
    // r3-lambda: [e1, e2∧e3] = 0 and D_{e1}(e2∧e3) = 0
    let r3 = entry("r3-lambda");
    let cx = complex(&r3.bi, &r3.a);
    let e23 = e(2).wedge(&e(3)).unwrap();
    assert!(cx.koszul(&e(1), &e23).unwrap().is_zero());
    assert!(cx.connection_extend(&e(1), &e23).unwrap().is_zero());
    assert_eq!(cx.koszul(&e(1), &e(2)).unwrap(), e(3).neg());
    assert!(cx.koszul(&e23, &e(1)).is_err());
    // constants are Casimirs
    let one = Form::constant(3, int(1));
    assert!(cx.bracket(&one, &e23).is_zero());
}

#[test]
fn catalog_brackets_match_oracle() {
    for e in catalog() {
        let nonzero = assert_oracles(&e.bi, &e.a);
        assert_eq!(nonzero, e.name == "nontrivial-bi", "{}", e.name);
    }
    let e = entry("nontrivial-bi");
    assert!(assert_oracles(&e.bi.tangent().unwrap(), &e.a.complete_lift()));
}

#[test]
fn one_sided_entries_have_zero_brackets() {
    for name in ["r3-lambda", "so3-dual", "heisenberg", "abelian-trivial"] {
        let e = entry(name);
        let cx = complex(&e.bi, &e.a);
        for s in basis_monomials(3, 3) {
            for u in basis_monomials(3, 3) {
                assert!(cx.bracket(&s, &u).is_zero());
            }
        }
        assert!(cx.is_metaflat());
    }
}

#[test]
fn axioms_on_flat_entries() {
    let mut checks = 0;
    for e in catalog() {
        if !is_flat(&e.bi, &e.a) {
            assert_eq!(e.name, "so3-dual");
            continue;
        }
        checks += assert_axioms(&complex(&e.bi, &e.a), 3);
    }
    let e = entry("nontrivial-bi");
    checks += assert_axioms(&complex(&e.bi.tangent().unwrap(), &e.a.complete_lift()), 2);
    assert!(checks >= 100);
}

#[test]
fn jacobi_on_metaflat_entries() {
    let mut checks = 0;
    for e in catalog() {
        let cx = complex(&e.bi, &e.a);
        if cx.is_metaflat() {
            checks += assert_jacobi(&cx);
        }
    }
    assert!(checks >= 100);
}

#[test]
fn jacobi_on_nontrivial_double() {
    let e = entry("nontrivial-bi");
    let cx = complex(&e.bi.tangent().unwrap(), &e.a.complete_lift());
    assert!(cx.is_metaflat());
    let n = cx.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b, c) = (Form::basis(n, i), Form::basis(n, j), Form::basis(n, k));
                assert!(cx.graded_jacobi_defect(&a, &b, &c).is_zero());
            }
        }
    }
}

#[test]
fn function_slot_matches_metacurvature() {
    for e in catalog() {
        let cx = complex(&e.bi, &e.a);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let (g, a, b) = (Form::basis(3, i), Form::basis(3, j), Form::basis(3, k));
                    assert_eq!(
                        cx.function_slot_jacobi(&g, &a, &b).unwrap(),
                        cx.metacurvature_at(&g, &a, &b).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn lifts_are_block_embeddings() {
    let e = |i: usize| Form::basis(3, i);
    let w = e(0).wedge(&e(2)).unwrap();
    assert_eq!(vertical_lift(&w), Form::basis(6, 0).wedge(&Form::basis(6, 2)).unwrap());
    // complete lift is a derivation: (e1∧e3)^c = e1'∧e3 + e1∧e3'
    let expect = Form::basis(6, 3)
        .wedge(&Form::basis(6, 2))
        .unwrap()
        .add(&Form::basis(6, 0).wedge(&Form::basis(6, 5)).unwrap())
        .unwrap();
    assert_eq!(complete_lift(&w), expect);
    assert!(complete_lift(&Form::constant(3, int(2))).is_zero());
}

fn covector(n: usize) -> impl Strategy<Value = V> {
    proptest::collection::vec(-2i64..=2, n).prop_map(|v| vec_of(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_brackets((bi, a) in families()) {
        assert_oracles(&bi, &a);
        let cx = complex(&bi, &a);
        let n = cx.dim();
        for f in basis_monomials(n, n) {
            prop_assert!(cx.d(&cx.d(&f)).is_zero());
        }
        prop_assert!(cx.metacurvature().symmetry_violation().is_none());
    }

    #[test]
    fn bracket_bilinear_on_nontrivial(x in covector(3), y in covector(3), z in covector(3)) {
        let e = entry("nontrivial-bi");
        let cx = complex(&e.bi, &e.a);
        let (fx, fy, fz) = (Form::from_covector(&x), Form::from_covector(&y), Form::from_covector(&z));
        let lhs = cx.pre_poisson(&fx, &fy.add(&fz).unwrap()).unwrap();
        let rhs = cx.pre_poisson(&fx, &fy).unwrap().add(&cx.pre_poisson(&fx, &fz).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(cx.bracket(&fx, &fy), cx.pre_poisson(&fx, &fy).unwrap());
        prop_assert_eq!(cx.pre_poisson(&fx, &fy).unwrap(), cx.pre_poisson(&fy, &fx).unwrap());
    }
}

#[test]
fn library_sweeps_agree() {
    for e in catalog() {
        let cx = complex(&e.bi, &e.a);
        assert!(cx.jacobi_sweep(4).is_none(), "{}", e.name);
        assert!(cx.bracket_asymmetry().is_none(), "{}", e.name);
    }
    let e = entry("nontrivial-bi");
    let cx = complex(&e.bi.tangent().unwrap(), &e.a.complete_lift());
    assert!(cx.jacobi_sweep(4).is_none());
}
