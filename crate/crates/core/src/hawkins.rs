//! The Hawkins bracket calculus restricted to left-invariant forms `Λ(g*)`.
//!
//! `d` is the Chevalley–Eilenberg differential of `g`, the Koszul bracket of
//! invariant 1-forms is `[ , ]_{g*}`, and the connection acts on forms as a
//! derivation extending `A`. Constants are Casimirs at this level.

use num_traits::{One, Zero};

use crate::error::{CoreError, Result};
use crate::exact::{basis_monomials, ExactScalar, Form, Vector};
use crate::lie::{LieAlgebra, LieBialgebra};
use crate::metric::{levi_civita, Connection, MetricForm};

/// Base bracket (drives `d`), dual bracket (drives the Koszul bracket) and a
/// connection on the dual.
#[derive(Clone, Debug)]
pub struct InvariantComplex {
    base: LieAlgebra,
    dual: LieAlgebra,
    conn: Connection,
    /// `{e_i, e_j}` for basis 1-forms.
    pp: Vec<Vec<Form>>,
}

impl InvariantComplex {
    pub fn new(base: LieAlgebra, dual: LieAlgebra, conn: Connection) -> Result<Self> {
        if base.dim() != dual.dim() || dual.dim() != conn.dim() {
            return Err(CoreError::invalid(format!(
                "dimension mismatch: base {}, dual {}, connection {}",
                base.dim(),
                dual.dim(),
                conn.dim()
            )));
        }
        let mut cx = InvariantComplex {
            base,
            dual,
            conn,
            pp: Vec::new(),
        };
        let n = cx.dim();
        cx.pp = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| cx.pre_poisson_direct(&Form::basis(n, i), &Form::basis(n, j)))
                    .collect()
            })
            .collect();
        Ok(cx)
    }

    /// The complex of a bialgebra with the Levi-Civita connection of `a`.
    pub fn from_bialgebra(bi: &LieBialgebra, a: &MetricForm) -> Result<Self> {
        let conn = levi_civita(bi.gstar(), a)?;
        Self::new(bi.g().clone(), bi.gstar().clone(), conn)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn dual(&self) -> &LieAlgebra {
        &self.dual
    }

    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    fn check(&self, f: &Form) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(CoreError::invalid(format!(
                "form of dimension {} in a {}-dimensional complex",
                f.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    fn check_one_form(&self, f: &Form, what: &str) -> Result<()> {
        self.check(f)?;
        if !f.is_homogeneous_of(1) {
            return Err(CoreError::Unsupported(format!(
                "{what} needs a 1-form in the first slot"
            )));
        }
        Ok(())
    }

    /// Chevalley–Eilenberg differential: `de_k = −Σ_{a<b} c^k_{ab} e_a ∧ e_b`,
    /// extended as an antiderivation.
    pub fn d(&self, f: &Form) -> Form {
        let n = self.dim();
        let images: Vec<Form> = (0..n)
            .map(|k| {
                let mut out = Form::zero(n);
                for a in 0..n {
                    for b in a + 1..n {
                        let c = self.base.structure_constant(a, b, k);
                        if !c.is_zero() {
                            out.add_scaled(&Form::monomial(n, &[a, b], -c.clone()).expect("in range"), &one());
                        }
                    }
                }
                out
            })
            .collect();
        f.map_terms(|t| derivation_on(n, t, |i| images[i].clone(), true))
    }

    /// Generalized Koszul bracket `[α, s]` for a 1-form `α`.
    pub fn koszul(&self, alpha: &Form, s: &Form) -> Result<Form> {
        self.check_one_form(alpha, "the Koszul bracket")?;
        self.check(s)?;
        let a = alpha.as_covector()?;
        let n = self.dim();
        Ok(s.map_terms(|t| {
            derivation_on(n, t, |i| Form::from_covector(&self.dual.bracket_unchecked(&a, &unit_vec(n, i))), false)
        }))
    }

    /// `D_α` extended to forms as a derivation.
    pub fn connection_extend(&self, alpha: &Form, s: &Form) -> Result<Form> {
        self.check_one_form(alpha, "the connection")?;
        self.check(s)?;
        let a = alpha.as_covector()?;
        Ok(self.covariant(&a, s))
    }

    fn covariant(&self, a: &[ExactScalar], s: &Form) -> Form {
        let n = self.dim();
        s.map_terms(|t| derivation_on(n, t, |i| Form::from_covector(&self.conn.apply(a, &unit_vec(n, i))), false))
    }

    /// `{α,β} = −D_α dβ − D_β dα + d D_β α + [α, dβ]`, evaluated directly.
    fn pre_poisson_direct(&self, alpha: &Form, beta: &Form) -> Form {
        let a = alpha.as_covector().expect("1-form");
        let b = beta.as_covector().expect("1-form");
        let mut out = Form::zero(self.dim());
        let m1 = -one();
        out.add_scaled(&self.covariant(&a, &self.d(beta)), &m1);
        out.add_scaled(&self.covariant(&b, &self.d(alpha)), &m1);
        out.add_scaled(&self.d(&Form::from_covector(&self.conn.apply(&b, &a))), &one());
        out.add_scaled(&self.koszul(alpha, &self.d(beta)).expect("1-form"), &one());
        out
    }

    /// Pre-Poisson bracket of two 1-forms.
    pub fn pre_poisson(&self, alpha: &Form, beta: &Form) -> Result<Form> {
        self.check_one_form(alpha, "the pre-Poisson bracket")?;
        self.check_one_form(beta, "the pre-Poisson bracket")?;
        Ok(self.pre_poisson_table(&alpha.as_covector()?, &beta.as_covector()?))
    }

    fn pre_poisson_table(&self, a: &[ExactScalar], b: &[ExactScalar]) -> Form {
        let mut out = Form::zero(self.dim());
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                out.add_scaled(&self.pp[i][j], &(ai * bj));
            }
        }
        out
    }

    /// The graded bracket generated from the pre-Poisson bracket on 1-forms
    /// by the product rule and graded antisymmetry; zero on constants.
    pub fn bracket(&self, s: &Form, u: &Form) -> Form {
        let n = self.dim();
        let mut out = Form::zero(n);
        for (ts, cs) in s.terms() {
            for (tu, cu) in u.terms() {
                out.add_scaled(&self.bracket_mono(ts, tu), &(cs * cu));
            }
        }
        out
    }

    fn bracket_mono(&self, s: &[usize], u: &[usize]) -> Form {
        let n = self.dim();
        let (p, q) = (s.len(), u.len());
        if p == 0 || q == 0 {
            return Form::zero(n);
        }
        if p == 1 && q == 1 {
            return self.pp[s[0]][u[0]].clone();
        }
        if q == 1 {
            let flipped = self.bracket_mono(u, s);
            return if p % 2 == 0 { flipped.neg() } else { flipped };
        }
        // {s, e ∧ rest} = {s, e} ∧ rest + (−1)^p e ∧ {s, rest}
        let head = Form::basis(n, u[0]);
        let rest = Form::monomial(n, &u[1..], one()).expect("in range");
        let mut out = self.bracket_mono(s, &u[..1]).wedge(&rest).expect("same dim");
        let tail = head.wedge(&self.bracket_mono(s, &u[1..])).expect("same dim");
        out.add_scaled(&tail, &if p % 2 == 0 { one() } else { -one() });
        out
    }

    /// `M(γ; α, β) = D_γ{α,β} − {D_γα, β} − {D_γβ, α}` for 1-forms.
    pub fn metacurvature_at(&self, gamma: &Form, alpha: &Form, beta: &Form) -> Result<Form> {
        for f in [gamma, alpha, beta] {
            self.check_one_form(f, "the metacurvature")?;
        }
        let (g, a, b) = (gamma.as_covector()?, alpha.as_covector()?, beta.as_covector()?);
        Ok(self.meta_vec(&g, &a, &b))
    }

    fn meta_vec(&self, g: &[ExactScalar], a: &[ExactScalar], b: &[ExactScalar]) -> Form {
        let mut out = self.covariant(g, &self.pre_poisson_table(a, b));
        let ga = self.conn.apply(g, a);
        let gb = self.conn.apply(g, b);
        out.add_scaled(&self.pre_poisson_table(&ga, b), &-one());
        out.add_scaled(&self.pre_poisson_table(&gb, a), &-one());
        out
    }

    /// All basis values of the metacurvature.
    pub fn metacurvature(&self) -> MetaTensor {
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entries.push(self.meta_vec(&unit_vec(n, i), &unit_vec(n, j), &unit_vec(n, k)));
                }
            }
        }
        MetaTensor { dim: n, entries }
    }

    pub fn is_metaflat(&self) -> bool {
        self.metacurvature().is_zero()
    }

    /// Jacobi defect with a function `f` in the first slot, `df = γ`:
    /// `D_γ{α,β} − {D_γα, β} − {α, D_γβ}`.
    pub fn function_slot_jacobi(&self, gamma: &Form, alpha: &Form, beta: &Form) -> Result<Form> {
        for f in [gamma, alpha, beta] {
            self.check_one_form(f, "the function-slot Jacobi defect")?;
        }
        let (g, a, b) = (gamma.as_covector()?, alpha.as_covector()?, beta.as_covector()?);
        let mut out = self.covariant(&g, &self.pre_poisson_table(&a, &b));
        out.add_scaled(&self.pre_poisson_table(&self.conn.apply(&g, &a), &b), &-one());
        out.add_scaled(&self.pre_poisson_table(&a, &self.conn.apply(&g, &b)), &-one());
        Ok(out)
    }

    /// `{σ,{υ,ν}} − {{σ,υ},ν} − (−1)^{|σ||υ|}{υ,{σ,ν}}`, extended trilinearly
    /// over homogeneous parts.
    pub fn graded_jacobi_defect(&self, s: &Form, u: &Form, v: &Form) -> Form {
        let n = self.dim();
        let mut out = Form::zero(n);
        for p in 0..=n {
            let sp = s.homogeneous_part(p);
            if sp.is_zero() {
                continue;
            }
            for q in 0..=n {
                let uq = u.homogeneous_part(q);
                if uq.is_zero() {
                    continue;
                }
                out.add_scaled(&self.bracket(&sp, &self.bracket(&uq, v)), &one());
                out.add_scaled(&self.bracket(&self.bracket(&sp, &uq), v), &-one());
                let sign = if (p * q) % 2 == 0 { -one() } else { one() };
                out.add_scaled(&self.bracket(&uq, &self.bracket(&sp, v)), &sign);
            }
        }
        out
    }

    /// First triple of nonconstant basis monomials with total degree at most
    /// `max_total` whose graded Jacobi defect is nonzero.
    pub fn jacobi_sweep(&self, max_total: usize) -> Option<(Form, Form, Form)> {
        let mons: Vec<(usize, Form)> = basis_monomials(self.dim(), max_total)
            .into_iter()
            .filter_map(|f| f.degree().filter(|&d| d > 0).map(|d| (d, f)))
            .collect();
        for (p, s) in &mons {
            for (q, u) in &mons {
                for (r, v) in &mons {
                    if p + q + r <= max_total && !self.graded_jacobi_defect(s, u, v).is_zero() {
                        return Some((s.clone(), u.clone(), v.clone()));
                    }
                }
            }
        }
        None
    }

    /// First basis pair `(i, j)` with `{e_i, e_j} ≠ {e_j, e_i}`.
    pub fn bracket_asymmetry(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.pp[i][j] != self.pp[j][i])
    }
}

fn one() -> ExactScalar {
    ExactScalar::one()
}

fn unit_vec(n: usize, i: usize) -> Vector {
    crate::exact::unit(n, i)
}

/// Apply a (anti)derivation to one monomial given the images of the basis
/// 1-forms. With `odd`, the term at position `r` carries `(−1)^r`.
fn derivation_on(n: usize, t: &[usize], image: impl Fn(usize) -> Form, odd: bool) -> Form {
    let mut out = Form::zero(n);
    for r in 0..t.len() {
        let img = image(t[r]);
        if img.is_zero() {
            continue;
        }
        let left = Form::monomial(n, &t[..r], one()).expect("in range");
        let right = Form::monomial(n, &t[r + 1..], one()).expect("in range");
        let term = left
            .wedge(&img)
            .and_then(|x| x.wedge(&right))
            .expect("same dim");
        let sign = if odd && r % 2 == 1 { -one() } else { one() };
        out.add_scaled(&term, &sign);
    }
    out
}

/// Metacurvature values `M(e_i; e_j, e_k)`, each a 2-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaTensor {
    dim: usize,
    entries: Vec<Form>,
}

impl MetaTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Form {
        &self.entries[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// Entries as a rank-5 tensor: `(i, j, k, a, b)` is `M(e_i; e_j, e_k)(e_a, e_b)`.
    pub fn to_tensor(&self) -> crate::exact::Tensor {
        let n = self.dim;
        crate::exact::Tensor::from_fn(&[n, n, n, n, n], |ix| {
            self.get(ix[0], ix[1], ix[2]).coefficient(&ix[3..5])
        })
    }

    /// First entry that breaks symmetry in the last two slots.
    pub fn symmetry_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    if self.get(i, j, k) != self.get(i, k, j) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

/// Vertical lift into the doubled basis: `e_i ↦ e_i`.
pub fn vertical_lift(f: &Form) -> Form {
    let n = f.dim();
    f.map_terms_into(2 * n, |t| Form::monomial(2 * n, t, one()).expect("in range"))
}

/// Complete lift into the doubled basis: `e_i ↦ e_{n+i}` on 1-forms,
/// `(μ∧ν)^c = μ^c∧ν^v + μ^v∧ν^c`, constants to zero.
pub fn complete_lift(f: &Form) -> Form {
    let n = f.dim();
    f.map_terms_into(2 * n, |t| {
        let mut out = Form::zero(2 * n);
        for r in 0..t.len() {
            let mut idx = t.to_vec();
            idx[r] += n;
            out.add_scaled(&Form::monomial(2 * n, &idx, one()).expect("in range"), &one());
        }
        out
    })
}

/// The form on the double that the pair `(ω1, ω2)` stands for: `ω1^v + ω2^c`.
pub fn pair_form(first: &Form, second: &Form) -> Result<Form> {
    vertical_lift(first).add(&complete_lift(second))
}

pub fn ce_differential(cx: &InvariantComplex, f: &Form) -> Form {
    cx.d(f)
}

pub fn koszul_bracket(cx: &InvariantComplex, alpha: &Form, s: &Form) -> Result<Form> {
    cx.koszul(alpha, s)
}

pub fn connection_extend(cx: &InvariantComplex, alpha: &Form, s: &Form) -> Result<Form> {
    cx.connection_extend(alpha, s)
}

pub fn pre_poisson_bracket(cx: &InvariantComplex, alpha: &Form, beta: &Form) -> Result<Form> {
    cx.pre_poisson(alpha, beta)
}

pub fn graded_bracket(cx: &InvariantComplex, s: &Form, u: &Form) -> Form {
    cx.bracket(s, u)
}

pub fn metacurvature(cx: &InvariantComplex) -> MetaTensor {
    cx.metacurvature()
}

pub fn graded_jacobi_defect(cx: &InvariantComplex, s: &Form, u: &Form, v: &Form) -> Form {
    cx.graded_jacobi_defect(s, u, v)
}

pub fn is_metaflat(cx: &InvariantComplex) -> bool {
    cx.is_metaflat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{basis_monomials, int};
    use crate::lie::BracketEntry;

    fn alg(n: usize, e: &[(usize, usize, &[(usize, i64)])]) -> LieAlgebra {
        let entries: Vec<BracketEntry> = e
            .iter()
            .map(|(i, j, out)| BracketEntry {
                i: i - 1,
                j: j - 1,
                out: out.iter().map(|&(k, v)| (k - 1, int(v))).collect(),
            })
            .collect();
        LieAlgebra::from_brackets(n, &entries).unwrap()
    }

    fn h3() -> LieAlgebra {
        alg(3, &[(1, 2, &[(3, 1)])])
    }

    fn r3() -> LieAlgebra {
        alg(3, &[(1, 2, &[(3, -1)]), (1, 3, &[(2, 1)])])
    }

    fn e(i: usize) -> Form {
        Form::basis(3, i - 1)
    }

    fn cx(base: LieAlgebra, dual: LieAlgebra) -> InvariantComplex {
        let bi = LieBialgebra::new(base, dual).unwrap();
        InvariantComplex::from_bialgebra(&bi, &MetricForm::identity(3)).unwrap()
    }

    #[test]
    fn heisenberg_differential() {
        let c = cx(h3(), LieAlgebra::abelian(3));
        let expect = Form::monomial(3, &[0, 1], int(-1)).unwrap();
        assert_eq!(c.d(&e(3)), expect);
        for f in basis_monomials(3, 3) {
            assert!(c.d(&c.d(&f)).is_zero(), "d∘d on {f}");
        }
        let ab = cx(LieAlgebra::abelian(3), r3());
        assert!(basis_monomials(3, 3).iter().all(|f| ab.d(f).is_zero()));
    }

    #[test]
    fn koszul_and_connection_on_r3() {
        let c = cx(LieAlgebra::abelian(3), r3());
        let e23 = e(2).wedge(&e(3)).unwrap();
        assert!(c.koszul(&e(1), &e23).unwrap().is_zero());
        assert!(c.connection_extend(&e(1), &e23).unwrap().is_zero());
        assert_eq!(c.koszul(&e(1), &e(2)).unwrap(), e(3).scale(&int(-1)));
        assert!(c.connection_extend(&e(1), &Form::constant(3, int(5))).unwrap().is_zero());
        assert!(matches!(c.koszul(&e23, &e(1)), Err(CoreError::Unsupported(_))));
    }

    #[test]
    fn vanishing_brackets_on_one_sided_entries() {
        for c in [cx(LieAlgebra::abelian(3), r3()), cx(h3(), LieAlgebra::abelian(3))] {
            for i in 1..=3 {
                for j in 1..=3 {
                    assert!(c.pre_poisson(&e(i), &e(j)).unwrap().is_zero());
                }
            }
            assert!(c.is_metaflat());
        }
    }

    #[test]
    fn bracket_generation_rules() {
        let c = cx(LieAlgebra::abelian(3), r3());
        assert!(c.bracket(&Form::constant(3, int(1)), &e(1)).is_zero());
        let lhs = c.bracket(&e(1), &e(2).wedge(&e(3)).unwrap());
        let rhs = c
            .bracket(&e(1), &e(2))
            .wedge(&e(3))
            .unwrap()
            .add(&e(2).wedge(&c.bracket(&e(1), &e(3))).unwrap().neg())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lifts() {
        let f = e(1).wedge(&e(2)).unwrap();
        let v = vertical_lift(&f);
        assert_eq!(v.coefficient(&[0, 1]), int(1));
        let c = complete_lift(&f);
        assert_eq!(c.coefficient(&[3, 1]), int(1));
        assert_eq!(c.coefficient(&[0, 4]), int(1));
        assert!(complete_lift(&Form::constant(3, int(2))).is_zero());
        assert_eq!(pair_form(&e(1), &e(1)).unwrap().terms().count(), 2);
    }
}
