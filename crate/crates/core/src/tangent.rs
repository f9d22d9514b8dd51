//! Componentwise verification of the tangent-double identities.
//!
//! Each check evaluates one side on the double (built with the semidirect
//! brackets, the lifted metric and the generic solver) and the other side from
//! the pair formula in terms of the base data, then compares exactly.

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::exact::{axpy, zero_vec, ExactScalar, Form, Tensor, Vector};
use crate::exec::Exec;
use crate::hawkins::{pair_form, InvariantComplex};
use crate::lie::{LieAlgebra, LieBialgebra};
use crate::metric::{
    curvature, levi_civita, nabla_curvature, prla_defect, prpl_abelian_base_check, Connection,
    MetricForm,
};

const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

/// A basis tuple (1-based) where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub label: String,
    pub index: Vec<usize>,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

/// A yes/no property evaluated on the base and on the double.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictPair {
    pub name: String,
    pub base: bool,
    pub double: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub statement: String,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub lhs: Tensor,
    pub rhs: Tensor,
    pub verdicts: Vec<VerdictPair>,
}

impl VerificationReport {
    fn build(statement: &str, lhs: Tensor, rhs: Tensor, mut witnesses: Vec<Witness>, verdicts: Vec<VerdictPair>) -> Self {
        witnesses.extend(diff(&lhs, &rhs, "lhs-vs-rhs"));
        witnesses.truncate(MAX_WITNESSES);
        for (k, v) in verdicts.iter().enumerate() {
            if v.base != v.double && witnesses.len() < MAX_WITNESSES {
                witnesses.push(Witness {
                    label: format!("verdict:{}", v.name),
                    index: vec![k + 1],
                    lhs: flag(v.base),
                    rhs: flag(v.double),
                });
            }
        }
        let status = if witnesses.is_empty() { Status::Pass } else { Status::Fail };
        VerificationReport {
            statement: statement.to_string(),
            status,
            witnesses,
            lhs,
            rhs,
            verdicts,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// True when both compared sides are identically zero.
    pub fn trivially_zero(&self) -> bool {
        self.lhs.is_zero() && self.rhs.is_zero()
    }
}

fn flag(b: bool) -> ExactScalar {
    if b {
        ExactScalar::from_integer(1.into())
    } else {
        ExactScalar::zero()
    }
}

fn diff(lhs: &Tensor, rhs: &Tensor, label: &str) -> Vec<Witness> {
    if lhs.shape() != rhs.shape() {
        return vec![Witness {
            label: format!("{label}:shape"),
            index: Vec::new(),
            lhs: ExactScalar::from_integer((lhs.entries().len() as i64).into()),
            rhs: ExactScalar::from_integer((rhs.entries().len() as i64).into()),
        }];
    }
    let mut out = Vec::new();
    for (ix, (a, b)) in crate::exact::tensor::multi_indices(lhs.shape()).zip(lhs.entries().iter().zip(rhs.entries())) {
        if a != b {
            out.push(Witness {
                label: label.to_string(),
                index: ix.iter().map(|i| i + 1).collect(),
                lhs: a.clone(),
                rhs: b.clone(),
            });
            if out.len() >= MAX_WITNESSES {
                break;
            }
        }
    }
    out
}

/// Components of double basis element `I` as `(first, second)`.
fn split(n: usize, i: usize) -> (Vector, Vector) {
    let mut first = zero_vec(n);
    let mut second = zero_vec(n);
    if i < n {
        first[i] = ExactScalar::from_integer(1.into());
    } else {
        second[i - n] = ExactScalar::from_integer(1.into());
    }
    (first, second)
}

fn join(first: &[ExactScalar], second: &[ExactScalar]) -> Vector {
    first.iter().chain(second).cloned().collect()
}

fn sum(parts: &[Vector]) -> Vector {
    let mut out = zero_vec(parts[0].len());
    let one = ExactScalar::from_integer(1.into());
    for p in parts {
        axpy(&mut out, &one, p);
    }
    out
}

/// Collect vector values indexed by `rank` double-basis slots into a tensor
/// of shape `[2n; rank + 1]`.
fn tabulate(m: usize, rank: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Tensor {
    let mut shape = vec![m; rank];
    let mut data = Vec::with_capacity(m.pow(rank as u32 + 1));
    for ix in crate::exact::tensor::multi_indices(&shape.clone()) {
        data.extend(f(&ix));
    }
    shape.push(m);
    Tensor::from_vec(&shape, data).expect("consistent size")
}

/// Same, for 2-form values flattened as `(a, b)` matrices.
fn tabulate_forms(m: usize, rank: usize, mut f: impl FnMut(&[usize]) -> Form) -> Tensor {
    let mut shape = vec![m; rank];
    let mut data = Vec::with_capacity(m.pow(rank as u32 + 2));
    for ix in crate::exact::tensor::multi_indices(&shape.clone()) {
        let form = f(&ix);
        data.extend(form.to_matrix().expect("2-form").into_entries());
    }
    shape.push(m);
    shape.push(m);
    Tensor::from_vec(&shape, data).expect("consistent size")
}

/// Applies a tensor `t[i0]..[ik][l]` multilinearly to `args`.
fn multilinear(t: &Tensor, args: &[&[ExactScalar]]) -> Vector {
    let n = *t.shape().last().expect("nonempty shape");
    let mut out = zero_vec(n);
    let supports: Vec<Vec<(usize, &ExactScalar)>> = args
        .iter()
        .map(|v| v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    let mut idx = vec![0usize; args.len() + 1];
    let mut rec_stack: Vec<usize> = vec![0; args.len()];
    // iterate over the cartesian product of supports
    if supports.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let mut coef = ExactScalar::from_integer(1.into());
        for (slot, &pos) in rec_stack.iter().enumerate() {
            let (i, c) = supports[slot][pos];
            idx[slot] = i;
            coef *= c;
        }
        for (l, o) in out.iter_mut().enumerate() {
            idx[args.len()] = l;
            let v = t.get(&idx);
            if !v.is_zero() {
                *o += &coef * v;
            }
        }
        let mut slot = args.len();
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            rec_stack[slot] += 1;
            if rec_stack[slot] < supports[slot].len() {
                break;
            }
            rec_stack[slot] = 0;
        }
    }
}

struct Doubled {
    n: usize,
    base_conn: Connection,
    double_conn: Connection,
    double_gstar: LieAlgebra,
}

fn doubled(bi: &LieBialgebra, a: &MetricForm) -> Result<Doubled> {
    let n = bi.dim();
    let base_conn = levi_civita(bi.gstar(), a)?;
    let double_gstar = bi.gstar().dual_semidirect_double();
    let double_conn = levi_civita(&double_gstar, &a.complete_lift())?;
    Ok(Doubled {
        n,
        base_conn,
        double_conn,
        double_gstar,
    })
}

/// Connection on the double against `(A_αβ' + A_βα', A_ββ')`.
pub fn verify_tangent_connection(bi: &LieBialgebra, a: &MetricForm) -> Result<VerificationReport> {
    let d = doubled(bi, a)?;
    let n = d.n;
    let lhs = d.double_conn.coefficients().clone();
    let c = &d.base_conn;
    let rhs = tabulate(2 * n, 2, |ix| {
        let (al, be) = split(n, ix[0]);
        let (al1, be1) = split(n, ix[1]);
        join(&sum(&[c.apply(&al, &be1), c.apply(&be, &al1)]), &c.apply(&be, &be1))
    });
    Ok(VerificationReport::build("tangent_connection", lhs, rhs, Vec::new(), Vec::new()))
}

/// Curvature on the double against
/// `(R(α,β')β'' + R(β,α')β'' + R(β,β')α'', R(β,β')β'')`.
pub fn verify_tangent_curvature(bi: &LieBialgebra, a: &MetricForm) -> Result<VerificationReport> {
    let d = doubled(bi, a)?;
    let n = d.n;
    let lhs = curvature(&d.double_conn, &d.double_gstar).tensor().clone();
    let r = curvature(&d.base_conn, bi.gstar());
    let rhs = tabulate(2 * n, 3, |ix| {
        let (al, be) = split(n, ix[0]);
        let (al1, be1) = split(n, ix[1]);
        let (al2, be2) = split(n, ix[2]);
        join(
            &sum(&[r.apply(&al, &be1, &be2), r.apply(&be, &al1, &be2), r.apply(&be, &be1, &al2)]),
            &r.apply(&be, &be1, &be2),
        )
    });
    Ok(VerificationReport::build("tangent_curvature", lhs, rhs, Vec::new(), Vec::new()))
}

/// Covariant derivative of curvature on the double against the five-term
/// pair formula.
pub fn verify_tangent_nabla_r(bi: &LieBialgebra, a: &MetricForm) -> Result<VerificationReport> {
    let d = doubled(bi, a)?;
    let n = d.n;
    let r_double = curvature(&d.double_conn, &d.double_gstar);
    let lhs = nabla_curvature(&d.double_conn, &r_double);
    let r = curvature(&d.base_conn, bi.gstar());
    let nr = nabla_curvature(&d.base_conn, &r);
    let rhs = tabulate(2 * n, 4, |ix| {
        let (al, be) = split(n, ix[0]);
        let (al1, be1) = split(n, ix[1]);
        let (al2, be2) = split(n, ix[2]);
        let (al3, be3) = split(n, ix[3]);
        let first = sum(&[
            multilinear(&nr, &[&al, &be1, &be2, &be3]),
            multilinear(&nr, &[&be, &al1, &be2, &be3]),
            multilinear(&nr, &[&be, &be1, &al2, &be3]),
            multilinear(&nr, &[&be, &be1, &be2, &al3]),
        ]);
        join(&first, &multilinear(&nr, &[&be, &be1, &be2, &be3]))
    });
    Ok(VerificationReport::build("tangent_nabla_curvature", lhs, rhs, Vec::new(), Vec::new()))
}

/// Koszul bracket against a differential on the double, against
/// `([α,dβ'] + [β,dα'], [β,dβ'])`.
pub fn verify_tangent_koszul(bi: &LieBialgebra) -> Result<VerificationReport> {
    let n = bi.dim();
    let base = InvariantComplex::new(bi.g().clone(), bi.gstar().clone(), Connection::zero(n))?;
    let double = InvariantComplex::new(
        bi.g().semidirect_double(),
        bi.gstar().dual_semidirect_double(),
        Connection::zero(2 * n),
    )?;
    let lhs = tabulate_forms(2 * n, 2, |ix| {
        let e = |i| Form::basis(2 * n, i);
        double.koszul(&e(ix[0]), &double.d(&e(ix[1]))).expect("1-form")
    });
    let rhs = tabulate_forms(2 * n, 2, |ix| {
        let (al, be) = split(n, ix[0]);
        let (al1, be1) = split(n, ix[1]);
        let (al, be, al1, be1) = (
            Form::from_covector(&al),
            Form::from_covector(&be),
            Form::from_covector(&al1),
            Form::from_covector(&be1),
        );
        let k = |x: &Form, y: &Form| base.koszul(x, &base.d(y)).expect("1-form");
        let first = k(&al, &be1).add(&k(&be, &al1)).expect("same dim");
        pair_form(&first, &k(&be, &be1)).expect("same dim")
    });
    Ok(VerificationReport::build("tangent_koszul", lhs, rhs, Vec::new(), Vec::new()))
}

fn complexes(bi: &LieBialgebra, a: &MetricForm) -> Result<(InvariantComplex, InvariantComplex)> {
    let base = InvariantComplex::from_bialgebra(bi, a)?;
    let tangent = LieBialgebra::from_parts(bi.g().semidirect_double(), bi.gstar().dual_semidirect_double())?;
    let double = InvariantComplex::from_bialgebra(&tangent, &a.complete_lift())?;
    Ok((base, double))
}

/// Pre-Poisson bracket on the double against `({α,β'} + {β,α'}, {β,β'})`.
pub fn verify_tangent_bracket(bi: &LieBialgebra, a: &MetricForm) -> Result<VerificationReport> {
    let n = bi.dim();
    let (base, double) = complexes(bi, a)?;
    let lhs = tabulate_forms(2 * n, 2, |ix| {
        double
            .pre_poisson(&Form::basis(2 * n, ix[0]), &Form::basis(2 * n, ix[1]))
            .expect("1-forms")
    });
    let rhs = tabulate_forms(2 * n, 2, |ix| {
        let (al, be) = split(n, ix[0]);
        let (al1, be1) = split(n, ix[1]);
        let (al, be, al1, be1) = (
            Form::from_covector(&al),
            Form::from_covector(&be),
            Form::from_covector(&al1),
            Form::from_covector(&be1),
        );
        let b = |x: &Form, y: &Form| base.pre_poisson(x, y).expect("1-forms");
        let first = b(&al, &be1).add(&b(&be, &al1)).expect("same dim");
        pair_form(&first, &b(&be, &be1)).expect("same dim")
    });
    Ok(VerificationReport::build("tangent_bracket", lhs, rhs, Vec::new(), Vec::new()))
}

/// Metacurvature on the double, compared block by block against the six
/// case formulas and against the combined pair formula
/// `(M(α;β',β'') + M(β;α',β'') + M(β;β',α''), M(β;β',β''))`.
pub fn verify_tangent_metacurvature(bi: &LieBialgebra, a: &MetricForm) -> Result<VerificationReport> {
    let n = bi.dim();
    let (base, double) = complexes(bi, a)?;
    let lhs = double.metacurvature().to_tensor();
    let m = |g: &Vector, x: &Vector, y: &Vector| -> Form {
        base.metacurvature_at(&Form::from_covector(g), &Form::from_covector(x), &Form::from_covector(y))
            .expect("1-forms")
    };
    let zero = Form::zero(n);
    let rhs = tabulate_forms(2 * n, 3, |ix| {
        let (al, be) = split(n, ix[0]);
        let (al1, be1) = split(n, ix[1]);
        let (al2, be2) = split(n, ix[2]);
        let first = m(&al, &be1, &be2)
            .add(&m(&be, &al1, &be2))
            .and_then(|f| f.add(&m(&be, &be1, &al2)))
            .expect("same dim");
        pair_form(&first, &m(&be, &be1, &be2)).expect("same dim")
    });
    // block-by-block: v = first block, c = second block
    let cases = tabulate_forms(2 * n, 3, |ix| {
        let (al, be) = split(n, ix[0]);
        let (al1, be1) = split(n, ix[1]);
        let (al2, be2) = split(n, ix[2]);
        let blocks = (ix[0] < n, ix[1] < n, ix[2] < n);
        let (first, second) = match blocks {
            (true, true, true) | (true, true, false) | (true, false, true) | (false, true, true) => {
                (zero.clone(), zero.clone())
            }
            (true, false, false) => (m(&al, &be1, &be2), zero.clone()),
            (false, false, false) => (zero.clone(), m(&be, &be1, &be2)),
            (false, false, true) => (m(&be, &be1, &al2), zero.clone()),
            (false, true, false) => (m(&be, &be2, &al1), zero.clone()),
        };
        pair_form(&first, &second).expect("same dim")
    });
    let mut witnesses = diff(&lhs, &cases, "lhs-vs-cases");
    witnesses.extend(diff(&cases, &rhs, "cases-vs-combined"));
    Ok(VerificationReport::build("tangent_metacurvature", lhs, rhs, witnesses, Vec::new()))
}

/// Flatness, local symmetry and metaflatness of one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeometryVerdicts {
    pub flat: bool,
    pub locally_symmetric: bool,
    pub metaflat: bool,
}

pub fn geometry_verdicts(bracket: &LieAlgebra, base: &LieAlgebra, a: &MetricForm) -> Result<GeometryVerdicts> {
    let conn = levi_civita(bracket, a)?;
    let r = curvature(&conn, bracket);
    let flat = r.is_zero();
    let locally_symmetric = flat || nabla_curvature(&conn, &r).is_zero();
    let cx = InvariantComplex::new(base.clone(), bracket.clone(), conn)?;
    Ok(GeometryVerdicts {
        flat,
        locally_symmetric,
        metaflat: cx.is_metaflat(),
    })
}

/// Flat / locally symmetric / metaflat verdicts must agree between the base
/// and the double.
pub fn verify_equivalences(bi: &LieBialgebra, a: &MetricForm) -> Result<VerificationReport> {
    let b = geometry_verdicts(bi.gstar(), bi.g(), a)?;
    let d = geometry_verdicts(
        &bi.gstar().dual_semidirect_double(),
        &bi.g().semidirect_double(),
        &a.complete_lift(),
    )?;
    let verdicts = vec![
        VerdictPair { name: "flat".into(), base: b.flat, double: d.flat },
        VerdictPair {
            name: "locally_symmetric".into(),
            base: b.locally_symmetric,
            double: d.locally_symmetric,
        },
        VerdictPair { name: "metaflat".into(), base: b.metaflat, double: d.metaflat },
        VerdictPair {
            name: "generalized_poisson".into(),
            base: b.flat && b.metaflat,
            double: d.flat && d.metaflat,
        },
    ];
    let lhs = Tensor::vector(verdicts.iter().map(|v| flag(v.base)).collect());
    let rhs = Tensor::vector(verdicts.iter().map(|v| flag(v.double)).collect());
    Ok(VerificationReport::build("geometry_equivalences", lhs, rhs, Vec::new(), verdicts))
}

/// The covariant connection of `(g ⋊ g, ã^c)` against
/// `(A_XX', A_XY' + A_YX')`, plus agreement of the pseudo-Riemannian Lie
/// algebra verdicts for `(g, ã)` and `(g ⋊ g, ã^c)`.
pub fn verify_prla_double(g: &LieAlgebra, am: &MetricForm) -> Result<VerificationReport> {
    let n = g.dim();
    let conn = levi_civita(g, am)?;
    let dg = g.semidirect_double();
    let lift = am.complete_lift();
    let lhs = levi_civita(&dg, &lift)?.coefficients().clone();
    let rhs = tabulate(2 * n, 2, |ix| {
        let (x, y) = split(n, ix[0]);
        let (x1, y1) = split(n, ix[1]);
        join(&conn.apply(&x, &x1), &sum(&[conn.apply(&x, &y1), conn.apply(&y, &x1)]))
    });
    let verdicts = vec![VerdictPair {
        name: "prla".into(),
        base: prla_defect(g, am)?.is_zero(),
        double: prla_defect(&dg, &lift)?.is_zero(),
    }];
    Ok(VerificationReport::build("prla_double", lhs, rhs, Vec::new(), verdicts))
}

/// Compatibility verdicts for an abelian base must agree between `(bi, a)`
/// and its tangent double with the lifted metric.
pub fn verify_prpl_theorem(bi: &LieBialgebra, a: &MetricForm) -> Result<VerificationReport> {
    if !bi.g().is_abelian() {
        return Err(CoreError::Unsupported(
            "the compatibility sweep needs an abelian g".into(),
        ));
    }
    let base = prpl_abelian_base_check(bi, a)?;
    let double = prpl_abelian_base_check(&bi.tangent()?, &a.complete_lift())?;
    let verdicts = vec![VerdictPair {
        name: "prpl_abelian_base".into(),
        base: base.pass,
        double: double.pass,
    }];
    let lhs = Tensor::vector(vec![flag(base.pass)]);
    let rhs = Tensor::vector(vec![flag(double.pass)]);
    Ok(VerificationReport::build("prpl_double", lhs, rhs, Vec::new(), verdicts))
}

/// The six tangent-double statements plus the equivalence check, computed
/// independently (in parallel when enabled) and returned in a fixed order.
pub fn verify_tangent_suite(bi: &LieBialgebra, a: &MetricForm, exec: Exec) -> Result<Vec<VerificationReport>> {
    let results = exec.map_range(7, |k| match k {
        0 => verify_tangent_connection(bi, a),
        1 => verify_tangent_curvature(bi, a),
        2 => verify_tangent_nabla_r(bi, a),
        3 => verify_tangent_koszul(bi),
        4 => verify_tangent_bracket(bi, a),
        5 => verify_tangent_metacurvature(bi, a),
        _ => verify_equivalences(bi, a),
    });
    results.into_iter().collect()
}
