//! Metrics, the infinitesimal Levi-Civita connection, curvature, local
//! symmetry and the pseudo-Riemannian compatibility conditions.
//!
//! The formulas are stated for the contravariant picture (connection on `g*`
//! driven by `[ , ]_{g*}`), but every routine only sees "a Lie algebra and a
//! metric on it", so the same code serves the covariant picture on `g`.

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::exact::{axpy, determinant, inverse, unit, zero_vec, ExactScalar, Tensor, Vector};
use crate::lie::{LieAlgebra, LieBialgebra};

/// Symmetric nondegenerate bilinear form with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricForm {
    m: Tensor,
    inv: Tensor,
}

impl MetricForm {
    pub fn new(m: Tensor) -> Result<Self> {
        if !m.is_square() {
            return Err(CoreError::invalid(format!(
                "metric must be a square matrix, got shape {:?}",
                m.shape()
            )));
        }
        let n = m.shape()[0];
        for i in 0..n {
            for j in i + 1..n {
                if m.get(&[i, j]) != m.get(&[j, i]) {
                    return Err(CoreError::invalid(format!(
                        "metric is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let inv = inverse(&m)?;
        Ok(MetricForm { m, inv })
    }

    pub fn identity(n: usize) -> Self {
        MetricForm {
            m: Tensor::identity(n),
            inv: Tensor::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.shape()[0]
    }

    pub fn matrix(&self) -> &Tensor {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &Tensor {
        &self.inv
    }

    pub fn determinant(&self) -> ExactScalar {
        determinant(&self.m).expect("square by construction")
    }

    /// `m(u, v)`.
    pub fn eval(&self, u: &[ExactScalar], v: &[ExactScalar]) -> ExactScalar {
        let n = self.dim();
        let mut acc = ExactScalar::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate().take(n) {
                let mij = self.m.get(&[i, j]);
                if !vj.is_zero() && !mij.is_zero() {
                    acc += ui * mij * vj;
                }
            }
        }
        acc
    }

    /// The form on the dual space induced through the musical isomorphism,
    /// i.e. the inverse matrix.
    pub fn contravariant_from_covariant(&self) -> MetricForm {
        MetricForm {
            m: self.inv.clone(),
            inv: self.m.clone(),
        }
    }

    /// Identity-fiber complete lift: `[[0, m], [m, 0]]` on the doubled basis.
    pub fn complete_lift(&self) -> MetricForm {
        let n = self.dim();
        let block = |t: &Tensor| {
            Tensor::from_fn(&[2 * n, 2 * n], |ix| {
                let (a, b) = (ix[0], ix[1]);
                if (a < n) != (b < n) {
                    t.get(&[a % n, b % n]).clone()
                } else {
                    ExactScalar::zero()
                }
            })
        };
        // the lift of the inverse is the inverse of the lift
        MetricForm {
            m: block(&self.m),
            inv: block(&self.inv),
        }
    }
}

pub fn contravariant_from_covariant(m: &MetricForm) -> MetricForm {
    m.contravariant_from_covariant()
}

pub fn complete_lift_metric(a: &MetricForm) -> MetricForm {
    a.complete_lift()
}

/// Connection coefficients `Γ[i][j][k]` with `A_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor,
}

impl Connection {
    pub fn from_tensor(gamma: Tensor) -> Result<Self> {
        let s = gamma.shape();
        if s.len() != 3 || s[0] != s[1] || s[1] != s[2] {
            return Err(CoreError::invalid(format!(
                "connection coefficients must have shape [n, n, n], got {s:?}"
            )));
        }
        Ok(Connection { gamma })
    }

    pub fn zero(n: usize) -> Self {
        Connection {
            gamma: Tensor::zeros(&[n, n, n]),
        }
    }

    pub fn dim(&self) -> usize {
        self.gamma.shape()[0]
    }

    pub fn coefficients(&self) -> &Tensor {
        &self.gamma
    }

    /// `A_{e_i} e_j`.
    pub fn apply_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim())
            .map(|k| self.gamma.get(&[i, j, k]).clone())
            .collect()
    }

    /// `A_{e_i} v`.
    pub fn apply_basis_to(&self, i: usize, v: &[ExactScalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() {
                axpy(&mut out, vj, &self.apply_basis(i, j));
            }
        }
        out
    }

    /// `A_u v`, bilinear.
    pub fn apply(&self, u: &[ExactScalar], v: &[ExactScalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                axpy(&mut out, ui, &self.apply_basis_to(i, v));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero()
    }
}

fn check_dims(bracket: &LieAlgebra, a: &MetricForm) -> Result<()> {
    if bracket.dim() != a.dim() {
        return Err(CoreError::invalid(format!(
            "bracket has dimension {} but metric has dimension {}",
            bracket.dim(),
            a.dim()
        )));
    }
    Ok(())
}

/// Unique torsion-free, metric-parallel connection:
/// `2a(A_αβ, γ) = a([α,β], γ) + a([γ,α], β) + a([γ,β], α)`.
pub fn levi_civita(bracket: &LieAlgebra, a: &MetricForm) -> Result<Connection> {
    check_dims(bracket, a)?;
    let n = bracket.dim();
    let half = crate::exact::ratio(1, 2);
    let brackets: Vec<Vec<Vector>> = (0..n)
        .map(|i| (0..n).map(|j| bracket.bracket_basis(i, j)).collect())
        .collect();
    let mut gamma = Tensor::zeros(&[n, n, n]);
    for i in 0..n {
        for j in 0..n {
            let rhs: Vector = (0..n)
                .map(|k| {
                    let s = a.eval(&brackets[i][j], &unit(n, k))
                        + a.eval(&brackets[k][i], &unit(n, j))
                        + a.eval(&brackets[k][j], &unit(n, i));
                    s * &half
                })
                .collect();
            let sol = a.inverse_matrix().mat_vec(&rhs)?;
            for (k, v) in sol.into_iter().enumerate() {
                gamma.set(&[i, j, k], v);
            }
        }
    }
    Ok(Connection { gamma })
}

/// `T[i][j][k]`: component `k` of `A_{e_i}e_j − A_{e_j}e_i − [e_i, e_j]`.
pub fn torsion_defect(conn: &Connection, bracket: &LieAlgebra) -> Tensor {
    let n = conn.dim();
    Tensor::from_fn(&[n, n, n], |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        conn.gamma.get(&[i, j, k])
            - conn.gamma.get(&[j, i, k])
            - bracket.structure_constant(i, j, k)
    })
}

/// `P[i][j][k] = a(A_{e_i}e_j, e_k) + a(e_j, A_{e_i}e_k)`.
pub fn metric_parallel_defect(conn: &Connection, a: &MetricForm) -> Tensor {
    let n = conn.dim();
    Tensor::from_fn(&[n, n, n], |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        a.eval(&conn.apply_basis(i, j), &unit(n, k)) + a.eval(&unit(n, j), &conn.apply_basis(i, k))
    })
}

/// `R[i][j][k][l]`: component `l` of `R(e_i, e_j) e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvature {
    r: Tensor,
}

impl Curvature {
    pub fn tensor(&self) -> &Tensor {
        &self.r
    }

    pub fn dim(&self) -> usize {
        self.r.shape()[0]
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn apply_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        (0..self.dim())
            .map(|l| self.r.get(&[i, j, k, l]).clone())
            .collect()
    }

    /// `R(u, v) w`, trilinear.
    pub fn apply(&self, u: &[ExactScalar], v: &[ExactScalar], w: &[ExactScalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let uv = ui * vj;
                for (k, wk) in w.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    axpy(&mut out, &(&uv * wk), &self.apply_basis(i, j, k));
                }
            }
        }
        out
    }
}

/// `R(α,β)γ = A_αA_βγ − A_βA_αγ − A_{[α,β]}γ` on basis triples.
pub fn curvature(conn: &Connection, bracket: &LieAlgebra) -> Curvature {
    let n = conn.dim();
    let mut r = Tensor::zeros(&[n, n, n, n]);
    for i in 0..n {
        for j in 0..n {
            let br = bracket.bracket_basis(i, j);
            for k in 0..n {
                let mut v = conn.apply_basis_to(i, &conn.apply_basis(j, k));
                let w = conn.apply_basis_to(j, &conn.apply_basis(i, k));
                axpy(&mut v, &ExactScalar::from_integer((-1).into()), &w);
                for (m, cm) in br.iter().enumerate() {
                    if !cm.is_zero() {
                        axpy(&mut v, &-cm, &conn.apply_basis(m, k));
                    }
                }
                for (l, x) in v.into_iter().enumerate() {
                    r.set(&[i, j, k, l], x);
                }
            }
        }
    }
    Curvature { r }
}

/// `N[a][b][c][d][l]`: component `l` of `(A_{e_a} R)(e_b, e_c) e_d`, where
/// `(A_α R)(β,γ)δ = A_α(R(β,γ)δ) − R(A_αβ,γ)δ − R(β,γ)A_αδ − R(β,A_αγ)δ`.
pub fn nabla_curvature(conn: &Connection, r: &Curvature) -> Tensor {
    let n = conn.dim();
    let mut out = Tensor::zeros(&[n, n, n, n, n]);
    if r.is_zero() {
        return out;
    }
    let minus_one = ExactScalar::from_integer((-1).into());
    for a in 0..n {
        for b in 0..n {
            let ab = conn.apply_basis(a, b);
            for c in 0..n {
                let ac = conn.apply_basis(a, c);
                for d in 0..n {
                    let ad = conn.apply_basis(a, d);
                    let mut v = conn.apply_basis_to(a, &r.apply_basis(b, c, d));
                    axpy(&mut v, &minus_one, &r.apply(&ab, &unit(n, c), &unit(n, d)));
                    axpy(&mut v, &minus_one, &r.apply(&unit(n, b), &unit(n, c), &ad));
                    axpy(&mut v, &minus_one, &r.apply(&unit(n, b), &ac, &unit(n, d)));
                    for (l, x) in v.into_iter().enumerate() {
                        out.set(&[a, b, c, d, l], x);
                    }
                }
            }
        }
    }
    out
}

/// `Q[i][j][k][l]`: component `l` of `[A_αβ, γ] + [α, A_γβ]` at `(α,β,γ) = (e_i,e_j,e_k)`.
pub fn prla_defect(bracket: &LieAlgebra, a: &MetricForm) -> Result<Tensor> {
    let conn = levi_civita(bracket, a)?;
    Ok(prla_defect_with(bracket, &conn))
}

pub(crate) fn prla_defect_with(bracket: &LieAlgebra, conn: &Connection) -> Tensor {
    let n = bracket.dim();
    let mut out = Tensor::zeros(&[n, n, n, n]);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut v = bracket.bracket_unchecked(&conn.apply_basis(i, j), &unit(n, k));
                let w = bracket.bracket_unchecked(&unit(n, i), &conn.apply_basis(k, j));
                axpy(&mut v, &ExactScalar::from_integer(1.into()), &w);
                for (l, x) in v.into_iter().enumerate() {
                    out.set(&[i, j, k, l], x);
                }
            }
        }
    }
    out
}

/// Pointwise compatibility defect at one group point, given the bivector
/// `pi` (matrix of `Π^l(x)` on `g*`) and the matrix `adstar` of `Ad*_x`.
///
/// `P[i][j][k][l]` is component `l` of
/// `[Ad*(A_αγ + ad*_{π(α)}γ), Ad*β] + [Ad*α, Ad*(A_βγ + ad*_{π(β)}γ)]`
/// at `(α,β,γ) = (e_i*, e_j*, e_k*)`, where `π(α) = Π(α, ·) ∈ g`.
pub fn prpl_pointwise_defect(
    bi: &LieBialgebra,
    a: &MetricForm,
    pi: &Tensor,
    adstar: &Tensor,
) -> Result<Tensor> {
    let n = bi.dim();
    check_dims(bi.gstar(), a)?;
    for (name, t) in [("pi", pi), ("adstar", adstar)] {
        if t.shape() != [n, n] {
            return Err(CoreError::invalid(format!(
                "{name} must be {n}x{n}, got shape {:?}",
                t.shape()
            )));
        }
    }
    for i in 0..n {
        for j in i..n {
            if *pi.get(&[i, j]) != -pi.get(&[j, i]) {
                return Err(CoreError::invalid(format!(
                    "pi is not antisymmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    if determinant(adstar)?.is_zero() {
        return Err(CoreError::invalid("adstar must be invertible"));
    }
    let conn = levi_civita(bi.gstar(), a)?;
    let sharp = |i: usize| -> Vector { (0..n).map(|j| pi.get(&[i, j]).clone()).collect() };
    let inner = |i: usize, k: usize| -> Vector {
        let mut v = conn.apply_basis(i, k);
        let w = bi.g().coadjoint_unchecked(&sharp(i), &unit(n, k));
        axpy(&mut v, &ExactScalar::from_integer(1.into()), &w);
        adstar.mat_vec(&v).expect("square")
    };
    let ad = |i: usize| adstar.mat_vec(&unit(n, i)).expect("square");
    let gs = bi.gstar();
    let mut out = Tensor::zeros(&[n, n, n, n]);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut v = gs.bracket_unchecked(&inner(i, k), &ad(j));
                let w = gs.bracket_unchecked(&ad(i), &inner(j, k));
                axpy(&mut v, &ExactScalar::from_integer(1.into()), &w);
                for (l, x) in v.into_iter().enumerate() {
                    out.set(&[i, j, k, l], x);
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of the abelian-base compatibility sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrplVerdict {
    pub pass: bool,
    /// `None` for the origin, `Some(i)` for the basis point `e_i` (0-based).
    pub failing_point: Option<Option<usize>>,
    /// First nonzero defect entry `(i, j, k, l)`, 0-based, and its value.
    pub witness: Option<(Vec<usize>, ExactScalar)>,
}

/// Full compatibility check for an abelian base group: `Ad* = I` and
/// `Π^l(x)` is the linearized structure. The defect is affine in the point,
/// so the origin plus the basis points cover every point.
pub fn prpl_abelian_base_check(bi: &LieBialgebra, a: &MetricForm) -> Result<PrplVerdict> {
    if !bi.g().is_abelian() {
        return Err(CoreError::Unsupported(
            "the group sweep needs an abelian g; use prpl_pointwise_defect with explicit (pi, Ad*) data"
                .into(),
        ));
    }
    let n = bi.dim();
    let id = Tensor::identity(n);
    let points: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    for p in points {
        let x = match p {
            None => zero_vec(n),
            Some(i) => unit(n, i),
        };
        let pi = bi.linearized_poisson(&x)?;
        let defect = prpl_pointwise_defect(bi, a, &pi, &id)?;
        if let Some(w) = defect.first_nonzero() {
            return Ok(PrplVerdict {
                pass: false,
                failing_point: Some(p),
                witness: Some(w),
            });
        }
    }
    Ok(PrplVerdict {
        pass: true,
        failing_point: None,
        witness: None,
    })
}
