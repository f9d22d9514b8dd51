//! Lie algebras and Lie bialgebras over a fixed basis.
//!
//! Structure constants are stored as `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
//! The same type carries the bracket on `g` and the bracket on `g*`; for a
//! bialgebra the latter is read in the dual basis `e_i*`.

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::exact::{zero_vec, ExactScalar, Tensor, Vector};

/// One `[e_i, e_j] = Σ out` entry, 0-based, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: Vec<(usize, ExactScalar)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Tensor,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            c: Tensor::zeros(&[dim, dim, dim]),
        }
    }

    /// Build from the `i < j` half of the table; the rest is filled in by
    /// antisymmetry. Repeated `(i, j)` entries accumulate.
    pub fn from_brackets(dim: usize, entries: &[BracketEntry]) -> Result<Self> {
        if dim == 0 {
            return Err(CoreError::invalid("dimension must be positive"));
        }
        let mut c = Tensor::zeros(&[dim, dim, dim]);
        for e in entries {
            if e.i >= e.j {
                return Err(CoreError::invalid(format!(
                    "bracket entry ({}, {}) must have i < j",
                    e.i + 1,
                    e.j + 1
                )));
            }
            if e.j >= dim {
                return Err(CoreError::invalid(format!(
                    "bracket entry ({}, {}) outside 1..{dim}",
                    e.i + 1,
                    e.j + 1
                )));
            }
            for (k, v) in &e.out {
                if *k >= dim {
                    return Err(CoreError::invalid(format!(
                        "output index {} outside 1..{dim}",
                        k + 1
                    )));
                }
                *c.get_mut(&[e.i, e.j, *k]) += v;
                *c.get_mut(&[e.j, e.i, *k]) -= v;
            }
        }
        Ok(LieAlgebra { dim, c })
    }

    /// Build from a full table, which must already be antisymmetric.
    pub fn from_table(c: Tensor) -> Result<Self> {
        let s = c.shape().to_vec();
        if s.len() != 3 || s[0] != s[1] || s[1] != s[2] {
            return Err(CoreError::invalid(format!(
                "structure table must have shape [n, n, n], got {s:?}"
            )));
        }
        let n = s[0];
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if *c.get(&[i, j, k]) != -c.get(&[j, i, k]) {
                        return Err(CoreError::invalid(format!(
                            "structure table not antisymmetric at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(LieAlgebra { dim: n, c })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &ExactScalar {
        self.c.get(&[i, j, k])
    }

    pub fn structure_tensor(&self) -> &Tensor {
        &self.c
    }

    pub fn is_abelian(&self) -> bool {
        self.c.is_zero()
    }

    /// Nonzero `i < j` entries, for serialization.
    pub fn upper_entries(&self) -> Vec<BracketEntry> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let vals: Vec<(usize, ExactScalar)> = (0..n)
                    .filter_map(|k| {
                        let v = self.c.get(&[i, j, k]);
                        (!v.is_zero()).then(|| (k, v.clone()))
                    })
                    .collect();
                if !vals.is_empty() {
                    out.push(BracketEntry { i, j, out: vals });
                }
            }
        }
        out
    }

    /// `[e_i, e_j]` as a coefficient vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        (0..self.dim).map(|k| self.c.get(&[i, j, k]).clone()).collect()
    }

    pub fn bracket(&self, u: &[ExactScalar], v: &[ExactScalar]) -> Result<Vector> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[ExactScalar], v: &[ExactScalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vec(n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.c.get(&[i, j, k]);
                    if !c.is_zero() {
                        *slot += &uv * c;
                    }
                }
            }
        }
        out
    }

    fn check_len(&self, v: &[ExactScalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(CoreError::invalid(format!(
                "vector of length {} in a {}-dimensional algebra",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// `J[i][j][k][l]`: component `l` of
    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_defect(&self) -> Tensor {
        let n = self.dim;
        let mut t = Tensor::zeros(&[n, n, n, n]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = zero_vec(n);
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for m in 0..n {
                            let coef = self.c.get(&[a, b, m]);
                            if coef.is_zero() {
                                continue;
                            }
                            for (l, slot) in acc.iter_mut().enumerate() {
                                let d = self.c.get(&[m, c, l]);
                                if !d.is_zero() {
                                    *slot += coef * d;
                                }
                            }
                        }
                    }
                    for (l, v) in acc.into_iter().enumerate() {
                        t.set(&[i, j, k, l], v);
                    }
                }
            }
        }
        t
    }

    /// Accept only tables whose Jacobi defect vanishes.
    pub fn validate(&self, label: &str) -> Result<()> {
        gate(&self.jacobi_defect(), &format!("jacobi_defect({label})"))
    }

    /// Coadjoint action with `⟨ad*_x γ, y⟩ = −⟨γ, [x, y]⟩`.
    pub fn coadjoint(&self, x: &[ExactScalar], gamma: &[ExactScalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(gamma)?;
        Ok(self.coadjoint_unchecked(x, gamma))
    }

    pub(crate) fn coadjoint_unchecked(&self, x: &[ExactScalar], gamma: &[ExactScalar]) -> Vector {
        let n = self.dim;
        (0..n)
            .map(|j| {
                let mut acc = ExactScalar::zero();
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (k, gk) in gamma.iter().enumerate() {
                        let c = self.c.get(&[i, j, k]);
                        if !c.is_zero() && !gk.is_zero() {
                            acc -= xi * c * gk;
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix of `ad_x`: entry `(a, c)` is the `e_a` component of `[x, e_c]`.
    pub fn ad_matrix(&self, x: &[ExactScalar]) -> Tensor {
        let n = self.dim;
        Tensor::from_fn(&[n, n], |ix| {
            x.iter()
                .enumerate()
                .map(|(i, xi)| xi * self.c.get(&[i, ix[1], ix[0]]))
                .sum()
        })
    }

    /// The semidirect product on `g × g`:
    /// `[(X,Y),(X',Y')] = ([X,X'], [X,Y'] + [Y,X'])`.
    /// Basis `0..n` is `(e_i, 0)`, `n..2n` is `(0, e_i)`.
    pub fn semidirect_double(&self) -> LieAlgebra {
        let n = self.dim;
        let mut c = Tensor::zeros(&[2 * n, 2 * n, 2 * n]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.c.get(&[i, j, k]);
                    if v.is_zero() {
                        continue;
                    }
                    c.set(&[i, j, k], v.clone());
                    c.set(&[i, n + j, n + k], v.clone());
                    c.set(&[n + i, j, n + k], v.clone());
                }
            }
        }
        LieAlgebra { dim: 2 * n, c }
    }

    /// The semidirect product on `g* × g*`:
    /// `[(α,β),(α',β')] = ([α,β'] + [β,α'], [β,β'])`.
    /// Basis `0..n` is `(e_i*, 0)`, `n..2n` is `(0, e_i*)`.
    pub fn dual_semidirect_double(&self) -> LieAlgebra {
        let n = self.dim;
        let mut c = Tensor::zeros(&[2 * n, 2 * n, 2 * n]);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.c.get(&[i, j, k]);
                    if v.is_zero() {
                        continue;
                    }
                    c.set(&[i, n + j, k], v.clone());
                    c.set(&[n + i, j, k], v.clone());
                    c.set(&[n + i, n + j, n + k], v.clone());
                }
            }
        }
        LieAlgebra { dim: 2 * n, c }
    }
}

/// Turn a defect tensor into a validation error at its first nonzero entry.
pub(crate) fn gate(defect: &Tensor, name: &str) -> Result<()> {
    match defect.first_nonzero() {
        None => Ok(()),
        Some((ix, v)) => Err(CoreError::Validation {
            tensor: name.to_string(),
            index: ix.iter().map(|i| i + 1).collect(),
            value: crate::exact::format_rational(&v),
        }),
    }
}

/// A pair of Lie brackets on `g` and `g*` in duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBialgebra {
    g: LieAlgebra,
    gstar: LieAlgebra,
}

impl LieBialgebra {
    /// Validated construction: dimensions, both Jacobi identities and the
    /// cocycle condition.
    pub fn new(g: LieAlgebra, gstar: LieAlgebra) -> Result<Self> {
        let bi = Self::from_parts(g, gstar)?;
        bi.validate()?;
        Ok(bi)
    }

    /// Dimension check only.
    pub fn from_parts(g: LieAlgebra, gstar: LieAlgebra) -> Result<Self> {
        if g.dim() != gstar.dim() {
            return Err(CoreError::invalid(format!(
                "g has dimension {} but g* has dimension {}",
                g.dim(),
                gstar.dim()
            )));
        }
        Ok(LieBialgebra { g, gstar })
    }

    pub fn validate(&self) -> Result<()> {
        self.g.validate("g")?;
        self.gstar.validate("g*")?;
        if self.is_cocycle() {
            return Ok(());
        }
        gate(&self.cocycle_defect(), "cocycle_defect")
    }

    pub fn g(&self) -> &LieAlgebra {
        &self.g
    }

    pub fn gstar(&self) -> &LieAlgebra {
        &self.gstar
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `ξ[k][a][b]`: the antisymmetric matrix of `ξ(e_k) ∈ g ∧ g`, defined by
    /// `⟨ξ(X), α ∧ β⟩ = ⟨X, [α, β]_{g*}⟩`.
    pub fn xi(&self) -> Tensor {
        let n = self.dim();
        Tensor::from_fn(&[n, n, n], |ix| {
            self.gstar.structure_constant(ix[1], ix[2], ix[0]).clone()
        })
    }

    /// `D[x][y][a][b]`: the `(a, b)` entry of
    /// `ξ([e_x, e_y]) − ad_{e_x} ξ(e_y) + ad_{e_y} ξ(e_x)`, with `ad` acting as a
    /// derivation on `g ∧ g`.
    pub fn cocycle_defect(&self) -> Tensor {
        let n = self.dim();
        let mut out = Tensor::zeros(&[n, n, n, n]);
        for x in 0..n {
            for y in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let v = self.cocycle_entry(x, y, a, b);
                        if !v.is_zero() {
                            out.set(&[x, y, a, b], v);
                        }
                    }
                }
            }
        }
        out
    }

    /// True when the cocycle defect vanishes; stops at the first nonzero entry.
    pub fn is_cocycle(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                (0..n).all(|a| (a + 1..n).all(|b| self.cocycle_entry(x, y, a, b).is_zero()))
            })
        })
    }

    fn cocycle_entry(&self, x: usize, y: usize, a: usize, b: usize) -> ExactScalar {
        let n = self.dim();
        let c = |i: usize, j: usize, k: usize| self.g.structure_constant(i, j, k);
        // ξ(e_k)_{ab} = c*_{ab}^k
        let xi = |k: usize, p: usize, q: usize| self.gstar.structure_constant(p, q, k);
        // (ad_{e_z} ξ(e_w))_{ab} = Σ_m c^a_{zm} ξ_w[m][b] + Σ_m c^b_{zm} ξ_w[a][m]
        let act = |z: usize, w: usize| -> ExactScalar {
            let mut acc = ExactScalar::zero();
            for m in 0..n {
                let l = c(z, m, a);
                if !l.is_zero() {
                    acc += l * xi(w, m, b);
                }
                let r = c(z, m, b);
                if !r.is_zero() {
                    acc += r * xi(w, a, m);
                }
            }
            acc
        };
        let mut v = ExactScalar::zero();
        for k in 0..n {
            let ck = c(x, y, k);
            if !ck.is_zero() {
                v += ck * xi(k, a, b);
            }
        }
        v - act(x, y) + act(y, x)
    }

    /// The tangent bialgebra `(g ⋊ g, g* ⋉ g*)`; the result is re-validated.
    pub fn tangent(&self) -> Result<LieBialgebra> {
        self.validate()?;
        let double = LieBialgebra {
            g: self.g.semidirect_double(),
            gstar: self.gstar.dual_semidirect_double(),
        };
        double.validate()?;
        Ok(double)
    }

    /// Linear Poisson structure at `p ∈ g`: `Π(p)[i][j] = ⟨p, [e_i*, e_j*]⟩`.
    pub fn linearized_poisson(&self, p: &[ExactScalar]) -> Result<Tensor> {
        let n = self.dim();
        if p.len() != n {
            return Err(CoreError::invalid(format!(
                "point of length {} for a {n}-dimensional bialgebra",
                p.len()
            )));
        }
        Ok(Tensor::from_fn(&[n, n], |ix| {
            (0..n)
                .map(|k| &p[k] * self.gstar.structure_constant(ix[0], ix[1], k))
                .sum()
        }))
    }
}
