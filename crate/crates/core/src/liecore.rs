//! Lie algebras given by structure constants on a fixed ordered basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{
    axpy, dot, is_zero_vec, quotient_basis, unit_vec, zero_vec, kernel_basis, Matrix, Scalar,
    Subspace,
};

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zeros.
pub type Sparse = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `table[i * dim + j]` is `[e_i, e_j]`, kept antisymmetric.
    table: Vec<Sparse>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    /// Reached a fixed point before the iteration cap.
    pub stabilized: bool,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn reaches_zero(&self) -> bool {
        self.terms.last().is_some_and(|t| t.dim() == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedType {
    TypeNN1,
    TypeQ,
}

pub struct Builder {
    labels: Vec<String>,
    acc: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

impl Builder {
    pub fn new(labels: Vec<String>) -> Self {
        Builder {
            labels,
            acc: BTreeMap::new(),
        }
    }

    /// Basis labelled `e1, …, e{dim}`.
    pub fn with_dim(dim: usize) -> Self {
        Self::new((1..=dim).map(|i| format!("e{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Adds `c·e_k` to `[e_i, e_j]` (and the mirrored term to `[e_j, e_i]`).
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        let n = self.dim();
        assert!(i < n && j < n && k < n, "basis index out of range");
        if i == j || c.is_zero() {
            return self;
        }
        let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let entry = self.acc.entry((a, b)).or_default();
        let slot = entry.entry(k).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            entry.remove(&k);
        }
        self
    }

    pub fn add_i64(&mut self, i: usize, j: usize, k: usize, c: i64) -> &mut Self {
        self.add(i, j, k, crate::ratlin::int(c))
    }

    /// Builds without checking Jacobi.
    pub fn build_unchecked(&self) -> LieAlgebra {
        let n = self.dim();
        let mut table = vec![Sparse::new(); n * n];
        for (&(i, j), terms) in &self.acc {
            let fwd: Sparse = terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(&k, c)| (k, c.clone()))
                .collect();
            table[j * n + i] = fwd.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[i * n + j] = fwd;
        }
        LieAlgebra {
            labels: self.labels.clone(),
            table,
        }
    }

    pub fn build(&self) -> Result<LieAlgebra> {
        let alg = self.build_unchecked();
        match alg.jacobi_violations().first() {
            Some(v) => Err(Error::JacobiFailure {
                i: v.i,
                j: v.j,
                k: v.k,
            }),
            None => Ok(alg),
        }
    }
}

fn to_sparse(v: &[Scalar]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        Builder::with_dim(dim).build_unchecked()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim() + j]
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket_basis(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Scalar::zero, |(_, c)| c.clone())
    }

    /// Nonzero structure constants with `i < j`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, &Sparse)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let t = self.bracket_basis(i, j);
                if !t.is_empty() {
                    out.push((i, j, t));
                }
            }
        }
        out
    }

    /// Copy of the structure constants as a builder (for extending or editing).
    pub fn to_builder(&self) -> Builder {
        let mut b = Builder::new(self.labels.clone());
        for (i, j, terms) in self.structure_constants() {
            for (k, c) in terms {
                b.add(i, j, *k, c.clone());
            }
        }
        b
    }

    fn bracket_sparse(&self, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> Vec<Scalar> {
        let mut out = zero_vec(self.dim());
        for (i, a) in u {
            for (j, b) in v {
                let ab = a * b;
                for (k, c) in self.bracket_basis(*i, *j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        for x in [u, v] {
            if x.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: x.len(),
                });
            }
        }
        Ok(self.bracket_sparse(&to_sparse(u), &to_sparse(v)))
    }

    pub fn jacobi_violations(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        let unit = |i: usize| vec![(i, Scalar::one())];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut r = self.bracket_sparse(&unit(i), self.bracket_basis(j, k));
                    let r2 = self.bracket_sparse(&unit(j), self.bracket_basis(k, i));
                    let r3 = self.bracket_sparse(&unit(k), self.bracket_basis(i, j));
                    for t in 0..n {
                        r[t] += &r2[t] + &r3[t];
                    }
                    if !is_zero_vec(&r) {
                        out.push(JacobiViolation {
                            i,
                            j,
                            k,
                            residual: r,
                        });
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad x`; column `j` holds `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let xs = to_sparse(x);
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.bracket_sparse(&xs, &[(j, Scalar::one())]))
            .collect();
        Matrix::from_cols(n, &cols)
    }

    /// `span{[a, b] : a ∈ A, b ∈ B}`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let av: Vec<Sparse> = a.basis_vectors().iter().map(|v| to_sparse(v)).collect();
        let bv: Vec<Sparse> = b.basis_vectors().iter().map(|v| to_sparse(v)).collect();
        let mut vecs = Vec::new();
        for x in &av {
            for y in &bv {
                let w = self.bracket_sparse(x, y);
                if !is_zero_vec(&w) {
                    vecs.push(w);
                }
            }
        }
        Subspace::span(self.dim(), vecs)
    }

    fn series(&self, kind: SeriesKind) -> SeriesReport {
        let full = Subspace::full(self.dim());
        let mut terms = vec![full.clone()];
        let mut stabilized = false;
        for _ in 0..=self.dim() {
            let last = terms.last().unwrap();
            let next = match kind {
                SeriesKind::LowerCentral => self.bracket_span(last, &full),
                SeriesKind::Derived => self.bracket_span(last, last),
            };
            if &next == last {
                stabilized = true;
                break;
            }
            terms.push(next);
        }
        SeriesReport {
            kind,
            terms,
            stabilized,
        }
    }

    pub fn lower_central_series(&self) -> SeriesReport {
        self.series(SeriesKind::LowerCentral)
    }

    pub fn derived_series(&self) -> SeriesReport {
        self.series(SeriesKind::Derived)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // Row (i, k): coefficient of e_k in [x, e_i] as a function of x.
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                let row: Vec<Scalar> = (0..n).map(|m| self.coeff(m, i, k)).collect();
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
        kernel_basis(&Matrix::from_rows(n, rows))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().reaches_zero()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().reaches_zero()
    }

    pub fn is_filiform(&self) -> bool {
        let n = self.dim();
        if n < 3 {
            return false;
        }
        let dims = self.lower_central_series().dims();
        dims.len() == n && dims[0] == n && (2..=n).all(|i| dims[i - 1] == n - i)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let sv: Vec<Sparse> = s.basis_vectors().iter().map(|v| to_sparse(v)).collect();
        (0..self.dim()).all(|i| {
            sv.iter()
                .all(|x| s.contains(&self.bracket_sparse(&[(i, Scalar::one())], x)))
        })
    }

    /// The subalgebra `s` written in the basis of `s`'s stored rows.
    pub fn restrict_to(&self, s: &Subspace) -> Result<LieAlgebra> {
        let basis = s.basis_vectors();
        let labels = basis
            .iter()
            .enumerate()
            .map(|(a, v)| {
                let sp = to_sparse(v);
                match sp.as_slice() {
                    [(i, c)] if c.is_one() => self.labels[*i].clone(),
                    _ => format!("n{}", a + 1),
                }
            })
            .collect();
        let mut b = Builder::new(labels);
        let sparse: Vec<Sparse> = basis.iter().map(|v| to_sparse(v)).collect();
        for a in 0..basis.len() {
            for c in a + 1..basis.len() {
                let w = self.bracket_sparse(&sparse[a], &sparse[c]);
                let coords = s.member_coords(&w).ok_or(Error::NotASubspace)?;
                for (k, x) in coords.into_iter().enumerate() {
                    b.add(a, c, k, x);
                }
            }
        }
        Ok(b.build_unchecked())
    }

    /// Maximal nilpotent ideal of a solvable algebra.
    ///
    /// Uses the fact that `x` is ad-nilpotent iff every weight of the adjoint
    /// action vanishes at `x`, and that for a generic `y` the trace functionals
    /// `x ↦ tr(ad x · (ad y)^k)` cut out exactly that common kernel. The result
    /// is verified to be a nilpotent ideal; a non-generic `y` is retried.
    pub fn nilradical(&self) -> Result<Subspace> {
        let n = self.dim();
        if !self.is_solvable() {
            return Err(Error::NotSolvable);
        }
        if self.is_nilpotent() {
            return Ok(Subspace::full(n));
        }
        let derived = self.derived_algebra();
        let outer = quotient_basis(&Subspace::full(n), &derived)?;
        let ads: Vec<Matrix> = (0..n).map(|m| self.ad_matrix(&unit_vec(n, m))).collect();
        for attempt in 1..=12i64 {
            let mut y = zero_vec(n);
            let mut w = Scalar::one();
            for rep in outer.reps() {
                axpy(&mut y, &w, rep);
                w *= crate::ratlin::int(attempt + 1);
            }
            let ady = self.ad_matrix(&y);
            let mut power = Matrix::identity(n);
            let mut rows = Vec::new();
            for _ in 0..n {
                let pt = power.transpose();
                let row: Vec<Scalar> = ads
                    .iter()
                    .map(|a| {
                        let mut t = Scalar::zero();
                        for r in 0..n {
                            t += dot(a.row(r), pt.row(r));
                        }
                        t
                    })
                    .collect();
                rows.push(row);
                power = power.mul(&ady)?;
            }
            let cand = kernel_basis(&Matrix::from_rows(n, rows));
            if self.is_ideal(&cand) && self.restrict_to(&cand)?.is_nilpotent() {
                return Ok(cand);
            }
        }
        Err(Error::InternalCheckFailed(
            "nilradical candidate is not a nilpotent ideal".into(),
        ))
    }

    /// Transports the structure constants to the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.rows(),
            });
        }
        let inv = p.inverse()?;
        let cols: Vec<Sparse> = (0..n).map(|j| to_sparse(&p.col(j))).collect();
        let mut b = Builder::new(self.labels.clone());
        for a in 0..n {
            for c in a + 1..n {
                let w = self.bracket_sparse(&cols[a], &cols[c]);
                if is_zero_vec(&w) {
                    continue;
                }
                for (k, x) in inv.mul_vec(&w)?.into_iter().enumerate() {
                    b.add(a, c, k, x);
                }
            }
        }
        Ok(b.build_unchecked())
    }

    /// Associated graded algebra of the lower central filtration, in an
    /// adapted basis, together with the degree of each basis element.
    pub fn graded(&self) -> Result<(LieAlgebra, Vec<usize>)> {
        let n = self.dim();
        let terms = self.lower_central_series().terms;
        let mut basis = Vec::new();
        let mut deg = Vec::new();
        for (d, pair) in terms.windows(2).enumerate() {
            let q = quotient_basis(&pair[0], &pair[1])?;
            for r in q.reps() {
                basis.push(r.clone());
                deg.push(d + 1);
            }
        }
        if let Some(last) = terms.last() {
            if last.dim() > 0 {
                return Err(Error::BadParams("algebra is not nilpotent".into()));
            }
        }
        let p = Matrix::from_cols(n, &basis);
        let inv = p.inverse()?;
        let sparse: Vec<Sparse> = basis.iter().map(|v| to_sparse(v)).collect();
        let mut b = Builder::with_dim(n);
        for a in 0..n {
            for c in a + 1..n {
                let w = self.bracket_sparse(&sparse[a], &sparse[c]);
                for (k, x) in inv.mul_vec(&w)?.into_iter().enumerate() {
                    if deg[k] == deg[a] + deg[c] {
                        b.add(a, c, k, x);
                    }
                }
            }
        }
        let gr = b
            .build()
            .map_err(|_| Error::InternalCheckFailed("graded algebra fails Jacobi".into()))?;
        Ok((gr, deg))
    }

    /// Decides whether `Gr(L)` is `n_{n,1}` or `Q_n` by constructing an explicit
    /// standard basis of the graded algebra.
    pub fn graded_filiform_type(&self) -> Result<GradedType> {
        if !self.is_filiform() {
            return Err(Error::NotFiliform);
        }
        let n = self.dim();
        if n == 3 {
            return Ok(GradedType::TypeNN1);
        }
        let (gr, _) = self.graded()?;
        // Adapted basis: indices 0,1 span degree 1, index d has degree d for d ≥ 2.
        let phi0 = gr.coeff(0, 2, 3);
        let phi1 = gr.coeff(1, 2, 3);
        if phi0.is_zero() && phi1.is_zero() {
            return Err(Error::Unrecognized);
        }
        let mut b = zero_vec(n);
        b[0] = phi1.clone();
        b[1] = -phi0.clone();
        let a0 = if phi0.is_zero() {
            unit_vec(n, 1)
        } else {
            unit_vec(n, 0)
        };
        let chain = |a: &[Scalar], top: usize| -> Result<Vec<Vec<Scalar>>> {
            let mut cols = vec![a.to_vec(), b.clone()];
            for i in 2..top {
                let next = gr.bracket(&cols[i - 1], a)?;
                cols.push(next);
            }
            Ok(cols)
        };
        let try_match = |cols: Vec<Vec<Scalar>>, q: bool| -> Result<bool> {
            let p = Matrix::from_cols(n, &cols);
            match gr.change_basis(&p) {
                Ok(alg) => Ok(alg == standard_filiform(n, q, gr.labels.clone())),
                Err(Error::Singular) => Ok(false),
                Err(e) => Err(e),
            }
        };
        if try_match(chain(&a0, n)?, false)? {
            return Ok(GradedType::TypeNN1);
        }
        if n.is_multiple_of(2) && n >= 6 {
            let v = unit_vec(n, n - 2);
            let va = gr.bracket(&v, &a0)?[n - 1].clone();
            let vb = gr.bracket(&v, &b)?[n - 1].clone();
            let mut a = a0.clone();
            if !vb.is_zero() {
                axpy(&mut a, &(-va / vb), &b);
            }
            let mut cols = chain(&a, n - 1)?;
            let top = gr.bracket(&cols[1], &cols[n - 2])?;
            cols.push(top);
            if try_match(cols, true)? {
                return Ok(GradedType::TypeQ);
            }
        }
        Err(Error::Unrecognized)
    }
}

/// `n_{n,1}` (`q = false`) or `Q_n` (`q = true`) with the given labels.
fn standard_filiform(n: usize, q: bool, labels: Vec<String>) -> LieAlgebra {
    let mut b = Builder::new(labels);
    let top = if q { n - 2 } else { n - 1 };
    for i in 2..=top {
        b.add_i64(i - 1, 0, i, 1);
    }
    if q {
        for i in 2..=n / 2 {
            b.add_i64(i - 1, n - i, n - 1, if i % 2 == 0 { 1 } else { -1 });
        }
    }
    b.build_unchecked()
}

/// Identical structure constants on the stored basis order.
pub fn structure_equal(a: &LieAlgebra, b: &LieAlgebra) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a.table == b.table)
}
