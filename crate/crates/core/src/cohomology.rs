//! Second cohomology with trivial coefficients and with a one-dimensional
//! weight action, computed as kernels and spans in flattened coordinates.
//!
//! A form `ψ` is flattened to its values `ψ(e_i, e_j)` on pairs `i < j`,
//! ordered lexicographically.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liecore::LieAlgebra;
use crate::ratlin::{
    dot, is_zero_vec, kernel_basis, quotient_basis, zero_vec, Matrix, QuotientSpace, Scalar,
    Subspace,
};

pub fn pair_count(dim: usize) -> usize {
    dim * dim.saturating_sub(1) / 2
}

/// Flat index of the pair `(i, j)`, `i < j`.
pub fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

/// Antisymmetric bilinear form with values in an `s`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    dim: usize,
    components: Vec<Matrix>,
}

impl Cocycle {
    pub fn zero(dim: usize, s: usize) -> Self {
        Cocycle {
            dim,
            components: vec![Matrix::zeros(dim, dim); s],
        }
    }

    /// `Δ_{i,j}`: `ψ(e_i, e_j) = 1`, `ψ(e_j, e_i) = −1`, zero elsewhere.
    pub fn delta(dim: usize, i: usize, j: usize) -> Self {
        let mut c = Self::zero(dim, 1);
        c.add_term(0, i, j, &Scalar::one());
        c
    }

    /// Adds `c·Δ_{i,j}` to component `comp`.
    pub fn add_term(&mut self, comp: usize, i: usize, j: usize, c: &Scalar) -> &mut Self {
        assert!(i != j, "diagonal term in an antisymmetric form");
        let m = &mut self.components[comp];
        let a = m.get(i, j) + c;
        let b = m.get(j, i) - c;
        m.set(i, j, a);
        m.set(j, i, b);
        self
    }

    /// One-component form from signed terms `(i, j, c)` meaning `c·Δ_{i,j}`.
    pub fn from_terms(dim: usize, terms: &[(usize, usize, Scalar)]) -> Self {
        let mut c = Self::zero(dim, 1);
        for (i, j, x) in terms {
            c.add_term(0, *i, *j, x);
        }
        c
    }

    pub fn from_flat(dim: usize, flat: &[Scalar]) -> Self {
        Self::from_flats(dim, &[flat.to_vec()])
    }

    pub fn from_flats(dim: usize, flats: &[Vec<Scalar>]) -> Self {
        let mut c = Self::zero(dim, flats.len());
        for (comp, f) in flats.iter().enumerate() {
            assert_eq!(f.len(), pair_count(dim), "flat vector length");
            for i in 0..dim {
                for j in i + 1..dim {
                    let v = &f[pair_index(dim, i, j)];
                    if !v.is_zero() {
                        c.add_term(comp, i, j, v);
                    }
                }
            }
        }
        c
    }

    /// Builds from full antisymmetric component matrices.
    pub fn from_components(dim: usize, components: Vec<Matrix>) -> Result<Self> {
        for m in &components {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: m.rows() });
            }
            for i in 0..dim {
                for j in 0..dim {
                    if m.get(i, j) != &-m.get(j, i).clone() {
                        return Err(Error::BadParams("component is not antisymmetric".into()));
                    }
                }
            }
        }
        Ok(Cocycle { dim, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn value(&self, comp: usize, i: usize, j: usize) -> &Scalar {
        self.components[comp].get(i, j)
    }

    pub fn flat(&self, comp: usize) -> Vec<Scalar> {
        let m = &self.components[comp];
        let mut out = Vec::with_capacity(pair_count(self.dim));
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.push(m.get(i, j).clone());
            }
        }
        out
    }

    /// Flattening of the first component.
    pub fn to_flat(&self) -> Vec<Scalar> {
        self.flat(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// `ψ_comp(u, v)`.
    pub fn eval(&self, comp: usize, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let m = &self.components[comp];
        let mv: Vec<Scalar> = (0..self.dim).map(|i| dot(m.row(i), v)).collect();
        dot(u, &mv)
    }

    pub fn scaled(&self, c: &Scalar) -> Cocycle {
        let comps = self
            .components
            .iter()
            .map(|m| {
                let mut out = m.clone();
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        out.set(i, j, m.get(i, j) * c);
                    }
                }
                out
            })
            .collect();
        Cocycle { dim: self.dim, components: comps }
    }

    pub fn plus(&self, other: &Cocycle) -> Cocycle {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.coeff_dim(), other.coeff_dim());
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| {
                let mut out = a.clone();
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        out.set(i, j, a.get(i, j) + b.get(i, j));
                    }
                }
                out
            })
            .collect();
        Cocycle { dim: self.dim, components: comps }
    }
}

/// Scalars by which each basis element acts on the coefficient line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAction {
    pub weights: Vec<Scalar>,
}

impl WeightAction {
    pub fn new(weights: Vec<Scalar>) -> Self {
        WeightAction { weights }
    }

    pub fn zero(dim: usize) -> Self {
        WeightAction { weights: zero_vec(dim) }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.weights)
    }

    pub fn apply(&self, x: &[Scalar]) -> Scalar {
        dot(&self.weights, x)
    }

    /// The weight must vanish on the nilradical and on `[L, L]`.
    pub fn validate(&self, l: &LieAlgebra) -> Result<()> {
        if self.weights.len() != l.dim() {
            return Err(Error::InvalidWeight(format!(
                "expected {} weights, got {}",
                l.dim(),
                self.weights.len()
            )));
        }
        if self.is_zero() {
            return Ok(());
        }
        let derived = l.derived_algebra();
        if derived.basis_vectors().iter().any(|v| !self.apply(v).is_zero()) {
            return Err(Error::InvalidWeight("nonzero on [L,L]".into()));
        }
        let nil = l.nilradical().map_err(|e| Error::InvalidWeight(e.to_string()))?;
        if nil.basis_vectors().iter().any(|v| !self.apply(v).is_zero()) {
            return Err(Error::InvalidWeight("nonzero on the nilradical".into()));
        }
        Ok(())
    }
}

/// Coefficient row of `ψ(a, Σ c_k e_k)` in flat coordinates, accumulated.
fn add_psi(row: &mut [Scalar], dim: usize, a: usize, k: usize, c: &Scalar) {
    if a == k || c.is_zero() {
        return;
    }
    if a < k {
        row[pair_index(dim, a, k)] += c;
    } else {
        row[pair_index(dim, k, a)] -= c;
    }
}

fn cocycle_system(l: &LieAlgebra, theta: &[Scalar]) -> Matrix {
    let n = l.dim();
    let p = pair_count(n);
    let mut rows = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut row = zero_vec(p);
                for (a, (u, v)) in [(x, (y, z)), (z, (x, y)), (y, (z, x))] {
                    for (k, c) in l.bracket_basis(u, v) {
                        add_psi(&mut row, n, a, *k, c);
                    }
                    add_psi(&mut row, n, u, v, &theta[a]);
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows(p, rows)
}

fn coboundary_span(l: &LieAlgebra, theta: &[Scalar]) -> Subspace {
    let n = l.dim();
    let mut vecs = Vec::with_capacity(n);
    for f in 0..n {
        let mut v = zero_vec(pair_count(n));
        for x in 0..n {
            for y in x + 1..n {
                let mut c = l.coeff(x, y, f);
                if x == f {
                    c += &theta[y];
                }
                if y == f {
                    c -= &theta[x];
                }
                v[pair_index(n, x, y)] = c;
            }
        }
        vecs.push(v);
    }
    Subspace::span(pair_count(n), vecs)
}

pub fn central_cocycles(l: &LieAlgebra) -> Subspace {
    kernel_basis(&cocycle_system(l, &zero_vec(l.dim())))
}

pub fn central_coboundaries(l: &LieAlgebra) -> Subspace {
    coboundary_span(l, &zero_vec(l.dim()))
}

pub fn central_h2(l: &LieAlgebra) -> QuotientSpace {
    quotient_basis(&central_cocycles(l), &central_coboundaries(l))
        .expect("coboundaries are cocycles")
}

pub fn twisted_cocycles(l: &LieAlgebra, theta: &WeightAction) -> Result<Subspace> {
    theta.validate(l)?;
    Ok(kernel_basis(&cocycle_system(l, &theta.weights)))
}

pub fn twisted_coboundaries(l: &LieAlgebra, theta: &WeightAction) -> Result<Subspace> {
    theta.validate(l)?;
    Ok(coboundary_span(l, &theta.weights))
}

pub fn twisted_h2(l: &LieAlgebra, theta: &WeightAction) -> Result<QuotientSpace> {
    let z = twisted_cocycles(l, theta)?;
    let b = coboundary_span(l, &theta.weights);
    quotient_basis(&z, &b)
        .map_err(|_| Error::InternalCheckFailed("twisted coboundaries not inside cocycles".into()))
}

/// Whether every component of `psi` satisfies the cocycle identity for `theta`.
pub fn is_cocycle(l: &LieAlgebra, theta: &WeightAction, psi: &Cocycle) -> bool {
    if psi.dim() != l.dim() || theta.weights.len() != l.dim() {
        return false;
    }
    let sys = cocycle_system(l, &theta.weights);
    (0..psi.coeff_dim()).all(|c| is_zero_vec(&sys.mul_vec(&psi.flat(c)).unwrap()))
}

/// `{x : ψ(x, ·) = 0}` in every component.
pub fn annihilator(l: &LieAlgebra, psi: &Cocycle) -> Subspace {
    let n = l.dim();
    let mut rows = Vec::new();
    for m in psi.components() {
        for j in 0..n {
            let col = m.col(j);
            if !is_zero_vec(&col) {
                rows.push(col);
            }
        }
    }
    kernel_basis(&Matrix::from_rows(n, rows))
}

/// `Ann(ψ) ∩ Z(N) = 0`.
pub fn t1_condition(l: &LieAlgebra, psi: &Cocycle) -> bool {
    annihilator(l, psi)
        .intersect(&l.center())
        .map(|s| s.dim() == 0)
        .unwrap_or(false)
}

/// The restriction of `psi` to `nil`, in the basis of `nil`'s stored rows.
pub fn restrict_to_nilradical(psi: &Cocycle, nil: &Subspace) -> Cocycle {
    let basis = nil.basis_vectors();
    let d = basis.len();
    let mut comps = Vec::with_capacity(psi.coeff_dim());
    for c in 0..psi.coeff_dim() {
        let mut m = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                if a != b {
                    m.set(a, b, psi.eval(c, &basis[a], &basis[b]));
                }
            }
        }
        comps.push(m);
    }
    Cocycle { dim: d, components: comps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_catalog, CatalogId};
    use crate::ratlin::int;

    #[test]
    fn pair_indexing_is_lexicographic() {
        let mut k = 0;
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(pair_index(5, i, j), k);
                k += 1;
            }
        }
        assert_eq!(k, pair_count(5));
    }

    #[test]
    fn nn1_4_dimensions() {
        let l = make_catalog(&CatalogId::nn1(4)).unwrap();
        assert_eq!(central_cocycles(&l).dim(), 4);
        assert_eq!(central_coboundaries(&l).dim(), 2);
        assert_eq!(central_h2(&l).dim(), 2);
    }

    #[test]
    fn abelian_dimensions() {
        let l = LieAlgebra::abelian(4);
        assert_eq!(central_cocycles(&l).dim(), 6);
        assert_eq!(central_coboundaries(&l).dim(), 0);
        assert_eq!(central_h2(&LieAlgebra::abelian(2)).dim(), 1);
    }

    #[test]
    fn q6_dimensions() {
        let l = make_catalog(&CatalogId::q(6)).unwrap();
        assert_eq!(central_cocycles(&l).dim(), 6);
        assert_eq!(central_coboundaries(&l).dim(), 4);
    }

    #[test]
    fn annihilator_of_top_delta() {
        let l = make_catalog(&CatalogId::nn1(5)).unwrap();
        let psi = Cocycle::delta(5, 4, 0);
        let ann = annihilator(&l, &psi);
        let expect = Subspace::span(
            5,
            (1..4).map(|i| crate::ratlin::unit_vec(5, i)).collect(),
        );
        assert_eq!(ann, expect);
        assert!(t1_condition(&l, &psi));
        assert!(!t1_condition(&l, &Cocycle::zero(5, 1)));
    }

    #[test]
    fn sn2_special_weights() {
        let l = make_catalog(&CatalogId::sn2(5)).unwrap();
        let mut w = zero_vec(7);
        w[0] = int(-4);
        w[1] = int(-1);
        let theta = WeightAction::new(w);
        assert_eq!(twisted_cocycles(&l, &theta).unwrap().dim(), 7);
        assert_eq!(twisted_coboundaries(&l, &theta).unwrap().dim(), 6);
        let h = twisted_h2(&l, &theta).unwrap();
        assert_eq!(h.dim(), 1);
        let psi = Cocycle::delta(7, 6, 2);
        assert!(is_cocycle(&l, &theta, &psi));
        let nil = l.nilradical().unwrap();
        let r = restrict_to_nilradical(&psi, &nil);
        assert_eq!(r, Cocycle::delta(5, 4, 0));
    }

    #[test]
    fn weight_on_nilradical_rejected() {
        let l = make_catalog(&CatalogId::s2(5)).unwrap();
        let mut w = zero_vec(6);
        w[1] = int(1);
        assert!(matches!(
            twisted_cocycles(&l, &WeightAction::new(w)),
            Err(Error::InvalidWeight(_))
        ));
    }

    #[test]
    fn flat_round_trip() {
        let psi = Cocycle::from_terms(4, &[(0, 3, int(2)), (2, 1, int(5))]);
        let back = Cocycle::from_flat(4, &psi.to_flat());
        assert_eq!(back, psi);
        assert_eq!(psi.value(0, 1, 2), &int(-5));
    }
}
