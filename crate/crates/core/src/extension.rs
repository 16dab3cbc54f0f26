//! Central extensions `N_ψ` and one-dimensional solvable extensions `L(ψ, θ)`.

use num_traits::Zero;

use crate::cohomology::{is_cocycle, restrict_to_nilradical, t1_condition, Cocycle, WeightAction};
use crate::error::{Error, Result};
use crate::liecore::LieAlgebra;
use crate::ratlin::{zero_vec, Scalar, Subspace};

#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: LieAlgebra,
    pub psi: Cocycle,
    /// `None` for a central extension.
    pub theta: Option<WeightAction>,
}

impl ExtensionSpec {
    pub fn central(base: LieAlgebra, psi: Cocycle) -> Self {
        ExtensionSpec { base, psi, theta: None }
    }

    pub fn solvable(base: LieAlgebra, psi: Cocycle, theta: WeightAction) -> Self {
        ExtensionSpec { base, psi, theta: Some(theta) }
    }

    pub fn coeff_dim(&self) -> usize {
        self.psi.coeff_dim()
    }

    pub fn extend(&self) -> Result<LieAlgebra> {
        match &self.theta {
            None => central_extend(&self.base, &self.psi),
            Some(t) => solvable_extend(&self.base, &self.psi, t),
        }
    }
}

/// Labels `e{m+1}, e{m+2}, …` following the largest existing `e{m}`.
fn new_labels(base: &LieAlgebra, s: usize) -> Vec<String> {
    let top = base
        .labels()
        .iter()
        .filter_map(|l| l.strip_prefix('e')?.parse::<usize>().ok())
        .max()
        .unwrap_or(base.dim());
    (1..=s).map(|t| format!("e{}", top + t)).collect()
}

fn with_new_basis(base: &LieAlgebra, psi: &Cocycle) -> crate::liecore::Builder {
    let n = base.dim();
    let s = psi.coeff_dim();
    let mut labels = base.labels().to_vec();
    labels.extend(new_labels(base, s));
    let mut b = crate::liecore::Builder::new(labels);
    for (i, j, terms) in base.structure_constants() {
        for (k, c) in terms {
            b.add(i, j, *k, c.clone());
        }
    }
    for c in 0..s {
        for i in 0..n {
            for j in i + 1..n {
                b.add(i, j, n + c, psi.value(c, i, j).clone());
            }
        }
    }
    b
}

/// `[x + u, y + v] = [x, y] + ψ(x, y)`, new basis elements appended.
pub fn central_extend(base: &LieAlgebra, psi: &Cocycle) -> Result<LieAlgebra> {
    if psi.dim() != base.dim() {
        return Err(Error::DimensionMismatch { expected: base.dim(), got: psi.dim() });
    }
    if !is_cocycle(base, &WeightAction::zero(base.dim()), psi) {
        return Err(Error::NotACocycle);
    }
    with_new_basis(base, psi).build()
}

/// `[x + u, y + v] = [x, y] + ψ(x, y) + θ(x)v − θ(y)u` on `L ⊕ ⟨e_new⟩`.
pub fn solvable_extend(base: &LieAlgebra, psi: &Cocycle, theta: &WeightAction) -> Result<LieAlgebra> {
    let n = base.dim();
    if psi.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: psi.dim() });
    }
    if psi.coeff_dim() != 1 {
        return Err(Error::BadParams("solvable extension needs a one-dimensional coefficient space".into()));
    }
    theta.validate(base)?;
    if !is_cocycle(base, theta, psi) {
        return Err(Error::NotACocycle);
    }
    let mut b = with_new_basis(base, psi);
    for i in 0..n {
        b.add(i, n, n, theta.weights[i].clone());
    }
    b.build()
}

/// Whether the nilradical of `ltilde` is the nilradical of `l` plus the new line.
/// Cross-checked against `θ` vanishing on the nilradical of `l`.
pub fn nilradical_is_central_ext(ltilde: &LieAlgebra, l: &LieAlgebra, theta: &WeightAction) -> Result<bool> {
    let n = l.dim();
    let nil = l.nilradical()?;
    let mut vecs: Vec<_> = nil
        .basis_vectors()
        .into_iter()
        .map(|mut v| {
            v.push(Scalar::zero());
            v
        })
        .collect();
    let mut top = zero_vec(n + 1);
    top[n] = num_traits::One::one();
    vecs.push(top);
    let expect = Subspace::span(n + 1, vecs);
    let got = ltilde.nilradical()?;
    let computed = got == expect;
    let criterion = nil.basis_vectors().iter().all(|v| theta.apply(v).is_zero());
    if computed != criterion {
        return Err(Error::InternalCheckFailed(
            "nilradical of the extension disagrees with the kernel criterion".into(),
        ));
    }
    Ok(computed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonSplitConditions {
    /// The coefficient line is not a split abelian summand.
    pub cond1: bool,
    /// `Ann(ψ⁰) ∩ Z(N) = 0` for the restriction `ψ⁰` to the nilradical `N`.
    pub cond2: bool,
}

pub fn nonsplit_conditions(l: &LieAlgebra, theta: &WeightAction, psi: &Cocycle) -> Result<NonSplitConditions> {
    let cond1 = !(psi.is_zero() && theta.is_zero());
    let nil = l.nilradical()?;
    let nil_alg = l.restrict_to(&nil)?;
    let psi0 = restrict_to_nilradical(psi, &nil);
    let cond2 = t1_condition(&nil_alg, &psi0);
    Ok(NonSplitConditions { cond1, cond2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_catalog, structure_equal, CatalogId};
    use crate::ratlin::int;

    #[test]
    fn nn1_top_delta_gives_next_nn1() {
        let l = make_catalog(&CatalogId::nn1(5)).unwrap();
        let ext = central_extend(&l, &Cocycle::delta(5, 4, 0)).unwrap();
        assert!(structure_equal(&ext, &make_catalog(&CatalogId::nn1(6)).unwrap()).unwrap());
    }

    #[test]
    fn pairing_gives_q6() {
        let l = make_catalog(&CatalogId::nn1(5)).unwrap();
        let psi = Cocycle::from_terms(5, &[(1, 4, int(1)), (2, 3, int(-1))]);
        let ext = central_extend(&l, &psi).unwrap();
        assert!(structure_equal(&ext, &make_catalog(&CatalogId::q(6)).unwrap()).unwrap());
    }

    #[test]
    fn zero_cocycle_adds_abelian_line() {
        let l = make_catalog(&CatalogId::nn1(4)).unwrap();
        let ext = central_extend(&l, &Cocycle::zero(4, 1)).unwrap();
        assert_eq!(ext.dim(), 5);
        assert_eq!(ext.center().dim(), 2);
        assert_eq!(ext.labels()[4], "e5");
    }

    #[test]
    fn non_cocycle_rejected() {
        let l = make_catalog(&CatalogId::nn1(5)).unwrap();
        let bad = Cocycle::delta(5, 0, 1);
        assert!(central_extend(&l, &bad).is_ok());
        let bad = Cocycle::delta(5, 1, 3);
        assert_eq!(central_extend(&l, &bad), Err(Error::NotACocycle));
    }

    #[test]
    fn sn2_special_extension() {
        let l = make_catalog(&CatalogId::sn2(5)).unwrap();
        let mut w = zero_vec(7);
        w[0] = int(-4);
        w[1] = int(-1);
        let theta = WeightAction::new(w);
        let psi = Cocycle::delta(7, 6, 2);
        let ext = solvable_extend(&l, &psi, &theta).unwrap();
        assert!(structure_equal(&ext, &make_catalog(&CatalogId::sn2(6)).unwrap()).unwrap());
        assert_eq!(ext.coeff(7, 0, 7), int(4));
        assert!(nilradical_is_central_ext(&ext, &l, &theta).unwrap());
        let c = nonsplit_conditions(&l, &theta, &psi).unwrap();
        assert!(c.cond1 && c.cond2);
    }

    #[test]
    fn trivial_conditions() {
        let l = make_catalog(&CatalogId::s2(5)).unwrap();
        let c = nonsplit_conditions(&l, &WeightAction::zero(6), &Cocycle::zero(6, 1)).unwrap();
        assert!(!c.cond1 && !c.cond2);
    }
}
