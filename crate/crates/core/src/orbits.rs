//! Automorphism families, their action on cocycles, and normalization of
//! cohomology lines to canonical representatives.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::{make_catalog, CatalogId, Family};
use crate::cohomology::{
    central_cocycles, central_coboundaries, is_cocycle, t1_condition, twisted_coboundaries,
    twisted_cocycles, Cocycle, WeightAction,
};
use crate::error::{Error, Result};
use crate::extension::nonsplit_conditions;
use crate::liecore::LieAlgebra;
use crate::ratlin::{
    format_scalar, int, quotient_with_reps, rational_root, solve_combination, sub_vec, Matrix,
    QuotientSpace, Scalar, Subspace,
};

/// Named parameters of an automorphism of a catalog algebra.
///
/// Unset parameters are zero, except the scaling ones (`a1`, `b1`, `b2`, `c2`,
/// `alpha1`, `alpha2`, as the family uses them) which default to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutParams {
    pub id: CatalogId,
    pub values: BTreeMap<String, Scalar>,
}

impl AutParams {
    pub fn identity(id: &CatalogId) -> Self {
        AutParams { id: id.clone(), values: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, v: Scalar) -> Self {
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn set(&mut self, name: &str, v: Scalar) {
        self.values.insert(name.to_string(), v);
    }

    fn default_one(&self, name: &str) -> bool {
        matches!(
            (self.id.family, name),
            (Family::NN1, "a1" | "b2")
                | (Family::SN2, "alpha1" | "alpha2")
                | (Family::S1, "b1" | "c2")
                | (Family::S2, "b1" | "c2")
                | (Family::S3, "b1")
                | (Family::S4, "c2")
        )
    }

    pub fn get(&self, name: &str) -> Scalar {
        match self.values.get(name) {
            Some(v) => v.clone(),
            None if self.default_one(name) => Scalar::one(),
            None => Scalar::zero(),
        }
    }

    fn idx(&self, prefix: &str, i: usize) -> Scalar {
        self.get(&format!("{prefix}{i}"))
    }
}

impl fmt::Display for AutParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(k, v)| format!("{k}={}", format_scalar(v)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    matrix: Matrix,
    params: Option<AutParams>,
}

impl Automorphism {
    /// Checks invertibility and bracket preservation of an explicit matrix
    /// whose columns are the images of the basis vectors.
    pub fn explicit(l: &LieAlgebra, matrix: Matrix) -> Result<Self> {
        check_automorphism(l, &matrix)?;
        Ok(Automorphism { matrix, params: None })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn params(&self) -> Option<&AutParams> {
        self.params.as_ref()
    }
}

fn check_automorphism(l: &LieAlgebra, p: &Matrix) -> Result<()> {
    let n = l.dim();
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.rows() });
    }
    if p.inverse().is_err() {
        return Err(Error::NotInvertible("matrix is singular".into()));
    }
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| p.col(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = l.bracket(&cols[i], &cols[j])?;
            let mut rhs = crate::ratlin::zero_vec(n);
            for (k, c) in l.bracket_basis(i, j) {
                crate::ratlin::axpy(&mut rhs, c, &cols[*k]);
            }
            if lhs != rhs {
                return Err(Error::NotAnAutomorphism { i, j });
            }
        }
    }
    Ok(())
}

fn factorial(k: usize) -> Scalar {
    (1..=k).fold(Scalar::one(), |acc, i| acc * int(i as i64))
}

fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn pow(x: &Scalar, k: usize) -> Scalar {
    num_traits::pow(x.clone(), k)
}

/// Assembles the parametrized automorphism matrix of the family of `p.id`.
fn aut_matrix(p: &AutParams) -> Result<Matrix> {
    let id = &p.id;
    let n = id.n;
    let d = id.dim();
    let e = |i: usize| id.e(i);
    let mut m = Matrix::zeros(d, d);
    let mut put = |row: usize, col: usize, v: Scalar| {
        let cur = m.get(row, col).clone();
        m.set(row, col, cur + v);
    };
    let nonzero = |name: &str| -> Result<Scalar> {
        let v = p.get(name);
        if v.is_zero() {
            Err(Error::NotInvertible(format!("{name} must be nonzero")))
        } else {
            Ok(v)
        }
    };
    match id.family {
        Family::NN1 => {
            let a1 = nonzero("a1")?;
            nonzero("b2")?;
            put(e(1), e(1), a1.clone());
            for i in 2..=n {
                put(e(i), e(1), p.idx("a", i));
                put(e(i), e(2), p.idx("b", i));
            }
            for j in 3..=n {
                for i in j..=n {
                    put(e(i), e(j), pow(&a1, j - 2) * p.idx("b", i - j + 2));
                }
            }
        }
        Family::SN2 => {
            let (x1, x2) = (0, 1);
            let beta = p.get("beta");
            let al1 = nonzero("alpha1")?;
            let al2 = nonzero("alpha2")?;
            let b = |k: usize| p.idx("b", k);
            put(x1, x1, Scalar::one());
            put(e(1), x1, beta.clone());
            for k in 3..=n {
                put(e(k), x1, int(k as i64 - 2) * b(k) + &beta * b(k - 1));
            }
            put(x2, x2, Scalar::one());
            for k in 2..=n {
                put(e(k), x2, b(k));
            }
            put(e(1), e(1), al1.clone());
            for k in 3..=n {
                put(e(k), e(1), &al1 * b(k - 1));
            }
            for i in 2..=n {
                let c = pow(&al1, i - 2) * &al2;
                put(e(i), e(i), c.clone());
                for k in 3..=n + 2 - i {
                    put(e(i - 2 + k), e(i), &c * sign(k) * pow(&beta, k - 2) / factorial(k - 2));
                }
            }
        }
        Family::S1 => {
            let beta = id.params[0].clone();
            let a1 = p.get("a1");
            let b1 = nonzero("b1")?;
            let c2 = nonzero("c2")?;
            put(0, 0, Scalar::one());
            put(e(1), 0, a1.clone());
            put(e(n), 0, p.idx("a", n));
            for k in 2..n {
                put(e(k), 0, (&beta + int(k as i64 - 2)) * p.idx("b", k + 1) / &b1);
            }
            put(e(1), e(1), b1.clone());
            // Only an automorphism when β = 1, where e1 and e2 share a weight.
            put(e(2), e(1), p.idx("b", 2));
            for k in 3..=n {
                put(e(k), e(1), p.idx("b", k));
            }
            for k in 2..=n {
                put(e(k), e(2), &c2 * sign(k) * pow(&a1, k - 2) / factorial(k - 2));
            }
            for i in 3..=n {
                for k in i..=n {
                    put(e(k), e(i), pow(&b1, i - 2) * &c2 * sign(k - i) * pow(&a1, k - i) / factorial(k - i));
                }
            }
        }
        Family::S2 => {
            let b1 = nonzero("b1")?;
            nonzero("c2")?;
            put(0, 0, Scalar::one());
            for k in 2..=n {
                put(e(k), 0, p.idx("a", k));
            }
            put(e(1), e(1), b1.clone());
            for k in 3..=n {
                put(e(k), e(1), &b1 * p.idx("a", k - 1));
            }
            for k in 2..=n {
                put(e(k), e(2), p.idx("c", k));
            }
            for i in 3..=n {
                for k in i..=n {
                    put(e(k), e(i), pow(&b1, i - 2) * p.idx("c", k - i + 2));
                }
            }
        }
        Family::S3 => {
            let b1 = nonzero("b1")?;
            let a1 = p.get("a1");
            put(0, 0, Scalar::one());
            for k in 1..=n {
                put(e(k), 0, p.idx("a", k));
                put(e(k), e(1), p.idx("b", k));
            }
            for i in 2..=n {
                for k in i..=n {
                    put(e(k), e(i), pow(&b1, i - 1) * sign(k + 2 - i) * pow(&a1, k - i) / factorial(k - i));
                }
            }
        }
        Family::S4 => {
            nonzero("c2")?;
            let alpha = |l: usize| id.params[l - 3].clone();
            let b = |k: usize| p.idx("b", k);
            put(0, 0, Scalar::one());
            put(e(n), 0, p.idx("a", n));
            for k in 2..n {
                let mut v = b(k + 1);
                for l in 3..k {
                    v += alpha(l) * b(k + 2 - l);
                }
                put(e(k), 0, v);
            }
            put(e(1), e(1), Scalar::one());
            for k in 3..=n {
                put(e(k), e(1), b(k));
            }
            for i in 2..=n {
                for k in i..=n {
                    put(e(k), e(i), p.idx("c", k + 2 - i));
                }
            }
        }
        f => {
            return Err(Error::BadParams(format!(
                "no automorphism table for family {}",
                f.tag()
            )))
        }
    }
    Ok(m)
}

/// The automorphism of `l` with parameters `p`; `l` must be the catalog algebra of `p.id`.
pub fn make_aut(l: &LieAlgebra, p: &AutParams) -> Result<Automorphism> {
    if l.dim() != p.id.dim() {
        return Err(Error::DimensionMismatch { expected: p.id.dim(), got: l.dim() });
    }
    let m = aut_matrix(p)?;
    check_automorphism(l, &m)?;
    Ok(Automorphism { matrix: m, params: Some(p.clone()) })
}

/// `(φψ)(x, y) = ψ(φx, φy)`, i.e. `Pᵀ Ψ P` per component.
pub fn pullback(phi: &Automorphism, psi: &Cocycle) -> Result<Cocycle> {
    let p = phi.matrix();
    if p.rows() != psi.dim() {
        return Err(Error::DimensionMismatch { expected: p.rows(), got: psi.dim() });
    }
    let pt = p.transpose();
    let comps = psi
        .components()
        .iter()
        .map(|m| pt.mul(m).and_then(|x| x.mul(p)))
        .collect::<Result<Vec<_>>>()?;
    Cocycle::from_components(psi.dim(), comps)
}

pub fn class_equal(psi1: &Cocycle, psi2: &Cocycle, b: &Subspace) -> bool {
    psi1.coeff_dim() == psi2.coeff_dim()
        && (0..psi1.coeff_dim()).all(|c| b.contains(&sub_vec(&psi1.flat(c), &psi2.flat(c))))
}

/// Whether `psi1 − λ·psi2 ∈ B` for some nonzero `λ` (first component).
pub fn line_equal(psi1: &Cocycle, psi2: &Cocycle, b: &Subspace) -> bool {
    let v1 = psi1.to_flat();
    let v2 = psi2.to_flat();
    if b.contains(&v2) {
        return b.contains(&v1);
    }
    let mut vecs = vec![v2];
    vecs.extend(b.basis_vectors());
    match solve_combination(&vecs, &v1) {
        Some(sol) => !sol[0].is_zero(),
        None => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCase {
    pub family: Family,
    pub case: u8,
    pub k: Option<usize>,
    /// Coefficients of the representative along the case's class basis.
    pub coeffs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepId {
    Nabla1,
    Nabla1PlusK(usize),
    NablaHalf,
    Twisted(TwistedCase),
}

impl fmt::Display for RepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepId::Nabla1 => write!(f, "nabla1"),
            RepId::Nabla1PlusK(k) => write!(f, "nabla1+nabla{k}"),
            RepId::NablaHalf => write!(f, "nabla_half"),
            RepId::Twisted(t) => {
                let c: Vec<String> = t.coeffs.iter().map(format_scalar).collect();
                write!(f, "{}:case{}", t.family.tag(), t.case)?;
                if let Some(k) = t.k {
                    write!(f, ":k={k}")?;
                }
                write!(f, ":[{}]", c.join(","))
            }
        }
    }
}

/// `Σ_{i=2}^{k} (−1)^i Δ(e_i, e_{2k+1−i})`, with `e_i` at basis position `offset + i − 1`.
pub fn pairing_cocycle(dim: usize, offset: usize, k: usize) -> Cocycle {
    let terms: Vec<_> = (2..=k)
        .map(|i| (offset + i - 1, offset + 2 * k - i, sign(i)))
        .collect();
    Cocycle::from_terms(dim, &terms)
}

/// `∇_1 = Δ_{n,1}` and `∇_j = Σ_{i=2}^{j} (−1)^i Δ_{i,2j+1−i}` on `n_{n,1}`.
pub fn nabla(n: usize, j: usize) -> Cocycle {
    if j == 1 {
        Cocycle::delta(n, n - 1, 0)
    } else {
        pairing_cocycle(n, 0, j)
    }
}

pub fn nn1_h2_basis(n: usize) -> Vec<Cocycle> {
    (1..=n.div_ceil(2)).map(|j| nabla(n, j)).collect()
}

pub fn nn1_representative(n: usize, rep: &RepId) -> Result<Cocycle> {
    match rep {
        RepId::Nabla1 => Ok(nabla(n, 1)),
        RepId::Nabla1PlusK(k) if *k >= 2 && 2 * k < n + 1 => Ok(nabla(n, 1).plus(&nabla(n, *k))),
        RepId::NablaHalf if n % 2 == 1 => Ok(nabla(n, n.div_ceil(2))),
        _ => Err(Error::BadParams(format!("{rep} is not a representative for n={n}"))),
    }
}

fn nn1_quotient(l: &LieAlgebra, n: usize) -> Result<QuotientSpace> {
    let reps = nn1_h2_basis(n).iter().map(Cocycle::to_flat).collect();
    quotient_with_reps(&central_cocycles(l), &central_coboundaries(l), reps)
        .map_err(|_| Error::InternalCheckFailed("∇ classes do not form a basis of H²".into()))
}

/// Sets `b_{2t}`, `t = 2..k−1`, so that the `∇_{k−t+1}` coordinates vanish.
fn b_even_recursion(p: &mut AutParams, alpha: &[Scalar], k: usize) {
    let a = |j: usize| alpha[j - 1].clone();
    for t in 2..k {
        let b = |i: usize| p.idx("b", i);
        let mut s = Scalar::zero();
        for i in 2..=t + 1 {
            s += sign(i) * a(k - t - 1 + i) * b(i) * b(i);
        }
        for j in (k + 2).saturating_sub(t)..k {
            for i in 2..=(j + t).saturating_sub(k) {
                s += int(2) * sign(i) * a(j) * b(i) * b(2 * (j + t + 1 - k) - i);
            }
        }
        for i in 2..t {
            s -= int(2) * a(k) * sign(i) * b(i + 1) * b(2 * t + 1 - i);
        }
        let v = -s / (int(2) * a(k) * b(2));
        p.set(&format!("b{}", 2 * t), v);
    }
}

/// Carries the line of `psi` in `H²(n_{n,1})` to `⟨∇1⟩`, `⟨∇1 + ∇k⟩` or `⟨∇_{(n+1)/2}⟩`.
pub fn normalize_nn1_line(n: usize, psi: &Cocycle) -> Result<(RepId, AutParams)> {
    let id = CatalogId::nn1(n);
    let l = make_catalog(&id)?;
    if !is_cocycle(&l, &WeightAction::zero(n), psi) {
        return Err(Error::NotACocycle);
    }
    if !t1_condition(&l, psi) {
        return Err(Error::NotNormalizable("Ann(ψ) meets the center".into()));
    }
    let q = nn1_quotient(&l, n)?;
    let alpha = q
        .coords(&psi.to_flat())
        .ok_or_else(|| Error::InternalCheckFailed("cocycle outside Z²".into()))?;
    let m = n.div_ceil(2);
    let mut p = AutParams::identity(&id);
    let rep = if n % 2 == 1 && !alpha[m - 1].is_zero() {
        p.set("a2", &alpha[0] / &alpha[m - 1]);
        b_even_recursion(&mut p, &alpha, m);
        RepId::NablaHalf
    } else {
        if alpha[0].is_zero() {
            return Err(Error::NotNormalizable("∇1 coordinate vanishes".into()));
        }
        match (2..=m).rev().find(|&j| !alpha[j - 1].is_zero()) {
            None => RepId::Nabla1,
            Some(k) => {
                p.set("b2", &alpha[0] / &alpha[k - 1]);
                b_even_recursion(&mut p, &alpha, k);
                RepId::Nabla1PlusK(k)
            }
        }
    };
    let phi = make_aut(&l, &p)?;
    let target = nn1_representative(n, &rep)?;
    if !line_equal(&pullback(&phi, psi)?, &target, q.sub()) {
        return Err(Error::InternalCheckFailed(format!(
            "normalization to {rep} did not reach the representative line"
        )));
    }
    Ok((rep, p))
}

/// A weight case of a solvable family with its basis of cohomology classes.
#[derive(Clone, Debug)]
pub struct TwistedCaseData {
    pub family: Family,
    pub case: u8,
    pub k: Option<usize>,
    pub classes: Vec<Cocycle>,
}

/// Weight `θ(x) = γ` on a codimension-one family, zero elsewhere.
pub fn codim1_weight(id: &CatalogId, gamma: Scalar) -> WeightAction {
    let mut w = crate::ratlin::zero_vec(id.dim());
    w[0] = gamma;
    WeightAction::new(w)
}

/// Weight `θ(x1) = a`, `θ(x2) = b` on a codimension-two family.
pub fn codim2_weight(id: &CatalogId, a: Scalar, b: Scalar) -> WeightAction {
    let mut w = crate::ratlin::zero_vec(id.dim());
    w[0] = a;
    w[1] = b;
    WeightAction::new(w)
}

fn as_usize(q: &Scalar) -> Option<usize> {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_usize()
    } else {
        None
    }
}

/// Identifies the special-weight case of `theta` on the catalog algebra `id`,
/// with the representatives of `H²(L, θ)` used for normalization.
pub fn twisted_case(id: &CatalogId, theta: &WeightAction) -> Option<TwistedCaseData> {
    let n = id.n;
    let d = id.dim();
    let e = |i: usize| id.e(i);
    let off = id.family.outer();
    let g = theta.weights.first()?.clone();
    let ni = int(n as i64);
    let top_delta = Cocycle::delta(d, e(n), e(1));
    let full_pairing = pairing_cocycle(d, off, n.div_ceil(2));
    let data = |case: u8, k: Option<usize>, classes: Vec<Cocycle>| {
        Some(TwistedCaseData { family: id.family, case, k, classes })
    };
    let rest_zero = theta.weights.iter().skip(off).all(Zero::is_zero);
    if !rest_zero {
        return None;
    }
    match id.family {
        Family::S1 => {
            let beta = id.params[0].clone();
            if g == int(1) - &ni - &beta {
                let two_k = &ni + int(2) - &beta;
                let k = as_usize(&(two_k / int(2))).filter(|&k| k >= 2 && k <= n.div_ceil(2));
                match k {
                    Some(k) if (&ni + int(2) - &beta) == int(2 * k as i64) => {
                        data(1, Some(k), vec![top_delta, pairing_cocycle(d, off, k)])
                    }
                    _ => data(2, None, vec![top_delta]),
                }
            } else if n % 2 == 1 && g == int(-1) && beta == crate::ratlin::frac(3 - n as i64, 2) {
                data(4, None, vec![Cocycle::delta(d, e(1), 0), full_pairing])
            } else if n % 2 == 1 && g == int(2) - &ni - int(2) * &beta && beta != int(1) {
                data(3, None, vec![full_pairing])
            } else {
                None
            }
        }
        Family::S2 => {
            if g == int(-1) {
                data(1, None, vec![Cocycle::delta(d, e(2), 0), top_delta])
            } else if g == int(-2) && n % 2 == 1 {
                let classes = (2..=n.div_ceil(2)).map(|k| pairing_cocycle(d, off, k)).collect();
                data(2, None, classes)
            } else {
                None
            }
        }
        Family::S3 => (g == -ni).then(|| TwistedCaseData {
            family: id.family,
            case: 1,
            k: None,
            classes: vec![top_delta],
        }),
        Family::S4 => {
            let odd_zero = (3..n).step_by(2).all(|j| id.params[j - 3].is_zero());
            if g == int(-1) {
                let mut second = top_delta.clone();
                for j in 3..n {
                    second.add_term(0, e(j), 0, &id.params[n + 2 - j - 3]);
                }
                data(1, None, vec![Cocycle::delta(d, e(2), 0), second])
            } else if g == int(-2) && n % 2 == 1 && odd_zero {
                let classes = (2..=n.div_ceil(2)).map(|k| pairing_cocycle(d, off, k)).collect();
                data(2, None, classes)
            } else {
                None
            }
        }
        Family::SN2 => {
            let b = theta.weights.get(1)?.clone();
            if g == int(1) - &ni && b == int(-1) {
                data(1, None, vec![top_delta])
            } else if n % 2 == 1 && g == int(2) - &ni && b == int(-2) {
                data(2, None, vec![full_pairing])
            } else {
                None
            }
        }
        _ => None,
    }
}

fn twisted_quotient(l: &LieAlgebra, theta: &WeightAction, classes: &[Cocycle]) -> Result<QuotientSpace> {
    let z = twisted_cocycles(l, theta)?;
    let b = twisted_coboundaries(l, theta)?;
    quotient_with_reps(&z, &b, classes.iter().map(Cocycle::to_flat).collect()).map_err(|_| {
        Error::InternalCheckFailed("case classes do not form a basis of the twisted H²".into())
    })
}

pub fn twisted_representative(id: &CatalogId, theta: &WeightAction, rep: &RepId) -> Result<Cocycle> {
    let RepId::Twisted(t) = rep else {
        return Err(Error::BadParams(format!("{rep} is not a twisted representative")));
    };
    let data = twisted_case(id, theta)
        .ok_or_else(|| Error::NotNormalizable("weight matches no case".into()))?;
    if data.case != t.case || data.classes.len() != t.coeffs.len() {
        return Err(Error::BadParams(format!("{rep} does not match the weight case")));
    }
    let mut out = Cocycle::zero(id.dim(), 1);
    for (c, cls) in t.coeffs.iter().zip(&data.classes) {
        out = out.plus(&cls.scaled(c));
    }
    Ok(out)
}

/// Whether pulling `psi` back along the automorphism `params` lands on the
/// line of the representative `rep`, modulo twisted coboundaries.
pub fn twisted_orbit_witness(
    id: &CatalogId,
    rep: &RepId,
    psi: &Cocycle,
    theta: &WeightAction,
    params: &AutParams,
) -> Result<bool> {
    let l = make_catalog(id)?;
    if !is_cocycle(&l, theta, psi) {
        return Err(Error::NotACocycle);
    }
    let b = twisted_coboundaries(&l, theta)?;
    let target = match twisted_representative(id, theta, rep) {
        Ok(t) => t,
        Err(Error::BadParams(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let phi = make_aut(&l, params)?;
    Ok(line_equal(&pullback(&phi, psi)?, &target, &b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    Normalized(RepId, AutParams),
    /// The recipe needs a root that does not exist over ℚ.
    NeedsRootExtension(String),
}

/// Coordinates of the pullback of `psi` along `p`.
fn pulled_coords(l: &LieAlgebra, q: &QuotientSpace, p: &AutParams, psi: &Cocycle) -> Result<Vec<Scalar>> {
    let phi = make_aut(l, p)?;
    q.coords(&pullback(&phi, psi)?.to_flat())
        .ok_or_else(|| Error::InternalCheckFailed("pullback left the cocycle space".into()))
}

/// Sets `c_{2t}`, `t = 2..m−1`, to kill the pairing coordinate `m−t` (1-based),
/// solving each step as an affine equation in the new parameter.
fn eliminate_lower_pairings(l: &LieAlgebra, q: &QuotientSpace, p: &mut AutParams, psi: &Cocycle) -> Result<()> {
    let m = q.dim() + 1;
    for t in 2..m {
        let name = format!("c{}", 2 * t);
        let pos = m - 1 - t;
        p.set(&name, Scalar::zero());
        let f0 = pulled_coords(l, q, p, psi)?[pos].clone();
        p.set(&name, Scalar::one());
        let f1 = pulled_coords(l, q, p, psi)?[pos].clone();
        let slope = &f1 - &f0;
        if slope.is_zero() {
            return Err(Error::InternalCheckFailed(format!("{name} does not act on coordinate {}", pos + 1)));
        }
        p.set(&name, -f0 / slope);
    }
    Ok(())
}

pub fn solve_twisted_normalization(id: &CatalogId, psi: &Cocycle, theta: &WeightAction) -> Result<Normalization> {
    let l = make_catalog(id)?;
    if !is_cocycle(&l, theta, psi) {
        return Err(Error::NotACocycle);
    }
    let conds = nonsplit_conditions(&l, theta, psi)?;
    if !(conds.cond1 && conds.cond2) {
        return Err(Error::NotNormalizable("non-split conditions fail".into()));
    }
    let data = twisted_case(id, theta)
        .ok_or_else(|| Error::NotNormalizable("weight matches no case".into()))?;
    let q = twisted_quotient(&l, theta, &data.classes)?;
    let d = q
        .coords(&psi.to_flat())
        .ok_or_else(|| Error::InternalCheckFailed("cocycle outside Z²".into()))?;
    let n = id.n;
    let mut p = AutParams::identity(id);
    let zero = Scalar::zero;
    let one = Scalar::one;
    let nz = |i: usize| !d[i].is_zero();
    let coeffs: Vec<Scalar> = match (id.family, data.case) {
        (Family::S1, 1) => {
            let k = data.k.unwrap();
            if !nz(1) {
                vec![one(), zero()]
            } else if 2 * k < n + 1 {
                p.set("c2", &d[0] / &d[1]);
                vec![one(), one()]
            } else {
                // β = 1 here, and b2 moves ∇_k into ∇_1.
                p.set("b2", &d[0] / &d[1]);
                vec![zero(), one()]
            }
        }
        (Family::S1, 4) => {
            if !nz(0) || !nz(1) {
                let mut c = vec![zero(); 2];
                c[if nz(0) { 0 } else { 1 }] = one();
                c
            } else {
                // The ratio δ1/δ2 moves by b1^{n−3}·c2², a square.
                let r = &d[0] / &d[1];
                match rational_root(&r, 2) {
                    Some(c2) => {
                        p.set("c2", c2);
                        vec![one(), one()]
                    }
                    None => {
                        return Ok(Normalization::NeedsRootExtension(format!("c2^2 = {}", format_scalar(&r))))
                    }
                }
            }
        }
        (Family::S2, 1) => {
            if !nz(0) {
                vec![zero(), one()]
            } else {
                let ratio = &d[0] / &d[1];
                match rational_root(&ratio, (n - 1) as u32) {
                    Some(b1) => {
                        p.set("b1", b1);
                        vec![one(), one()]
                    }
                    None => {
                        return Ok(Normalization::NeedsRootExtension(format!(
                            "b1^{} = {}",
                            n - 1,
                            format_scalar(&ratio)
                        )))
                    }
                }
            }
        }
        (Family::S2, 2) | (Family::S4, 2) => {
            eliminate_lower_pairings(&l, &q, &mut p, psi)?;
            let mut c = vec![zero(); d.len()];
            c[d.len() - 1] = one();
            c
        }
        (Family::S4, 1) => vec![&d[0] / &d[1], one()],
        _ => vec![one(); d.len()],
    };
    let rep = RepId::Twisted(TwistedCase { family: id.family, case: data.case, k: data.k, coeffs });
    if !twisted_orbit_witness(id, &rep, psi, theta, &p)? {
        return Err(Error::InternalCheckFailed(format!(
            "normalization to {rep} did not reach the representative line"
        )));
    }
    Ok(Normalization::Normalized(rep, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::frac;

    fn nn1(n: usize) -> LieAlgebra {
        make_catalog(&CatalogId::nn1(n)).unwrap()
    }

    #[test]
    fn identity_and_diagonal_automorphisms() {
        let id = CatalogId::nn1(5);
        let l = nn1(5);
        let phi = make_aut(&l, &AutParams::identity(&id)).unwrap();
        assert_eq!(phi.matrix(), &Matrix::identity(5));
        let phi = make_aut(&l, &AutParams::identity(&id).with("a1", int(2))).unwrap();
        for i in 2..=5 {
            assert_eq!(phi.matrix().get(i - 1, i - 1), &pow(&int(2), i - 2));
        }
        assert_eq!(phi.matrix().get(0, 0), &int(2));
        assert!(matches!(
            make_aut(&l, &AutParams::identity(&id).with("a1", int(0))),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn sn2_shift_terms() {
        let id = CatalogId::sn2(5);
        let l = make_catalog(&id).unwrap();
        let p = AutParams::identity(&id).with("beta", int(1)).with("b3", int(1));
        let phi = make_aut(&l, &p).unwrap();
        // φ(x1) e3 coefficient: (3−2)·b3 + β·b2 = 1.
        assert_eq!(phi.matrix().get(id.e(3), 0), &int(1));
        assert_eq!(phi.matrix().get(id.e(1), 0), &int(1));
    }

    #[test]
    fn top_delta_scales_by_a1_power() {
        let id = CatalogId::nn1(6);
        let l = nn1(6);
        let phi = make_aut(&l, &AutParams::identity(&id).with("a1", int(2))).unwrap();
        let pulled = pullback(&phi, &nabla(6, 1)).unwrap();
        let b = central_coboundaries(&l);
        assert!(class_equal(&pulled, &nabla(6, 1).scaled(&int(32)), &b));
    }

    #[test]
    fn class_and_line_equality() {
        let l5 = nn1(5);
        let b5 = central_coboundaries(&l5);
        assert!(class_equal(&Cocycle::delta(5, 2, 0), &Cocycle::zero(5, 1), &b5));
        assert!(!class_equal(&Cocycle::delta(5, 4, 0), &Cocycle::zero(5, 1), &b5));
        let b6 = central_coboundaries(&nn1(6));
        let s = nabla(6, 1).plus(&nabla(6, 2));
        assert!(line_equal(&s, &s.scaled(&int(3)), &b6));
        assert!(!line_equal(&nabla(6, 1), &s, &b6));
    }

    #[test]
    fn normalize_examples() {
        let (r, p) = normalize_nn1_line(6, &nabla(6, 1)).unwrap();
        assert_eq!(r, RepId::Nabla1);
        assert!(p.values.is_empty());
        let psi = nabla(6, 1).plus(&nabla(6, 2).scaled(&int(2)));
        let (r, p) = normalize_nn1_line(6, &psi).unwrap();
        assert_eq!(r, RepId::Nabla1PlusK(2));
        assert_eq!(p.get("b2"), frac(1, 2));
        let psi = nabla(5, 1).plus(&nabla(5, 3));
        let (r, p) = normalize_nn1_line(5, &psi).unwrap();
        assert_eq!(r, RepId::NablaHalf);
        assert_eq!(p.get("a2"), int(1));
        assert!(matches!(
            normalize_nn1_line(6, &nabla(6, 2)),
            Err(Error::NotNormalizable(_))
        ));
    }

    #[test]
    fn s2_root_extension() {
        let id = CatalogId::s2(5);
        let theta = codim1_weight(&id, int(-1));
        let data = twisted_case(&id, &theta).unwrap();
        let psi = data.classes[0].scaled(&int(16)).plus(&data.classes[1]);
        match solve_twisted_normalization(&id, &psi, &theta).unwrap() {
            Normalization::Normalized(_, p) => assert_eq!(p.get("b1"), int(2)),
            other => panic!("unexpected {other:?}"),
        }
        let psi = data.classes[0].scaled(&int(3)).plus(&data.classes[1]);
        assert!(matches!(
            solve_twisted_normalization(&id, &psi, &theta).unwrap(),
            Normalization::NeedsRootExtension(_)
        ));
    }

    #[test]
    fn s1_case1_witness() {
        let id = CatalogId::s1(6, int(2));
        let theta = codim1_weight(&id, int(1 - 6 - 2));
        let data = twisted_case(&id, &theta).unwrap();
        assert_eq!((data.case, data.k), (1, Some(3)));
        let psi = data.classes[0].plus(&data.classes[1]);
        let rep = RepId::Twisted(TwistedCase {
            family: Family::S1,
            case: 1,
            k: Some(3),
            coeffs: vec![int(1), int(1)],
        });
        let p = AutParams::identity(&id).with("c2", int(1));
        assert!(twisted_orbit_witness(&id, &rep, &psi, &theta, &p).unwrap());
        let wrong = RepId::Twisted(TwistedCase {
            family: Family::S1,
            case: 1,
            k: Some(3),
            coeffs: vec![int(1), int(0)],
        });
        assert!(!twisted_orbit_witness(&id, &wrong, &psi, &theta, &p).unwrap());
    }

    #[test]
    fn s1_beta_one_shift_only_for_beta_one() {
        let id = CatalogId::s1(5, int(1));
        let l = make_catalog(&id).unwrap();
        assert!(make_aut(&l, &AutParams::identity(&id).with("b2", int(4))).is_ok());
        let id = CatalogId::s1(5, int(2));
        let l = make_catalog(&id).unwrap();
        assert!(make_aut(&l, &AutParams::identity(&id).with("b2", int(4))).is_err());
    }

    #[test]
    fn s1_top_pairing_absorbs_nabla1() {
        let id = CatalogId::s1(5, int(1));
        let theta = codim1_weight(&id, int(-5));
        let data = twisted_case(&id, &theta).unwrap();
        assert_eq!((data.case, data.k), (1, Some(3)));
        let psi = data.classes[0].scaled(&int(-7)).plus(&data.classes[1].scaled(&int(2)));
        match solve_twisted_normalization(&id, &psi, &theta).unwrap() {
            Normalization::Normalized(RepId::Twisted(t), _) => assert_eq!(t.coeffs, vec![int(0), int(1)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn s1_case4_needs_square_ratio() {
        let id = CatalogId::s1(7, int(-2));
        let theta = codim1_weight(&id, int(-1));
        let data = twisted_case(&id, &theta).unwrap();
        assert_eq!(data.case, 4);
        let psi = data.classes[0].scaled(&int(9)).plus(&data.classes[1]);
        match solve_twisted_normalization(&id, &psi, &theta).unwrap() {
            Normalization::Normalized(_, p) => assert_eq!(p.get("c2"), int(3)),
            other => panic!("unexpected {other:?}"),
        }
        let psi = data.classes[0].scaled(&int(2)).plus(&data.classes[1]);
        assert!(matches!(
            solve_twisted_normalization(&id, &psi, &theta).unwrap(),
            Normalization::NeedsRootExtension(_)
        ));
    }

    #[test]
    fn s3_single_class() {
        let id = CatalogId::s3(5);
        let theta = codim1_weight(&id, int(-5));
        let data = twisted_case(&id, &theta).unwrap();
        let psi = data.classes[0].scaled(&int(7));
        match solve_twisted_normalization(&id, &psi, &theta).unwrap() {
            Normalization::Normalized(RepId::Twisted(t), p) => {
                assert_eq!(t.coeffs, vec![int(1)]);
                assert!(p.values.is_empty());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
