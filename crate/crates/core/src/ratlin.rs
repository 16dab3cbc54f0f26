//! Exact linear algebra over the rationals.
//!
//! Subspaces are stored by their reduced row-echelon basis, so two subspaces
//! are equal as sets exactly when their stored bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with optional sign.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Scalar::new(n, d))
}

/// Integers print as `"p"`, everything else as `"p/q"`.
pub fn format_scalar(q: &Scalar) -> String {
    q.to_string()
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// `a += c * b`
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * c).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Exact `k`-th root of a rational, if one exists in ℚ.
pub fn rational_root(q: &Scalar, k: u32) -> Option<Scalar> {
    if k == 0 {
        return None;
    }
    if q.is_zero() {
        return Some(Scalar::zero());
    }
    if q.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let root_int = |n: &BigInt| -> Option<BigInt> {
        let r = n.abs().nth_root(k);
        if r.pow(k) == n.abs() {
            Some(if n.is_negative() { -r } else { r })
        } else {
            None
        }
    };
    let n = root_int(q.numer())?;
    let d = root_int(q.denom())?;
    Some(Scalar::new(n, d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from row vectors, all of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    /// Builds from column vectors, all of length `rows`.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let (red, piv) = rref(&aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }
}

/// Reduced row-echelon form with zero rows dropped, plus the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows: Vec<Vec<Scalar>> = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (Matrix::from_rows(m.cols, rows), pivots)
}

/// Right null space of `m`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let (red, pivots) = rref(m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(n);
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, free).clone();
        }
        vecs.push(v);
    }
    Subspace::span(n, vecs)
}

/// Coefficients `c` with `Σ c_i vectors[i] = target`, if any exist.
pub fn solve_combination(vectors: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = target.len();
    let k = vectors.len();
    let mut aug = Matrix::zeros(n, k + 1);
    for (j, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            aug.set(i, j, x.clone());
        }
    }
    for (i, x) in target.iter().enumerate() {
        aug.set(i, k, x.clone());
    }
    let (red, piv) = rref(&aug);
    if piv.last() == Some(&k) {
        return None;
    }
    let mut sol = zero_vec(k);
    for (r, &p) in piv.iter().enumerate() {
        sol[p] = red.get(r, k).clone();
    }
    Some(sol)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let m = Matrix::from_rows(ambient, vectors);
        let (basis, pivots) = rref(&m);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates in the stored basis when `v` lies in the subspace.
    pub fn member_coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (r, c) in coords.iter().enumerate() {
            let neg = -c.clone();
            axpy(&mut rest, &neg, self.basis.row(r));
        }
        is_zero_vec(&rest).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.member_coords(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut v = self.basis_vectors();
        v.extend(other.basis_vectors());
        Ok(Subspace::span(self.ambient, v))
    }

    /// Vectors orthogonal (under the standard pairing) to every basis vector.
    pub fn annihilator(&self) -> Subspace {
        kernel_basis(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut eqs = self.annihilator().basis_vectors();
        eqs.extend(other.annihilator().basis_vectors());
        Ok(kernel_basis(&Matrix::from_rows(self.ambient, eqs)))
    }
}

/// `total / sub` together with explicit coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    total: Subspace,
    sub: Subspace,
    reps: Vec<Vec<Scalar>>,
}

impl QuotientSpace {
    pub fn total(&self) -> &Subspace {
        &self.total
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    pub fn reps(&self) -> &[Vec<Scalar>] {
        &self.reps
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Same quotient with caller-chosen representatives.
    pub fn with_reps(&self, reps: Vec<Vec<Scalar>>) -> Result<QuotientSpace> {
        quotient_with_reps(&self.total, &self.sub, reps)
    }

    /// Coordinates of `v` along the representatives, modulo `sub`.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut vecs = self.reps.clone();
        vecs.extend(self.sub.basis_vectors());
        let sol = solve_combination(&vecs, v)?;
        Some(sol[..self.reps.len()].to_vec())
    }

    /// Whether `v - w` lies in `sub`.
    pub fn same_class(&self, v: &[Scalar], w: &[Scalar]) -> bool {
        self.sub.contains(&sub_vec(v, w))
    }
}

/// Greedy extension of `sub`'s basis to `total`'s, in `total`'s row order.
pub fn quotient_basis(total: &Subspace, sub: &Subspace) -> Result<QuotientSpace> {
    if total.ambient != sub.ambient {
        return Err(Error::AmbientMismatch(total.ambient, sub.ambient));
    }
    if !sub.is_subspace_of(total) {
        return Err(Error::NotASubspace);
    }
    let mut current = sub.clone();
    let mut reps = Vec::new();
    for r in 0..total.dim() {
        if current.dim() == total.dim() {
            break;
        }
        let v = total.basis.row(r);
        if !current.contains(v) {
            reps.push(v.to_vec());
            let mut vs = current.basis_vectors();
            vs.push(v.to_vec());
            current = Subspace::span(total.ambient, vs);
        }
    }
    Ok(QuotientSpace {
        total: total.clone(),
        sub: sub.clone(),
        reps,
    })
}

pub fn quotient_with_reps(
    total: &Subspace,
    sub: &Subspace,
    reps: Vec<Vec<Scalar>>,
) -> Result<QuotientSpace> {
    if !sub.is_subspace_of(total) {
        return Err(Error::NotASubspace);
    }
    if reps.len() + sub.dim() != total.dim() || !reps.iter().all(|r| total.contains(r)) {
        return Err(Error::NotASubspace);
    }
    let mut vs = sub.basis_vectors();
    vs.extend(reps.iter().cloned());
    if Subspace::span(total.ambient, vs).dim() != total.dim() {
        return Err(Error::NotASubspace);
    }
    Ok(QuotientSpace {
        total: total.clone(),
        sub: sub.clone(),
        reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let (m, p) = rref(&Matrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(m, Matrix::from_i64(&[&[1, 2]]));
        assert_eq!(p, vec![0]);
        let (m, p) = rref(&Matrix::identity(3));
        assert_eq!(m, Matrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
        let (m, p) = rref(&Matrix::from_i64(&[&[1, 1], &[1, -1]]));
        assert_eq!(m, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::zeros(2, 3)), Subspace::full(3));
        let k = kernel_basis(&Matrix::from_i64(&[&[1, 0, 0]]));
        assert_eq!(k, Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]));
        let k = kernel_basis(&Matrix::from_i64(&[&[1, 1, 1], &[0, 1, 2]]));
        assert_eq!(k, Subspace::span(3, vec![v(&[1, -2, 1])]));
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(3, vec![v(&[0, 1, 0])]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let c = Subspace::span(3, vec![v(&[1, 1, 0])]);
        assert_eq!(c.intersect(&a).unwrap(), c);
        assert_eq!(
            a.intersect(&Subspace::zero(2)),
            Err(Error::AmbientMismatch(3, 2))
        );
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_basis(&Subspace::full(3), &Subspace::zero(3)).unwrap();
        assert_eq!(q.dim(), 3);
        let q = quotient_basis(&Subspace::full(3), &Subspace::full(3)).unwrap();
        assert_eq!(q.dim(), 0);
        let a = Subspace::span(3, vec![v(&[1, 0, 0])]);
        let b = Subspace::span(3, vec![v(&[0, 1, 0])]);
        assert!(matches!(quotient_basis(&a, &b), Err(Error::NotASubspace)));
    }

    #[test]
    fn member_coords_examples() {
        let s = Subspace::span(3, vec![v(&[1, 0, 2]), v(&[0, 1, 1])]);
        assert_eq!(s.member_coords(&v(&[0, 0, 0])), Some(v(&[0, 0])));
        assert_eq!(s.member_coords(s.basis().row(1)), Some(v(&[0, 1])));
        let line = Subspace::span(2, vec![v(&[1, 0])]);
        assert_eq!(line.member_coords(&v(&[1, 1])), None);
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(parse_scalar("3/2").unwrap(), frac(3, 2));
        assert_eq!(parse_scalar("-2").unwrap(), int(-2));
        assert_eq!(parse_scalar(" 4/-6 ").unwrap(), frac(-2, 3));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1.5").is_err());
        assert_eq!(format_scalar(&frac(-6, 4)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_root(&int(16), 4), Some(int(2)));
        assert_eq!(rational_root(&int(3), 4), None);
        assert_eq!(rational_root(&frac(-8, 27), 3), Some(frac(-2, 3)));
        assert_eq!(rational_root(&int(-4), 2), None);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    fn matrix_with_cols(c: usize) -> impl Strategy<Value = Matrix> {
        (1usize..5).prop_flat_map(move |r| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |xs| {
                Matrix::from_rows(c, xs.chunks(c).map(|ch| ch.iter().map(|&x| int(x)).collect()).collect())
            })
        })
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6).prop_flat_map(matrix_with_cols)
    }

    fn matrix_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
        (1usize..6).prop_flat_map(|c| (matrix_with_cols(c), matrix_with_cols(c)))
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let (r1, p1) = rref(&m);
            let (r2, p2) = rref(&r1);
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for b in k.basis_vectors() {
                prop_assert!(is_zero_vec(&m.mul_vec(&b).unwrap()));
            }
        }

        #[test]
        fn span_members_have_coords(m in small_matrix(), coeffs in proptest::collection::vec(-5i64..6, 5)) {
            let s = Subspace::span(m.cols(), m.row_vecs());
            let mut w = zero_vec(m.cols());
            for (r, c) in m.row_vecs().iter().zip(&coeffs) {
                axpy(&mut w, &int(*c), r);
            }
            prop_assert!(s.contains(&w));
        }

        #[test]
        fn intersection_dimension_formula((a, b) in matrix_pair()) {
            let sa = Subspace::span(a.cols(), a.row_vecs());
            let sb = Subspace::span(b.cols(), b.row_vecs());
            let i = sa.intersect(&sb).unwrap();
            let s = sa.sum(&sb).unwrap();
            prop_assert_eq!(i.dim() + s.dim(), sa.dim() + sb.dim());
            prop_assert!(i.is_subspace_of(&sa) && i.is_subspace_of(&sb));
        }

        #[test]
        fn quotient_reps_complete_sub(a in small_matrix(), keep in 0usize..4) {
            let total = Subspace::span(a.cols(), a.row_vecs());
            let rows: Vec<_> = total.basis_vectors().into_iter().take(keep).collect();
            let sub = Subspace::span(a.cols(), rows);
            let q = quotient_basis(&total, &sub).unwrap();
            let mut all = sub.basis_vectors();
            all.extend(q.reps().iter().cloned());
            prop_assert_eq!(all.len(), total.dim());
            prop_assert_eq!(Subspace::span(a.cols(), all), total);
        }
    }
}
