//! Cohomology dimensions against a direct rank computation of the
//! Chevalley-Eilenberg differentials, written without the library's
//! linear algebra.

use lieext::catalog::{make_catalog, CatalogId};
use lieext::cohomology::{central_h2, twisted_h2, WeightAction};
use lieext::orbits::{codim1_weight, codim2_weight};
use lieext::ratlin::{frac, int, Scalar};
use lieext::LieAlgebra;
use num_traits::Zero;

fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

fn pairs(d: usize) -> Vec<(usize, usize)> {
    (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect()
}

/// Value of the basis 2-form `e^a ∧ e^b` on `(u, v)`.
fn form(a: usize, b: usize, u: usize, v: usize) -> Scalar {
    if (u, v) == (a, b) {
        int(1)
    } else if (u, v) == (b, a) {
        int(-1)
    } else {
        int(0)
    }
}

/// Returns (dim Z², dim B²) for the one-dimensional module where `x` acts by `w(x)`.
fn oracle(l: &LieAlgebra, w: &[Scalar]) -> (usize, usize) {
    let d = l.dim();
    let p2 = pairs(d);
    // d1: f ↦ (u, v) ↦ w(u) f(v) − w(v) f(u) − f([u, v])
    let d1: Vec<Vec<Scalar>> = p2
        .iter()
        .map(|&(u, v)| {
            (0..d)
                .map(|k| {
                    let mut t = -l.coeff(u, v, k);
                    if k == v {
                        t += &w[u];
                    }
                    if k == u {
                        t -= &w[v];
                    }
                    t
                })
                .collect()
        })
        .collect();
    // d2 on each basis 2-form, evaluated on every triple
    let mut d2 = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                let row: Vec<Scalar> = p2
                    .iter()
                    .map(|&(fa, fb)| {
                        let f = |u: usize, v: usize| form(fa, fb, u, v);
                        let br = |s: usize, t: usize, other: usize| -> Scalar {
                            (0..d).map(|k| l.coeff(s, t, k) * f(k, other)).sum()
                        };
                        &w[a] * f(b, c) - &w[b] * f(a, c) + &w[c] * f(a, b) - br(a, b, c) + br(a, c, b) - br(b, c, a)
                    })
                    .collect();
                d2.push(row);
            }
        }
    }
    let n2 = p2.len();
    let z = n2 - if d2.is_empty() { 0 } else { rank(d2) };
    (z, rank(d1))
}

fn check(l: &LieAlgebra, w: &[Scalar]) {
    let (z, b) = oracle(l, w);
    let q = if w.iter().all(Zero::is_zero) {
        central_h2(l)
    } else {
        twisted_h2(l, &WeightAction::new(w.to_vec())).unwrap()
    };
    assert_eq!((q.total().dim(), q.sub().dim()), (z, b), "{:?}", l.labels());
}

#[test]
fn central_dims_match_oracle() {
    for n in 4..=8 {
        check(&make_catalog(&CatalogId::nn1(n)).unwrap(), &vec![int(0); n]);
    }
    for n in [6, 8] {
        check(&make_catalog(&CatalogId::q(n)).unwrap(), &vec![int(0); n]);
    }
    check(&make_catalog(&CatalogId::lk(7, 2)).unwrap(), &vec![int(0); 7]);
}

#[test]
fn filiform_closed_forms() {
    for n in 4..=8 {
        let (z, b) = oracle(&make_catalog(&CatalogId::nn1(n)).unwrap(), &vec![int(0); n]);
        assert_eq!(z, (n - 1) + n.div_ceil(2) - 1);
        assert_eq!(b, n - 2);
    }
}

#[test]
fn twisted_dims_match_oracle() {
    let id = CatalogId::sn2(5);
    let l = make_catalog(&id).unwrap();
    for (a, b) in [(-4, -1), (-3, -2), (1, 2)] {
        check(&l, &codim2_weight(&id, int(a), int(b)).weights);
    }
    let id = CatalogId::s1(5, frac(3, 2));
    let l = make_catalog(&id).unwrap();
    for g in [frac(-11, 2), int(-1), frac(2, 7)] {
        check(&l, &codim1_weight(&id, g).weights);
    }
    let id = CatalogId::s4(6, vec![int(1), int(0), int(-2)]);
    let l = make_catalog(&id).unwrap();
    for g in [-1, -2, 3] {
        check(&l, &codim1_weight(&id, int(g)).weights);
    }
    let id = CatalogId::s3(5);
    check(&make_catalog(&id).unwrap(), &codim1_weight(&id, int(-5)).weights);
}
