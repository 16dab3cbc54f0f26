//! Named families of filiform and solvable Lie algebras.
//!
//! `n` is always the dimension of the nilradical. Solvable families put their
//! outer generators first: `(x, e1, …, en)` or `(x1, x2, e1, …, en)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::liecore::{Builder, LieAlgebra};
pub use crate::liecore::structure_equal;
use crate::ratlin::{format_scalar, int, parse_scalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    NN1,
    Q,
    S1,
    S2,
    S3,
    S4,
    SN2,
    Tau1,
    Tau2,
    Tau3,
    Tau22,
    LK,
    LTildeK,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::NN1,
        Family::Q,
        Family::S1,
        Family::S2,
        Family::S3,
        Family::S4,
        Family::SN2,
        Family::Tau1,
        Family::Tau2,
        Family::Tau3,
        Family::Tau22,
        Family::LK,
        Family::LTildeK,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::NN1 => "nn1",
            Family::Q => "q",
            Family::S1 => "s1",
            Family::S2 => "s2",
            Family::S3 => "s3",
            Family::S4 => "s4",
            Family::SN2 => "sn2",
            Family::Tau1 => "tau1",
            Family::Tau2 => "tau2",
            Family::Tau3 => "tau3",
            Family::Tau22 => "tau22",
            Family::LK => "lk",
            Family::LTildeK => "ltk",
        }
    }

    pub fn from_tag(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.tag() == s)
    }

    /// Number of outer (non-nilradical) generators.
    pub fn outer(self) -> usize {
        match self {
            Family::NN1 | Family::Q | Family::LK => 0,
            Family::SN2 | Family::Tau22 => 2,
            _ => 1,
        }
    }

    fn needs_even(self) -> bool {
        matches!(
            self,
            Family::Q | Family::Tau1 | Family::Tau2 | Family::Tau3 | Family::Tau22
        )
    }

    /// Parameter names in canonical order.
    pub fn param_names(self, n: usize) -> Vec<String> {
        match self {
            Family::S1 => vec!["beta".into()],
            Family::Tau1 => vec!["alpha".into()],
            Family::S4 => (3..n).map(|i| format!("a{i}")).collect(),
            Family::Tau3 => (4..=n.saturating_sub(2)).step_by(2).map(|i| format!("a{i}")).collect(),
            Family::LK | Family::LTildeK => vec!["k".into()],
            _ => vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CatalogId {
    pub family: Family,
    pub n: usize,
    pub params: Vec<Scalar>,
}

impl CatalogId {
    pub fn new(family: Family, n: usize, params: Vec<Scalar>) -> Result<Self> {
        let id = CatalogId { family, n, params };
        id.validate()?;
        Ok(id)
    }

    pub fn nn1(n: usize) -> Self {
        CatalogId { family: Family::NN1, n, params: vec![] }
    }

    pub fn q(n: usize) -> Self {
        CatalogId { family: Family::Q, n, params: vec![] }
    }

    pub fn lk(n: usize, k: usize) -> Self {
        CatalogId { family: Family::LK, n, params: vec![int(k as i64)] }
    }

    pub fn ltk(n: usize, k: usize) -> Self {
        CatalogId { family: Family::LTildeK, n, params: vec![int(k as i64)] }
    }

    pub fn s1(n: usize, beta: Scalar) -> Self {
        CatalogId { family: Family::S1, n, params: vec![beta] }
    }

    pub fn s2(n: usize) -> Self {
        CatalogId { family: Family::S2, n, params: vec![] }
    }

    pub fn s3(n: usize) -> Self {
        CatalogId { family: Family::S3, n, params: vec![] }
    }

    /// `alphas` are `α3, …, α_{n−1}`.
    pub fn s4(n: usize, alphas: Vec<Scalar>) -> Self {
        CatalogId { family: Family::S4, n, params: alphas }
    }

    pub fn sn2(n: usize) -> Self {
        CatalogId { family: Family::SN2, n, params: vec![] }
    }

    pub fn tau1(n: usize, alpha: Scalar) -> Self {
        CatalogId { family: Family::Tau1, n, params: vec![alpha] }
    }

    pub fn tau2(n: usize) -> Self {
        CatalogId { family: Family::Tau2, n, params: vec![] }
    }

    /// `alphas` are `α4, α6, …, α_{n−2}`.
    pub fn tau3(n: usize, alphas: Vec<Scalar>) -> Self {
        CatalogId { family: Family::Tau3, n, params: alphas }
    }

    pub fn tau22(n: usize) -> Self {
        CatalogId { family: Family::Tau22, n, params: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.n + self.family.outer()
    }

    /// Position of `e_i` (1-based label index) in the basis.
    pub fn e(&self, i: usize) -> usize {
        self.family.outer() + i - 1
    }

    pub fn k(&self) -> Option<usize> {
        match self.family {
            Family::LK | Family::LTildeK => self.params.first()?.to_integer().to_usize(),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.family;
        let n = self.n;
        let bad = |m: String| Err(Error::BadParams(m));
        let want = f.param_names(n).len();
        if self.params.len() != want {
            return bad(format!("{} expects {want} parameters, got {}", f.tag(), self.params.len()));
        }
        let min = match f {
            Family::Q | Family::Tau1 | Family::Tau2 | Family::Tau3 | Family::Tau22 => 6,
            Family::S4 => 4,
            Family::LK => 5,
            Family::LTildeK => 5,
            _ => 3,
        };
        if n < min {
            return bad(format!("{} requires n >= {min}", f.tag()));
        }
        if f.needs_even() && n % 2 == 1 {
            return bad(format!("{} requires even n", f.tag()));
        }
        if matches!(f, Family::LK | Family::LTildeK) {
            let k = &self.params[0];
            let ok = k.is_integer()
                && k.to_integer().to_usize().is_some_and(|k| k >= 2 && k <= (n - 1) / 2);
            if !ok {
                return bad(format!("k must be an integer in 2..={}", (n - 1) / 2));
            }
        }
        Ok(())
    }

    fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = match self.family.outer() {
            0 => vec![],
            1 => vec!["x".into()],
            _ => vec!["x1".into(), "x2".into()],
        };
        l.extend((1..=self.n).map(|i| format!("e{i}")));
        l
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family.tag(), self.n)?;
        let names = self.family.param_names(self.n);
        if !names.is_empty() {
            let parts: Vec<String> = names
                .iter()
                .zip(&self.params)
                .map(|(k, v)| format!("{k}={}", format_scalar(v)))
                .collect();
            write!(f, ":{}", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for CatalogId {
    type Err = Error;

    /// `"nn1:5"`, `"s1:6:beta=3/2"`, `"s4:7:a3=1,a4=0,a5=2,a6=0"`, `"lk:7:k=2"`.
    /// Omitted `α` parameters of `s4` and `tau3` default to zero.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("catalog id {s:?}: {m}"));
        let mut parts = s.trim().splitn(3, ':');
        let family = Family::from_tag(parts.next().unwrap_or_default())
            .ok_or_else(|| bad("unknown family"))?;
        let n: usize = parts
            .next()
            .ok_or_else(|| bad("missing dimension"))?
            .trim()
            .parse()
            .map_err(|_| bad("invalid dimension"))?;
        let names = family.param_names(n);
        let mut values: Vec<Option<Scalar>> = vec![None; names.len()];
        if let Some(rest) = parts.next() {
            for kv in rest.split(',').filter(|t| !t.trim().is_empty()) {
                let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected name=value"))?;
                let pos = names
                    .iter()
                    .position(|x| x == k.trim())
                    .ok_or_else(|| bad(&format!("unknown parameter {k}")))?;
                values[pos] = Some(parse_scalar(v)?);
            }
        }
        let defaults_zero = matches!(family, Family::S4 | Family::Tau3);
        let params = values
            .into_iter()
            .zip(&names)
            .map(|(v, name)| match v {
                Some(v) => Ok(v),
                None if defaults_zero => Ok(Scalar::zero()),
                None => Err(bad(&format!("missing parameter {name}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        CatalogId::new(family, n, params)
    }
}

/// Adds the chain `[e_i, e_1] = e_{i+1}` for `2 ≤ i ≤ top`.
fn chain(b: &mut Builder, id: &CatalogId, top: usize) {
    for i in 2..=top {
        b.add_i64(id.e(i), id.e(1), id.e(i + 1), 1);
    }
}

/// Adds `[e_i, e_{2k+1−i}] = (−1)^i e_target` for `2 ≤ i ≤ k`.
fn pairing(b: &mut Builder, id: &CatalogId, k: usize, target: usize) {
    for i in 2..=k {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        b.add_i64(id.e(i), id.e(2 * k + 1 - i), id.e(target), sign);
    }
}

fn q_part(b: &mut Builder, id: &CatalogId) {
    let m = id.n;
    chain(b, id, m - 2);
    pairing(b, id, m / 2, m);
}

pub fn make_catalog(id: &CatalogId) -> Result<LieAlgebra> {
    id.validate()?;
    let n = id.n;
    let mut b = Builder::new(id.labels());
    let e = |i: usize| id.e(i);
    let x = 0;
    match id.family {
        Family::NN1 => chain(&mut b, id, n - 1),
        Family::Q => q_part(&mut b, id),
        Family::LK => {
            chain(&mut b, id, n - 1);
            pairing(&mut b, id, id.k().unwrap(), n);
        }
        Family::S1 => {
            let beta = &id.params[0];
            chain(&mut b, id, n - 1);
            b.add_i64(e(1), x, e(1), 1);
            for i in 2..=n {
                b.add(e(i), x, e(i), int(i as i64 - 2) + beta);
            }
        }
        Family::S2 => {
            chain(&mut b, id, n - 1);
            for i in 2..=n {
                b.add_i64(e(i), x, e(i), 1);
            }
        }
        Family::S3 => {
            chain(&mut b, id, n - 1);
            b.add_i64(e(1), x, e(1), 1).add_i64(e(1), x, e(2), 1);
            for i in 2..=n {
                b.add_i64(e(i), x, e(i), i as i64 - 1);
            }
        }
        Family::S4 => {
            chain(&mut b, id, n - 1);
            let alpha = |j: usize| id.params[j - 3].clone();
            for i in 2..=n {
                b.add_i64(e(i), x, e(i), 1);
                for l in i + 2..=n {
                    b.add(e(i), x, e(l), alpha(l + 1 - i));
                }
            }
        }
        Family::SN2 => {
            let (x1, x2) = (0, 1);
            chain(&mut b, id, n - 1);
            b.add_i64(e(1), x1, e(1), 1);
            for i in 3..=n {
                b.add_i64(e(i), x1, e(i), i as i64 - 2);
            }
            for i in 2..=n {
                b.add_i64(e(i), x2, e(i), 1);
            }
        }
        Family::Tau1 => {
            let a = &id.params[0];
            q_part(&mut b, id);
            b.add_i64(e(1), x, e(1), 1);
            for i in 2..n {
                b.add(e(i), x, e(i), int(i as i64 - 2) + a);
            }
            b.add(e(n), x, e(n), int(n as i64 - 3) + a * int(2));
        }
        Family::Tau2 => {
            let half = (n / 2) as i64;
            q_part(&mut b, id);
            b.add_i64(e(1), x, e(1), 1).add_i64(e(1), x, e(n), 1);
            for i in 2..n {
                b.add_i64(e(i), x, e(i), i as i64 - half);
            }
            b.add_i64(e(n), x, e(n), 1);
        }
        Family::Tau3 => {
            q_part(&mut b, id);
            let alpha = |j: usize| id.params[(j - 4) / 2].clone();
            for i in 0..=n - 3 {
                b.add_i64(e(i + 2), x, e(i + 2), 1);
                for k in 2..=(n - 2 - i) / 2 {
                    b.add(e(i + 2), x, e(2 * k + 1 + i), alpha(2 * k));
                }
            }
            b.add_i64(e(n), x, e(n), 2);
        }
        Family::Tau22 => {
            let (x1, x2) = (0, 1);
            q_part(&mut b, id);
            for i in 1..n {
                b.add_i64(e(i), x1, e(i), i as i64);
            }
            b.add_i64(e(n), x1, e(n), n as i64 + 1);
            for i in 2..n {
                b.add_i64(e(i), x2, e(i), 1);
            }
            b.add_i64(e(n), x2, e(n), 2);
        }
        Family::LTildeK => {
            let k = id.k().unwrap();
            let beta = (n + 1) as i64 - 2 * k as i64;
            chain(&mut b, id, n - 1);
            pairing(&mut b, id, k, n);
            b.add_i64(e(1), x, e(1), 1);
            for i in 2..=n {
                b.add_i64(e(i), x, e(i), i as i64 - 2 + beta);
            }
        }
    }
    b.build()
}
