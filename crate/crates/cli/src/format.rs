//! JSON file formats for algebras and cocycles. Indices in files are 1-based.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use lieext::cohomology::Cocycle;
use lieext::liecore::{Builder, LieAlgebra};
use lieext::ratlin::{format_scalar, parse_scalar, Scalar};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: String,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub i: usize,
    pub j: usize,
    pub coeff: String,
}

/// `components[c]` lists the nonzero values `ψ_c(e_i, e_j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub dim: usize,
    pub components: Vec<Vec<FormEntry>>,
}

fn schema(field: impl Into<String>, msg: impl Into<String>) -> CliError {
    CliError::Schema { field: field.into(), msg: msg.into() }
}

fn json_error(e: serde_json::Error) -> CliError {
    CliError::Json { line: e.line(), column: e.column(), msg: e.to_string() }
}

fn scalar_field(field: &str, s: &str) -> Result<Scalar, CliError> {
    parse_scalar(s).map_err(|e| schema(field, e.to_string()))
}

fn index_field(field: &str, v: usize, dim: usize) -> Result<usize, CliError> {
    if v == 0 || v > dim {
        return Err(schema(field, format!("index {v} outside 1..={dim}")));
    }
    Ok(v - 1)
}

/// Checks the ordering rules shared by algebra and cocycle entries.
fn check_pairs<'a>(prefix: &str, pairs: impl Iterator<Item = (usize, usize)> + 'a) -> Result<(), CliError> {
    let pairs: Vec<(usize, usize)> = pairs.collect();
    let mut seen = BTreeMap::new();
    for (n, &(i, j)) in pairs.iter().enumerate() {
        let key = (i.min(j), i.max(j));
        if let Some(prev) = seen.insert(key, n) {
            let (pi, pj) = pairs[prev];
            let msg = if (pi, pj) == (i, j) { "duplicate entry" } else { "antisymmetry conflict" };
            return Err(schema(format!("{prefix}[{n}]"), msg));
        }
    }
    for (n, &(i, j)) in pairs.iter().enumerate() {
        if i == j {
            return Err(schema(format!("{prefix}[{n}]"), "diagonal entry"));
        }
        if i > j {
            return Err(schema(format!("{prefix}[{n}]"), "entries must have i<j"));
        }
    }
    Ok(())
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<LieAlgebra, CliError> {
        let dim = self.dim;
        if dim == 0 {
            return Err(schema("dim", "must be positive"));
        }
        let labels = match &self.labels {
            Some(l) if l.len() != dim => {
                return Err(schema("labels", format!("expected {dim} labels, got {}", l.len())))
            }
            Some(l) => l.clone(),
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        check_pairs("brackets", self.brackets.iter().map(|b| (b.i, b.j)))?;
        let mut b = Builder::new(labels);
        for (n, e) in self.brackets.iter().enumerate() {
            let f = format!("brackets[{n}]");
            let i = index_field(&format!("{f}.i"), e.i, dim)?;
            let j = index_field(&format!("{f}.j"), e.j, dim)?;
            for (t, term) in e.terms.iter().enumerate() {
                let k = index_field(&format!("{f}.terms[{t}].k"), term.k, dim)?;
                let c = scalar_field(&format!("{f}.terms[{t}].coeff"), &term.coeff)?;
                b.add(i, j, k, c);
            }
        }
        Ok(b.build()?)
    }

    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let brackets = l
            .structure_constants()
            .into_iter()
            .map(|(i, j, terms)| BracketEntry {
                i: i + 1,
                j: j + 1,
                terms: terms.iter().map(|(k, c)| Term { coeff: format_scalar(c), k: k + 1 }).collect(),
            })
            .collect();
        AlgebraFile { dim: l.dim(), labels: Some(l.labels().to_vec()), brackets }
    }
}

impl CocycleFile {
    pub fn to_cocycle(&self) -> Result<Cocycle, CliError> {
        if self.components.is_empty() {
            return Err(schema("components", "at least one component required"));
        }
        let mut psi = Cocycle::zero(self.dim, self.components.len());
        for (c, comp) in self.components.iter().enumerate() {
            let prefix = format!("components[{c}]");
            check_pairs(&prefix, comp.iter().map(|e| (e.i, e.j)))?;
            for (n, e) in comp.iter().enumerate() {
                let f = format!("{prefix}[{n}]");
                let i = index_field(&format!("{f}.i"), e.i, self.dim)?;
                let j = index_field(&format!("{f}.j"), e.j, self.dim)?;
                psi.add_term(c, i, j, &scalar_field(&format!("{f}.coeff"), &e.coeff)?);
            }
        }
        Ok(psi)
    }

    pub fn from_cocycle(psi: &Cocycle) -> Self {
        let d = psi.dim();
        let components = (0..psi.coeff_dim())
            .map(|c| {
                let mut out = Vec::new();
                for i in 0..d {
                    for j in i + 1..d {
                        let v = psi.value(c, i, j);
                        if !v.is_zero() {
                            out.push(FormEntry { i: i + 1, j: j + 1, coeff: format_scalar(v) });
                        }
                    }
                }
                out
            })
            .collect();
        CocycleFile { dim: d, components }
    }
}

pub fn parse_algebra_str(s: &str) -> Result<LieAlgebra, CliError> {
    let f: AlgebraFile = serde_json::from_str(s).map_err(json_error)?;
    f.to_algebra()
}

pub fn parse_algebra_file(path: &Path) -> Result<LieAlgebra, CliError> {
    let s = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    parse_algebra_str(&s)
}

pub fn parse_cocycle_str(s: &str) -> Result<Cocycle, CliError> {
    let f: CocycleFile = serde_json::from_str(s).map_err(json_error)?;
    f.to_cocycle()
}

pub fn parse_cocycle_file(path: &Path) -> Result<Cocycle, CliError> {
    let s = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
    parse_cocycle_str(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lieext::catalog::{make_catalog, structure_equal, CatalogId};

    const NN1_4: &str = r#"{"dim":4,"brackets":[
        {"i":1,"j":2,"terms":[{"coeff":"-1","k":3}]},
        {"i":1,"j":3,"terms":[{"coeff":"-1","k":4}]}]}"#;

    #[test]
    fn loads_filiform() {
        let l = parse_algebra_str(NN1_4).unwrap();
        assert_eq!(l.dim(), 4);
        assert!(structure_equal(&l, &make_catalog(&CatalogId::nn1(4)).unwrap()).unwrap());
    }

    #[test]
    fn sign_conflict_is_reported() {
        let s = r#"{"dim":3,"brackets":[
            {"i":2,"j":1,"terms":[{"coeff":"1","k":3}]},
            {"i":1,"j":2,"terms":[{"coeff":"1","k":3}]}]}"#;
        match parse_algebra_str(s) {
            Err(CliError::Schema { msg, .. }) => assert_eq!(msg, "antisymmetry conflict"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reversed_entry_rejected() {
        let s = r#"{"dim":3,"brackets":[{"i":2,"j":1,"terms":[{"coeff":"1","k":3}]}]}"#;
        assert!(matches!(parse_algebra_str(s), Err(CliError::Schema { .. })));
    }

    #[test]
    fn bad_scalar_and_json_positions() {
        let s = r#"{"dim":3,"brackets":[{"i":1,"j":2,"terms":[{"coeff":"0.5","k":3}]}]}"#;
        match parse_algebra_str(s) {
            Err(CliError::Schema { field, .. }) => assert_eq!(field, "brackets[0].terms[0].coeff"),
            other => panic!("{other:?}"),
        }
        match parse_algebra_str("{\"dim\":3,\n\"brackets\": [}") {
            Err(CliError::Json { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jacobi_failure_surfaces() {
        let s = r#"{"dim":3,"brackets":[
            {"i":1,"j":2,"terms":[{"coeff":"1","k":3}]},
            {"i":1,"j":3,"terms":[{"coeff":"1","k":1}]},
            {"i":2,"j":3,"terms":[{"coeff":"1","k":3}]}]}"#;
        assert!(matches!(
            parse_algebra_str(s),
            Err(CliError::Core(lieext::Error::JacobiFailure { .. }))
        ));
    }

    #[test]
    fn round_trips() {
        let l = make_catalog(&CatalogId::sn2(5)).unwrap();
        let f = AlgebraFile::from_algebra(&l);
        let back = f.to_algebra().unwrap();
        assert_eq!(back, l);
        assert_eq!(back.dim(), 7);
        let psi = Cocycle::from_terms(5, &[(1, 4, lieext::ratlin::frac(1, 2)), (2, 3, lieext::ratlin::int(-1))]);
        assert_eq!(CocycleFile::from_cocycle(&psi).to_cocycle().unwrap(), psi);
    }
}
