//! Verification suite runner: builds seeded tasks, runs them in parallel and
//! merges their records in check-id order.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use lieext::catalog::{make_catalog, CatalogId, Family};
use lieext::cohomology::Cocycle;
use lieext::liecore::LieAlgebra;
use lieext::ratlin::{frac, int, Scalar, Subspace};

use crate::checks;
use crate::report::{CheckRecord, Report};
use crate::CliError;

pub const SECTIONS: &[&str] = &[
    "catalog-jacobi",
    "nn1-h2",
    "q-h2",
    "q-split",
    "nn1-orbits",
    "sn2-h2",
    "sn2-extend",
    "s1",
    "s2",
    "s3",
    "s4",
    "diagrams",
];

pub const MAX_N: usize = 13;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Family tags; `None` runs everything including the catalog audit.
    pub families: Option<BTreeSet<String>>,
    pub sections: Option<BTreeSet<String>>,
    pub weight_samples: usize,
    pub allow_large: bool,
    /// Negative control: runs against a corrupted `n_{n,1}` table.
    pub tamper: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_min: 4,
            n_max: 9,
            seed: 1,
            families: None,
            sections: None,
            weight_samples: 10,
            allow_large: false,
            tamper: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.n_min < 4 {
            return bad(format!("n_min must be at least 4, got {}", self.n_min));
        }
        if self.n_max < self.n_min {
            return bad(format!("n_max {} is below n_min {}", self.n_max, self.n_min));
        }
        if self.n_max > MAX_N && !self.allow_large {
            return bad(format!("n_max above {MAX_N} needs --allow-large"));
        }
        if let Some(f) = &self.families {
            for t in f {
                if Family::from_tag(t).is_none() {
                    return bad(format!("unknown family {t}"));
                }
            }
        }
        if let Some(s) = &self.sections {
            for t in s {
                if !SECTIONS.contains(&t.as_str()) {
                    return bad(format!("unknown section {t}"));
                }
            }
        }
        Ok(())
    }

    pub fn ns(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max
    }

    fn wants(&self, section: &str, family: Family) -> bool {
        let section_ok = self.sections.as_ref().is_none_or(|s| s.contains(section));
        let family_ok = match &self.families {
            None => true,
            Some(_) if section == "catalog-jacobi" => false,
            Some(f) => f.contains(family.tag()),
        };
        section_ok && family_ok
    }
}

pub struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    pub rng: ChaCha8Rng,
}

impl Ctx<'_> {
    /// Catalog lookup honoring the tamper switch.
    pub fn algebra(&self, id: &CatalogId) -> lieext::Result<LieAlgebra> {
        let l = make_catalog(id)?;
        if self.cfg.tamper && id.family == Family::NN1 && id.n >= 4 {
            let mut b = l.to_builder();
            b.add_i64(id.e(2), id.e(3), id.e(1), 1);
            return Ok(b.build_unchecked());
        }
        Ok(l)
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> Scalar {
        int(self.rng.gen_range(lo..=hi))
    }

    pub fn nonzero_int(&mut self, r: i64) -> Scalar {
        loop {
            let v = self.rng.gen_range(-r..=r);
            if v != 0 {
                return int(v);
            }
        }
    }

    /// Numerator and denominator bounded by 9 in absolute value.
    pub fn rational(&mut self) -> Scalar {
        frac(self.rng.gen_range(-9..=9), self.rng.gen_range(1..=9))
    }

    pub fn rational_avoiding(&mut self, special: &[Scalar]) -> Scalar {
        loop {
            let v = self.rational();
            if !special.contains(&v) {
                return v;
            }
        }
    }

    pub fn nonzero_rational(&mut self) -> Scalar {
        self.rational_avoiding(&[int(0)])
    }

    /// A random element of `b`, as a cocycle.
    pub fn random_member(&mut self, dim: usize, b: &Subspace) -> Cocycle {
        let mut flat = vec![int(0); b.ambient()];
        for v in b.basis_vectors() {
            let c = self.small_int(-2, 2);
            lieext::ratlin::axpy(&mut flat, &c, &v);
        }
        Cocycle::from_flat(dim, &flat)
    }

    /// A member of `b` with every basis coordinate nonzero.
    pub fn generic_member(&mut self, dim: usize, b: &Subspace) -> Cocycle {
        let mut flat = vec![int(0); b.ambient()];
        for v in b.basis_vectors() {
            let c = self.nonzero_int(9);
            lieext::ratlin::axpy(&mut flat, &c, &v);
        }
        Cocycle::from_flat(dim, &flat)
    }

    pub fn combine(&mut self, classes: &[Cocycle], coeffs: &[Scalar], b: &Subspace) -> Cocycle {
        let dim = classes[0].dim();
        let mut psi = self.random_member(dim, b);
        for (c, k) in classes.iter().zip(coeffs) {
            psi = psi.plus(&c.scaled(k));
        }
        psi
    }
}

pub type TaskFn = Box<dyn Fn(&mut Ctx) -> Vec<CheckRecord> + Send + Sync>;

pub struct Task {
    pub section: &'static str,
    pub family: Family,
    pub run: TaskFn,
}

impl Task {
    pub fn new(section: &'static str, family: Family, run: impl Fn(&mut Ctx) -> Vec<CheckRecord> + Send + Sync + 'static) -> Self {
        Task { section, family, run: Box::new(run) }
    }
}

/// Builds a record; it passes iff `expected == computed`.
pub fn record(id: String, anchor: &str, inputs: Value, expected: Value, computed: Value) -> CheckRecord {
    let pass = expected == computed;
    CheckRecord { id, anchor: anchor.to_string(), inputs, expected, computed, pass }
}

pub fn error_value(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

pub fn nid(section: &str, tag: &str, n: usize, rest: &str) -> String {
    if rest.is_empty() {
        format!("{section}/{tag}/n{n:02}")
    } else {
        format!("{section}/{tag}/n{n:02}/{rest}")
    }
}

pub fn config_value(cfg: &SuiteConfig) -> Value {
    serde_json::to_value(cfg).expect("config serializes")
}

/// Runs every selected task. Each task draws from its own stream of the
/// seeded generator, indexed by its position in the unfiltered task list.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let tasks = checks::all_tasks(cfg);
    let selected: Vec<(usize, &Task)> = tasks
        .iter()
        .enumerate()
        .filter(|(_, t)| cfg.wants(t.section, t.family))
        .collect();
    let records: Vec<CheckRecord> = selected
        .par_iter()
        .flat_map_iter(|(idx, t)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(*idx as u64);
            let mut ctx = Ctx { cfg, rng };
            (t.run)(&mut ctx)
        })
        .collect();
    Ok(Report::new(config_value(cfg), records))
}
