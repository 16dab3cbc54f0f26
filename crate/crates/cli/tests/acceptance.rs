//! Acceptance gate. Each test prints one `PASS`/`FAIL` line for its criterion
//! and then asserts it.

use std::collections::{BTreeMap, BTreeSet};

use lieext_cli::report::{emit_report, Format, Report};
use lieext_cli::suite::{run_suite, SuiteConfig};

fn config(n_min: usize, n_max: usize, sections: &[&str]) -> SuiteConfig {
    SuiteConfig {
        n_min,
        n_max,
        sections: Some(sections.iter().map(|s| s.to_string()).collect()),
        ..SuiteConfig::default()
    }
}

/// Number of records per `nXX` segment of the check ids.
fn per_n(report: &Report) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in &report.checks {
        if let Some(n) = c.id.split('/').find_map(|s| s.strip_prefix('n').and_then(|v| v.parse().ok())) {
            *out.entry(n).or_insert(0) += 1;
        }
    }
    out
}

/// Prints the criterion line and returns whether it holds.
fn gate(number: u32, claim: &str, report: &Report, coverage: &[usize], min_per_n: usize) -> bool {
    let counts = per_n(report);
    let missing: Vec<usize> = coverage
        .iter()
        .copied()
        .filter(|n| counts.get(n).copied().unwrap_or(0) < min_per_n)
        .collect();
    let failed: Vec<&str> = report.failures().map(|c| c.id.as_str()).collect();
    let ok = missing.is_empty() && failed.is_empty() && !report.checks.is_empty();
    let detail = if ok {
        format!("{} checks", report.checks.len())
    } else {
        let shown: Vec<&str> = failed.iter().take(4).copied().collect();
        format!(
            "{} of {} checks failed {:?}{}; under-covered n: {:?}",
            failed.len(),
            report.checks.len(),
            shown,
            if failed.len() > 4 { " ..." } else { "" },
            missing
        )
    };
    println!("{} criterion {number}: {claim} ({detail})", if ok { "PASS" } else { "FAIL" });
    ok
}

fn criterion(number: u32, claim: &str, cfg: SuiteConfig, coverage: &[usize], min_per_n: usize) {
    let report = run_suite(&cfg).expect("suite runs");
    assert!(gate(number, claim, &report, coverage, min_per_n), "criterion {number} failed");
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

#[test]
fn criterion_01_catalog_jacobi() {
    criterion(1, "every catalog table satisfies Jacobi for dims 4..13", config(4, 13, &["catalog-jacobi"]), &range(4, 13), 1);
}

#[test]
fn criterion_02_filiform_h2() {
    criterion(
        2,
        "Z2, B2, H2 of the standard filiform algebra have the closed-form dimensions and listed bases, n=4..12",
        config(4, 12, &["nn1-h2"]),
        &range(4, 12),
        5,
    );
}

#[test]
fn criterion_03_q_h2() {
    criterion(3, "dim H2(Q_2n) = n-1 with the listed bases, 2n=6..12", config(4, 11, &["q-h2"]), &[6, 8, 10, 12], 4);
}

#[test]
fn criterion_04_q_split() {
    criterion(
        4,
        "every Z2(Q_2n) cocycle annihilates the center, so Q_2n has no non-split central extension, 2n=6..12",
        config(4, 11, &["q-split"]),
        &[6, 8, 10, 12],
        1,
    );
}

#[test]
fn criterion_05_filiform_orbits() {
    criterion(
        5,
        "random lines normalize to nabla1, nabla1+nabla_k or nabla_half, extend to the named algebra, and are orbit-invariant, n=4..11",
        config(4, 11, &["nn1-orbits"]),
        &range(4, 11),
        20,
    );
}

#[test]
fn criterion_06_sn2_h2() {
    criterion(
        6,
        "s_{n,2} has Z2=n+2, B2=n+1, H2=1 at both special weights and cond2 fails at generic weights, n=4..11",
        config(4, 11, &["sn2-h2"]),
        &range(4, 11),
        11,
    );
}

#[test]
fn criterion_07_sn2_extend() {
    criterion(
        7,
        "special-weight extensions of s_{n,2} are s_{n+1,2} and tau_{n+1,2}, n=4..11",
        config(4, 11, &["sn2-extend"]),
        &range(4, 11),
        1,
    );
}

#[test]
fn criterion_08_s1() {
    criterion(
        8,
        "s1 coboundary and cohomology dimensions by case, and extensions are s1, tau1, tau2 or L~_k, n=5..11",
        config(5, 11, &["s1"]),
        &range(5, 11),
        50,
    );
}

#[test]
fn criterion_09_s2() {
    criterion(9, "s2 cohomology dimensions and extensions, n=4..11", config(4, 11, &["s2"]), &range(4, 11), 3);
}

#[test]
fn criterion_10_s3() {
    criterion(10, "s3 has H2=1 at gamma=-n, extends to s3, cond2 fails elsewhere, n=4..11", config(4, 11, &["s3"]), &range(4, 11), 3);
}

#[test]
fn criterion_11_s4() {
    criterion(
        11,
        "s4 H2 basis at gamma=-1, dim H2=1 at gamma=-2, and extensions, 3 alpha vectors, n=4..11",
        config(4, 11, &["s4"]),
        &range(4, 11),
        3,
    );
}

#[test]
fn criterion_12_diagrams() {
    criterion(
        12,
        "both paths of each diagram agree, the Q path ends at tau_{n+1,2}, L_k has no codim-2 continuation, n=5,7,9",
        config(5, 9, &["diagrams"]),
        &[5, 7, 9],
        3,
    );
}

#[test]
fn criterion_13_determinism() {
    let cfg = SuiteConfig { n_min: 4, n_max: 11, ..SuiteConfig::default() };
    let first = emit_report(&run_suite(&cfg).unwrap(), Format::Json);
    let second = emit_report(&run_suite(&cfg).unwrap(), Format::Json);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let third = pool.install(|| emit_report(&run_suite(&cfg).unwrap(), Format::Json));
    let sections: BTreeSet<String> = run_suite(&SuiteConfig { n_max: 5, ..cfg.clone() })
        .unwrap()
        .summary
        .sections
        .into_keys()
        .collect();
    let ok = first == second && first == third && sections.len() == 12;
    println!(
        "{} criterion 13: two runs with the same seed give byte-identical JSON reports ({} bytes, thread count varied)",
        if ok { "PASS" } else { "FAIL" },
        first.len()
    );
    assert!(ok);
}
