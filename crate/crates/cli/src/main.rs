use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lieext::catalog::{make_catalog, CatalogId};
use lieext::cohomology::{central_h2, twisted_h2, Cocycle, WeightAction};
use lieext::extension::{central_extend, solvable_extend};
use lieext::liecore::LieAlgebra;
use lieext::orbits::{normalize_nn1_line, solve_twisted_normalization, Normalization};
use lieext::ratlin::{format_scalar, parse_scalar, QuotientSpace, Scalar};
use lieext::Family;
use lieext_cli::format::{parse_algebra_file, parse_cocycle_file, AlgebraFile, CocycleFile};
use lieext_cli::report::{emit_report, to_json, Format};
use lieext_cli::suite::{run_suite, SuiteConfig};
use lieext_cli::CliError;

const SEED_ENV: &str = "LIEEXT_SEED";

#[derive(Parser)]
#[command(name = "lieext", version, about = "Exact second cohomology and extensions of Lie algebras over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Algebra file (JSON)
    #[arg(long, conflicts_with = "catalog")]
    algebra: Option<PathBuf>,
    /// Catalog id, e.g. nn1:5 or s1:6:beta=3/2
    #[arg(long)]
    catalog: Option<String>,
}

impl Source {
    fn load(&self) -> Result<(LieAlgebra, Option<CatalogId>), CliError> {
        match (&self.algebra, &self.catalog) {
            (Some(p), _) => Ok((parse_algebra_file(p)?, None)),
            (None, Some(s)) => {
                let id: CatalogId = s.parse()?;
                Ok((make_catalog(&id)?, Some(id)))
            }
            (None, None) => Err(CliError::Usage("one of --algebra or --catalog is required".into())),
        }
    }
}

#[derive(Args)]
struct Weight {
    /// Weight of the single outer generator x
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Weight of x1 for two outer generators
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Weight of x2 for two outer generators
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Full weight vector, comma separated, one entry per basis element
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
}

impl Weight {
    fn build(&self, l: &LieAlgebra, id: Option<&CatalogId>) -> Result<WeightAction, CliError> {
        let p = |s: &str| parse_scalar(s.trim()).map_err(CliError::from);
        if let Some(w) = &self.weights {
            let v = w.split(',').map(p).collect::<Result<Vec<Scalar>, _>>()?;
            if v.len() != l.dim() {
                return Err(CliError::Usage(format!("--weights needs {} entries", l.dim())));
            }
            return Ok(WeightAction::new(v));
        }
        let outer = id.map(|i| i.family.outer()).unwrap_or(0);
        let mut v = vec![Scalar::from_integer(0.into()); l.dim()];
        match (outer, &self.gamma, &self.alpha, &self.beta) {
            (1, Some(g), None, None) => v[0] = p(g)?,
            (2, None, Some(a), Some(b)) => {
                v[0] = p(a)?;
                v[1] = p(b)?;
            }
            _ => {
                return Err(CliError::Usage(
                    "use --gamma for one outer generator, --alpha and --beta for two, or --weights".into(),
                ))
            }
        }
        Ok(WeightAction::new(v))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a catalog algebra as an algebra file
    Catalog {
        id: String,
    },
    /// Central second cohomology
    H2Central {
        #[command(flatten)]
        source: Source,
    },
    /// Second cohomology with a one-dimensional weight
    H2Twisted {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        weight: Weight,
    },
    /// Central extension by a cocycle file
    ExtendCentral {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// One-dimensional solvable extension by a twisted cocycle
    ExtendSolvable {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        cocycle: PathBuf,
        #[command(flatten)]
        weight: Weight,
    },
    /// Carry a cohomology line of a catalog algebra to its canonical representative
    Normalize {
        #[arg(long)]
        catalog: String,
        #[arg(long)]
        cocycle: PathBuf,
        #[command(flatten)]
        weight: Weight,
    },
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Defaults to $LIEEXT_SEED, then 1
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated family tags
    #[arg(long, value_delimiter = ',')]
    families: Vec<String>,
    /// Comma-separated section names
    #[arg(long, value_delimiter = ',')]
    sections: Vec<String>,
    #[arg(long, default_value_t = 10)]
    weight_samples: usize,
    #[arg(long)]
    allow_large: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

fn h2_value(q: &QuotientSpace, dim: usize) -> Value {
    let classes: Vec<CocycleFile> = q
        .reps()
        .iter()
        .map(|r| CocycleFile::from_cocycle(&Cocycle::from_flat(dim, r)))
        .collect();
    json!({
        "z": q.total().dim(),
        "b": q.sub().dim(),
        "h": q.dim(),
        "classes": classes,
    })
}

fn print_json(v: &impl serde::Serialize) {
    print!("{}", to_json(v));
}

fn check_dim(psi: &Cocycle, l: &LieAlgebra) -> Result<(), CliError> {
    if psi.dim() != l.dim() {
        return Err(CliError::Usage(format!("cocycle dim {} does not match algebra dim {}", psi.dim(), l.dim())));
    }
    Ok(())
}

fn params_value(p: &lieext::orbits::AutParams) -> Value {
    Value::Object(p.values.iter().map(|(k, v)| (k.clone(), json!(format_scalar(v)))).collect())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Catalog { id } => {
            let id: CatalogId = id.parse()?;
            print_json(&AlgebraFile::from_algebra(&make_catalog(&id)?));
        }
        Command::H2Central { source } => {
            let (l, _) = source.load()?;
            print_json(&h2_value(&central_h2(&l), l.dim()));
        }
        Command::H2Twisted { source, weight } => {
            let (l, id) = source.load()?;
            let theta = weight.build(&l, id.as_ref())?;
            print_json(&h2_value(&twisted_h2(&l, &theta)?, l.dim()));
        }
        Command::ExtendCentral { source, cocycle } => {
            let (l, _) = source.load()?;
            let psi = parse_cocycle_file(&cocycle)?;
            check_dim(&psi, &l)?;
            print_json(&AlgebraFile::from_algebra(&central_extend(&l, &psi)?));
        }
        Command::ExtendSolvable { source, cocycle, weight } => {
            let (l, id) = source.load()?;
            let psi = parse_cocycle_file(&cocycle)?;
            check_dim(&psi, &l)?;
            let theta = weight.build(&l, id.as_ref())?;
            print_json(&AlgebraFile::from_algebra(&solvable_extend(&l, &psi, &theta)?));
        }
        Command::Normalize { catalog, cocycle, weight } => {
            let id: CatalogId = catalog.parse()?;
            let l = make_catalog(&id)?;
            let psi = parse_cocycle_file(&cocycle)?;
            check_dim(&psi, &l)?;
            let out = if id.family == Family::NN1 {
                let (rep, p) = normalize_nn1_line(id.n, &psi)?;
                json!({ "rep": rep.to_string(), "params": params_value(&p) })
            } else {
                let theta = weight.build(&l, Some(&id))?;
                match solve_twisted_normalization(&id, &psi, &theta)? {
                    Normalization::Normalized(rep, p) => json!({ "rep": rep.to_string(), "params": params_value(&p) }),
                    Normalization::NeedsRootExtension(m) => json!({ "needs_root_extension": m }),
                }
            };
            print_json(&out);
        }
        Command::Verify(a) => {
            let (seed, seed_source) = match (a.seed, std::env::var(SEED_ENV).ok()) {
                (Some(s), _) => (s, "flag".to_string()),
                (None, Some(v)) => (
                    v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an integer")))?,
                    format!("env:{SEED_ENV}"),
                ),
                (None, None) => (1, "default".to_string()),
            };
            let set = |v: Vec<String>| (!v.is_empty()).then(|| v.into_iter().collect::<BTreeSet<_>>());
            let cfg = SuiteConfig {
                n_min: a.n_min,
                n_max: a.n_max,
                seed,
                families: set(a.families),
                sections: set(a.sections),
                weight_samples: a.weight_samples,
                allow_large: a.allow_large,
                tamper: false,
            };
            let mut report = run_suite(&cfg)?;
            if let Value::Object(m) = &mut report.config {
                m.insert("seed_source".into(), json!(seed_source));
            }
            let bytes = emit_report(&report, a.format);
            match &a.output {
                Some(p) => std::fs::write(p, &bytes).map_err(|e| CliError::Io(p.display().to_string(), e.to_string()))?,
                None => print!("{}", String::from_utf8_lossy(&bytes)),
            }
            let t = &report.summary.counts;
            eprintln!("{} checks, {} passed, {} failed", t.total, t.passed, t.failed);
            return Ok(report.all_pass());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
