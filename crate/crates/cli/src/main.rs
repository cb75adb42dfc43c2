use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bogo_core::decompose::{chi, curve_v_phi, factor_u};
use bogo_core::error::{Error, Result};
use bogo_core::implementer::{associate, ImplementerSet};
use bogo_core::quasifree::{n_v, s_v};
use bogo_core::random;
use bogo_core::report::{Check, Report};
use bogo_core::selfdual::spec_file::{LoadedOperator, OperatorSpec};
use bogo_core::selfdual::BogoliubovOp;
use bogo_core::verify::{self, ImplementerTolerances};

#[derive(Parser)]
#[command(name = "bogo", version, about = "Bogoliubov endomorphisms of the CAR algebra: implementers, decompositions and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for all random test data
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Tolerance overriding the defaults of the implement and decompose suites
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report as JSON
    #[arg(long, global = true, conflicts_with = "human")]
    json: bool,
    /// Write the report as a table (default)
    #[arg(long, global = true)]
    human: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Index, statistical dimension and spectral data of an operator
    Inspect { path: PathBuf },
    /// Build the implementer family and check the Cuntz relations
    Implement {
        path: PathBuf,
        /// Number of random test vectors
        #[arg(long, default_value_t = 20)]
        vectors: usize,
    },
    /// Factor V = U W and check the implementer product formula
    Decompose {
        path: PathBuf,
        #[arg(long, default_value_t = 10)]
        vectors: usize,
    },
    /// Index of the conditional expectation C(K) -> C(K1)
    Watatani {
        /// dim K (even)
        dim_k: usize,
        /// dim K2 = dim K1^⊥
        dim_k2: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Run every acceptance criterion
    VerifyAll,
    /// Print an operator specification
    Spec {
        #[command(subcommand)]
        which: SpecKind,
    },
}

#[derive(Subcommand)]
enum SpecKind {
    /// The curve V(φ) of index 2
    Curve {
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
    },
    /// A seeded random Bogoliubov operator
    Random {
        #[arg(long, default_value_t = 2)]
        index: usize,
        #[arg(long, default_value_t = 6)]
        window: usize,
    },
}

fn load(path: &PathBuf) -> Result<BogoliubovOp> {
    match OperatorSpec::from_path(path)?.load()? {
        LoadedOperator::Bogoliubov(v) => Ok(v),
        LoadedOperator::General(_) => Err(Error::Invalid(
            "spec is not declared as a Bogoliubov operator (\"bogoliubov\": true)".into(),
        )),
    }
}

fn inspect(v: &BogoliubovOp, r: &mut Report) -> Result<()> {
    r.info("index", v.index());
    r.info("statistical_dimension", v.statistical_dimension());
    r.info("N_V", n_v(v)?);
    r.info("rank_V12", v.components().v12.rank()?);
    r.info("dim_ker_V11", bogo_core::implementer::dim_ker_v11(v)?);
    if v.index() % 2 == 0 {
        let set = ImplementerSet::new(v)?;
        r.info("L_V", set.l_v());
        r.info("chi", chi(v)?);
    }
    let sp = s_v(v).spectral_pairs()?;
    r.info(
        "spectral_pairs",
        sp.pairs.iter().map(|p| p.theta).collect::<Vec<_>>(),
    );
    r.info("dim_E_half", sp.half.dim());
    let rels = v.components().relation_residuals()?;
    for (name, res) in rels {
        r.push(Check::residual(name, "Eq. REL", res, 1e-12));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    let seed = cli.common.seed;
    let tol = cli.common.tol;
    let mut rng = random::rng(seed);
    let report = match &cli.command {
        Command::Inspect { path } => {
            let mut r = Report::new(format!("inspect {}", path.display()), seed);
            inspect(&load(path)?, &mut r)?;
            r
        }
        Command::Implement { path, vectors } => {
            let v = load(path)?;
            let mut r = Report::new(format!("implement {} --vectors {vectors}", path.display()), seed);
            let a = associate(&v)?;
            r.info("index", v.index());
            r.info("family_size", 1u64 << (v.index() / 2));
            r.info("hs_norm_lambda12", a.hs_norm12());
            let t = tol.map(ImplementerTolerances::uniform).unwrap_or_default();
            r.extend(verify::implementer_suite("V", &v, *vectors, &mut rng, t));
            r
        }
        Command::Decompose { path, vectors } => {
            let v = load(path)?;
            let mut r = Report::new(format!("decompose {} --vectors {vectors}", path.display()), seed);
            let d = factor_u(&v)?;
            r.info("chi", chi(&v)?);
            r.info("index_W", d.w.index());
            r.extend(verify::decomposition_suite("V", &v, *vectors, &mut rng, tol.unwrap_or(1e-9)));
            r
        }
        Command::Watatani { dim_k, dim_k2, samples } => {
            if dim_k % 2 != 0 || *dim_k2 > *dim_k {
                return Err(Error::Invalid(format!(
                    "need even dim K and dim K2 <= dim K, got {dim_k} and {dim_k2}"
                )));
            }
            let mut r = Report::new(format!("watatani {dim_k} {dim_k2} --samples {samples}"), seed);
            r.info("expected_index", 1u64 << dim_k2);
            r.extend(verify::watatani_suite(dim_k / 2, *dim_k2, *samples, &mut rng));
            r
        }
        Command::VerifyAll => {
            let mut r = Report::new("verify-all", seed);
            for c in verify::verify_all(seed) {
                r.info(&format!("criterion_{}", c.id), if c.pass() { "pass" } else { "FAIL" });
                r.extend(c.checks.into_iter().map(|mut ch| {
                    ch.name = format!("[{}] {}", c.id, ch.name);
                    ch
                }));
            }
            r
        }
        Command::Spec { which } => {
            let v = match which {
                SpecKind::Curve { phi } => curve_v_phi(*phi),
                SpecKind::Random { index, window } => {
                    if index % 2 != 0 {
                        return Err(Error::OddShift(*index as isize));
                    }
                    random::random_bogoliubov(&mut rng, *index, *window)
                }
            };
            println!("{}", OperatorSpec::from_op(v.op(), true)?.to_json());
            return Ok(Report::new("spec", seed));
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut r) => {
            if r.command == "spec" {
                return ExitCode::SUCCESS;
            }
            r.timing.seconds = start.elapsed().as_secs_f64();
            if cli.common.json {
                println!("{}", r.to_json());
            } else {
                print!("{}", r.to_human());
            }
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.common.json {
                println!("{}", json!({"version": "1", "error": e.to_string(), "pass": false}));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
