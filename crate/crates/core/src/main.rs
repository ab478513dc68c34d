use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use weylpi::bracket::enumerate_completely_reduced;
use weylpi::evaluation::is_weak_identity;
use weylpi::free_algebra::{parse, MultiDegree};
use weylpi::identities::{identity_basis, partitions, verify_many, Verdict, VerifyOptions, DEFAULT_MAX_DEGREE};
use weylpi::rewriter::{normal_form, normal_form_traced, NormalForm};
use weylpi::{Error, FieldSpec};

/// Exact computations with weak identities of the Weyl algebra.
#[derive(Parser)]
#[command(name = "weylpi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// `q` for the rationals or `fp:P` for the prime field of order P.
    #[arg(long, default_value = "q")]
    field: FieldSpec,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite an expression into its normal form modulo the ideal.
    Normalize {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        expr: String,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
        /// Print the normal forms as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether an expression is a weak identity.
    Check {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        expr: String,
    },
    /// List the completely reduced bracket-monomials of a multidegree.
    Enumerate {
        #[arg(long)]
        mdeg: String,
    },
    /// Print a basis of the weak identities of a multidegree.
    Idbasis {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        mdeg: String,
    },
    /// Check that every weak identity lies in the ideal.
    Verify {
        #[command(flatten)]
        field: FieldArg,
        /// All multidegrees of this total degree, one per variable permutation.
        #[arg(long, conflicts_with = "mdeg", required_unless_present = "mdeg")]
        degree: Option<u32>,
        #[arg(long)]
        mdeg: Option<String>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the reports as a JSON array to this file.
        #[arg(long)]
        json: Option<std::path::PathBuf>,
        /// Skip computing the ideal dimension when independence already decides.
        #[arg(long)]
        no_cross_check: bool,
    },
}

enum Failure {
    Input(Error),
    Resource(Error),
    Negative,
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(_) => Failure::Resource(e),
            e => Failure::Input(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

#[derive(Serialize)]
struct JsonTerm {
    monomial: String,
    coeff: String,
}

#[derive(Serialize)]
struct JsonNormalForm {
    mdeg: MultiDegree,
    beta: String,
    terms: Vec<JsonTerm>,
}

impl From<&NormalForm> for JsonNormalForm {
    fn from(nf: &NormalForm) -> Self {
        JsonNormalForm {
            mdeg: nf.mdeg.trimmed(),
            beta: nf.beta.to_string(),
            terms: nf
                .terms
                .iter()
                .map(|(b, c)| JsonTerm {
                    monomial: b.to_string(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

fn max_degree() -> u32 {
    std::env::var("WEYLPI_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Normalize {
            field,
            expr,
            trace,
            json,
        } => {
            let f = parse(&expr, field.field)?;
            let forms = if trace {
                let (forms, steps) = normal_form_traced(&f);
                for s in steps {
                    writeln!(out, "{s}")?;
                }
                forms
            } else {
                normal_form(&f)
            };
            if json {
                let list: Vec<JsonNormalForm> = forms.values().map(JsonNormalForm::from).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&list).expect("serializable"))?;
            } else {
                for nf in forms.values() {
                    if nf.is_zero() {
                        writeln!(out, "mdeg {}: 0", nf.mdeg.trimmed())?;
                    } else {
                        write!(out, "{nf}")?;
                    }
                }
            }
        }
        Command::Check { field, expr } => {
            let f = parse(&expr, field.field)?;
            if is_weak_identity(&f) {
                writeln!(out, "identity")?;
            } else {
                writeln!(out, "not-identity")?;
                return Err(Failure::Negative);
            }
        }
        Command::Enumerate { mdeg } => {
            let d: MultiDegree = mdeg.parse()?;
            let list = match enumerate_completely_reduced(&d) {
                Ok(list) => list,
                Err(Error::DegreeTooSmall(n)) => {
                    eprintln!("warning: total degree {n} < 2 admits no bracket-monomial");
                    Vec::new()
                }
                Err(e) => return Err(e.into()),
            };
            for b in &list {
                writeln!(out, "{b}")?;
            }
            writeln!(out, "count={}", list.len())?;
        }
        Command::Idbasis { field, mdeg } => {
            let d: MultiDegree = mdeg.parse()?;
            check_degree(&d)?;
            let basis = identity_basis(&d, field.field);
            for f in &basis {
                writeln!(out, "{f}")?;
            }
            writeln!(out, "dim={}", basis.len())?;
        }
        Command::Verify {
            field,
            degree,
            mdeg,
            jobs,
            json,
            no_cross_check,
        } => {
            let deltas = match (degree, mdeg) {
                (Some(n), _) => partitions(n),
                (None, Some(m)) => vec![m.parse()?],
                (None, None) => unreachable!("clap requires one of them"),
            };
            let opts = VerifyOptions {
                cross_check: !no_cross_check,
                max_degree: max_degree(),
                ..Default::default()
            };
            for d in &deltas {
                check_degree(d)?;
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .expect("thread pool");
            let results = pool.install(|| verify_many(&deltas, field.field, opts));
            let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            let verified = reports.iter().filter(|r| r.verdict == Verdict::Verified).count();
            writeln!(out, "verified {verified}/{} over {}", reports.len(), field.field)?;
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&reports).expect("serializable");
                std::fs::write(path, text + "\n")?;
            }
            if verified != reports.len() {
                return Err(Failure::Negative);
            }
        }
    }
    Ok(())
}

fn check_degree(d: &MultiDegree) -> Result<(), Error> {
    let cap = max_degree();
    if d.total() > cap {
        return Err(Error::ResourceLimit(format!("total degree {} exceeds the cap {cap}", d.total())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(cli, &mut out) {
        Ok(()) => 0,
        Err(Failure::Negative) => 1,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(Failure::Resource(e)) => {
            eprintln!("error: {e}");
            3
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
