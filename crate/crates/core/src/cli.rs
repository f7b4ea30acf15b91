//! Command-line driver.
//!
//! Exit codes: 0 when the programs are equivalent (or the command simply
//! succeeded), 1 when a `check-*` command finds them not equivalent, and 2
//! on any error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::aspgen::{
    emit_delta_programs, emit_weight_check, emit_weight_program, integer_penalty_constants,
    weight_check_expected_unsat, AspDocument,
};
use crate::equiv::{
    check_strong, check_structural, check_structural_all, check_weak,
    randomized_context_falsifier, StructuralMethod, Verdict,
};
use crate::error::{Error, Result};
use crate::formula::{parse_program, Interpretation, Signature, WeightedProgram};
use crate::ht::{is_soft_ht_model, HtInterpretation};
use crate::lpmln::{distribution, six_digits, soft_stable_models, weight, Probability, WeightExpr};

pub const DEFAULT_MAX_ATOMS: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "lpmln", version, about = "Soft stable models, probabilities and equivalence checks for weighted programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Reject inputs whose signature has more atoms than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ATOMS)]
    pub max_atoms: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the soft stable models and their weights.
    Models { file: PathBuf },
    /// Print the probability of every soft stable model.
    Prob { file: PathBuf },
    /// Print the soft HT models as a Yes/No column over all pairs.
    Ht { file: PathBuf },
    /// Decide whether two programs have the same distribution.
    CheckWeak { f: PathBuf, g: PathBuf },
    /// Decide whether two programs have the same soft stable models in every context.
    CheckStructural {
        f: PathBuf,
        g: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Decide whether two programs have the same distribution in every context.
    CheckStrong {
        f: PathBuf,
        g: PathBuf,
        /// Also sample this many random contexts as a cross-check.
        #[arg(long, default_value_t = 0)]
        trials: usize,
        /// Seed for the sampled contexts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the ASP encodings of the equivalence conditions.
    EmitAsp {
        f: PathBuf,
        g: PathBuf,
        /// Directory for the generated files.
        #[arg(long, default_value = ".")]
        emit_dir: PathBuf,
        /// Print all documents to standard output instead of writing files.
        #[arg(long)]
        stdout: bool,
        /// File name prefix; defaults to `<f>_<g>` from the input file stems.
        #[arg(long)]
        pair: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Reduct,
    Choice,
    Ht,
    DeltaX,
    DeltaChoice,
    All,
}

impl MethodArg {
    fn method(self) -> Option<StructuralMethod> {
        match self {
            MethodArg::Reduct => Some(StructuralMethod::Reduct),
            MethodArg::Choice => Some(StructuralMethod::ChoiceReduct),
            MethodArg::Ht => Some(StructuralMethod::SoftHt),
            MethodArg::DeltaX => Some(StructuralMethod::DeltaPerX),
            MethodArg::DeltaChoice => Some(StructuralMethod::DeltaChoice),
            MethodArg::All => None,
        }
    }
}

/// JSON shape of every `check-*` report.
#[derive(Debug, Serialize, serde::Deserialize)]
pub struct CheckReport {
    pub atoms: Vec<String>,
    pub verdict: Verdict,
    pub summary: String,
    /// Witness interpretations spelled out as atom lists.
    pub witness_x: Option<Vec<String>>,
    pub witness_y: Option<Vec<String>>,
    pub falsifier: Option<FalsifierReport>,
}

#[derive(Debug, Serialize, serde::Deserialize)]
pub struct FalsifierReport {
    pub trials: usize,
    pub seed: u64,
    pub context: Option<String>,
    pub x: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
struct ModelReport {
    interpretation: Vec<String>,
    weight: WeightExpr,
    probability: ProbabilityReport,
}

#[derive(Debug, Serialize)]
struct ProbabilityReport {
    exact: String,
    numerator: Option<String>,
    partition: Vec<String>,
    float: f64,
}

impl From<&Probability> for ProbabilityReport {
    fn from(p: &Probability) -> ProbabilityReport {
        ProbabilityReport {
            exact: p.to_string(),
            numerator: p.numerator.as_ref().map(ToString::to_string),
            partition: p.partition.iter().map(ToString::to_string).collect(),
            float: p.to_f64(),
        }
    }
}

#[derive(Debug, Serialize)]
struct DistributionReport {
    atoms: Vec<String>,
    max_hard: i64,
    partition: String,
    models: Vec<ModelReport>,
}

#[derive(Debug, Serialize)]
struct HtRow {
    here: Vec<String>,
    there: Vec<String>,
    soft_ht_model: bool,
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes printed to stdout.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Failure of a command: a library error or an I/O problem.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl From<std::io::Error> for CliError {
    fn from(source: std::io::Error) -> CliError {
        CliError::Io {
            path: PathBuf::from("<output>"),
            source,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Core(Error::Internal(e.to_string()))
    }
}

fn read_program(path: &Path) -> Result<WeightedProgram, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_program(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn check_size(sig: &Signature, max_atoms: usize) -> Result<(), CliError> {
    if sig.len() > max_atoms {
        return Err(CliError::Usage(format!(
            "the signature has {} atoms, more than the limit of {max_atoms} (every one of the \
             2^{} interpretations is enumerated); pass --max-atoms to raise the limit",
            sig.len(),
            sig.len()
        )));
    }
    Ok(())
}

fn read_one(path: &Path, max_atoms: usize) -> Result<WeightedProgram, CliError> {
    let p = read_program(path)?;
    check_size(p.signature(), max_atoms)?;
    Ok(p)
}

fn read_pair(
    f: &Path,
    g: &Path,
    max_atoms: usize,
) -> Result<(WeightedProgram, WeightedProgram, Signature), CliError> {
    let (pf, pg) = (read_program(f)?, read_program(g)?);
    let sig = pf.signature().union(pg.signature())?;
    check_size(&sig, max_atoms)?;
    Ok((pf, pg, sig))
}

fn names(sig: &Signature, x: Interpretation) -> Vec<String> {
    sig.names(x).into_iter().map(|a| a.to_string()).collect()
}

/// Runs a parsed invocation, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let max = cli.max_atoms;
    match &cli.command {
        Command::Models { file } => {
            let p = read_one(file, max)?;
            let sig = p.signature();
            let models = soft_stable_models(&p);
            if cli.json {
                let rows: Vec<_> = models
                    .iter()
                    .map(|&x| serde_json::json!({"interpretation": names(sig, x), "weight": weight(&p, x)}))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                for x in models {
                    writeln!(out, "{}  W = {}", sig.format(x), weight(&p, x))?;
                }
            }
            Ok(0)
        }
        Command::Prob { file } => {
            let p = read_one(file, max)?;
            let sig = p.signature();
            let d = distribution(&p)?;
            if cli.json {
                let report = DistributionReport {
                    atoms: sig.atoms().iter().map(|a| a.to_string()).collect(),
                    max_hard: d.max_hard(),
                    partition: d.partition_string(),
                    models: d
                        .support()
                        .iter()
                        .map(|(&x, w)| ModelReport {
                            interpretation: names(sig, x),
                            weight: w.clone(),
                            probability: (&d.probability(x)).into(),
                        })
                        .collect(),
                };
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                let z = d.partition_string();
                for &x in d.support().keys() {
                    let pr = d.probability(x);
                    let exact = match &pr.numerator {
                        None => "0".to_string(),
                        Some(_) => pr.to_string().replace('Z', &format!("({z})")),
                    };
                    writeln!(out, "P({}) = {exact} = {}", sig.format(x), six_digits(pr.to_f64()))?;
                }
            }
            Ok(0)
        }
        Command::Ht { file } => {
            let p = read_one(file, max)?;
            let sig = p.signature();
            let rows: Vec<HtRow> = HtInterpretation::all(sig)
                .map(|i| HtRow {
                    here: names(sig, i.here()),
                    there: names(sig, i.there()),
                    soft_ht_model: is_soft_ht_model(i, &p),
                })
                .collect();
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
            } else {
                for (i, row) in HtInterpretation::all(sig).zip(&rows) {
                    let mark = if row.soft_ht_model { "Yes" } else { "No" };
                    writeln!(out, "{}  {mark}", i.display(sig))?;
                }
            }
            Ok(0)
        }
        Command::CheckWeak { f, g } => {
            let (pf, pg, sig) = read_pair(f, g, max)?;
            let v = check_weak(&pf, &pg)?;
            report(cli, out, &sig, v, None)
        }
        Command::CheckStructural { f, g, method } => {
            let (pf, pg, sig) = read_pair(f, g, max)?;
            let v = match method.method() {
                Some(m) => check_structural(&pf, &pg, m)?,
                None => check_structural_all(&pf, &pg)?,
            };
            report(cli, out, &sig, v, None)
        }
        Command::CheckStrong {
            f,
            g,
            trials,
            seed,
        } => {
            let (pf, pg, sig) = read_pair(f, g, max)?;
            let v = check_strong(&pf, &pg)?;
            let falsifier = if *trials > 0 {
                let found = randomized_context_falsifier(&pf, &pg, *trials, *seed)?;
                if v.result && found.is_some() {
                    return Err(Error::Internal(
                        "a sampled context separates programs judged strongly equivalent".into(),
                    )
                    .into());
                }
                Some(FalsifierReport {
                    trials: *trials,
                    seed: *seed,
                    context: found.as_ref().map(|(h, _)| h.to_string()),
                    x: found.as_ref().map(|(_, x)| names(&sig, *x)),
                })
            } else {
                None
            };
            report(cli, out, &sig, v, falsifier)
        }
        Command::EmitAsp {
            f,
            g,
            emit_dir,
            stdout,
            pair,
        } => {
            let (pf, pg, _) = read_pair(f, g, max)?;
            let pair = pair.clone().unwrap_or_else(|| {
                let stem = |p: &Path| {
                    p.file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| "program".into())
                };
                format!("{}_{}", stem(f), stem(g))
            });
            let docs = emit_all(&pf, &pg)?;
            if *stdout {
                for (suffix, doc) in &docs {
                    writeln!(out, "%%% file: {pair}.{suffix}.lp")?;
                    write!(out, "{doc}")?;
                }
            } else {
                fs::create_dir_all(emit_dir).map_err(|source| CliError::Io {
                    path: emit_dir.clone(),
                    source,
                })?;
                for (suffix, doc) in &docs {
                    let path = emit_dir.join(format!("{pair}.{suffix}.lp"));
                    fs::write(&path, doc.to_string()).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    writeln!(out, "wrote {}", path.display())?;
                }
                let (c1, c2) = integer_penalty_constants(&pf, &pg)?;
                let (soft, hard) = weight_check_expected_unsat(&pf, &pg, c1, c2)?;
                let status = |unsat: bool| if unsat { "no answer set" } else { "has answer sets" };
                writeln!(out, "c1 = {c1}, c2 = {c2}")?;
                writeln!(out, "expected: Pstar_soft {}, Pstar_hard {}", status(soft), status(hard))?;
            }
            Ok(0)
        }
    }
}

/// All five documents with their file suffixes, in output order.
pub fn emit_all(pf: &WeightedProgram, pg: &WeightedProgram) -> Result<Vec<(&'static str, AspDocument)>> {
    let (c1, c2) = integer_penalty_constants(pf, pg)?;
    let (soft, hard) = emit_weight_check(pf, pg, c1, c2)?;
    let (p1, p2) = emit_delta_programs(pf, pg)?;
    Ok(vec![
        ("P", emit_weight_program(pf, pg, true)?),
        ("Pstar_soft", soft),
        ("Pstar_hard", hard),
        ("P1ss", p1),
        ("P2ss", p2),
    ])
}

fn report(
    cli: &Cli,
    out: &mut dyn Write,
    sig: &Signature,
    verdict: Verdict,
    falsifier: Option<FalsifierReport>,
) -> Result<i32, CliError> {
    let code = if verdict.result { 0 } else { 1 };
    let summary = verdict.describe(sig);
    if cli.json {
        let (wx, wy) = match &verdict.witness {
            Some(crate::equiv::Witness::ReductInequivalence { x, y }) => {
                (Some(names(sig, *x)), Some(names(sig, *y)))
            }
            Some(w) => (Some(names(sig, w.x())), None),
            None => (None, None),
        };
        let r = CheckReport {
            atoms: sig.atoms().iter().map(|a| a.to_string()).collect(),
            verdict,
            summary,
            witness_x: wx,
            witness_y: wy,
            falsifier,
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&r)?)?;
    } else {
        writeln!(out, "{summary}")?;
        if let Some(fr) = falsifier {
            match (fr.context, fr.x) {
                (Some(h), Some(x)) => writeln!(
                    out,
                    "sampled context separating the programs at {{{}}}:\n{h}",
                    x.join(", ")
                )?,
                _ => writeln!(out, "no separating context among {} samples (seed {})", fr.trials, fr.seed)?,
            }
        }
    }
    Ok(code)
}
