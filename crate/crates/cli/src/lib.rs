//! Command-line front end. [`run`] does all the work so it can be driven
//! in-process by tests; `main` only forwards its outcome.
//!
//! Exit codes: 0 success, 1 domain error (e.g. factorizing an entangled
//! cut), 2 usage or input-file error.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use schwarz_core::{
    concurrence, emit_state, factorize_cut, full_separability, is_separable_cut, parse_state,
    sample_state, Cut, Error, Evaluation, PureState, SampleKind, SamplerSpec,
    SeparabilityCertificate, StateFile, DEFAULT_NORMALIZATION, DEFAULT_TOLERANCE,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "schwarz", version, about = "Concurrence and separability of pure states from 2x2 minors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Concurrence of a bipartite or tripartite state.
    Concurrence {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NORMALIZATION)]
        normalization: f64,
    },
    /// Schwarz-equality certificate for one cut, or for every cut.
    Separability {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        cut: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Split a state that is a product across one cut.
    Factorize {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        cut: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Peel off separable subsystems until none remain or none split.
    Fullsep {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Draw a seeded random state.
    Sample {
        #[arg(long, value_parser = parse_dims)]
        dims: Dims,
        #[arg(long, value_parser = parse_kind)]
        kind: SampleKind,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(format!("{t:?} is not a positive integer")),
            Ok(d) => Ok(d),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Dims)
}

fn parse_kind(s: &str) -> Result<SampleKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(doc: impl Serialize) -> Self {
        let mut stdout = serde_json::to_string(&doc).expect("result documents serialize");
        stdout.push('\n');
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Serialize)]
struct Document<P, R> {
    command: &'static str,
    version: &'static str,
    params: P,
    #[serde(flatten)]
    result: R,
}

fn document<P, R>(command: &'static str, params: P, result: R) -> Document<P, R> {
    Document {
        command,
        version: VERSION,
        params,
        result,
    }
}

#[derive(Serialize)]
struct CutSum {
    cut: usize,
    minor_sum_sq: f64,
}

#[derive(Serialize)]
struct Factors {
    subsystem: StateFile,
    rest: StateFile,
}

#[derive(Serialize)]
struct Certificate {
    cut: usize,
    separable: bool,
    max_abs_minor: f64,
    tolerance: f64,
    scale: f64,
    threshold: f64,
    factors: Option<Factors>,
}

impl From<&SeparabilityCertificate> for Certificate {
    fn from(c: &SeparabilityCertificate) -> Self {
        Certificate {
            cut: c.cut.subsystem(),
            separable: c.separable,
            max_abs_minor: c.max_abs_minor,
            tolerance: c.tolerance,
            scale: c.scale,
            threshold: c.threshold(),
            factors: c.factors.as_ref().map(|(u, v)| Factors {
                subsystem: u.into(),
                rest: v.into(),
            }),
        }
    }
}

enum Failure {
    Input(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn load(path: &PathBuf) -> Result<PureState, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_state(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn cut(j: usize) -> Result<Cut, Failure> {
    Cut::new(j).map_err(|e| Failure::Input(e.to_string()))
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => outcome,
        Err(Failure::Input(msg)) => Outcome::fail(2, msg),
        Err(Failure::Domain(e)) => Outcome::fail(1, e),
    }
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Concurrence {
            state: path,
            normalization,
        } => {
            let state = load(&path)?;
            let report = concurrence(&state, normalization, Evaluation::Parallel)?;

            #[derive(Serialize)]
            struct Params {
                state: PathBuf,
                normalization: f64,
            }
            #[derive(Serialize)]
            struct Out {
                value: f64,
                normalization: f64,
                per_cut: Vec<CutSum>,
            }
            Ok(Outcome::ok(document(
                "concurrence",
                Params {
                    state: path,
                    normalization,
                },
                Out {
                    value: report.value,
                    normalization: report.normalization,
                    per_cut: report
                        .per_cut_sums
                        .iter()
                        .map(|&(c, s)| CutSum {
                            cut: c.subsystem(),
                            minor_sum_sq: s,
                        })
                        .collect(),
                },
            )))
        }

        Command::Separability {
            state: path,
            cut: which,
            tol,
        } => {
            let state = load(&path)?;
            let cuts = match which {
                Some(j) => vec![cut(j)?],
                None => Cut::all(state.arity()).collect(),
            };
            let certs = cuts
                .into_iter()
                .map(|c| is_separable_cut(&state, c, tol))
                .collect::<Result<Vec<_>, _>>()?;

            #[derive(Serialize)]
            struct Params {
                state: PathBuf,
                cut: Option<usize>,
                tol: f64,
            }
            #[derive(Serialize)]
            struct Out {
                #[serde(skip_serializing_if = "Option::is_none")]
                separable: Option<bool>,
                certificates: Vec<Certificate>,
            }
            Ok(Outcome::ok(document(
                "separability",
                Params {
                    state: path,
                    cut: which,
                    tol,
                },
                Out {
                    separable: which.map(|_| certs[0].separable),
                    certificates: certs.iter().map(Certificate::from).collect(),
                },
            )))
        }

        Command::Factorize {
            state: path,
            cut: j,
            tol,
        } => {
            let state = load(&path)?;
            let c = cut(j)?;
            let (u, v) = factorize_cut(&state, c, tol)?;
            let fidelity = PureState::from_cut_product(&u, &v, c)?.fidelity(&state)?;

            #[derive(Serialize)]
            struct Params {
                state: PathBuf,
                cut: usize,
                tol: f64,
            }
            #[derive(Serialize)]
            struct Out {
                factors: Factors,
                fidelity: f64,
            }
            Ok(Outcome::ok(document(
                "factorize",
                Params {
                    state: path,
                    cut: j,
                    tol,
                },
                Out {
                    factors: Factors {
                        subsystem: (&u).into(),
                        rest: (&v).into(),
                    },
                    fidelity,
                },
            )))
        }

        Command::Fullsep { state: path, tol } => {
            let state = load(&path)?;
            let res = full_separability(&state, tol)?;

            #[derive(Serialize)]
            struct Params {
                state: PathBuf,
                tol: f64,
            }
            #[derive(Serialize)]
            struct Factor {
                subsystem: usize,
                state: StateFile,
            }
            #[derive(Serialize)]
            struct Remainder {
                subsystems: Vec<usize>,
                state: StateFile,
            }
            #[derive(Serialize)]
            struct Failed {
                subsystem: usize,
                certificate: Certificate,
            }
            #[derive(Serialize)]
            struct Out {
                fully_separable: bool,
                factors: Vec<Factor>,
                remainder: Option<Remainder>,
                failed: Vec<Failed>,
            }
            Ok(Outcome::ok(document(
                "fullsep",
                Params { state: path, tol },
                Out {
                    fully_separable: res.fully_separable,
                    factors: res
                        .factors
                        .iter()
                        .map(|(j, s)| Factor {
                            subsystem: *j,
                            state: s.into(),
                        })
                        .collect(),
                    remainder: res.remainder.as_ref().map(|(labels, s)| Remainder {
                        subsystems: labels.clone(),
                        state: s.into(),
                    }),
                    failed: res
                        .failed
                        .iter()
                        .map(|(j, c)| Failed {
                            subsystem: *j,
                            certificate: c.into(),
                        })
                        .collect(),
                },
            )))
        }

        Command::Sample {
            dims,
            kind,
            seed,
            out,
        } => {
            let spec = SamplerSpec {
                dims: dims.0,
                kind,
                seed,
            };
            let label = format!(
                "{kind}:{}:{seed}",
                spec.dims
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            );
            let state = sample_state(&spec)
                .map_err(|e| Failure::Input(e.to_string()))?
                .with_label(label);
            if let Some(path) = &out {
                let mut text = emit_state(&state);
                text.push('\n');
                fs::write(path, text)
                    .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            }

            #[derive(Serialize)]
            struct Params {
                dims: Vec<usize>,
                kind: SampleKind,
                seed: u64,
                out: Option<PathBuf>,
            }
            #[derive(Serialize)]
            struct Out {
                state: StateFile,
            }
            Ok(Outcome::ok(document(
                "sample",
                Params {
                    dims: spec.dims,
                    kind,
                    seed,
                    out,
                },
                Out {
                    state: (&state).into(),
                },
            )))
        }
    }
}
