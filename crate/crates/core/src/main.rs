use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use krkit::artifact::{to_dot, to_json, write_atomic, ArtifactError, Cache};
use krkit::checks::{
    check_branching, check_spec, check_tensor, env_budget, parse_highest, parse_pair, parse_spec,
    Builder, CheckError, CheckKind,
};
use krkit::matrix::{parse_config, run_config};
use krkit::variation::VariationKind;

/// Kirillov-Reshetikhin crystals as finite graphs.
///
/// Types are written FAMILY:n with FAMILY one of A1, B1, C1, D1 (untwisted),
/// A2e (A_{2n}^{(2)}), A2o (A_{2n-1}^{(2)}) and D2 (D_{n+1}^{(2)}).
/// The element budget is --budget, else KRKIT_BUDGET, else 2000000.
///
/// Exit codes: 0 pass, 1 check failed, 2 budget exceeded, 3 I/O error,
/// 4 usage error.
#[derive(Parser)]
#[command(name = "krkit", version)]
struct Cli {
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Directory for cached graph files.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build B^{r,s} and write it as JSON or DOT.
    Build {
        ty: String,
        r: usize,
        s: usize,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run one check and print its verdict as JSON.
    ///
    /// Arguments: `TYPE r s` for most checks, `TYPE r,s r,s ...` for tensor,
    /// `CLASSICAL PARTITION` (e.g. `B3 2,1`) for branching.
    Check {
        #[arg(value_parser = parse_kind)]
        kind: CheckKind,
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
        /// Multiplier for similarity.
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Variation kind, e.g. 1-ii or 2-iii.
        #[arg(long = "kind-id")]
        kind_id: Option<String>,
        /// Also write the verdict to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every entry of a configuration file.
    Matrix {
        #[arg(long)]
        config: PathBuf,
        /// Directory for per-entry verdict files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> Result<CheckKind, String> {
    s.parse().map_err(|e: CheckError| e.to_string())
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CheckError> {
    match out {
        Some(p) => Ok(write_atomic(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CheckError> {
    let budget = match cli.budget {
        Some(b) => b,
        None => env_budget()?,
    };
    let builder = Builder {
        budget,
        cache: cli.cache.map(Cache::new),
    };
    match cli.cmd {
        Cmd::Build {
            ty,
            r,
            s,
            out,
            format,
        } => {
            let spec = parse_spec(&ty, r, s)?;
            let kr = builder.build(&spec)?;
            let text = match format {
                Format::Json => to_json(&kr.graph, Some(&spec)),
                Format::Dot => to_dot(&kr.graph, &spec.to_string()),
            };
            emit(out.as_ref(), &text)?;
            Ok(0)
        }
        Cmd::Check {
            kind,
            args,
            m,
            kind_id,
            out,
        } => {
            let verdict = match kind {
                CheckKind::Tensor => {
                    let [ty, pairs @ ..] = &args[..] else {
                        unreachable!()
                    };
                    if pairs.len() < 2 {
                        return Err(CheckError::Usage(
                            "tensor needs at least two r,s factors".into(),
                        ));
                    }
                    let mut specs = Vec::new();
                    for p in pairs {
                        let (r, s) = parse_pair(p)?;
                        specs.push(parse_spec(ty, r, s)?);
                    }
                    check_tensor(&builder, &specs)?
                }
                CheckKind::Branching => {
                    let [ty, parts] = &args[..] else {
                        return Err(CheckError::Usage(
                            "branching takes CLASSICAL PARTITION".into(),
                        ));
                    };
                    let (ct, lam) = parse_highest(ty, parts)?;
                    check_branching(&builder, ct, &lam)?
                }
                _ => {
                    let [ty, r, s] = &args[..] else {
                        return Err(CheckError::Usage(format!("{kind} takes TYPE r s")));
                    };
                    let num = |w: &String| {
                        w.parse::<usize>()
                            .map_err(|_| CheckError::Usage(format!("`{w}` is not a number")))
                    };
                    let spec = parse_spec(ty, num(r)?, num(s)?)?;
                    let variation = match kind_id {
                        Some(k) => Some(k.parse::<VariationKind>().map_err(CheckError::Usage)?),
                        None => None,
                    };
                    check_spec(&builder, kind, &spec, m, variation)?
                }
            };
            let text = serde_json::to_string_pretty(&verdict).expect("verdict serializes") + "\n";
            if let Some(p) = &out {
                write_atomic(p, &text)?;
            }
            print!("{text}");
            Ok(if verdict.passed() { 0 } else { 1 })
        }
        Cmd::Matrix { config, out } => {
            let text = fs::read_to_string(&config).map_err(|e| {
                CheckError::Artifact(ArtifactError::Io {
                    path: config.display().to_string(),
                    source: e,
                })
            })?;
            let cfg = parse_config(&text)?;
            let report = run_config(&cfg, &builder);
            print!("{}", report.table());
            if let Some(dir) = &out {
                report.write_dir(dir)?;
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("krkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
