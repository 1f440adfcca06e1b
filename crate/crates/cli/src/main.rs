//! `qgr`: compute series tables, run verification suites, emit exact JSON.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or configuration error.

mod commands;
mod config;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qgr_core::hypergeometric::{Kind, Mutation};

use config::{AlphaMode, RawConfig, RunConfig};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<qgr_core::Error> for Failure {
    fn from(e: qgr_core::Error) -> Self {
        use qgr_core::Error as E;
        match e {
            E::Invalid(_) | E::NonGeneric(_) | E::DepthExceeded { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qgr", version, about = "Quasimap J-function series for complete intersections in Gr(2,n)")]
struct Cli {
    /// Flat key=value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    #[arg(long)]
    n: Option<usize>,
    /// Hypersurface degrees, comma separated; '' for none.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long)]
    qdeg: Option<u32>,
    #[arg(long)]
    zdeg: Option<u32>,
    /// Laurent depth in 1/h; QGR_DEPTH overrides.
    #[arg(long)]
    depth: Option<i64>,
    /// zero, default, or a comma separated list of weights.
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn raw(&self) -> RawConfig {
        RawConfig {
            n: self.n,
            a: self.a.clone(),
            qdeg: self.qdeg,
            zdeg: self.zdeg,
            depth: self.depth,
            alpha: self.alpha.clone(),
            output: self.output.clone(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a series table.
    Series {
        /// dot, ddot, dot-closed, ddot-closed, k, k-ddot, i-normalization,
        /// i-normalization-ddot, z, z-ddot, y-gamma, y-gamma-ddot
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        j: Option<usize>,
        /// Expand each coefficient in x with Laurent coefficients in 1/h.
        #[arg(long)]
        expand: bool,
        /// Also build the closed form and report whether the two agree.
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite.
    Verify {
        /// recursivity, mpc, operator-norms, fano-vanishing, orthogonality,
        /// residue-internal or all
        #[arg(long)]
        suite: String,
        /// Flip the sign of summand D1 in the q^D coefficient of Y dot, as D:D1.
        #[arg(long)]
        mutate: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Basis, pairing, diagonal and fixed-point data.
    Cohomology {
        #[arg(long)]
        equivariant: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The normalized series attached to the Schur basis.
    YGamma {
        /// dot or ddot
        #[arg(long, default_value = "dot")]
        kind: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        j: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Numerator of the double J-function over h1 + h2.
    DoubleJ {
        #[command(flatten)]
        common: Common,
    },
}

fn parse_mutation(s: &str) -> Result<Mutation, Failure> {
    let bad = || Failure::Usage(format!("bad --mutate {s:?}, expected D:D1"));
    let (d, d1) = s.split_once(':').ok_or_else(bad)?;
    let (d, d1): (u32, u32) = (d.trim().parse().map_err(|_| bad())?, d1.trim().parse().map_err(|_| bad())?);
    if d1 > d {
        return Err(bad());
    }
    Ok(Mutation { d, d1 })
}

fn run(cli: &Cli) -> Result<(RunConfig, serde_json::Value, bool), Failure> {
    let cfile = cli.config.as_ref();
    match &cli.command {
        Command::Series { kind, k, j, expand, dual, common } => {
            let cfg = RunConfig::resolve("series", &common.raw(), cfile, AlphaMode::Zero)?;
            let (p, ok) = commands::series(&cfg, kind, *k, *j, *expand, *dual)?;
            Ok((cfg, json!({"kind": kind, "table": p}), ok))
        }
        Command::Verify { suite, mutate, common } => {
            let cfg = RunConfig::resolve("verify", &common.raw(), cfile, AlphaMode::Default)?;
            let mutation = mutate.as_deref().map(parse_mutation).transpose()?;
            let (p, ok) = commands::verify(&cfg, suite, mutation)?;
            Ok((cfg, json!({"suite": suite, "all_pass": ok, "checks": p}), ok))
        }
        Command::Cohomology { equivariant, common } => {
            let cfg = RunConfig::resolve("cohomology", &common.raw(), cfile, AlphaMode::Default)?;
            let (p, ok) = commands::cohomology(&cfg, *equivariant)?;
            Ok((cfg, p, ok))
        }
        Command::YGamma { kind, k, j, common } => {
            let kd = match kind.as_str() {
                "dot" => Kind::Dot,
                "ddot" => Kind::Ddot,
                other => return Err(Failure::Usage(format!("unknown kind {other:?}"))),
            };
            let cfg = RunConfig::resolve("y-gamma", &common.raw(), cfile, AlphaMode::Zero)?;
            let (p, ok) = commands::y_gamma(&cfg, kd, *k, *j)?;
            Ok((cfg, json!({"kind": kind, "table": p}), ok))
        }
        Command::DoubleJ { common } => {
            let cfg = RunConfig::resolve("double-j", &common.raw(), cfile, AlphaMode::Zero)?;
            let (p, ok) = commands::double_j(&cfg)?;
            Ok((cfg, p, ok))
        }
    }
}

fn emit(cfg: &RunConfig, doc: &serde_json::Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(doc).expect("serializable");
    text.push('\n');
    match &cfg.output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((cfg, payload, ok)) => {
            let doc = json!({"meta": cfg.echo(), "payload": payload});
            if let Err(Failure::Usage(m) | Failure::Check(m)) = emit(&cfg, &doc) {
                eprintln!("qgr: {m}");
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("qgr: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("qgr: check failed: {m}");
            ExitCode::from(1)
        }
    }
}
