//! `biclosure`: run dual-space constructions and representation checks on
//! finite posets given as JSON.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use biclosure::{Bounds, Error, Suite};

#[derive(Parser)]
#[command(
    name = "biclosure",
    version,
    about = "Dual spaces and two-closure representations of finite posets"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a DOT diagram here (represent, stone).
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Largest number of up-sets materialized for P*.
    #[arg(long, global = true, default_value_t = Bounds::default().dual_cap, value_parser = positive)]
    dual_cap: usize,
    /// Largest |P*| for the exhaustive sweep over its subspaces.
    #[arg(long, global = true, default_value_t = Bounds::default().s_cap, value_parser = positive)]
    s_cap: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the dual space P* as the one-sets of its points.
    Dual { input: String },
    /// Represent the poset as a C1O2 family and verify the isomorphism.
    Represent {
        input: String,
        #[arg(long, value_enum, default_value_t = Kind::General)]
        kind: Kind,
        /// Which orthocomplementation to use with --kind ortho, in listing order.
        #[arg(long, default_value_t = 0)]
        ortho: usize,
    },
    /// List orthocomplementations and match them against the maximal members of S.
    Ortho { input: String },
    /// Build and verify the Stone space of a finite Boolean algebra.
    Stone { input: String },
    /// Run the theorem suite on one poset.
    Check {
        input: String,
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Run the theorem suite on every isomorphism class of size 1..=max-n.
    Catalog {
        #[arg(long, default_value_t = Bounds::default().max_n, value_parser = positive)]
        max_n: usize,
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Emit the Hasse diagram, or with --kind the diagram of a representation.
    ExportDot {
        input: String,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, default_value_t = 0)]
        ortho: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    General,
    Distributive,
    Ortho,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Reasons for a nonzero exit.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Bound(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            Error::VerificationFailed { .. } => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub struct Output {
    body: String,
    dot: Option<String>,
    pass: bool,
}

impl Output {
    pub fn json(value: Value) -> Self {
        let mut body = serde_json::to_string_pretty(&value).expect("serializable");
        body.push('\n');
        Self {
            body,
            dot: None,
            pass: true,
        }
    }

    pub fn text(body: String) -> Self {
        Self {
            body,
            dot: None,
            pass: true,
        }
    }

    pub fn with_dot(self, dot: String) -> Self {
        Self {
            dot: Some(dot),
            ..self
        }
    }
}

fn warn_raised(name: &str, value: usize, default: usize) {
    if value > default {
        eprintln!(
            "warning: {name} {value} is above the default {default}; enumeration may be slow"
        );
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("BICLOSURE_THREADS") else {
        return Ok(());
    };
    let n = positive(&raw).map_err(|e| Failure::Usage(format!("BICLOSURE_THREADS: {e}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("BICLOSURE_THREADS: {e}")))
}

fn write(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    configure_threads()?;
    let defaults = Bounds::default();
    let c = &cli.common;
    warn_raised("--dual-cap", c.dual_cap, defaults.dual_cap);
    warn_raised("--s-cap", c.s_cap, defaults.s_cap);
    let mut bounds = Bounds {
        dual_cap: c.dual_cap,
        s_cap: c.s_cap,
        ..defaults
    };

    let out = match cli.verb {
        Verb::Dual { input } => commands::dual(&input::load(&input)?, &bounds),
        Verb::Represent { input, kind, ortho } => {
            commands::represent_cmd(&input::load(&input)?, kind, ortho, &bounds)
        }
        Verb::Ortho { input } => commands::ortho(&input::load(&input)?, &bounds),
        Verb::Stone { input } => commands::stone_cmd(&input::load(&input)?, &bounds),
        Verb::Check { input, suite } => commands::check(&input::load(&input)?, suite, &bounds),
        Verb::Catalog { max_n, suite } => {
            warn_raised("--max-n", max_n, defaults.max_n);
            bounds.max_n = bounds.max_n.max(max_n);
            commands::catalog(max_n, suite, &bounds)
        }
        Verb::ExportDot { input, kind, ortho } => {
            commands::export_dot(&input::load(&input)?, kind, ortho, &bounds)
        }
    }?;
    write(&c.out, &out.body)?;
    if let (Some(path), Some(dot)) = (&c.dot, &out.dot) {
        write(&Some(path.clone()), dot)?;
    }
    Ok(out.pass)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Bound(msg)) => {
            eprintln!("bound exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
