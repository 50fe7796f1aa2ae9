use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use qdrinfeld::error::{Error, Result};
use qdrinfeld::report::{self, Command, RunOptions, DEFAULT_DEGREE};
use qdrinfeld::scalar::{Cyclotomic, Scalar};
use qdrinfeld::specfile::{read_spec, SpecFile};

/// Degrees above this get a cost warning; the work grows like n^d |G|^2.
const SOFT_DEGREE_LIMIT: usize = 4;

#[derive(Parser)]
#[command(name = "qdrinfeld", version, about = "Exact checks for quantum Drinfeld orbifold algebras")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Degree {
    /// Degree bound for the finite-degree checks.
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// PBW conditions, vanishing conditions and the overlap oracle.
    Check { spec: PathBuf },
    /// Color Lie ring axioms of V (x) kG or of a [generic-lie] ring.
    Lie {
        spec: PathBuf,
        /// Check the grading modulo the subgroup N.
        #[arg(long)]
        quotient: bool,
    },
    /// Enveloping algebra isomorphism and the degree-bounded dimension count.
    Uea {
        spec: PathBuf,
        #[command(flatten)]
        degree: Degree,
        /// Parameter values for exact rank computation, `name=expr`.
        #[arg(long, value_name = "NAME=EXPR")]
        instantiate: Vec<String>,
    },
    /// Braided Hopf axioms up to the degree bound.
    Hopf {
        spec: PathBuf,
        #[command(flatten)]
        degree: Degree,
    },
    /// Rebuild a presentation from its color Lie ring.
    Converse { spec: PathBuf },
    /// Normal form of an element.
    NormalForm { spec: PathBuf, expr: String },
    /// Canonical echo of a spec file.
    Fmt { spec: PathBuf },
    /// check, lie, uea and hopf in order.
    All {
        spec: PathBuf,
        #[command(flatten)]
        degree: Degree,
        #[arg(long, value_name = "NAME=EXPR")]
        instantiate: Vec<String>,
    },
}

fn load(path: &Path) -> Result<SpecFile> {
    read_spec(path)
}

fn parse_overrides(file: &SpecFile, items: &[String]) -> Result<BTreeMap<String, Cyclotomic>> {
    let ctx = match file {
        SpecFile::Algebra(s) => &s.ctx,
        SpecFile::Generic(l) => &l.ctx,
    };
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Error::spec(format!("--instantiate expects name=expr, got `{item}`")))?;
        let name = name.trim();
        if ctx.param_index(name).is_none() {
            return Err(Error::spec(format!("`{name}` is not a declared parameter")));
        }
        let c = Scalar::parse(value.trim(), ctx)?
            .as_constant()
            .ok_or_else(|| Error::spec(format!("value for `{name}` must be a constant")))?;
        out.insert(name.to_string(), c);
    }
    Ok(out)
}

fn warn_degree(d: usize) {
    if d > SOFT_DEGREE_LIMIT {
        eprintln!("warning: degree {d} is above {SOFT_DEGREE_LIMIT}; expect long running times");
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let (command, path, opts) = match &cli.command {
        Cmd::Fmt { spec } => {
            let text = report::canonical_text(&load(spec)?)?;
            if cli.json {
                println!("{}", json!({ "command": "fmt", "spec": spec.display().to_string(), "text": text }));
            } else {
                print!("{text}");
            }
            return Ok(0);
        }
        Cmd::NormalForm { spec, expr } => {
            let nf = report::normal_form(&load(spec)?, expr)?;
            if cli.json {
                println!(
                    "{}",
                    json!({ "command": "normal-form", "spec": spec.display().to_string(), "input": expr, "normal_form": nf })
                );
            } else {
                println!("{nf}");
            }
            return Ok(0);
        }
        Cmd::Check { spec } => (Command::Check, spec, RunOptions::default()),
        Cmd::Lie { spec, quotient } => (
            Command::Lie,
            spec,
            RunOptions {
                quotient: *quotient,
                ..RunOptions::default()
            },
        ),
        Cmd::Uea { spec, degree, .. } | Cmd::All { spec, degree, .. } => {
            warn_degree(degree.degree);
            let cmd = if matches!(cli.command, Cmd::Uea { .. }) { Command::Uea } else { Command::All };
            (
                cmd,
                spec,
                RunOptions {
                    degree: degree.degree,
                    ..RunOptions::default()
                },
            )
        }
        Cmd::Hopf { spec, degree } => {
            warn_degree(degree.degree);
            (
                Command::Hopf,
                spec,
                RunOptions {
                    degree: degree.degree,
                    ..RunOptions::default()
                },
            )
        }
        Cmd::Converse { spec } => (Command::Converse, spec, RunOptions::default()),
    };
    let file = load(path)?;
    let mut opts = opts;
    if let Cmd::Uea { instantiate, .. } | Cmd::All { instantiate, .. } = &cli.command {
        opts.overrides = parse_overrides(&file, instantiate)?;
    }
    let r = report::run(command, &path.display().to_string(), &file, &opts)?;
    if cli.json {
        println!("{}", r.to_json());
    } else {
        print!("{}", r.render_text());
    }
    Ok(r.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "exit_code": 1 }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
