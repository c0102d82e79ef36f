//! `scroll-inflect`: batch frontend over instance files. Prints one JSON
//! document; exit 1 on input errors, 2 when independent computations
//! disagree.

mod commands;
mod instance;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use scroll_core::segrethm::SegreMethod;
use scroll_core::{Error, Result};

use commands::{Outcome, Settings};
use instance::{m_flag_value, InstanceFile};

#[derive(Parser, Debug)]
#[command(name = "scroll-inflect", version, about = "Osculation and Segre-invariant computations for scrolls over elliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    #[arg(long)]
    instance: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    /// `all`, `0`, or a JSON divisor of degree zero.
    #[arg(long = "M")]
    m_class: Option<String>,
    #[arg(long)]
    ext: Option<u32>,
    /// Projective dimension of the projected system.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// `formula` or `bruteforce`.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    /// Perturbs the principal-parts oracle by one.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    CurveInfo(Common),
    Sections(Common),
    Osc(Common),
    Scan(Common),
    Witnesses(Common),
    Project(Common),
    Segre(Common),
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long)]
        m: Option<usize>,
    },
    Verify {
        /// mainA, mainB, mainBmod, mainC or appendixA.
        theorem: String,
        #[command(flatten)]
        common: Common,
    },
    HypothesisNilpotent(Common),
}

const THEOREMS: [&str; 5] = ["mainA", "mainB", "mainBmod", "mainC", "appendixA"];

fn load(common: &Common) -> Result<(InstanceFile, Settings)> {
    let path = common.instance.as_deref().ok_or_else(|| Error::Input("--instance is required".into()))?;
    let inst = InstanceFile::load(path)?;
    let p = &inst.parameters;
    let method = match common.method.as_deref().or(p.method.as_deref()) {
        Some(s) => SegreMethod::parse(s)?,
        None => SegreMethod::Bruteforce,
    };
    let m_value = match &common.m_class {
        Some(s) => Some(m_flag_value(s)?),
        None => inst.m.clone(),
    };
    let settings = Settings {
        k: common.k.or(p.k),
        ext: common.ext.or(p.ext_degree).unwrap_or(1),
        seed: common.seed.or(p.seed).unwrap_or(0),
        m: common.m.or(p.m),
        trials: common.trials.or(p.trials).unwrap_or(50),
        method,
        m_value,
        inject_fault: common.inject_fault,
    };
    Ok((inst, settings))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Bounds { r, n, d, g, m } => commands::bounds(r, n, d, g, m),
        Command::Verify { theorem, common } => {
            if !THEOREMS.contains(&theorem.as_str()) {
                return Err(Error::Input(format!("unknown theorem {theorem:?}; expected one of {}", THEOREMS.join(", "))));
            }
            let (inst, s) = load(&common)?;
            commands::verify(&theorem, &inst, &s)
        }
        Command::CurveInfo(c) => commands::curve_info(&load(&c)?.0),
        Command::HypothesisNilpotent(c) => commands::hypothesis_nilpotent(&load(&c)?.0),
        Command::Sections(c) => with(&c, commands::sections),
        Command::Osc(c) => with(&c, commands::osc),
        Command::Scan(c) => with(&c, commands::scan),
        Command::Witnesses(c) => with(&c, commands::witnesses),
        Command::Project(c) => with(&c, commands::project),
        Command::Segre(c) => with(&c, commands::segre),
    }
}

fn with(common: &Common, f: fn(&InstanceFile, &Settings) -> Result<Outcome>) -> Result<Outcome> {
    let (inst, s) = load(common)?;
    f(&inst, &s)
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&json!({"error": e.to_string().trim_end(), "kind": "usage"}));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Outcome { doc, fault: false }) => {
            emit(&doc);
            ExitCode::SUCCESS
        }
        Ok(Outcome { doc, fault: true }) => {
            emit(&json!({"error": "independent computations disagree", "kind": "invariant", "report": doc}));
            ExitCode::from(2)
        }
        Err(e) => {
            emit(&json!({"error": e.to_string(), "kind": e.kind()}));
            ExitCode::from(if matches!(e, Error::Invariant(_)) { 2 } else { 1 })
        }
    }
}
