//! `morseres`: pruned Morse resolutions of monomial ideals from the command line.
//!
//! Exit codes: 0 success, 1 a requested verdict failed (`--expect-minimal`,
//! or any failed `verify` check), 2 usage or input error, 3 capacity exceeded.

mod commands;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morse_res::{Error, Limits, MonomialIdeal};

#[derive(Parser, Debug)]
#[command(name = "morseres", version, about = "Pruned Morse resolutions of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Field characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0, global = true)]
    characteristic: u64,

    /// Worker threads for the Betti oracle (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Exit with status 1 when the result is not minimal (or no order is found).
    #[arg(long, global = true)]
    expect_minimal: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Ideal file (one generator per line or comma separated, `#` comments;
    /// or JSON `{"n": .., "gens": [[..], ..]}`); `-` reads standard input.
    input: Option<PathBuf>,

    /// Generators given inline, e.g. "x1*x2, x2*x3".
    #[arg(long, conflicts_with = "input")]
    ideal: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers from the oracle.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Koszul)]
        method: Method,
    },
    /// Prune the Taylor complex, build the Morse complex, decide minimality.
    Prune {
        #[command(flatten)]
        input: Input,
        /// Sweep order as a 1-based permutation, e.g. "3,1,2".
        #[arg(long)]
        order: Option<String>,
        /// Write the graded Hasse diagram and the matching as JSON.
        #[arg(long, value_name = "PATH")]
        dump_graph: Option<PathBuf>,
    },
    /// Prune the complex 𝕃^r_q supporting a resolution of I^r.
    Power {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u64,
        #[arg(long, default_value = "lex")]
        vertex_order: String,
    },
    /// Split pruning along a plan.
    Split {
        #[command(flatten)]
        input: Input,
        /// Plan file (nested JSON, 1-based).
        #[arg(long, conflicts_with = "auto", required_unless_present = "auto")]
        plan: Option<PathBuf>,
        /// Build the plan automatically: cert, maxvar or edge.
        #[arg(long)]
        auto: Option<String>,
        /// Skip the combined matching on the Taylor complex.
        #[arg(long)]
        no_realize: bool,
    },
    /// Stable, strongly stable, lexsegment, linear quotients, vertex
    /// splittable and componentwise linear tests.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Search for a generator order with a minimal pruned resolution.
    MinimalOrder {
        #[command(flatten)]
        input: Input,
        /// Orders tried beyond the exhaustive range.
        #[arg(long, default_value_t = 5000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Try all orders when there are at most this many generators.
        #[arg(long, default_value_t = 8)]
        exhaustive_up_to: usize,
    },
    /// Self-checks on one ideal: matching, ∂² = 0, pruned counts ≥ Betti
    /// numbers, Euler characteristics, strand homology.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        order: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Koszul,
    Taylor,
}

/// A command's result: the same data as JSON and as text, plus the verdict
/// that decides the exit status.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    /// `Some(false)` makes the run exit with status 1 when `--expect-minimal`
    /// (or `always_check`) applies.
    pub verdict: Option<bool>,
    pub always_check: bool,
}

fn read_ideal(input: &Input) -> Result<MonomialIdeal, Error> {
    let raw = match (&input.ideal, &input.input) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("reading standard input: {e}")))?;
            s
        }
        (None, Some(p)) => std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(Error::Parse("no ideal given (pass a file or --ideal)".into())),
    };
    if raw.trim_start().starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(&raw).map_err(|e| Error::Parse(e.to_string()))?;
        MonomialIdeal::from_json(&v)
    } else {
        raw.parse()
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    morse_res::betti::check_characteristic(cli.characteristic)?;
    let limits = Limits::from_env()?;
    let p = cli.characteristic;
    match &cli.command {
        Command::Betti { input, method } => commands::betti(&read_ideal(input)?, p, *method, &limits),
        Command::Prune {
            input,
            order,
            dump_graph,
        } => commands::prune(&read_ideal(input)?, p, order.as_deref(), dump_graph.as_deref(), &limits),
        Command::Power {
            input,
            r,
            vertex_order,
        } => commands::power(&read_ideal(input)?, p, *r, &vertex_order.parse()?, &limits),
        Command::Split {
            input,
            plan,
            auto,
            no_realize,
        } => {
            let ideal = read_ideal(input)?;
            let source = match (plan, auto) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    let v: serde_json::Value =
                        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                    commands::PlanSource::File(morse_res::SplitPlan::from_json(&v)?)
                }
                (None, Some(s)) => commands::PlanSource::Auto(s.parse()?),
                (None, None) => return Err(Error::Parse("pass --plan or --auto".into())),
            };
            commands::split(&ideal, p, source, !no_realize, &limits)
        }
        Command::Classify { input } => commands::classify(&read_ideal(input)?, p, &limits),
        Command::MinimalOrder {
            input,
            budget,
            seed,
            exhaustive_up_to,
        } => {
            let budget = morse_res::SearchBudget {
                exhaustive_up_to: *exhaustive_up_to,
                max_orders: *budget,
                seed: *seed,
            };
            commands::minimal_order(&read_ideal(input)?, p, &budget, &limits)
        }
        Command::Verify { input, order } => {
            commands::verify(&read_ideal(input)?, p, order.as_deref(), &limits)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    let mut v = report.json;
                    if let serde_json::Value::Object(m) = &mut v {
                        m.insert("schema_version".into(), serde_json::json!(1));
                    }
                    serde_json::to_string_pretty(&v).expect("plain data") + "\n"
                }
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            let checked = cli.expect_minimal || report.always_check;
            if checked && report.verdict == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
