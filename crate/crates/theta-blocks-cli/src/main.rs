mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Disagreement;

/// Conformal-block dimensions and Fock-space block evaluation
/// for affine so(2r+1).
#[derive(Parser)]
#[command(name = "theta-blocks", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Emit a JSON report instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,

    /// Directory holding cached fusion tables.
    #[arg(long, global = true, default_value = ".theta-blocks-cache")]
    pub cache_dir: PathBuf,

    /// Working precision of the trigonometric engine, in bits.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Trig,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Fusion multiplicity N(λ, μ, ν) at one level.
    Fusion {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        level: u32,
        /// Three weights separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
    },
    /// Dimension of the space of conformal blocks at genus g.
    Dim {
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        level: u32,
        /// Weights separated by ';' (may be empty).
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        weights: String,
        #[arg(long, value_enum, default_value = "exact")]
        method: Method,
    },
    /// Branching pairs of a level-one weight for so(2r+1)+so(2s+1).
    Branch {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long = "Lambda")]
        lambda: String,
    },
    /// Sewing exponent of one branching triple.
    Sewing {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// λ and μ separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long = "Lambda")]
        lambda: String,
    },
    /// Both sides of the level-rank identity for the untwisted count N⁰_g.
    Oxbury {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Source, target and level-one dimensions of a rank-level map.
    Ranklevel {
        /// One of the three worked examples.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        example: Option<u8>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        /// so(2r+1) weights separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// so(2s+1) weights separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        mus: Option<String>,
        /// Level-one weights separated by ';' (w0, w1, wd).
        #[arg(long = "Lambda")]
        lambda: Option<String>,
    },
    /// The 2×2 matrix of three-point blocks for a σ-fixed orbit.
    RanklevelMatrix {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// Young diagram with first row s−1, e.g. "[1]".
        #[arg(long)]
        diagram: String,
    },
    /// Evaluate a three-point block on Fock-space slot expressions.
    CliffordEval {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// Psi or PsiTilde.
        #[arg(long, default_value = "Psi")]
        form: String,
        /// NS slot expression.
        #[arg(long, allow_hyphen_values = true)]
        slot1: String,
        /// Ramond slot expression.
        #[arg(long, allow_hyphen_values = true)]
        slot2: String,
        /// Opposite Ramond slot expression.
        #[arg(long, allow_hyphen_values = true)]
        slot3: String,
        /// Marked points of the three slots, e.g. "0,1,inf".
        #[arg(long, default_value = "0,1,inf")]
        points: String,
    },
    /// Numbers of theta characteristics at genus g.
    ThetaCounts {
        #[arg(long)]
        genus: u32,
    },
    /// Run the golden suite of reference numbers.
    ExamplesCheck,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Disagreement>().is_some() {
        return 2;
    }
    match err.downcast_ref::<theta_blocks::Error>() {
        Some(theta_blocks::Error::Unreducible(_)) => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<report::Report> {
    let g = &cli.global;
    match cli.command {
        Command::Fusion {
            rank,
            level,
            weights,
            method,
        } => commands::fusion(g, rank, level, &weights, method),
        Command::Dim {
            genus,
            rank,
            level,
            weights,
            method,
        } => commands::dim(g, genus, rank, level, &weights, method),
        Command::Branch { r, s, lambda } => commands::branch(r, s, &lambda),
        Command::Sewing { r, s, weights, lambda } => commands::sewing(r, s, &weights, &lambda),
        Command::Oxbury { genus, r, s } => commands::oxbury(g, genus, r, s),
        Command::Ranklevel {
            example,
            r,
            s,
            weights,
            mus,
            lambda,
        } => commands::ranklevel(g, example, r, s, weights.as_deref(), mus.as_deref(), lambda.as_deref()),
        Command::RanklevelMatrix { r, s, diagram } => commands::ranklevel_matrix(r, s, &diagram),
        Command::CliffordEval {
            r,
            s,
            form,
            slot1,
            slot2,
            slot3,
            points,
        } => commands::clifford_eval(r, s, &form, [&slot1, &slot2, &slot3], &points),
        Command::ThetaCounts { genus } => Ok(commands::theta_counts(genus)),
        Command::ExamplesCheck => commands::examples_check(g),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json = cli.global.json;
    match run(cli) {
        Ok(report) => {
            print!("{}", if json { report.to_json() } else { report.to_text() });
            let failed = report.outputs.get("failed").and_then(|v| v.as_u64()).unwrap_or(0);
            ExitCode::from(if failed > 0 { 2 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
