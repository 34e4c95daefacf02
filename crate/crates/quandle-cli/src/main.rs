use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quandle_cli::{
    cmd_freeq_embed, cmd_freeq_normalize, cmd_freeq_op, cmd_freeq_separate, cmd_inn,
    cmd_knot_colorings, cmd_knot_distinguish, cmd_make, cmd_present_decide, cmd_present_homs,
    cmd_verify, load_diagram, CliError, CmdOutput,
};

/// Quandle toolkit: verified operation tables, group constructions, free
/// quandles, presented quandles, and knot coloring invariants.
#[derive(Parser)]
#[command(name = "quandle", version)]
struct Cli {
    /// Worker threads for homomorphism searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a quandle table file against the three axioms.
    Verify { file: PathBuf },
    /// Build a quandle from a spec and write its canonical table file.
    Make { spec: String, out: PathBuf },
    /// Print the inner automorphism group of a quandle.
    Inn { spec: String },
    /// Free-quandle elements: normal forms, operations, embedding, separation.
    #[command(subcommand)]
    Freeq(FreeqCommand),
    /// Presented quandles: homomorphism lists and the word problem.
    #[command(subcommand)]
    Present(PresentCommand),
    /// Knot diagrams: coloring invariants and distinguishing knots.
    #[command(subcommand)]
    Knot(KnotCommand),
}

#[derive(Subcommand)]
enum FreeqCommand {
    /// Normal form of an element, e.g. `a ^ a b` prints `a ^ b`.
    Normalize { element: String },
    /// Quandle operation of two elements; `--inverse` applies `*^-1`.
    Op {
        left: String,
        right: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Embed an element into the free group: `a ^ w` prints `w^-1 a w`.
    Embed { element: String },
    /// Separate two distinct elements inside a finite symmetric group.
    Separate { left: String, right: String },
}

#[derive(Subcommand)]
enum PresentCommand {
    /// List all homomorphisms of a presented quandle into a finite quandle.
    Homs {
        presentation: PathBuf,
        quandle: String,
    },
    /// Semi-decide whether two terms are equal in the presented quandle.
    Decide {
        presentation: PathBuf,
        left: String,
        right: String,
        /// Rewrite-expansion budget for the closure procedure.
        #[arg(long, default_value_t = 1024)]
        budget: usize,
        /// Comma-separated quandle specs for the coloring procedure.
        #[arg(long, default_value = "")]
        library: String,
    },
}

#[derive(Subcommand)]
enum KnotCommand {
    /// Count colorings of a knot diagram by a finite quandle.
    Colorings {
        #[arg(long)]
        braid: Option<String>,
        #[arg(long)]
        crossings: Option<PathBuf>,
        #[arg(long)]
        quandle: String,
    },
    /// Find the first library quandle whose coloring counts differ.
    Distinguish {
        #[arg(long)]
        braid_a: Option<String>,
        #[arg(long)]
        crossings_a: Option<PathBuf>,
        #[arg(long)]
        braid_b: Option<String>,
        #[arg(long)]
        crossings_b: Option<PathBuf>,
        /// Comma-separated quandle specs to try in order.
        #[arg(long)]
        library: String,
    },
}

fn run(cli: Cli) -> Result<CmdOutput, CliError> {
    let threads = cli.threads;
    match cli.command {
        Command::Verify { file } => cmd_verify(&file),
        Command::Make { spec, out } => cmd_make(&spec, &out),
        Command::Inn { spec } => cmd_inn(&spec),
        Command::Freeq(freeq) => match freeq {
            FreeqCommand::Normalize { element } => cmd_freeq_normalize(&element),
            FreeqCommand::Op {
                left,
                right,
                inverse,
            } => cmd_freeq_op(&left, &right, inverse),
            FreeqCommand::Embed { element } => cmd_freeq_embed(&element),
            FreeqCommand::Separate { left, right } => cmd_freeq_separate(&left, &right),
        },
        Command::Present(present) => match present {
            PresentCommand::Homs {
                presentation,
                quandle,
            } => cmd_present_homs(&presentation, &quandle, threads),
            PresentCommand::Decide {
                presentation,
                left,
                right,
                budget,
                library,
            } => cmd_present_decide(&presentation, &left, &right, budget, &library),
        },
        Command::Knot(knot) => match knot {
            KnotCommand::Colorings {
                braid,
                crossings,
                quandle,
            } => {
                let diagram = load_diagram(braid.as_deref(), crossings.as_deref())?;
                cmd_knot_colorings(&diagram, &quandle, threads)
            }
            KnotCommand::Distinguish {
                braid_a,
                crossings_a,
                braid_b,
                crossings_b,
                library,
            } => {
                let left = load_diagram(braid_a.as_deref(), crossings_a.as_deref())?;
                let right = load_diagram(braid_b.as_deref(), crossings_b.as_deref())?;
                cmd_knot_distinguish(&left, &right, &library)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.code as u8)
        }
        Err(error) => {
            eprintln!("{error}");
            ExitCode::from(error.code as u8)
        }
    }
}
