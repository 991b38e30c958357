use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Debug, Parser)]
#[command(
    name = "f33",
    version,
    about = "Exact computations for the Turán problem of F(3,3)"
)]
struct Cli {
    /// Worker threads for the solvers (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named 3-graph or multigraph.
    Construct(ConstructArgs),
    /// Check a 3-graph for a forbidden configuration.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Coloured link multigraph of a vertex set.
    Link {
        #[arg(long)]
        input: std::path::PathBuf,
        /// Comma-separated apex vertices, e.g. `0,1,2,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        /// Number of shared colours required of a triangle.
        #[arg(long, default_value_t = 3)]
        colors: usize,
        /// Multiplicity threshold for the high-multiplicity graph.
        #[arg(long, default_value_t = 3)]
        threshold: u32,
    },
    /// Maximise e(M) over capped multigraphs on n vertices.
    LemmaMax {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        pair_cap: u32,
        #[arg(long, default_value_t = 10)]
        triple_cap: u32,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Disable isomorph rejection.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Sample random feasible multigraphs and compare against m(n).
    LemmaSample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Exact ex(n, F(3,3)) by minimum hitting set.
    Turan {
        #[arg(long)]
        n: usize,
        /// Also list every extremal graph up to isomorphism (n <= 7).
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Check the counting identities for all n up to a bound.
    Identities {
        #[arg(long, value_parser = clap::value_parser!(u32).range(5..))]
        max_n: u32,
    },
    /// Look for a t-triple.
    TTriple {
        #[arg(long)]
        input: std::path::PathBuf,
    },
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    object: ObjectKind,
    #[arg(long)]
    n: Option<usize>,
    /// Print only the edge-list / multigraph text.
    #[arg(long)]
    raw: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ObjectKind {
    F33,
    Bipartite,
    Complete,
    M1,
    M2,
    M3,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckKind {
    F33Free,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1);
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();

    let start = Instant::now();
    let outcome = match cli.command {
        Command::Construct(a) => {
            if a.raw {
                return match commands::construct_text(a.object.into(), a.n) {
                    Ok(text) => {
                        print!("{text}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => usage(e),
                };
            }
            commands::construct(a.object.into(), a.n)
        }
        Command::Check {
            what: CheckKind::F33Free,
            input,
        } => commands::check_f33_free(&input),
        Command::Link {
            input,
            set,
            colors,
            threshold,
        } => commands::link(&input, &set, colors, threshold),
        Command::LemmaMax {
            n,
            pair_cap,
            triple_cap,
            node_limit,
            no_symmetry,
        } => commands::lemma_max(n, pair_cap, triple_cap, node_limit, !no_symmetry, threads),
        Command::LemmaSample { n, trials, seed } => commands::lemma_sample(n, trials, seed),
        Command::Turan {
            n,
            enumerate,
            node_limit,
        } => commands::turan(n, enumerate, node_limit, threads),
        Command::Identities { max_n } => commands::identities(max_n),
        Command::TTriple { input } => commands::t_triple(&input),
    };

    match outcome {
        Ok(mut result) => {
            result.elapsed_ms = start.elapsed().as_millis();
            println!(
                "{}",
                serde_json::to_string(&result).expect("payloads serialise")
            );
            eprintln!(
                "{}: {} ({} ms)",
                result.command,
                result.status.as_str(),
                result.elapsed_ms
            );
            ExitCode::from(result.status.exit_code())
        }
        Err(e) => usage(e),
    }
}

fn usage(e: anyhow::Error) -> ExitCode {
    eprintln!("error: {e:#}");
    ExitCode::from(2)
}

impl From<ObjectKind> for commands::Object {
    fn from(k: ObjectKind) -> Self {
        match k {
            ObjectKind::F33 => commands::Object::F33,
            ObjectKind::Bipartite => commands::Object::Bipartite,
            ObjectKind::Complete => commands::Object::Complete,
            ObjectKind::M1 => commands::Object::M1,
            ObjectKind::M2 => commands::Object::M2,
            ObjectKind::M3 => commands::Object::M3,
        }
    }
}
