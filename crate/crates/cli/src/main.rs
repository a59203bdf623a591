use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use strongid::generators::DEFAULT_MAX_RETRIES;
use strongid_cli::commands::{self, CodeArg, ExperimentSpec, GraphSource};
use strongid_cli::source::GeneratorSpec;
use strongid_cli::{CliError, Outcome};

/// Strong identification codes: generate graphs, verify and construct codes,
/// compute bounds, run Monte-Carlo experiments.
#[derive(Parser)]
#[command(name = "strongid", version)]
struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Check whether a vertex set is an identification code with index r.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, conflicts_with = "code_file", required_unless_present = "code_file", allow_hyphen_values = true)]
        code: Option<String>,
        /// File with vertex ids.
        #[arg(long)]
        code_file: Option<PathBuf>,
        #[arg(long)]
        r: usize,
    },
    /// Build a code with the randomized sample-and-repair construction.
    Construct {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        /// Sampling probability (default: the optimal q0 at the graph's Δ).
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        seed: u64,
    },
    /// Minimum code size by exhaustive search (small graphs only).
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Closed-form bounds on the minimum code size.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta_max: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
    },
    /// Repeat the randomized construction and summarize code sizes.
    Experiment {
        /// Edge-list file.
        #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
        graph: Option<PathBuf>,
        /// Generator spec, e.g. lemma:n=1441,y=3,seed=7
        #[arg(long)]
        gen: Option<String>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Per-trial CSV output.
        #[arg(long)]
        csv: PathBuf,
        /// Also write the summary JSON here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cycle,
    Complete,
    Path,
    Petersen,
    Gnp,
    Lemma,
    Chain,
}

#[derive(Args)]
struct GenArgs {
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    /// Strength parameter for `lemma` (target strong index y - 1).
    #[arg(long)]
    y: Option<usize>,
    /// Target strong index for `chain`.
    #[arg(long)]
    w: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    max_retries: usize,
    /// Replacement for the absolute constant in M(w) = max(C, 160(w+1)^2 + 1).
    #[arg(long)]
    c_override: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

impl GenArgs {
    fn spec(&self) -> Result<GeneratorSpec, CliError> {
        let need = |name: &str, v: Option<usize>| {
            v.ok_or_else(|| CliError::input("MissingArgument", format!("--{name} is required for this generator")))
        };
        let seed = || {
            self.seed
                .ok_or_else(|| CliError::input("MissingArgument", "--seed is required for randomized generators"))
        };
        Ok(match self.kind {
            Kind::Cycle => GeneratorSpec::Cycle { n: need("n", self.n)? },
            Kind::Complete => GeneratorSpec::Complete { n: need("n", self.n)? },
            Kind::Path => GeneratorSpec::Path { n: need("n", self.n)? },
            Kind::Petersen => GeneratorSpec::Petersen,
            Kind::Gnp => GeneratorSpec::Gnp {
                n: need("n", self.n)?,
                p: self.p.ok_or_else(|| CliError::input("MissingArgument", "--p is required for gnp"))?,
                seed: seed()?,
            },
            Kind::Lemma => GeneratorSpec::Lemma {
                n: need("n", self.n)?,
                y: need("y", self.y)?,
                seed: seed()?,
                max_retries: self.max_retries,
            },
            Kind::Chain => GeneratorSpec::Chain {
                n: need("n", self.n)?,
                w: need("w", self.w)?,
                seed: seed()?,
                max_retries: self.max_retries,
                c_override: self.c_override,
            },
        })
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let threads = cli.threads;
    commands::with_threads(threads, move || match cli.command {
        Command::Gen(args) => commands::gen(&args.spec()?, &args.out),
        Command::Verify { graph, code, code_file, r } => {
            let arg = match (code, code_file) {
                (_, Some(p)) => CodeArg::File(p),
                (Some(s), None) => CodeArg::Inline(s),
                (None, None) => unreachable!("clap requires one of them"),
            };
            commands::verify(&graph, &arg, r)
        }
        Command::Construct { graph, r, d, q, seed } => commands::construct(&graph, r, d, q, seed),
        Command::Exact { graph, r } => commands::exact(&graph, r, commands::exact_cap_from_env()?),
        Command::Bounds { n, delta_max, r, d } => commands::bounds(n, delta_max, r, d),
        Command::Experiment { graph, gen, r, d, q, trials, seed, csv, summary } => {
            let source = match (graph, gen) {
                (Some(p), _) => GraphSource::File(p),
                (None, Some(s)) => GraphSource::Generator(s.parse()?),
                (None, None) => unreachable!("clap requires one of them"),
            };
            commands::experiment(&ExperimentSpec { source, r, d, q, trials, master_seed: seed, csv, summary })
        }
    })?
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
