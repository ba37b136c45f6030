use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schedseq::verifier::DEFAULT_BUDGET;
use schedseq_cli::{
    bound, framelen, generate, simulate_cmd, verify, BoundArgs, CliError, FramelenArgs, GenerateArgs, OffsetKind,
    Output, RandomKind, SimSource, SimulateArgs, VerifyArgs, VerifyMode, EXIT_ERROR,
};

/// Schedule sequences for asynchronous all-to-all broadcast over multiple
/// collision channels.
#[derive(Parser)]
#[command(name = "schedseq", version)]
struct Cli {
    /// Worker threads for verification and simulation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a schedule sequence set and write it as JSON.
    Generate(GenerateCli),
    /// Check that every ordered pair always gets a collision-free delivery.
    Verify(VerifyCli),
    /// Lower bounds on the period under even division.
    Bound(BoundCli),
    /// Random-access frame length from the coupon-collector model.
    Framelen(FramelenCli),
    /// Monte-Carlo broadcast completion times.
    Simulate(SimulateCli),
}

#[derive(Args)]
struct GenerateCli {
    #[arg(long = "K")]
    k: usize,
    #[arg(long = "M")]
    m: usize,
    /// Force the number of employed channels instead of minimising L.
    #[arg(long = "W")]
    w: Option<usize>,
    /// Shuffle which per-group sequences the nodes receive.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Conservative,
    Randomized,
}

#[derive(Args)]
struct VerifyCli {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Offset vectors drawn in randomized mode.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Search-node budget per pair in exhaustive mode.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct BoundCli {
    #[arg(long = "K")]
    k: usize,
    #[arg(long = "M")]
    m: usize,
    /// Number of groups; defaults to M.
    #[arg(long = "W")]
    w: Option<usize>,
    /// Also construct the set and report L divided by the bound.
    #[arg(long)]
    ratio: bool,
}

#[derive(Args)]
struct FramelenCli {
    #[arg(long = "K")]
    k: usize,
    #[arg(long, default_value_t = 0.99999)]
    target: f64,
    /// Also report the group completion probability within this many slots.
    #[arg(long = "cdf-at")]
    cdf_at: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomArg {
    AssignT,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum OffsetArg {
    Uniform,
    Zero,
}

#[derive(Args)]
struct SimulateCli {
    /// Sequence set file to simulate.
    #[arg(long = "in", conflicts_with = "random", required_unless_present = "random")]
    input: Option<PathBuf>,
    /// Simulate a random-access scheme instead of a sequence set.
    #[arg(long, requires = "k")]
    random: bool,
    #[arg(long = "K")]
    k: Option<usize>,
    #[arg(long = "W", default_value_t = 1)]
    w: usize,
    #[arg(long, value_enum, default_value = "assign-t")]
    scheme: RandomArg,
    #[arg(long, default_value_t = 10_000)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Slot cap per run (default: 20 periods or 20 random frame lengths).
    #[arg(long = "max-slots")]
    max_slots: Option<u64>,
    /// Per-node start offsets for sequence runs.
    #[arg(long, value_enum, default_value = "uniform")]
    offsets: OffsetArg,
    /// Per-run CSV output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the JSON summary here.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long = "bin-width", default_value_t = 10)]
    bin_width: u64,
    /// Report the empirical completion probability within these slot counts.
    #[arg(long = "cdf-at", value_delimiter = ',')]
    cdf_at: Vec<u64>,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))?;
    }
    match cli.command {
        Command::Generate(a) => generate(&GenerateArgs { nodes: a.k, channels: a.m, employed: a.w, seed: a.seed, out: a.out }),
        Command::Verify(a) => verify(&VerifyArgs {
            input: a.input,
            mode: match a.mode {
                ModeArg::Exhaustive => VerifyMode::Exhaustive,
                ModeArg::Conservative => VerifyMode::Conservative,
                ModeArg::Randomized => VerifyMode::Randomized,
            },
            samples: a.samples,
            budget: a.budget,
            seed: a.seed,
        }),
        Command::Bound(a) => bound(&BoundArgs { nodes: a.k, channels: a.m, employed: a.w, ratio: a.ratio }),
        Command::Framelen(a) => framelen(&FramelenArgs { nodes: a.k, target: a.target, cdf_at: a.cdf_at }),
        Command::Simulate(a) => {
            let source = match (a.input, a.k) {
                (Some(path), _) => SimSource::File(path),
                (None, Some(nodes)) => SimSource::Random {
                    nodes,
                    employed: a.w,
                    kind: match a.scheme {
                        RandomArg::AssignT => RandomKind::AssignT,
                        RandomArg::General => RandomKind::General,
                    },
                },
                (None, None) => return Err(CliError::Usage("--random needs --K".into())),
            };
            simulate_cmd(&SimulateArgs {
                source,
                runs: a.runs,
                seed: a.seed,
                max_slots: a.max_slots,
                offsets: match a.offsets {
                    OffsetArg::Uniform => OffsetKind::Uniform,
                    OffsetArg::Zero => OffsetKind::Zero,
                },
                out: a.out,
                summary: a.summary,
                bin_width: a.bin_width,
                cdf_at: a.cdf_at,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
