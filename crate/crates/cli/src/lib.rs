//! Command implementations behind the `schedseq` binary. Each command returns
//! the text for standard output and the process exit code.

pub mod format;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use schedseq::constructor::{build_schedule_set, m_prime, select_params, BuildOptions};
use schedseq::random_schemes::{frame_length, group_cdf, CouponModel};
use schedseq::seqcore::GroupDivision;
use schedseq::simulator::{completion_histogram, simulate, Completion, OffsetMode, SimConfig, SimScheme};
use schedseq::verifier::{lower_bound, verify_set, Mode, Verdict, VerificationReport};

pub use format::{FileParams, SequenceSetFile, SET_SCHEMA};

pub const REPORT_SCHEMA: &str = "schedseq.report/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_FAILED: u8 = 2;
pub const EXIT_UNKNOWN: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("{0}")]
    Core(#[from] schedseq::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub exit: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, exit: EXIT_OK }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_set(path: &Path) -> Result<schedseq::constructor::ScheduleSequenceSet, CliError> {
    SequenceSetFile::from_json(&read_file(path)?)?.to_set()
}

pub struct GenerateArgs {
    pub nodes: usize,
    pub channels: usize,
    pub employed: Option<usize>,
    pub seed: Option<u64>,
    pub out: PathBuf,
}

pub fn generate(args: &GenerateArgs) -> Result<Output, CliError> {
    if args.channels == 0 || args.nodes < args.channels {
        return Err(CliError::Usage(format!("need K >= M >= 1, got K = {}, M = {}", args.nodes, args.channels)));
    }
    let opts = BuildOptions { employed: args.employed, selection_seed: args.seed };
    let set = build_schedule_set(args.nodes, args.channels, opts)?;
    let file = SequenceSetFile::from_set(&set);
    write_file(&args.out, &file.to_json())?;
    let w = set.employed();
    let bound = lower_bound(w, set.division().min_size(), args.channels, args.nodes);
    Ok(Output::ok(pretty(&json!({
        "schema_version": REPORT_SCHEMA,
        "K": args.nodes,
        "M": args.channels,
        "W": w,
        "L": set.period(),
        "Mprime": m_prime(args.nodes),
        "lower_bound": bound.combined,
        "out": args.out.display().to_string(),
    }))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Conservative,
    Randomized,
}

pub struct VerifyArgs {
    pub input: PathBuf,
    pub mode: VerifyMode,
    pub samples: u64,
    pub budget: u64,
    pub seed: u64,
}

pub fn report_json(report: &VerificationReport) -> Value {
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "transmitter": w.transmitter + 1,
            "receiver": w.receiver + 1,
            "offsets": w.offsets.iter().map(|&(n, o)| json!({"node": n + 1, "offset": o})).collect::<Vec<_>>(),
        })
    });
    json!({
        "schema_version": REPORT_SCHEMA,
        "verdict": format!("{:?}", report.verdict),
        "method": format!("{:?}", report.method),
        "pairs_checked": report.pairs_checked,
        "evaluations": report.evaluations,
        "witness": witness,
    })
}

pub fn verify(args: &VerifyArgs) -> Result<Output, CliError> {
    let set = load_set(&args.input)?;
    let mode = match args.mode {
        VerifyMode::Exhaustive => Mode::Exhaustive { budget: args.budget },
        VerifyMode::Conservative => Mode::Conservative,
        VerifyMode::Randomized => Mode::Randomized { samples: args.samples, seed: args.seed },
    };
    let report = verify_set(&set, mode);
    let exit = match report.verdict {
        Verdict::Proven | Verdict::ProvenConservative => EXIT_OK,
        Verdict::FailedWithWitness => EXIT_FAILED,
        Verdict::Unknown => EXIT_UNKNOWN,
    };
    Ok(Output { stdout: pretty(&report_json(&report)), exit })
}

pub struct BoundArgs {
    pub nodes: usize,
    pub channels: usize,
    pub employed: Option<usize>,
    pub ratio: bool,
}

/// Bounds under even division into W groups (W defaults to M).
pub fn bound(args: &BoundArgs) -> Result<Output, CliError> {
    let w = args.employed.unwrap_or(args.channels);
    if w == 0 || w > args.channels || w > args.nodes {
        return Err(CliError::Usage(format!("need 1 <= W <= min(M, K), got W = {w}")));
    }
    let k = args.nodes / w;
    let report = lower_bound(w, k, args.channels, args.nodes);
    let mut out = json!({
        "schema_version": REPORT_SCHEMA,
        "K": args.nodes,
        "M": args.channels,
        "W": w,
        "k": k,
        "bound_thm2": report.bound_thm2,
        "bound_thm3": report.bound_thm3,
        "combined": report.combined,
        "Mprime": m_prime(args.nodes),
    });
    if args.ratio {
        let params = select_params(args.nodes, args.channels, w, GroupDivision::even(args.nodes, w)?)?;
        if report.combined == 0 {
            return Err(CliError::Usage("lower bound is zero; ratio undefined".into()));
        }
        let ratio = params.period as f64 / report.combined as f64;
        out["L"] = json!(params.period);
        out["ratio"] = json!((ratio * 100.0).round() / 100.0);
        out["ratio_exact"] = json!(ratio);
    }
    Ok(Output::ok(pretty(&out)))
}

pub struct FramelenArgs {
    pub nodes: usize,
    pub target: f64,
    pub cdf_at: Option<u64>,
}

pub fn framelen(args: &FramelenArgs) -> Result<Output, CliError> {
    let model = CouponModel::optimal(args.nodes)?;
    let l = frame_length(&model, args.target)?;
    let cdf_at = match args.cdf_at {
        Some(slots) => json!({"l": slots, "group_cdf": group_cdf(&model, slots)?}),
        None => Value::Null,
    };
    Ok(Output::ok(pretty(&json!({
        "schema_version": REPORT_SCHEMA,
        "K": args.nodes,
        "target": args.target,
        "L_rand": l,
        "p_star": 1.0 / args.nodes as f64,
        "P_star": model.success,
        "cdf_at": cdf_at,
    }))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    AssignT,
    General,
}

pub enum SimSource {
    File(PathBuf),
    Random { nodes: usize, employed: usize, kind: RandomKind },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffsetKind {
    Uniform,
    Zero,
}

pub struct SimulateArgs {
    pub source: SimSource,
    pub runs: usize,
    pub seed: u64,
    pub max_slots: Option<u64>,
    pub offsets: OffsetKind,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
    pub bin_width: u64,
    pub cdf_at: Vec<u64>,
}

pub const CSV_HEADER: &str = "run_index,completion_time,censored";

pub fn simulate_cmd(args: &SimulateArgs) -> Result<Output, CliError> {
    let scheme = match &args.source {
        SimSource::File(path) => SimScheme::Sequence(Arc::new(load_set(path)?)),
        SimSource::Random { nodes, employed, kind: RandomKind::AssignT } => SimScheme::assign_t_optimal(*employed, *nodes)?,
        SimSource::Random { nodes, employed, kind: RandomKind::General } => SimScheme::general_optimal(*employed, *nodes)?,
    };
    let mut config = SimConfig::new(scheme, args.runs, args.seed).with_offsets(match args.offsets {
        OffsetKind::Uniform => OffsetMode::UniformRandom,
        OffsetKind::Zero => OffsetMode::AllZero,
    });
    config.max_slots = args.max_slots;
    let result = simulate(&config)?;

    if let Some(path) = &args.out {
        let mut csv = String::with_capacity(24 * args.runs + 40);
        csv.push_str(CSV_HEADER);
        csv.push('\n');
        for (i, c) in result.completion_times.iter().enumerate() {
            let _ = writeln!(csv, "{i},{},{}", c.slots(), u8::from(c.is_censored()));
        }
        write_file(path, &csv)?;
    }

    let h = completion_histogram(&result, args.bin_width);
    let pmf: Vec<Value> = h
        .bins
        .iter()
        .filter(|b| b.mass > 0.0)
        .map(|b| json!({"start": b.start, "end": b.end, "mass": b.mass, "cdf": b.cumulative}))
        .collect();
    let quantiles: Vec<Value> = h.quantiles.iter().map(|(q, t)| json!({"q": q, "slots": t})).collect();
    let cdf_at: Vec<Value> = args
        .cdf_at
        .iter()
        .map(|&l| json!({"l": l, "empirical_cdf": result.empirical_cdf(l)}))
        .collect();
    let max_completed = result
        .completion_times
        .iter()
        .filter_map(|c| match c {
            Completion::Completed(t) => Some(*t),
            Completion::Censored(_) => None,
        })
        .max();
    let summary = json!({
        "schema_version": REPORT_SCHEMA,
        "runs": args.runs,
        "seed": result.seed,
        "max_slots": result.max_slots,
        "mean_completed": h.mean_completed,
        "max_completed": max_completed,
        "censored": result.censored(),
        "censored_mass": h.censored_mass,
        "quantiles": quantiles,
        "bin_width": h.bin_width,
        "pmf": pmf,
        "cdf_at": cdf_at,
    });
    let text = pretty(&summary);
    if let Some(path) = &args.summary {
        write_file(path, &text)?;
    }
    Ok(Output::ok(text))
}
