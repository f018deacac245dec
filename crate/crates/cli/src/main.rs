//! Command-line front end for the enumeration and verification engine.
//!
//! Five subcommands cover the crate's surface: `numbers` tabulates the
//! integer and q-polynomial sequences, `enumerate` lists combinatorial
//! objects, `trace` applies one involution step to a single object and
//! shows the decision that was made, `verify` checks identities, and
//! `audit` stress-tests an involution family over its whole population
//! or a seeded sample.
//!
//! Exit status: 0 when every requested check passed, 1 when some
//! verification or audit failed, 2 on usage errors (including refusals
//! to verify an identity outside its supported range).

use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zigzag_core::compositions::{count_odd_set_compositions, odd_set_compositions};
use zigzag_core::harness::{
    audit, render_audit_reports, render_identity_reports, verify, AuditMode, Family, IdentityId,
    ReportFormat,
};
use zigzag_core::kappa::{kappa_traced, KappaTrace};
use zigzag_core::numbers;
use zigzag_core::pairs::{
    cp_pairs, f_map, g_map, h_map, ip_pairs, is_cp_pair, is_ip_pair, is_up_pair, up_pairs,
    PairBranch,
};
use zigzag_core::trees::{count_labeled_trees, labeled_trees};
use zigzag_core::{LabeledTree, PermutationPair};

#[derive(Parser)]
#[command(
    name = "zigzag",
    version,
    about = "Exact enumeration and verification of signed tree and permutation identities"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Number of worker threads for parallel audits (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Record wall time per verification in the reports.
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Text => ReportFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqArg {
    /// T(2n+1): alternating permutations of odd length.
    Tangent,
    /// S(2n): alternating permutations of even length.
    Secant,
    /// T(2n+1; q): tangent numbers refined by inversions.
    QTangent,
    /// S(2n; q): secant numbers refined by inversions.
    QSecant,
    /// S(2n; q) shifted by inversions plus odd-position descents, with
    /// the n = 0 value q^-1.
    QSecantOdd,
    /// Convolution of two odd-length q-tangent numbers.
    TildeT,
    /// Alternating binomial sum of shifted q-secant numbers.
    HatT,
    /// C(n): Catalan numbers.
    Catalan,
}

impl SeqArg {
    fn name(self) -> &'static str {
        match self {
            SeqArg::Tangent => "tangent",
            SeqArg::Secant => "secant",
            SeqArg::QTangent => "q-tangent",
            SeqArg::QSecant => "q-secant",
            SeqArg::QSecantOdd => "q-secant-odd",
            SeqArg::TildeT => "tilde-t",
            SeqArg::HatT => "hat-t",
            SeqArg::Catalan => "catalan",
        }
    }

    fn value(self, n: usize) -> String {
        match self {
            SeqArg::Tangent => numbers::tangent_int(n).to_string(),
            SeqArg::Secant => numbers::secant_int(n).to_string(),
            SeqArg::QTangent => numbers::q_tangent(n).to_string(),
            SeqArg::QSecant => numbers::q_secant(n).to_string(),
            SeqArg::QSecantOdd => numbers::q_secant_odd(n).to_string(),
            SeqArg::TildeT => numbers::tilde_t(n).to_string(),
            SeqArg::HatT => numbers::hat_t(n).to_string(),
            SeqArg::Catalan => numbers::catalan(n).to_string(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectArg {
    /// Labeled complete binary trees on {1..2n+1}.
    Trees,
    /// Ordered set compositions of {1..2n+1} into odd blocks.
    OddSetCompositions,
    /// Pairs (increasing, up-down) partitioning {1..2n+1}.
    IpPairs,
    /// Pairs (unimodal odd, down-up odd) partitioning {1..2n+2}.
    UpPairs,
    /// Pairs (up-down even, compressed) partitioning {1..2n}.
    CpPairs,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceObject {
    /// A labeled tree, moved by the tree involution.
    Tree,
    /// A permutation pair, moved by one of the pair involutions.
    Pair,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairFamilyArg {
    /// Involution on (increasing, up-down) pairs.
    F,
    /// Involution on (unimodal, down-up) pairs.
    G,
    /// Involution on (up-down, compressed) pairs.
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Kappa,
    F,
    G,
    H,
}

impl From<FamilyArg> for Family {
    fn from(value: FamilyArg) -> Self {
        match value {
            FamilyArg::Kappa => Family::Kappa,
            FamilyArg::F => Family::F,
            FamilyArg::G => Family::G,
            FamilyArg::H => Family::H,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a sequence for n = 0..=N.
    Numbers {
        /// Which sequence to print.
        #[arg(long, value_enum)]
        seq: SeqArg,
        /// Largest index to print.
        #[arg(long)]
        n: usize,
    },
    /// List the objects of one combinatorial family at a given size.
    Enumerate {
        /// Which family to list.
        #[arg(long, value_enum)]
        object: ObjectArg,
        /// Size parameter (ground set as documented per object).
        #[arg(long)]
        n: usize,
        /// Print only the number of objects.
        #[arg(long)]
        count_only: bool,
    },
    /// Apply one involution step to a single object read as JSON.
    Trace {
        /// What kind of object the input is.
        #[arg(long, value_enum)]
        object: TraceObject,
        /// Which pair involution to apply (required for --object pair).
        #[arg(long, value_enum)]
        family: Option<PairFamilyArg>,
        /// Read the object from this file instead of stdin.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Check identities, printing both sides of each instance.
    Verify {
        /// Identity name, or "all".
        #[arg(long)]
        identity: String,
        /// Check a single instance instead of a range.
        #[arg(long)]
        n: Option<usize>,
        /// Largest n per identity when checking ranges (clamped to each
        /// identity's supported range).
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Stress-test one involution family.
    Audit {
        /// Which involution to audit.
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Size parameter.
        #[arg(long)]
        n: usize,
        /// Check this many seeded random objects instead of all of them.
        #[arg(long)]
        sample: Option<u64>,
        /// Seed for --sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allow exhaustive runs over very large populations.
        #[arg(long)]
        deep: bool,
    },
}

/// A `numbers` table row.
#[derive(Serialize)]
struct SeqRow {
    seq: &'static str,
    n: usize,
    value: String,
}

/// A `trace` result for a tree.
#[derive(Serialize)]
struct TreeTraceOut<'a> {
    input: &'a LabeledTree,
    #[serde(flatten)]
    trace: &'a KappaTrace,
}

/// A `trace` result for a pair.
#[derive(Serialize)]
struct PairTraceOut<'a> {
    input: &'a PermutationPair,
    branch: PairBranch,
    output: &'a PermutationPair,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Execute the parsed command; `Ok(false)` means some check failed.
fn run(cli: &Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let format = ReportFormat::from(cli.format);
    let (output, passed) = match &cli.command {
        Command::Numbers { seq, n } => (render_numbers(*seq, *n, format)?, true),
        Command::Enumerate {
            object,
            n,
            count_only,
        } => (render_enumeration(*object, *n, *count_only, format)?, true),
        Command::Trace {
            object,
            family,
            input,
        } => (run_trace(*object, *family, input.as_deref(), format)?, true),
        Command::Verify { identity, n, n_max } => run_verify(identity, *n, *n_max, cli.timings, format)?,
        Command::Audit {
            family,
            n,
            sample,
            seed,
            deep,
        } => run_audit((*family).into(), *n, *sample, *seed, *deep, format)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, output).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{output}"),
    }
    Ok(passed)
}

fn render_numbers(seq: SeqArg, n_max: usize, format: ReportFormat) -> Result<String> {
    let rows: Vec<SeqRow> = (0..=n_max)
        .map(|n| SeqRow {
            seq: seq.name(),
            n,
            value: seq.value(n),
        })
        .collect();
    let mut out = String::new();
    match format {
        ReportFormat::Json => {
            out = serde_json::to_string_pretty(&rows)?;
            out.push('\n');
        }
        ReportFormat::Csv => {
            out.push_str("seq,n,value\n");
            for row in &rows {
                let _ = writeln!(out, "{},{},\"{}\"", row.seq, row.n, row.value.replace('"', "\"\""));
            }
        }
        ReportFormat::Text => {
            for row in &rows {
                let _ = writeln!(out, "{} n={}: {}", row.seq, row.n, row.value);
            }
        }
    }
    Ok(out)
}

fn render_enumeration(
    object: ObjectArg,
    n: usize,
    count_only: bool,
    format: ReportFormat,
) -> Result<String> {
    if count_only {
        let count = match object {
            ObjectArg::Trees => count_labeled_trees(n).to_string(),
            ObjectArg::OddSetCompositions => {
                let m = 2 * n + 1;
                (1..=m)
                    .step_by(2)
                    .map(|k| count_odd_set_compositions(m, k))
                    .reduce(|a, b| a + b)
                    .expect("at least one block count")
                    .to_string()
            }
            ObjectArg::IpPairs => ip_pairs(n).len().to_string(),
            ObjectArg::UpPairs => up_pairs(n).len().to_string(),
            ObjectArg::CpPairs => cp_pairs(n).len().to_string(),
        };
        return Ok(format!("{count}\n"));
    }
    if format == ReportFormat::Csv {
        bail!("enumerate does not support csv output; use --format json or text");
    }
    let json = format == ReportFormat::Json;
    let mut out = String::new();
    let mut push = |line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    match object {
        ObjectArg::Trees => {
            for tree in labeled_trees(n) {
                push(if json {
                    serde_json::to_string(&tree)?
                } else {
                    tree.to_string()
                });
            }
        }
        ObjectArg::OddSetCompositions => {
            let m = 2 * n + 1;
            for k in (1..=m).step_by(2) {
                for comp in odd_set_compositions(m, k) {
                    push(if json {
                        serde_json::to_string(&comp)?
                    } else {
                        comp.to_string()
                    });
                }
            }
        }
        ObjectArg::IpPairs | ObjectArg::UpPairs | ObjectArg::CpPairs => {
            let pairs = match object {
                ObjectArg::IpPairs => ip_pairs(n),
                ObjectArg::UpPairs => up_pairs(n),
                _ => cp_pairs(n),
            };
            for pair in &pairs {
                push(if json {
                    serde_json::to_string(pair)?
                } else {
                    pair.to_string()
                });
            }
        }
    }
    Ok(out)
}

fn read_input(path: Option<&std::path::Path>) -> Result<String> {
    match path {
        Some(path) => {
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
        }
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading stdin")?;
            Ok(buf)
        }
    }
}

fn run_trace(
    object: TraceObject,
    family: Option<PairFamilyArg>,
    input: Option<&std::path::Path>,
    format: ReportFormat,
) -> Result<String> {
    if format == ReportFormat::Csv {
        bail!("trace does not support csv output; use --format json or text");
    }
    let text = read_input(input)?;
    match object {
        TraceObject::Tree => {
            let tree: LabeledTree = serde_json::from_str(&text).context("parsing the tree")?;
            let ground = tree.word().len() as u32;
            tree.validate(ground)
                .map_err(|e| anyhow!("invalid tree: {e}"))?;
            let trace = kappa_traced(&tree);
            if format == ReportFormat::Json {
                let mut out = serde_json::to_string_pretty(&TreeTraceOut {
                    input: &tree,
                    trace: &trace,
                })?;
                out.push('\n');
                return Ok(out);
            }
            let mut out = String::new();
            let _ = writeln!(out, "input:  {tree}");
            let _ = writeln!(out, "case:   {}", trace.case);
            if let Some(index) = trace.active_index {
                let _ = writeln!(out, "active: position {index} in the word");
            }
            if let (Some(l), Some(r)) = (trace.ind_left, trace.ind_right) {
                let _ = writeln!(out, "indicators: left {l}, right {r}");
            }
            let _ = writeln!(out, "output: {}", trace.output);
            Ok(out)
        }
        TraceObject::Pair => {
            let family = family
                .ok_or_else(|| anyhow!("--object pair needs --family f, g, or h"))?;
            let pair: PermutationPair =
                serde_json::from_str(&text).context("parsing the pair")?;
            let (apply, member, domain): (
                fn(&PermutationPair) -> (PermutationPair, PairBranch),
                fn(&PermutationPair) -> bool,
                &str,
            ) = match family {
                PairFamilyArg::F => (f_map, is_ip_pair, "(increasing, up-down)"),
                PairFamilyArg::G => (g_map, is_up_pair, "(unimodal odd, down-up odd)"),
                PairFamilyArg::H => (h_map, is_cp_pair, "(up-down even, compressed)"),
            };
            if !member(&pair) {
                bail!("{pair} is not an {domain} pair");
            }
            let (output, branch) = apply(&pair);
            if format == ReportFormat::Json {
                let mut out = serde_json::to_string_pretty(&PairTraceOut {
                    input: &pair,
                    branch,
                    output: &output,
                })?;
                out.push('\n');
                return Ok(out);
            }
            let mut out = String::new();
            let _ = writeln!(out, "input:  {pair}");
            let _ = writeln!(out, "branch: {branch}");
            let _ = writeln!(out, "output: {output}");
            Ok(out)
        }
    }
}

fn run_verify(
    identity: &str,
    n: Option<usize>,
    n_max: usize,
    timings: bool,
    format: ReportFormat,
) -> Result<(String, bool)> {
    let identities: Vec<IdentityId> = if identity == "all" {
        IdentityId::ALL.to_vec()
    } else {
        vec![IdentityId::from_str(identity).map_err(|e| anyhow!(e))?]
    };
    let mut reports = Vec::new();
    for id in identities {
        let range = match n {
            Some(n) => n..=n,
            None => {
                let top = n_max.min(id.max_n());
                if top < id.min_n() {
                    match verify(id, top) {
                        Err(err) => eprintln!("note: skipped — {err}"),
                        Ok(_) => unreachable!("verify accepts n below min_n"),
                    }
                    continue;
                }
                id.min_n()..=top
            }
        };
        for i in range {
            let started = Instant::now();
            match verify(id, i) {
                Ok(mut report) => {
                    if timings {
                        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
                    }
                    reports.push(report);
                }
                Err(err) => {
                    if n.is_some() {
                        return Err(anyhow!(err));
                    }
                    eprintln!("note: {err}");
                }
            }
        }
    }
    let passed = reports.iter().all(|r| r.equal);
    Ok((render_identity_reports(&reports, format), passed))
}

/// Population sizes above these bounds need `--deep` for exhaustive runs.
const DEEP_TREES_FROM: usize = 4;
const DEEP_PAIRS_FROM: usize = 5;

fn run_audit(
    family: Family,
    n: usize,
    sample: Option<u64>,
    seed: u64,
    deep: bool,
    format: ReportFormat,
) -> Result<(String, bool)> {
    if family == Family::H && n == 0 {
        bail!("the compressed-pair involution needs n >= 1");
    }
    let mode = match sample {
        Some(count) => AuditMode::Sample { count, seed },
        None => AuditMode::Exhaustive,
    };
    if mode == AuditMode::Exhaustive && !deep {
        let too_big = match family {
            Family::Kappa => n >= DEEP_TREES_FROM,
            _ => n >= DEEP_PAIRS_FROM,
        };
        if too_big {
            bail!(
                "an exhaustive {family} audit at n = {n} walks a very large population; \
                 pass --deep to allow it or --sample COUNT for a spot check"
            );
        }
    }
    let report = audit(family, n, mode);
    let passed = report.passed();
    Ok((render_audit_reports(&[report], format), passed))
}
