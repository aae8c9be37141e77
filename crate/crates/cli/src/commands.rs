use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use subdiv_core::random::unit_sum_corpus;
use subdiv_core::refine::interior_polyline;
use subdiv_core::{
    analyze_baseline, analyze_improved, certify_smoothness, classify_se_so, contraction_trace,
    even_odd_sums, lower_bound_audit, polyline, rat, refine_to_level, AnalysisReport, GridSequence,
    Scheme, Verdict, DEFAULT_MAX_ITER,
};

use crate::document::{format_decimal, format_rational, DataDocument, MaskDocument};
use crate::report::{AuditSection, ReportDocument, SmoothnessSection, TraceSection, TOOL, VERSION};

pub const STATUS_CONVERGENT: u8 = 0;
pub const STATUS_INPUT_ERROR: u8 = 1;
pub const STATUS_DIVERGENT: u8 = 2;
pub const STATUS_INCONCLUSIVE: u8 = 3;
pub const STATUS_AUDIT_FAILED: u8 = 4;

pub fn verdict_status(verdict: &Verdict) -> u8 {
    match verdict {
        Verdict::Convergent { .. } => STATUS_CONVERGENT,
        Verdict::Divergent => STATUS_DIVERGENT,
        Verdict::Inconclusive => STATUS_INCONCLUSIVE,
    }
}

/// Convergence and smoothness analysis of binary linear subdivision schemes.
#[derive(Debug, Parser)]
#[command(name = "subdiv", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide convergence and report contractivity factor and number.
    Analyze(AnalyzeArgs),
    /// Certify C^n smoothness through divided-difference schemes.
    Smoothness(SmoothnessArgs),
    /// Refine initial data and export the polygonal line.
    Refine(RefineArgs),
    /// Check the 1/2 lower bound and level independence on a random corpus.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct MaskArgs {
    /// Mask document (JSON with `offset`, `coefficients` and optional `name`).
    pub mask_file: Option<PathBuf>,
    /// Inline comma-separated coefficients, e.g. "-1/16,0,9/16,1,9/16,0,-1/16".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "mask_file")]
    pub mask: Option<String>,
    /// Degree of the first inline coefficient.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub offset: i64,
    /// Name recorded in the report for inline masks.
    #[arg(long)]
    pub name: Option<String>,
}

impl MaskArgs {
    fn load(&self) -> anyhow::Result<(MaskDocument, Scheme)> {
        let mut doc = match (&self.mask_file, &self.mask) {
            (Some(path), _) => MaskDocument::read(path)?,
            (None, Some(list)) => MaskDocument::inline(list, self.offset),
            (None, None) => bail!("no mask given: pass a mask file or --mask"),
        };
        if self.name.is_some() {
            doc.name = self.name.clone();
        }
        load_document(doc)
    }
}

fn load_document(doc: MaskDocument) -> anyhow::Result<(MaskDocument, Scheme)> {
    let mask = doc.to_mask()?;
    // Echo the canonical form so reports do not depend on literal spelling.
    let echo = MaskDocument::from_mask(&mask, doc.name.clone());
    Ok((echo, Scheme::new(mask)))
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub mask: MaskArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_iter: u32,
    /// Run only the plain iterative norm test.
    #[arg(long)]
    pub baseline_only: bool,
    /// Append the lower-bound audit and S_e/S_o classification.
    #[arg(long)]
    pub audit: bool,
    /// Analyze every *.mask / *.json file in a directory.
    #[arg(long, conflicts_with_all = ["mask_file", "mask"])]
    pub dir: Option<PathBuf>,
    /// Where batch reports go (defaults to the input directory).
    #[arg(long, requires = "dir")]
    pub out_dir: Option<PathBuf>,
    /// Parallel workers for batch analysis.
    #[arg(long, default_value_t = 1, requires = "dir")]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SmoothnessArgs {
    #[command(flatten)]
    pub mask: MaskArgs,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_iter: u32,
    /// Highest order to check (default: multiplicity of -1 minus one).
    #[arg(long)]
    pub max_order: Option<u32>,
}

#[derive(Debug, Args)]
pub struct RefineArgs {
    #[command(flatten)]
    pub mask: MaskArgs,
    /// Initial data document (JSON with `level`, `offset`, `values`).
    #[arg(long, conflicts_with = "data")]
    pub data_file: Option<PathBuf>,
    /// Inline comma-separated initial values; the delta sequence if omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub data: Option<String>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub data_offset: i64,
    /// Number of refinement steps.
    #[arg(long, default_value_t = 0)]
    pub levels: u32,
    /// Append per-level difference norms and ratios.
    #[arg(long)]
    pub trace: bool,
    /// Add a decimal convenience column.
    #[arg(long)]
    pub decimal: bool,
    /// Export only vertices whose stencil stayed inside the data.
    #[arg(long)]
    pub interior_only: bool,
    /// Write the polyline here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_iter: u32,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Highest power L checked.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub levels: u32,
}

/// Text for standard output plus the process status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

pub fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Analyze(args) => run_analyze(&args),
        Command::Smoothness(args) => run_smoothness(&args),
        Command::Refine(args) => run_refine(&args),
        Command::Audit(args) => Ok(run_audit(&args)),
    }
}

pub fn analysis_document(
    doc: MaskDocument,
    scheme: &Scheme,
    max_iter: u32,
    baseline_only: bool,
    audit: bool,
) -> (ReportDocument, AnalysisReport) {
    let report = if baseline_only {
        analyze_baseline(scheme, max_iter)
    } else {
        analyze_improved(scheme, max_iter)
    };
    let mut out = ReportDocument::new("analyze", doc, &report);
    if audit {
        out.audit = Some(audit_section(scheme, max_iter));
    }
    (out, report)
}

fn audit_section(scheme: &Scheme, max_iter: u32) -> AuditSection {
    let class = match classify_se_so(scheme) {
        Ok(class) => class,
        Err(e) => return AuditSection::skipped(e.to_string()),
    };
    let q = scheme
        .difference_symbol()
        .expect("conditions checked above");
    let rows = lower_bound_audit(&q, max_iter).expect("q(1) = 1 when conditions hold");
    AuditSection::new(&rows, &class)
}

fn run_analyze(args: &AnalyzeArgs) -> anyhow::Result<Outcome> {
    if let Some(dir) = &args.dir {
        return run_batch(args, dir);
    }
    let (doc, scheme) = args.mask.load()?;
    let (out, report) =
        analysis_document(doc, &scheme, args.max_iter, args.baseline_only, args.audit);
    Ok(Outcome {
        stdout: out.to_json(),
        status: verdict_status(&report.verdict),
    })
}

fn run_batch(args: &AnalyzeArgs, dir: &Path) -> anyhow::Result<Outcome> {
    let mut inputs: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.is_file()
                && matches!(
                    p.extension().and_then(|e| e.to_str()),
                    Some("mask" | "json")
                )
                && !p.to_string_lossy().ends_with(".report.json")
        })
        .collect();
    inputs.sort();
    let out_dir = args.out_dir.clone().unwrap_or_else(|| dir.to_path_buf());
    fs::create_dir_all(&out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .context("cannot start worker pool")?;
    let lines: Vec<(bool, String)> = pool.install(|| {
        inputs
            .par_iter()
            .map(|path| match analyze_file(args, path, &out_dir) {
                Ok(line) => (true, line),
                Err(e) => (false, format!("{}: error: {e:#}", path.display())),
            })
            .collect()
    });

    let mut stdout = String::new();
    for (_, line) in &lines {
        stdout.push_str(line);
        stdout.push('\n');
    }
    let status = if lines.iter().all(|(ok, _)| *ok) {
        0
    } else {
        STATUS_INPUT_ERROR
    };
    Ok(Outcome { stdout, status })
}

fn analyze_file(args: &AnalyzeArgs, path: &Path, out_dir: &Path) -> anyhow::Result<String> {
    let (doc, scheme) = load_document(MaskDocument::read(path)?)?;
    let (out, report) =
        analysis_document(doc, &scheme, args.max_iter, args.baseline_only, args.audit);
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let target = out_dir.join(format!("{stem}.report.json"));
    fs::write(&target, out.to_json())
        .with_context(|| format!("cannot write {}", target.display()))?;
    Ok(format!(
        "{}: {} ({}) -> {}",
        path.display(),
        report.verdict.kind(),
        report.rule,
        target.display()
    ))
}

fn run_smoothness(args: &SmoothnessArgs) -> anyhow::Result<Outcome> {
    let (doc, scheme) = args.mask.load()?;
    let base = analyze_improved(&scheme, args.max_iter);
    let mut out = ReportDocument::new("smoothness", doc, &base);
    if !base.verdict.is_convergent() {
        return Ok(Outcome {
            stdout: out.to_json(),
            status: STATUS_DIVERGENT,
        });
    }
    let report = certify_smoothness(&scheme, args.max_iter, args.max_order)?;
    out.smoothness = Some(SmoothnessSection::from(&report));
    Ok(Outcome {
        stdout: out.to_json(),
        status: STATUS_CONVERGENT,
    })
}

fn run_refine(args: &RefineArgs) -> anyhow::Result<Outcome> {
    let (doc, scheme) = args.mask.load()?;
    let f0 = match (&args.data_file, &args.data) {
        (Some(path), _) => DataDocument::read(path)?.to_sequence()?,
        (None, Some(list)) => DataDocument::inline(list, args.data_offset).to_sequence()?,
        (None, None) => GridSequence::delta(),
    };
    let fk = refine_to_level(&scheme, &f0, args.levels);
    let vertices = if args.interior_only {
        interior_polyline(&fk)
    } else {
        polyline(&fk)
    };

    let mut csv = String::from(if args.decimal {
        "t,value,value_decimal\n"
    } else {
        "t,value\n"
    });
    for (t, v) in &vertices {
        if args.decimal {
            writeln!(
                csv,
                "{},{},{}",
                format_rational(t),
                format_rational(v),
                format_decimal(v)
            )?;
        } else {
            writeln!(csv, "{},{}", format_rational(t), format_rational(v))?;
        }
    }

    let trace_text = if args.trace {
        let analysis = analyze_improved(&scheme, args.max_iter);
        let certified = match &analysis.verdict {
            Verdict::Convergent {
                mu,
                contractivity_number,
            } => Some((mu, *contractivity_number)),
            _ => None,
        };
        let trace = contraction_trace(&scheme, &f0, args.levels, certified);
        let mut out = ReportDocument::new("refine", doc, &analysis);
        out.trace = Some(TraceSection::from(&trace));
        Some(out.to_json())
    } else {
        None
    };

    let stdout = match &args.out {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("cannot write {}", path.display()))?;
            trace_text.unwrap_or_default()
        }
        None => match trace_text {
            Some(trace) => format!("{csv}\n{trace}"),
            None => csv,
        },
    };
    Ok(Outcome {
        stdout,
        status: STATUS_CONVERGENT,
    })
}

#[derive(serde::Serialize)]
struct AuditDocument {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    seed: u64,
    count: usize,
    levels: u32,
    lower_bound_failures: usize,
    level_independence_failures: usize,
    min_binary_coset_norm: String,
    passed: bool,
}

fn run_audit(args: &AuditArgs) -> Outcome {
    let mut lower_bound_failures = 0;
    let mut level_independence_failures = 0;
    let mut min_norm = None;
    for q in unit_sum_corpus(args.seed, args.count) {
        let rows = lower_bound_audit(&q, args.levels).expect("corpus has q(1) = 1");
        for row in &rows {
            if !row.passed {
                lower_bound_failures += 1;
            }
            if min_norm.as_ref().is_none_or(|m| row.binary_coset_norm < *m) {
                min_norm = Some(row.binary_coset_norm.clone());
            }
        }
        let (s_e, s_o) = even_odd_sums(&q).expect("corpus has q(1) = 1");
        for level in 1..=args.levels {
            if q.symbol_power(level).coset_signed_sums(2) != [s_e.clone(), s_o.clone()] {
                level_independence_failures += 1;
            }
        }
    }
    let passed = lower_bound_failures == 0 && level_independence_failures == 0;
    let doc = AuditDocument {
        tool: TOOL,
        version: VERSION,
        command: "audit",
        seed: args.seed,
        count: args.count,
        levels: args.levels,
        lower_bound_failures,
        level_independence_failures,
        min_binary_coset_norm: format_rational(&min_norm.unwrap_or_else(|| rat(1, 2))),
        passed,
    };
    let mut stdout = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    stdout.push('\n');
    Outcome {
        stdout,
        status: if passed { 0 } else { STATUS_AUDIT_FAILED },
    }
}
