//! File-based front door.
//!
//! Subcommands read JSON spec files (see [`spec_file`]), run the library
//! analysis, and print a deterministic report document on standard output.
//! Verdicts map onto exit codes:
//!
//! * `0` — true / success,
//! * `1` — false or a negative verdict (not a component, decomposable,
//!   not minimal, statistical check failed),
//! * `2` — input error (unreadable file, schema violation, bad flag),
//! * `3` — internal invariant breach: the library certified something the
//!   mathematics rules out, which is a bug, never an input problem.
//!
//! The default tolerance is `1e-9`, overridable per call with `--tol` or
//! globally with the `STABLE_DECOMP_TOL` environment variable.

pub mod report;
pub mod spec_file;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use crate::decompose::{
    common_component, has_independent_increments, is_minimal, make_components, minimalize,
    recover_weights, verify_decomposition, Partition,
};
use crate::error::{Error, Result};
use crate::maxstable::{
    frechet_fdd_cdf, is_indecomposable_max, max_same_process, verify_max_decomposition,
    MaxStableRep,
};
use crate::rep::{CanonicalSpectralMeasure, SpectralRep, DEFAULT_TOL};
use crate::simulate::{
    check_empirical_cdf, check_empirical_cf, probe_uniforms, sample_frechet, sample_sas, CdfReport,
    CfReport, SampleMatrix, SimulationConfig,
};
use crate::stationary::{
    ergodic_decomposition, is_indecomposable, is_stationary, IndecomposabilityVerdict,
    StationaryProcessSpec,
};
use report::{render, Node};
use spec_file::{parse_spec_file, weights_for_points, SpecFile, WeightsSpec};

pub use spec_file::parse_spec_str;

const TOL_ENV: &str = "STABLE_DECOMP_TOL";

#[derive(Parser)]
#[command(
    name = "stable-decomp",
    version,
    about = "Decomposition analysis and exact simulation for stable and Frechet processes on finite spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical spectral measure of a representation
    Canon {
        /// Representation file (sas_rep or max_rep)
        #[arg(long)]
        rep: PathBuf,
    },
    /// Decide equality in distribution of two representations
    Same {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check that independent components sum to the process
    VerifyDecomp {
        #[arg(long)]
        process: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        components: Vec<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Recover the weight function of a component
    RecoverWeights {
        #[arg(long)]
        process: PathBuf,
        #[arg(long)]
        component: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Extract the greatest common component of two processes
    Common {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Test minimality and print the minimalized representation
    Minimal {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Test stationarity of a representation over a torus index grid
    Stationary {
        #[arg(long)]
        rep: PathBuf,
        /// Torus factors, comma separated, e.g. "4" or "2,3"
        #[arg(long)]
        torus: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Decide indecomposability of a stationary flow process
    Indecomposable {
        /// Flow file (flow_spec or mma_spec)
        #[arg(long)]
        flow: PathBuf,
        /// Read the flow as a max-stable (moving maxima) process
        #[arg(long)]
        max: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Split a measure-preserving flow into orbit components
    ErgodicDecomp {
        #[arg(long)]
        flow: PathBuf,
    },
    /// Evaluate the exact joint distribution function of a max-stable process
    MaxCdf {
        #[arg(long)]
        rep: PathBuf,
        /// Time labels, comma separated
        #[arg(long)]
        times: String,
        /// Thresholds, comma separated, matching --times
        #[arg(long)]
        y: String,
    },
    /// Check that independent max-components reproduce the process
    VerifyMaxDecomp {
        #[arg(long)]
        process: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        components: Vec<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Draw reproducible samples and print summary order statistics
    Simulate {
        /// Representation file (sas_rep or max_rep; the kind picks the sampler)
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1024)]
        chunk: usize,
    },
    /// Sample a sum-stable process and verify its characteristic function
    CheckCf {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        probes: usize,
    },
    /// Sample a max-stable process and verify its distribution function
    CheckCdf {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        probes: usize,
        #[arg(long, default_value_t = 0.01)]
        level: f64,
    },
    /// Build an independent-increments process and check its components
    Increments {
        #[arg(long)]
        spec: PathBuf,
        /// Optional weights file: cut components and re-check independence
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Entry point for the binary: parse, dispatch, report, and map the outcome
/// onto the exit-code taxonomy.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout (exit 0) and usage errors
            // to stderr (exit 2)
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (name, inputs, outcome) = dispatch(&cli.command);
    let mut envelope = BTreeMap::new();
    envelope.insert("command".to_string(), Node::from(name));
    envelope.insert(
        "inputs".to_string(),
        Node::List(
            inputs
                .iter()
                .map(|f| {
                    Node::map(vec![
                        ("file", Node::from(f.name.as_str())),
                        ("sha256", Node::from(f.sha256.as_str())),
                    ])
                })
                .collect(),
        ),
    );
    envelope.insert(
        "tool_version".to_string(),
        Node::from(env!("CARGO_PKG_VERSION")),
    );
    let code = match outcome {
        Ok((payload, code)) => {
            if let Node::Map(entries) = payload {
                envelope.extend(entries);
            }
            code
        }
        Err(e) => {
            envelope.insert(
                "error".to_string(),
                Node::map(vec![
                    ("type", Node::from(error_name(&e))),
                    ("detail", Node::from(e.to_string())),
                ]),
            );
            let code = exit_code_for(&e);
            eprintln!("error: {e}");
            code
        }
    };
    print!("{}", render(&Node::Map(envelope)));
    code
}

/// Maps an error to the process exit code the binary reports for it.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NotAComponent { .. } => 1,
        Error::TheoremBreach(_) | Error::InvarianceViolation(_) => 3,
        _ => 2,
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::AlphaOutOfRange(_) => "AlphaOutOfRange",
        Error::NonPositiveWeight(_, _) => "NonPositiveWeight",
        Error::DuplicateLabel(_) => "DuplicateLabel",
        Error::ZeroColumn(_) => "ZeroColumn",
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::TimesMismatch => "TimesMismatch",
        Error::AlphaMismatch(_, _) => "AlphaMismatch",
        Error::EmptyInput(_) => "EmptyInput",
        Error::NonFinite(_) => "NonFinite",
        Error::WeightNormViolation { .. } => "WeightNormViolation",
        Error::EmptyComponent(_) => "EmptyComponent",
        Error::NotAComponent { .. } => "NotAComponent",
        Error::NonMonotone(_) => "NonMonotone",
        Error::InvalidPermutation(_) => "InvalidPermutation",
        Error::NonCommutingGenerators(_, _) => "NonCommutingGenerators",
        Error::GeneratorOrder(_) => "GeneratorOrder",
        Error::CocycleInconsistent(_) => "CocycleInconsistent",
        Error::FullSupportViolation(_) => "FullSupportViolation",
        Error::NotATorusIndex(_) => "NotATorusIndex",
        Error::NotInvariant { .. } => "NotInvariant",
        Error::NotStationary => "NotStationary",
        Error::NotMeasurePreserving(_) => "NotMeasurePreserving",
        Error::ZeroKernelSheet(_) => "ZeroKernelSheet",
        Error::NegativeEntry { .. } => "NegativeEntry",
        Error::NonPositiveThreshold(_) => "NonPositiveThreshold",
        Error::EmptySample => "EmptySample",
        Error::InvalidConfig(_) => "InvalidConfig",
        Error::SchemaError(_) => "SchemaError",
        Error::DanglingLabel(_) => "DanglingLabel",
        Error::Io(_) => "IoError",
        Error::TheoremBreach(_) => "TheoremBreach",
        Error::InvarianceViolation(_) => "InvarianceViolation",
    }
}

struct LoadedFile {
    name: String,
    sha256: String,
    spec: Option<SpecFile>,
}

fn observe(path: &Path) -> LoadedFile {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let sha256 = match std::fs::read(path) {
        Ok(bytes) => {
            let mut h = Sha256::new();
            h.update(&bytes);
            h.finalize().iter().map(|b| format!("{b:02x}")).collect()
        }
        Err(_) => String::new(),
    };
    LoadedFile {
        name,
        sha256,
        spec: None,
    }
}

fn load(path: &Path, inputs: &mut Vec<LoadedFile>) -> Result<SpecFile> {
    let mut file = observe(path);
    let spec = parse_spec_file(path)?;
    file.spec = Some(spec.clone());
    inputs.push(file);
    Ok(spec)
}

fn need_sas(spec: SpecFile, role: &str) -> Result<SpectralRep> {
    match spec {
        SpecFile::Sas(rep) => Ok(rep),
        other => Err(Error::SchemaError(format!(
            "{role} must be a sas_rep file, got {}",
            other.kind()
        ))),
    }
}

fn need_max(spec: SpecFile, role: &str) -> Result<MaxStableRep> {
    match spec {
        SpecFile::Max(rep) => Ok(rep),
        other => Err(Error::SchemaError(format!(
            "{role} must be a max_rep file, got {}",
            other.kind()
        ))),
    }
}

fn need_flow(spec: SpecFile, role: &str) -> Result<StationaryProcessSpec> {
    match spec {
        SpecFile::Flow(s) | SpecFile::Mma(s) => Ok(s),
        other => Err(Error::SchemaError(format!(
            "{role} must be a flow_spec or mma_spec file, got {}",
            other.kind()
        ))),
    }
}

fn need_weights(spec: SpecFile, role: &str) -> Result<WeightsSpec> {
    match spec {
        SpecFile::Weights(w) => Ok(w),
        other => Err(Error::SchemaError(format!(
            "{role} must be a weights file, got {}",
            other.kind()
        ))),
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64> {
    if let Some(t) = flag {
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {t}"
            )));
        }
        return Ok(t);
    }
    match std::env::var(TOL_ENV) {
        Ok(text) => {
            let t: f64 = text
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad {TOL_ENV} value \"{text}\"")))?;
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "{TOL_ENV} must be positive, got {t}"
                )));
            }
            Ok(t)
        }
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<T>()
                .map_err(|_| Error::InvalidConfig(format!("bad {what} entry \"{}\"", part.trim())))
        })
        .collect()
}

fn measure_node(m: &CanonicalSpectralMeasure) -> Node {
    Node::map(vec![
        ("times", Node::strings(&m.times)),
        ("atom_count", Node::from(m.atoms.len())),
        ("total_mass", Node::from(m.total_mass)),
        (
            "atoms",
            Node::List(
                m.atoms
                    .iter()
                    .map(|a| {
                        Node::map(vec![
                            ("direction", Node::floats(&a.direction)),
                            ("mass", Node::from(a.mass)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn points_node(labels: &[String], weights: &[f64]) -> Node {
    Node::List(
        labels
            .iter()
            .zip(weights)
            .map(|(l, &w)| {
                Node::map(vec![
                    ("label", Node::from(l.as_str())),
                    ("mu", Node::from(w)),
                ])
            })
            .collect(),
    )
}

fn sas_rep_node(rep: &SpectralRep) -> Node {
    Node::map(vec![
        ("alpha", Node::from(rep.alpha().get())),
        (
            "points",
            points_node(rep.space().points(), rep.space().weights()),
        ),
        ("times", Node::strings(rep.times())),
        ("f", Node::float_rows(rep.values())),
    ])
}

fn partition_node(partition: &Partition) -> Node {
    Node::List(
        partition
            .blocks()
            .iter()
            .map(|b| Node::strings(b))
            .collect(),
    )
}

fn cf_report_node(report: &CfReport) -> Node {
    Node::map(vec![
        ("n_samples", Node::from(report.n_samples)),
        ("envelope", Node::from(report.envelope)),
        ("pass", Node::from(report.pass)),
        (
            "probes",
            Node::List(
                report
                    .rows
                    .iter()
                    .map(|row| {
                        Node::map(vec![
                            ("a", Node::floats(&row.probe)),
                            ("expected", Node::from(row.expected)),
                            ("observed", Node::from(row.observed)),
                            ("deviation", Node::from(row.deviation)),
                            ("pass", Node::from(row.pass)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn cdf_report_node(report: &CdfReport) -> Node {
    Node::map(vec![
        ("n_samples", Node::from(report.n_samples)),
        ("level", Node::from(report.level)),
        ("pass", Node::from(report.pass)),
        (
            "probes",
            Node::List(
                report
                    .probes
                    .iter()
                    .map(|row| {
                        Node::map(vec![
                            ("times", Node::strings(&row.subset)),
                            ("y", Node::floats(&row.y)),
                            ("expected", Node::from(row.expected)),
                            ("observed", Node::from(row.observed)),
                            ("deviation", Node::from(row.deviation)),
                            ("envelope", Node::from(row.envelope)),
                            ("pass", Node::from(row.pass)),
                        ])
                    })
                    .collect(),
            ),
        ),
        (
            "marginals",
            Node::List(
                report
                    .marginals
                    .iter()
                    .map(|row| {
                        Node::map(vec![
                            ("time", Node::from(row.time.as_str())),
                            ("statistic", Node::from(row.statistic)),
                            ("p_value", Node::from(row.p_value)),
                            ("pass", Node::from(row.pass)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

fn sample_summary_node(samples: &SampleMatrix) -> Node {
    let rows: Vec<Node> = samples
        .times()
        .iter()
        .enumerate()
        .map(|(t, label)| {
            let mut col = samples.column(t);
            col.sort_by(f64::total_cmp);
            Node::map(vec![
                ("time", Node::from(label.as_str())),
                ("min", Node::from(col[0])),
                ("q25", Node::from(quantile(&col, 0.25))),
                ("median", Node::from(quantile(&col, 0.5))),
                ("q75", Node::from(quantile(&col, 0.75))),
                ("max", Node::from(col[col.len() - 1])),
            ])
        })
        .collect();
    Node::map(vec![
        ("n_samples", Node::from(samples.n_samples())),
        (
            "rep_hash",
            Node::from(samples.provenance().rep_hash.as_str()),
        ),
        ("seed", Node::from(samples.provenance().seed)),
        ("order_statistics", Node::List(rows)),
    ])
}

type Outcome = Result<(Node, i32)>;

fn dispatch(cmd: &Command) -> (&'static str, Vec<LoadedFile>, Outcome) {
    let mut inputs = Vec::new();
    let (name, outcome) = match cmd {
        Command::Canon { rep } => ("canon", cmd_canon(rep, &mut inputs)),
        Command::Same { a, b, tol } => ("same", cmd_same(a, b, *tol, &mut inputs)),
        Command::VerifyDecomp {
            process,
            components,
            tol,
        } => (
            "verify-decomp",
            cmd_verify_decomp(process, components, *tol, &mut inputs),
        ),
        Command::RecoverWeights {
            process,
            component,
            tol,
        } => (
            "recover-weights",
            cmd_recover_weights(process, component, *tol, &mut inputs),
        ),
        Command::Common { a, b, tol } => ("common", cmd_common(a, b, *tol, &mut inputs)),
        Command::Minimal { rep } => ("minimal", cmd_minimal(rep, &mut inputs)),
        Command::Stationary { rep, torus, tol } => {
            ("stationary", cmd_stationary(rep, torus, *tol, &mut inputs))
        }
        Command::Indecomposable { flow, max, tol } => (
            "indecomposable",
            cmd_indecomposable(flow, *max, *tol, &mut inputs),
        ),
        Command::ErgodicDecomp { flow } => ("ergodic-decomp", cmd_ergodic(flow, &mut inputs)),
        Command::MaxCdf { rep, times, y } => ("max-cdf", cmd_max_cdf(rep, times, y, &mut inputs)),
        Command::VerifyMaxDecomp {
            process,
            components,
            tol,
        } => (
            "verify-max-decomp",
            cmd_verify_max_decomp(process, components, *tol, &mut inputs),
        ),
        Command::Simulate {
            rep,
            samples,
            seed,
            chunk,
        } => (
            "simulate",
            cmd_simulate(rep, *samples, *seed, *chunk, &mut inputs),
        ),
        Command::CheckCf {
            rep,
            samples,
            seed,
            probes,
        } => (
            "check-cf",
            cmd_check_cf(rep, *samples, *seed, *probes, &mut inputs),
        ),
        Command::CheckCdf {
            rep,
            samples,
            seed,
            probes,
            level,
        } => (
            "check-cdf",
            cmd_check_cdf(rep, *samples, *seed, *probes, *level, &mut inputs),
        ),
        Command::Increments { spec, weights, tol } => (
            "increments",
            cmd_increments(spec, weights.as_deref(), *tol, &mut inputs),
        ),
    };
    (name, inputs, outcome)
}

fn cmd_canon(path: &Path, inputs: &mut Vec<LoadedFile>) -> Outcome {
    let spec = load(path, inputs)?;
    let (kind, alpha, measure) = match spec {
        SpecFile::Sas(rep) => ("sas", rep.alpha().get(), rep.canonicalize()),
        SpecFile::Max(rep) => ("max", rep.alpha(), rep.canonicalize()),
        other => {
            return Err(Error::SchemaError(format!(
                "canon needs a sas_rep or max_rep file, got {}",
                other.kind()
            )))
        }
    };
    Ok((
        Node::map(vec![
            ("family", Node::from(kind)),
            ("alpha", Node::from(alpha)),
            ("canonical_measure", measure_node(&measure)),
        ]),
        0,
    ))
}

fn cmd_same(a: &Path, b: &Path, tol: Option<f64>, inputs: &mut Vec<LoadedFile>) -> Outcome {
    let tol = tolerance(tol)?;
    let sa = load(a, inputs)?;
    let sb = load(b, inputs)?;
    let equal = match (sa, sb) {
        (SpecFile::Sas(ra), SpecFile::Sas(rb)) => ra.same_process(&rb, tol)?,
        (SpecFile::Max(ra), SpecFile::Max(rb)) => max_same_process(&ra, &rb, tol)?,
        (sa, sb) => {
            return Err(Error::SchemaError(format!(
                "same needs two sas_rep or two max_rep files, got {} and {}",
                sa.kind(),
                sb.kind()
            )))
        }
    };
    Ok((
        Node::map(vec![
            ("equal_in_distribution", Node::from(equal)),
            ("tol", Node::from(tol)),
        ]),
        if equal { 0 } else { 1 },
    ))
}

fn cmd_verify_decomp(
    process: &Path,
    components: &[PathBuf],
    tol: Option<f64>,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let tol = tolerance(tol)?;
    let rep = need_sas(load(process, inputs)?, "--process")?;
    let mut comps = Vec::with_capacity(components.len());
    for path in components {
        comps.push(need_sas(load(path, inputs)?, "--components")?);
    }
    let valid = verify_decomposition(&rep, &comps, tol)?;
    Ok((
        Node::map(vec![
            ("valid_decomposition", Node::from(valid)),
            ("component_count", Node::from(comps.len())),
            ("tol", Node::from(tol)),
        ]),
        if valid { 0 } else { 1 },
    ))
}

fn cmd_recover_weights(
    process: &Path,
    component: &Path,
    tol: Option<f64>,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let tol = tolerance(tol)?;
    let rep = need_sas(load(process, inputs)?, "--process")?;
    let comp = need_sas(load(component, inputs)?, "--component")?;
    let weights = recover_weights(&rep, &comp, tol)?;
    Ok((
        Node::map(vec![
            ("points", Node::strings(rep.space().points())),
            ("r", Node::floats(&weights)),
            ("tol", Node::from(tol)),
        ]),
        0,
    ))
}

fn cmd_common(a: &Path, b: &Path, tol: Option<f64>, inputs: &mut Vec<LoadedFile>) -> Outcome {
    let tol = tolerance(tol)?;
    let ra = need_sas(load(a, inputs)?, "--a")?;
    let rb = need_sas(load(b, inputs)?, "--b")?;
    match common_component(&ra, &rb, tol)? {
        Some(common) => Ok((
            Node::map(vec![
                ("exists", Node::from(true)),
                ("common_component", sas_rep_node(&common)),
                ("tol", Node::from(tol)),
            ]),
            0,
        )),
        None => Ok((
            Node::map(vec![
                ("exists", Node::from(false)),
                ("tol", Node::from(tol)),
            ]),
            1,
        )),
    }
}

fn cmd_minimal(path: &Path, inputs: &mut Vec<LoadedFile>) -> Outcome {
    let rep = need_sas(load(path, inputs)?, "--rep")?;
    let minimal = is_minimal(&rep);
    let (reduced, partition) = minimalize(&rep);
    Ok((
        Node::map(vec![
            ("minimal", Node::from(minimal)),
            ("ratio_partition", partition_node(&partition)),
            ("minimalized", sas_rep_node(&reduced)),
        ]),
        if minimal { 0 } else { 1 },
    ))
}

fn cmd_stationary(
    path: &Path,
    torus_text: &str,
    tol: Option<f64>,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let tol = tolerance(tol)?;
    let torus: Vec<usize> = parse_list(torus_text, "torus factor")?;
    let rep = need_sas(load(path, inputs)?, "--rep")?;
    let stationary = is_stationary(&rep, &torus, tol)?;
    Ok((
        Node::map(vec![
            ("stationary", Node::from(stationary)),
            (
                "torus",
                Node::List(torus.iter().map(|&m| Node::from(m)).collect()),
            ),
            ("tol", Node::from(tol)),
        ]),
        if stationary { 0 } else { 1 },
    ))
}

fn cmd_indecomposable(
    path: &Path,
    max: bool,
    tol: Option<f64>,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let tol = tolerance(tol)?;
    let spec = need_flow(load(path, inputs)?, "--flow")?;
    let verdict = if max {
        is_indecomposable_max(&spec, tol)?
    } else {
        is_indecomposable(&spec, tol)?
    };
    let (node, code) = match &verdict {
        IndecomposabilityVerdict::Indecomposable => (
            Node::map(vec![
                ("verdict", Node::from("indecomposable")),
                ("family", Node::from(if max { "max" } else { "sas" })),
                ("tol", Node::from(tol)),
            ]),
            0,
        ),
        IndecomposabilityVerdict::Decomposable { witness } => (
            Node::map(vec![
                ("verdict", Node::from("decomposable")),
                ("family", Node::from(if max { "max" } else { "sas" })),
                ("witness_points", Node::strings(witness)),
                ("tol", Node::from(tol)),
            ]),
            1,
        ),
    };
    Ok((node, code))
}

fn cmd_ergodic(path: &Path, inputs: &mut Vec<LoadedFile>) -> Outcome {
    let spec = need_flow(load(path, inputs)?, "--flow")?;
    let parts = ergodic_decomposition(&spec)?;
    let part_nodes: Vec<Node> = parts
        .iter()
        .map(|p| {
            Node::map(vec![
                (
                    "points",
                    points_node(p.flow().space().points(), p.flow().space().weights()),
                ),
                ("f0", Node::floats(p.f0())),
            ])
        })
        .collect();
    Ok((
        Node::map(vec![
            ("part_count", Node::from(parts.len())),
            ("parts", Node::List(part_nodes)),
        ]),
        0,
    ))
}

fn cmd_max_cdf(path: &Path, times: &str, y: &str, inputs: &mut Vec<LoadedFile>) -> Outcome {
    let rep = need_max(load(path, inputs)?, "--rep")?;
    let subset: Vec<String> = times.split(',').map(|t| t.trim().to_string()).collect();
    let thresholds: Vec<f64> = parse_list(y, "threshold")?;
    let p = frechet_fdd_cdf(&rep, &subset, &thresholds)?;
    Ok((
        Node::map(vec![
            ("times", Node::strings(&subset)),
            ("y", Node::floats(&thresholds)),
            ("probability", Node::from(p)),
        ]),
        0,
    ))
}

fn cmd_verify_max_decomp(
    process: &Path,
    components: &[PathBuf],
    tol: Option<f64>,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let tol = tolerance(tol)?;
    let rep = need_max(load(process, inputs)?, "--process")?;
    let mut comps = Vec::with_capacity(components.len());
    for path in components {
        comps.push(need_max(load(path, inputs)?, "--components")?);
    }
    let valid = verify_max_decomposition(&rep, &comps, tol)?;
    Ok((
        Node::map(vec![
            ("valid_decomposition", Node::from(valid)),
            ("component_count", Node::from(comps.len())),
            ("tol", Node::from(tol)),
        ]),
        if valid { 0 } else { 1 },
    ))
}

fn cmd_simulate(
    path: &Path,
    samples: usize,
    seed: u64,
    chunk: usize,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let cfg = SimulationConfig::new(seed, samples, chunk)?;
    let spec = load(path, inputs)?;
    let (family, matrix) = match spec {
        SpecFile::Sas(rep) => ("sas", sample_sas(&rep, &cfg)),
        SpecFile::Max(rep) => ("max", sample_frechet(&rep, &cfg)),
        other => {
            return Err(Error::SchemaError(format!(
                "simulate needs a sas_rep or max_rep file, got {}",
                other.kind()
            )))
        }
    };
    Ok((
        Node::map(vec![
            ("family", Node::from(family)),
            ("samples", sample_summary_node(&matrix)),
        ]),
        0,
    ))
}

fn cmd_check_cf(
    path: &Path,
    samples: usize,
    seed: u64,
    probes: usize,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    if probes == 0 {
        return Err(Error::InvalidConfig("need at least one probe".into()));
    }
    let cfg = SimulationConfig::new(seed, samples, 8192)?;
    let rep = need_sas(load(path, inputs)?, "--rep")?;
    let matrix = sample_sas(&rep, &cfg);
    let probe_vecs: Vec<Vec<f64>> = (0..probes)
        .map(|i| {
            probe_uniforms(seed, i as u64, rep.n_times())
                .into_iter()
                .map(|u| 4.0 * u - 2.0)
                .collect()
        })
        .collect();
    let report = check_empirical_cf(&matrix, &rep, &probe_vecs)?;
    let pass = report.pass;
    Ok((
        Node::map(vec![
            ("cf_check", cf_report_node(&report)),
            ("seed", Node::from(seed)),
        ]),
        if pass { 0 } else { 1 },
    ))
}

fn cmd_check_cdf(
    path: &Path,
    samples: usize,
    seed: u64,
    probes: usize,
    level: f64,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let cfg = SimulationConfig::new(seed, samples, 8192)?;
    let rep = need_max(load(path, inputs)?, "--rep")?;
    let matrix = sample_frechet(&rep, &cfg);
    // probe thresholds span the bulk of each marginal: multiples of the
    // marginal Frechet scale sigma_t = (sum_s f^alpha mu)^(1/alpha)
    let scales: Vec<f64> = (0..rep.n_times())
        .map(|t| rep.marginal_scale_power(t).powf(1.0 / rep.alpha()))
        .collect();
    let probe_list: Vec<(Vec<String>, Vec<f64>)> = (0..probes)
        .map(|i| {
            let u = probe_uniforms(seed, i as u64, rep.n_times());
            let y: Vec<f64> = scales
                .iter()
                .zip(&u)
                .map(|(&s, &ui)| s * (0.5 + 2.5 * ui))
                .collect();
            (rep.times().to_vec(), y)
        })
        .collect();
    let report = check_empirical_cdf(&matrix, &rep, &probe_list, level)?;
    let pass = report.pass;
    Ok((
        Node::map(vec![
            ("cdf_check", cdf_report_node(&report)),
            ("seed", Node::from(seed)),
        ]),
        if pass { 0 } else { 1 },
    ))
}

fn cmd_increments(
    path: &Path,
    weights: Option<&Path>,
    tol: Option<f64>,
    inputs: &mut Vec<LoadedFile>,
) -> Outcome {
    let tol = tolerance(tol)?;
    let spec = match load(path, inputs)? {
        SpecFile::Increments(s) => s,
        other => {
            return Err(Error::SchemaError(format!(
                "--spec must be an increments file, got {}",
                other.kind()
            )))
        }
    };
    let rep = &spec.rep;
    let independent = has_independent_increments(rep);
    let mut entries = vec![
        ("rep", sas_rep_node(rep)),
        ("independent_increments", Node::from(independent)),
    ];
    let mut code = if independent { 0 } else { 1 };
    if let Some(wpath) = weights {
        let wspec = need_weights(load(wpath, inputs)?, "--weights")?;
        let family = weights_for_points(&wspec, rep.alpha().get(), rep.space().points())?;
        let comps = make_components(rep, &family)?;
        let verdicts: Vec<bool> = comps.iter().map(has_independent_increments).collect();
        let all = verdicts.iter().all(|&b| b);
        let valid = verify_decomposition(rep, &comps, tol)?;
        entries.push((
            "components",
            Node::List(
                verdicts
                    .iter()
                    .enumerate()
                    .map(|(k, &ind)| {
                        Node::map(vec![
                            ("index", Node::from(k)),
                            ("independent_increments", Node::from(ind)),
                        ])
                    })
                    .collect(),
            ),
        ));
        entries.push(("components_independent", Node::from(all)));
        entries.push(("valid_decomposition", Node::from(valid)));
        if !(all && valid) {
            code = 1;
        }
    }
    entries.push(("tol", Node::from(tol)));
    Ok((Node::map(entries), code))
}
