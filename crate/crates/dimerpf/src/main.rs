//! Command-line surface for the exact monomer-dimer partition library:
//! graph ingestion, method selection, polynomial output, verification
//! commands and fixture replay.  Stdout is byte-deterministic for fixed
//! input and flags; timing and counters go to stderr, and errors are
//! structured JSON objects on stderr.  Exit codes: 0 success, 1
//! verification mismatch, 2 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num::Signed;

use dimerpf::corpus;
use dimerpf::embedding::PlanarGraph;
use dimerpf::error::{Error, Result};
use dimerpf::fixtures;
use dimerpf::fullmd::{
    build_skeleton_rectangle, find_hamiltonian_cycle, full_partition_inout,
    full_partition_skeleton, Skeleton,
};
use dimerpf::json::{
    error_to_json, graph_from_json_str, polynomial_to_json, skeleton_from_json_str,
};
use dimerpf::kasteleyn::verify_kasteleyn;
use dimerpf::oracle::{enumerate_partition, MonomerRegion};
use dimerpf::partition::{InteriorPolicy, PfaffianContext};
use dimerpf::poly::{PolyRing, SparsePoly};
use dimerpf::scalar::format_rational;

#[derive(Parser)]
#[command(
    name = "dimerpf",
    about = "Exact monomer-dimer partition functions on planar graphs via Pfaffians",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Var {
    /// Per-monomer fugacity; one power per monomer.
    Z,
    /// Monomer-pair fugacity; x = z^2.
    X,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundaryMethod {
    /// Direct skew-matrix Pfaffian of the enclosed graph.
    Pfaffian,
    /// Pure-dimer counting on the auxiliary ring graph.
    Bijection,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FullMethod {
    /// Sum of boundary Pfaffians over matchings of the removed edges.
    Skeleton,
    /// Product of the inside and outside Pfaffians along a Hamiltonian cycle.
    Inout,
    /// Brute-force enumeration (small graphs only).
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorrMethod {
    /// Pfaffian minor ratio.
    Ratio,
    /// Pfaffian of the pairwise-correlation matrix.
    Wick,
}

#[derive(Subcommand)]
enum Cmd {
    /// Boundary monomer-dimer partition function of an embedded graph.
    BoundaryPartition {
        /// Graph JSON file.
        #[arg(long)]
        graph: PathBuf,
        /// Output variable.
        #[arg(long, value_enum, default_value_t = Var::X)]
        var: Var,
        #[arg(long, value_enum, default_value_t = BoundaryMethod::Pfaffian)]
        method: BoundaryMethod,
        /// Zero out interior monomer weights instead of rejecting them.
        #[arg(long)]
        zero_interior: bool,
        /// Report wall-clock time on stderr.
        #[arg(long)]
        timing: bool,
    },
    /// Unrestricted monomer-dimer partition function.
    FullPartition {
        /// Graph JSON file (alternative to --rect).
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: FullMethod,
        /// Skeleton JSON file for the skeleton method.
        #[arg(long)]
        skeleton: Option<PathBuf>,
        /// Unit-weight rectangle, e.g. 6x6; provides both graph and skeleton.
        #[arg(long)]
        rect: Option<String>,
        #[arg(long, value_enum, default_value_t = Var::X)]
        var: Var,
        /// Worker threads for the skeleton sum.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        timing: bool,
    },
    /// Monomer correlations at close packing, by boundary label.
    Correlations {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated boundary labels, e.g. 1,2,5,6.
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        #[arg(long, value_enum, default_value_t = CorrMethod::Ratio)]
        method: CorrMethod,
        #[arg(long)]
        zero_interior: bool,
    },
    /// Print the admissible orientation and boundary-first labeling.
    Orient {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        zero_interior: bool,
    },
    /// Cross-check the two Pfaffian methods (and optionally the oracle).
    Check {
        #[arg(long)]
        graph: PathBuf,
        /// Also compare against brute-force enumeration.
        #[arg(long)]
        against_oracle: bool,
        #[arg(long)]
        zero_interior: bool,
    },
    /// Replay the stored reference fixtures and diff the results.
    Fixtures {
        /// Include the slow set (the 6x6 rectangle, 256 Pfaffians).
        #[arg(long)]
        all: bool,
    },
}

/// Everything a command run produced; each command prints the parts that
/// belong on its stdout and sends timing and counters to stderr.
struct RunReport {
    method: &'static str,
    polynomial: Option<SparsePoly>,
    value: Option<String>,
    kasteleyn_verified: Option<bool>,
    positivity_verified: Option<bool>,
    methods_agree: Option<bool>,
    oracle_match: Option<bool>,
    elapsed_ms: u128,
    pfaffian_terms: Option<usize>,
}

impl RunReport {
    fn new(method: &'static str) -> Self {
        RunReport {
            method,
            polynomial: None,
            value: None,
            kasteleyn_verified: None,
            positivity_verified: None,
            methods_agree: None,
            oracle_match: None,
            elapsed_ms: 0,
            pfaffian_terms: None,
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &PathBuf) -> Result<PlanarGraph> {
    graph_from_json_str(&read_file(path)?)
}

fn policy(zero_interior: bool) -> InteriorPolicy {
    if zero_interior {
        InteriorPolicy::Zero
    } else {
        InteriorPolicy::Reject
    }
}

fn in_output_var(p: &SparsePoly, var: Var) -> Result<SparsePoly> {
    match var {
        Var::Z => Ok(p.clone()),
        Var::X => p.halve_variable(&PolyRing::univariate(fixtures::PAIR_VAR)),
    }
}

fn parse_rect(spec: &str) -> Result<(usize, usize)> {
    let mut it = spec.split('x');
    let parse = |s: Option<&str>| -> Result<usize> {
        s.and_then(|t| t.parse().ok()).ok_or_else(|| {
            Error::InvalidInput(format!(
                "--rect expects COLUMNSxROWS (e.g. 6x6), got {spec:?}"
            ))
        })
    };
    let c = parse(it.next())?;
    let r = parse(it.next())?;
    if it.next().is_some() {
        return Err(Error::InvalidInput(format!(
            "--rect expects COLUMNSxROWS (e.g. 6x6), got {spec:?}"
        )));
    }
    Ok((c, r))
}

fn emit_timing(report: &RunReport, timing: bool) {
    if timing {
        eprintln!("method={} time_ms={}", report.method, report.elapsed_ms);
        if let Some(n) = report.pfaffian_terms {
            eprintln!("pfaffian_terms={n}");
        }
    }
}

fn cmd_boundary_partition(
    graph: &PathBuf,
    var: Var,
    method: BoundaryMethod,
    zero_interior: bool,
    timing: bool,
) -> Result<u8> {
    let g = load_graph(graph)?;
    let started = Instant::now();
    let ctx = PfaffianContext::new(&g, policy(zero_interior))?;
    let z = match method {
        BoundaryMethod::Pfaffian => ctx.partition()?,
        BoundaryMethod::Bijection => ctx.partition_bijection()?,
    };
    let mut report = RunReport::new(match method {
        BoundaryMethod::Pfaffian => "pfaffian",
        BoundaryMethod::Bijection => "bijection",
    });
    report.elapsed_ms = started.elapsed().as_millis();
    report.polynomial = Some(in_output_var(&z, var)?);
    println!("{}", polynomial_to_json(report.polynomial.as_ref().unwrap())?);
    emit_timing(&report, timing);
    Ok(0)
}

fn full_partition_graph(
    graph: &Option<PathBuf>,
    rect: &Option<String>,
) -> Result<PlanarGraph> {
    match (graph, rect) {
        (Some(path), None) => load_graph(path),
        (None, Some(spec)) => {
            let (c, r) = parse_rect(spec)?;
            Ok(corpus::grid(c, r)?.graph)
        }
        _ => Err(Error::InvalidInput(
            "provide exactly one of --graph or --rect".into(),
        )),
    }
}

fn cmd_full_partition(
    graph: &Option<PathBuf>,
    method: FullMethod,
    skeleton: &Option<PathBuf>,
    rect: &Option<String>,
    var: Var,
    threads: Option<usize>,
    timing: bool,
) -> Result<u8> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("cannot size the thread pool: {e}")))?;
    }
    let mut report = RunReport::new(match method {
        FullMethod::Skeleton => "skeleton",
        FullMethod::Inout => "inout",
        FullMethod::Oracle => "oracle",
    });
    let started = Instant::now();
    let z = match method {
        FullMethod::Skeleton => {
            let sk: Skeleton = match (skeleton, rect) {
                (Some(path), None) => skeleton_from_json_str(&read_file(path)?)?,
                (None, Some(spec)) => {
                    let (c, r) = parse_rect(spec)?;
                    build_skeleton_rectangle(c, r)?
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "the skeleton method needs exactly one of --skeleton or --rect"
                            .into(),
                    ))
                }
            };
            let run = full_partition_skeleton(&sk)?;
            report.pfaffian_terms = Some(run.pfaffian_terms);
            run.polynomial
        }
        FullMethod::Inout => {
            let g = full_partition_graph(graph, rect)?;
            let hc = find_hamiltonian_cycle(&g)?;
            full_partition_inout(&hc.graph, &hc.cycle)?
        }
        FullMethod::Oracle => {
            let g = full_partition_graph(graph, rect)?;
            enumerate_partition(&g, &MonomerRegion::All)?
        }
    };
    report.elapsed_ms = started.elapsed().as_millis();
    report.polynomial = Some(in_output_var(&z, var)?);
    println!("{}", polynomial_to_json(report.polynomial.as_ref().unwrap())?);
    emit_timing(&report, timing);
    Ok(0)
}

fn cmd_correlations(
    graph: &PathBuf,
    indices: &[usize],
    method: CorrMethod,
    zero_interior: bool,
) -> Result<u8> {
    let g = load_graph(graph)?;
    let ctx = PfaffianContext::new(&g, policy(zero_interior))?;
    let value = match method {
        CorrMethod::Ratio => ctx.matching_correlation(indices)?,
        CorrMethod::Wick => ctx.wick_correlation(indices)?,
    };
    let mut report = RunReport::new(match method {
        CorrMethod::Ratio => "ratio",
        CorrMethod::Wick => "wick",
    });
    report.value = Some(format_rational(&value));
    println!("{}", report.value.as_ref().unwrap());
    Ok(0)
}

fn cmd_orient(graph: &PathBuf, zero_interior: bool) -> Result<u8> {
    let g = load_graph(graph)?;
    let ctx = PfaffianContext::new(&g, policy(zero_interior))?;
    let labeling = ctx.labeling();
    let mut order = Vec::new();
    for i in 1..=labeling.len() {
        order.push(labeling.vertex(i)?.to_string());
    }
    let edges: Vec<String> = ctx
        .orientation()
        .iter()
        .map(|(t, h)| format!("[{t},{h}]"))
        .collect();
    println!(
        "{{\"labeling\":[{}],\"orientation\":[{}]}}",
        order.join(","),
        edges.join(",")
    );
    Ok(0)
}

fn cmd_check(graph: &PathBuf, against_oracle: bool, zero_interior: bool) -> Result<u8> {
    let g = load_graph(graph)?;
    let ctx = PfaffianContext::new(&g, policy(zero_interior))?;
    let mut report = RunReport::new("check");
    let pf = ctx.partition()?;
    let bij = ctx.partition_bijection()?;
    report.methods_agree = Some(pf == bij);
    match verify_kasteleyn(ctx.enclosed().graph(), ctx.orientation()) {
        Ok(bad) => report.kasteleyn_verified = Some(bad.is_empty()),
        Err(Error::TooLarge(_)) => {}
        Err(e) => return Err(e),
    }
    // Nonnegative-coefficient verification only applies when every
    // weight in the input is nonnegative.
    let nonneg_weights = g.vertex_ids().all(|v| !g.monomer_weight(v).is_negative())
        && g.edge_ids().all(|(u, v)| !g.dimer_weight(u, v).is_negative());
    if nonneg_weights {
        report.positivity_verified =
            Some(pf.terms().all(|(_, c)| !c.is_negative()));
    }
    if against_oracle {
        let oracle =
            enumerate_partition(ctx.enclosed().graph(), &MonomerRegion::Boundary)?;
        report.oracle_match = Some(pf == oracle);
    }
    let mut fields = Vec::new();
    if let Some(b) = report.kasteleyn_verified {
        fields.push(format!("\"kasteleyn_verified\":{b}"));
    }
    if let Some(b) = report.positivity_verified {
        fields.push(format!("\"positivity_verified\":{b}"));
    }
    fields.push(format!(
        "\"methods_agree\":{}",
        report.methods_agree.unwrap()
    ));
    if let Some(b) = report.oracle_match {
        fields.push(format!("\"oracle_match\":{b}"));
    }
    println!("{{\"check\":{{{}}}}}", fields.join(","));
    let ok = report.kasteleyn_verified.unwrap_or(true)
        && report.positivity_verified.unwrap_or(true)
        && report.methods_agree.unwrap_or(false)
        && report.oracle_match.unwrap_or(true);
    Ok(if ok { 0 } else { 1 })
}

fn cmd_fixtures(all: bool) -> Result<u8> {
    let outcomes = fixtures::replay(all)?;
    let mut failures = 0;
    for o in &outcomes {
        if o.passed {
            println!("ok {}", o.name);
        } else {
            failures += 1;
            println!("FAIL {}: {}", o.name, o.detail);
        }
    }
    println!("passed {}/{}", outcomes.len() - failures, outcomes.len());
    Ok(if failures == 0 { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::BoundaryPartition {
            graph,
            var,
            method,
            zero_interior,
            timing,
        } => cmd_boundary_partition(graph, *var, *method, *zero_interior, *timing),
        Cmd::FullPartition {
            graph,
            method,
            skeleton,
            rect,
            var,
            threads,
            timing,
        } => cmd_full_partition(graph, *method, skeleton, rect, *var, *threads, *timing),
        Cmd::Correlations {
            graph,
            indices,
            method,
            zero_interior,
        } => cmd_correlations(graph, indices, *method, *zero_interior),
        Cmd::Orient {
            graph,
            zero_interior,
        } => cmd_orient(graph, *zero_interior),
        Cmd::Check {
            graph,
            against_oracle,
            zero_interior,
        } => cmd_check(graph, *against_oracle, *zero_interior),
        Cmd::Fixtures { all } => cmd_fixtures(*all),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", error_to_json(&e));
            ExitCode::from(2)
        }
    }
}
