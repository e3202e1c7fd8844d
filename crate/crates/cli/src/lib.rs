//! Command-line front end: growth reports, factoriality classification,
//! verification suites, expansions, products and hypothesis checks.

pub mod graph_file;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use racg_hecke_core::expansion::t_expansion;
use racg_hecke_core::growth::{factor_classification, growth_rate, growth_report, Radius};
use racg_hecke_core::hecke::{format_element, hecke_multiply};
use racg_hecke_core::khintchine::{crossover, diagonal_family, index_set_size, FamilyVariant};
use racg_hecke_core::suites::{run_suite, Suite, SuiteConfig, SuiteReport};
use racg_hecke_core::word::{format_word, parse_word, DEFAULT_BALL_CAP};
use racg_hecke_core::{catalog, CoxeterGraph, Error, HeckeElement};
use serde_json::{json, Value};

pub use graph_file::{load_graph, parse_graph, GraphFile};
pub use report::{Format, Report};

/// Environment variable overriding the ball enumeration cap.
pub const MAX_BALL_ENV: &str = "HECKE_MAX_BALL";

#[derive(Clone, Debug, Parser)]
#[command(name = "racg-hecke", version, about = "Right-angled Coxeter groups and their Hecke algebras")]
pub struct Cli {
    /// Graph file: {"generators": [...], "edges": [[a, b], ...]}.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Deformation parameter.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub q: f64,
    /// Radius of the ball of basis vectors.
    #[arg(long = "N", global = true, default_value_t = 4)]
    pub n: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Word counts by length and the radius of convergence.
    Growth {
        #[arg(long, default_value_t = 12)]
        k: usize,
    },
    /// Factor classification at q.
    Classify,
    /// Run a verification suite, or `all`.
    Verify { suite: String },
    /// Creation-diagonal-annihilation terms of T_w.
    Expand { word: String },
    /// Exact product T_{w1} T_{w2}.
    Mult { left: String, right: String },
    /// Khintchine block counts and diagonal word families.
    Khintchine { d: usize },
    /// Smallest block length at which the injectivity bound fails.
    Crossover {
        #[arg(long, value_enum, default_value_t = VariantArg::Free3)]
        variant: VariantArg,
        /// Defaults to |q - 1| / sqrt(q).
        #[arg(long)]
        p: Option<f64>,
        /// Defaults to the graph's generator count, or 3.
        #[arg(long = "s-count")]
        s_count: Option<usize>,
    },
    /// Checkable hypotheses of the structural theorems.
    Hypotheses,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Free3,
    Rst,
}

impl From<VariantArg> for FamilyVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Free3 => FamilyVariant::Free3,
            VariantArg::Rst => FamilyVariant::Rst,
        }
    }
}

fn variant_name(v: FamilyVariant) -> &'static str {
    match v {
        FamilyVariant::Free3 => "free3",
        FamilyVariant::Rst => "rst",
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(
                Error::Parse(_)
                | Error::UnknownGenerator(_)
                | Error::InvalidGraph(_)
                | Error::GraphMismatch(_)
                | Error::NotAClique
                | Error::Precondition(_),
            ) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

/// A finished command: the rendered report and the process exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub status: i32,
}

/// Enumeration cap from the environment, or the default.
pub fn ball_cap_from(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_BALL_CAP),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| CliError::Config(format!("{MAX_BALL_ENV} must be a positive integer, got `{v}`"))),
    }
}

fn validate(cli: &Cli) -> Result<(), CliError> {
    if !(cli.q > 0.0 && cli.q.is_finite()) {
        return Err(CliError::Config("--q must be a positive real".into()));
    }
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Config("--tol must be a positive real".into()));
    }
    Ok(())
}

fn require_graph(cli: &Cli) -> Result<(String, CoxeterGraph), CliError> {
    let path = cli.graph.as_deref().ok_or_else(|| CliError::Config("this command needs --graph".into()))?;
    Ok((graph_name(path), load_graph(path)?))
}

fn graph_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn radius_json(r: Radius) -> Value {
    match r {
        Radius::Finite(x) => json!(x),
        Radius::Infinite => json!("infinite"),
    }
}

pub fn execute(cli: &Cli, cap: usize) -> Result<Outcome, CliError> {
    validate(cli)?;
    let mut status = 0;
    let report = match &cli.command {
        Command::Growth { k } => {
            let (_, graph) = require_graph(cli)?;
            let bfs_k = (*k).min(10);
            let r = growth_report(&graph, *k, bfs_k, cli.tol, cap)?;
            let json = json!({
                "counts": r.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "rho": radius_json(r.rho),
                "interval": r.interval.map(|(a, b)| vec![a, b]),
                "method": "transfer-matrix",
                "bfs_checked_up_to": bfs_k,
                "ratio_estimate": r.ratio_estimate,
            });
            let counts: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
            let text = report::text_lines(&[
                ("counts", counts.join(", ")),
                ("rho", radius_json(r.rho).to_string()),
                ("interval", r.interval.map_or("none".into(), |(a, b)| format!("[{a}, {b}]"))),
            ]);
            let rows = counts.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]).collect();
            Report::from_json(json, text).with_table(&["k", "a_k"], rows)
        }
        Command::Classify => {
            let (_, graph) = require_graph(cli)?;
            let c = factor_classification(&graph, cli.q, cli.tol)?;
            let rho = growth_rate(&graph, cli.tol)?;
            let json = json!({
                "q": cli.q,
                "rho": radius_json(rho),
                "interval": rho.interval().map(|(a, b)| vec![a, b]),
                "classification": c.to_string(),
            });
            Report::from_json(json, c.to_string())
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(|e| CliError::Config(e.to_string()))?]
            };
            let graphs: Vec<(String, CoxeterGraph)> = match cli.graph {
                Some(_) => vec![require_graph(cli)?],
                None => catalog::test_graphs().into_iter().map(|(n, g)| (n.to_string(), g)).collect(),
            };
            let config = SuiteConfig { radius: cli.n, cap };
            let reports = run_parallel(&graphs, &suites, config)?;
            if reports.iter().any(|r| !r.passed()) {
                status = 1;
            }
            suite_report(&reports)
        }
        Command::Expand { word } => {
            let (_, graph) = require_graph(cli)?;
            let w = parse_word(&graph, word)?;
            let terms = t_expansion(&graph, &w);
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for t in &terms {
                let (c, d, a) = (
                    format_word(&graph, &t.creator),
                    format_word(&graph, &t.diagonal),
                    format_word(&graph, &t.annihilator),
                );
                lines.push(format!("{} T1[{c}] P[{d}] T1[{a}]", t.weight));
                items.push(json!({"weight": t.weight.to_string(), "creator": c, "diagonal": d, "annihilator": a}));
            }
            let rows = items
                .iter()
                .map(|i| {
                    ["weight", "creator", "diagonal", "annihilator"]
                        .iter()
                        .map(|k| i[k].as_str().unwrap_or("").to_string())
                        .collect()
                })
                .collect();
            Report::from_json(json!({"word": format_word(&graph, &w), "terms": items}), lines.join("\n"))
                .with_table(&["weight", "creator", "diagonal", "annihilator"], rows)
        }
        Command::Mult { left, right } => {
            let (_, graph) = require_graph(cli)?;
            let a = HeckeElement::basis(parse_word(&graph, left)?);
            let b = HeckeElement::basis(parse_word(&graph, right)?);
            let product = format_element(&graph, &hecke_multiply(&graph, &a, &b)?);
            Report::from_json(json!({"left": left, "right": right, "product": product}), product.clone())
        }
        Command::Khintchine { d } => {
            let (_, graph) = require_graph(cli)?;
            khintchine_report(&graph, *d)?
        }
        Command::Crossover { variant, p, s_count } => {
            let p = match p {
                Some(p) => *p,
                None => racg_hecke_core::poly::p_of_q(cli.q).abs(),
            };
            let s_count = match (s_count, &cli.graph) {
                (Some(s), _) => *s,
                (None, Some(_)) => require_graph(cli)?.1.rank(),
                (None, None) => 3,
            };
            let r = crossover(p, s_count, (*variant).into())?;
            let json = json!({
                "variant": variant_name(r.variant),
                "p": r.p,
                "S_count": r.s_count,
                "d_star": r.d_star,
                "lhs": r.lhs,
                "rhs": r.rhs,
            });
            Report::from_json(json, format!("d* = {}", r.d_star))
        }
        Command::Hypotheses => {
            let (_, graph) = require_graph(cli)?;
            hypotheses_report(&graph, cli.q, cli.tol)?
        }
    };
    Ok(Outcome { report, status })
}

/// Runs every `(graph, suite)` pair on its own thread; results keep input order.
pub fn run_parallel(
    graphs: &[(String, CoxeterGraph)],
    suites: &[Suite],
    config: SuiteConfig,
) -> Result<Vec<SuiteReport>, CliError> {
    let results: Vec<Result<SuiteReport, Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = graphs
            .iter()
            .flat_map(|(name, g)| suites.iter().map(move |&s| (name, g, s)))
            .map(|(name, g, s)| scope.spawn(move || run_suite(s, g, name, config)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

fn suite_report(reports: &[SuiteReport]) -> Report {
    let items: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "suite": r.suite.name(),
                "lemma": r.lemma,
                "graph": r.graph,
                "parameters": r.parameters,
                "cases_checked": r.cases_checked,
                "failed": r.failed,
                "failures": r.failures,
            })
        })
        .collect();
    let text = reports
        .iter()
        .map(|r| {
            let mark = if r.passed() { "PASS" } else { "FAIL" };
            format!("{mark} {} on {} ({} cases, {} failed)", r.suite, r.graph, r.cases_checked, r.failed)
        })
        .collect::<Vec<_>>()
        .join("\n");
    let rows = reports
        .iter()
        .map(|r| vec![r.suite.name().to_string(), r.graph.clone(), r.cases_checked.to_string(), r.failed.to_string()])
        .collect();
    Report { json: Value::Array(items), text, header: vec![], rows: vec![] }
        .with_table(&["suite", "graph", "cases_checked", "failed"], rows)
}

fn family_json(graph: &CoxeterGraph, d: usize, variant: FamilyVariant) -> Value {
    match diagonal_family(graph, d, variant) {
        Ok(f) => json!({
            "size": f.len(),
            "pairwise_condition": f.check_pairwise(),
            "words": f.words.iter().map(|w| format_word(graph, w)).collect::<Vec<_>>(),
        }),
        Err(e) => json!({"unavailable": e.to_string()}),
    }
}

fn khintchine_report(graph: &CoxeterGraph, d: usize) -> Result<Report, CliError> {
    let free_count = graph.is_free().then(|| d + 1 + d * graph.rank());
    let blocks = index_set_size(graph, d);
    let json = json!({
        "d": d,
        "general_block_count": blocks,
        "free_block_count": free_count,
        "families": {
            "free3": family_json(graph, d, FamilyVariant::Free3),
            "rst": family_json(graph, d, FamilyVariant::Rst),
        },
    });
    let size = |v: &Value| v["size"].as_u64().map_or("unavailable".to_string(), |s| s.to_string());
    let text = report::text_lines(&[
        ("d", d.to_string()),
        ("general blocks", blocks.to_string()),
        ("free blocks", free_count.map_or("not a free graph".into(), |c| c.to_string())),
        ("free3 family size", size(&json["families"]["free3"])),
        ("rst family size", size(&json["families"]["rst"])),
    ]);
    Ok(Report::from_json(json, text))
}

fn hypotheses_report(graph: &CoxeterGraph, q: f64, tol: f64) -> Result<Report, CliError> {
    let rho = growth_rate(graph, tol)?;
    let in_interval = rho.interval().is_some_and(|(lo, hi)| q >= lo - tol && q <= hi + tol);
    let separating = graph.find_separating_vertex().ok().map(|s| graph.label(s).to_string());
    let square = graph.induced_square().map(|sq| sq.iter().map(|&s| graph.label(s).to_string()).collect::<Vec<_>>());
    let json = json!({
        "reduced": graph.is_reduced_system(),
        "at_least_three_generators": graph.rank() >= 3,
        "hyperbolic": graph.is_hyperbolic(),
        "induced_square": square,
        "q": q,
        "interval": rho.interval().map(|(a, b)| vec![a, b]),
        "q_in_interval": in_interval,
        "separating_vertex": separating,
    });
    let text = report::text_lines(&[
        ("reduced", graph.is_reduced_system().to_string()),
        ("at least three generators", (graph.rank() >= 3).to_string()),
        ("hyperbolic", graph.is_hyperbolic().to_string()),
        ("q in interval", in_interval.to_string()),
        ("separating vertex", json["separating_vertex"].as_str().unwrap_or("none").to_string()),
    ]);
    Ok(Report::from_json(json, text))
}
