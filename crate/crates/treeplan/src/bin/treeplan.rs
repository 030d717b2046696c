//! Command-line front end: planning, invariants, verification.
//!
//! All computation lives in the library; this binary parses flags, wires
//! files to documents and fixes the exit code contract: 0 on success, 1
//! on any input/validation problem, 2 when an internal cross-check fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use treeplan::error::Error;
use treeplan::gen;
use treeplan::graph::{Graph, RootedTree};
use treeplan::invariants::{
    build_pair_complex, circle_count_ordered_pair, circle_count_unordered_pair, detect_known,
    tc_conf_tree, tc_conf_upper, tc_graph, Justification, TcKind, TcReport,
};
use treeplan::io::{
    self, graph_summary_doc, parse_configuration, parse_graph, plan_to_doc, random_plan_to_doc,
    tc_value_doc, to_json_string, trajectory_from_doc, GraphSummaryDoc, PlanDoc, TcValueDoc,
};
use treeplan::motion::check_collision_free;
use treeplan::num::frac_from_f64_snapped;
use treeplan::oracle;
use treeplan::planner;
use treeplan::random::{continuity_probe, random_plan, BumpParams};

#[derive(Parser)]
#[command(
    name = "treeplan",
    about = "Collision-free motion planning on tree networks, with complexity invariants and a discrete cross-check oracle",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a collision-free motion between two configurations on a tree.
    Plan {
        /// Graph document (JSON).
        #[arg(long)]
        graph: PathBuf,
        /// Root vertex id (must be univalent).
        #[arg(long)]
        root: String,
        /// Start configuration document.
        #[arg(long)]
        from: PathBuf,
        /// Goal configuration document.
        #[arg(long)]
        to: PathBuf,
        /// Write the plan here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-parse the emitted document and re-run the exact collision
        /// check on it.
        #[arg(long)]
        recheck: bool,
    },
    /// Emit a (2m+1)-valued random plan between two configurations.
    RandomPlan {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Bump radius around essential vertices, in length units
        /// (default: a tenth of the shortest edge).
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        recheck: bool,
    },
    /// Report complexity values for a graph and, with --agents, for its
    /// n-agent configuration space.
    Tc {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        agents: Option<usize>,
    },
    /// Circle counts, pair-complex cells and essential vertices of a
    /// rooted tree.
    Analyze {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        root: String,
    },
    /// Run the discrete verification suite and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "default")]
        suite: String,
        /// Also fuzz this many planner instances against the exact
        /// collision check.
        #[arg(long)]
        fuzz: Option<usize>,
        /// Seed for the fuzz rows and the continuity probe row.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Add a random-planner continuity probe row with this many trials.
        #[arg(long)]
        probe: Option<usize>,
    },
    /// Cell counts of the discretized configuration complex.
    Discretize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        subdivision: usize,
        /// Build the unordered (agents indistinguishable) variant.
        #[arg(long)]
        unordered: bool,
    },
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    code: &'a str,
    message: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprint!(
                "{}",
                to_json_string(&ErrorDoc {
                    error: ErrorBody {
                        code: e.code(),
                        message: e.to_string(),
                    },
                })
            );
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

fn load_tree(graph_path: &Path, root: &str) -> Result<RootedTree, Error> {
    let graph = parse_graph(&read(graph_path)?)?;
    let root = graph
        .vertex_by_name(root)
        .ok_or_else(|| Error::Validation(format!("unknown root vertex {root:?}")))?;
    RootedTree::new(graph, root)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Plan {
            graph,
            root,
            from,
            to,
            out,
            recheck,
        } => {
            let tree = load_tree(&graph, &root)?;
            let a = parse_configuration(&tree, &read(&from)?)?;
            let b = parse_configuration(&tree, &read(&to)?)?;
            let stages = planner::plan(&tree, &a, &b)?;
            let doc = plan_to_doc(&tree, &stages);
            let text = to_json_string(&doc);
            emit(&out, &text)?;
            if recheck {
                let parsed: PlanDoc =
                    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                let combined = trajectory_from_doc(&tree, &parsed.combined)?;
                let verdict = check_collision_free(&tree, &combined)?;
                let endpoints = combined.endpoints(&tree)?;
                if !verdict.is_clear() || endpoints != (a, b) {
                    eprintln!("recheck: FAILED");
                    return Ok(ExitCode::from(2));
                }
                eprintln!("recheck: clear");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::RandomPlan {
            graph,
            root,
            from,
            to,
            eps,
            out,
            recheck,
        } => {
            let tree = load_tree(&graph, &root)?;
            let a = parse_configuration(&tree, &read(&from)?)?;
            let b = parse_configuration(&tree, &read(&to)?)?;
            let bump = match eps {
                Some(x) => BumpParams::new(
                    &tree,
                    frac_from_f64_snapped(x)
                        .ok_or_else(|| Error::Validation(format!("eps {x} is not finite")))?,
                )?,
                None => BumpParams::default_for(&tree),
            };
            let rp = random_plan(&tree, &a, &b, &bump)?;
            let doc = random_plan_to_doc(&tree, &rp);
            let text = to_json_string(&doc);
            emit(&out, &text)?;
            if recheck {
                let parsed: io::RandomPlanDoc =
                    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
                for entry in &parsed.entries {
                    let tr = trajectory_from_doc(&tree, &entry.trajectory)?;
                    if !check_collision_free(&tree, &tr)?.is_clear() {
                        eprintln!("recheck: FAILED");
                        return Ok(ExitCode::from(2));
                    }
                }
                eprintln!("recheck: clear");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tc { graph, agents } => {
            let g = parse_graph(&read(&graph)?)?;
            let doc = tc_command_doc(&g, agents)?;
            print!("{}", to_json_string(&doc));
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { graph, root } => {
            let tree = load_tree(&graph, &root)?;
            let doc = analyze_doc(&tree)?;
            print!("{}", to_json_string(&doc));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            fuzz,
            seed,
            probe,
        } => {
            if suite != "default" {
                return Err(Error::Validation(format!("unknown suite {suite:?}")));
            }
            let mut rows = oracle::verification_rows()?;
            if let Some(count) = fuzz {
                rows.push(fuzz_row(count, seed)?);
            }
            if let Some(trials) = probe {
                rows.push(probe_row(trials, seed)?);
            }
            let mut all_pass = true;
            for row in &rows {
                let mark = if row.pass { "PASS" } else { "FAIL" };
                all_pass &= row.pass;
                println!("{mark}  {:<48} {}", row.name, row.detail);
            }
            println!(
                "{} of {} checks passed",
                rows.iter().filter(|r| r.pass).count(),
                rows.len()
            );
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Discretize {
            graph,
            agents,
            subdivision,
            unordered,
        } => {
            let g = parse_graph(&read(&graph)?)?;
            let complex = oracle::build_complex(&g, agents, subdivision, !unordered)?;
            let components = complex.connected_components();
            let doc = DiscretizeDoc {
                input: graph_summary_doc(&g),
                agents,
                subdivision,
                ordered: !unordered,
                cells_by_dim: complex.counts_by_dim().to_vec(),
                euler_characteristic: complex.euler_characteristic(),
                components,
                // The Euler route to b1 is only valid where the space is
                // homotopy equivalent to a graph: one or two agents.
                betti1_via_euler: if agents <= 2 {
                    complex.betti1_via_euler().ok()
                } else {
                    None
                },
                citations: vec!["discretized-configuration-complex".into()],
            };
            print!("{}", to_json_string(&doc));
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct TcCommandDoc {
    input: GraphSummaryDoc,
    graph_tc: TcValueDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    agents: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    configuration_tc: Option<TcValueDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    configuration_upper_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn tc_command_doc(g: &Graph, agents: Option<usize>) -> Result<TcCommandDoc, Error> {
    let mut doc = TcCommandDoc {
        input: graph_summary_doc(g),
        graph_tc: tc_value_doc(&tc_graph(g)),
        agents,
        configuration_tc: None,
        configuration_upper_bound: None,
        note: None,
    };
    let Some(n) = agents else {
        return Ok(doc);
    };
    doc.configuration_upper_bound = tc_conf_upper(g, n).ok();
    if n <= 1 {
        // One agent moves on the graph itself.
        doc.configuration_tc = Some(tc_value_doc(&tc_graph(g)));
        return Ok(doc);
    }
    if let Some(known) = detect_known(g, n) {
        doc.configuration_tc = Some(tc_value_doc(&TcReport {
            kind: TcKind::Exact(known.tc),
            justification: Justification::KnownSurfaceValue,
        }));
        doc.note = Some(format!("{}: {}", known.graph, known.note));
        return Ok(doc);
    }
    if g.is_tree() && g.essential_count() >= 1 {
        doc.configuration_tc = Some(tc_value_doc(&tc_conf_tree(g, n)?));
        return Ok(doc);
    }
    if g.essential_count() == 0 {
        doc.note = Some(
            "no essential vertex: the multi-agent configuration space may be disconnected; \
             no value reported"
                .into(),
        );
        return Ok(doc);
    }
    // General graph: only the upper bound is claimed.
    doc.configuration_tc = Some(tc_value_doc(&TcReport {
        kind: TcKind::Interval {
            lower: 1,
            upper: 2 * g.essential_count() + 1,
        },
        justification: Justification::UpperBoundOnly,
    }));
    Ok(doc)
}

#[derive(Serialize)]
struct AnalyzeDoc {
    input: GraphSummaryDoc,
    root: String,
    circle_count_ordered_pairs: usize,
    circle_count_unordered_pairs: usize,
    pair_complex: PairComplexDoc,
    citations: Vec<String>,
}

#[derive(Serialize)]
struct PairComplexDoc {
    vertices: [&'static str; 2],
    cell_count: usize,
    rank: usize,
    cells: Vec<PairCellDoc>,
}

#[derive(Serialize)]
struct PairCellDoc {
    vertex: String,
    labels: [String; 2],
    swap: usize,
}

fn analyze_doc(tree: &RootedTree) -> Result<AnalyzeDoc, Error> {
    let complex = build_pair_complex(tree)?;
    let cells = complex
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| PairCellDoc {
            vertex: tree.vertex_name(c.vertex).to_string(),
            labels: [
                tree.edge(c.labels.0).name().to_string(),
                tree.edge(c.labels.1).name().to_string(),
            ],
            swap: complex.involution(i),
        })
        .collect();
    Ok(AnalyzeDoc {
        input: graph_summary_doc(tree.graph()),
        root: tree.vertex_name(tree.root()).to_string(),
        circle_count_ordered_pairs: circle_count_ordered_pair(tree)?,
        circle_count_unordered_pairs: circle_count_unordered_pair(tree)?,
        pair_complex: PairComplexDoc {
            vertices: ["A", "B"],
            cell_count: complex.cell_count(),
            rank: complex.rank(),
            cells,
        },
        citations: vec![
            "two-agent-circle-counts".into(),
            "two-vertex-pair-complex".into(),
        ],
    })
}

#[derive(Serialize)]
struct DiscretizeDoc {
    input: GraphSummaryDoc,
    agents: usize,
    subdivision: usize,
    ordered: bool,
    cells_by_dim: Vec<usize>,
    euler_characteristic: i64,
    components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    betti1_via_euler: Option<i64>,
    citations: Vec<String>,
}

/// Fuzzes the staged planner: random trees with one to three essential
/// vertices, random endpoint pairs, exact collision check and exact
/// endpoint equality on every combined plan.
fn fuzz_row(count: usize, seed: u64) -> Result<oracle::SuiteRow, Error> {
    let mut rng = gen::rng(seed);
    let mut failures = 0usize;
    for i in 0..count {
        let m = 1 + i % 3;
        let n = 2 + (i / 3) % (2 * m + 1);
        let tree = gen::random_tree(&mut rng, m);
        let a = gen::random_configuration(&mut rng, &tree, n, 0.25);
        let b = gen::random_configuration(&mut rng, &tree, n, 0.25);
        let stages = planner::plan(&tree, &a, &b)?;
        let clear = check_collision_free(&tree, &stages.combined)?.is_clear();
        let endpoints = stages.combined.endpoints(&tree)?;
        if !clear || endpoints != (a, b) {
            failures += 1;
        }
    }
    Ok(oracle::SuiteRow {
        name: format!("planner fuzz ({count} instances, seed {seed})"),
        pass: failures == 0,
        detail: format!("{failures} failure(s)"),
    })
}

/// Random-planner continuity probe row on the Y-tree.
fn probe_row(trials: usize, seed: u64) -> Result<oracle::SuiteRow, Error> {
    let tree = treeplan::suite::rooted(treeplan::suite::y_tree());
    let eps = BumpParams::default_for(&tree);
    let report = continuity_probe(&tree, seed, trials, &eps)?;
    Ok(oracle::SuiteRow {
        name: format!("random-planner continuity probe ({trials} trials)"),
        pass: report.monotone_nonincreasing() && report.shrinks_overall(),
        detail: format!(
            "max deviations {:?}",
            report
                .max_deviation
                .iter()
                .map(treeplan::num::frac_to_f64)
                .collect::<Vec<_>>()
        ),
    })
}
