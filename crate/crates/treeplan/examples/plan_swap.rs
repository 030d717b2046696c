//! Plan a collision-free swap of two agents on the Y-tree and inspect
//! the staged output.
//!
//! ```bash
//! cargo run -p treeplan --example plan_swap
//! ```

use treeplan::graph::{Configuration, GraphPoint};
use treeplan::motion::check_collision_free;
use treeplan::num::{frac, frac_to_f64};
use treeplan::planner::plan;
use treeplan::suite::{rooted, y_tree};

fn main() -> treeplan::Result<()> {
    let tree = rooted(y_tree());
    let ca = tree.edge_by_name("ca").unwrap();
    let cb = tree.edge_by_name("cb").unwrap();

    // Agent 0 halfway up branch a, agent 1 halfway up branch b; the goal
    // swaps them.
    let start = Configuration::new(
        &tree,
        vec![
            GraphPoint::on_edge(&tree, ca, frac(1, 2))?,
            GraphPoint::on_edge(&tree, cb, frac(1, 2))?,
        ],
    )?;
    let goal = Configuration::new(
        &tree,
        vec![
            GraphPoint::on_edge(&tree, cb, frac(1, 2))?,
            GraphPoint::on_edge(&tree, ca, frac(1, 2))?,
        ],
    )?;

    let stages = plan(&tree, &start, &goal)?;
    println!("domain index: {}", stages.domain_index);
    for (label, tr) in [
        ("descentA", &stages.descent_a),
        ("permute", &stages.permute),
        ("slide", &stages.slide),
        ("descentB", &stages.descent_b),
        ("combined", &stages.combined),
    ] {
        let breakpoints: usize = tr.agents().iter().map(|s| s.len()).sum();
        println!("stage {label:<9} {breakpoints:3} breakpoints");
    }

    // The checker solves exact linear equations; "clear" is a certificate.
    let verdict = check_collision_free(&tree, &stages.combined)?;
    println!("collision check: {verdict:?}");

    println!("\nagent 0 schedule through the combined plan:");
    for b in stages.combined.agent(0) {
        let position = match &b.point {
            GraphPoint::Vertex(v) => format!("vertex {}", tree.vertex_name(*v)),
            GraphPoint::Interior { edge, t } => format!(
                "edge {} at t = {:.4}",
                tree.edge(*edge).name(),
                frac_to_f64(t)
            ),
        };
        println!("  t = {:.4}  {position}", frac_to_f64(&b.time));
    }
    Ok(())
}
