//! Random plans: how probability mass moves between entries as an agent
//! approaches an essential vertex.
//!
//! ```bash
//! cargo run -p treeplan --example random_plan_bumps
//! ```

use treeplan::graph::{Configuration, GraphPoint};
use treeplan::motion::check_collision_free;
use treeplan::num::{frac, frac_to_string};
use treeplan::random::{random_plan, BumpParams};
use treeplan::suite::{rooted, y_tree};

fn main() -> treeplan::Result<()> {
    let tree = rooted(y_tree());
    let ca = tree.edge_by_name("ca").unwrap();
    let cb = tree.edge_by_name("cb").unwrap();
    let eps = BumpParams::new(&tree, frac(1, 10))?;

    let goal = Configuration::new(
        &tree,
        vec![
            GraphPoint::on_edge(&tree, cb, frac(3, 4))?,
            GraphPoint::on_edge(&tree, ca, frac(3, 4))?,
        ],
    )?;

    // Slide agent 0 toward the center c; agent 1 stays far away.
    for (label, t) in [
        ("far from c (t = 1/2)", frac(1, 2)),
        ("at eps from c (t = 1/10)", frac(1, 10)),
        ("at eps/2 from c (t = 1/20)", frac(1, 20)),
        ("exactly on c (t = 0)", frac(0, 1)),
    ] {
        let start = Configuration::new(
            &tree,
            vec![
                GraphPoint::on_edge(&tree, ca, t)?,
                GraphPoint::on_edge(&tree, cb, frac(1, 2))?,
            ],
        )?;
        let rp = random_plan(&tree, &start, &goal, &eps)?;
        let probs: Vec<String> = rp
            .entries
            .iter()
            .map(|e| frac_to_string(&e.probability))
            .collect();
        println!("agent 0 {label:<26} p = [{}]", probs.join(", "));
        for (k, entry) in rp.entries.iter().enumerate() {
            if entry.probability > frac(0, 1) {
                let verdict = check_collision_free(&tree, &entry.trajectory)?;
                assert!(verdict.is_clear());
                println!(
                    "    entry {k}: collision-free, snapped strata {:?}",
                    entry.snapped
                );
            }
        }
    }
    println!("\nprobabilities always sum to 1 exactly and vary continuously;");
    println!("every positive-probability path is certified collision-free.");
    Ok(())
}
