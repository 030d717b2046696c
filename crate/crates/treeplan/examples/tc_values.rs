//! Complexity values across the named graphs: the graph formula, the
//! two-agent tree formula, the many-agent exact value and the recorded
//! surface cases.
//!
//! ```bash
//! cargo run -p treeplan --example tc_values
//! ```

use treeplan::invariants::{
    detect_known, tc_conf_tree, tc_conf_upper, tc_graph, TcKind,
};
use treeplan::suite;

fn show(kind: TcKind) -> String {
    match kind {
        TcKind::Exact(v) => format!("{v}"),
        TcKind::Interval { lower, upper } => format!("[{lower}, {upper}]"),
    }
}

fn main() -> treeplan::Result<()> {
    println!("graph complexity (1 / 2 / 3 by first Betti number):");
    for (name, g) in [
        ("Y-tree", suite::y_tree()),
        ("triangle", suite::triangle()),
        ("figure-eight", suite::figure_eight()),
    ] {
        let report = tc_graph(&g);
        println!(
            "  {name:<14} b1 = {}  ->  TC = {}",
            g.first_betti(),
            show(report.kind)
        );
    }

    println!("\nn-agent spaces on trees:");
    for (name, g) in suite::verification_trees() {
        let upper = tc_conf_upper(&g, 2)?;
        print!("  {name:<12} m = {}  upper 2m+1 = {upper} ", g.essential_count());
        for n in [2usize, 3, 4, 6] {
            let report = tc_conf_tree(&g, n)?;
            print!(" n={n}: {:<7}", format!("{} ({})", show(report.kind), report.justification.label().chars().take(4).collect::<String>()));
        }
        println!();
    }

    println!("\nrecorded surface values:");
    for (name, g) in [("K5", suite::k5()), ("K3,3", suite::k33())] {
        let known = detect_known(&g, 2).expect("table covers both");
        println!("  TC of two agents on {name} = {} ({})", known.tc, known.note);
    }
    Ok(())
}
