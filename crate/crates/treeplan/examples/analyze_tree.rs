//! The two-vertex pair complex of a tree: cells labeled by ordered pairs
//! of ascending edges, the label-swap involution, and the circle counts
//! it encodes.
//!
//! ```bash
//! cargo run -p treeplan --example analyze_tree
//! ```

use treeplan::invariants::{
    build_pair_complex, circle_count_ordered_pair, circle_count_unordered_pair,
};
use treeplan::suite::{h_tree, rooted};

fn main() -> treeplan::Result<()> {
    let tree = rooted(h_tree());
    println!(
        "H-tree rooted at {}: essential vertices {:?}",
        tree.vertex_name(tree.root()),
        tree.essential_vertices()
            .iter()
            .map(|&v| tree.vertex_name(v))
            .collect::<Vec<_>>()
    );

    let complex = build_pair_complex(&tree)?;
    println!("\npair-complex cells (vertex, ordered ascending-edge pair):");
    for (i, cell) in complex.cells().iter().enumerate() {
        println!(
            "  cell {i}: at {} labels ({}, {})  swap -> cell {}",
            tree.vertex_name(cell.vertex),
            tree.edge(cell.labels.0).name(),
            tree.edge(cell.labels.1).name(),
            complex.involution(i)
        );
    }
    println!("\ncell count = {}", complex.cell_count());
    println!("wedge rank  = {} (cells - 1)", complex.rank());
    println!(
        "circle counts: ordered pairs = {}, unordered pairs = {}",
        circle_count_ordered_pair(&tree)?,
        circle_count_unordered_pair(&tree)?
    );
    Ok(())
}
