//! Cell counts of discretized configuration complexes, and why the
//! Euler characteristic recovers the circle counts.
//!
//! ```bash
//! cargo run -p treeplan --example discretize_counts
//! ```

use treeplan::oracle::build_complex;
use treeplan::suite::{single_edge, y_tree};

fn main() -> treeplan::Result<()> {
    println!("Y-tree, two labeled agents:");
    for subdivision in [3usize, 4, 5] {
        let complex = build_complex(&y_tree(), 2, subdivision, true)?;
        println!(
            "  subdivision {subdivision}: cells {:?}, chi = {}, components = {}, b1 = {}",
            complex.counts_by_dim(),
            complex.euler_characteristic(),
            complex.connected_components(),
            complex.betti1_via_euler()?
        );
    }

    println!("\ninterval, two labeled agents (disconnected):");
    let complex = build_complex(&single_edge(), 2, 3, true)?;
    println!(
        "  cells {:?}, components = {}",
        complex.counts_by_dim(),
        complex.connected_components()
    );

    println!("\nthree agents need subdivision >= 4:");
    let err = build_complex(&y_tree(), 3, 3, true).unwrap_err();
    println!("  subdivision 3 -> {err}");
    let ok = build_complex(&y_tree(), 3, 4, true)?;
    println!(
        "  subdivision 4 -> cells {:?}, components = {}",
        ok.counts_by_dim(),
        ok.connected_components()
    );
    Ok(())
}
