//! Run the discrete cross-check suite: circle-count formulas against
//! Euler characteristics of discretized configuration complexes, plus
//! the connectivity counterexamples.
//!
//! ```bash
//! cargo run -p treeplan --example verify_oracle
//! ```

use treeplan::oracle::verification_rows;

fn main() -> treeplan::Result<()> {
    let rows = verification_rows()?;
    let mut passed = 0;
    for row in &rows {
        let mark = if row.pass { "PASS" } else { "FAIL" };
        passed += usize::from(row.pass);
        println!("{mark}  {:<48} {}", row.name, row.detail);
    }
    println!("{passed} of {} checks passed", rows.len());
    assert_eq!(passed, rows.len());
    Ok(())
}
