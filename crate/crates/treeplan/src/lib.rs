//! Collision-free motion planning for labeled point agents on tree
//! networks, with the complexity invariants of the underlying
//! configuration spaces and an independent discrete cross-check.
//!
//! Everything is exact: positions, times and probabilities are rational
//! numbers, so "collision-free" and "these endpoints" are statements the
//! library proves about its own output rather than samples.
//!
//! ## What is here
//!
//! - [`graph`]: metric graphs, rooted trees, points, configurations,
//!   the root-oriented partial order and subdivision.
//! - [`motion`]: piecewise-linear trajectories: concatenation,
//!   reversal, canonical re-timing, the exact collision checker and the
//!   exact supremum distance between motions.
//! - [`planner`]: the staged planner: descend every agent into
//!   canonical root-edge slots, permute through two buffer edges at the
//!   essential vertex nearest the root, slide, and replay the goal's
//!   descent backwards; plus the stratum/domain-index machinery that
//!   classifies inputs into `2m + 1` continuity classes.
//! - [`invariants`]: closed-form complexity values: the graph formula,
//!   the two-agent tree formula, the many-agent exact value, circle
//!   counts, the two-vertex pair complex with its label-swap involution,
//!   wedge counts for stars and the recorded surface values.
//! - [`oracle`]: discretized configuration complexes over subdivided
//!   graphs: connectivity by search and first Betti numbers by Euler
//!   characteristic, used to cross-check every formula above.
//! - [`random`]: multi-valued random plans: exact bump-function
//!   probabilities over `2m + 1` entries, snapped plans per stratum
//!   class and a continuity probe.
//! - [`gen`]: seeded random trees, configurations and perturbations
//!   for tests and probes.
//! - [`io`]: JSON documents with exact rational fields; [`suite`]:
//!   the named graphs used across examples and verification.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p treeplan --example plan_swap          # staged planning + exact checking
//! cargo run -p treeplan --example random_plan_bumps  # probability mass near vertices
//! cargo run -p treeplan --example tc_values          # complexity values across graphs
//! cargo run -p treeplan --example analyze_tree       # pair complex and circle counts
//! cargo run -p treeplan --example verify_oracle      # discrete cross-check suite
//! cargo run -p treeplan --example discretize_counts  # complex cell counts
//! ```
//!
//! The same functionality is scriptable through the `treeplan` binary
//! (`plan`, `random-plan`, `tc`, `analyze`, `verify`, `discretize`).

pub mod error;
pub mod gen;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod motion;
pub mod num;
pub mod oracle;
pub mod planner;
pub mod random;
pub mod suite;

pub use error::{Error, Result};
pub use graph::{Configuration, Graph, GraphPoint, RootedTree};
pub use motion::{CollisionCertificate, Trajectory};
pub use planner::PlanStages;
pub use random::RandomPlan;
