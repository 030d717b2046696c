//! Closed-form complexity invariants of configuration spaces on graphs.
//!
//! Values are reported as exact numbers or as intervals, each tagged with
//! the rule that produced it, so downstream output can cite its source.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, RootedTree, VertexId};

/// Exactness of a reported value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TcKind {
    Exact(usize),
    Interval { lower: usize, upper: usize },
}

/// Which rule produced a TC value.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Justification {
    GraphFormula,
    TreePairFormula,
    MainTheorem,
    UpperBoundOnly,
    KnownSurfaceValue,
}

impl Justification {
    pub fn label(self) -> &'static str {
        match self {
            Justification::GraphFormula => "graph-formula",
            Justification::TreePairFormula => "tree-pair-formula",
            Justification::MainTheorem => "main-theorem",
            Justification::UpperBoundOnly => "upper-bound-only",
            Justification::KnownSurfaceValue => "known-surface-value",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TcReport {
    pub kind: TcKind,
    pub justification: Justification,
}

impl TcReport {
    pub fn lower(&self) -> usize {
        match self.kind {
            TcKind::Exact(v) => v,
            TcKind::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match self.kind {
            TcKind::Exact(v) => v,
            TcKind::Interval { upper, .. } => upper,
        }
    }
}

/// Topological complexity of a connected graph itself: 1, 2 or 3 as the
/// first Betti number is 0, 1 or at least 2.
pub fn tc_graph(g: &Graph) -> TcReport {
    let value = match g.first_betti() {
        0 => 1,
        1 => 2,
        _ => 3,
    };
    TcReport {
        kind: TcKind::Exact(value),
        justification: Justification::GraphFormula,
    }
}

/// Upper bound `2m + 1` for the n-agent configuration space of a connected
/// graph with `m >= 1` essential vertices; independent of `n`.
pub fn tc_conf_upper(g: &Graph, _n: usize) -> Result<usize> {
    let m = g.essential_count();
    if m == 0 {
        return Err(Error::NoEssentialVertex);
    }
    Ok(2 * m + 1)
}

/// Is the tree homeomorphic to the letter Y: one essential vertex of
/// degree exactly 3? (Suppressing degree-2 vertices then yields the
/// 3-star, so the test is homeomorphism-invariant.)
pub fn is_y_homeomorph(g: &Graph) -> bool {
    g.is_tree() && {
        let essential = g.essential_vertices();
        essential.len() == 1 && g.degree(essential[0]) == 3
    }
}

/// Exact TC of the n-agent configuration space of a tree where the
/// known rules decide it, an interval `[3, 2m+1]` otherwise.
///
/// - `n = 2`: exactly 2 for Y-homeomorphs, 3 for every other tree.
/// - `n >= 2m`: exactly `2m + 1` (for `n = 2` this overlaps consistently
///   with the previous rule).
/// - `2 < n < 2m`: undecided here; reported as the interval.
pub fn tc_conf_tree(g: &Graph, n: usize) -> Result<TcReport> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let m = g.essential_count();
    if m == 0 {
        return Err(Error::NoEssentialVertex);
    }
    if n < 2 {
        return Err(Error::Validation(format!("need at least 2 agents, got {n}")));
    }
    if n == 2 {
        let value = if is_y_homeomorph(g) { 2 } else { 3 };
        return Ok(TcReport {
            kind: TcKind::Exact(value),
            justification: Justification::TreePairFormula,
        });
    }
    if n >= 2 * m {
        return Ok(TcReport {
            kind: TcKind::Exact(2 * m + 1),
            justification: Justification::MainTheorem,
        });
    }
    Ok(TcReport {
        kind: TcKind::Interval {
            lower: 3,
            upper: 2 * m + 1,
        },
        justification: Justification::UpperBoundOnly,
    })
}

fn pair_cell_sum(g: &Graph) -> usize {
    g.vertices()
        .map(|v| {
            let eta = g.degree(v);
            if eta >= 3 {
                (eta - 1) * (eta - 2)
            } else {
                0
            }
        })
        .sum()
}

/// Number of circles in the wedge model of the ordered two-agent space of
/// a tree: `sum_v (eta(v)-1)(eta(v)-2) - 1`.
pub fn circle_count_ordered_pair(g: &Graph) -> Result<usize> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.essential_count() == 0 {
        return Err(Error::NoEssentialVertex);
    }
    Ok(pair_cell_sum(g) - 1)
}

/// Number of circles for the unordered two-agent space:
/// `(1/2) sum_v (eta(v)-1)(eta(v)-2)`; each summand is even.
pub fn circle_count_unordered_pair(g: &Graph) -> Result<usize> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.essential_count() == 0 {
        return Err(Error::NoEssentialVertex);
    }
    let sum = pair_cell_sum(g);
    debug_assert!(sum % 2 == 0);
    Ok(sum / 2)
}

/// One-dimensional two-vertex model of the ordered two-agent space.
///
/// One cell per (essential vertex, ordered pair of distinct ascending
/// edges); the agent-swap involution exchanges the two vertices and the
/// two labels of each cell.
#[derive(Clone, Debug)]
pub struct PairComplex {
    cells: Vec<PairCell>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairCell {
    pub vertex: VertexId,
    pub labels: (EdgeId, EdgeId),
}

impl PairComplex {
    pub fn cells(&self) -> &[PairCell] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Circles in the wedge the model collapses to: cells minus one.
    pub fn rank(&self) -> usize {
        self.cells.len() - 1
    }

    /// Index of the cell with swapped labels.
    pub fn involution(&self, cell: usize) -> usize {
        let c = &self.cells[cell];
        let swapped = PairCell {
            vertex: c.vertex,
            labels: (c.labels.1, c.labels.0),
        };
        self.cells
            .iter()
            .position(|x| *x == swapped)
            .expect("label swap stays in the complex")
    }
}

/// Builds the two-vertex model from a rooted tree.
pub fn build_pair_complex(tree: &RootedTree) -> Result<PairComplex> {
    if tree.essential_count() == 0 {
        return Err(Error::NoEssentialVertex);
    }
    let mut cells = Vec::new();
    for v in tree.essential_vertices() {
        let ups = tree.ascending_edges(v);
        for &ei in &ups {
            for &ej in &ups {
                if ei != ej {
                    cells.push(PairCell {
                        vertex: v,
                        labels: (ei, ej),
                    });
                }
            }
        }
    }
    Ok(PairComplex { cells })
}

/// Variant selector for [`star_wedge_circles`].
///
/// `Printed` evaluates the published closed form
/// `1 + [(n-1)(eta-2) - 1] * (n+eta+2)! / (eta-1)!`. That form disagrees
/// with the two-agent circle counts (6721 against 5 at `eta = 4, n = 2`),
/// so it is kept only for reference. `Corrected` replaces the factorial
/// argument by `(n+eta-2)!`, which matches the circle counts and the
/// discrete cross-check at `n = 2` and is the default everywhere.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WedgeVariant {
    Printed,
    Corrected,
}

/// Number of circles in the wedge describing the n-agent space of a star
/// with `eta >= 3` edges, in either formula variant. Arbitrary precision:
/// the factorials overflow machine integers quickly.
pub fn star_wedge_circles(eta: u64, n: u64, variant: WedgeVariant) -> BigInt {
    assert!(eta >= 3 && n >= 2);
    let bracket = BigInt::from((n - 1) * (eta - 2)) - BigInt::from(1u8);
    let top = match variant {
        WedgeVariant::Printed => n + eta + 2,
        WedgeVariant::Corrected => n + eta - 2,
    };
    // (top)! / (eta-1)! as the rising product eta * (eta+1) * ... * top.
    let mut product = BigInt::from(1u8);
    for k in eta..=top {
        product *= BigInt::from(k);
    }
    BigInt::from(1u8) + bracket * product
}

/// A recorded exact value with its provenance note.
#[derive(Clone, Copy, Debug)]
pub struct KnownValue {
    pub graph: &'static str,
    pub agents: usize,
    pub tc: usize,
    pub note: &'static str,
}

/// Exact values that follow from surface identifications rather than the
/// tree machinery.
pub fn known_values() -> &'static [KnownValue] {
    &[
        KnownValue {
            graph: "K5",
            agents: 2,
            tc: 5,
            note: "two-agent space is a closed orientable surface of genus 6",
        },
        KnownValue {
            graph: "K3,3",
            agents: 2,
            tc: 5,
            note: "two-agent space is a closed orientable surface of genus 4",
        },
    ]
}

pub fn lookup_known(graph: &str, agents: usize) -> Option<&'static KnownValue> {
    known_values()
        .iter()
        .find(|k| k.graph == graph && k.agents == agents)
}

/// Is the graph the complete graph on five vertices?
pub fn is_k5(g: &Graph) -> bool {
    g.vertex_count() == 5 && g.edge_count() == 10
}

/// Is the graph the complete bipartite graph on two parts of three?
/// (3-regular, 6 vertices, 9 edges and bipartite forces it.)
pub fn is_k33(g: &Graph) -> bool {
    if g.vertex_count() != 6 || g.edge_count() != 9 {
        return false;
    }
    if g.vertices().any(|v| g.degree(v) != 3) {
        return false;
    }
    // Two-color by BFS.
    let mut color = vec![None; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([VertexId(0)]);
    color[0] = Some(false);
    while let Some(v) = queue.pop_front() {
        for &(_, w) in g.incident(v) {
            match color[w.0] {
                None => {
                    color[w.0] = Some(!color[v.0].unwrap());
                    queue.push_back(w);
                }
                Some(c) => {
                    if c == color[v.0].unwrap() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Structural lookup: matches a graph against the known-value table.
pub fn detect_known(g: &Graph, agents: usize) -> Option<&'static KnownValue> {
    if is_k5(g) {
        lookup_known("K5", agents)
    } else if is_k33(g) {
        lookup_known("K3,3", agents)
    } else {
        None
    }
}
