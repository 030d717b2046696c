//! Discrete configuration complexes: the independent cross-check.
//!
//! The complex of a graph at agent count `n` is built over the
//! `subdivision`-fold subdivided graph. Its d-cells are n-element sets of
//! constituent cells of the subdivided graph (vertices or closed edges,
//! exactly `d` of them edges) that are pairwise *remote*: their closures
//! are disjoint and no graph edge runs between them. Remoteness (rather
//! than bare closure-disjointness) keeps face relations consistent with
//! the rule that two agents may not occupy adjacent vertices.
//!
//! Connectivity comes from breadth-first search over the 0-cells;
//! first Betti numbers come from the Euler characteristic, which is valid
//! for the connected, homotopy-one-dimensional cases this oracle checks
//! (two agents on trees, or graphs themselves).

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Constituent of a complex cell: a vertex or a closed edge of the
/// subdivided graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Constituent {
    Vertex(usize),
    Edge(usize),
}

/// Discretized configuration complex of `n` agents.
#[derive(Clone, Debug)]
pub struct DiscreteComplex {
    n: usize,
    ordered: bool,
    subdivided: Graph,
    /// Support sets of the cells, grouped by dimension (= number of edge
    /// constituents). For the ordered variant every set stands for `n!`
    /// cells; the counts reflect that.
    cells_by_dim: Vec<Vec<Vec<Constituent>>>,
    counts: Vec<usize>,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Pairwise compatibility of constituents: closures disjoint and not
/// joined by an edge.
fn remote(g: &Graph, a: Constituent, b: Constituent) -> bool {
    let vertex_sets = |c: Constituent| -> Vec<VertexId> {
        match c {
            Constituent::Vertex(v) => vec![VertexId(v)],
            Constituent::Edge(e) => {
                let (x, y) = g.edge(crate::graph::EdgeId(e)).ends();
                vec![x, y]
            }
        }
    };
    for x in vertex_sets(a) {
        for y in vertex_sets(b) {
            if x == y || g.edge_between(x, y).is_some() {
                return false;
            }
        }
    }
    true
}

/// Builds the complex of all remote n-element constituent sets over the
/// subdivided graph. Requires `subdivision >= n + 1`.
pub fn build_complex(
    g: &Graph,
    n: usize,
    subdivision: usize,
    ordered: bool,
) -> Result<DiscreteComplex> {
    if n == 0 {
        return Err(Error::Validation("need at least one agent".into()));
    }
    if subdivision < n + 1 {
        return Err(Error::SubdivisionTooCoarse {
            subdivision,
            required: n + 1,
        });
    }
    let subdivided = g.subdivide(subdivision);
    let nv = subdivided.vertex_count();
    let ne = subdivided.edge_count();
    let constituents: Vec<Constituent> = (0..nv)
        .map(Constituent::Vertex)
        .chain((0..ne).map(Constituent::Edge))
        .collect();
    let total = constituents.len();
    // Dense pairwise compatibility table.
    let mut table = vec![false; total * total];
    for i in 0..total {
        for j in i + 1..total {
            let ok = remote(&subdivided, constituents[i], constituents[j]);
            table[i * total + j] = ok;
            table[j * total + i] = ok;
        }
    }

    let mut cells_by_dim: Vec<Vec<Vec<Constituent>>> = vec![Vec::new(); n + 1];
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    // Depth-first enumeration of compatible index sets.
    fn recurse(
        start: usize,
        remaining: usize,
        total: usize,
        table: &[bool],
        constituents: &[Constituent],
        chosen: &mut Vec<usize>,
        out: &mut [Vec<Vec<Constituent>>],
    ) {
        if remaining == 0 {
            let set: Vec<Constituent> = chosen.iter().map(|&i| constituents[i]).collect();
            let dim = set
                .iter()
                .filter(|c| matches!(c, Constituent::Edge(_)))
                .count();
            out[dim].push(set);
            return;
        }
        for i in start..total {
            if chosen.iter().all(|&j| table[j * total + i]) {
                chosen.push(i);
                recurse(i + 1, remaining - 1, total, table, constituents, chosen, out);
                chosen.pop();
            }
        }
    }
    recurse(
        0,
        n,
        total,
        &table,
        &constituents,
        &mut chosen,
        &mut cells_by_dim,
    );

    let scale = if ordered { factorial(n) } else { 1 };
    let counts = cells_by_dim.iter().map(|cells| cells.len() * scale).collect();
    Ok(DiscreteComplex {
        n,
        ordered,
        subdivided,
        cells_by_dim,
        counts,
    })
}

impl DiscreteComplex {
    pub fn agent_count(&self) -> usize {
        self.n
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn subdivided_graph(&self) -> &Graph {
        &self.subdivided
    }

    /// Cell counts per dimension (ordered variant counts every labeling).
    pub fn counts_by_dim(&self) -> &[usize] {
        &self.counts
    }

    /// Support sets of the cells of one dimension.
    pub fn cell_sets(&self, dim: usize) -> &[Vec<Constituent>] {
        &self.cells_by_dim[dim]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(d, &c)| {
                let signed = c as i64;
                if d % 2 == 0 {
                    signed
                } else {
                    -signed
                }
            })
            .sum()
    }

    /// Number of components of the 1-skeleton.
    pub fn connected_components(&self) -> usize {
        let g = &self.subdivided;
        // Enumerate 0-cells as agent->vertex assignments.
        let mut states: Vec<Vec<usize>> = Vec::new();
        for set in &self.cells_by_dim[0] {
            let verts: Vec<usize> = set
                .iter()
                .map(|c| match c {
                    Constituent::Vertex(v) => *v,
                    Constituent::Edge(_) => unreachable!("0-cells hold vertices only"),
                })
                .collect();
            if self.ordered {
                permutations(&verts, &mut states);
            } else {
                states.push(verts.clone());
            }
        }
        let state_set: HashSet<Vec<usize>> = states.iter().cloned().collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(states.len());
        let mut components = 0usize;
        for start in &states {
            if seen.contains(start) {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(state) = queue.pop_front() {
                for agent in 0..self.n {
                    let from = state[agent];
                    for &(edge, to) in g.incident(VertexId(from)) {
                        // The move cell {edge} + the parked agents must be
                        // remote; then both endpoints are too.
                        let movable = state.iter().enumerate().all(|(other, &v)| {
                            other == agent
                                || remote(g, Constituent::Edge(edge.0), Constituent::Vertex(v))
                        });
                        if !movable {
                            continue;
                        }
                        let mut next = state.clone();
                        next[agent] = to.0;
                        if !self.ordered {
                            next.sort_unstable();
                        }
                        debug_assert!(
                            state_set.contains(&next),
                            "moves stay inside the complex"
                        );
                        if !seen.contains(&next) {
                            seen.insert(next.clone());
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        components
    }

    /// First Betti number via the Euler characteristic: `1 - chi` for a
    /// connected complex. Valid when the underlying space is homotopy
    /// equivalent to a graph (two agents on a tree, or one agent anywhere);
    /// for higher agent counts use the connectivity queries only.
    pub fn betti1_via_euler(&self) -> Result<i64> {
        if self.connected_components() != 1 {
            return Err(Error::NotConnected);
        }
        Ok(1 - self.euler_characteristic())
    }
}

fn permutations(items: &[usize], out: &mut Vec<Vec<usize>>) {
    let mut work = items.to_vec();
    heap_permutations(work.len(), &mut work, out);
}

fn heap_permutations(k: usize, work: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(work.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(k - 1, work, out);
        if k % 2 == 0 {
            work.swap(i, k - 1);
        } else {
            work.swap(0, k - 1);
        }
    }
}

/// One row of the verification table.
#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Runs the full oracle suite: Betti cross-checks of both two-agent
/// circle counts on the five verification trees, connectivity checks at
/// two and three agents (plus the interval and circle counterexamples),
/// and subdivision stability.
pub fn verification_rows() -> Result<Vec<SuiteRow>> {
    use crate::invariants::{circle_count_ordered_pair, circle_count_unordered_pair};
    use crate::suite;

    let mut rows = Vec::new();
    for (name, g) in suite::verification_trees() {
        // Ordered and unordered Betti cross-checks at n = 2.
        let ordered = build_complex(&g, 2, 3, true)?;
        let unordered = build_complex(&g, 2, 3, false)?;
        let b1_ordered = ordered.betti1_via_euler()?;
        let b1_unordered = unordered.betti1_via_euler()?;
        let want_ordered = circle_count_ordered_pair(&g)? as i64;
        let want_unordered = circle_count_unordered_pair(&g)? as i64;
        rows.push(SuiteRow {
            name: format!("{name}: ordered two-agent circles"),
            pass: b1_ordered == want_ordered,
            detail: format!(
                "b1 = {b1_ordered} (cells {:?}, chi {}), formula {want_ordered}",
                ordered.counts_by_dim(),
                ordered.euler_characteristic()
            ),
        });
        rows.push(SuiteRow {
            name: format!("{name}: unordered two-agent circles"),
            pass: b1_unordered == want_unordered,
            detail: format!(
                "b1 = {b1_unordered} (cells {:?}, chi {}), formula {want_unordered}",
                unordered.counts_by_dim(),
                unordered.euler_characteristic()
            ),
        });
        // Ordered chi doubles unordered chi at n = 2 (free agent swap).
        rows.push(SuiteRow {
            name: format!("{name}: ordered chi = 2 x unordered chi"),
            pass: ordered.euler_characteristic() == 2 * unordered.euler_characteristic(),
            detail: format!(
                "{} vs 2 x {}",
                ordered.euler_characteristic(),
                unordered.euler_characteristic()
            ),
        });
        // Connectivity at n = 2 and n = 3.
        for n in [2usize, 3] {
            let complex = build_complex(&g, n, n + 1, true)?;
            let components = complex.connected_components();
            rows.push(SuiteRow {
                name: format!("{name}: connected at n = {n}"),
                pass: components == 1,
                detail: format!("{components} component(s)"),
            });
        }
        // Stability: a finer subdivision changes nothing.
        let finer = build_complex(&g, 2, 5, true)?;
        rows.push(SuiteRow {
            name: format!("{name}: stability under finer subdivision"),
            pass: finer.betti1_via_euler()? == b1_ordered
                && finer.connected_components() == 1,
            detail: format!(
                "b1 at subdivision 5 = {}",
                finer.betti1_via_euler()?
            ),
        });
        let finer3 = build_complex(&g, 3, 6, true)?;
        rows.push(SuiteRow {
            name: format!("{name}: three-agent stability"),
            pass: finer3.connected_components() == 1,
            detail: format!(
                "{} component(s) at subdivision 6",
                finer3.connected_components()
            ),
        });
    }

    // The two standard disconnected cases.
    let interval = build_complex(&suite::single_edge(), 2, 3, true)?;
    rows.push(SuiteRow {
        name: "interval: two components at n = 2".into(),
        pass: interval.connected_components() == 2,
        detail: format!("{} component(s)", interval.connected_components()),
    });
    let circle = build_complex(&suite::triangle(), 3, 4, true)?;
    rows.push(SuiteRow {
        name: "circle: two components at n = 3".into(),
        pass: circle.connected_components() == 2,
        detail: format!("{} component(s)", circle.connected_components()),
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::*;

    #[test]
    fn interval_zero_cells() {
        // Path 0-1-2-3: ordered pairs of vertices at distance >= 2.
        let complex = build_complex(&single_edge(), 2, 3, true).unwrap();
        assert_eq!(complex.counts_by_dim()[0], 6);
        let unordered = build_complex(&single_edge(), 2, 3, false).unwrap();
        assert_eq!(unordered.counts_by_dim()[0], 3);
    }

    #[test]
    fn single_agent_complex_is_the_graph() {
        let complex = build_complex(&y_tree(), 1, 2, true).unwrap();
        let sub = y_tree().subdivide(2);
        assert_eq!(complex.counts_by_dim()[0], sub.vertex_count());
        assert_eq!(complex.counts_by_dim()[1], sub.edge_count());
        assert_eq!(complex.betti1_via_euler().unwrap(), 0);
    }

    #[test]
    fn ordered_counts_double_unordered() {
        for (_, g) in verification_trees() {
            let ordered = build_complex(&g, 2, 3, true).unwrap();
            let unordered = build_complex(&g, 2, 3, false).unwrap();
            for d in 0..=2 {
                assert_eq!(ordered.counts_by_dim()[d], 2 * unordered.counts_by_dim()[d]);
            }
        }
    }

    #[test]
    fn face_relations_consistent() {
        let complex = build_complex(&y_tree(), 2, 3, false).unwrap();
        let g = complex.subdivided_graph();
        for dim in 1..=2 {
            for set in complex.cell_sets(dim) {
                for (i, c) in set.iter().enumerate() {
                    let Constituent::Edge(e) = c else { continue };
                    let (x, y) = g.edge(crate::graph::EdgeId(*e)).ends();
                    for endpoint in [x, y] {
                        let mut face: Vec<Constituent> = set.clone();
                        face[i] = Constituent::Vertex(endpoint.0);
                        face.sort();
                        assert!(
                            complex.cell_sets(dim - 1).contains(&face),
                            "face of {set:?} missing"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_coarse_subdivision() {
        assert_eq!(
            build_complex(&y_tree(), 2, 2, true).unwrap_err(),
            Error::SubdivisionTooCoarse {
                subdivision: 2,
                required: 3
            }
        );
    }

    #[test]
    fn y_tree_two_agents_single_circle() {
        let ordered = build_complex(&y_tree(), 2, 3, true).unwrap();
        assert_eq!(ordered.betti1_via_euler().unwrap(), 1);
        let unordered = build_complex(&y_tree(), 2, 3, false).unwrap();
        assert_eq!(unordered.betti1_via_euler().unwrap(), 1);
    }

    #[test]
    fn connectivity_examples() {
        let interval = build_complex(&single_edge(), 2, 3, true).unwrap();
        assert_eq!(interval.connected_components(), 2);
        assert_eq!(interval.betti1_via_euler().unwrap_err(), Error::NotConnected);
        let y2 = build_complex(&y_tree(), 2, 3, true).unwrap();
        assert_eq!(y2.connected_components(), 1);
        let y3 = build_complex(&y_tree(), 3, 4, true).unwrap();
        assert_eq!(y3.connected_components(), 1);
        let circle3 = build_complex(&triangle(), 3, 4, true).unwrap();
        assert_eq!(circle3.connected_components(), 2);
        // Two agents on a circle can trade places around it.
        let circle2 = build_complex(&triangle(), 2, 3, true).unwrap();
        assert_eq!(circle2.connected_components(), 1);
    }

    #[test]
    fn suite_rows_all_pass() {
        let rows = verification_rows().unwrap();
        for row in &rows {
            assert!(row.pass, "{}: {}", row.name, row.detail);
        }
        assert!(rows.len() >= 32);
    }
}
