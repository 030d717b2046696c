//! Metric graphs, rooted trees, points and configurations.
//!
//! A [`Graph`] is a finite connected simple graph with positive rational
//! edge lengths; it is the metric space the agents move on. A
//! [`RootedTree`] is an acyclic graph with a distinguished univalent root,
//! which induces the descending/ascending edge classification and the
//! "below" partial order used by the planner.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::num::{frac_int, Frac};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug)]
pub struct Edge {
    name: String,
    ends: (VertexId, VertexId),
    length: Frac,
}

impl Edge {
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn ends(&self) -> (VertexId, VertexId) {
        self.ends
    }
    pub fn length(&self) -> &Frac {
        &self.length
    }
}

/// Finite connected metric graph. Immutable after construction.
///
/// Vertices and edges are index-addressed; indices follow the
/// lexicographic order of the input names, which pins every "sorted by
/// id" contract to one deterministic order.
#[derive(Debug)]
pub struct Graph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    /// Per vertex: (edge, opposite endpoint), sorted by edge index.
    adjacency: Vec<Vec<(EdgeId, VertexId)>>,
    vertex_distances: OnceLock<Vec<Vec<Frac>>>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            vertex_names: self.vertex_names.clone(),
            edges: self.edges.clone(),
            adjacency: self.adjacency.clone(),
            vertex_distances: OnceLock::new(),
        }
    }
}

impl Graph {
    /// Builds and validates a graph from `(name)` vertices and
    /// `(name, end name, end name, length)` edges.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String, Frac)>,
    ) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::Validation("graph has no vertices".into()));
        }
        let mut vertex_names = vertices;
        vertex_names.sort();
        if vertex_names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate vertex id".into()));
        }
        let index: HashMap<&str, usize> = vertex_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();

        let mut resolved: Vec<Edge> = Vec::with_capacity(edges.len());
        for (name, a, b, length) in edges {
            let a = *index
                .get(a.as_str())
                .ok_or_else(|| Error::Validation(format!("edge {name} references unknown vertex {a}")))?;
            let b = *index
                .get(b.as_str())
                .ok_or_else(|| Error::Validation(format!("edge {name} references unknown vertex {b}")))?;
            if a == b {
                return Err(Error::Validation(format!("edge {name} is a self-loop")));
            }
            if !length.is_positive() {
                return Err(Error::Validation(format!("edge {name} has nonpositive length")));
            }
            resolved.push(Edge {
                name,
                ends: (VertexId(a), VertexId(b)),
                length,
            });
        }
        resolved.sort_by(|x, y| x.name.cmp(&y.name));
        if resolved.windows(2).any(|w| w[0].name == w[1].name) {
            return Err(Error::Validation("duplicate edge id".into()));
        }
        let mut seen_pairs = std::collections::HashSet::new();
        for e in &resolved {
            let (a, b) = e.ends;
            let key = (a.min(b), a.max(b));
            if !seen_pairs.insert(key) {
                return Err(Error::Validation(format!(
                    "parallel edge {} between {} and {}",
                    e.name, vertex_names[a.0], vertex_names[b.0]
                )));
            }
        }

        let mut adjacency = vec![Vec::new(); vertex_names.len()];
        for (i, e) in resolved.iter().enumerate() {
            adjacency[e.ends.0 .0].push((EdgeId(i), e.ends.1));
            adjacency[e.ends.1 .0].push((EdgeId(i), e.ends.0));
        }

        let graph = Graph {
            vertex_names,
            edges: resolved,
            adjacency,
            vertex_distances: OnceLock::new(),
        };
        if !graph.is_connected() {
            return Err(Error::Validation("graph is disconnected".into()));
        }
        Ok(graph)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.adjacency[v] {
                if !seen[w.0] {
                    seen[w.0] = true;
                    reached += 1;
                    stack.push(w.0);
                }
            }
        }
        reached == n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(VertexId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .binary_search_by(|e| e.name.as_str().cmp(name))
            .ok()
            .map(EdgeId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).map(EdgeId)
    }

    /// Incident `(edge, opposite endpoint)` pairs, sorted by edge index.
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adjacency[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.adjacency[a.0]
            .iter()
            .find(|&&(_, w)| w == b)
            .map(|&(e, _)| e)
    }

    /// Vertices of degree >= 3, in index (= lexicographic id) order.
    pub fn essential_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.degree(v) >= 3).collect()
    }

    /// Count of essential vertices.
    pub fn essential_count(&self) -> usize {
        self.vertices().filter(|&v| self.degree(v) >= 3).count()
    }

    /// First Betti number `|E| - |V| + 1` of a connected graph.
    pub fn first_betti(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count()
    }

    pub fn shortest_edge_length(&self) -> Frac {
        self.edges
            .iter()
            .map(|e| e.length.clone())
            .min()
            .expect("graph has at least one edge")
    }

    fn endpoint_param(&self, e: EdgeId, v: VertexId) -> Option<Frac> {
        let ends = self.edges[e.0].ends;
        if ends.0 == v {
            Some(Frac::zero())
        } else if ends.1 == v {
            Some(Frac::one())
        } else {
            None
        }
    }

    pub fn validate_point(&self, p: &GraphPoint) -> Result<()> {
        match p {
            GraphPoint::Vertex(v) => {
                if v.0 < self.vertex_count() {
                    Ok(())
                } else {
                    Err(Error::PointNotOnGraph(format!("vertex index {}", v.0)))
                }
            }
            GraphPoint::Interior { edge, t } => {
                if edge.0 >= self.edge_count() {
                    return Err(Error::PointNotOnGraph(format!("edge index {}", edge.0)));
                }
                if t <= &Frac::zero() || t >= &Frac::one() {
                    return Err(Error::PointNotOnGraph(format!(
                        "interior parameter {t} outside (0,1)"
                    )));
                }
                Ok(())
            }
        }
    }

    /// All-pairs vertex distances, computed on first use.
    pub fn vertex_distances(&self) -> &Vec<Vec<Frac>> {
        self.vertex_distances.get_or_init(|| {
            let n = self.vertex_count();
            // Floyd-Warshall; graphs in scope stay small.
            let mut dist: Vec<Vec<Option<Frac>>> = vec![vec![None; n]; n];
            for v in 0..n {
                dist[v][v] = Some(Frac::zero());
            }
            for e in &self.edges {
                let (a, b) = (e.ends.0 .0, e.ends.1 .0);
                let better = match &dist[a][b] {
                    Some(d) => e.length < *d,
                    None => true,
                };
                if better {
                    dist[a][b] = Some(e.length.clone());
                    dist[b][a] = Some(e.length.clone());
                }
            }
            for k in 0..n {
                for i in 0..n {
                    let dik = match &dist[i][k] {
                        Some(d) => d.clone(),
                        None => continue,
                    };
                    for j in 0..n {
                        if let Some(dkj) = &dist[k][j] {
                            let through = &dik + dkj;
                            let better = match &dist[i][j] {
                                Some(d) => through < *d,
                                None => true,
                            };
                            if better {
                                dist[i][j] = Some(through);
                            }
                        }
                    }
                }
            }
            dist.into_iter()
                .map(|row| row.into_iter().map(|d| d.expect("connected")).collect())
                .collect()
        })
    }

    /// Shortest-path metric distance between two points of the graph.
    pub fn point_distance(&self, x: &GraphPoint, y: &GraphPoint) -> Result<Frac> {
        self.validate_point(x)?;
        self.validate_point(y)?;
        let dist = self.vertex_distances();
        // Anchor form: a point is reachable through (vertex, linear offset) pairs.
        let anchors = |p: &GraphPoint| -> Vec<(usize, Frac)> {
            match p {
                GraphPoint::Vertex(v) => vec![(v.0, Frac::zero())],
                GraphPoint::Interior { edge, t } => {
                    let e = &self.edges[edge.0];
                    vec![
                        (e.ends.0 .0, t * &e.length),
                        (e.ends.1 .0, (Frac::one() - t) * &e.length),
                    ]
                }
            }
        };
        let mut best: Option<Frac> = None;
        for (u, du) in anchors(x) {
            for (v, dv) in anchors(y) {
                let candidate = &du + &dist[u][v] + &dv;
                if best.as_ref().is_none_or(|b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        // Direct within-edge route when both points are interior to one edge.
        if let (GraphPoint::Interior { edge: e, t: s }, GraphPoint::Interior { edge: f, t }) = (x, y)
        {
            if e == f {
                let direct = (s - t).abs() * &self.edges[e.0].length;
                if best.as_ref().is_none_or(|b| direct < *b) {
                    best = Some(direct);
                }
            }
        }
        Ok(best.expect("nonempty anchor sets"))
    }

    /// Replaces every edge by a path of `k` edges of length `len/k`.
    ///
    /// Homeomorphic to the input; preserves the essential vertices and the
    /// first Betti number. `k = 1` returns the graph unchanged.
    pub fn subdivide(&self, k: usize) -> Graph {
        assert!(k >= 1, "subdivision factor must be positive");
        if k == 1 {
            return self.clone();
        }
        let mut taken: std::collections::HashSet<String> =
            self.vertex_names.iter().cloned().collect();
        let fresh = |base: String, taken: &mut std::collections::HashSet<String>| -> String {
            let mut name = base;
            while taken.contains(&name) {
                name.push('+');
            }
            taken.insert(name.clone());
            name
        };
        let mut vertices = self.vertex_names.clone();
        let mut edges: Vec<(String, String, String, Frac)> = Vec::new();
        let mut edge_names: std::collections::HashSet<String> =
            self.edges.iter().map(|e| e.name.clone()).collect();
        for e in &self.edges {
            let piece_len = &e.length / frac_int(k as i64);
            let mut chain = vec![self.vertex_names[e.ends.0 .0].clone()];
            for i in 1..k {
                let name = fresh(format!("{}#{}", e.name, i), &mut taken);
                vertices.push(name.clone());
                chain.push(name);
            }
            chain.push(self.vertex_names[e.ends.1 .0].clone());
            for (i, pair) in chain.windows(2).enumerate() {
                let mut name = format!("{}#s{}", e.name, i + 1);
                while edge_names.contains(&name) {
                    name.push('+');
                }
                edge_names.insert(name.clone());
                edges.push((name, pair[0].clone(), pair[1].clone(), piece_len.clone()));
            }
        }
        Graph::new(vertices, edges).expect("subdivision of a valid graph is valid")
    }
}

/// A point of the metric graph, in canonical form: endpoint positions are
/// always the `Vertex` variant, never an interior parameter of 0 or 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GraphPoint {
    Vertex(VertexId),
    Interior { edge: EdgeId, t: Frac },
}

impl GraphPoint {
    pub fn vertex(v: VertexId) -> GraphPoint {
        GraphPoint::Vertex(v)
    }

    /// Canonicalizing constructor: `t = 0` and `t = 1` become the
    /// corresponding endpoint vertices, `t` outside `[0,1]` is rejected.
    pub fn on_edge(graph: &Graph, edge: EdgeId, t: Frac) -> Result<GraphPoint> {
        if edge.0 >= graph.edge_count() {
            return Err(Error::PointNotOnGraph(format!("edge index {}", edge.0)));
        }
        if t.is_negative() || t > Frac::one() {
            return Err(Error::PointNotOnGraph(format!(
                "edge parameter {t} outside [0,1]"
            )));
        }
        let ends = graph.edge(edge).ends();
        Ok(if t.is_zero() {
            GraphPoint::Vertex(ends.0)
        } else if t.is_one() {
            GraphPoint::Vertex(ends.1)
        } else {
            GraphPoint::Interior { edge, t }
        })
    }

    pub fn as_vertex(&self) -> Option<VertexId> {
        match self {
            GraphPoint::Vertex(v) => Some(*v),
            GraphPoint::Interior { .. } => None,
        }
    }

    /// Parameter of the point on edge `e`, if the point lies on the closure
    /// of `e` (measured from the edge's first endpoint).
    pub fn param_on(&self, graph: &Graph, e: EdgeId) -> Option<Frac> {
        match self {
            GraphPoint::Vertex(v) => graph.endpoint_param(e, *v),
            GraphPoint::Interior { edge, t } => (*edge == e).then(|| t.clone()),
        }
    }
}

/// Ordered tuple of pairwise-distinct points: one position per labeled agent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Configuration {
    points: Vec<GraphPoint>,
}

impl Configuration {
    pub fn new(graph: &Graph, points: Vec<GraphPoint>) -> Result<Configuration> {
        for p in &points {
            graph.validate_point(p)?;
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::Validation(format!(
                        "agents {i} and {j} occupy the same point"
                    )));
                }
            }
        }
        Ok(Configuration { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[GraphPoint] {
        &self.points
    }

    pub fn point(&self, agent: usize) -> &GraphPoint {
        &self.points[agent]
    }
}

/// A tree with a distinguished univalent root; carries the root edge,
/// parent pointers and the descending/ascending classification.
#[derive(Clone, Debug)]
pub struct RootedTree {
    graph: Graph,
    root: VertexId,
    root_edge: EdgeId,
    /// Parent vertex and descending edge for every non-root vertex.
    parent: Vec<Option<(VertexId, EdgeId)>>,
    depth: Vec<usize>,
}

impl std::ops::Deref for RootedTree {
    type Target = Graph;
    fn deref(&self) -> &Graph {
        &self.graph
    }
}

impl RootedTree {
    pub fn new(graph: Graph, root: VertexId) -> Result<RootedTree> {
        if !graph.is_tree() {
            return Err(Error::NotATree);
        }
        if root.0 >= graph.vertex_count() {
            return Err(Error::PointNotOnGraph(format!("vertex index {}", root.0)));
        }
        if graph.degree(root) != 1 {
            return Err(Error::RootNotUnivalent);
        }
        let root_edge = graph.incident(root)[0].0;
        let n = graph.vertex_count();
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut stack = vec![root];
        let mut seen = vec![false; n];
        seen[root.0] = true;
        while let Some(v) = stack.pop() {
            for &(e, w) in graph.incident(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some((v, e));
                    depth[w.0] = depth[v.0] + 1;
                    stack.push(w);
                }
            }
        }
        Ok(RootedTree {
            graph,
            root,
            root_edge,
            parent,
            depth,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn root_edge(&self) -> EdgeId {
        self.root_edge
    }

    /// The non-root endpoint of the root edge.
    pub fn apex(&self) -> VertexId {
        let (a, b) = self.graph.edge(self.root_edge).ends();
        if a == self.root {
            b
        } else {
            a
        }
    }

    /// Descending edge of a non-root vertex: its unique edge toward the root.
    pub fn descending_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent[v.0].map(|(_, e)| e)
    }

    pub fn parent_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.0].map(|(p, _)| p)
    }

    /// Ascending edges of a vertex (all incident edges except the descending
    /// one), sorted by edge index.
    pub fn ascending_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let descending = self.descending_edge(v);
        self.graph
            .incident(v)
            .iter()
            .map(|&(e, _)| e)
            .filter(|e| Some(*e) != descending)
            .collect()
    }

    /// Endpoint of `e` closer to the root.
    pub fn lower_end(&self, e: EdgeId) -> VertexId {
        let (a, b) = self.graph.edge(e).ends();
        if self.parent[a.0].map(|(p, _)| p) == Some(b) {
            b
        } else {
            a
        }
    }

    /// Endpoint of `e` farther from the root.
    pub fn upper_end(&self, e: EdgeId) -> VertexId {
        let (a, b) = self.graph.edge(e).ends();
        if self.lower_end(e) == a {
            b
        } else {
            a
        }
    }

    /// Root-oriented parameter of a point on an edge: 0 at the lower end.
    pub fn height_on_edge(&self, e: EdgeId, t: &Frac) -> Frac {
        if self.lower_end(e) == self.graph.edge(e).ends().0 {
            t.clone()
        } else {
            Frac::one() - t
        }
    }

    /// Root-oriented parameter of a point on the closure of the root edge:
    /// 0 at the root, 1 at the apex. `None` when the point is elsewhere.
    pub fn root_param(&self, p: &GraphPoint) -> Option<Frac> {
        match p {
            GraphPoint::Vertex(v) if *v == self.root => Some(Frac::zero()),
            GraphPoint::Vertex(v) if *v == self.apex() => Some(Frac::one()),
            GraphPoint::Vertex(_) => None,
            GraphPoint::Interior { edge, t } => {
                (*edge == self.root_edge).then(|| self.height_on_edge(self.root_edge, t))
            }
        }
    }

    /// Point on the root edge at root-oriented parameter `h` (0 = root).
    pub fn point_at_root_param(&self, h: Frac) -> Result<GraphPoint> {
        let t = if self.lower_end(self.root_edge) == self.graph.edge(self.root_edge).ends().0 {
            h
        } else {
            Frac::one() - h
        };
        GraphPoint::on_edge(&self.graph, self.root_edge, t)
    }

    /// Base vertex of a point for root-chain walks: the vertex itself, or the
    /// lower end of the edge that carries an interior point.
    pub fn base_vertex(&self, p: &GraphPoint) -> VertexId {
        match p {
            GraphPoint::Vertex(v) => *v,
            GraphPoint::Interior { edge, .. } => self.lower_end(*edge),
        }
    }

    pub fn is_ancestor_or_self(&self, ancestor: VertexId, descendant: VertexId) -> bool {
        let mut v = descendant;
        loop {
            if v == ancestor {
                return true;
            }
            match self.parent[v.0] {
                Some((p, _)) => v = p,
                None => return false,
            }
        }
    }

    /// Strict "below" order: `precedes(x, y)` is true iff `x != y` and every
    /// path from `x` to the root passes through `y`, i.e. `y` separates `x`
    /// from the root. This is the relation written `x > y` on paper figures:
    /// `y` lies below `x`.
    pub fn precedes(&self, x: &GraphPoint, y: &GraphPoint) -> Result<bool> {
        self.graph.validate_point(x)?;
        self.graph.validate_point(y)?;
        if x == y {
            return Ok(false);
        }
        match y {
            GraphPoint::Vertex(w) => {
                // y is on the path iff it is the base of x or an ancestor of it.
                // For a vertex x this excludes x itself (x != y already).
                Ok(self.is_ancestor_or_self(*w, self.base_vertex(x)))
            }
            GraphPoint::Interior { edge: f, t: s } => {
                match x {
                    GraphPoint::Interior { edge, t } if edge == f => {
                        // Same edge: y must be strictly closer to the lower end.
                        Ok(self.height_on_edge(*f, s) < self.height_on_edge(*edge, t))
                    }
                    _ => {
                        // y's edge must be a descending edge on the chain from
                        // x's base vertex to the root.
                        Ok(self.is_ancestor_or_self(self.upper_end(*f), self.base_vertex(x)))
                    }
                }
            }
        }
    }

    /// Chain of vertices from `v` down to the root, inclusive.
    pub fn chain_to_root(&self, v: VertexId) -> Vec<VertexId> {
        let mut chain = vec![v];
        let mut cur = v;
        while let Some((p, _)) = self.parent[cur.0] {
            chain.push(p);
            cur = p;
        }
        chain
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.0]
    }

    /// Graph distance from a vertex to the nearest essential vertex.
    pub fn distance_to_nearest_essential(&self, p: &GraphPoint) -> Result<Option<Frac>> {
        let essentials = self.graph.essential_vertices();
        if essentials.is_empty() {
            return Ok(None);
        }
        let mut best: Option<Frac> = None;
        for v in essentials {
            let d = self.graph.point_distance(p, &GraphPoint::Vertex(v))?;
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        Ok(best)
    }
}

/// Convenience: rooted-tree construction from a graph and a root id.
pub fn root_tree(graph: Graph, root: VertexId) -> Result<RootedTree> {
    RootedTree::new(graph, root)
}

#[cfg(test)]
mod tests {
    use crate::suite::*;
    use super::*;
    use crate::num::{frac, frac_one};

    fn pt(g: &Graph, edge: &str, num: i64, den: i64) -> GraphPoint {
        GraphPoint::on_edge(g, g.edge_by_name(edge).unwrap(), frac(num, den)).unwrap()
    }

    #[test]
    fn builds_y_tree() {
        let g = y_tree();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.first_betti(), 0);
        assert!(g.is_tree());
    }

    #[test]
    fn rejects_disconnected() {
        let err = Graph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                ("e1".into(), "a".into(), "b".into(), frac_one()),
                ("e2".into(), "c".into(), "d".into(), frac_one()),
            ],
        )
        .unwrap_err();
        assert_eq!(err.code(), "validation");
    }

    #[test]
    fn rejects_parallel_self_loop_nonpositive() {
        assert!(Graph::new(
            vec!["a".into(), "b".into()],
            vec![
                ("e1".into(), "a".into(), "b".into(), frac_one()),
                ("e2".into(), "b".into(), "a".into(), frac_one()),
            ],
        )
        .is_err());
        assert!(Graph::new(
            vec!["a".into()],
            vec![("e".into(), "a".into(), "a".into(), frac_one())],
        )
        .is_err());
        assert!(Graph::new(
            vec!["a".into(), "b".into()],
            vec![("e".into(), "a".into(), "b".into(), frac(0, 1))],
        )
        .is_err());
    }

    #[test]
    fn essential_vertices_by_degree() {
        assert_eq!(y_tree().essential_vertices().len(), 1);
        assert_eq!(
            y_tree()
                .essential_vertices()
                .iter()
                .map(|&v| y_tree().vertex_name(v).to_string())
                .collect::<Vec<_>>(),
            vec!["c"]
        );
        let h = h_tree();
        let names: Vec<_> = h
            .essential_vertices()
            .iter()
            .map(|&v| h.vertex_name(v).to_string())
            .collect();
        assert_eq!(names, vec!["v1", "v2"]);
        assert_eq!(single_edge().essential_count(), 0);
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(y_tree().first_betti(), 0);
        assert_eq!(triangle().first_betti(), 1);
        // K5: 5 vertices, 10 edges.
        let names: Vec<String> = (0..5).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((
                    format!("e{i}{j}"),
                    names[i].clone(),
                    names[j].clone(),
                    frac_one(),
                ));
            }
        }
        let k5 = Graph::new(names, edges).unwrap();
        assert_eq!(k5.first_betti(), 6);
        assert_eq!(k5.essential_count(), 5);
    }

    #[test]
    fn point_canonical_form() {
        let g = y_tree();
        let e = g.edge_by_name("ca").unwrap();
        let p0 = GraphPoint::on_edge(&g, e, frac(0, 1)).unwrap();
        assert_eq!(p0, GraphPoint::Vertex(g.vertex_by_name("c").unwrap()));
        let p1 = GraphPoint::on_edge(&g, e, frac_one()).unwrap();
        assert_eq!(p1, GraphPoint::Vertex(g.vertex_by_name("a").unwrap()));
        assert!(matches!(
            GraphPoint::on_edge(&g, e, frac(1, 2)).unwrap(),
            GraphPoint::Interior { .. }
        ));
        assert!(GraphPoint::on_edge(&g, e, frac(3, 2)).is_err());
        assert!(GraphPoint::on_edge(&g, e, frac(-1, 2)).is_err());
    }

    #[test]
    fn configuration_rejects_duplicates() {
        let g = y_tree();
        let p = pt(&g, "ca", 1, 2);
        assert!(Configuration::new(&g, vec![p.clone(), p]).is_err());
    }

    #[test]
    fn distances_on_y_tree() {
        let g = y_tree();
        let a = GraphPoint::Vertex(g.vertex_by_name("a").unwrap());
        let b = GraphPoint::Vertex(g.vertex_by_name("b").unwrap());
        assert_eq!(g.point_distance(&a, &b).unwrap(), frac(2, 1));
        assert_eq!(g.point_distance(&a, &a).unwrap(), frac(0, 1));
        // ca at t=1/4 from c, cb at t=1/2 from c: distance 3/4.
        let x = pt(&g, "ca", 1, 4);
        let y = pt(&g, "cb", 1, 2);
        assert_eq!(g.point_distance(&x, &y).unwrap(), frac(3, 4));
        // Same-edge direct route.
        let u = pt(&g, "ca", 1, 4);
        let v = pt(&g, "ca", 3, 4);
        assert_eq!(g.point_distance(&u, &v).unwrap(), frac(1, 2));
    }

    #[test]
    fn subdivision_counts_and_invariants() {
        let g = y_tree();
        let s = g.subdivide(3);
        assert_eq!(s.vertex_count(), 10);
        assert_eq!(s.edge_count(), 9);
        assert_eq!(s.essential_count(), 1);
        assert_eq!(s.first_betti(), 0);
        let unchanged = g.subdivide(1);
        assert_eq!(unchanged.vertex_count(), g.vertex_count());
        assert_eq!(unchanged.edge_count(), g.edge_count());

        let single = single_edge().subdivide(2);
        assert_eq!(single.vertex_count(), 3);
        assert_eq!(single.edge_count(), 2);

        let t = triangle().subdivide(4);
        assert_eq!(t.first_betti(), 1);
        assert_eq!(t.essential_count(), 0);
    }

    #[test]
    fn rooting_classifies_edges() {
        let g = y_tree();
        let r = g.vertex_by_name("r").unwrap();
        let c = g.vertex_by_name("c").unwrap();
        let t = RootedTree::new(g, r).unwrap();
        assert_eq!(t.root(), r);
        assert_eq!(t.apex(), c);
        assert_eq!(t.root_edge(), t.edge_by_name("cr").unwrap());
        assert_eq!(t.descending_edge(c), Some(t.edge_by_name("cr").unwrap()));
        let ups: Vec<_> = t
            .ascending_edges(c)
            .iter()
            .map(|&e| t.edge(e).name().to_string())
            .collect();
        assert_eq!(ups, vec!["ca", "cb"]);
    }

    #[test]
    fn rooting_rejects_bad_roots() {
        let g = y_tree();
        let c = g.vertex_by_name("c").unwrap();
        assert_eq!(RootedTree::new(g, c).unwrap_err(), Error::RootNotUnivalent);
        let tri = triangle();
        let x = tri.vertex_by_name("x").unwrap();
        assert_eq!(RootedTree::new(tri, x).unwrap_err(), Error::NotATree);
    }

    #[test]
    fn h_tree_rooted_at_leaf() {
        let g = h_tree();
        let a = g.vertex_by_name("a").unwrap();
        let v1 = g.vertex_by_name("v1").unwrap();
        let t = RootedTree::new(g, a).unwrap();
        let ups: Vec<_> = t
            .ascending_edges(v1)
            .iter()
            .map(|&e| t.edge(e).name().to_string())
            .collect();
        assert_eq!(ups, vec!["e2", "e3"]);
    }

    #[test]
    fn partial_order_on_y_tree() {
        let g = y_tree();
        let r = g.vertex_by_name("r").unwrap();
        let t = RootedTree::new(g, r).unwrap();
        // x on branch a, y inside the root edge: every path to the root
        // passes through y.
        let x = pt(&t, "ca", 1, 2);
        let y = pt(&t, "cr", 1, 2); // cr runs c -> r, so t=1/2 is mid root edge
        assert!(t.precedes(&x, &y).unwrap());
        assert!(!t.precedes(&y, &x).unwrap());
        // Branch a vs branch b: incomparable.
        let z = pt(&t, "cb", 1, 2);
        assert!(!t.precedes(&x, &z).unwrap());
        assert!(!t.precedes(&z, &x).unwrap());
        // Irreflexive.
        assert!(!t.precedes(&x, &x).unwrap());
        // Vertex cases: center is below every branch point.
        let c = GraphPoint::Vertex(t.vertex_by_name("c").unwrap());
        assert!(t.precedes(&x, &c).unwrap());
        assert!(!t.precedes(&c, &x).unwrap());
        // Root is below everything.
        let root_pt = GraphPoint::Vertex(r);
        assert!(t.precedes(&x, &root_pt).unwrap());
        assert!(t.precedes(&c, &root_pt).unwrap());
    }

    #[test]
    fn same_edge_order_follows_height() {
        let g = y_tree();
        let r = g.vertex_by_name("r").unwrap();
        let t = RootedTree::new(g, r).unwrap();
        // Edge cr runs c -> r: larger t is closer to the root, so height
        // decreases with t.
        let hi = pt(&t, "cr", 1, 4);
        let lo = pt(&t, "cr", 3, 4);
        assert!(t.precedes(&hi, &lo).unwrap());
        assert!(!t.precedes(&lo, &hi).unwrap());
        // Points up one branch: the one nearer the center is below.
        let near = pt(&t, "ca", 3, 10);
        let far = pt(&t, "ca", 8, 10);
        assert!(t.precedes(&far, &near).unwrap());
        assert!(!t.precedes(&near, &far).unwrap());
    }

    #[test]
    fn root_params() {
        let g = y_tree();
        let r = g.vertex_by_name("r").unwrap();
        let t = RootedTree::new(g, r).unwrap();
        let p = t.point_at_root_param(frac(1, 3)).unwrap();
        assert_eq!(t.root_param(&p).unwrap(), frac(1, 3));
        assert_eq!(t.root_param(&GraphPoint::Vertex(r)).unwrap(), frac(0, 1));
        assert_eq!(t.root_param(&GraphPoint::Vertex(t.apex())).unwrap(), frac(1, 1));
        assert_eq!(t.root_param(&pt(&t, "ca", 1, 2)), None);
    }
}

#[cfg(test)]
mod cycle_distance_tests {
    use super::*;
    use crate::num::frac;
    use crate::suite::triangle;

    #[test]
    fn distance_goes_the_short_way_around() {
        let g = triangle();
        let e1 = g.edge_by_name("e1").unwrap(); // x - y
        let e2 = g.edge_by_name("e2").unwrap(); // y - z
        // Quarter along x->y versus quarter along y->z: through y it is
        // 3/4 + 1/4 = 1; around past z it is 1/4 + 1 + 3/4 = 2.
        let p = GraphPoint::on_edge(&g, e1, frac(1, 4)).unwrap();
        let q = GraphPoint::on_edge(&g, e2, frac(1, 4)).unwrap();
        assert_eq!(g.point_distance(&p, &q).unwrap(), frac(1, 1));
        // Same edge, but the far route wins when the direct one is long:
        // params 1/10 and 9/10 on e1: direct 8/10, around 2/10 + 2 edges
        // ... around = 1/10 + 1 + 1 + 1/10 = 2.2, so direct wins here.
        let a = GraphPoint::on_edge(&g, e1, frac(1, 10)).unwrap();
        let b = GraphPoint::on_edge(&g, e1, frac(9, 10)).unwrap();
        assert_eq!(g.point_distance(&a, &b).unwrap(), frac(4, 5));
    }
}
