//! Named graphs used across tests, examples and the verification suite.

use crate::graph::{Graph, RootedTree, VertexId};
use crate::num::frac_one;

/// Y-tree: center `c`, leaves `a`, `b`, `r`, unit lengths.
pub fn y_tree() -> Graph {
    Graph::new(
        vec!["c".into(), "a".into(), "b".into(), "r".into()],
        vec![
            ("ca".into(), "c".into(), "a".into(), frac_one()),
            ("cb".into(), "c".into(), "b".into(), frac_one()),
            ("cr".into(), "c".into(), "r".into(), frac_one()),
        ],
    )
    .unwrap()
}

/// H-tree: spine `v1 - v2`, leaves `a`,`b` at `v1` and `c`,`d` at `v2`.
pub fn h_tree() -> Graph {
    Graph::new(
        vec![
            "v1".into(),
            "v2".into(),
            "a".into(),
            "b".into(),
            "c".into(),
            "d".into(),
        ],
        vec![
            ("e1".into(), "v1".into(), "a".into(), frac_one()),
            ("e2".into(), "v1".into(), "b".into(), frac_one()),
            ("e3".into(), "v1".into(), "v2".into(), frac_one()),
            ("e4".into(), "v2".into(), "c".into(), frac_one()),
            ("e5".into(), "v2".into(), "d".into(), frac_one()),
        ],
    )
    .unwrap()
}

/// Star with `eta` leaves around center `c`, unit lengths.
pub fn star(eta: usize) -> Graph {
    let mut vertices = vec!["c".to_string()];
    let mut edges = Vec::new();
    for i in 0..eta {
        let leaf = format!("l{i}");
        edges.push((format!("e{i}"), "c".to_string(), leaf.clone(), frac_one()));
        vertices.push(leaf);
    }
    Graph::new(vertices, edges).unwrap()
}

/// Caterpillar with three degree-3 spine vertices `v1 - v2 - v3`;
/// two leaves at the ends, one in the middle.
pub fn caterpillar3() -> Graph {
    Graph::new(
        vec![
            "v1".into(),
            "v2".into(),
            "v3".into(),
            "a".into(),
            "b".into(),
            "m".into(),
            "d".into(),
            "e".into(),
        ],
        vec![
            ("s1".into(), "v1".into(), "v2".into(), frac_one()),
            ("s2".into(), "v2".into(), "v3".into(), frac_one()),
            ("la".into(), "v1".into(), "a".into(), frac_one()),
            ("lb".into(), "v1".into(), "b".into(), frac_one()),
            ("lm".into(), "v2".into(), "m".into(), frac_one()),
            ("ld".into(), "v3".into(), "d".into(), frac_one()),
            ("le".into(), "v3".into(), "e".into(), frac_one()),
        ],
    )
    .unwrap()
}

/// A single unit edge: the interval.
pub fn single_edge() -> Graph {
    Graph::new(
        vec!["u".into(), "v".into()],
        vec![("e".into(), "u".into(), "v".into(), frac_one())],
    )
    .unwrap()
}

/// Triangle: the smallest simple cycle.
pub fn triangle() -> Graph {
    Graph::new(
        vec!["x".into(), "y".into(), "z".into()],
        vec![
            ("e1".into(), "x".into(), "y".into(), frac_one()),
            ("e2".into(), "y".into(), "z".into(), frac_one()),
            ("e3".into(), "z".into(), "x".into(), frac_one()),
        ],
    )
    .unwrap()
}

/// Two triangles sharing one vertex: first Betti number 2.
pub fn figure_eight() -> Graph {
    Graph::new(
        vec!["o".into(), "p".into(), "q".into(), "s".into(), "t".into()],
        vec![
            ("e1".into(), "o".into(), "p".into(), frac_one()),
            ("e2".into(), "p".into(), "q".into(), frac_one()),
            ("e3".into(), "q".into(), "o".into(), frac_one()),
            ("e4".into(), "o".into(), "s".into(), frac_one()),
            ("e5".into(), "s".into(), "t".into(), frac_one()),
            ("e6".into(), "t".into(), "o".into(), frac_one()),
        ],
    )
    .unwrap()
}

/// Complete graph on five vertices.
pub fn k5() -> Graph {
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
    Graph::new(names, edges).unwrap()
}

/// Complete bipartite graph on parts of size three.
pub fn k33() -> Graph {
    let mut names = Vec::new();
    for i in 0..3 {
        names.push(format!("u{i}"));
        names.push(format!("w{i}"));
    }
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            edges.push((
                format!("e{i}{j}"),
                format!("u{i}"),
                format!("w{j}"),
                frac_one(),
            ));
        }
    }
    Graph::new(names, edges).unwrap()
}

/// The five trees of the verification suite, with names.
pub fn verification_trees() -> Vec<(&'static str, Graph)> {
    vec![
        ("Y-tree", y_tree()),
        ("H-tree", h_tree()),
        ("4-star", star(4)),
        ("5-star", star(5)),
        ("caterpillar", caterpillar3()),
    ]
}

/// Deterministic root choice: the first univalent vertex by id.
pub fn default_root(g: &Graph) -> Option<VertexId> {
    g.vertices().find(|&v| g.degree(v) == 1)
}

/// Roots a tree at its first univalent vertex.
pub fn rooted(g: Graph) -> RootedTree {
    let root = default_root(&g).expect("tree has a leaf");
    RootedTree::new(g, root).unwrap()
}
