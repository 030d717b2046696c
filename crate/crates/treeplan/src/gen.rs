//! Seeded random instances: trees, configurations and perturbations.
//!
//! Everything is driven by an explicit ChaCha stream so test corpora and
//! probe runs are reproducible byte for byte.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Configuration, EdgeId, Graph, GraphPoint, RootedTree, VertexId};
use crate::num::{frac, Frac};
use num_traits::{One, Zero};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_length(rng: &mut impl Rng) -> Frac {
    let choices = [frac(1, 1), frac(1, 2), frac(3, 4), frac(3, 2), frac(2, 1)];
    choices[rng.gen_range(0..choices.len())].clone()
}

/// Random rooted tree with exactly `essential` vertices of degree >= 3:
/// a spine of essential vertices padded with leaves, a few degree-2
/// subdivision vertices, random rational edge lengths, and a fresh leaf
/// as the root.
pub fn random_tree(rng: &mut impl Rng, essential: usize) -> RootedTree {
    assert!(essential >= 1);
    let mut vertices: Vec<String> = (0..essential).map(|i| format!("s{i}")).collect();
    let mut edges: Vec<(String, String, String, Frac)> = Vec::new();
    let mut edge_id = 0usize;
    let push_edge = |a: String, b: String, len: Frac, edges: &mut Vec<(String, String, String, Frac)>, edge_id: &mut usize| {
        edges.push((format!("e{:03}", *edge_id), a, b, len));
        *edge_id += 1;
    };
    for i in 1..essential {
        let len = random_length(rng);
        push_edge(format!("s{}", i - 1), format!("s{i}"), len, &mut edges, &mut edge_id);
    }
    let mut leaf = 0usize;
    for i in 0..essential {
        let spine_degree = usize::from(i > 0) + usize::from(i + 1 < essential);
        let mut wanted = 3usize.saturating_sub(spine_degree);
        if rng.gen_bool(0.3) {
            wanted += 1;
        }
        for _ in 0..wanted {
            let name = format!("l{leaf}");
            leaf += 1;
            vertices.push(name.clone());
            let len = random_length(rng);
            push_edge(format!("s{i}"), name, len, &mut edges, &mut edge_id);
        }
    }
    // A few degree-2 waypoints keep the planner honest about
    // non-essential vertices.
    for split in 0..rng.gen_range(0..=2usize) {
        let idx = rng.gen_range(0..edges.len());
        let (name, a, b, len) = edges.swap_remove(idx);
        let mid = format!("d{split}");
        vertices.push(mid.clone());
        let half = &len / frac(2, 1);
        edges.push((format!("{name}a"), a, mid.clone(), half.clone()));
        edges.push((format!("{name}b"), mid, b, half));
    }
    // Attach the root to any vertex that is not a degree-2 waypoint
    // (raising a waypoint's degree would mint a new essential vertex).
    let degree_of = |name: &str, edges: &[(String, String, String, Frac)]| {
        edges.iter().filter(|(_, a, b, _)| a == name || b == name).count()
    };
    let hosts: Vec<String> = vertices
        .iter()
        .filter(|v| degree_of(v, &edges) != 2)
        .cloned()
        .collect();
    let host = hosts[rng.gen_range(0..hosts.len())].clone();
    vertices.push("rt".into());
    let len = random_length(rng);
    push_edge(host, "rt".into(), len, &mut edges, &mut edge_id);

    let graph = Graph::new(vertices, edges).expect("generated tree is valid");
    debug_assert_eq!(graph.essential_count(), essential);
    let root = graph.vertex_by_name("rt").unwrap();
    RootedTree::new(graph, root).expect("rt is a fresh leaf")
}

/// Random configuration of `n` distinct points; with probability
/// `vertex_prob` a point sits exactly on a (possibly essential) vertex,
/// otherwise it is the interior point `k/64` of a random edge.
pub fn random_configuration(
    rng: &mut impl Rng,
    graph: &Graph,
    n: usize,
    vertex_prob: f64,
) -> Configuration {
    let mut points: Vec<GraphPoint> = Vec::with_capacity(n);
    let mut guard = 0;
    while points.len() < n {
        guard += 1;
        assert!(guard < 10_000, "graph too small for {n} distinct samples");
        let p = if rng.gen_bool(vertex_prob) {
            GraphPoint::Vertex(VertexId(rng.gen_range(0..graph.vertex_count())))
        } else {
            let e = EdgeId(rng.gen_range(0..graph.edge_count()));
            GraphPoint::on_edge(graph, e, frac(rng.gen_range(1..64), 64)).unwrap()
        };
        if !points.contains(&p) {
            points.push(p);
        }
    }
    Configuration::new(graph, points).unwrap()
}

/// Nudges every edge-interior agent by at most `delta` (in length units)
/// along its current edge; vertex agents stay put. Returns `None` when
/// the perturbed points fail to stay distinct.
pub fn perturb_interior(
    rng: &mut impl Rng,
    graph: &Graph,
    config: &Configuration,
    delta: &Frac,
) -> Option<Configuration> {
    let points: Vec<GraphPoint> = config
        .points()
        .iter()
        .map(|p| match p {
            GraphPoint::Vertex(_) => p.clone(),
            GraphPoint::Interior { edge, t } => {
                let len = graph.edge(*edge).length();
                let mag = delta * frac(rng.gen_range(8..=16), 16) / len;
                let dir = if rng.gen_bool(0.5) { frac(1, 1) } else { frac(-1, 1) };
                let mut t2 = t + &dir * &mag;
                if t2 <= Frac::zero() || t2 >= Frac::one() {
                    t2 = t - dir * mag;
                }
                if t2 <= Frac::zero() || t2 >= Frac::one() {
                    t2 = t.clone();
                }
                GraphPoint::Interior { edge: *edge, t: t2 }
            }
        })
        .collect();
    Configuration::new(graph, points).ok()
}

/// Nudges every agent by at most `delta`, vertex agents included: those
/// step into a random incident edge. Used by the random-planner probe,
/// where crossing a stratum boundary is exactly what is being tested.
pub fn perturb_any(
    rng: &mut impl Rng,
    graph: &Graph,
    config: &Configuration,
    delta: &Frac,
) -> Option<Configuration> {
    let points: Vec<GraphPoint> = config
        .points()
        .iter()
        .map(|p| match p {
            GraphPoint::Vertex(v) => {
                let incident = graph.incident(*v);
                let (edge, _) = incident[rng.gen_range(0..incident.len())];
                let len = graph.edge(edge).length();
                let mag = delta * frac(rng.gen_range(8..=16), 16) / len;
                if mag >= Frac::one() {
                    return p.clone();
                }
                let t = if graph.edge(edge).ends().0 == *v {
                    mag
                } else {
                    Frac::one() - mag
                };
                GraphPoint::Interior { edge, t }
            }
            GraphPoint::Interior { .. } => p.clone(),
        })
        .collect();
    let moved_vertices = Configuration::new(graph, points).ok()?;
    perturb_interior(rng, graph, &moved_vertices, delta)
}

/// Like [`perturb_interior`], but additionally requires the "below"
/// relation over all point pairs to be unchanged, so the perturbed
/// configuration is planned by the identical staged decisions. Shrinks
/// the magnitude until that holds.
pub fn perturb_within_stratum(
    rng: &mut impl Rng,
    tree: &RootedTree,
    config: &Configuration,
    delta: &Frac,
) -> Option<Configuration> {
    let n = config.len();
    let relation = |c: &Configuration| -> Vec<bool> {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(i != j && tree.precedes(c.point(i), c.point(j)).unwrap());
            }
        }
        out
    };
    let base = relation(config);
    let mut step = delta.clone();
    for _ in 0..24 {
        if let Some(candidate) = perturb_interior(rng, tree, config, &step) {
            if relation(&candidate) == base {
                return Some(candidate);
            }
        }
        step /= frac(2, 1);
    }
    None
}

/// Moves an agent parked exactly at `vertex` a distance `delta` into the
/// incident edge with the given index offset; used by the degree-2
/// insensitivity probe.
pub fn nudge_off_vertex(
    graph: &Graph,
    config: &Configuration,
    agent: usize,
    which_edge: usize,
    delta: &Frac,
) -> Option<Configuration> {
    let GraphPoint::Vertex(v) = config.point(agent) else {
        return None;
    };
    let incident = graph.incident(*v);
    let (edge, _) = incident[which_edge % incident.len()];
    let len = graph.edge(edge).length();
    let t_from_v = delta / len;
    if t_from_v >= Frac::one() {
        return None;
    }
    let t = if graph.edge(edge).ends().0 == *v {
        t_from_v
    } else {
        Frac::one() - t_from_v
    };
    let mut points = config.points().to_vec();
    points[agent] = GraphPoint::on_edge(graph, edge, t).ok()?;
    Configuration::new(graph, points).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::stratum;

    #[test]
    fn trees_hit_requested_essential_count() {
        let mut r = rng(7);
        for m in 1..=3 {
            for _ in 0..20 {
                let t = random_tree(&mut r, m);
                assert_eq!(t.essential_count(), m);
                assert_eq!(t.degree(t.root()), 1);
                assert_eq!(t.first_betti(), 0);
            }
        }
    }

    #[test]
    fn generation_is_reproducible() {
        let t1 = random_tree(&mut rng(42), 2);
        let t2 = random_tree(&mut rng(42), 2);
        assert_eq!(t1.vertex_count(), t2.vertex_count());
        let c1 = random_configuration(&mut rng(43), &t1, 4, 0.3);
        let c2 = random_configuration(&mut rng(43), &t2, 4, 0.3);
        assert_eq!(c1.points(), c2.points());
    }

    #[test]
    fn perturbations_preserve_what_they_promise() {
        let mut r = rng(11);
        let tree = random_tree(&mut r, 2);
        for _ in 0..20 {
            let c = random_configuration(&mut r, &tree, 3, 0.4);
            let delta = frac(1, 100);
            if let Some(p) = perturb_within_stratum(&mut r, &tree, &c, &delta) {
                assert_eq!(stratum(&tree, &p), stratum(&tree, &c));
                for (a, b) in c.points().iter().zip(p.points()) {
                    let d = tree.point_distance(a, b).unwrap();
                    assert!(d <= delta, "moved {d} further than delta");
                }
            }
        }
    }
}
