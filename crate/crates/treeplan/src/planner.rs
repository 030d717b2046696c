//! Collision-free motion planning on rooted trees.
//!
//! The plan between two configurations is staged: every agent descends
//! into canonical parking slots inside the root edge, a buffered
//! permutation at the essential vertex nearest the root edge rearranges
//! the parked agents into the goal order, a slide matches positions, and
//! the goal's own descent is replayed backwards. Exactly one agent moves
//! at a time (the slide stage excepted, where motion is order-preserving
//! inside one edge), which makes collision-freedom structural and lets
//! the exact checker certify every output.
//!
//! The planner also computes the stratum of a configuration (how many
//! agents sit exactly on essential vertices) and the domain index of a
//! pair, which classifies inputs into the `2m+1` continuity classes of
//! the staged algorithm.

use crate::error::{Error, Result};
use crate::graph::{Configuration, EdgeId, GraphPoint, RootedTree, VertexId};
use crate::motion::{concat, normalize_time, Breakpoint, Trajectory};
use crate::num::Frac;
use num_traits::{One, Zero};

/// The staged output of [`plan`].
#[derive(Clone, Debug)]
pub struct PlanStages {
    /// Start configuration descending into the root-edge slots.
    pub descent_a: Trajectory,
    /// Reordering of the parked agents into the goal's slot order.
    pub permute: Trajectory,
    /// Slot-wise slide matching the parked goal configuration.
    pub slide: Trajectory,
    /// Goal configuration descending into the slots (unreversed).
    pub descent_b: Trajectory,
    /// Full plan: descent, permutation, slide, then the goal descent
    /// reversed, concatenated and canonically timed.
    pub combined: Trajectory,
    /// Stratum sum of the two input configurations.
    pub domain_index: usize,
}

/// Canonical parking slots: n interior points of the root edge at
/// root-oriented parameters `k/(n+1)`, deepest (nearest the root) first.
pub fn canonical_slots(tree: &RootedTree, n: usize) -> Result<Vec<GraphPoint>> {
    (1..=n)
        .map(|k| tree.point_at_root_param(Frac::new((k as i64).into(), (n as i64 + 1).into())))
        .collect()
}

/// Accumulates single-agent moves and renders them as one trajectory.
pub(crate) struct MoveLog<'t> {
    tree: &'t RootedTree,
    initial: Vec<GraphPoint>,
    current: Vec<GraphPoint>,
    moves: Vec<(usize, Vec<GraphPoint>)>,
}

impl<'t> MoveLog<'t> {
    pub(crate) fn new(tree: &'t RootedTree, start: &Configuration) -> MoveLog<'t> {
        MoveLog {
            tree,
            initial: start.points().to_vec(),
            current: start.points().to_vec(),
            moves: Vec::new(),
        }
    }

    /// Records a move of one agent along a chain of edge-local waypoints.
    /// The chain must start at the agent's current position; consecutive
    /// duplicates are dropped and a no-op chain is not recorded.
    pub(crate) fn push_move(&mut self, agent: usize, chain: Vec<GraphPoint>) {
        debug_assert_eq!(chain[0], self.current[agent], "chain must start at the agent");
        let mut deduped: Vec<GraphPoint> = Vec::with_capacity(chain.len());
        for p in chain {
            if deduped.last() != Some(&p) {
                deduped.push(p);
            }
        }
        if deduped.len() < 2 {
            return;
        }
        self.current[agent] = deduped.last().unwrap().clone();
        self.moves.push((agent, deduped));
    }

    pub(crate) fn move_count(&self) -> usize {
        self.moves.len()
    }

    fn final_configuration(&self) -> Result<Configuration> {
        Configuration::new(self.tree, self.current.clone())
    }

    /// Sequential rendering: move `i` of `m` occupies `[i/m, (i+1)/m]`,
    /// all other agents parked; canonical timing applied at the end.
    pub(crate) fn into_trajectory(self) -> Result<Trajectory> {
        let graph = self.tree.graph();
        if self.moves.is_empty() {
            let cfg = Configuration::new(graph, self.initial)?;
            return Ok(Trajectory::constant(&cfg));
        }
        let m = self.moves.len() as i64;
        let mut schedules: Vec<Vec<Breakpoint>> = self
            .initial
            .iter()
            .map(|p| {
                vec![Breakpoint {
                    time: Frac::zero(),
                    point: p.clone(),
                }]
            })
            .collect();
        for (idx, (agent, chain)) in self.moves.iter().enumerate() {
            let t0 = Frac::new((idx as i64).into(), m.into());
            let t1 = Frac::new((idx as i64 + 1).into(), m.into());
            let schedule = &mut schedules[*agent];
            if schedule.last().unwrap().time < t0 {
                schedule.push(Breakpoint {
                    time: t0.clone(),
                    point: chain[0].clone(),
                });
            }
            let legs = (chain.len() - 1) as i64;
            for (j, point) in chain.iter().enumerate().skip(1) {
                let u = Frac::new((j as i64).into(), legs.into());
                schedule.push(Breakpoint {
                    time: &t0 + (&t1 - &t0) * u,
                    point: point.clone(),
                });
            }
        }
        for schedule in &mut schedules {
            if !schedule.last().unwrap().time.is_one() {
                let point = schedule.last().unwrap().point.clone();
                schedule.push(Breakpoint {
                    time: Frac::one(),
                    point,
                });
            }
        }
        let raw = Trajectory::new(graph, schedules)?;
        normalize_time(graph, &raw)
    }
}

/// Indices of the minimal agents: those with no other agent strictly
/// below them on their path to the root. Ascending index order.
pub fn minimal_points(tree: &RootedTree, config: &Configuration) -> Result<Vec<usize>> {
    let n = config.len();
    let mut minimal = Vec::new();
    for j in 0..n {
        let mut blocked = false;
        for i in 0..n {
            if i != j && tree.precedes(config.point(j), config.point(i))? {
                blocked = true;
                break;
            }
        }
        if !blocked {
            minimal.push(j);
        }
    }
    Ok(minimal)
}

/// Chain of waypoints from a point strictly above the apex down to the
/// apex vertex.
fn chain_down_to_apex(tree: &RootedTree, from: &GraphPoint) -> Vec<GraphPoint> {
    let mut chain = vec![from.clone()];
    let mut v = tree.base_vertex(from);
    if from != &GraphPoint::Vertex(v) {
        chain.push(GraphPoint::Vertex(v));
    }
    while v != tree.apex() {
        v = tree.parent_vertex(v).expect("apex is an ancestor");
        chain.push(GraphPoint::Vertex(v));
    }
    chain
}

/// Moves every agent into the canonical root-edge slots, one agent at a
/// time, and returns the motion together with the parked configuration.
///
/// Agents already on the closure of the root edge are re-parked first,
/// preserving their depth order (movers toward the root go deepest-first,
/// movers away from it shallowest-first, which keeps the edge crossing
/// free). The remaining agents descend in rounds: the minimal agents of
/// the unparked set, in ascending index order, each walk down to the
/// deepest free slot.
pub fn descend_all(
    tree: &RootedTree,
    config: &Configuration,
) -> Result<(Trajectory, Configuration)> {
    if config.is_empty() {
        return Err(Error::Validation("empty configuration".into()));
    }
    if tree.essential_count() == 0 {
        return Err(Error::NoEssentialVertex);
    }
    for p in config.points() {
        tree.validate_point(p)?;
    }
    let n = config.len();
    let slots = canonical_slots(tree, n)?;
    let mut log = MoveLog::new(tree, config);

    // Re-park the agents already on the closure of the root edge.
    let mut on_edge: Vec<(Frac, usize)> = Vec::new();
    for (i, p) in config.points().iter().enumerate() {
        if let Some(h) = tree.root_param(p) {
            on_edge.push((h, i));
        }
    }
    on_edge.sort(); // deepest (smallest root parameter) first; params are distinct
    let slot_param = |k: usize| Frac::new((k as i64 + 1).into(), (n as i64 + 1).into());
    let mut downward = Vec::new();
    let mut upward = Vec::new();
    for (rank, (param, agent)) in on_edge.iter().enumerate() {
        let target = slot_param(rank);
        match param.cmp(&target) {
            std::cmp::Ordering::Greater => downward.push((param.clone(), *agent, rank)),
            std::cmp::Ordering::Less => upward.push((param.clone(), *agent, rank)),
            std::cmp::Ordering::Equal => {}
        }
    }
    downward.sort_by(|a, b| a.0.cmp(&b.0)); // deepest mover first
    upward.sort_by(|a, b| b.0.cmp(&a.0)); // shallowest mover first
    for (_, agent, rank) in downward.into_iter().chain(upward) {
        let chain = vec![log.current[agent].clone(), slots[rank].clone()];
        log.push_move(agent, chain);
    }
    let mut next_slot = on_edge.len();
    let mut parked: Vec<bool> = vec![false; n];
    for (_, agent) in &on_edge {
        parked[*agent] = true;
    }

    // Descend the rest in minimal-first rounds.
    while next_slot < n {
        let mut round = Vec::new();
        for j in 0..n {
            if parked[j] {
                continue;
            }
            let mut blocked = false;
            for i in 0..n {
                if i != j && !parked[i] && tree.precedes(config.point(j), config.point(i))? {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                round.push(j);
            }
        }
        debug_assert!(!round.is_empty(), "a finite poset has minimal elements");
        for agent in round {
            let mut chain = chain_down_to_apex(tree, &log.current[agent]);
            chain.push(slots[next_slot].clone());
            log.push_move(agent, chain);
            parked[agent] = true;
            next_slot += 1;
        }
    }

    let parked_config = log.final_configuration()?;
    Ok((log.into_trajectory()?, parked_config))
}

/// Slot order of a configuration supported strictly inside the root edge:
/// `result[k]` is the agent occupying the k-th deepest position.
pub fn root_edge_order(tree: &RootedTree, config: &Configuration) -> Result<Vec<usize>> {
    let mut order: Vec<(Frac, usize)> = Vec::with_capacity(config.len());
    for (i, p) in config.points().iter().enumerate() {
        match p {
            GraphPoint::Interior { edge, .. } if *edge == tree.root_edge() => {
                order.push((tree.root_param(p).expect("point on root edge"), i));
            }
            _ => return Err(Error::NotOnRootEdge),
        }
    }
    order.sort();
    Ok(order.into_iter().map(|(_, i)| i).collect())
}

/// Position inside a buffer edge at fraction `q` of its length from the
/// branching vertex.
fn buffer_point(tree: &RootedTree, at: VertexId, edge: EdgeId, q: Frac) -> Result<GraphPoint> {
    let t = if tree.edge(edge).ends().0 == at {
        q
    } else {
        Frac::one() - q
    };
    GraphPoint::on_edge(tree, edge, t)
}

/// Reorders agents parked in the canonical slots into `target` order
/// (`target[k]` = agent that must occupy the k-th deepest slot).
pub fn permute_on_root(
    tree: &RootedTree,
    config: &Configuration,
    target: &[usize],
) -> Result<Trajectory> {
    permute_on_root_with_count(tree, config, target).map(|(tr, _)| tr)
}

/// Two-buffer permutation; also reports the number of single-agent moves
/// (at most `2 n^2`).
///
/// All agents are first stacked into one ascending edge at the essential
/// vertex nearest the root edge. To emit the agents in target order,
/// deepest slot first, the first buffer is popped into the second until
/// the needed agent is exposed, that agent walks down to its slot, and
/// the second buffer is recirculated back onto the first. One agent moves
/// per step and the corridor between the root edge and the branching
/// vertex stays empty between moves, so no step can collide.
pub fn permute_on_root_with_count(
    tree: &RootedTree,
    config: &Configuration,
    target: &[usize],
) -> Result<(Trajectory, usize)> {
    let n = config.len();
    if tree.essential_count() == 0 {
        return Err(Error::NoEssentialVertex);
    }
    if target.len() != n {
        return Err(Error::DimensionMismatch);
    }
    let mut seen = vec![false; n];
    for &a in target {
        if a >= n || seen[a] {
            return Err(Error::Validation(format!("target is not a permutation: {target:?}")));
        }
        seen[a] = true;
    }
    let slots = canonical_slots(tree, n)?;
    // Current slot order; every agent must sit exactly in a slot.
    let mut slot_holder: Vec<Option<usize>> = vec![None; n];
    for (agent, p) in config.points().iter().enumerate() {
        let k = slots.iter().position(|s| s == p).ok_or(Error::NotInCanonicalSlots)?;
        slot_holder[k] = Some(agent);
    }
    let current: Vec<usize> = slot_holder.into_iter().map(|h| h.unwrap()).collect();
    if current == target {
        return Ok((Trajectory::constant(config), 0));
    }

    // Branching vertex: essential vertex nearest the apex, ties to the
    // smallest id. Everything except the root lies above the apex, so the
    // corridor between them contains no other essential vertex.
    let apex = tree.apex();
    let dist = tree.vertex_distances();
    let star = tree
        .essential_vertices()
        .into_iter()
        .min_by(|a, b| dist[apex.0][a.0].cmp(&dist[apex.0][b.0]))
        .expect("essential vertex exists");
    let corridor: Vec<VertexId> = {
        let mut chain = tree.chain_to_root(star);
        let cut = chain.iter().position(|&v| v == apex).expect("apex below star");
        chain.truncate(cut + 1);
        chain.reverse(); // apex ... star
        chain
    };
    let ascending = tree.ascending_edges(star);
    debug_assert!(ascending.len() >= 2, "essential vertex has >= 2 ascending edges");
    let (buf1_edge, buf2_edge) = (ascending[0], ascending[1]);

    let level_param = |level: usize| Frac::new((level as i64).into(), (n as i64 + 1).into());
    let mut log = MoveLog::new(tree, config);

    // Load phase: shallowest slot exits first, stacking deepest-first.
    // Levels count from the branching vertex; slot k loads at level k+1.
    let mut buf1: Vec<(usize, usize)> = Vec::new(); // (agent, level), deepest first
    for k in (0..n).rev() {
        let agent = current[k];
        let mut chain = vec![slots[k].clone()];
        chain.extend(corridor.iter().map(|&v| GraphPoint::Vertex(v)));
        chain.push(buffer_point(tree, star, buf1_edge, level_param(k + 1))?);
        log.push_move(agent, chain);
        buf1.push((agent, k + 1));
    }

    // Emit phase, deepest target slot first.
    for (k, &needed) in target.iter().enumerate() {
        let mut buf2: Vec<(usize, usize)> = Vec::new();
        while buf1.last().map(|&(a, _)| a) != Some(needed) {
            let (agent, level) = buf1.pop().expect("needed agent is in buffer 1");
            let to_level = n - buf2.len();
            let chain = vec![
                buffer_point(tree, star, buf1_edge, level_param(level))?,
                GraphPoint::Vertex(star),
                buffer_point(tree, star, buf2_edge, level_param(to_level))?,
            ];
            log.push_move(agent, chain);
            buf2.push((agent, to_level));
        }
        let (agent, level) = buf1.pop().unwrap();
        let mut chain = vec![buffer_point(tree, star, buf1_edge, level_param(level))?];
        chain.extend(corridor.iter().rev().map(|&v| GraphPoint::Vertex(v)));
        chain.push(slots[k].clone());
        log.push_move(agent, chain);
        // Recirculate buffer 2 back onto buffer 1.
        while let Some((agent, level)) = buf2.pop() {
            let to_level = n - buf1.len();
            let chain = vec![
                buffer_point(tree, star, buf2_edge, level_param(level))?,
                GraphPoint::Vertex(star),
                buffer_point(tree, star, buf1_edge, level_param(to_level))?,
            ];
            log.push_move(agent, chain);
            buf1.push((agent, to_level));
        }
    }

    debug_assert!((0..n).all(|k| log.current[target[k]] == slots[k]));
    let count = log.move_count();
    Ok((log.into_trajectory()?, count))
}

/// Number of agents located exactly at essential vertices.
pub fn stratum(tree: &RootedTree, config: &Configuration) -> usize {
    config
        .points()
        .iter()
        .filter(|p| match p {
            GraphPoint::Vertex(v) => tree.degree(*v) >= 3,
            GraphPoint::Interior { .. } => false,
        })
        .count()
}

/// Continuity-class index of an input pair: `stratum(a) + stratum(b)`,
/// always within `0 ..= 2 * essential_count`.
pub fn domain_index(tree: &RootedTree, a: &Configuration, b: &Configuration) -> usize {
    stratum(tree, a) + stratum(tree, b)
}

/// Plans a collision-free motion from `a` to `b`.
pub fn plan(tree: &RootedTree, a: &Configuration, b: &Configuration) -> Result<PlanStages> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch);
    }
    let (descent_a, a_parked) = descend_all(tree, a)?;
    let (descent_b, b_parked) = descend_all(tree, b)?;
    let goal_order = root_edge_order(tree, &b_parked)?;
    let permute = permute_on_root(tree, &a_parked, &goal_order)?;
    let (_, reordered) = permute.endpoints(tree)?;
    let slide = slide_on_root_edge(tree, &reordered, &b_parked)?;
    let combined = normalize_time(
        tree,
        &concat(
            tree,
            &descent_a,
            &concat(
                tree,
                &permute,
                &concat(tree, &slide, &descent_b.reverse())?,
            )?,
        )?,
    )?;
    Ok(PlanStages {
        descent_a,
        permute,
        slide,
        descent_b,
        combined,
        domain_index: domain_index(tree, a, b),
    })
}

/// Slot-wise simultaneous slide between two configurations inside the
/// root edge with identical slot orders. Order preservation makes the
/// linear interpolation collision-free.
fn slide_on_root_edge(
    tree: &RootedTree,
    from: &Configuration,
    to: &Configuration,
) -> Result<Trajectory> {
    if from.len() != to.len() {
        return Err(Error::DimensionMismatch);
    }
    if root_edge_order(tree, from)? != root_edge_order(tree, to)? {
        return Err(Error::Validation("slide requires identical slot orders".into()));
    }
    let agents = from
        .points()
        .iter()
        .zip(to.points())
        .map(|(p, q)| {
            vec![
                Breakpoint {
                    time: Frac::zero(),
                    point: p.clone(),
                },
                Breakpoint {
                    time: Frac::one(),
                    point: q.clone(),
                },
            ]
        })
        .collect();
    let raw = Trajectory::new(tree, agents)?;
    normalize_time(tree, &raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::{h_tree, y_tree};
    use crate::motion::{check_collision_free, sup_distance};
    use crate::num::frac;

    fn rooted_y() -> RootedTree {
        let g = y_tree();
        let r = g.vertex_by_name("r").unwrap();
        RootedTree::new(g, r).unwrap()
    }

    fn rooted_h() -> RootedTree {
        let g = h_tree();
        let a = g.vertex_by_name("a").unwrap();
        RootedTree::new(g, a).unwrap()
    }

    fn vx(t: &RootedTree, name: &str) -> GraphPoint {
        GraphPoint::Vertex(t.vertex_by_name(name).unwrap())
    }

    fn ep(t: &RootedTree, edge: &str, num: i64, den: i64) -> GraphPoint {
        GraphPoint::on_edge(t, t.edge_by_name(edge).unwrap(), frac(num, den)).unwrap()
    }

    fn cfg(t: &RootedTree, points: Vec<GraphPoint>) -> Configuration {
        Configuration::new(t, points).unwrap()
    }

    #[test]
    fn minimal_points_examples() {
        let t = rooted_y();
        // Both points on different branches: incomparable, both minimal.
        let c = cfg(&t, vec![ep(&t, "ca", 1, 2), ep(&t, "cb", 1, 2)]);
        assert_eq!(minimal_points(&t, &c).unwrap(), vec![0, 1]);
        // Two points up one branch: only the lower one is minimal.
        let c = cfg(&t, vec![ep(&t, "ca", 8, 10), ep(&t, "ca", 3, 10)]);
        assert_eq!(minimal_points(&t, &c).unwrap(), vec![1]);
        // Point inside the root edge is below a branch point.
        // Edge cr runs c->r, so t=3/4 is near the root.
        let c = cfg(&t, vec![ep(&t, "cr", 3, 4), ep(&t, "ca", 1, 2)]);
        assert_eq!(minimal_points(&t, &c).unwrap(), vec![0]);
    }

    #[test]
    fn single_agent_descends_to_middle_slot() {
        let t = rooted_y();
        let c = cfg(&t, vec![ep(&t, "ca", 1, 2)]);
        let (tr, parked) = descend_all(&t, &c).unwrap();
        assert_eq!(parked.points()[0], t.point_at_root_param(frac(1, 2)).unwrap());
        assert!(check_collision_free(&t, &tr).unwrap().is_clear());
        let (start, end) = tr.endpoints(&t).unwrap();
        assert_eq!(start, c);
        assert_eq!(end, parked);
    }

    #[test]
    fn two_branch_agents_park_in_index_order() {
        let t = rooted_y();
        let c = cfg(&t, vec![ep(&t, "ca", 1, 2), ep(&t, "cb", 1, 2)]);
        let (tr, parked) = descend_all(&t, &c).unwrap();
        assert_eq!(parked.points()[0], t.point_at_root_param(frac(1, 3)).unwrap());
        assert_eq!(parked.points()[1], t.point_at_root_param(frac(2, 3)).unwrap());
        assert!(check_collision_free(&t, &tr).unwrap().is_clear());
    }

    #[test]
    fn reparks_on_edge_agents_preserving_order() {
        let t = rooted_y();
        // Already exactly in slots: no motion at all.
        let slots = canonical_slots(&t, 2).unwrap();
        let c = cfg(&t, slots.clone());
        let (tr, parked) = descend_all(&t, &c).unwrap();
        assert_eq!(parked.points(), c.points());
        let (s, e) = tr.endpoints(&t).unwrap();
        assert_eq!(s, e);

        // Crowded near the root: both agents move up, order preserved,
        // no crossing. Root params 1/20 and 4/20.
        let p1 = t.point_at_root_param(frac(1, 20)).unwrap();
        let p2 = t.point_at_root_param(frac(4, 20)).unwrap();
        let c = cfg(&t, vec![p1, p2]);
        let (tr, parked) = descend_all(&t, &c).unwrap();
        assert!(check_collision_free(&t, &tr).unwrap().is_clear());
        assert_eq!(parked.points()[0], slots[0]);
        assert_eq!(parked.points()[1], slots[1]);

        // Agents parked in reverse depth order keep their relative order.
        let q1 = t.point_at_root_param(frac(9, 10)).unwrap();
        let q2 = t.point_at_root_param(frac(1, 10)).unwrap();
        let c = cfg(&t, vec![q1, q2]);
        let (tr, parked) = descend_all(&t, &c).unwrap();
        assert!(check_collision_free(&t, &tr).unwrap().is_clear());
        assert_eq!(root_edge_order(&t, &parked).unwrap(), vec![1, 0]);
    }

    #[test]
    fn descend_handles_vertex_sitters() {
        let t = rooted_y();
        // One agent exactly at the essential vertex, one at the root.
        let c = cfg(&t, vec![vx(&t, "c"), vx(&t, "r")]);
        let (tr, parked) = descend_all(&t, &c).unwrap();
        assert!(check_collision_free(&t, &tr).unwrap().is_clear());
        assert_eq!(root_edge_order(&t, &parked).unwrap(), vec![1, 0]);
    }

    #[test]
    fn descend_requires_essential_vertex() {
        let g = crate::suite::single_edge();
        let u = g.vertex_by_name("u").unwrap();
        let t = RootedTree::new(g, u).unwrap();
        let c = cfg(&t, vec![ep(&t, "e", 1, 2)]);
        assert_eq!(descend_all(&t, &c).unwrap_err(), Error::NoEssentialVertex);
    }

    #[test]
    fn root_edge_order_matches_sort_oracle() {
        let t = rooted_y();
        let params = [frac(5, 11), frac(2, 11), frac(9, 11), frac(7, 11), frac(3, 11)];
        let points: Vec<GraphPoint> = params
            .iter()
            .map(|p| t.point_at_root_param(p.clone()).unwrap())
            .collect();
        let c = cfg(&t, points);
        let order = root_edge_order(&t, &c).unwrap();
        // Brute-force sort by distance to the root.
        let mut expect: Vec<usize> = (0..5).collect();
        expect.sort_by(|&i, &j| params[i].cmp(&params[j]));
        assert_eq!(order, expect);

        let off = cfg(&t, vec![ep(&t, "ca", 1, 2)]);
        assert_eq!(root_edge_order(&t, &off).unwrap_err(), Error::NotOnRootEdge);
    }

    #[test]
    fn permute_identity_is_constant() {
        let t = rooted_y();
        let slots = canonical_slots(&t, 3).unwrap();
        let c = cfg(&t, slots);
        let (tr, count) = permute_on_root_with_count(&t, &c, &[0, 1, 2]).unwrap();
        assert_eq!(count, 0);
        let (s, e) = tr.endpoints(&t).unwrap();
        assert_eq!(s, c);
        assert_eq!(e, c);
    }

    #[test]
    fn permute_swap_two_agents() {
        let t = rooted_y();
        let slots = canonical_slots(&t, 2).unwrap();
        let c = cfg(&t, slots.clone());
        let (tr, _) = permute_on_root_with_count(&t, &c, &[1, 0]).unwrap();
        assert!(check_collision_free(&t, &tr).unwrap().is_clear());
        let (_, end) = tr.endpoints(&t).unwrap();
        assert_eq!(end.points()[1], slots[0]);
        assert_eq!(end.points()[0], slots[1]);
    }

    #[test]
    fn permute_reversal_of_four_within_move_bound() {
        let t = rooted_y();
        let n = 4;
        let slots = canonical_slots(&t, n).unwrap();
        let c = cfg(&t, slots.clone());
        let (tr, count) = permute_on_root_with_count(&t, &c, &[3, 2, 1, 0]).unwrap();
        assert!(count <= 2 * n * n, "{count} moves exceed 2n^2");
        assert!(check_collision_free(&t, &tr).unwrap().is_clear());
        let (_, end) = tr.endpoints(&t).unwrap();
        for k in 0..n {
            assert_eq!(end.points()[3 - k], slots[k]);
        }
    }

    #[test]
    fn permute_rejects_offslot_configurations() {
        let t = rooted_y();
        let c = cfg(&t, vec![ep(&t, "cr", 1, 5), ep(&t, "cr", 2, 5)]);
        assert_eq!(
            permute_on_root(&t, &c, &[1, 0]).unwrap_err(),
            Error::NotInCanonicalSlots
        );
    }

    #[test]
    fn plan_round_trip_with_equal_endpoints() {
        let t = rooted_y();
        let a = cfg(&t, vec![ep(&t, "ca", 1, 2), ep(&t, "cb", 1, 2)]);
        let stages = plan(&t, &a, &a).unwrap();
        let (s, e) = stages.combined.endpoints(&t).unwrap();
        assert_eq!(s, a);
        assert_eq!(e, a);
        assert!(check_collision_free(&t, &stages.combined).unwrap().is_clear());
    }

    #[test]
    fn plan_swaps_two_agents_on_y_tree() {
        let t = rooted_y();
        let a = cfg(&t, vec![ep(&t, "ca", 1, 2), ep(&t, "cb", 1, 2)]);
        let b = cfg(&t, vec![ep(&t, "cb", 1, 2), ep(&t, "ca", 1, 2)]);
        let stages = plan(&t, &a, &b).unwrap();
        let (s, e) = stages.combined.endpoints(&t).unwrap();
        assert_eq!(s, a);
        assert_eq!(e, b);
        assert!(check_collision_free(&t, &stages.combined).unwrap().is_clear());
        // The staged invariant: combined equals the normalized concatenation.
        let rebuilt = normalize_time(
            &t,
            &concat(
                &t,
                &stages.descent_a,
                &concat(
                    &t,
                    &stages.permute,
                    &concat(&t, &stages.slide, &stages.descent_b.reverse()).unwrap(),
                )
                .unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(rebuilt, stages.combined);
    }

    #[test]
    fn plan_on_h_tree_with_four_agents() {
        let t = rooted_h();
        let a = cfg(
            &t,
            vec![
                ep(&t, "e2", 1, 2),
                ep(&t, "e4", 1, 2),
                ep(&t, "e5", 1, 2),
                vx(&t, "v2"),
            ],
        );
        let b = cfg(
            &t,
            vec![
                ep(&t, "e5", 1, 3),
                ep(&t, "e2", 2, 3),
                vx(&t, "v1"),
                ep(&t, "e4", 1, 5),
            ],
        );
        let stages = plan(&t, &a, &b).unwrap();
        let (s, e) = stages.combined.endpoints(&t).unwrap();
        assert_eq!(s, a);
        assert_eq!(e, b);
        assert!(check_collision_free(&t, &stages.combined).unwrap().is_clear());
        assert_eq!(stages.domain_index, 2);
    }

    #[test]
    fn stratum_counts_essential_sitters_only() {
        let t = rooted_h();
        let c = cfg(
            &t,
            vec![vx(&t, "v1"), vx(&t, "v2"), ep(&t, "e1", 9, 10)],
        );
        assert_eq!(stratum(&t, &c), 2);
        let c = cfg(&t, vec![ep(&t, "e1", 1, 2), vx(&t, "b")]);
        assert_eq!(stratum(&t, &c), 0);
    }

    #[test]
    fn domain_index_bounded_by_two_m() {
        let t = rooted_h();
        let a = cfg(&t, vec![vx(&t, "v1"), vx(&t, "v2")]);
        let b = cfg(&t, vec![vx(&t, "v2"), vx(&t, "v1")]);
        assert_eq!(domain_index(&t, &a, &b), 4);
        assert_eq!(2 * t.essential_count(), 4);
        let c = cfg(&t, vec![ep(&t, "e1", 1, 2), ep(&t, "e4", 1, 2)]);
        assert_eq!(domain_index(&t, &c, &c), 0);
    }

    #[test]
    fn deterministic_outputs() {
        let t = rooted_h();
        let a = cfg(&t, vec![ep(&t, "e1", 1, 2), ep(&t, "e4", 1, 2), vx(&t, "v2")]);
        let b = cfg(&t, vec![ep(&t, "e5", 1, 2), ep(&t, "e2", 1, 2), ep(&t, "e3", 1, 2)]);
        let p1 = plan(&t, &a, &b).unwrap();
        let p2 = plan(&t, &a, &b).unwrap();
        assert_eq!(p1.combined, p2.combined);
        assert_eq!(sup_distance(&t, &p1.combined, &p2.combined).unwrap(), frac(0, 1));
    }
}
