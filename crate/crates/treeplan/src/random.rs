//! Multi-valued random motion plans built from the staged planner.
//!
//! A random plan between two configurations is a list of exactly
//! `2m + 1` (probability, trajectory) entries, `m` the number of
//! essential vertices. The probabilities come from per-agent bump
//! functions around the essential vertices, combined into an exact
//! occupancy distribution and convolved across the two configurations;
//! they vary continuously with the input, which is the whole point.
//! Each entry's trajectory is the staged plan applied after snapping
//! near-vertex agents onto or off their vertices so the pair sits in the
//! stratum class the entry stands for, with short connectors keeping the
//! endpoints exact.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gen;
use crate::graph::{Configuration, EdgeId, GraphPoint, RootedTree, VertexId};
use crate::motion::{concat, normalize_time, sup_distance, Trajectory};
use crate::num::{frac, Frac};
use crate::planner::{plan, stratum, MoveLog};
use num_traits::{One, Signed, Zero};

/// Radius of the bump around each essential vertex, in length units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BumpParams {
    epsilon: Frac,
}

impl BumpParams {
    /// Requires `0 < epsilon < (shortest edge)/2`, so the bumps around
    /// distinct essential vertices have disjoint supports.
    pub fn new(tree: &RootedTree, epsilon: Frac) -> Result<BumpParams> {
        let limit = tree.shortest_edge_length() / frac(2, 1);
        if !epsilon.is_positive() || epsilon >= limit {
            return Err(Error::Validation(format!(
                "epsilon must be in (0, {limit}), got {epsilon}"
            )));
        }
        Ok(BumpParams { epsilon })
    }

    /// Default radius: a tenth of the shortest edge length.
    pub fn default_for(tree: &RootedTree) -> BumpParams {
        BumpParams {
            epsilon: tree.shortest_edge_length() / frac(10, 1),
        }
    }

    pub fn epsilon(&self) -> &Frac {
        &self.epsilon
    }
}

/// Per-agent proximity to the essential vertices: `max(0, 1 - d/eps)`,
/// 1 exactly on a vertex, 0 at distance `eps` and beyond; continuous in
/// the configuration.
pub fn vertex_proximity(
    tree: &RootedTree,
    config: &Configuration,
    eps: &BumpParams,
) -> Result<Vec<Frac>> {
    config
        .points()
        .iter()
        .map(|p| {
            let d = tree
                .distance_to_nearest_essential(p)?
                .ok_or(Error::NoEssentialVertex)?;
            let b = Frac::one() - d / &eps.epsilon;
            Ok(if b.is_negative() { Frac::zero() } else { b })
        })
        .collect()
}

/// Exact-count occupancy distribution: `q[i]` is the probability that
/// exactly `i` independent events with probabilities `b` occur. Sums to
/// one exactly, and reduces to the one-hot stratum indicator when every
/// `b` is 0 or 1.
pub fn occupancy_weights(bumps: &[Frac]) -> Vec<Frac> {
    let mut q = vec![Frac::one()];
    for b in bumps {
        let not_b = Frac::one() - b;
        let mut next = vec![Frac::zero(); q.len() + 1];
        for (i, qi) in q.iter().enumerate() {
            next[i] += qi * &not_b;
            next[i + 1] += qi * b;
        }
        q = next;
    }
    q
}

/// One weighted state of a random plan.
#[derive(Clone, Debug)]
pub struct RandomPlanEntry {
    pub probability: Frac,
    pub trajectory: Trajectory,
    /// The stratum pair the entry's snap realized; `None` when the plain
    /// unsnapped plan is carried (zero-probability entries and the rare
    /// infeasible-snap fallback).
    pub snapped: Option<(usize, usize)>,
}

/// Ordered list of `2m + 1` weighted trajectories sharing endpoints.
#[derive(Clone, Debug)]
pub struct RandomPlan {
    pub entries: Vec<RandomPlanEntry>,
}

impl RandomPlan {
    pub fn probability_sum(&self) -> Frac {
        self.entries.iter().map(|e| e.probability.clone()).sum()
    }
}

/// Snapped variant of a configuration with exactly `target` agents on
/// essential vertices, or `None` when no snap reaches that stratum.
///
/// Agents within `eps` of their (unique) nearest essential vertex are
/// the candidates. The `target` of them with the largest bump values are
/// placed on their vertices, greedily skipping vertices already taken;
/// the rest stay where they are, except agents parked exactly on a
/// vertex, which step onto a clear incident edge.
fn snap_config(
    tree: &RootedTree,
    config: &Configuration,
    eps: &BumpParams,
    target: usize,
) -> Result<Option<Configuration>> {
    let n = config.len();
    if target > n {
        return Ok(None);
    }
    let essentials = tree.essential_vertices();
    // (distance, agent, nearest essential vertex)
    let mut candidates: Vec<(Frac, usize, VertexId)> = Vec::new();
    for (j, p) in config.points().iter().enumerate() {
        let mut best: Option<(Frac, VertexId)> = None;
        for &v in &essentials {
            let d = tree.point_distance(p, &GraphPoint::Vertex(v))?;
            if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, v));
            }
        }
        let (d, v) = best.ok_or(Error::NoEssentialVertex)?;
        if d < *eps.epsilon() {
            candidates.push((d, j, v));
        }
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut used: Vec<VertexId> = Vec::new();
    let mut onto: Vec<(usize, VertexId)> = Vec::new();
    for (_, j, v) in &candidates {
        if onto.len() == target {
            break;
        }
        if !used.contains(v) {
            used.push(*v);
            onto.push((*j, *v));
        }
    }
    if onto.len() < target {
        return Ok(None);
    }

    let mut points = config.points().to_vec();
    // The edge along which the chosen agent will approach its vertex;
    // a displaced agent must not step onto it.
    let mut approach: Vec<(VertexId, EdgeId)> = Vec::new();
    for &(j, v) in &onto {
        if let GraphPoint::Interior { edge, .. } = config.point(j) {
            approach.push((v, *edge));
        }
        points[j] = GraphPoint::Vertex(v);
    }
    for (_, j, v) in &candidates {
        if onto.iter().any(|(oj, _)| oj == j) {
            continue;
        }
        if !matches!(config.point(*j), GraphPoint::Vertex(_)) {
            continue; // already off the vertex, stays put
        }
        // Step off the vertex onto the incident edge with the most
        // clearance, avoiding the approach edge.
        let blocked = approach
            .iter()
            .find(|(av, _)| av == v)
            .map(|&(_, e)| e);
        let mut best: Option<(Frac, EdgeId)> = None;
        for &(e, _) in tree.incident(*v) {
            if Some(e) == blocked {
                continue;
            }
            let clearance = points
                .iter()
                .enumerate()
                .filter(|(other, _)| other != j)
                .filter_map(|(_, p)| match p {
                    GraphPoint::Interior { edge, t } if *edge == e => {
                        let len = tree.edge(e).length();
                        Some(if tree.edge(e).ends().0 == *v {
                            t * len
                        } else {
                            (Frac::one() - t) * len
                        })
                    }
                    _ => None,
                })
                .min()
                .unwrap_or_else(|| tree.edge(e).length().clone());
            if best.as_ref().is_none_or(|(bc, _)| clearance > *bc) {
                best = Some((clearance, e));
            }
        }
        let (clearance, edge) = best.expect("essential vertex keeps a free edge");
        let step = std::cmp::min(eps.epsilon().clone(), clearance) / frac(2, 1);
        let len = tree.edge(edge).length();
        let t = if tree.edge(edge).ends().0 == *v {
            &step / len
        } else {
            Frac::one() - &step / len
        };
        points[*j] = GraphPoint::on_edge(tree, edge, t)?;
    }
    match Configuration::new(tree, points) {
        Ok(snapped) => {
            debug_assert_eq!(stratum(tree, &snapped), target);
            Ok(Some(snapped))
        }
        Err(_) => Ok(None),
    }
}

/// Short motion from a configuration to its snapped variant: agents
/// stepping off vertices move first, agents stepping onto vertices move
/// last, one at a time. Within the disjoint bumps these motions cannot
/// collide. `None` when nothing moves.
fn snap_connector(
    tree: &RootedTree,
    from: &Configuration,
    to: &Configuration,
) -> Result<Option<Trajectory>> {
    if from == to {
        return Ok(None);
    }
    let mut log = MoveLog::new(tree, from);
    for (j, (p, q)) in from.points().iter().zip(to.points()).enumerate() {
        if p != q && matches!(p, GraphPoint::Vertex(_)) {
            log.push_move(j, vec![p.clone(), q.clone()]);
        }
    }
    for (j, (p, q)) in from.points().iter().zip(to.points()).enumerate() {
        if p != q && !matches!(p, GraphPoint::Vertex(_)) {
            log.push_move(j, vec![p.clone(), q.clone()]);
        }
    }
    Ok(Some(log.into_trajectory()?))
}

/// A full random plan: `2m + 1` entries with exact probabilities summing
/// to one, every positive-probability trajectory collision-free from `a`
/// to `b` exactly.
pub fn random_plan(
    tree: &RootedTree,
    a: &Configuration,
    b: &Configuration,
    eps: &BumpParams,
) -> Result<RandomPlan> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch);
    }
    let m = tree.essential_count();
    if m == 0 {
        return Err(Error::NoEssentialVertex);
    }
    let n = a.len();
    let qa = occupancy_weights(&vertex_proximity(tree, a, eps)?);
    let qb = occupancy_weights(&vertex_proximity(tree, b, eps)?);
    let k_max = 2 * m;
    let mut probabilities = vec![Frac::zero(); k_max + 1];
    for (i, pa) in qa.iter().enumerate() {
        for (j, pb) in qb.iter().enumerate() {
            let k = (i + j).min(k_max); // indices past 2m fold into the last entry
            probabilities[k] += pa * pb;
        }
    }

    let fallback = plan(tree, a, b)?.combined;
    // Snapped variants per side, shared by all entries.
    let snapped_a: Vec<Option<Configuration>> = (0..=n)
        .map(|i| snap_config(tree, a, eps, i))
        .collect::<Result<_>>()?;
    let snapped_b: Vec<Option<Configuration>> = (0..=n)
        .map(|j| snap_config(tree, b, eps, j))
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(k_max + 1);
    for (k, p) in probabilities.into_iter().enumerate() {
        if p.is_zero() {
            entries.push(RandomPlanEntry {
                probability: p,
                trajectory: fallback.clone(),
                snapped: None,
            });
            continue;
        }
        // Choose a snappable stratum pair for this entry: exact sum k if
        // possible, otherwise the nearest feasible smaller sum (folded
        // tail mass can exceed what distinct vertices can host). Among
        // splits of equal sum the heaviest probability mass wins, so the
        // realized section only switches where masses cross.
        let mut chosen_split: Option<(usize, usize)> = None;
        'sums: for sum in (0..=k).rev() {
            let lo = sum.saturating_sub(n);
            let mut splits: Vec<(Frac, usize)> = (lo..=sum.min(n))
                .filter(|&i| snapped_a[i].is_some() && snapped_b[sum - i].is_some())
                .map(|i| (&qa[i] * &qb[sum - i], i))
                .collect();
            if splits.is_empty() {
                continue;
            }
            splits.sort_by(|x, y| y.0.cmp(&x.0).then(y.1.cmp(&x.1)));
            chosen_split = Some((splits[0].1, sum - splits[0].1));
            break 'sums;
        }
        match chosen_split {
            Some((i, j)) => {
                let sa = snapped_a[i].as_ref().unwrap();
                let sb = snapped_b[j].as_ref().unwrap();
                let mut path = plan(tree, sa, sb)?.combined;
                if let Some(intro) = snap_connector(tree, a, sa)? {
                    path = concat(tree, &intro, &path)?;
                }
                if let Some(outro) = snap_connector(tree, b, sb)? {
                    path = concat(tree, &path, &outro.reverse())?;
                }
                entries.push(RandomPlanEntry {
                    probability: p,
                    trajectory: normalize_time(tree, &path)?,
                    snapped: Some((i, j)),
                });
            }
            // No snap at all (pathological crowding): plain plan.
            None => entries.push(RandomPlanEntry {
                probability: p,
                trajectory: fallback.clone(),
                snapped: None,
            }),
        }
    }
    Ok(RandomPlan { entries })
}

/// Distance between two random plans over the same endpoints: total
/// variation of the probability vectors plus the trajectory deviations
/// weighted by the shared probability mass.
pub fn plan_deviation(tree: &RootedTree, x: &RandomPlan, y: &RandomPlan) -> Result<Frac> {
    if x.entries.len() != y.entries.len() {
        return Err(Error::DimensionMismatch);
    }
    let mut total = Frac::zero();
    for (ex, ey) in x.entries.iter().zip(&y.entries) {
        total += (&ex.probability - &ey.probability).abs();
        let shared = std::cmp::min(ex.probability.clone(), ey.probability.clone());
        if shared.is_positive() {
            total += shared * sup_distance(tree, &ex.trajectory, &ey.trajectory)?;
        }
    }
    Ok(total)
}

/// Outcome of [`continuity_probe`].
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub trials: usize,
    pub deltas: Vec<Frac>,
    /// Largest deviation observed at each delta, over all trials.
    pub max_deviation: Vec<Frac>,
}

impl ProbeReport {
    pub fn monotone_nonincreasing(&self) -> bool {
        self.max_deviation.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn shrinks_overall(&self) -> bool {
        match (self.max_deviation.first(), self.max_deviation.last()) {
            (Some(first), Some(last)) => last < first || first.is_zero(),
            _ => false,
        }
    }
}

/// Samples random endpoint pairs, perturbs every agent by scales
/// `1e-2, 1e-3, 1e-4`, and records how far the random plan moves:
/// deviations must shrink with the perturbation for the construction to
/// count as continuous in practice.
pub fn continuity_probe(
    tree: &RootedTree,
    seed: u64,
    trials: usize,
    eps: &BumpParams,
) -> Result<ProbeReport> {
    let deltas = vec![frac(1, 100), frac(1, 1000), frac(1, 10_000)];
    let mut rng = gen::rng(seed);
    let mut max_deviation = vec![Frac::zero(); deltas.len()];
    for _ in 0..trials {
        let n = rng.gen_range(2..=3);
        let a = gen::random_configuration(&mut rng, tree, n, 0.35);
        let b = gen::random_configuration(&mut rng, tree, n, 0.35);
        let base = random_plan(tree, &a, &b, eps)?;
        for (di, delta) in deltas.iter().enumerate() {
            let Some(a2) = gen::perturb_any(&mut rng, tree, &a, delta) else {
                continue;
            };
            let Some(b2) = gen::perturb_any(&mut rng, tree, &b, delta) else {
                continue;
            };
            let moved = random_plan(tree, &a2, &b2, eps)?;
            let deviation = plan_deviation(tree, &base, &moved)?;
            if deviation > max_deviation[di] {
                max_deviation[di] = deviation;
            }
        }
    }
    Ok(ProbeReport {
        trials,
        deltas,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::check_collision_free;
    use crate::planner::domain_index;
    use crate::suite::{rooted, y_tree};
    use num_traits::ToPrimitive;

    fn rooted_y() -> RootedTree {
        rooted(y_tree())
    }

    fn ep(t: &RootedTree, edge: &str, num: i64, den: i64) -> GraphPoint {
        GraphPoint::on_edge(t, t.edge_by_name(edge).unwrap(), frac(num, den)).unwrap()
    }

    fn vx(t: &RootedTree, name: &str) -> GraphPoint {
        GraphPoint::Vertex(t.vertex_by_name(name).unwrap())
    }

    #[test]
    fn proximity_bump_shape() {
        let t = rooted_y();
        let eps = BumpParams::new(&t, frac(1, 10)).unwrap();
        // At the vertex, at eps/2, and beyond eps.
        let c = Configuration::new(
            &t,
            vec![vx(&t, "c"), ep(&t, "ca", 1, 20), ep(&t, "ca", 1, 2)],
        )
        .unwrap();
        let b = vertex_proximity(&t, &c, &eps).unwrap();
        assert_eq!(b[0], frac(1, 1));
        assert_eq!(b[1], frac(1, 2));
        assert_eq!(b[2], frac(0, 1));
    }

    #[test]
    fn occupancy_examples() {
        let q = occupancy_weights(&[frac(0, 1), frac(0, 1), frac(0, 1)]);
        assert_eq!(q, vec![frac(1, 1), frac(0, 1), frac(0, 1), frac(0, 1)]);
        let q = occupancy_weights(&[frac(1, 1), frac(0, 1)]);
        assert_eq!(q, vec![frac(0, 1), frac(1, 1), frac(0, 1)]);
        let q = occupancy_weights(&[frac(1, 2), frac(1, 2)]);
        assert_eq!(q, vec![frac(1, 4), frac(1, 2), frac(1, 4)]);
        // Sums to one exactly for arbitrary bumps.
        let q = occupancy_weights(&[frac(1, 3), frac(2, 7), frac(5, 11)]);
        let sum: Frac = q.iter().cloned().sum();
        assert_eq!(sum, frac(1, 1));
    }

    #[test]
    fn far_from_vertices_is_one_hot_at_zero() {
        let t = rooted_y();
        let eps = BumpParams::default_for(&t);
        let a = Configuration::new(&t, vec![ep(&t, "ca", 1, 2), ep(&t, "cb", 1, 2)]).unwrap();
        let b = Configuration::new(&t, vec![ep(&t, "cb", 3, 4), ep(&t, "ca", 3, 4)]).unwrap();
        let rp = random_plan(&t, &a, &b, &eps).unwrap();
        assert_eq!(rp.entries.len(), 3);
        assert_eq!(rp.probability_sum(), frac(1, 1));
        assert_eq!(rp.entries[0].probability, frac(1, 1));
        assert_eq!(rp.entries[1].probability, frac(0, 1));
        // The carried path is the plain plan.
        let direct = plan(&t, &a, &b).unwrap().combined;
        assert_eq!(rp.entries[0].trajectory, direct);
    }

    #[test]
    fn vertex_exact_pair_is_one_hot_at_domain_index() {
        let t = rooted_y();
        let eps = BumpParams::default_for(&t);
        let a = Configuration::new(&t, vec![vx(&t, "c"), ep(&t, "cb", 1, 2)]).unwrap();
        let b = Configuration::new(&t, vec![ep(&t, "ca", 1, 2), ep(&t, "cb", 3, 4)]).unwrap();
        let rp = random_plan(&t, &a, &b, &eps).unwrap();
        let k = domain_index(&t, &a, &b);
        assert_eq!(k, 1);
        for (i, e) in rp.entries.iter().enumerate() {
            assert_eq!(e.probability, if i == k { frac(1, 1) } else { frac(0, 1) });
        }
        assert_eq!(rp.entries[k].trajectory, plan(&t, &a, &b).unwrap().combined);
        assert_eq!(rp.entries[k].snapped, Some((1, 0)));
    }

    #[test]
    fn half_bump_splits_mass() {
        let t = rooted_y();
        let eps = BumpParams::new(&t, frac(1, 10)).unwrap();
        // One agent at eps/2 from the center, everything else far away.
        let a = Configuration::new(&t, vec![ep(&t, "ca", 1, 20), ep(&t, "cb", 1, 2)]).unwrap();
        let b = Configuration::new(&t, vec![ep(&t, "cb", 3, 4), ep(&t, "ca", 3, 4)]).unwrap();
        let rp = random_plan(&t, &a, &b, &eps).unwrap();
        assert_eq!(rp.entries[0].probability, frac(1, 2));
        assert_eq!(rp.entries[1].probability, frac(1, 2));
        assert_eq!(rp.entries[2].probability, frac(0, 1));
        // Both positive entries carry collision-free paths with the exact
        // endpoints.
        for e in &rp.entries[..2] {
            assert!(check_collision_free(&t, &e.trajectory).unwrap().is_clear());
            let (s, f) = e.trajectory.endpoints(&t).unwrap();
            assert_eq!(s, a);
            assert_eq!(f, b);
        }
        // Entry 1 snapped the near-vertex agent onto the center.
        assert_eq!(rp.entries[1].snapped, Some((1, 0)));
    }

    #[test]
    fn snap_handles_agent_parked_on_vertex_that_must_leave() {
        let t = rooted_y();
        let eps = BumpParams::new(&t, frac(1, 10)).unwrap();
        // Agent 0 on the center vertex; stratum-0 snap must move it off.
        let a = Configuration::new(&t, vec![vx(&t, "c"), ep(&t, "ca", 1, 2)]).unwrap();
        let snapped = snap_config(&t, &a, &eps, 0).unwrap().unwrap();
        assert_eq!(stratum(&t, &snapped), 0);
        assert!(matches!(snapped.point(0), GraphPoint::Interior { .. }));
        let d = t.point_distance(a.point(0), snapped.point(0)).unwrap();
        assert!(d < frac(1, 10));
        // And a stratum-1 snap keeps it there.
        let kept = snap_config(&t, &a, &eps, 1).unwrap().unwrap();
        assert_eq!(kept.point(0), a.point(0));
        // Stratum 2 is out of reach: only one essential vertex.
        assert!(snap_config(&t, &a, &eps, 2).unwrap().is_none());
    }

    #[test]
    fn unreachable_sum_snaps_to_nearest_feasible() {
        // Two agents within eps of the same essential vertex: the sums 2
        // and... 2 is unreachable (one vertex hosts one agent), so the
        // folded tail entry k = 2 keeps positive probability yet snaps
        // to the nearest feasible pair (1, 0).
        let t = rooted_y();
        let eps = BumpParams::new(&t, frac(1, 10)).unwrap();
        let a = Configuration::new(&t, vec![ep(&t, "ca", 1, 20), ep(&t, "cb", 1, 20)]).unwrap();
        assert!(snap_config(&t, &a, &eps, 2).unwrap().is_none());
        let b = Configuration::new(&t, vec![ep(&t, "ca", 3, 4), ep(&t, "cb", 3, 4)]).unwrap();
        let rp = random_plan(&t, &a, &b, &eps).unwrap();
        assert!(rp.entries[2].probability.is_positive());
        assert_eq!(rp.entries[2].snapped, Some((1, 0)));
        // Still collision-free with the exact unsnapped endpoints.
        assert!(check_collision_free(&t, &rp.entries[2].trajectory)
            .unwrap()
            .is_clear());
        let (s, e) = rp.entries[2].trajectory.endpoints(&t).unwrap();
        assert_eq!(s, a);
        assert_eq!(e, b);
    }

    #[test]
    fn probe_deviations_shrink() {
        let t = rooted_y();
        let eps = BumpParams::default_for(&t);
        let report = continuity_probe(&t, 9, 12, &eps).unwrap();
        assert!(report.monotone_nonincreasing(), "{:?}", report.max_deviation);
        assert!(report.shrinks_overall(), "{:?}", report.max_deviation);
        let as_f64: Vec<f64> = report
            .max_deviation
            .iter()
            .map(|d| d.to_f64().unwrap())
            .collect();
        assert!(as_f64[0] < 10.0);
    }
}
