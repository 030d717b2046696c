//! Trajectories: piecewise-linear multi-agent motions with exact kinematics.
//!
//! A [`Trajectory`] holds one breakpoint schedule per agent over global
//! time `[0,1]`. Between consecutive breakpoints an agent moves at
//! constant speed inside the closure of a single edge ("edge-local"
//! segments); longer moves carry explicit vertex breakpoints. All times
//! and positions are rationals, so collision checking reduces to solving
//! linear equations exactly; a verdict here is a proof, not a sample.

use crate::error::{Error, Result};
use crate::graph::{Configuration, EdgeId, Graph, GraphPoint};
use crate::num::Frac;
use num_traits::{One, Signed, Zero};

/// One (time, position) sample of an agent schedule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Breakpoint {
    pub time: Frac,
    pub point: GraphPoint,
}

/// Piecewise-linear motion of `n` labeled agents over `[0,1]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trajectory {
    agents: Vec<Vec<Breakpoint>>,
}

/// Outcome of the exact collision check. A `Collision` reproduces the
/// violation under recheck: both agents evaluate to `position` at `time`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CollisionCertificate {
    Clear,
    Collision {
        time: Frac,
        agents: (usize, usize),
        position: GraphPoint,
    },
}

impl CollisionCertificate {
    pub fn is_clear(&self) -> bool {
        matches!(self, CollisionCertificate::Clear)
    }
}

/// Motion of one agent over one time interval.
#[derive(Clone, Debug)]
enum Seg {
    Stay(GraphPoint),
    Slide { edge: EdgeId, from: Frac, to: Frac },
}

impl Seg {
    /// Classifies the motion between two positions; `Err` when the pair is
    /// not edge-local.
    fn classify(graph: &Graph, p: &GraphPoint, q: &GraphPoint) -> Result<Seg> {
        if p == q {
            return Ok(Seg::Stay(p.clone()));
        }
        let not_local = || {
            Error::MalformedTrajectory(format!(
                "consecutive breakpoints {p:?} -> {q:?} do not share an edge"
            ))
        };
        let edge = match (p, q) {
            (GraphPoint::Vertex(u), GraphPoint::Vertex(v)) => {
                graph.edge_between(*u, *v).ok_or_else(not_local)?
            }
            (GraphPoint::Interior { edge, .. }, GraphPoint::Vertex(_))
            | (GraphPoint::Vertex(_), GraphPoint::Interior { edge, .. })
            | (GraphPoint::Interior { edge, .. }, GraphPoint::Interior { .. }) => *edge,
        };
        let from = p.param_on(graph, edge).ok_or_else(not_local)?;
        let to = q.param_on(graph, edge).ok_or_else(not_local)?;
        Ok(Seg::Slide { edge, from, to })
    }

    fn arc_length(&self, graph: &Graph) -> Frac {
        match self {
            Seg::Stay(_) => Frac::zero(),
            Seg::Slide { edge, from, to } => (to - from).abs() * graph.edge(*edge).length(),
        }
    }

    /// Signed direction of a slide on its edge; 0 for stays.
    fn direction(&self) -> i8 {
        match self {
            Seg::Stay(_) => 0,
            Seg::Slide { from, to, .. } => {
                if to > from {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

impl Trajectory {
    /// Validating constructor.
    pub fn new(graph: &Graph, agents: Vec<Vec<Breakpoint>>) -> Result<Trajectory> {
        if agents.is_empty() {
            return Err(Error::MalformedTrajectory("no agents".into()));
        }
        for (i, schedule) in agents.iter().enumerate() {
            if schedule.len() < 2 {
                return Err(Error::MalformedTrajectory(format!(
                    "agent {i} has fewer than two breakpoints"
                )));
            }
            if !schedule[0].time.is_zero() {
                return Err(Error::MalformedTrajectory(format!(
                    "agent {i} does not start at time 0"
                )));
            }
            if !schedule.last().unwrap().time.is_one() {
                return Err(Error::MalformedTrajectory(format!(
                    "agent {i} does not end at time 1"
                )));
            }
            for pair in schedule.windows(2) {
                if pair[0].time >= pair[1].time {
                    return Err(Error::MalformedTrajectory(format!(
                        "agent {i} has non-increasing times"
                    )));
                }
                graph.validate_point(&pair[0].point)?;
                Seg::classify(graph, &pair[0].point, &pair[1].point)?;
            }
            graph.validate_point(&schedule.last().unwrap().point)?;
        }
        Ok(Trajectory { agents })
    }

    /// Constant trajectory parked at `config`.
    pub fn constant(config: &Configuration) -> Trajectory {
        let agents = config
            .points()
            .iter()
            .map(|p| {
                vec![
                    Breakpoint {
                        time: Frac::zero(),
                        point: p.clone(),
                    },
                    Breakpoint {
                        time: Frac::one(),
                        point: p.clone(),
                    },
                ]
            })
            .collect();
        Trajectory { agents }
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn agent(&self, i: usize) -> &[Breakpoint] {
        &self.agents[i]
    }

    pub fn agents(&self) -> &[Vec<Breakpoint>] {
        &self.agents
    }

    /// Exact position of agent `i` at time `t in [0,1]`.
    pub fn eval(&self, graph: &Graph, agent: usize, t: &Frac) -> Result<GraphPoint> {
        let schedule = &self.agents[agent];
        if t < &schedule[0].time || t > &schedule.last().unwrap().time {
            return Err(Error::MalformedTrajectory(format!("time {t} outside [0,1]")));
        }
        // Find the segment containing t.
        let idx = match schedule.binary_search_by(|b| b.time.cmp(t)) {
            Ok(i) => return Ok(schedule[i].point.clone()),
            Err(i) => i - 1,
        };
        let (b0, b1) = (&schedule[idx], &schedule[idx + 1]);
        match Seg::classify(graph, &b0.point, &b1.point)? {
            Seg::Stay(p) => Ok(p),
            Seg::Slide { edge, from, to } => {
                let u = (t - &b0.time) / (&b1.time - &b0.time);
                let param = &from + (&to - &from) * u;
                GraphPoint::on_edge(graph, edge, param)
            }
        }
    }

    /// Start and end configurations read off the breakpoints.
    pub fn endpoints(&self, graph: &Graph) -> Result<(Configuration, Configuration)> {
        let start: Vec<GraphPoint> = self.agents.iter().map(|s| s[0].point.clone()).collect();
        let end: Vec<GraphPoint> = self
            .agents
            .iter()
            .map(|s| s.last().unwrap().point.clone())
            .collect();
        Ok((
            Configuration::new(graph, start)?,
            Configuration::new(graph, end)?,
        ))
    }

    /// Time reversal; endpoints swap.
    pub fn reverse(&self) -> Trajectory {
        let agents = self
            .agents
            .iter()
            .map(|schedule| {
                schedule
                    .iter()
                    .rev()
                    .map(|b| Breakpoint {
                        time: Frac::one() - &b.time,
                        point: b.point.clone(),
                    })
                    .collect()
            })
            .collect();
        Trajectory { agents }
    }
}

/// Concatenation in time: `a` is compressed onto `[0, 1/2]` and `b` onto
/// `[1/2, 1]`. The end of `a` must equal the start of `b` exactly;
/// canonical timing is restored by [`normalize_time`].
pub fn concat(graph: &Graph, a: &Trajectory, b: &Trajectory) -> Result<Trajectory> {
    if a.agent_count() != b.agent_count() {
        return Err(Error::AgentCountMismatch);
    }
    let (_, a_end) = a.endpoints(graph)?;
    let (b_start, _) = b.endpoints(graph)?;
    if a_end != b_start {
        return Err(Error::EndpointMismatch);
    }
    let half = Frac::new(1.into(), 2.into());
    let agents = a
        .agents
        .iter()
        .zip(&b.agents)
        .map(|(sa, sb)| {
            let mut schedule: Vec<Breakpoint> = sa
                .iter()
                .map(|bp| Breakpoint {
                    time: &bp.time * &half,
                    point: bp.point.clone(),
                })
                .collect();
            // Skip b's first breakpoint: it coincides with a's last.
            schedule.extend(sb.iter().skip(1).map(|bp| Breakpoint {
                time: &half + &bp.time * &half,
                point: bp.point.clone(),
            }));
            schedule
        })
        .collect();
    Ok(Trajectory { agents })
}

/// One maximal linear piece of the whole system's motion.
struct Segment {
    /// Per-agent motion across the piece.
    segs: Vec<Seg>,
    /// Positions at the start and end of the piece.
    start: Vec<GraphPoint>,
    end: Vec<GraphPoint>,
    /// Per-agent and total arc length.
    arcs: Vec<Frac>,
    total_arc: Frac,
}

/// Canonical reparameterization.
///
/// The motion is cut at the union of all breakpoint times, consecutive
/// pieces that continue the same straight system motion are coalesced
/// (a parameterization-independent test on per-agent arc shares), and
/// time is re-allotted so each piece gets a slice proportional to its total
/// arc length, with a minimum slice of `1/(4K)` for `K` pieces so that
/// zero-arc (waiting) pieces keep positive duration. Equal motions (up to
/// time reparameterization) produce identical breakpoint lists,
/// which also makes concatenation associative on the nose.
pub fn normalize_time(graph: &Graph, tr: &Trajectory) -> Result<Trajectory> {
    let tr_checked = Trajectory::new(graph, tr.agents.clone())?;
    let n = tr_checked.agent_count();

    // Global grid: union of every agent's breakpoint times.
    let mut grid: Vec<Frac> = tr_checked
        .agents
        .iter()
        .flat_map(|s| s.iter().map(|b| b.time.clone()))
        .collect();
    grid.sort();
    grid.dedup();

    // Per grid interval, per agent: classified motion.
    let mut segments: Vec<Segment> = Vec::new();
    let mut positions_at: Vec<Vec<GraphPoint>> = Vec::with_capacity(grid.len());
    for t in &grid {
        let mut row = Vec::with_capacity(n);
        for agent in 0..n {
            row.push(tr_checked.eval(graph, agent, t)?);
        }
        positions_at.push(row);
    }
    for w in 0..grid.len() - 1 {
        let mut segs = Vec::with_capacity(n);
        let mut arcs = Vec::with_capacity(n);
        let mut total_arc = Frac::zero();
        for agent in 0..n {
            let seg = Seg::classify(graph, &positions_at[w][agent], &positions_at[w + 1][agent])?;
            let arc = seg.arc_length(graph);
            total_arc += &arc;
            segs.push(seg);
            arcs.push(arc);
        }
        let piece = Segment {
            segs,
            start: positions_at[w].clone(),
            end: positions_at[w + 1].clone(),
            arcs,
            total_arc,
        };
        match segments.last_mut() {
            Some(prev) if can_coalesce(prev, &piece) => {
                // Extend the previous piece.
                for agent in 0..n {
                    if let (Seg::Slide { to, .. }, Seg::Slide { to: new_to, .. }) =
                        (&mut prev.segs[agent], &piece.segs[agent])
                    {
                        *to = new_to.clone();
                    }
                    prev.arcs[agent] += &piece.arcs[agent];
                }
                prev.total_arc += &piece.total_arc;
                prev.end = piece.end;
            }
            _ => segments.push(piece),
        }
    }

    let total: Frac = segments.iter().map(|s| s.total_arc.clone()).sum();
    if total.is_zero() {
        // Nothing ever moves: constant trajectory.
        let start = Configuration::new(graph, positions_at[0].clone())
            .map_err(|_| Error::MalformedTrajectory("coinciding agents".into()))?;
        return Ok(Trajectory::constant(&start));
    }

    // Slice weights: proportional to arc length; only zero-arc (waiting)
    // pieces take the floor, so vanishing motions keep vanishing slices.
    let k = segments.len() as i64;
    let floor = &total / Frac::from_integer((4 * k).into());
    let weights: Vec<Frac> = segments
        .iter()
        .map(|s| {
            if s.total_arc.is_zero() {
                floor.clone()
            } else {
                s.total_arc.clone()
            }
        })
        .collect();
    let weight_sum: Frac = weights.iter().cloned().sum();
    let mut boundaries = Vec::with_capacity(segments.len() + 1);
    boundaries.push(Frac::zero());
    let mut acc = Frac::zero();
    for w in &weights {
        acc += w;
        boundaries.push(&acc / &weight_sum);
    }
    *boundaries.last_mut().unwrap() = Frac::one();

    // Emit per-agent schedules, dropping junctions where the agent's motion
    // continues linearly in the new timing.
    let mut agents: Vec<Vec<Breakpoint>> = Vec::with_capacity(n);
    for agent in 0..n {
        let mut schedule = vec![Breakpoint {
            time: Frac::zero(),
            point: segments[0].start[agent].clone(),
        }];
        for j in 0..segments.len() - 1 {
            let keep = !agent_continues(
                &segments[j].segs[agent],
                &segments[j + 1].segs[agent],
                &segments[j].arcs[agent],
                &segments[j + 1].arcs[agent],
                &weights[j],
                &weights[j + 1],
            );
            if keep {
                schedule.push(Breakpoint {
                    time: boundaries[j + 1].clone(),
                    point: segments[j].end[agent].clone(),
                });
            }
        }
        schedule.push(Breakpoint {
            time: Frac::one(),
            point: segments.last().unwrap().end[agent].clone(),
        });
        agents.push(schedule);
    }
    Ok(Trajectory { agents })
}

/// Two consecutive pieces describe one straight system motion iff every
/// agent continues: stays remain stays at the same point, slides remain on
/// the same edge in the same direction, and each agent keeps its share of
/// the total arc (a cross-multiplied, parameterization-free test).
fn can_coalesce(a: &Segment, b: &Segment) -> bool {
    if a.total_arc.is_zero() != b.total_arc.is_zero() {
        return false;
    }
    if a.total_arc.is_zero() {
        return true; // two waiting pieces
    }
    a.segs.len() == b.segs.len()
        && a.segs.iter().zip(&b.segs).enumerate().all(|(i, (x, y))| {
            match (x, y) {
                (Seg::Stay(p), Seg::Stay(q)) => p == q,
                (Seg::Slide { edge: e, .. }, Seg::Slide { edge: f, .. }) => {
                    e == f
                        && x.direction() == y.direction()
                        && &a.arcs[i] * &b.total_arc == &b.arcs[i] * &a.total_arc
                }
                _ => false,
            }
        })
}

/// Whether one agent's motion passes straight through a piece junction
/// under the final time weights (equal speeds, same edge and direction).
fn agent_continues(x: &Seg, y: &Seg, arc_x: &Frac, arc_y: &Frac, w_x: &Frac, w_y: &Frac) -> bool {
    match (x, y) {
        (Seg::Stay(p), Seg::Stay(q)) => p == q,
        (Seg::Slide { edge: e, .. }, Seg::Slide { edge: f, .. }) => {
            e == f && x.direction() == y.direction() && arc_x * w_y == arc_y * w_x
        }
        _ => false,
    }
}

/// Exact collision check over every agent pair and every instant.
///
/// On each common interval of two agents' (merged) breakpoint grids both
/// motions are linear inside single edges, so coincidence is a linear
/// equation over the rationals. The earliest violation is reported.
pub fn check_collision_free(graph: &Graph, tr: &Trajectory) -> Result<CollisionCertificate> {
    let tr = Trajectory::new(graph, tr.agents.clone())?;
    let n = tr.agent_count();
    let mut earliest: Option<(Frac, (usize, usize), GraphPoint)> = None;
    let record =
        |time: Frac, pair: (usize, usize), pos: GraphPoint, earliest: &mut Option<_>| {
            let better = match earliest.as_ref() {
                None => true,
                Some((t, p, _)) => time < *t || (time == *t && pair < *p),
            };
            if better {
                *earliest = Some((time, pair, pos));
            }
        };

    for i in 0..n {
        for j in i + 1..n {
            let mut grid: Vec<Frac> = tr.agents[i]
                .iter()
                .chain(&tr.agents[j])
                .map(|b| b.time.clone())
                .collect();
            grid.sort();
            grid.dedup();
            for (w, t) in grid.iter().enumerate() {
                let pi = tr.eval(graph, i, t)?;
                let pj = tr.eval(graph, j, t)?;
                if pi == pj {
                    record(t.clone(), (i, j), pi.clone(), &mut earliest);
                    break; // no earlier event exists for this pair
                }
                if w + 1 == grid.len() {
                    break;
                }
                let t_next = &grid[w + 1];
                let qi = tr.eval(graph, i, t_next)?;
                let qj = tr.eval(graph, j, t_next)?;
                let seg_i = Seg::classify(graph, &pi, &qi)?;
                let seg_j = Seg::classify(graph, &pj, &qj)?;
                if let Some((time, pos)) =
                    interior_coincidence(graph, &seg_i, &seg_j, t, t_next)?
                {
                    record(time, (i, j), pos, &mut earliest);
                    break;
                }
            }
        }
    }
    Ok(match earliest {
        None => CollisionCertificate::Clear,
        Some((time, agents, position)) => CollisionCertificate::Collision {
            time,
            agents,
            position,
        },
    })
}

/// Earliest coincidence strictly inside a window where both motions are
/// linear. Coincidence away from a common edge is impossible in the open
/// window: an agent only touches a vertex at its own breakpoints, which
/// are window boundaries.
fn interior_coincidence(
    graph: &Graph,
    seg_i: &Seg,
    seg_j: &Seg,
    t0: &Frac,
    t1: &Frac,
) -> Result<Option<(Frac, GraphPoint)>> {
    // Common-edge parameters, if any.
    let on_common_edge = |edge: EdgeId, seg: &Seg| -> Option<(Frac, Frac)> {
        match seg {
            Seg::Stay(p) => p
                .param_on(graph, edge)
                .map(|param| (param.clone(), param)),
            Seg::Slide { edge: e, from, to } if *e == edge => Some((from.clone(), to.clone())),
            Seg::Slide { .. } => None,
        }
    };
    let candidate_edge = match (seg_i, seg_j) {
        (Seg::Slide { edge, .. }, _) => Some(*edge),
        (_, Seg::Slide { edge, .. }) => Some(*edge),
        (Seg::Stay(_), Seg::Stay(_)) => None, // equal stays are caught at boundaries
    };
    let Some(edge) = candidate_edge else {
        return Ok(None);
    };
    let (Some((a0, a1)), Some((b0, b1))) =
        (on_common_edge(edge, seg_i), on_common_edge(edge, seg_j))
    else {
        return Ok(None);
    };
    let c = &a0 - &b0;
    let d = (&a1 - &b1) - &c;
    if c.is_zero() {
        // Coinciding at the window start: handled by the boundary check.
        return Ok(None);
    }
    if d.is_zero() {
        return Ok(None);
    }
    let u = -c / d;
    if u.is_positive() && u <= Frac::one() {
        let time = t0 + (t1 - t0) * &u;
        let param = &a0 + (&a1 - &a0) * &u;
        let position = GraphPoint::on_edge(graph, edge, param)?;
        Ok(Some((time, position)))
    } else {
        Ok(None)
    }
}

/// Supremum over time of the per-agent distance between two motions:
/// `max_i sup_t d(a_i(t), b_i(t))`, computed exactly.
///
/// Within a window both positions are linear inside single edges, so the
/// distance is a min of finitely many linear (or |linear|) route lengths;
/// its maximum is attained at a window boundary or at a crossing of two
/// routes, all of which are rational times.
pub fn sup_distance(graph: &Graph, a: &Trajectory, b: &Trajectory) -> Result<Frac> {
    if a.agent_count() != b.agent_count() {
        return Err(Error::AgentCountMismatch);
    }
    let mut best = Frac::zero();
    for agent in 0..a.agent_count() {
        let mut grid: Vec<Frac> = a.agents[agent]
            .iter()
            .chain(&b.agents[agent])
            .map(|bp| bp.time.clone())
            .collect();
        grid.sort();
        grid.dedup();
        for w in 0..grid.len() {
            let t = &grid[w];
            let pa = a.eval(graph, agent, t)?;
            let pb = b.eval(graph, agent, t)?;
            let d = graph.point_distance(&pa, &pb)?;
            if d > best {
                best = d;
            }
            if w + 1 == grid.len() {
                continue;
            }
            let t1 = &grid[w + 1];
            let qa = a.eval(graph, agent, t1)?;
            let qb = b.eval(graph, agent, t1)?;
            let seg_a = Seg::classify(graph, &pa, &qa)?;
            let seg_b = Seg::classify(graph, &pb, &qb)?;
            for u in interior_extreme_candidates(graph, &seg_a, &seg_b) {
                let time = t + (t1 - t) * &u;
                let xa = a.eval(graph, agent, &time)?;
                let xb = b.eval(graph, agent, &time)?;
                let d = graph.point_distance(&xa, &xb)?;
                if d > best {
                    best = d;
                }
            }
        }
    }
    Ok(best)
}

/// Candidate interior times `u in (0,1)` (window-local) where the distance
/// between two linear motions can peak: crossings of the linear route-length
/// functions and the root of the same-edge direct term.
fn interior_extreme_candidates(graph: &Graph, seg_a: &Seg, seg_b: &Seg) -> Vec<Frac> {
    // Each anchor is a linear offset function u -> offset0 + slope * u
    // measuring the distance from the moving point to a fixed vertex.
    let anchors = |seg: &Seg| -> Vec<(usize, Frac, Frac)> {
        match seg {
            Seg::Stay(GraphPoint::Vertex(v)) => vec![(v.0, Frac::zero(), Frac::zero())],
            Seg::Stay(GraphPoint::Interior { edge, t }) => {
                let e = graph.edge(*edge);
                vec![
                    (e.ends().0 .0, t * e.length(), Frac::zero()),
                    (e.ends().1 .0, (Frac::one() - t) * e.length(), Frac::zero()),
                ]
            }
            Seg::Slide { edge, from, to } => {
                let e = graph.edge(*edge);
                let len = e.length();
                vec![
                    (e.ends().0 .0, from * len, (to - from) * len),
                    (
                        e.ends().1 .0,
                        (Frac::one() - from) * len,
                        (from - to) * len,
                    ),
                ]
            }
        }
    };
    let dist = graph.vertex_distances();
    // Linear candidate functions f(u) = c0 + c1 u.
    let mut lines: Vec<(Frac, Frac)> = Vec::new();
    for (va, oa0, oa1) in anchors(seg_a) {
        for (vb, ob0, ob1) in anchors(seg_b) {
            lines.push((&oa0 + &dist[va][vb] + &ob0, &oa1 + &ob1));
        }
    }
    // Same-edge direct distance: |delta0 + delta1 u| * len, two signed branches.
    let same_edge = |s: &Seg| match s {
        Seg::Stay(GraphPoint::Interior { edge, t }) => Some((*edge, t.clone(), t.clone())),
        Seg::Slide { edge, from, to } => Some((*edge, from.clone(), to.clone())),
        _ => None,
    };
    if let (Some((ea, a0, a1)), Some((eb, b0, b1))) = (same_edge(seg_a), same_edge(seg_b)) {
        if ea == eb {
            let len = graph.edge(ea).length();
            let d0 = (&a0 - &b0) * len;
            let d1 = ((&a1 - &b1) - (&a0 - &b0)) * len;
            lines.push((d0.clone(), d1.clone()));
            lines.push((-d0, -d1));
        }
    }
    let mut out = Vec::new();
    let one = Frac::one();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let dc = &lines[i].0 - &lines[j].0;
            let ds = &lines[j].1 - &lines[i].1;
            if ds.is_zero() {
                continue;
            }
            let u = dc / ds;
            if u.is_positive() && u < one {
                out.push(u);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
