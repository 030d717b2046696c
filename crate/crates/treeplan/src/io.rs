//! JSON document formats.
//!
//! Exact values travel as `"numerator/denominator"` strings next to a
//! float convenience field; on input the exact string wins and bare
//! floats are snapped to rationals within 1e-12. Serialization order is
//! fixed by the struct definitions, so identical values produce
//! byte-identical documents.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Configuration, Graph, GraphPoint, RootedTree};
use crate::invariants::{TcKind, TcReport};
use crate::motion::{Breakpoint, Trajectory};
use crate::num::{
    frac_from_f64_snapped, frac_from_string, frac_one, frac_to_f64, frac_to_string, Frac,
};
use crate::planner::PlanStages;
use crate::random::RandomPlan;
use num_traits::One;

// ---------------------------------------------------------------- graphs

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<NumberDoc>,
}

/// A number that may arrive as a float or as an exact fraction string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberDoc {
    Float(f64),
    Exact(String),
}

impl NumberDoc {
    pub fn to_frac(&self) -> Result<Frac> {
        match self {
            NumberDoc::Float(x) => frac_from_f64_snapped(*x)
                .ok_or_else(|| Error::Validation(format!("number {x} is not finite"))),
            NumberDoc::Exact(s) => frac_from_string(s)
                .ok_or_else(|| Error::Validation(format!("bad fraction literal {s:?}"))),
        }
    }
}

/// Parses and validates a graph document.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    graph_from_doc(&doc)
}

pub fn graph_from_doc(doc: &GraphDoc) -> Result<Graph> {
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        let length = match &e.length {
            Some(n) => n.to_frac()?,
            None => frac_one(),
        };
        edges.push((e.id.clone(), e.ends[0].clone(), e.ends[1].clone(), length));
    }
    Graph::new(doc.vertices.clone(), edges)
}

pub fn graph_to_doc(g: &Graph) -> GraphDoc {
    GraphDoc {
        vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
        edges: g
            .edge_ids()
            .map(|e| {
                let edge = g.edge(e);
                let (a, b) = edge.ends();
                EdgeDoc {
                    id: edge.name().to_string(),
                    ends: [g.vertex_name(a).to_string(), g.vertex_name(b).to_string()],
                    length: Some(if edge.length().is_one() {
                        NumberDoc::Float(1.0)
                    } else {
                        NumberDoc::Exact(frac_to_string(edge.length()))
                    }),
                }
            })
            .collect(),
    }
}

// ---------------------------------------------------- points and configs

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDoc {
    Vertex {
        vertex: String,
    },
    Interior {
        edge: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t_exact: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub points: Vec<PointDoc>,
}

pub fn point_from_doc(g: &Graph, doc: &PointDoc) -> Result<GraphPoint> {
    match doc {
        PointDoc::Vertex { vertex } => {
            let v = g
                .vertex_by_name(vertex)
                .ok_or_else(|| Error::Validation(format!("unknown vertex {vertex:?}")))?;
            Ok(GraphPoint::Vertex(v))
        }
        PointDoc::Interior { edge, t, t_exact } => {
            let e = g
                .edge_by_name(edge)
                .ok_or_else(|| Error::Validation(format!("unknown edge {edge:?}")))?;
            let param = match (t_exact, t) {
                (Some(s), _) => frac_from_string(s)
                    .ok_or_else(|| Error::Validation(format!("bad fraction literal {s:?}")))?,
                (None, Some(x)) => frac_from_f64_snapped(*x)
                    .ok_or_else(|| Error::Validation(format!("parameter {x} is not finite")))?,
                (None, None) => {
                    return Err(Error::Validation(format!(
                        "point on edge {edge:?} carries neither t nor t_exact"
                    )))
                }
            };
            GraphPoint::on_edge(g, e, param)
        }
    }
}

pub fn point_to_doc(g: &Graph, p: &GraphPoint) -> PointDoc {
    match p {
        GraphPoint::Vertex(v) => PointDoc::Vertex {
            vertex: g.vertex_name(*v).to_string(),
        },
        GraphPoint::Interior { edge, t } => PointDoc::Interior {
            edge: g.edge(*edge).name().to_string(),
            t: Some(frac_to_f64(t)),
            t_exact: Some(frac_to_string(t)),
        },
    }
}

pub fn parse_configuration(g: &Graph, text: &str) -> Result<Configuration> {
    let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    configuration_from_doc(g, &doc)
}

pub fn configuration_from_doc(g: &Graph, doc: &ConfigDoc) -> Result<Configuration> {
    let points = doc
        .points
        .iter()
        .map(|p| point_from_doc(g, p))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(g, points)
}

pub fn configuration_to_doc(g: &Graph, c: &Configuration) -> ConfigDoc {
    ConfigDoc {
        points: c.points().iter().map(|p| point_to_doc(g, p)).collect(),
    }
}

// ------------------------------------------------------------ trajectories

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BreakpointDoc {
    pub time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_exact: Option<String>,
    pub point: PointDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryDoc {
    pub agents: Vec<Vec<BreakpointDoc>>,
}

pub fn trajectory_to_doc(g: &Graph, tr: &Trajectory) -> TrajectoryDoc {
    TrajectoryDoc {
        agents: tr
            .agents()
            .iter()
            .map(|schedule| {
                schedule
                    .iter()
                    .map(|b| BreakpointDoc {
                        time: frac_to_f64(&b.time),
                        time_exact: Some(frac_to_string(&b.time)),
                        point: point_to_doc(g, &b.point),
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn trajectory_from_doc(g: &Graph, doc: &TrajectoryDoc) -> Result<Trajectory> {
    let agents = doc
        .agents
        .iter()
        .map(|schedule| {
            schedule
                .iter()
                .map(|b| {
                    let time = match &b.time_exact {
                        Some(s) => frac_from_string(s).ok_or_else(|| {
                            Error::Validation(format!("bad fraction literal {s:?}"))
                        })?,
                        None => frac_from_f64_snapped(b.time).ok_or_else(|| {
                            Error::Validation(format!("time {} is not finite", b.time))
                        })?,
                    };
                    Ok(Breakpoint {
                        time,
                        point: point_from_doc(g, &b.point)?,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(g, agents)
}

// ------------------------------------------------------------------ plans

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanDoc {
    #[serde(rename = "descentA")]
    pub descent_a: TrajectoryDoc,
    pub permute: TrajectoryDoc,
    pub slide: TrajectoryDoc,
    #[serde(rename = "descentB")]
    pub descent_b: TrajectoryDoc,
    pub combined: TrajectoryDoc,
    pub domain_index: usize,
    pub citations: Vec<String>,
}

pub fn plan_to_doc(tree: &RootedTree, stages: &PlanStages) -> PlanDoc {
    PlanDoc {
        descent_a: trajectory_to_doc(tree, &stages.descent_a),
        permute: trajectory_to_doc(tree, &stages.permute),
        slide: trajectory_to_doc(tree, &stages.slide),
        descent_b: trajectory_to_doc(tree, &stages.descent_b),
        combined: trajectory_to_doc(tree, &stages.combined),
        domain_index: stages.domain_index,
        citations: vec![
            "staged-descent-permute-slide".into(),
            "domain-partition-2m-plus-1".into(),
        ],
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RandomEntryDoc {
    pub p: f64,
    pub p_exact: String,
    pub trajectory: TrajectoryDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RandomPlanDoc {
    pub entries: Vec<RandomEntryDoc>,
    pub citations: Vec<String>,
}

pub fn random_plan_to_doc(tree: &RootedTree, rp: &RandomPlan) -> RandomPlanDoc {
    RandomPlanDoc {
        entries: rp
            .entries
            .iter()
            .map(|e| RandomEntryDoc {
                p: frac_to_f64(&e.probability),
                p_exact: frac_to_string(&e.probability),
                trajectory: trajectory_to_doc(tree, &e.trajectory),
            })
            .collect(),
        citations: vec![
            "partition-of-unity-random-planner".into(),
            "domain-partition-2m-plus-1".into(),
        ],
    }
}

// ---------------------------------------------------------------- reports

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TcValueDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<usize>,
    pub citations: Vec<String>,
}

pub fn tc_value_doc(report: &TcReport) -> TcValueDoc {
    match report.kind {
        TcKind::Exact(v) => TcValueDoc {
            kind: "exact".into(),
            value: Some(v),
            lower: None,
            upper: None,
            citations: vec![report.justification.label().into()],
        },
        TcKind::Interval { lower, upper } => TcValueDoc {
            kind: "interval".into(),
            value: None,
            lower: Some(lower),
            upper: Some(upper),
            citations: vec![report.justification.label().into()],
        },
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphSummaryDoc {
    pub vertices: usize,
    pub edges: usize,
    pub first_betti: usize,
    pub is_tree: bool,
    pub essential_vertices: Vec<String>,
    pub essential_count: usize,
}

pub fn graph_summary_doc(g: &Graph) -> GraphSummaryDoc {
    GraphSummaryDoc {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        first_betti: g.first_betti(),
        is_tree: g.is_tree(),
        essential_vertices: g
            .essential_vertices()
            .iter()
            .map(|&v| g.vertex_name(v).to_string())
            .collect(),
        essential_count: g.essential_count(),
    }
}

/// Renders any serializable document as pretty JSON with a trailing
/// newline; output bytes are deterministic.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}
