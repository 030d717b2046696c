//! Crate-wide error type with machine-readable codes.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text is not a well-formed document.
    Parse(String),
    /// Document is well-formed but violates a structural rule
    /// (disconnected graph, nonpositive length, parallel edge, ...).
    Validation(String),
    NotATree,
    RootNotUnivalent,
    PointNotOnGraph(String),
    MalformedTrajectory(String),
    EndpointMismatch,
    AgentCountMismatch,
    NoEssentialVertex,
    NotOnRootEdge,
    NotInCanonicalSlots,
    DimensionMismatch,
    SubdivisionTooCoarse { subdivision: usize, required: usize },
    NotConnected,
    SnapInfeasible,
}

impl Error {
    /// Stable machine-readable code, used by the CLI error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Validation(_) => "validation",
            Error::NotATree => "not-a-tree",
            Error::RootNotUnivalent => "root-not-univalent",
            Error::PointNotOnGraph(_) => "point-not-on-graph",
            Error::MalformedTrajectory(_) => "malformed-trajectory",
            Error::EndpointMismatch => "endpoint-mismatch",
            Error::AgentCountMismatch => "agent-count-mismatch",
            Error::NoEssentialVertex => "no-essential-vertex",
            Error::NotOnRootEdge => "not-on-root-edge",
            Error::NotInCanonicalSlots => "not-in-canonical-slots",
            Error::DimensionMismatch => "dimension-mismatch",
            Error::SubdivisionTooCoarse { .. } => "subdivision-too-coarse",
            Error::NotConnected => "not-connected",
            Error::SnapInfeasible => "snap-infeasible",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::NotATree => write!(f, "graph is not a tree"),
            Error::RootNotUnivalent => write!(f, "chosen root is not univalent"),
            Error::PointNotOnGraph(msg) => write!(f, "point not on graph: {msg}"),
            Error::MalformedTrajectory(msg) => write!(f, "malformed trajectory: {msg}"),
            Error::EndpointMismatch => write!(f, "trajectory endpoints do not chain"),
            Error::AgentCountMismatch => write!(f, "agent counts differ"),
            Error::NoEssentialVertex => {
                write!(f, "tree has no vertex of degree 3 or more; planner undefined")
            }
            Error::NotOnRootEdge => write!(f, "configuration is not inside the root edge"),
            Error::NotInCanonicalSlots => {
                write!(f, "configuration does not occupy the canonical root-edge slots")
            }
            Error::DimensionMismatch => write!(f, "configurations have different agent counts"),
            Error::SubdivisionTooCoarse { subdivision, required } => write!(
                f,
                "subdivision {subdivision} too coarse, need at least {required}"
            ),
            Error::NotConnected => write!(f, "complex is not connected"),
            Error::SnapInfeasible => write!(f, "no snap reaches the requested stratum pair"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
