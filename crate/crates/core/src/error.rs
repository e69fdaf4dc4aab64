//! Crate-wide error type.

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An edge-list line that does not hold exactly two labels.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Edge-list input that defines no nodes at all.
    #[error("edge list contains no nodes")]
    EmptyEdgeList,

    /// A caller-supplied parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A degree distribution too flat for the power-law closed forms.
    #[error("degenerate degree distribution: {0}")]
    Degenerate(String),

    /// A traversal that requires connectivity found an unreachable node.
    #[error(
        "graph is disconnected: node {missing} is unreachable from node {from} \
         ({reachable} of {total} nodes reached)"
    )]
    Disconnected {
        from: NodeId,
        missing: NodeId,
        reachable: usize,
        total: usize,
    },

    /// The queried node lies outside the largest connected component.
    #[error("node {node} lies outside the largest connected component")]
    OutsideLcc { node: NodeId },

    #[error("unknown node label '{0}'")]
    UnknownLabel(String),

    #[error("cannot operate on an empty sample")]
    EmptySample,

    #[error("walk cannot start at isolated node {0}")]
    IsolatedStart(NodeId),

    /// An error re-raised with the name of the estimator that hit it.
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn with_context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
