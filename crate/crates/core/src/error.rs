use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("ambient dimension must be positive")]
    ZeroDim,

    #[error("{sub} is not contained in {sup}")]
    NotContained { sub: String, sup: String },

    #[error("the set difference is empty: both subspaces are equal")]
    EmptyDifference,

    #[error("pair is not a codimension-1 inclusion (dims {sub_dim} and {sup_dim})")]
    NotCodimOne { sub_dim: usize, sup_dim: usize },

    #[error("quadruple violates the intersection/sum conditions")]
    InvalidQuad,

    #[error("gate requires a nonempty set of children")]
    EmptyGate,

    #[error("variable index {var} out of range for {n} variables")]
    VarOutOfRange { var: usize, n: usize },

    #[error("{what} exceeds the configured cap ({limit}), got {got}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("exhaustive check needs sampling mode: n = {n} exceeds cap {cap}")]
    NeedsSampling { n: usize, cap: usize },

    #[error("no depth-{depth} formula computes parity of {n} variables")]
    InfeasibleDepth { depth: usize, n: usize },

    #[error("formula is not syntactically invariant under the given subspace")]
    NotInvariant,

    #[error("formula is constant on the given set")]
    ConstantOnSet,

    #[error("graph is bipartite: the even-weight subspace has codimension 0")]
    BipartiteGraph,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("block index set must be nonempty")]
    EmptyBlock,

    #[error("numeric domain violation: {0}")]
    Domain(String),

    #[error("degree sequence infeasible: v = {v}, degree = {degree}")]
    InfeasibleRegular { v: usize, degree: usize },

    #[error("rejection sampling gave up after {attempts} attempts")]
    RetryLimit { attempts: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("trace verification failed: {0}")]
    TraceInvalid(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
