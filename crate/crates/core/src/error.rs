use thiserror::Error;

use crate::symbols::Symbol;

/// Errors raised by constructors and structural operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpgError {
    #[error("EmptyBlock: vertex block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("OverlappingBlocks: d-set {dset:?} occurs in blocks {first} and {second}")]
    OverlappingBlocks {
        first: usize,
        second: usize,
        dset: Vec<Symbol>,
    },
    #[error("WrongCardinality: d-set {dset:?} in block {block:?} does not have {expected} distinct members")]
    WrongCardinality {
        block: Option<usize>,
        dset: Vec<Symbol>,
        expected: usize,
    },
    #[error("UnknownSymbol: symbol {symbol} is outside 0..{n}")]
    UnknownSymbol { symbol: Symbol, n: usize },
    #[error("DisconnectedGraph: vertex {unreachable} is not reachable from vertex 0")]
    DisconnectedGraph { unreachable: usize },
    #[error("NoVertices: a subset partition graph needs at least one vertex block")]
    NoVertices,
    #[error("BadEdge: edge ({0}, {1}) is a self-loop, a duplicate or out of range")]
    BadEdge(usize, usize),
    #[error("BadLabels: {0}")]
    BadLabels(String),
    #[error("DSetNotPresent: d-set {0:?} does not occur in any block")]
    DSetNotPresent(Vec<Symbol>),
    #[error("NotASpindle: no pair of complementary d-sets exists")]
    NotASpindle,
    #[error("NoSuchEdge: ({0}, {1}) is not an edge")]
    NoSuchEdge(usize, usize),
    #[error("EdgeExists: ({0}, {1}) is already an edge")]
    EdgeExists(usize, usize),
    #[error("SelfLoop: cannot join vertex {0} to itself")]
    SelfLoop(usize),
    #[error("NoSuchVertex: vertex {index} out of range (graph has {count} vertices)")]
    NoSuchVertex { index: usize, count: usize },
    #[error("InvalidClf: {0}")]
    InvalidClf(String),
    #[error("DisconnectedInput: {0}")]
    DisconnectedInput(String),
    #[error("BadParameter: {0}")]
    BadParameter(String),
    #[error("NoHamiltonianPath: dual graph on {0} facets has no Hamiltonian path")]
    NoHamiltonianPath(usize),
    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),
}

impl SpgError {
    /// The variant name, used as the diagnostic tag by the CLI and HTTP API.
    pub fn name(&self) -> &'static str {
        match self {
            SpgError::EmptyBlock { .. } => "EmptyBlock",
            SpgError::OverlappingBlocks { .. } => "OverlappingBlocks",
            SpgError::WrongCardinality { .. } => "WrongCardinality",
            SpgError::UnknownSymbol { .. } => "UnknownSymbol",
            SpgError::DisconnectedGraph { .. } => "DisconnectedGraph",
            SpgError::NoVertices => "NoVertices",
            SpgError::BadEdge(..) => "BadEdge",
            SpgError::BadLabels(_) => "BadLabels",
            SpgError::DSetNotPresent(_) => "DSetNotPresent",
            SpgError::NotASpindle => "NotASpindle",
            SpgError::NoSuchEdge(..) => "NoSuchEdge",
            SpgError::EdgeExists(..) => "EdgeExists",
            SpgError::SelfLoop(_) => "SelfLoop",
            SpgError::NoSuchVertex { .. } => "NoSuchVertex",
            SpgError::InvalidClf(_) => "InvalidClf",
            SpgError::DisconnectedInput(_) => "DisconnectedInput",
            SpgError::BadParameter(_) => "BadParameter",
            SpgError::NoHamiltonianPath(_) => "NoHamiltonianPath",
            SpgError::BudgetExceeded(_) => "BudgetExceeded",
        }
    }
}
