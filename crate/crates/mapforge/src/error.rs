use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation sizes differ ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("budget exceeded: {needed} rotation systems requested, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("semi-arc action is not well defined on edges: {0}")]
    IllDefinedAction(String),
    #[error("graph is not asymmetric (semi-arc group has order {0})")]
    NotAsymmetric(usize),
    #[error("value is not an integer: {0}")]
    NonIntegral(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid voltage assignment: {0}")]
    InvalidVoltage(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("group is not fixed-free on vertices")]
    NotVertexFree,
    #[error("degenerate quotient: {0}")]
    DegenerateQuotient(String),
    #[error("not a triangular map: {0}")]
    NotTriangular(String),
    #[error("not a closed s-manifold: {0}")]
    NotSManifold(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
