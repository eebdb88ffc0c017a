use thiserror::Error;

/// Errors raised by the combinatorial engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Cartan type {0}")]
    UnsupportedType(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("word ({0}) is not reduced")]
    NotReduced(String),
    #[error("word ({0}) is not a reduced word of the longest element")]
    NotLongestWord(String),
    #[error("words ({0}) and ({1}) represent different Weyl group elements")]
    DifferentElements(String, String),
    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("braid move {0} does not apply to word ({1})")]
    MoveMismatch(String, String),
    #[error("order-{0} braid move requires folded transport")]
    FoldedMoveRequired(u8),
    #[error("datum has {found} values but the word has {expected} letters")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coweight {coweight} is not dominant: pairing with node {node} is {value}")]
    NotDominant {
        coweight: String,
        node: usize,
        value: i64,
    },
    #[error("not a diagram automorphism: {0}")]
    NotDiagramAutomorphism(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("word ({0}) is not a lift of a folded word")]
    NotLifted(String),
    #[error("datum is not constant on orbit blocks")]
    NotBlockConstant,
    #[error("polytope is not sigma-invariant")]
    NotSigmaInvariant,
    #[error("coweight {0} is not sigma-invariant")]
    NotInvariantCoweight(String),
    #[error("coweight {0} is not in the image of the folded coweight lattice")]
    NotFoldable(String),
    #[error("corrupted vertex map at step {0}")]
    CorruptVertexMap(usize),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
