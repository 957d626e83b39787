use thiserror::Error;

use crate::coalition::Coalition;

#[derive(Debug, Error)]
pub enum Error {
    #[error("set system is missing the empty coalition")]
    MissingEmptySet,
    #[error("set system is missing the grand coalition")]
    MissingGrandCoalition,
    #[error("coalition {0} appears more than once")]
    DuplicateSet(Coalition),
    #[error("player {player} is outside 1..={n}")]
    PlayerOutOfRange { player: i64, n: usize },
    #[error("universe of {0} players exceeds the supported maximum of 16")]
    UniverseTooLarge(usize),
    #[error("universe must contain at least one player")]
    EmptyUniverse,

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("set system is not closed under union and intersection")]
    NotClosed,
    #[error("lattice has height {height} but {n} players; it is not generated by a poset on the players")]
    HeightDeficient { height: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("set system is not regular")]
    NotRegular,
    #[error("set system is not weakly union-closed")]
    NotWeaklyUnionClosed,

    #[error("coalition {0} is not a feasible coalition of the set system")]
    SetNotFeasible(Coalition),
    #[error("the grand coalition cannot belong to a normal collection")]
    GrandCoalitionInCollection,
    #[error("collection of kind {found} given where {expected} is required")]
    WrongCollectionKind { expected: &'static str, found: &'static str },
    #[error("no feasible coalition can remove direction {0}")]
    NoFeasibleLift(String),

    #[error("maximal chain {0} has a step adding more than one player")]
    ChainNotRegularSteps(String),
    #[error("normal collection is not nested")]
    CollectionNotNested,
    #[error("no maximal chain contains every set of the normal collection")]
    NoRestrictedChain,

    #[error("game has no value for coalition {0}")]
    MissingValue(Coalition),
    #[error("game assigns a value to infeasible coalition {0}")]
    ValueForInfeasible(Coalition),
    #[error("the empty coalition must have value 0")]
    NonZeroEmptyValue,
    #[error("invalid rational {0:?}: expected an integer or p/q")]
    InvalidRational(String),

    #[error("malformed document: {0}")]
    Document(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: std::path::PathBuf,
        source: std::io::Error,
    },

    /// Two independent computations disagree. Never expected on valid input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
