use thiserror::Error;

/// Errors raised by the workbench library.
///
/// Point sets inside messages are rendered as `{i j ...}`, the same notation the
/// model DSL uses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("open family must contain the empty set and the full set")]
    MissingEmptyOrFull,
    #[error("open family not closed under union: {a} and {b}")]
    NotClosedUnderUnion { a: String, b: String },
    #[error("open family not closed under intersection: {a} and {b}")]
    NotClosedUnderIntersection { a: String, b: String },
    #[error("point {point} out of range for a space with {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("relation is not reflexive at point {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("map table has {got} entries, domain has {expected} points")]
    TableLength { expected: usize, got: usize },
    #[error("map is not continuous: preimage of open {open} is not open")]
    ContinuityViolation { open: String },
    #[error("{n} points exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("construction needs {needed} points, budget is {budget}")]
    SizeBudgetExceeded { needed: u128, budget: usize },
    #[error("maps are not parallel")]
    NotParallel,
    #[error("maps do not share a domain")]
    NoCommonDomain,
    #[error("maps do not share a codomain")]
    NoCommonCodomain,
    #[error("maps are not composable")]
    NotComposable,
    #[error("map is not an embedding")]
    NotAnEmbedding,
    #[error("{what} is not a member of context {context}")]
    NotInSubcategory { context: String, what: String },
    #[error("reflector for {context} produced a non-member")]
    ReflectorOutsideSubcategory { context: String },
    #[error("limit left the subcategory {context}")]
    LimitOutsideSubcategory { context: String },
}

pub type Result<T> = std::result::Result<T, Error>;
