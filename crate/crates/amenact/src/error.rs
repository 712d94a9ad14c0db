use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group table: {0}")]
    MalformedGroup(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("unknown generator symbol {0:?}")]
    UnknownSymbol(String),

    #[error("free-group context rejected: {0} quantifies over all of G")]
    FreeContextRejected(&'static str),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{0} requires a valid {1}; verification reported violations")]
    NotVerified(&'static str, &'static str),

    #[error("action is not partially transitive (witness s={s}, t={t}, x={x}); cocycle lift undefined")]
    NotPartiallyTransitive { s: usize, t: usize, x: usize },

    #[error("map is not surjective onto the factor carrier")]
    NotSurjective,

    #[error("candidate is not a morphism: {0}")]
    NotMorphism(String),

    #[error("cocycle identity fails at (x={x}, s={s}, u={u})")]
    CocycleInvalid { x: usize, s: usize, u: usize },

    #[error("empty range fiber at unit {0}: cannot normalize")]
    EmptyFiber(usize),

    #[error("section is not invariant: witness (s={s}, x={x}), residual {residual}")]
    SectionNotInvariant { s: usize, x: usize, residual: f64 },

    #[error("matrix dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("kernel condition fails: pi is not trivial on H (witness h={0})")]
    KernelCondition(usize),

    #[error("claimed invariant subspace is not invariant (residual {0})")]
    NotInvariantSubspace(f64),

    #[error("candidate quadruple is not a restriction of the same partial representation: {0}")]
    NotRestrictionQuadruple(String),

    #[error("f violates the C^v_c vanishing constraints at (x={x}, u={u}, t={t})")]
    ForbiddenSupport { x: usize, u: usize, t: usize },

    #[error("level bound exceeded: {0} > {1}")]
    LevelOverflow(usize, usize),

    #[error("epsilon must be positive")]
    NonPositiveEps,

    #[error("domain families differ at t={0}")]
    DomainFamilyMismatch(usize),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("unknown certificate type {0:?}")]
    UnknownCertificate(String),
}
