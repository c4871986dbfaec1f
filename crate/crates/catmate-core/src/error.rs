use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("missing composite for {g} . {f}")]
    MissingComposite { g: String, f: String },
    #[error("associativity fails on ({h}, {g}, {f})")]
    AssociativityViolation { h: String, g: String, f: String },
    #[error("identity law fails at {mor}")]
    IdentityViolation { mor: String },
    #[error("unknown id `{0}`")]
    DanglingId(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("size budget exceeded: {what} (limit {limit})")]
    SizeBudgetExceeded { what: String, limit: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not natural at {0}")]
    NotNatural(String),
    #[error("triangle identity fails at object {object}")]
    TriangleFailure { object: String },
    #[error("cells are not mates (witness {witness})")]
    NotMates { witness: String },
    #[error("missing adjunction: {0}")]
    MissingAdjunction(String),
    #[error("functor is not homotopical: {mor} is not sent to a weak equivalence")]
    NotHomotopical { mor: String },
    #[error("localization undecided at bound {bound}")]
    UndecidedLocalization { bound: usize },
    #[error("category has no initial object")]
    NoInitialObject,
    #[error("q at {object} is not a weak equivalence")]
    QNotWeq { object: String },
    #[error("retraction square fails at {mor}")]
    SquareFailure { mor: String },
    #[error("H0 Q is not functorial: {0}")]
    HoQNotFunctorial(String),
    #[error("precondition failed: {0}")]
    PreconditionFailure(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("no left adjoint: {0}")]
    NoLeftAdjoint(String),
    #[error("composition hypothesis failed: {0}")]
    CompositionHypothesisFailed(String),
    #[error("Q is not a functor: {0}")]
    QNotFunctorial(String),
    #[error("End({object}) contains non-identity endomorphisms")]
    EndomorphismObstruction { object: String },
    #[error("missing structure: {0}")]
    MissingStructure(String),
    #[error("not fully faithful: {0}")]
    NotFullyFaithful(String),
    #[error("no objectwise isomorphism between {0}")]
    NoObjectwiseIso(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid {entity}: {source}")]
    Validation { entity: String, source: Box<CatError> },
}

pub type Result<T> = std::result::Result<T, CatError>;

pub(crate) fn budget(what: impl Into<String>, limit: usize) -> CatError {
    CatError::SizeBudgetExceeded { what: what.into(), limit }
}

pub(crate) fn shape(msg: impl Into<String>) -> CatError {
    CatError::ShapeMismatch(msg.into())
}
