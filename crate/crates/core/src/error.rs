use thiserror::Error;

/// Errors raised by the measure-theoretic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence has an undefined tail; its supremum is not computable")]
    UndefinedTail,
    #[error("a constant-after-prefix sequence needs a non-empty prefix")]
    EmptyPrefix,
    #[error("operands live on different spaces or σ-algebras")]
    SpaceMismatch,
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("point index {0} is out of range")]
    PointOutOfRange(usize),
    #[error("subset is not measurable")]
    NotMeasurable,
    #[error("family is not pairwise disjoint")]
    NotDisjoint,
    #[error("family is not nondecreasing")]
    NotNondecreasing,
    #[error("weights are not constant on the atoms of the σ-algebra")]
    NotConstantOnAtoms,
    #[error("σ-algebra is not discrete")]
    NotDiscrete,
    #[error("negative weight")]
    NegativeWeight,
    #[error("value {0} is attained but missing from the value list")]
    MissingValue(String),
    #[error("preimage of {0} is not measurable")]
    PreimageNotMeasurable(String),
    #[error("function takes a negative value")]
    NegativeValue,
    #[error("scalar must be nonnegative")]
    NegativeScalar,
    #[error("value {0} is not in the canonical value list")]
    ValueNotInCanon(String),
    #[error("function takes an infinite value where a finite one is required")]
    NotFinite,
    #[error("interval has lower bound above upper bound")]
    InvalidInterval,
    #[error("index must be positive")]
    InvalidIndex,
}

pub type Result<T> = std::result::Result<T, Error>;
