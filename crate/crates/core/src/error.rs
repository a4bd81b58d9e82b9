use thiserror::Error;

/// Errors raised by the algebra layers and the volume computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-unit base for negative power")]
    NonUnitBase,
    #[error("exponential of non-nilpotent argument")]
    NonNilpotentExp,
    #[error("series caps differ: {0:?} vs {1:?}")]
    CapMismatch(Vec<u32>, Vec<u32>),
    #[error("rank mismatch: q={0} vs q={1}")]
    RankMismatch(usize, usize),
    #[error("exterior algebra supports q <= {max}, got q={got}")]
    RankTooLarge { got: usize, max: usize },
    #[error("index {index} out of range for rank {rank} lattice")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("exponential requires even form")]
    OddExponential,
    #[error("exponential requires a form without degree-0 part")]
    ExpConstantTerm,
    #[error("pairing matrix must be antisymmetric")]
    NotAntisymmetric,
    #[error("pairing matrix must be {expected}x{expected}")]
    PairingShape { expected: usize },
    #[error("graded degree error: expected degree {expected}, found {found}")]
    GradedDegree { expected: usize, found: usize },
    #[error("incomplete pairing data: {0}")]
    IncompletePairingData(String),
    #[error("rank R = {0} is not a positive integer")]
    NonIntegralRank(String),
    #[error("empty projective bundle (R = {0})")]
    EmptyProjectiveBundle(String),
    #[error(
        "nonzero u-degree in top coefficient (composition {composition:?}, monomial {monomial:?})"
    )]
    UConcentration {
        composition: Vec<u32>,
        monomial: Vec<u32>,
    },
    #[error("weights must be pairwise distinct")]
    DegenerateWeights,
    #[error("weight vector has length {got}, expected {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("rank r must be at least 1")]
    EmptyRank,
    #[error("at least {0} weight vectors are required")]
    TooFewWeights(usize),
    #[error("degree integrality violated: {0}")]
    DegreeIntegrality(String),
}

pub type Result<T> = std::result::Result<T, Error>;
