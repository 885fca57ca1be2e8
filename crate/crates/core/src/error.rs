use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("F_2 itself is excluded: characteristic 2 needs m >= 2")]
    BinaryDegreeOne,
    #[error("field of size {p}^{m} exceeds the limit of {limit} elements")]
    FieldTooLarge { p: u64, m: u32, limit: u64 },
    #[error("modulus must have {expected} coefficients in [0, {p}), got {got:?}")]
    InvalidModulus {
        p: u64,
        expected: usize,
        got: Vec<u64>,
    },
    #[error("modulus {0:?} is not a primitive polynomial")]
    NotPrimitive(Vec<u64>),
    #[error("zero has no discrete logarithm")]
    ZeroHasNoLog,
    #[error("element does not belong to this field")]
    ForeignElement,

    #[error("character order {n} does not divide {order}")]
    OrderDoesNotDivide { n: u64, order: u64 },
    #[error("character order must be at least 2, got {0}")]
    TrivialOrder(u64),
    #[error("fiber index {index} out of range 1..={n}")]
    FiberIndex { index: usize, n: usize },

    #[error("polynomials live in different residue rings")]
    MixedRings,
    #[error("evaluation point has {got} coordinates, ring has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("residue ring with {p}^{m} monomials is too large to index")]
    RingTooLarge { p: u64, m: u32 },

    #[error("cyclotomic numbers belong to different fields")]
    MixedFields,
    #[error("linear system has rank {rank}, {unknowns} unknowns")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("linear system is inconsistent at equation {row}")]
    Inconsistent { row: usize },
    #[error("equation has {got} coefficients, system has {expected} unknowns")]
    EquationWidth { expected: usize, got: usize },
    #[error("structure constant c[{i},{j},{k}] = {value} is not a non-negative integer")]
    NonIntegralSolution {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },

    #[error("coefficients of q_{k} in q_{i}*q_{j} are not uniform")]
    NonUniformFiberCoefficients { i: usize, j: usize, k: usize },
    #[error("q_{i}*q_{j} is not a combination of 1, q_1, ..., q_n")]
    NonzeroResidual { i: usize, j: usize },
    #[error("the quadratic character needs an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("field characteristic must be odd")]
    NotOddCharacteristic,

    #[error("invalid structure table: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
