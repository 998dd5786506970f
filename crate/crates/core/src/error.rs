use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structure constants are not antisymmetric at (i={i}, j={j}, k={k})")]
    AntisymmetryViolation { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails at (i={i}, j={j}, l={l}, k={k})")]
    JacobiViolation { i: usize, j: usize, l: usize, k: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live over different Lie algebras")]
    AmbientMismatch,
    #[error("degree of the zero element is undefined")]
    ZeroElement,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("not a pre-Lie algebra: left-symmetry fails at ({i}, {j}, {k})")]
    NotPreLie { i: usize, j: usize, k: usize },
    #[error("basis change is not invertible over H: {0}")]
    NotInvertible(String),
    #[error("equation `{0}` is not linear in its unknown")]
    NotLinear(String),
    #[error("zero is not a solution of `{0}`; the solution set is not a subspace")]
    Inhomogeneous(String),
    #[error("degree bound must be non-negative, got {0}")]
    EmptyBasisDomain(i64),
    #[error("unknown equation label `{0}`")]
    UnknownLabel(String),
    #[error("division by zero while evaluating `{0}`")]
    DivisionByZero(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::AntisymmetryViolation { .. } => "antisymmetry_violation",
            Error::JacobiViolation { .. } => "jacobi_violation",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::ZeroElement => "zero_element",
            Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::UnknownEntry(_) => "unknown_entry",
            Error::MissingParam(_) => "missing_param",
            Error::NotPreLie { .. } => "not_pre_lie",
            Error::NotInvertible(_) => "not_invertible",
            Error::NotLinear(_) => "not_linear",
            Error::Inhomogeneous(_) => "inhomogeneous",
            Error::EmptyBasisDomain(_) => "empty_basis_domain",
            Error::UnknownLabel(_) => "unknown_label",
            Error::DivisionByZero(_) => "division_by_zero",
            Error::Malformed(_) => "malformed",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
