use alloc::string::String;

/// Everything that can go wrong inside the engine.
///
/// Variants are split roughly into malformed input (unknown names, shape
/// mismatches) and mathematical rejection (a differential that does not
/// square to zero, a Lie bracket that fails Jacobi, a non-1-connected
/// algebra handed to the minimal-model builder).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("generator `{name}` has unsupported degree {degree}")]
    BadDegree { name: String, degree: i64 },

    #[error("d({name}) is not homogeneous of degree {expected}")]
    Inhomogeneous { name: String, expected: i64 },

    #[error("d\u{b2} does not vanish on generator `{0}`")]
    SquareNonzero(String),

    #[error("d\u{2218}d is nonzero at degree {degree}, entry ({row}, {col})")]
    NotAComplex { degree: i64, row: usize, col: usize },

    #[error("not a chain map at degree {0}")]
    NotAChainMap(i64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("truncation: {0}")]
    Truncation(String),

    #[error("graded antisymmetry fails on ({0}, {1})")]
    Antisymmetry(String, String),

    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),

    #[error("boundary is not a derivation of the bracket on ({0}, {1})")]
    BoundaryNotDerivation(String, String),

    #[error("boundary is not a coderivation of the cobracket on `{element}` (component {left} \u{2297} {right})")]
    Compatibility { element: String, left: String, right: String },

    #[error("connection is not \u{3b9}-compatible on ({0}, {1})")]
    Connection(String, String),

    #[error("operator is not nilpotent within bound {bound} at degree {degree}")]
    NotNilpotent { degree: i64, bound: usize },

    #[error("inner product is not symmetric positive-definite at degree {0}")]
    NotPositiveDefinite(i64),

    #[error("d({0}) is not decomposable")]
    NotMinimal(String),

    #[error("not 1-connected: {0}")]
    NotSimplyConnected(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
