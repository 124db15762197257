use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which of the three Cartan axioms a matrix cell violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CartanAxiom {
    /// a_{i,i} = 2
    Diagonal,
    /// a_{i,j} <= 0 off the diagonal
    OffDiagonalSign,
    /// a_{i,j} = 0 iff a_{j,i} = 0
    ZeroPattern,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is {rows}x{cols} with {labels} labels")]
    AxisMismatch {
        rows: usize,
        cols: usize,
        labels: usize,
    },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("not a generalized Cartan matrix: cell ({i}, {j}) violates {axiom:?}")]
    NotCartan {
        i: String,
        j: String,
        axiom: CartanAxiom,
    },
    #[error("matrix has {0} vertices; at most 64 are supported")]
    TooLarge(usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("matrix is not symmetrizable: cycle through {i} and {j} is inconsistent")]
    NotSymmetrizable { i: String, j: String },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vertex {0} lies in J")]
    IndexOutOfJComplement(String),
    #[error("vertex {0} lies in J")]
    KInJ(String),
    #[error("vertex set {0:?} is not of finite type")]
    NotFiniteType(Vec<String>),
    #[error("component I_k = {0:?} is not of finite type")]
    NotFiniteTypeComponent(Vec<String>),
    #[error("J = {0:?} is not of finite type")]
    JNotFiniteType(Vec<String>),
    #[error("({i}, {j}) is not C-admissible: component at {k} fails ({reason})")]
    NotCAdmissible {
        i: String,
        j: String,
        k: String,
        reason: String,
    },
    #[error("criteria for C-admissibility disagree at vertex {k}: {detail}")]
    CriteriaDisagree { k: String, detail: String },
    #[error("{0:?} is not a root")]
    NotARootInput(Vec<i64>),
    #[error("weight must be a nonzero vector with nonnegative coordinates, got {0:?}")]
    InvalidWeight(Vec<i64>),
    #[error("Weyl orbit exceeds the cap of {0} elements")]
    OrbitCapExceeded(usize),
    #[error("MG1 violated: {k} and {l} share a fiber but a_{{k,l}} != 0")]
    Mg1Violation { k: String, l: String },
    #[error("MG2 violated: column sums of fiber {s} differ between {j} and {j2} in fiber {t}")]
    Mg2Violation {
        s: String,
        t: String,
        j: String,
        j2: String,
    },
    #[error("quotient map is not admissible: {0}")]
    NotAdmissibleQuotient(String),
    #[error("quotient map is not a partition of the vertex set: {0}")]
    BadPartition(String),
    #[error("composed restrictions do not share a basis: {0}")]
    BasisMismatch(String),
    #[error("restriction is not a valid gradation: {0}")]
    SpecInvalid(String),
    #[error("unknown matrix name {0:?}")]
    UnknownName(String),
    #[error("{0}")]
    Parse(String),
}
