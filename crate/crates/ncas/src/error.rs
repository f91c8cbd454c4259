//! Error types for every layer, plus the process exit-code mapping used by the CLI.

use thiserror::Error;

/// Finite field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported bound 2^20")]
    OrderTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("zero has no discrete logarithm or inverse")]
    ZeroArgument,
    #[error("{value} is not an element of GF({order})")]
    NotAnElement { value: u64, order: u64 },
}

/// Exact cyclotomic scalar arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicals: sqrt({left}) and sqrt({right})")]
    IncompatibleRadical { left: u64, right: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("cannot parse scalar: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
}

/// Dense 0/1, integer and group-valued matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("entry {value} at ({row}, {col}) is not 0 or 1")]
    NotBinary { row: usize, col: usize, value: i64 },
}

/// Combinatorial designs: BGW, GH, Latin squares, SGDDs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{m} does not divide q - 1 = {q_minus_one}")]
    DivisibilityFailure { m: u64, q_minus_one: u64 },
    #[error("dlog(-1) = {phi_minus_one} is nonzero in Z_{m}; the difference matrix is not symmetric")]
    SymmetryObstruction { m: u64, phi_minus_one: u64 },
    #[error("Latin square order {0} is odd")]
    OddOrder(usize),
    #[error("order {0} is too small")]
    OrderTooSmall(usize),
    #[error("row {row} has weight {weight}, expected {expected}")]
    RowWeightVaries { row: usize, weight: usize, expected: usize },
    #[error("rows ({row_a}, {row_b}): difference {element} occurs {count} times, expected {expected}")]
    NotBalanced { row_a: usize, row_b: usize, element: u32, count: usize, expected: usize },
    #[error("rows ({row_a}, {row_b}) share {count} nonzero columns, expected {expected}")]
    SupportOverlap { row_a: usize, row_b: usize, count: usize, expected: usize },
    #[error("entry ({row}, {col}) is not a group element of order {order}")]
    BadEntry { row: usize, col: usize, order: u32 },
    #[error("Latin property fails in {line} {index}: symbol {symbol} repeated")]
    NotLatin { line: &'static str, index: usize, symbol: String },
    #[error("Latin square not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("diagonal entry ({index}, {index}) is {found}, expected the indeterminate")]
    DiagonalNotConstant { index: usize, found: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Association scheme axioms and fusions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("no relation matrices supplied")]
    Empty,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("axiom (i): A_0 is not the identity at ({row}, {col})")]
    NotIdentityFirst { row: usize, col: usize },
    #[error("axiom (ii): relation {index} is empty")]
    EmptyRelation { index: usize },
    #[error("axiom (ii): cell ({row}, {col}) is covered {count} times")]
    NotPartition { row: usize, col: usize, count: usize },
    #[error("axiom (iii): transpose of relation {index} is not a relation, first mismatch at ({row}, {col})")]
    NotTransposeClosed { index: usize, row: usize, col: usize },
    #[error(
        "axiom (iv): A_{i}A_{j} is not constant on relation {k}: {found} at ({row}, {col}) but {expected} at ({ref_row}, {ref_col})"
    )]
    NotClosedUnderProduct {
        i: usize,
        j: usize,
        k: usize,
        row: usize,
        col: usize,
        found: u64,
        expected: u64,
        ref_row: usize,
        ref_col: usize,
    },
    #[error("invalid fusion partition: {0}")]
    InvalidPartition(String),
    #[error("fusion condition (a) fails: transposes of block {block} do not form a block")]
    ConditionAViolated { block: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Adjacency algebra and eigenmatrix computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("scheme is not of the expected family: {0}")]
    WrongSchemeFamily(String),
    #[error("dual basis relation fails for {left} * {right}")]
    DualBasisViolation { left: String, right: String },
    #[error("star relation fails for {0}")]
    StarViolation(String),
    #[error("diagonal units do not sum to the identity")]
    Incomplete,
    #[error("block degrees give {found} units, expected {expected}")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("rank of {unit} could not be certified (bounds {lower}..={upper})")]
    RankUncertified { unit: String, lower: usize, upper: usize },
    #[error("trace of {unit} is not a nonnegative integer")]
    BadTrace { unit: String },
    #[error("identity {identity} fails: {detail}")]
    IdentityViolation { identity: String, detail: String },
    #[error("fused algebra is not commutative in block {0}")]
    NotCommutative(String),
    #[error("fused idempotents could not be split in block {0}")]
    SplitFailed(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Block-matrix identities asserted while building the families.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("q = {0} has even characteristic")]
    EvenCharacteristic(u32),
    #[error("identity {identity} fails at ({row}, {col}): expected {expected}, found {found}")]
    IdentityViolation { identity: String, row: usize, col: usize, expected: i64, found: i64 },
    #[error("intersection number p^{k}_{{{i},{j}}} is {found}, closed form gives {expected}")]
    TensorMismatch { i: usize, j: usize, k: usize, expected: u64, found: u64 },
}

/// Independent numeric and combinatorial checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("numeric spectrum ambiguous after {attempts} attempts: {detail}")]
    Ambiguous { attempts: usize, detail: String },
}

/// Scheme file input and output.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported scheme file version {0}")]
    Version(String),
    #[error("malformed scheme file: {0}")]
    Malformed(String),
}

/// Top-level error, used by the CLI and the FFI layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    File(#[from] FileError),
    #[error("usage: {0}")]
    Usage(String),
}

/// Coarse outcome classes shared by the CLI exit codes and the FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Verification,
    Precondition,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Usage => 1,
            ErrorClass::Verification => 2,
            ErrorClass::Precondition => 3,
        }
    }
}

fn field_class(_: &FieldError) -> ErrorClass {
    ErrorClass::Precondition
}

fn design_class(e: &DesignError) -> ErrorClass {
    match e {
        DesignError::Field(f) => field_class(f),
        DesignError::DivisibilityFailure { .. }
        | DesignError::SymmetryObstruction { .. }
        | DesignError::OddOrder(_)
        | DesignError::OrderTooSmall(_) => ErrorClass::Precondition,
        DesignError::ShapeMismatch(_) => ErrorClass::Usage,
        _ => ErrorClass::Verification,
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Field(f) => field_class(f),
            Error::Design(d) => design_class(d),
            Error::Build(BuildError::Design(d)) => design_class(d),
            Error::Build(BuildError::Field(f)) => field_class(f),
            Error::Build(BuildError::EvenCharacteristic(_)) => ErrorClass::Precondition,
            Error::Spectra(SpectraError::WrongSchemeFamily(_)) => ErrorClass::Precondition,
            Error::File(_) | Error::Usage(_) => ErrorClass::Usage,
            Error::Scheme(SchemeError::InvalidPartition(_)) => ErrorClass::Usage,
            _ => ErrorClass::Verification,
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> String {
        let dbg = match self {
            Error::Field(e) => format!("{e:?}"),
            Error::Scalar(e) => format!("{e:?}"),
            Error::Matrix(e) => format!("{e:?}"),
            Error::Design(e) => format!("{e:?}"),
            Error::Scheme(e) => format!("{e:?}"),
            Error::Spectra(e) => format!("{e:?}"),
            Error::Build(e) => match e {
                BuildError::Design(d) => format!("{d:?}"),
                BuildError::Field(f) => format!("{f:?}"),
                BuildError::Scheme(s) => format!("{s:?}"),
                other => format!("{other:?}"),
            },
            Error::Oracle(e) => format!("{e:?}"),
            Error::File(e) => format!("{e:?}"),
            Error::Usage(_) => "Usage".to_string(),
        };
        // Variant name is the leading identifier; nested wrappers like Field(..) are peeled once.
        let head: String = dbg.chars().take_while(|c| c.is_alphanumeric()).collect();
        if head == "Field" || head == "Matrix" || head == "Scheme" || head == "Design" {
            let inner = &dbg[head.len()..].trim_start_matches('(');
            inner.chars().take_while(|c| c.is_alphanumeric()).collect()
        } else {
            head
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
