use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("characteristic {p} divides the root of unity order {n}")]
    CharDividesOrder { p: u64, n: u64 },
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero input")]
    ZeroInput,
    #[error("nonzero valuation {0}")]
    NonzeroValuation(String),
    #[error("power test undecided: {0}")]
    Undecided(String),

    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("ground fields differ")]
    FieldMismatch,
    #[error("algebra is not known to be central simple: {0}")]
    NotCentralSimple(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("the tower has no primitive {0}-th root of unity")]
    MissingRootOfUnity(u64),
    #[error("not a cyclic extension: {0}")]
    NotCyclic(String),
    #[error("not a field: {0}")]
    NotAField(String),

    #[error("commutator is not a scalar")]
    NotScalar,
    #[error("alternating form is degenerate")]
    DegenerateForm,
    #[error("input list is not totally isotropic and independent")]
    NotIsotropic,
    #[error("pairing has a nontrivial radical of order {0}")]
    DegenerateRadical(usize),
    #[error("invalid armature: {0}")]
    InvalidArmature(String),

    #[error("no invertible solution found among {searched} candidates")]
    NoInvertibleSolution { searched: usize, basis: Vec<Vec<String>> },
    #[error("zero element has no valuation")]
    ZeroElement,
    #[error("pairing is not preserved: {0}")]
    NotIsometric(String),
    #[error("Kum(M/F) is not contained in the armature")]
    KumNotContained,
    #[error("Kum(M/F) is not totally isotropic in the armature")]
    KumNotIsotropic,
    #[error("instance exceeds the supported scale: {0}")]
    ScaleExceeded(String),

    #[error("element is not square-central")]
    NotSquareCentral,
    #[error("no split presentation available")]
    NotSplitPresentation,
    #[error("criterion requires characteristic 0, got {0}")]
    WrongCharacteristic(u64),
    #[error("index of the algebra is unknown")]
    UnknownIndex,
    #[error("search gave up after {0} candidates without a witness")]
    BudgetExhausted(usize),
    #[error("candidate is not a witness: {0}")]
    NotAWitness(String),

    #[error("task `{task}` failed: {reason}")]
    Task { task: String, reason: String },
    #[error("bad report: {0}")]
    BadReport(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
    }
}
