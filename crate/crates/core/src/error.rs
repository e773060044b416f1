use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MfError {
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(u32),
    #[error("unknown family `{0}` (expected A-inf or D-inf)")]
    UnknownFamily(String),
    #[error("polynomial has {found} variables, ring has {expected}")]
    VariableMismatch { expected: usize, found: usize },
    #[error("negative exponents are only allowed in localized computations")]
    Laurent,
    #[error("matrix size mismatch: {0}")]
    SizeMismatch(String),
    #[error("ring mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("{0} is not in uv coordinates; the Knörrer construction needs a uv presentation")]
    NeedsUvForm(String),
    #[error("unit inverse did not stabilise below degree cap {0}")]
    DegreeCap(i64),
    #[error("identity {what} fails at ({row}, {col}): residual {residual}")]
    IdentityFailure { what: String, row: usize, col: usize, residual: String },
    #[error("clearing exponent {exponent} of {var} is insufficient: {detail}")]
    DenominatorMismatch { var: String, exponent: i32, detail: String },
    #[error("presentation is not gradable")]
    Ungradable,
    #[error("cutoff {cutoff} is below the largest generator degree {max_gen}")]
    CutoffTooSmall { cutoff: i64, max_gen: i64 },
    #[error("n_max must be at least {min}, got {got}")]
    NMax { min: usize, got: usize },
    #[error("not locally free on the punctured spectrum: {0}")]
    NotInP(String),
    #[error("unknown module label `{0}`")]
    UnknownModule(String),
    #[error("locus verdicts disagree for {label} at {prime}: {detail}")]
    LocusInconsistency { label: String, prime: String, detail: String },
    #[error("K0 presentation unstable: {0} at n_max, {1} at n_max+1")]
    Unstable(String, String),
    #[error("unverified certificate: {0}")]
    Unverified(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, MfError>;
