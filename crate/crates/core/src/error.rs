use thiserror::Error;

/// A `(row, row, shift)` triple at which a self-orthogonality check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OrthogonalityWitness {
    pub row_a: usize,
    pub row_b: usize,
    pub shift: usize,
}

impl std::fmt::Display for OrthogonalityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(row {}, row {}, shift {})", self.row_a, self.row_b, self.shift)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("{n} does not divide the multiplicative group order {order}")]
    NoRootOfUnity { n: u64, order: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("generator has {k} rows but only {n} columns")]
    TooManyRows { k: usize, n: usize },
    #[error("generator row {0} is zero")]
    ZeroRow(usize),
    #[error("hermitian form requires a field with a configured quadratic structure")]
    NoQuadraticStructure,
    #[error("not self-orthogonal at {0}")]
    NotSelfOrthogonal(OrthogonalityWitness),
    #[error("stabilizer condition {condition} violated: {detail}")]
    StabilizerCondition { condition: &'static str, detail: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("error support exceeds the window")]
    OutsideWindow,
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("schema violation: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
