//! Error type shared by every module in the crate.

/// Everything that can go wrong across the numeric kernel, frame algebra,
/// partition sweeps, and certificate builders.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("shape {rows}x{cols} does not match {len} entries")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("dimension {dim} exceeds the dense-solver cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPsd { eigenvalue: f64 },
    #[error("pencil right-hand side is numerically zero")]
    ZeroPencil,
    #[error("frame family is empty")]
    EmptyFamily,
    #[error("subspace matrix is numerically zero")]
    ZeroSubspace,
    #[error("operator K is numerically zero")]
    ZeroK,
    #[error("operator T is numerically zero")]
    ZeroT,
    #[error("length mismatch: {context}")]
    LengthMismatch { context: String },
    #[error("partition budget must be at least 1")]
    BudgetZero,
    #[error("input family is not a K-frame")]
    NotKFrame,
    #[error("operator is not injective (numerical rank {rank} < domain dimension {dim})")]
    NotInjective { rank: usize, dim: usize },
    #[error("image family is not a K-frame on the operator range")]
    NotKFrameOnRange,
    #[error("input families are not K-woven")]
    NotKWoven,
    #[error("image families are not K-woven on the operator range")]
    NotKWovenOnRange,
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("alpha {0} lies outside the open interval (0, 1)")]
    BadAlpha(f64),
    #[error("no finite erasure constant: erased mass does not vanish on the comparison kernel")]
    NoFiniteC,
    #[error("erasure constant {c:.6e} is not below the required threshold {threshold:.6e}")]
    CTooLarge { c: f64, threshold: f64 },
    #[error("erased index {index} out of range for a family of {len} vectors")]
    BadErasureIndex { index: usize, len: usize },
    #[error("missing operator: {name}")]
    MissingOperator { name: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
