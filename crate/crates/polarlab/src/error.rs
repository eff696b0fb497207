use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arity mismatch: expected {expected} slots, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("shape mismatch: (m, n) = ({m_left}, {n_left}) vs ({m_right}, {n_right})")]
    ShapeMismatch {
        m_left: usize,
        n_left: usize,
        m_right: usize,
        n_right: usize,
    },

    #[error("multi-index entry {entry} outside 1..={n}")]
    IndexOutOfRange { entry: usize, n: usize },

    #[error("index must be nondecreasing: {0:?}")]
    NotNondecreasing(Vec<usize>),

    #[error("slot {slot} outside 1..={m}")]
    SlotOutOfRange { slot: usize, m: usize },

    #[error("shuffle step k = {k} outside {lo}..={hi}")]
    StepOutOfRange { k: usize, lo: usize, hi: usize },

    #[error("m = {m} exceeds the m <= {max} factorial guard on permutation enumeration")]
    FactorialGuard { m: usize, max: usize },

    #[error("p = {0} is not a valid exponent (need p >= 1 or p = inf)")]
    InvalidExponent(f64),

    #[error("power iteration did not converge within {max_iter} iterations (tol {tol})")]
    NonConvergence { max_iter: usize, tol: f64 },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("integrand returned a non-finite value at sample {sample}: {value}")]
    NonFiniteSample { sample: u64, value: f64 },

    #[error("arity m = {0} must be even")]
    OddArity(usize),

    #[error("block size floor(2n/m) = {b} too small (need >= 2)")]
    BlockTooSmall { b: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
