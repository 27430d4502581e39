use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid group spec: {0}")]
    InvalidGroupSpec(String),

    #[error("group is crooked (nilpotency degree exceeds two): {0}")]
    Crooked(String),

    #[error("unsupported norm for this group layout: {0}")]
    UnsupportedNorm(String),

    #[error("dilation factor {0} has no exact root for the spec's weight denominators")]
    InexactDilation(String),

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("point is not in the lattice module: {0}")]
    NotInLattice(String),

    #[error("point is not in the model set: {0}")]
    NotInModelSet(String),

    #[error("window is not regular for this lattice: projected point {0} lies on the boundary")]
    WindowNotRegular(String),

    #[error("enumeration cap exceeded: {candidates} candidates > cap {cap}")]
    CapExceeded { candidates: u128, cap: u64 },

    #[error("arrangement size cap exceeded: {size} > {cap}")]
    ArrangementCap { size: usize, cap: usize },

    #[error("enumeration radius {have} too small: need at least {need}")]
    EnumerationRadius { have: String, need: String },

    #[error("linear program is degenerate: {0}")]
    DegenerateLp(String),

    #[error("good pair search exhausted its budget; first violated condition: {0}")]
    GoodPairBudget(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
