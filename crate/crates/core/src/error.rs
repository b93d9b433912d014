use thiserror::Error;

pub type Result<T> = std::result::Result<T, CavityError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CavityError {
    #[error("invalid membrane: {0}")]
    InvalidSpec(String),

    #[error("invalid cavity configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid mechanical parameters: {0}")]
    InvalidMechanics(String),

    #[error("membrane reflection vanishes; phase taken from transmission")]
    DegenerateInput,

    #[error("field equations are singular at k = {k}")]
    SingularSystem { k: f64 },

    #[error("shift functions are singular (A = B = 0) at kq' = {kq}")]
    SingularConfiguration { kq: f64 },

    #[error("no resonance of mode {m} in [{lo}, {hi}]")]
    NoRootInWindow { m: u64, lo: f64, hi: f64 },

    #[error("first-order correction diverges: h'(k0) = {h_prime}")]
    DivergentCorrection { h_prime: f64 },

    #[error("derivative stencil crosses a branch (jump {jump} m^-1)")]
    StencilCrossesBranch { jump: f64 },

    #[error("analytic coupling outside its validity domain: |h'(k0)| = {h_prime}")]
    OutOfValidity { h_prime: f64 },

    #[error("mechanical damping rate is required for the cooperativity")]
    MissingDamping,

    #[error("half maximum not reached within the free spectral range")]
    PeakOverlap,

    #[error("iteration did not converge: {0}")]
    NonConvergence(String),

    #[error("closed-form finesse requires Q = 0 (got Q = {q_com} m)")]
    NonZeroCom { q_com: f64 },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("config: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(String),
}

impl CavityError {
    /// Short machine-readable tag used in scan summaries.
    pub fn code(&self) -> &'static str {
        match self {
            CavityError::InvalidSpec(_) => "invalid-spec",
            CavityError::InvalidConfig(_) => "config-invalid",
            CavityError::InvalidMechanics(_) => "invalid-mechanics",
            CavityError::DegenerateInput => "degenerate-input",
            CavityError::SingularSystem { .. } => "singular-system",
            CavityError::SingularConfiguration { .. } => "singular-configuration",
            CavityError::NoRootInWindow { .. } => "no-root-in-window",
            CavityError::DivergentCorrection { .. } => "divergent-correction",
            CavityError::StencilCrossesBranch { .. } => "stencil-crosses-branch",
            CavityError::OutOfValidity { .. } => "out-of-validity",
            CavityError::MissingDamping => "missing-damping",
            CavityError::PeakOverlap => "peak-overlap",
            CavityError::NonConvergence(_) => "non-convergence",
            CavityError::NonZeroCom { .. } => "nonzero-com",
            CavityError::UnknownPreset(_) => "unknown-preset",
            CavityError::Parse(_) => "parse",
            CavityError::Io(_) => "io-error",
        }
    }
}

impl From<std::io::Error> for CavityError {
    fn from(e: std::io::Error) -> Self {
        CavityError::Io(e.to_string())
    }
}
