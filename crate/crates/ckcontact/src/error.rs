use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum CkError {
    #[error("kappa-tangent pole: |C_kappa(x)| = {cos_abs:.3e} below tolerance at x = {x}")]
    Pole { x: f64, cos_abs: f64 },

    #[error("chart error: {0}")]
    Chart(String),

    #[error("chart mismatch: expected {expected:?}, got {got:?}")]
    ChartMismatch {
        expected: crate::calculus::Chart,
        got: crate::calculus::Chart,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },

    #[error("step size underflow below 1e-12 at t = {t}")]
    StepFailure { t: f64 },

    #[error("singular linear solve: pivot {pivot:.3e} below rank tolerance")]
    SingularSolve { pivot: f64 },

    #[error("vector field is not Killing: Lie-derivative residual {residual:.3e} exceeds 1e-6")]
    NotKilling { residual: f64 },

    #[error("unknown system id {0:?}; run the `catalog` subcommand for the list")]
    UnknownSystem(String),

    #[error("system {0:?} is kappa-parametric; supply --kappa k1,k2,k3")]
    KappaRequired(String),

    #[error("unknown coefficient id {0:?} for this system")]
    UnknownCoefficient(String),

    #[error(
        "the contact structure of the de Sitter spacetime (kappa = (-1,-1,+1)) is not regular: \
         the Reeb orbit of the origin is a line while the orbit of (0,0,1,0) is a circle, \
         so no quotient fibration exists"
    )]
    NotRegular,

    #[error("no fibration catalogued for kappa = ({0}, {1}, {2}); normalized triples with kappa3 = +1 are supported")]
    UnsupportedKappa(f64, f64, f64),

    #[error("system {0:?} is not of Liouville type; its Hamiltonians are not first integrals of the Reeb field")]
    NotLiouville(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Config(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CkError>;
