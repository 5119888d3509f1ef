use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("cannot parse {kind} from {input:?}")]
    Parse { kind: &'static str, input: String },

    /// `(alpha + 1/2)_n` vanishes, so `p_n` drops degree.
    #[error(
        "alpha = {alpha} makes the factor (alpha + 1/2 + {k}) of (alpha + 1/2)_{n} vanish; p_{n} would drop degree"
    )]
    DegreeGuard { alpha: String, k: usize, n: usize },

    #[error("pole: ({base})_{len} vanishes at alpha = {alpha}")]
    PochhammerPole { base: String, len: usize, alpha: String },

    #[error("polynomial of degree {degree} exceeds the {available} available moments")]
    DegreeOverflow { degree: usize, available: usize },

    #[error("moment functional is not regular: <u, Q_{n}^2> = 0")]
    Regularity { n: usize },

    #[error("inconsistent identity: {0}")]
    Inconsistent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: estimated error {estimate:e} exceeds tolerance {tolerance:e}")]
    Convergence { estimate: f64, tolerance: f64 },
}
