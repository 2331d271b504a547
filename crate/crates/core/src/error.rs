use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element is not loxodromic")]
    NotLoxodromic,
    #[error("point is not in the interior of the half-space (x = {0})")]
    BoundaryPoint(f64),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("generator index {index} out of range for {rank} generators")]
    IndexOutOfRange { index: i32, rank: usize },
    #[error("class count {count} exceeds the memory budget {budget}")]
    CutoffTooLarge { count: u128, budget: u64 },
    #[error("Poincaré exponent estimate did not converge: {0}")]
    NonConvergent(String),
    #[error("hypergeometric parameter c is a non-positive integer")]
    PoleAtC,
    #[error("hypergeometric series does not converge: {0}")]
    NoConvergence(String),
    #[error("pole of the meromorphic function at λ = {0}")]
    PoleAt(crate::C64),
    #[error("pole of a Gamma factor at λ = {0}")]
    PoleOfGamma(crate::C64),
    #[error("kernel is singular on the diagonal r = 0")]
    AtDiagonal,
    #[error("Gaussian time integral diverges: Re(λ²) = {0} ≤ 0")]
    DivergentIntegral(f64),
    #[error("transport undefined at a coincident boundary pair")]
    UndefinedAtCorner,
    #[error("Clifford element is not invertible")]
    NotInvertible,
    #[error("Re(λ) = {re_lambda} does not exceed the convergence abscissa {delta_hat}")]
    ConvergenceViolation { re_lambda: f64, delta_hat: f64 },
    #[error("Poincaré exponent estimate {0} is not negative")]
    DeltaNotNegative(f64),
    #[error("non-primitive class supplied (j = {0})")]
    NonPrimitiveInput(u32),
    #[error("left the Schottky domain: {0}")]
    LeftSchottkyDomain(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
