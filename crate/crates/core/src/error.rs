use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotCoprime { a: String, m: String },
    #[error("gcd(w0, w1, w2) = {0}, expected 1")]
    NotCoprimeTotal(String),
    #[error("weights {0} are not pairwise coprime")]
    NotPairwiseCoprime(String),
    #[error("invalid cyclic quotient type: {0}")]
    InvalidType(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("Euler characteristic {0} is not an integer")]
    NonIntegerChi(String),
    #[error("input too large for enumeration: {0}")]
    TooLarge(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("imaginary residue {imag:e} exceeds tolerance {tolerance:e}")]
    ImaginaryResidue { imag: f64, tolerance: f64 },
}
