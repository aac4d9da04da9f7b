use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{value} is not a unit modulo {modulus} (gcd = {gcd})")]
    NotAUnit { value: u64, modulus: u64, gcd: u64 },

    #[error("residue list does not match the prime-power factors of {modulus}")]
    FactorMismatch { modulus: u64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not invertible: determinant {det} is not a unit modulo {modulus}")]
    NotInvertible { det: u64, modulus: u64 },

    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),

    #[error("modulus {modulus} is not a power of {p}")]
    NotAPrimePower { modulus: u64, p: u64 },

    #[error("lifting level t = {t} out of range for exponent e = {e}")]
    LevelOutOfRange { t: u32, e: u32 },

    #[error("generator {index} is not null modulo {p}^{t}: B_t * V is not divisible")]
    InexactDivision { index: usize, p: u64, t: u32 },

    #[error("{0} does not divide the modulus {1}")]
    NotADivisor(u64, u64),

    #[error("instance too large for enumeration: {0}")]
    TooLarge(String),

    #[error("negative entry {0} has no path-count meaning")]
    NegativeEntry(i64),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}
