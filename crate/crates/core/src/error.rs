use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeP(u32),
    #[error("characteristic 2 is not supported, q must be odd")]
    EvenCharacteristic,
    #[error("field modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("field too large")]
    FieldTooLarge,
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial degree {degree} exceeds length {n}")]
    DegreeExceedsLength { degree: usize, n: usize },
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("w·l·f·g does not equal X^{n} - 1 (product is {product})")]
    FactorizationMismatch { n: usize, product: String },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("skew cyclic codes need even length, got n = {0}")]
    OddLength(usize),
    #[error("length must be positive")]
    ZeroLength,
    #[error("spec violation: {0}")]
    SpecViolation(String),
    #[error("inexact polynomial division: {0}")]
    NonExactDivision(String),
    #[error("polynomial does not divide X^{0} - 1")]
    NotADivisor(usize),
    #[error("generators do not span a module under the X-action")]
    NotAModule,
    #[error("code has {count} codewords, above the cap of {cap}")]
    TooLarge { count: u128, cap: u128 },
}
