use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1} generators")]
    Dimension(usize, usize),
    #[error("generator index {0} outside 1..={1}")]
    GeneratorRange(u32, usize),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("input is not antisymmetric")]
    NotAntisymmetric,
    #[error("exponential of an element with nonzero body {0} is not exact")]
    Transcendental(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed one-form: {0}")]
    MalformedOneForm(String),
    #[error("non-unitary input: {0}")]
    NonUnitary(String),
    #[error("chiral constraint violated: residual {0}")]
    NotChiral(String),
    #[error("unsupported KO-dimension {0}")]
    KoDimension(u8),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
