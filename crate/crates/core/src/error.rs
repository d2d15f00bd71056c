use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("non-finite evaluation at x = {x}")]
    Evaluation { x: f64 },

    #[error("quadrature did not converge on [{a}, {b}] (partial value {partial})")]
    QuadratureNoConvergence { a: f64, b: f64, partial: f64 },

    #[error("density is negative ({value}) at t = {t}")]
    InvalidDensity { t: f64, value: f64 },

    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular tridiagonal system (zero pivot at row {row})")]
    SingularSystem { row: usize },

    #[error("x = {x} is outside the domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error("bad magic bytes {0:?}")]
    BadMagic([u8; 4]),

    #[error("unsupported table version {0}")]
    UnsupportedVersion(u32),

    #[error("corrupt table: {0}")]
    CorruptTable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
