use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ideal must have at least one variable")]
    NoVariables,
    #[error("generation degree must be positive")]
    ZeroDegree,
    #[error("generator {index} has {found} exponents, expected {expected}")]
    WrongArity {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {index} has degree {found}, expected {expected}")]
    WrongDegree {
        index: usize,
        expected: u32,
        found: u32,
    },
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("ideal is not artinian: x{0}^d is not a generator")]
    NotArtinian(usize),
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("linear form is zero")]
    ZeroForm,
    #[error("linear form has {found} coefficients, expected {expected}")]
    FormArity { expected: usize, found: usize },
    #[error("linear forms are linearly dependent")]
    DependentForms,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("face set is not closed under taking subsets")]
    NotDownwardClosed,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("map in degree {0} has maximal rank; there is no failure to witness")]
    NotAFailure(u32),
    #[error("map in degree {0} is surjective; the dual differentiation map has trivial kernel")]
    NoWitness(u32),
    #[error("form is not annihilated by the differentiation operator")]
    UnverifiedForm,
    #[error("degree-d piece of the quotient is empty; hypothesis is vacuous")]
    EmptyDegree,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
