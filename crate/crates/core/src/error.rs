use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{value} lies outside [0, 1]")]
    OutOfUnitInterval { value: Rat },

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("function is not normal (supremum {sup} < 1)")]
    NotNormal { sup: Rat },

    #[error("{0} requires operands in L (normal and convex)")]
    NotInL(&'static str),

    #[error("{0} is undefined when an operand is 1_{{1}}")]
    TopOperand(&'static str),

    #[error("unknown scalar operation `{0}`")]
    UnknownScalarOp(String),

    #[error("unknown operation `{0}`")]
    UnknownOp(String),

    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),

    #[error("unknown reproduction case `{0}`")]
    UnknownCase(String),

    #[error("axiom {axiom} does not apply to a {direction} operation")]
    InapplicableAxiom {
        axiom: &'static str,
        direction: &'static str,
    },

    #[error("convolution engine precondition violated: {0}")]
    Engine(String),

    #[error("breakpoint {x} is not on the grid 1/{n}")]
    OffGrid { x: Rat, n: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
