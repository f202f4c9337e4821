//! Crate-wide error type.

use std::fmt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// The first property violation found when validating a Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDefect {
    Closure {
        row: usize,
        col: usize,
        value: usize,
    },
    NoIdentity,
    Associativity {
        a: usize,
        b: usize,
        c: usize,
    },
    NoInverse {
        element: usize,
    },
}

impl fmt::Display for GroupDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDefect::Closure { row, col, value } => {
                write!(f, "entry at ({row},{col}) is {value}, outside the carrier")
            }
            GroupDefect::NoIdentity => write!(f, "no two-sided identity element"),
            GroupDefect::Associativity { a, b, c } => {
                write!(f, "associativity fails at triple ({a},{b},{c})")
            }
            GroupDefect::NoInverse { element } => {
                write!(f, "element {element} has no two-sided inverse")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a group: {0}")]
    NotAGroup(GroupDefect),

    #[error("size limit exceeded: {what} is {actual}, cap is {cap}")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("map sends index {index} to {image}, outside a carrier of size {size}")]
    BadMap {
        index: usize,
        image: usize,
        size: usize,
    },

    #[error("no ascending kernel chain; class equation is undefined")]
    NoChain,

    #[error("classification violated: {0}")]
    ClassificationViolation(String),

    #[error("spec does not denote an abelian group: {0}")]
    NotAbelian(String),

    #[error("map is not a homomorphism: images of {x}*{y} disagree")]
    NotAHomomorphism { x: usize, y: usize },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}
