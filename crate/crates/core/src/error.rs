use thiserror::Error;

use crate::jet::JetVar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A jet variable of derivative order above the configured bound was produced or requested.
    #[error("order overflow: {var} exceeds maximum derivative order {max_order}")]
    OrderOverflow { var: String, max_order: u32 },

    #[error("no value assigned to jet variable {0}")]
    MissingAssignment(JetVar),

    #[error("syntax error at {line}:{column}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("record {record}: component {component} depends on derivatives, not a point symmetry")]
    PointSymmetryViolation { record: String, component: String },

    #[error("record {record}: {message}")]
    InvalidRecord { record: String, message: String },

    #[error("expression has order {found}, operator defined only up to order {allowed}")]
    OrderMismatch { found: u32, allowed: u32 },

    #[error("unknown symmetry {0:?}")]
    UnknownSymmetry(String),

    #[error("bracket [{left}, {right}] is not a linear combination of the catalog fields")]
    NotInSpan { left: String, right: String },
}

pub type Result<T> = std::result::Result<T, Error>;
