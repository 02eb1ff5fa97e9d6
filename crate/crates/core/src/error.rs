use thiserror::Error;

use crate::report::Witness;
use crate::Elem;

/// How an error maps onto the CLI exit-status contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input does not have a property the operation requires.
    PropertyFailure,
    /// Malformed input or invalid invocation.
    Usage,
    /// A theorem was violated on a concrete instance. Always an upstream bug.
    Inconsistency,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table `{table}`: {reason}")]
    MalformedTable { table: String, reason: String },

    #[error("declared {constant} `{element}` fails its absorption law against element {witness}")]
    BadConstant {
        constant: &'static str,
        element: Elem,
        witness: Elem,
    },

    #[error("the characterizations of the natural partial order disagree at ({0}, {1})")]
    CostaMismatch(Elem, Elem),

    #[error("relation {relation} is not an equivalence (witness {witness:?})")]
    NotAnEquivalence {
        relation: &'static str,
        witness: Vec<Elem>,
    },

    #[error("Green's relations do not compose to D at ({0}, {1})")]
    NotComposable(Elem, Elem),

    #[error("partition is not a congruence for `{op}`: {a}~{c}, {b}~{d} but results are unrelated")]
    NotACongruence {
        op: &'static str,
        a: Elem,
        b: Elem,
        c: Elem,
        d: Elem,
    },

    #[error("quotient by D is not commutative at ({0}, {1})")]
    QuotientNotCommutative(Elem, Elem),

    #[error("size {size} exceeds the configured bound {bound}")]
    TooLarge { size: usize, bound: usize },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("element {element} has {count} covers in the block, expected exactly one")]
    NotUnique { element: Elem, count: usize },

    #[error("algebra is binormal but no factorization isomorphism was found")]
    FactorizationNotFound,

    #[error("algebra is not a co-strongly distributive skew lattice ({0})")]
    NotCoStronglyDistributive(Witness),

    #[error("algebra has no top element")]
    NoTop,

    #[error("global arrow disagrees with the arrow of upset {u} at ({x}, {y})")]
    CoherenceFailure { u: Elem, x: Elem, y: Elem },

    #[error("dual difference is ambiguous at ({y}, {x}): candidates {candidates:?}")]
    AmbiguousDiff {
        y: Elem,
        x: Elem,
        candidates: Vec<Elem>,
    },

    #[error("Esakia formula disagrees with the maximum-candidate arrow at ({0}, {1})")]
    EsakiaFormulaMismatch(Elem, Elem),

    #[error("internal inconsistency: {0}")]
    InconsistencyDetected(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::MalformedTable { .. }
            | Error::BadConstant { .. }
            | Error::TooLarge { .. }
            | Error::Parse { .. } => ErrorClass::Usage,
            Error::FactorizationNotFound
            | Error::CoherenceFailure { .. }
            | Error::EsakiaFormulaMismatch(..)
            | Error::InconsistencyDetected(_) => ErrorClass::Inconsistency,
            _ => ErrorClass::PropertyFailure,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
