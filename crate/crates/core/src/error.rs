//! Error type shared by all algebra routines.

use std::fmt;

use crate::congruence::CompatibilityViolation;

/// Everything that can go wrong outside of file parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    /// An operation was applied to the wrong number of arguments.
    ArityMismatch { expected: usize, got: usize },
    /// An element lies outside the universe `{0, .., n-1}`.
    ElementOutOfRange { value: usize, universe: usize },
    /// Two objects that must share a universe size do not.
    UniverseMismatch { left: usize, right: usize },
    /// An operation table has the wrong length for its arity.
    TableLength { expected: usize, got: usize },
    /// Two operation names collide inside one algebra.
    DuplicateOperation(String),
    /// A designated constant tuple names an operation that is missing or
    /// not nullary.
    BadConstantName(String),
    /// The designated zero and one tuples have different widths.
    ConstantWidthMismatch { zero: usize, one: usize },
    /// Two algebras were expected to have identical signatures.
    SignatureMismatch(String),
    /// A map between algebras has the wrong length.
    MapLength { expected: usize, got: usize },
    /// A partition was used as a congruence but fails compatibility.
    NotACongruence(CompatibilityViolation),
    /// Generating a subalgebra from no elements and no constants.
    EmptyGeneration,
    /// A subuniverse of a product fails to project onto some factor.
    NotSubdirect { factor: usize },
    /// A resource cap from [`crate::Limits`] would be exceeded.
    CapExceeded {
        what: &'static str,
        needed: u64,
        cap: u64,
    },
    /// The algebra has no designated constant frame (`N = 0`) but the
    /// requested computation needs one.
    NoConstantFrame,
    /// A relation does not have the shape required by the routine.
    WrongRelationShape { expected: &'static str },
    /// No valid designation of zero and one elements exists.
    DesignationImpossible(String),
    /// The central elements fail to form a Boolean algebra as required.
    NotBoolean(String),
    /// A requested refutation is not available for the given data.
    RefutationUnavailable(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AlgebraError::*;
        match self {
            ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected} arguments, got {got}")
            }
            ElementOutOfRange { value, universe } => {
                write!(f, "element {value} outside universe of size {universe}")
            }
            UniverseMismatch { left, right } => {
                write!(f, "universe sizes differ: {left} vs {right}")
            }
            TableLength { expected, got } => {
                write!(f, "operation table has {got} entries, expected {expected}")
            }
            DuplicateOperation(name) => write!(f, "duplicate operation name `{name}`"),
            BadConstantName(name) => {
                write!(f, "`{name}` is not the name of a nullary operation")
            }
            ConstantWidthMismatch { zero, one } => {
                write!(f, "zero tuple has width {zero} but one tuple has width {one}")
            }
            SignatureMismatch(detail) => write!(f, "signature mismatch: {detail}"),
            MapLength { expected, got } => {
                write!(f, "map has {got} entries, expected {expected}")
            }
            NotACongruence(v) => write!(f, "partition is not a congruence: {v}"),
            EmptyGeneration => {
                write!(f, "cannot generate a subalgebra from no elements in a signature without constants")
            }
            NotSubdirect { factor } => {
                write!(f, "subuniverse does not project onto factor {factor}")
            }
            CapExceeded { what, needed, cap } => {
                write!(f, "cap exceeded for {what}: needs {needed}, cap is {cap}")
            }
            NoConstantFrame => write!(f, "algebra has no designated constants (N = 0)"),
            WrongRelationShape { expected } => {
                write!(f, "relation does not have the required shape: expected {expected}")
            }
            DesignationImpossible(detail) => {
                write!(f, "cannot designate zero and one elements: {detail}")
            }
            NotBoolean(detail) => {
                write!(f, "central elements do not form a Boolean algebra: {detail}")
            }
            RefutationUnavailable(detail) => write!(f, "refutation unavailable: {detail}"),
        }
    }
}

impl std::error::Error for AlgebraError {}
