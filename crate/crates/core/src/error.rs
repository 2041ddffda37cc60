use thiserror::Error;

use crate::ground::{ESet, Element};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },
    #[error("cannot parse {name}={raw:?} as a non-negative integer")]
    Unparsable { name: &'static str, raw: String },
    #[error("budgets must be positive")]
    ZeroBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("vector length k = {k} is outside [1, {max}]")]
    BadLength { k: u32, max: u32 },
    #[error("coordinate index {index} is outside [1, {k}]")]
    CoordinateOutOfRange { index: usize, k: u32 },
    #[error("element id {element} is outside [0, {n})")]
    ElementOutOfRange { element: Element, n: usize },
    #[error("sets live in different ground sets (k = {left} vs k = {right})")]
    Mismatch { left: u32, right: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("set {0} is already a member")]
    Duplicate(String),
    #[error("generation {gen} is older than the newest generation {current}")]
    StaleGeneration { gen: u32, current: u32 },
    #[error("generation {gen} skips ahead of the newest generation {current}")]
    GenerationGap { gen: u32, current: u32 },
    #[error("inconsistent provenance: {0}")]
    Provenance(String),
    #[error("malformed family document: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("k = {k} is outside [3, {max}]")]
    KOutOfRange { k: u32, max: u32 },
    #[error("generation {generation} needs {needed} more pair visits; budget left is {left} of {budget}")]
    BudgetExceeded {
        generation: u32,
        needed: u64,
        left: u64,
        budget: u64,
    },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("generation 0 is not the coordinate-set seed: {0}")]
    NotSeeded(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpressError {
    #[error("member index {0} does not exist")]
    NoSuchMember(usize),
    #[error("set {0} contains no unit-vector")]
    NoUnitVector(String),
    #[error("set {0} contains more than one unit-vector")]
    SeveralUnitVectors(String),
    #[error("set {0} is a coordinate set; it is already a leaf")]
    CoordinateSet(String),
    #[error("no crossing pair rewrites {0} as a difference")]
    NoRewrite(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate needs k >= 3, got {0}")]
    KTooSmall(u32),
    #[error("pair ({0}, {1}) does not cross")]
    NotCrossing(String, String),
    #[error("family has k = {family}, certificate has k = {certificate}")]
    KMismatch { family: u32, certificate: u32 },
    #[error(transparent)]
    Ground(#[from] GroundError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("k = {k} exceeds the LP budget (max k = {max})")]
    TooLarge { k: u32, max: u32 },
    #[error("family contains {0}; the empty set and V are never targets")]
    TrivialMember(String),
    #[error("trivially unrealizable: complement closure violated ({witness} is a member, {complement} is not)")]
    ComplementClosure { witness: ESet, complement: ESet },
    #[error("no constraint row matches {0}")]
    MissingRow(String),
    #[error("multiplier count {got} does not match constraint count {expected}")]
    MultiplierCount { got: usize, expected: usize },
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}
