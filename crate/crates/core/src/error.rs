use thiserror::Error;

/// Every failure the engine can report. Each variant names the contract that was broken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroDenominator: denominator polynomial is zero")]
    ZeroDenominator,
    #[error("DivisionByZero: divisor is the zero function")]
    DivisionByZero,
    #[error("PoleAtPoint: function has a pole at u = {0}")]
    PoleAtPoint(String),
    #[error("NotInLocalizedRing: {0} is not in the localized coefficient ring of {1}")]
    NotInLocalizedRing(String, String),
    #[error("NonInvertibleLeadingTerm: leading coefficient b_0 of the Euler series is zero")]
    NonInvertibleLeadingTerm,
    #[error("ZeroWeight: fixed point weights must be nonzero")]
    ZeroWeight,
    #[error("NotIntegral: fixed-point sum {0} is not in the unlocalized ring")]
    NotIntegral(String),
    #[error("SideMismatch: component {0} is not on the plus side")]
    SideMismatch(String),
    #[error("WrongTheory: operation requires {expected}, model is {found}")]
    WrongTheory { expected: String, found: String },
    #[error("ZeroRestriction: component {0} has zero restriction")]
    ZeroRestriction(String),
    #[error("UnassignedSide: component {0} has no side label")]
    UnassignedSide(String),
    #[error("BadPolynomial: {0}")]
    BadPolynomial(String),
    #[error("TheoryMismatch: cannot combine {0} and {1} models")]
    TheoryMismatch(String, String),
    #[error("InvalidModel: {0}")]
    InvalidModel(String),
    #[error("InvalidLaw: {0}")]
    InvalidLaw(String),
    #[error("SyntaxError at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("FormatError: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
