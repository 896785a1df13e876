//! Exact arithmetic substrate: rationals, polynomials and Laurent polynomials in `u`,
//! reduced rational functions, and membership in the localized coefficient rings.

mod cyclotomic;
mod laurent;
mod poly;
mod ratfunc;
mod scalar;

pub use cyclotomic::{cyclotomic, localized_membership};
pub use laurent::LaurentPoly;
pub use poly::UniPoly;
pub use ratfunc::RationalFunction;
pub use scalar::{format_scalar, parse_scalar, q, qf, Scalar};

use serde::{Deserialize, Serialize};
use std::fmt;

/// Which equivariant coefficient ring we are working in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoryKind {
    /// Borel cohomology, coefficients Q[u].
    Borel,
    /// Equivariant K-theory, coefficients Q[u, u^-1].
    #[serde(rename = "ktheory")]
    KTheory,
}

impl fmt::Display for TheoryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryKind::Borel => f.write_str("borel"),
            TheoryKind::KTheory => f.write_str("ktheory"),
        }
    }
}
