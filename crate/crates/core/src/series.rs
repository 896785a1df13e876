//! Truncated Laurent expansions of rational functions and the residue maps built on them.
//!
//! Every expansion is computed in a local parameter `t` at the anchor: `t = u` at zero,
//! `t = u - a` at a finite point and `t = 1/u` at infinity. All coefficients are exact,
//! and residues and constant terms only ever expand as far as the pole order requires.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    format_scalar, localized_membership, RationalFunction, Scalar, TheoryKind, UniPoly,
};
use crate::error::{Error, Result};

/// Default truncation order for reported expansions.
pub const DEFAULT_ORDER: i64 = 32;

/// Where a Laurent expansion is taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionAnchor {
    Zero,
    Infinity,
    FinitePoint(Scalar),
}

impl fmt::Display for ExpansionAnchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionAnchor::Zero => f.write_str("0"),
            ExpansionAnchor::Infinity => f.write_str("inf"),
            ExpansionAnchor::FinitePoint(a) => f.write_str(&format_scalar(a)),
        }
    }
}

/// A Laurent expansion known exactly through local order `order`.
///
/// `coeffs[i]` multiplies `t^(valuation + i)`. For a nonzero series the first stored
/// coefficient is nonzero; the zero series (or one truncated before its first term)
/// stores nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    anchor: ExpansionAnchor,
    valuation: i64,
    coeffs: Vec<Scalar>,
    order: i64,
}

impl TruncatedSeries {
    pub fn anchor(&self) -> &ExpansionAnchor {
        &self.anchor
    }

    /// Truncation order in the local parameter.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Lowest local exponent with a nonzero coefficient, if any was retained.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    /// Coefficient of `t^j` in the local parameter. Zero outside the stored range,
    /// including above the truncation order.
    pub fn local_coeff(&self, j: i64) -> Scalar {
        let idx = j - self.valuation;
        if idx < 0 {
            return Scalar::zero();
        }
        self.coeffs
            .get(idx as usize)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Nonzero terms as `(exponent, coefficient)`, the exponent being in `u` at zero and
    /// infinity and in `u - a` at a finite point. At infinity exponents decrease.
    pub fn terms(&self) -> Vec<(i64, Scalar)> {
        let sign = if self.anchor == ExpansionAnchor::Infinity {
            -1
        } else {
            1
        };
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (sign * (self.valuation + i as i64), c.clone()))
            .collect()
    }

    /// Coefficient of `u^e` for series anchored at zero or infinity.
    pub fn coeff_of_u(&self, e: i64) -> Scalar {
        match self.anchor {
            ExpansionAnchor::Infinity => self.local_coeff(-e),
            _ => self.local_coeff(e),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match &self.anchor {
            ExpansionAnchor::Zero | ExpansionAnchor::Infinity => "u".to_string(),
            ExpansionAnchor::FinitePoint(a) => format!("(u - {})", format_scalar(a)),
        };
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c < Scalar::zero();
            let mag = if neg { -c } else { c };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let text = format_scalar(&mag);
            match (e, mag.is_one()) {
                (0, _) => f.write_str(&text)?,
                (_, true) => write!(f, "{var}^{e}")?,
                (_, false) if text.contains('/') => write!(f, "({text})*{var}^{e}")?,
                (_, false) => write!(f, "{text}*{var}^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        let big_o = match self.anchor {
            ExpansionAnchor::Infinity => format!("u^{}", -(self.order + 1)),
            _ => format!("{var}^{}", self.order + 1),
        };
        write!(f, " + O({big_o})")
    }
}

/// Power-series quotient `num/den` at `t = 0`, returned as `(valuation, coefficients)`
/// through `t^order`.
fn expand_at_origin(num: &UniPoly, den: &UniPoly, order: i64) -> (i64, Vec<Scalar>) {
    if num.is_zero() {
        return (order + 1, Vec::new());
    }
    let nv = num.u_valuation();
    let dv = den.u_valuation();
    let num = num.shift_down(nv);
    let den = den.shift_down(dv);
    let valuation = nv as i64 - dv as i64;
    let count = order - valuation + 1;
    if count <= 0 {
        return (valuation, Vec::new());
    }
    let d0_inv = den.coeff(0).recip();
    let dc = den.coeffs();
    let mut out: Vec<Scalar> = Vec::with_capacity(count as usize);
    for i in 0..count as usize {
        let mut acc = num.coeff(i);
        for j in 1..dc.len().min(i + 1) {
            acc -= &dc[j] * &out[i - j];
        }
        out.push(acc * &d0_inv);
    }
    (valuation, out)
}

/// Laurent expansion of `f` at `anchor`, exact through local order `order`.
pub fn expand(f: &RationalFunction, anchor: &ExpansionAnchor, order: i64) -> TruncatedSeries {
    let (valuation, coeffs) = match anchor {
        ExpansionAnchor::Zero => expand_at_origin(f.num(), f.den(), order),
        ExpansionAnchor::FinitePoint(a) => {
            expand_at_origin(&f.num().shifted(a), &f.den().shifted(a), order)
        }
        ExpansionAnchor::Infinity => {
            if f.is_zero() {
                (order + 1, Vec::new())
            } else {
                // f(1/t) = t^(dd - dn) * rev(num)(t) / rev(den)(t)
                let dn = f.num().degree().unwrap_or(0);
                let dd = f.den().degree().unwrap_or(0);
                let shift = dd as i64 - dn as i64;
                let (v, c) =
                    expand_at_origin(&f.num().reversed(dn), &f.den().reversed(dd), order - shift);
                (v + shift, c)
            }
        }
    };
    TruncatedSeries {
        anchor: anchor.clone(),
        valuation,
        coeffs,
        order,
    }
}

/// Which Laurent ring a constant term is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSide {
    /// Q[[u]][u^-1], expansion at zero.
    Plus,
    /// Q[[u^-1]][u], expansion at infinity.
    Minus,
}

/// Exponent-zero coefficient of the positive or negative Laurent expansion.
pub fn constant_term(f: &RationalFunction, side: SeriesSide) -> Scalar {
    let anchor = match side {
        SeriesSide::Plus => ExpansionAnchor::Zero,
        SeriesSide::Minus => ExpansionAnchor::Infinity,
    };
    expand(f, &anchor, 0).local_coeff(0)
}

/// Coefficient of `(u - a)^-1` in the expansion of `f` at `a`; zero away from poles.
pub fn residue_at(f: &RationalFunction, a: &Scalar) -> Scalar {
    expand(f, &ExpansionAnchor::FinitePoint(a.clone()), -1).local_coeff(-1)
}

/// `Res_{u=inf}(f du)`, i.e. minus the `u^-1` coefficient of the expansion at infinity.
/// With this sign the residues of `f du` over all poles including infinity sum to zero.
pub fn residue_at_infinity(f: &RationalFunction) -> Scalar {
    -expand(f, &ExpansionAnchor::Infinity, 1).local_coeff(1)
}

/// The residue maps implemented by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ResidueKind {
    /// Borel theory: coefficient of `u^-1`.
    BorelRes,
    /// K-theory, `-Res_{u=1}(u^-1 f du)`; vanishes on functions with poles only at
    /// roots of unity other than 1.
    Rho1,
    /// K-theory, `L_{+,0} - L_{-,0}`: difference of the constant terms at zero and infinity.
    Rho0Inf,
}

impl ResidueKind {
    pub const ALL: [ResidueKind; 3] = [
        ResidueKind::BorelRes,
        ResidueKind::Rho1,
        ResidueKind::Rho0Inf,
    ];

    /// Theory whose localized ring is this map's strict domain.
    pub fn theory(self) -> TheoryKind {
        match self {
            ResidueKind::BorelRes => TheoryKind::Borel,
            ResidueKind::Rho1 | ResidueKind::Rho0Inf => TheoryKind::KTheory,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ResidueKind::BorelRes => "borel",
            ResidueKind::Rho1 => "rho1",
            ResidueKind::Rho0Inf => "rho0inf",
        }
    }
}

impl fmt::Display for ResidueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ResidueKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "borel" | "borelres" => Ok(ResidueKind::BorelRes),
            "rho1" => Ok(ResidueKind::Rho1),
            "rho0inf" => Ok(ResidueKind::Rho0Inf),
            other => Err(Error::Format(format!(
                "unknown residue kind {other:?} (expected borel, rho1 or rho0inf)"
            ))),
        }
    }
}

/// Domain a residue map is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Domain {
    /// Only the localized coefficient ring of the map's theory.
    Strict,
    /// All of Q(u).
    #[default]
    Relaxed,
}

/// Applies a residue map. In strict mode `f` must lie in the localized ring of the map's theory.
pub fn residue_map(kind: ResidueKind, f: &RationalFunction, domain: Domain) -> Result<Scalar> {
    if domain == Domain::Strict && !localized_membership(f, kind.theory()) {
        return Err(Error::NotInLocalizedRing(
            f.to_string(),
            kind.theory().to_string(),
        ));
    }
    Ok(match kind {
        ResidueKind::BorelRes => residue_at(f, &Scalar::zero()),
        ResidueKind::Rho1 => {
            let shifted = f * &RationalFunction::monomial(Scalar::one(), -1);
            -residue_at(&shifted, &Scalar::one())
        }
        ResidueKind::Rho0Inf => {
            constant_term(f, SeriesSide::Plus) - constant_term(f, SeriesSide::Minus)
        }
    })
}
