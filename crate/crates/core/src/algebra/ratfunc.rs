use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::poly::UniPoly;
use super::scalar::{format_scalar, Scalar};
use super::TheoryKind;
use crate::error::{Error, Result};

/// Element of Q(u) in canonical form: coprime numerator and denominator,
/// denominator monic. Zero is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Reduces `num/den` to canonical form.
    pub fn normalize(num: UniPoly, den: UniPoly) -> Result<Self> {
        let lead = den.leading().ok_or(Error::ZeroDenominator)?.clone();
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides numerator");
        let den = den.exact_div(&g).expect("gcd divides denominator");
        // g is monic, so the leading coefficient of den is unchanged by the division
        let inv = lead.recip();
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        RationalFunction {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    /// The function `u`.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (poly, shift) = p.to_shifted_poly();
        let den = UniPoly::monomial(Scalar::one(), (-shift) as usize);
        Self::normalize(poly, den).expect("monomial denominator")
    }

    /// `c * u^e` for any integer `e`.
    pub fn monomial(c: Scalar, e: i64) -> Self {
        Self::from_laurent(&LaurentPoly::monomial(c, e))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some` exactly when the denominator is a power of `u`.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let k = self.den.degree()?;
        if self.den != UniPoly::monomial(Scalar::one(), k) {
            return None;
        }
        Some(LaurentPoly::from_poly(&self.num).shift(-(k as i64)))
    }

    /// Membership in the unlocalized coefficient ring: Q[u] for Borel, Q[u, u^-1] for K-theory.
    pub fn in_coefficient_ring(&self, theory: TheoryKind) -> bool {
        match theory {
            TheoryKind::Borel => self.is_polynomial(),
            TheoryKind::KTheory => self.to_laurent().is_some(),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let k = u32::try_from(n.unsigned_abs())
            .map_err(|_| Error::Format(format!("exponent {n} out of range")))?;
        Ok(RationalFunction {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format_scalar(x)));
        }
        Ok(self.num.eval(x) / d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.to_laurent() {
            return write!(f, "{l}");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}
