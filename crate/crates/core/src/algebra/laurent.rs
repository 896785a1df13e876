use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{write_terms, UniPoly};
use super::scalar::Scalar;

/// Finite Laurent polynomial `sum c_e u^e` with integer exponents.
///
/// No zero coefficient is ever stored, so the empty map is the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Scalar::one(), 0)
    }

    pub fn monomial(c: Scalar, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Accumulates `c * u^e`, dropping the entry if it cancels.
    pub fn add_term(&mut self, e: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, x)| (e, x * c)))
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        if x.is_zero() && self.min_exponent().is_some_and(|e| e < 0) {
            return None;
        }
        Some(
            self.terms
                .iter()
                .fold(Scalar::zero(), |acc, (&e, c)| acc + c * pow_i(x, e)),
        )
    }

    /// Writes `self = u^shift * p(u)` with `p` an ordinary polynomial and `shift <= 0`
    /// exactly when negative exponents occur.
    pub fn to_shifted_poly(&self) -> (UniPoly, i64) {
        let shift = self.min_exponent().map_or(0, |e| e.min(0));
        let top = self.max_exponent().unwrap_or(0) - shift;
        let mut coeffs = vec![Scalar::zero(); (top + 1).max(0) as usize];
        for (&e, c) in &self.terms {
            coeffs[(e - shift) as usize] = c.clone();
        }
        (UniPoly::new(coeffs), shift)
    }

    pub fn from_poly(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    /// `Some(p)` when there are no negative exponents.
    pub fn as_poly(&self) -> Option<UniPoly> {
        match self.min_exponent() {
            Some(e) if e < 0 => None,
            _ => Some(self.to_shifted_poly().0),
        }
    }
}

fn pow_i(x: &Scalar, e: i64) -> Scalar {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(&e, c)| (e, c)), "u")
    }
}
