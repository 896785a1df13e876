//! Formal group laws with Laurent-polynomial coefficients, inversion of the Euler series
//! `F(e, y)` in the nilpotent variable `y`, and machine checks of the residue-map axioms.
//!
//! Series in `y` are plain coefficient vectors over Q(u), truncated at `y^(N+1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{q, LaurentPoly, RationalFunction, Scalar, TheoryKind};
use crate::error::{Error, Result};
use crate::series::{residue_map, Domain, ResidueKind};

/// Truncated `F(X, Y) = sum a_{k,l} X^k Y^l` with entries for `k, l <= order`.
///
/// Storage is not forced to be symmetric so that malformed tables can be represented and
/// rejected by [`FormalGroupLaw::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalGroupLaw {
    order: usize,
    coeffs: BTreeMap<(usize, usize), LaurentPoly>,
}

/// The two laws that come with a worked coefficient theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinLaw {
    /// `F(X, Y) = X + Y`, Borel cohomology, `e = -u`.
    Additive,
    /// `F(X, Y) = X + Y - XY`, K-theory, `e = 1 - u^-1`.
    Multiplicative,
}

impl FromStr for BuiltinLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "additive" => Ok(BuiltinLaw::Additive),
            "multiplicative" => Ok(BuiltinLaw::Multiplicative),
            other => Err(Error::Format(format!("unknown formal group law {other:?}"))),
        }
    }
}

impl fmt::Display for BuiltinLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinLaw::Additive => "additive",
            BuiltinLaw::Multiplicative => "multiplicative",
        })
    }
}

/// A built-in law together with its Euler element `e`.
pub fn fgl_builtin(law: BuiltinLaw) -> (FormalGroupLaw, RationalFunction) {
    let mut f = FormalGroupLaw::new(1);
    f.set(1, 0, LaurentPoly::one());
    f.set(0, 1, LaurentPoly::one());
    match law {
        BuiltinLaw::Additive => (f, RationalFunction::monomial(q(-1), 1)),
        BuiltinLaw::Multiplicative => {
            f.set(1, 1, LaurentPoly::monomial(q(-1), 0));
            let e =
                RationalFunction::from_laurent(&LaurentPoly::from_terms([(0, q(1)), (-1, q(-1))]));
            (f, e)
        }
    }
}

impl FormalGroupLaw {
    /// All-zero table of the given order.
    pub fn new(order: usize) -> Self {
        FormalGroupLaw {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Sets `a_{k,l}` (one side only). Indices beyond `order` are rejected.
    pub fn try_set(&mut self, k: usize, l: usize, value: LaurentPoly) -> Result<()> {
        if k > self.order || l > self.order {
            return Err(Error::InvalidLaw(format!(
                "entry ({k}, {l}) exceeds order {}",
                self.order
            )));
        }
        self.set(k, l, value);
        Ok(())
    }

    fn set(&mut self, k: usize, l: usize, value: LaurentPoly) {
        if value.is_zero() {
            self.coeffs.remove(&(k, l));
        } else {
            self.coeffs.insert((k, l), value);
        }
    }

    /// `a_{k,l}`; zero when not stored or beyond the order.
    pub fn coeff(&self, k: usize, l: usize) -> LaurentPoly {
        self.coeffs.get(&(k, l)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.coeffs.iter()
    }

    /// Unit and symmetry conditions: `a_{k,0} = a_{0,k} = delta_{1,k}` and `a_{k,l} = a_{l,k}`.
    pub fn validate(&self) -> bool {
        let unit_ok = (0..=self.order).all(|k| {
            let expected = if k == 1 {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            };
            self.coeff(k, 0) == expected && self.coeff(0, k) == expected
        });
        let symmetric = self
            .coeffs
            .iter()
            .all(|(&(k, l), a)| self.coeffs.get(&(l, k)) == Some(a));
        unit_ok && symmetric
    }

    /// Associativity `F(F(X,Y),Z) = F(X,F(Y,Z))` in total degree `<= degree`, capped at 6.
    pub fn is_associative(&self, degree: usize) -> bool {
        let degree = degree.min(6);
        let x = Tri::var(0, degree);
        let y = Tri::var(1, degree);
        let z = Tri::var(2, degree);
        let lhs = self.compose(&self.compose(&x, &y), &z);
        let rhs = self.compose(&x, &self.compose(&y, &z));
        lhs == rhs
    }

    fn compose(&self, a: &Tri, b: &Tri) -> Tri {
        let top = a.degree;
        let a_pows = a.powers(top.min(self.order));
        let b_pows = b.powers(top.min(self.order));
        let mut out = Tri::zero(top);
        for (&(k, l), c) in &self.coeffs {
            if k + l > top {
                continue;
            }
            out = out.add(&a_pows[k].mul(&b_pows[l]).scale(c));
        }
        out
    }
}

/// Truncated trivariate power series used only for the associativity check.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Tri {
    degree: usize,
    terms: BTreeMap<[usize; 3], LaurentPoly>,
}

impl Tri {
    fn zero(degree: usize) -> Self {
        Tri {
            degree,
            terms: BTreeMap::new(),
        }
    }

    fn one(degree: usize) -> Self {
        let mut t = Self::zero(degree);
        t.terms.insert([0, 0, 0], LaurentPoly::one());
        t
    }

    fn var(i: usize, degree: usize) -> Self {
        let mut idx = [0; 3];
        idx[i] = 1;
        let mut t = Self::zero(degree);
        if degree >= 1 {
            t.terms.insert(idx, LaurentPoly::one());
        }
        t
    }

    fn insert_add(&mut self, idx: [usize; 3], c: LaurentPoly) {
        if idx.iter().sum::<usize>() > self.degree {
            return;
        }
        let slot = self.terms.entry(idx).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    fn add(&self, other: &Tri) -> Tri {
        let mut out = self.clone();
        for (&idx, c) in &other.terms {
            out.insert_add(idx, c.clone());
        }
        out
    }

    fn mul(&self, other: &Tri) -> Tri {
        let mut out = Tri::zero(self.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.insert_add([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        out
    }

    fn scale(&self, c: &LaurentPoly) -> Tri {
        let mut out = Tri::zero(self.degree);
        for (&idx, x) in &self.terms {
            out.insert_add(idx, x * c);
        }
        out
    }

    fn powers(&self, n: usize) -> Vec<Tri> {
        let mut pows = vec![Tri::one(self.degree)];
        for i in 0..n {
            let next = pows[i].mul(self);
            pows.push(next);
        }
        pows
    }
}

/// `F(e, y) = sum_l b_l y^l`, truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerSeries {
    b: Vec<RationalFunction>,
}

impl EulerSeries {
    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.b
    }

    pub fn order(&self) -> usize {
        self.b.len() - 1
    }
}

/// `(F(e, y))^-1 = e^-1 + sum_k c_k y^k`, truncated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertedEulerSeries {
    e_inverse: RationalFunction,
    c: Vec<RationalFunction>,
}

impl InvertedEulerSeries {
    pub fn e_inverse(&self) -> &RationalFunction {
        &self.e_inverse
    }

    /// `c_1, ..., c_N`.
    pub fn c_coeffs(&self) -> &[RationalFunction] {
        &self.c
    }

    /// `c_k` for `k >= 1`.
    pub fn c(&self, k: usize) -> &RationalFunction {
        &self.c[k - 1]
    }

    /// All coefficients starting with `e^-1` at `y^0`.
    pub fn full(&self) -> Vec<RationalFunction> {
        std::iter::once(self.e_inverse.clone())
            .chain(self.c.iter().cloned())
            .collect()
    }
}

/// `b_l = sum_k a_{k,l} e^k` for `l = 0..=n`.
pub fn euler_series(law: &FormalGroupLaw, e: &RationalFunction, n: usize) -> EulerSeries {
    let mut e_pows = vec![RationalFunction::one()];
    for k in 1..=law.order() {
        let next = &e_pows[k - 1] * e;
        e_pows.push(next);
    }
    let b = (0..=n)
        .map(|l| {
            (0..=law.order())
                .map(|k| &RationalFunction::from_laurent(&law.coeff(k, l)) * &e_pows[k])
                .sum()
        })
        .collect();
    EulerSeries { b }
}

/// Multiplicative inverse of the Euler series modulo `y^(n+1)`.
pub fn invert_euler_series(s: &EulerSeries, n: usize) -> Result<InvertedEulerSeries> {
    let b0_inv = s.b[0]
        .recip()
        .map_err(|_| Error::NonInvertibleLeadingTerm)?;
    let mut d: Vec<RationalFunction> = vec![b0_inv.clone()];
    let zero = RationalFunction::zero();
    for m in 1..=n {
        let acc: RationalFunction = (1..=m)
            .map(|l| s.b.get(l).unwrap_or(&zero) * &d[m - l])
            .sum();
        d.push(&(-&acc) * &b0_inv);
    }
    let e_inverse = d.remove(0);
    Ok(InvertedEulerSeries { e_inverse, c: d })
}

/// Whether `(sum b_l y^l)(e^-1 + sum c_k y^k) = 1` modulo `y^(N+1)`, `N` the shorter order.
pub fn reconstruction_holds(s: &EulerSeries, inv: &InvertedEulerSeries) -> bool {
    let d = inv.full();
    let n = s.order().min(d.len() - 1);
    (0..=n).all(|m| {
        let prod: RationalFunction = (0..=m).map(|l| &s.b[l] * &d[m - l]).sum();
        if m == 0 {
            prod == RationalFunction::one()
        } else {
            prod.is_zero()
        }
    })
}

/// Outcome of checking a residue map against a law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// Unlocalized probes (monomials and the `b_l`) that the map failed to kill.
    pub axiom1_violations: Vec<String>,
    /// `rho(e^-1)`; must be `-1`.
    pub axiom2_value: Scalar,
    /// `rho(c_k) == 0` for `k = 1..=N`.
    pub c_killed: Vec<bool>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.axiom1_violations.is_empty()
            && self.axiom2_value == -Scalar::one()
            && self.c_killed.iter().all(|&b| b)
    }
}

/// Checks `rho o eps = 0` on unlocalized probes and `rho((E_-1)^-1) = -1` coefficientwise:
/// `rho(e^-1) = -1` and `rho(c_k) = 0` for `k = 1..=n`. Residues are taken in the strict
/// domain of `kind`.
pub fn residue_axiom_check(
    kind: ResidueKind,
    law: &FormalGroupLaw,
    e: &RationalFunction,
    n: usize,
) -> Result<AxiomReport> {
    let rho = |f: &RationalFunction| residue_map(kind, f, Domain::Strict);
    let series = euler_series(law, e, n);
    let inv = invert_euler_series(&series, n)?;

    let lowest = match kind.theory() {
        TheoryKind::Borel => 0,
        TheoryKind::KTheory => -(n as i64),
    };
    let mut probes: Vec<(String, RationalFunction)> = (lowest..=n as i64)
        .map(|j| {
            (
                format!("u^{j}"),
                RationalFunction::monomial(Scalar::one(), j),
            )
        })
        .collect();
    for (l, b) in series.coeffs().iter().enumerate() {
        if b.in_coefficient_ring(kind.theory()) {
            probes.push((format!("b_{l}"), b.clone()));
        }
    }
    let mut axiom1_violations = Vec::new();
    for (label, p) in &probes {
        if !rho(p)?.is_zero() {
            axiom1_violations.push(label.clone());
        }
    }

    let axiom2_value = rho(inv.e_inverse())?;
    let c_killed = inv
        .c_coeffs()
        .iter()
        .map(|c| rho(c).map(|v| v.is_zero()))
        .collect::<Result<Vec<_>>>()?;
    Ok(AxiomReport {
        axiom1_violations,
        axiom2_value,
        c_killed,
    })
}
