//! Fixed-point data and the localization formulas built from it.
//!
//! Only isolated fixed points are modeled, so the pushforward from a fixed point is the
//! identity and every global quantity is a finite sum of local terms
//! `restriction / euler(normal bundle)` in Q(u).
//!
//! Euler class conventions: a weight-`m` line contributes `1 - u^m` in K-theory and `m*u`
//! in Borel cohomology. With these, the two-point model of `CP^1` with restrictions
//! `1` and `u^k` integrates to `1 + u + ... + u^k`.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{q, LaurentPoly, RationalFunction, Scalar, TheoryKind, UniPoly};
use crate::error::{Error, Result};
use crate::series::{
    constant_term, expand, residue_map, Domain, ExpansionAnchor, ResidueKind, SeriesSide,
    TruncatedSeries,
};

/// Which half of a split manifold a fixed point lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Side {
    Plus,
    Minus,
    #[default]
    Unassigned,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
            Side::Unassigned => "-",
        })
    }
}

/// An isolated fixed point: normal weights, restricted class and side label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    pub id: String,
    pub weights: Vec<i64>,
    pub restriction: LaurentPoly,
    pub side: Side,
}

impl FixedComponent {
    pub fn new(
        id: impl Into<String>,
        weights: Vec<i64>,
        restriction: LaurentPoly,
        side: Side,
    ) -> Self {
        FixedComponent {
            id: id.into(),
            weights,
            restriction,
            side,
        }
    }
}

/// Fixed-point data of an S^1-manifold in one coefficient theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldModel {
    theory: TheoryKind,
    name: String,
    components: Vec<FixedComponent>,
}

impl ManifoldModel {
    /// Validates ids, weights and (for Borel) restriction exponents.
    pub fn new(
        theory: TheoryKind,
        name: impl Into<String>,
        components: Vec<FixedComponent>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &components {
            if !seen.insert(c.id.as_str()) {
                return Err(Error::InvalidModel(format!(
                    "duplicate component id {:?}",
                    c.id
                )));
            }
            if c.weights.contains(&0) {
                return Err(Error::ZeroWeight);
            }
            if theory == TheoryKind::Borel && c.restriction.min_exponent().is_some_and(|e| e < 0) {
                return Err(Error::InvalidModel(format!(
                    "Borel restriction at {:?} has a negative exponent",
                    c.id
                )));
            }
        }
        Ok(ManifoldModel {
            theory,
            name: name.into(),
            components,
        })
    }

    pub fn theory(&self) -> TheoryKind {
        self.theory
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    /// Same data with new side labels, one per component in order.
    pub fn with_sides(&self, sides: &[Side]) -> Self {
        let mut out = self.clone();
        for (c, &s) in out.components.iter_mut().zip(sides) {
            c.side = s;
        }
        out
    }

    fn require_theory(&self, expected: TheoryKind) -> Result<()> {
        if self.theory != expected {
            return Err(Error::WrongTheory {
                expected: expected.to_string(),
                found: self.theory.to_string(),
            });
        }
        Ok(())
    }

    fn terms(&self) -> Result<Vec<(&FixedComponent, RationalFunction)>> {
        self.components
            .iter()
            .map(|c| Ok((c, fixed_term(c, self.theory)?)))
            .collect()
    }
}

/// Equivariant Euler class of a sum of weight lines.
pub fn euler_class(theory: TheoryKind, weights: &[i64]) -> Result<RationalFunction> {
    if weights.contains(&0) {
        return Err(Error::ZeroWeight);
    }
    Ok(weights.iter().fold(RationalFunction::one(), |acc, &m| {
        let factor = match theory {
            TheoryKind::KTheory => {
                &RationalFunction::one() - &RationalFunction::monomial(Scalar::one(), m)
            }
            TheoryKind::Borel => RationalFunction::monomial(q(m), 1),
        };
        &acc * &factor
    }))
}

/// Local contribution `restriction / euler(weights)`.
pub fn fixed_term(c: &FixedComponent, theory: TheoryKind) -> Result<RationalFunction> {
    let e = euler_class(theory, &c.weights)?;
    RationalFunction::from_laurent(&c.restriction).checked_div(&e)
}

/// Pushforward to a point of a closed manifold, as an element of the unlocalized ring.
///
/// Fails with `NotIntegral` when the fixed-point sum keeps a denominator, which means no
/// closed manifold carries this data.
pub fn pushforward_closed(m: &ManifoldModel) -> Result<LaurentPoly> {
    if m.components.is_empty() {
        return Err(Error::InvalidModel("model has no fixed points".into()));
    }
    let total: RationalFunction = m.terms()?.into_iter().map(|(_, t)| t).sum();
    if !total.in_coefficient_ring(m.theory) {
        return Err(Error::NotIntegral(total.to_string()));
    }
    Ok(total
        .to_laurent()
        .expect("coefficient ring elements are Laurent polynomials"))
}

fn residue_sum<'a>(
    mut terms: impl Iterator<Item = &'a RationalFunction>,
    kind: ResidueKind,
) -> Result<Scalar> {
    terms.try_fold(Scalar::zero(), |acc, t| {
        Ok(acc + residue_map(kind, t, Domain::Strict)?)
    })
}

/// Boundary localization map of a manifold whose fixed points all lie on the plus side:
/// the sum of the residues of the local terms.
pub fn kappa(m: &ManifoldModel, kind: ResidueKind) -> Result<Scalar> {
    m.require_theory(kind.theory())?;
    if let Some(c) = m.components.iter().find(|c| c.side != Side::Plus) {
        return Err(Error::SideMismatch(c.id.clone()));
    }
    kappa_plus_half(m, kind)
}

/// The boundary map for the plus half of a split model: residues summed over `Plus` points only.
pub fn kappa_plus_half(m: &ManifoldModel, kind: ResidueKind) -> Result<Scalar> {
    m.require_theory(kind.theory())?;
    let terms = m.terms()?;
    residue_sum(
        terms
            .iter()
            .filter(|(c, _)| c.side == Side::Plus)
            .map(|(_, t)| t),
        kind,
    )
}

/// Multiplicity of the trivial representation, computed as `sum_F L_{+,0}(term_F)`.
pub fn multiplicity_zero(m: &ManifoldModel) -> Result<Scalar> {
    m.require_theory(TheoryKind::KTheory)?;
    Ok(m.terms()?
        .iter()
        .map(|(_, t)| constant_term(t, SeriesSide::Plus))
        .fold(Scalar::zero(), |acc, x| acc + x))
}

/// Sum of absolute values of the normal weights.
pub fn w_of(c: &FixedComponent) -> u64 {
    c.weights.iter().map(|m| m.unsigned_abs()).sum()
}

/// Lowest and highest exponent of the restriction.
pub fn degree_bounds(c: &FixedComponent) -> Result<(i64, i64)> {
    match (c.restriction.min_exponent(), c.restriction.max_exponent()) {
        (Some(lo), Some(hi)) => Ok((lo, hi)),
        _ => Err(Error::ZeroRestriction(c.id.clone())),
    }
}

/// Degree condition at one fixed point of a split model.
///
/// The bound is evaluated in the orientation the side prescribes: on the plus side every
/// weight is declared positive, on the minus side negative. Flipping a weight-`m` line
/// multiplies the restriction by `-u^|m|` (plus side) or `-u^-|m|` (minus side), so
/// `oriented` is `Max + sum_{m<0} |m|` on the plus side and `Min - sum_{m>0} m` on the
/// minus side. When the weight signs already match the side, `oriented` equals the raw
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCondition {
    pub id: String,
    pub side: Side,
    pub w: u64,
    /// `(Min, Max)`; `None` for a zero restriction, where the condition holds vacuously.
    pub bounds: Option<(i64, i64)>,
    /// Oriented Max (plus side) or Min (minus side).
    pub oriented: Option<i64>,
    pub ok: bool,
}

/// Comparison of reduction-then-quantization with quantization-then-reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrReport {
    pub conditions: Vec<ComponentCondition>,
    /// `Q(M)_0 = sum_F L_{+,0}(term_F)`.
    pub q_m0: Scalar,
    /// `Q(M_red) = sum_{F plus} (L_{+,0} - L_{-,0})(term_F)`.
    pub q_mred: Scalar,
    /// `-sum_{F plus} L_{-,0}(term_F)`.
    pub defect_plus: Scalar,
    /// `-sum_{F minus} L_{+,0}(term_F)`.
    pub defect_minus: Scalar,
    pub equal: bool,
}

impl QrReport {
    pub fn all_conditions_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.ok)
    }
}

/// Evaluates the degree condition of one component; `side` must be assigned.
pub fn component_condition(c: &FixedComponent) -> Result<ComponentCondition> {
    let w = w_of(c);
    let bounds = degree_bounds(c).ok();
    let positive: i64 = c.weights.iter().filter(|&&m| m > 0).sum();
    let negative: i64 = c.weights.iter().filter(|&&m| m < 0).map(|m| -m).sum();
    let oriented = match c.side {
        Side::Plus => bounds.map(|(_, hi)| hi + negative),
        Side::Minus => bounds.map(|(lo, _)| lo - positive),
        Side::Unassigned => return Err(Error::UnassignedSide(c.id.clone())),
    };
    let ok = match (c.side, oriented) {
        (_, None) => true,
        (Side::Plus, Some(hi)) => hi < w as i64,
        (_, Some(lo)) => lo > -(w as i64),
    };
    Ok(ComponentCondition {
        id: c.id.clone(),
        side: c.side,
        w,
        bounds,
        oriented,
        ok,
    })
}

/// Computes both sides of the quantization/reduction comparison and the two defect sums.
pub fn qr_check(m: &ManifoldModel) -> Result<QrReport> {
    m.require_theory(TheoryKind::KTheory)?;
    let conditions = m
        .components
        .iter()
        .map(component_condition)
        .collect::<Result<Vec<_>>>()?;

    let mut q_m0 = Scalar::zero();
    let mut q_mred = Scalar::zero();
    let mut defect_plus = Scalar::zero();
    let mut defect_minus = Scalar::zero();
    for (c, term) in m.terms()? {
        let plus = constant_term(&term, SeriesSide::Plus);
        q_m0 += &plus;
        match c.side {
            Side::Plus => {
                let minus = constant_term(&term, SeriesSide::Minus);
                q_mred += &plus - &minus;
                defect_plus -= minus;
            }
            Side::Minus => defect_minus -= plus,
            Side::Unassigned => unreachable!("rejected by component_condition"),
        }
    }
    let equal = q_m0 == q_mred;
    Ok(QrReport {
        conditions,
        q_m0,
        q_mred,
        defect_plus,
        defect_minus,
        equal,
    })
}

/// Whether the residues of the local terms sum to zero, as they must for a closed manifold.
pub fn global_residue_vanishing(m: &ManifoldModel, kind: ResidueKind) -> Result<bool> {
    m.require_theory(kind.theory())?;
    pushforward_closed(m)?;
    let terms = m.terms()?;
    Ok(residue_sum(terms.iter().map(|(_, t)| t), kind)?.is_zero())
}

/// Expansion of `1/P` at infinity through `u^-n`, checked to start no higher than
/// `u^-deg(P)`. `P` needs nonzero constant and leading coefficients.
pub fn neg_expansion_bound(p: &UniPoly, n: i64) -> Result<TruncatedSeries> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::BadPolynomial("zero polynomial".into()))?;
    if p.coeff(0).is_zero() {
        return Err(Error::BadPolynomial(format!(
            "{p} has zero constant coefficient"
        )));
    }
    let inv = RationalFunction::from_poly(UniPoly::one())
        .checked_div(&RationalFunction::from_poly(p.clone()))?;
    let series = expand(&inv, &ExpansionAnchor::Infinity, n);
    if series.valuation().is_some_and(|v| v < deg as i64) {
        return Err(Error::BadPolynomial(format!(
            "expansion of 1/({p}) has exponents above -{deg}"
        )));
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;

    fn point(id: &str, weights: &[i64], restriction: LaurentPoly, side: Side) -> FixedComponent {
        FixedComponent::new(id, weights.to_vec(), restriction, side)
    }

    fn u_pow(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(q(1), k)
    }

    fn cp1(k: i64) -> ManifoldModel {
        ManifoldModel::new(
            TheoryKind::KTheory,
            format!("cp1-k{k}"),
            vec![
                point("p0", &[1], u_pow(0), Side::Plus),
                point("p1", &[-1], u_pow(k), Side::Minus),
            ],
        )
        .unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::normalize(UniPoly::from_ints(num), UniPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn euler_class_examples() {
        assert_eq!(
            euler_class(TheoryKind::KTheory, &[1]).unwrap(),
            rf(&[1, -1], &[1])
        );
        assert_eq!(
            euler_class(TheoryKind::Borel, &[2, 3]).unwrap(),
            rf(&[0, 0, 6], &[1])
        );
        assert_eq!(
            euler_class(TheoryKind::Borel, &[]).unwrap(),
            RationalFunction::one()
        );
        assert_eq!(
            euler_class(TheoryKind::KTheory, &[2, 0]),
            Err(Error::ZeroWeight)
        );
        // 1 - u^-1 = (u - 1)/u
        assert_eq!(
            euler_class(TheoryKind::KTheory, &[-1]).unwrap(),
            rf(&[-1, 1], &[0, 1])
        );
    }

    #[test]
    fn fixed_term_examples() {
        let c = point("a", &[1], LaurentPoly::one(), Side::Unassigned);
        assert_eq!(
            fixed_term(&c, TheoryKind::KTheory).unwrap(),
            rf(&[1], &[1, -1])
        );
        let a = LaurentPoly::from_terms([(0, q(2)), (1, q(5))]);
        let b = point("b", &[1], a, Side::Unassigned);
        assert_eq!(
            fixed_term(&b, TheoryKind::Borel).unwrap(),
            rf(&[2, 5], &[0, 1])
        );
        let z = point("z", &[1, 2], LaurentPoly::zero(), Side::Unassigned);
        assert!(fixed_term(&z, TheoryKind::KTheory).unwrap().is_zero());
    }

    #[test]
    fn pushforward_examples() {
        let geometric = |k: i64| LaurentPoly::from_terms((0..=k).map(|j| (j, q(1))));
        assert_eq!(pushforward_closed(&cp1(0)).unwrap(), LaurentPoly::one());
        assert_eq!(pushforward_closed(&cp1(3)).unwrap(), geometric(3));

        let single = ManifoldModel::new(
            TheoryKind::KTheory,
            "single",
            vec![point("p", &[1], LaurentPoly::one(), Side::Unassigned)],
        )
        .unwrap();
        assert!(matches!(
            pushforward_closed(&single),
            Err(Error::NotIntegral(_))
        ));

        let borel = ManifoldModel::new(
            TheoryKind::Borel,
            "two-point",
            vec![
                point("a", &[1], u_pow(1), Side::Unassigned),
                point("b", &[-1], u_pow(1), Side::Unassigned),
            ],
        )
        .unwrap();
        assert!(pushforward_closed(&borel).unwrap().is_zero());
        assert!(global_residue_vanishing(&borel, ResidueKind::BorelRes).unwrap());
    }

    #[test]
    fn model_validation() {
        let dup = ManifoldModel::new(
            TheoryKind::KTheory,
            "dup",
            vec![
                point("p", &[1], LaurentPoly::one(), Side::Plus),
                point("p", &[-1], LaurentPoly::one(), Side::Minus),
            ],
        );
        assert!(matches!(dup, Err(Error::InvalidModel(_))));
        let zero = ManifoldModel::new(
            TheoryKind::KTheory,
            "zero",
            vec![point("p", &[0], LaurentPoly::one(), Side::Plus)],
        );
        assert_eq!(zero, Err(Error::ZeroWeight));
        let neg = ManifoldModel::new(
            TheoryKind::Borel,
            "neg",
            vec![point("p", &[1], u_pow(-1), Side::Plus)],
        );
        assert!(matches!(neg, Err(Error::InvalidModel(_))));
        let empty = ManifoldModel::new(TheoryKind::KTheory, "empty", vec![]).unwrap();
        assert!(pushforward_closed(&empty).is_err());
    }

    #[test]
    fn kappa_examples() {
        let a = LaurentPoly::from_terms([(0, q(4)), (1, q(-2)), (3, q(7))]);
        let hemi = ManifoldModel::new(
            TheoryKind::Borel,
            "hemisphere",
            vec![point("n", &[1], a, Side::Plus)],
        )
        .unwrap();
        assert_eq!(kappa(&hemi, ResidueKind::BorelRes).unwrap(), q(4));

        let k = ManifoldModel::new(
            TheoryKind::KTheory,
            "k-point",
            vec![point("n", &[1], LaurentPoly::one(), Side::Plus)],
        )
        .unwrap();
        assert_eq!(kappa(&k, ResidueKind::Rho0Inf).unwrap(), q(1));
        assert_eq!(kappa(&k, ResidueKind::Rho1).unwrap(), q(1));

        let empty = ManifoldModel::new(TheoryKind::KTheory, "empty", vec![]).unwrap();
        assert_eq!(kappa(&empty, ResidueKind::Rho1).unwrap(), q(0));

        assert!(matches!(
            kappa(&cp1(2), ResidueKind::Rho1),
            Err(Error::SideMismatch(_))
        ));
        assert!(matches!(
            kappa(&k, ResidueKind::BorelRes),
            Err(Error::WrongTheory { .. })
        ));
        assert_eq!(
            kappa_plus_half(&cp1(2), ResidueKind::Rho0Inf).unwrap(),
            q(1)
        );
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicity_zero(&cp1(2)).unwrap(), q(1));
        assert_eq!(multiplicity_zero(&cp1(0)).unwrap(), q(1));
        let zeros = ManifoldModel::new(
            TheoryKind::KTheory,
            "zeros",
            vec![
                point("a", &[1], LaurentPoly::zero(), Side::Plus),
                point("b", &[-1], LaurentPoly::zero(), Side::Minus),
            ],
        )
        .unwrap();
        assert_eq!(multiplicity_zero(&zeros).unwrap(), q(0));
        let report = qr_check(&zeros).unwrap();
        assert!(report.equal && report.q_m0.is_zero() && report.q_mred.is_zero());
        assert!(report.all_conditions_hold());
    }

    #[test]
    fn weights_and_bounds() {
        let c = point(
            "c",
            &[1, -2, 3],
            LaurentPoly::from_terms([(-2, q(3)), (5, q(1))]),
            Side::Plus,
        );
        assert_eq!(w_of(&c), 6);
        assert_eq!(degree_bounds(&c).unwrap(), (-2, 5));
        assert_eq!(w_of(&point("e", &[], LaurentPoly::one(), Side::Plus)), 0);
        assert_eq!(w_of(&point("m", &[-1], LaurentPoly::one(), Side::Plus)), 1);
        assert_eq!(
            degree_bounds(&point("h", &[1], u_pow(4), Side::Plus)).unwrap(),
            (4, 4)
        );
        let four = point("f", &[1], LaurentPoly::monomial(q(4), 0), Side::Plus);
        assert_eq!(degree_bounds(&four).unwrap(), (0, 0));
        let zero = point("z", &[1], LaurentPoly::zero(), Side::Plus);
        assert!(matches!(
            degree_bounds(&zero),
            Err(Error::ZeroRestriction(_))
        ));
    }

    #[test]
    fn qr_on_cp1_k2() {
        let r = qr_check(&cp1(2)).unwrap();
        assert!(r.all_conditions_hold());
        assert_eq!((r.q_m0.clone(), r.q_mred.clone()), (q(1), q(1)));
        assert!(r.equal);
        assert_eq!(r.conditions[0].bounds, Some((0, 0)));
        assert_eq!(r.conditions[1].w, 1);
    }

    #[test]
    fn qr_condition_violation_reports_defect() {
        let swapped = ManifoldModel::new(
            TheoryKind::KTheory,
            "swapped",
            vec![
                point("p0", &[1], u_pow(2), Side::Plus),
                point("p1", &[-1], u_pow(0), Side::Minus),
            ],
        )
        .unwrap();
        let r = qr_check(&swapped).unwrap();
        assert!(!r.conditions[0].ok);
        assert_eq!(r.defect_plus, q(1));
        assert_eq!(r.defect_minus, q(0));
        assert_eq!(&r.q_mred - &r.q_m0, &r.defect_plus + &r.defect_minus);
        assert!(!r.equal);
    }

    #[test]
    fn oriented_condition_flips_negative_weights() {
        // plus side with a negative weight: 1/(1-u^-1) has L_- constant term 1
        let c = point("x", &[-1], LaurentPoly::one(), Side::Plus);
        let cond = component_condition(&c).unwrap();
        assert_eq!(cond.oriented, Some(1));
        assert!(!cond.ok);
        let unassigned = point("y", &[1], LaurentPoly::one(), Side::Unassigned);
        assert!(matches!(
            component_condition(&unassigned),
            Err(Error::UnassignedSide(_))
        ));
        assert!(matches!(
            qr_check(&cp1(1).with_sides(&[Side::Plus, Side::Unassigned])),
            Err(Error::UnassignedSide(_))
        ));
    }

    #[test]
    fn residue_vanishing_on_cp1() {
        for k in 0..4 {
            for kind in [ResidueKind::Rho0Inf, ResidueKind::Rho1] {
                assert!(global_residue_vanishing(&cp1(k), kind).unwrap());
            }
        }
    }

    #[test]
    fn negative_expansion_examples() {
        let s = neg_expansion_bound(&UniPoly::from_ints(&[1, -1]), 4).unwrap();
        assert_eq!(s.terms(), (1..=4).map(|j| (-j, q(-1))).collect::<Vec<_>>());
        let s = neg_expansion_bound(&UniPoly::from_ints(&[1, 0, 1]), 6).unwrap();
        assert_eq!(s.terms(), vec![(-2, q(1)), (-4, q(-1)), (-6, q(1))]);
        assert!(matches!(
            neg_expansion_bound(&UniPoly::from_ints(&[0, 1]), 3),
            Err(Error::BadPolynomial(_))
        ));
        let s = neg_expansion_bound(&UniPoly::from_ints(&[2]), 2).unwrap();
        assert_eq!(s.terms(), vec![(0, qf(1, 2))]);
    }
}
