//! Built-in fixed-point models with independently checkable pushforwards.
//!
//! K-theory fixtures use the linear action on `CP^n` with weights `j - i` at the `i`-th
//! coordinate point and the lift of `O(k)` restricting to `u^(k*i)` there. The closed
//! pushforward is then the complete homogeneous polynomial `h_k(1, u, ..., u^n)`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::algebra::{q, LaurentPoly, TheoryKind};
use crate::error::{Error, Result};
use crate::localization::{component_condition, FixedComponent, ManifoldModel, Side};

/// How to produce a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelRecipe {
    Cp1 { k: u32, theory: TheoryKind },
    Cpn { n: u32, k: u32 },
    Product(Box<ModelRecipe>, Box<ModelRecipe>),
    Custom(PathBuf),
}

/// `CP^1` with a degree-`k` class.
///
/// K-theory: restrictions `1` at the weight-1 point (plus side) and `u^k` at the weight -1
/// point (minus side). Borel: restrictions `1` and `1 - k u`, the equivariant Chern
/// character of `O(k)` truncated to degree one, which integrates to `k`.
pub fn build_cp1(k: u32, theory: TheoryKind) -> ManifoldModel {
    let second = match theory {
        TheoryKind::KTheory => LaurentPoly::monomial(q(1), k as i64),
        TheoryKind::Borel => LaurentPoly::from_terms([(0, q(1)), (1, q(-(k as i64)))]),
    };
    let name = match theory {
        TheoryKind::KTheory => format!("cp1:k={k}"),
        TheoryKind::Borel => format!("cp1:k={k},theory=borel"),
    };
    ManifoldModel::new(
        theory,
        name,
        vec![
            FixedComponent::new("p0", vec![1], LaurentPoly::one(), Side::Plus),
            FixedComponent::new("p1", vec![-1], second, Side::Minus),
        ],
    )
    .expect("fixture is well formed")
}

/// K-theory `CP^n` with the lift `u^(k*i)` of `O(k)`; sides assigned by [`assign_sides_by_degree`].
pub fn build_cpn(n: u32, k: u32) -> ManifoldModel {
    assert!(n >= 1, "CP^n needs n >= 1");
    let components = (0..=n as i64)
        .map(|i| {
            let weights = (0..=n as i64).filter(|&j| j != i).map(|j| j - i).collect();
            FixedComponent::new(
                format!("p{i}"),
                weights,
                LaurentPoly::monomial(q(1), k as i64 * i),
                Side::Unassigned,
            )
        })
        .collect();
    let m = ManifoldModel::new(TheoryKind::KTheory, format!("cpn:n={n},k={k}"), components)
        .expect("fixture is well formed");
    assign_sides_by_degree(&m)
}

/// Fixed points of a product are pairs: weights concatenate, restrictions multiply.
/// K-theory products get sides from [`assign_sides_by_degree`]; Borel products are unlabeled.
pub fn build_product(a: &ManifoldModel, b: &ManifoldModel) -> Result<ManifoldModel> {
    if a.theory() != b.theory() {
        return Err(Error::TheoryMismatch(
            a.theory().to_string(),
            b.theory().to_string(),
        ));
    }
    let mut components = Vec::with_capacity(a.components().len() * b.components().len());
    for x in a.components() {
        for y in b.components() {
            components.push(FixedComponent::new(
                format!("{}*{}", x.id, y.id),
                x.weights.iter().chain(&y.weights).copied().collect(),
                &x.restriction * &y.restriction,
                Side::Unassigned,
            ));
        }
    }
    let m = ManifoldModel::new(a.theory(), format!("{}*{}", a.name(), b.name()), components)?;
    Ok(match m.theory() {
        TheoryKind::KTheory => assign_sides_by_degree(&m),
        TheoryKind::Borel => m,
    })
}

/// Labels each point `Plus` when the plus-side degree condition holds there, else `Minus`.
pub fn assign_sides_by_degree(m: &ManifoldModel) -> ManifoldModel {
    let sides: Vec<Side> = m
        .components()
        .iter()
        .map(|c| {
            let probe = FixedComponent {
                side: Side::Plus,
                ..c.clone()
            };
            match component_condition(&probe) {
                Ok(cond) if cond.ok => Side::Plus,
                _ => Side::Minus,
            }
        })
        .collect();
    m.with_sides(&sides)
}

impl ModelRecipe {
    /// Produces the model. `Custom` recipes are read with [`crate::format::read_model`].
    pub fn build(&self) -> Result<ManifoldModel> {
        match self {
            ModelRecipe::Cp1 { k, theory } => Ok(build_cp1(*k, *theory)),
            ModelRecipe::Cpn { n, k } => Ok(build_cpn(*n, *k)),
            ModelRecipe::Product(a, b) => build_product(&a.build()?, &b.build()?),
            ModelRecipe::Custom(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
                crate::format::read_model(&text)
            }
        }
    }
}

/// Recipe text: `cp1:k=2`, `cp1:k=2,theory=borel`, `cpn:n=2,k=1`, `file:PATH`, and
/// products joined with `*` (left-associative), e.g. `cp1:k=1*cp1:k=3`.
impl FromStr for ModelRecipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(ModelRecipe::Custom(PathBuf::from(path)));
        }
        let mut parts = s.split('*');
        let first = parse_factor(parts.next().unwrap_or_default())?;
        parts.try_fold(first, |acc, part| {
            Ok(ModelRecipe::Product(
                Box::new(acc),
                Box::new(parse_factor(part)?),
            ))
        })
    }
}

fn parse_factor(s: &str) -> Result<ModelRecipe> {
    let bad = |msg: String| Error::Format(format!("recipe {s:?}: {msg}"));
    let (kind, params) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
    let mut k = None;
    let mut n = None;
    let mut theory = TheoryKind::KTheory;
    for pair in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {pair:?}")))?;
        let int = || {
            value
                .trim()
                .parse::<u32>()
                .map_err(|_| bad(format!("{key} must be a nonnegative integer")))
        };
        match key.trim() {
            "k" => k = Some(int()?),
            "n" => n = Some(int()?),
            "theory" => {
                theory = match value.trim() {
                    "borel" => TheoryKind::Borel,
                    "ktheory" => TheoryKind::KTheory,
                    other => return Err(bad(format!("unknown theory {other:?}"))),
                }
            }
            other => return Err(bad(format!("unknown parameter {other:?}"))),
        }
    }
    match kind {
        "cp1" => Ok(ModelRecipe::Cp1 {
            k: k.unwrap_or(0),
            theory,
        }),
        "cpn" => {
            let n = n.ok_or_else(|| bad("cpn needs n".into()))?;
            if n == 0 {
                return Err(bad("n must be at least 1".into()));
            }
            if theory != TheoryKind::KTheory {
                return Err(bad("cpn is only available in K-theory".into()));
            }
            Ok(ModelRecipe::Cpn {
                n,
                k: k.unwrap_or(0),
            })
        }
        other => Err(bad(format!("unknown model {other:?}"))),
    }
}

impl fmt::Display for ModelRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelRecipe::Cp1 {
                k,
                theory: TheoryKind::KTheory,
            } => write!(f, "cp1:k={k}"),
            ModelRecipe::Cp1 { k, theory } => write!(f, "cp1:k={k},theory={theory}"),
            ModelRecipe::Cpn { n, k } => write!(f, "cpn:n={n},k={k}"),
            ModelRecipe::Product(a, b) => write!(f, "{a}*{b}"),
            ModelRecipe::Custom(p) => write!(f, "file:{}", p.display()),
        }
    }
}
