//! JSON exchange formats.
//!
//! Rationals travel as `"p/q"` text (`"p"` for integers), Laurent polynomials as maps from
//! decimal exponent text to rational text. Output objects have sorted keys, so emitting the
//! same value twice gives identical bytes.
//!
//! Model documents:
//!
//! ```json
//! {"theory": "ktheory", "name": "cp1:k=2",
//!  "components": [{"id": "p0", "weights": [1], "restriction": {"0": "1"}, "side": "plus"},
//!                 {"id": "p1", "weights": [-1], "restriction": {"2": "1"}, "side": "minus"}]}
//! ```
//!
//! Each component is an isolated fixed point. `weights` are the nonzero weights of the
//! circle on its normal space, `restriction` is the class restricted to the point, and
//! `side` (optional) says which half of a split manifold it lies in. The local term of a
//! component is `restriction / euler`, where `euler` is `prod (1 - u^m)` in K-theory and
//! `prod (m u)` in Borel cohomology. With this convention `CP^1` carrying `O(k)` is the
//! pair `{weights [1], restriction 1}`, `{weights [-1], restriction u^k}`, whose
//! pushforward is `1 + u + ... + u^k`.
//!
//! Formal group law tables list one-sided entries `[k, l, laurent]`:
//!
//! ```json
//! {"order": 1, "entries": [[1, 0, {"0": "1"}], [0, 1, {"0": "1"}], [1, 1, {"0": "-1"}]]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{format_scalar, parse_scalar, LaurentPoly, Scalar, TheoryKind};
use crate::error::{Error, Result};
use crate::fgl::{AxiomReport, FormalGroupLaw};
use crate::localization::{FixedComponent, ManifoldModel, QrReport, Side};
use crate::series::TruncatedSeries;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    theory: TheoryKind,
    name: String,
    components: Vec<ComponentDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    id: String,
    weights: Vec<i64>,
    restriction: BTreeMap<String, String>,
    #[serde(default)]
    side: Option<SideDoc>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SideDoc {
    Plus,
    Minus,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LawDoc {
    order: usize,
    entries: Vec<(usize, usize, BTreeMap<String, String>)>,
}

pub fn scalar_json(x: &Scalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn laurent_to_map(p: &LaurentPoly) -> BTreeMap<String, String> {
    p.terms()
        .iter()
        .map(|(e, c)| (e.to_string(), format_scalar(c)))
        .collect()
}

pub fn laurent_from_map(map: &BTreeMap<String, String>) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for (e, c) in map {
        let exp = e
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Format(format!("exponent {e:?} is not an integer")))?;
        p.add_term(exp, parse_scalar(c)?);
    }
    Ok(p)
}

pub fn laurent_json(p: &LaurentPoly) -> Value {
    json!(laurent_to_map(p))
}

/// Parses and validates a model document.
pub fn read_model(text: &str) -> Result<ManifoldModel> {
    let doc: ModelDoc =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("model JSON: {e}")))?;
    let components = doc
        .components
        .into_iter()
        .map(|c| {
            Ok(FixedComponent::new(
                c.id,
                c.weights,
                laurent_from_map(&c.restriction)?,
                match c.side {
                    Some(SideDoc::Plus) => Side::Plus,
                    Some(SideDoc::Minus) => Side::Minus,
                    None => Side::Unassigned,
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    ManifoldModel::new(doc.theory, doc.name, components)
}

pub fn model_json(m: &ManifoldModel) -> Value {
    let doc = ModelDoc {
        theory: m.theory(),
        name: m.name().to_string(),
        components: m
            .components()
            .iter()
            .map(|c| ComponentDoc {
                id: c.id.clone(),
                weights: c.weights.clone(),
                restriction: laurent_to_map(&c.restriction),
                side: match c.side {
                    Side::Plus => Some(SideDoc::Plus),
                    Side::Minus => Some(SideDoc::Minus),
                    Side::Unassigned => None,
                },
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("model documents serialize")
}

/// Canonical model text (pretty, sorted keys, trailing newline).
pub fn write_model(m: &ManifoldModel) -> String {
    to_canonical_string(&model_json(m))
}

pub fn read_law(text: &str) -> Result<FormalGroupLaw> {
    let doc: LawDoc = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("formal group law JSON: {e}")))?;
    let mut law = FormalGroupLaw::new(doc.order);
    for (k, l, coeff) in &doc.entries {
        law.try_set(*k, *l, laurent_from_map(coeff)?)?;
    }
    Ok(law)
}

pub fn write_law(law: &FormalGroupLaw) -> String {
    let doc = LawDoc {
        order: law.order(),
        entries: law
            .entries()
            .map(|(&(k, l), c)| (k, l, laurent_to_map(c)))
            .collect(),
    };
    to_canonical_string(&serde_json::to_value(doc).expect("law documents serialize"))
}

pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn qr_report_json(r: &QrReport) -> Value {
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "side": c.side.to_string(),
                "w": c.w,
                "min": c.bounds.map(|b| b.0),
                "max": c.bounds.map(|b| b.1),
                "oriented": c.oriented,
                "ok": c.ok,
            })
        })
        .collect();
    json!({
        "conditions": conditions,
        "conditionsOk": r.all_conditions_hold(),
        "qM0": scalar_json(&r.q_m0),
        "qMred": scalar_json(&r.q_mred),
        "defectPlus": scalar_json(&r.defect_plus),
        "defectMinus": scalar_json(&r.defect_minus),
        "equal": r.equal,
    })
}

pub fn axiom_report_json(r: &AxiomReport) -> Value {
    json!({
        "axiom1Violations": r.axiom1_violations,
        "axiom2Value": scalar_json(&r.axiom2_value),
        "cKillList": r.c_killed,
        "passed": r.passed(),
    })
}

pub fn series_json(s: &TruncatedSeries) -> Value {
    let terms: BTreeMap<String, String> = s
        .terms()
        .into_iter()
        .map(|(e, c)| (e.to_string(), format_scalar(&c)))
        .collect();
    json!({
        "anchor": s.anchor().to_string(),
        "order": s.order(),
        "terms": terms,
    })
}
