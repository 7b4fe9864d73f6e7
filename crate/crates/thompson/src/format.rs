//! JSON forms of elements and invariants. Every number is a `"p/q"` string.
//!
//! * element: `{"breakpoints": [["0/1","0/1"], ["1/2","1/4"], …]}`
//! * Σ: `{"signs": [-1, 0, 1], "slopes": ["1/2"], "classes": [{"period": "2/1", "points": [["1/1","1/4"]]}]}`
//! * Δ: `{"chains": [{"entries": ["4/3"], "lambda_exponents": ["-1/1"], "mu_exponents": ["1/1"]}]}`
//!   where `λ = 2^e` for each listed exponent `e`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thompson_core::exact::{fraction_string, parse_fraction};
use thompson_core::word::parse_word;
use thompson_core::{
    check_in_f, word_to_element, CentralizerStructure, DeltaInvariant, Error, FElement, PlMap, Rational,
    SigmaInvariant,
};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ElementJson {
    pub breakpoints: Vec<[String; 2]>,
}

pub fn map_to_json(f: &PlMap) -> ElementJson {
    ElementJson {
        breakpoints: f
            .breakpoints()
            .iter()
            .map(|(x, y)| [fraction_string(x), fraction_string(y)])
            .collect(),
    }
}

pub fn element_value(f: &FElement) -> Value {
    serde_json::to_value(map_to_json(f.map())).expect("serializable")
}

fn fractions(qs: impl IntoIterator<Item = impl std::borrow::Borrow<Rational>>) -> Vec<String> {
    qs.into_iter().map(|q| fraction_string(q.borrow())).collect()
}

/// Parses the JSON breakpoint form into a map of PL⁺(0,1).
pub fn parse_map_json(text: &str) -> Result<PlMap, Error> {
    let raw: ElementJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed element JSON: {e}")))?;
    let points = raw
        .breakpoints
        .iter()
        .map(|[x, y]| Ok((parse_fraction(x)?, parse_fraction(y)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    PlMap::normalize(points)
}

/// Accepts the JSON breakpoint form or `word:x0 x1^-1 …`, then certifies
/// membership in F.
pub fn parse_element(text: &str) -> Result<FElement, Error> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("word:") {
        return Ok(word_to_element(&parse_word(rest)?));
    }
    let map = parse_map_json(text)?;
    check_in_f(&map).map_err(|d| Error::Domain(format!("not an element of F: {d}")))
}

pub fn sigma_value(s: &SigmaInvariant) -> Value {
    let classes: Vec<Value> = s
        .classes
        .iter()
        .map(|c| {
            json!({
                "period": fraction_string(c.period()),
                "points": c.points().iter().map(|(p, z)| [fraction_string(p), fraction_string(z)]).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "signs": s.sign_seq.iter().map(|x| x.as_i8()).collect::<Vec<_>>(),
        "slopes": fractions(&s.slopes),
        "classes": classes,
    })
}

pub fn delta_value(d: &DeltaInvariant) -> Value {
    let chains: Vec<Value> = d
        .chains
        .iter()
        .map(|c| {
            json!({
                "entries": fractions(&c.entries),
                "lambda_exponents": fractions(c.lambdas.iter().map(|l| l.exponent())),
                "mu_exponents": fractions(c.mus.iter().map(|m| m.exponent())),
            })
        })
        .collect();
    json!({ "chains": chains })
}

pub fn centralizer_value(c: &CentralizerStructure) -> Value {
    json!({
        "fixed_intervals": c.fixed_intervals,
        "chains": c.chains,
        "generators": c.generators.iter().map(element_value).collect::<Vec<_>>(),
    })
}
