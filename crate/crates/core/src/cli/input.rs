//! Input documents describing a perturbation.
//!
//! Two equivalent formats are accepted. The JSON form:
//!
//! ```json
//! {"states":["x","y"],"arcs":[{"from":"x","to":"y","exp":"3/2","coeff":"1"}]}
//! ```
//!
//! and a terse line form, one arc per line, with optional `states` lines
//! and `#` comments:
//!
//! ```text
//! states x y
//! x y 3/2
//! ```
//!
//! Exponents and coefficients are rationals, written as strings (`"3/2"`)
//! or plain integers. A missing coefficient means 1. If no `states` line
//! appears in the terse form, the states are inferred from the arcs.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Deserialize;
use thiserror::Error;

use crate::graph::PerturbationGraph;
use crate::oracle::MonomialSpec;
use crate::semiring::{parse_rational, MonomialClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("invalid document: {}", violations.join("; "))]
    Validation { violations: Vec<String> },
}

/// One weighted arc: `weight = coeff * eps^exponent`. The exponent carries
/// all the stability information; the coefficient only feeds the numerical
/// oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSpec {
    pub from: String,
    pub to: String,
    pub exponent: BigRational,
    pub coeff: BigRational,
}

/// A validated perturbation description: unique state names, and arcs with
/// distinct endpoint pairs, no self-loops, and non-negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub states: Vec<String>,
    pub arcs: Vec<ArcSpec>,
}

impl InputDocument {
    /// The perturbation graph over singleton vertices; absent arcs get
    /// weight zero.
    pub fn to_graph(&self) -> PerturbationGraph<MonomialClass> {
        let names: Vec<&str> = self.states.iter().map(String::as_str).collect();
        let arcs: Vec<(&str, &str, MonomialClass)> = self
            .arcs
            .iter()
            .map(|a| {
                (
                    a.from.as_str(),
                    a.to.as_str(),
                    MonomialClass::from_exponent(a.exponent.clone()),
                )
            })
            .collect();
        PerturbationGraph::from_singletons(&names, &arcs)
    }

    /// The arc map with coefficients, as consumed by the numerical oracle.
    pub fn numeric_spec(&self) -> BTreeMap<(String, String), MonomialSpec> {
        self.arcs
            .iter()
            .map(|a| {
                (
                    (a.from.clone(), a.to.clone()),
                    MonomialSpec::new(a.coeff.clone(), a.exponent.clone()),
                )
            })
            .collect()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalField {
    Integer(i64),
    Text(String),
}

impl RationalField {
    fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            RationalField::Integer(n) => Ok(BigRational::from_integer((*n).into())),
            RationalField::Text(s) => parse_rational(s),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    states: Vec<String>,
    #[serde(default)]
    arcs: Vec<RawArc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArc {
    from: String,
    to: String,
    exp: RationalField,
    #[serde(default)]
    coeff: Option<RationalField>,
}

/// Parses and validates a document in either format. The format is decided
/// by the first non-blank byte: `{` means JSON, anything else the terse
/// line form.
pub fn parse(bytes: &[u8]) -> Result<InputDocument, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError::NotUtf8)?;
    let (states, arcs) = if text.trim_start().starts_with('{') {
        parse_json(text)?
    } else {
        parse_terse(text)?
    };
    validate(states, arcs)
}

fn parse_json(text: &str) -> Result<(Vec<String>, Vec<ArcSpec>), ParseError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut arcs = Vec::with_capacity(raw.arcs.len());
    for (i, arc) in raw.arcs.iter().enumerate() {
        let exponent = arc.exp.to_rational().map_err(|message| ParseError::Field {
            field: format!("arcs[{i}].exp"),
            message,
        })?;
        let coeff = match &arc.coeff {
            Some(c) => c.to_rational().map_err(|message| ParseError::Field {
                field: format!("arcs[{i}].coeff"),
                message,
            })?,
            None => BigRational::one(),
        };
        arcs.push(ArcSpec {
            from: arc.from.clone(),
            to: arc.to.clone(),
            exponent,
            coeff,
        });
    }
    Ok((raw.states, arcs))
}

fn parse_terse(text: &str) -> Result<(Vec<String>, Vec<ArcSpec>), ParseError> {
    let mut declared: Vec<String> = Vec::new();
    let mut saw_states_line = false;
    let mut arcs: Vec<ArcSpec> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] == "states" {
            if tokens.len() == 1 {
                return Err(ParseError::Syntax {
                    line,
                    message: "a `states` line needs at least one name".into(),
                });
            }
            saw_states_line = true;
            declared.extend(tokens[1..].iter().map(|s| s.to_string()));
            continue;
        }
        if tokens.len() < 3 || tokens.len() > 4 {
            return Err(ParseError::Syntax {
                line,
                message: format!(
                    "expected `from to exponent [coeff]`, found {} token(s)",
                    tokens.len()
                ),
            });
        }
        let exponent = parse_rational(tokens[2])
            .map_err(|message| ParseError::Syntax { line, message })?;
        let coeff = match tokens.get(3) {
            Some(t) => parse_rational(t).map_err(|message| ParseError::Syntax { line, message })?,
            None => BigRational::one(),
        };
        arcs.push(ArcSpec {
            from: tokens[0].to_string(),
            to: tokens[1].to_string(),
            exponent,
            coeff,
        });
    }

    if !saw_states_line {
        // Convenience: infer the states from the arcs, in first-appearance
        // order.
        let mut seen = BTreeSet::new();
        for arc in &arcs {
            for name in [&arc.from, &arc.to] {
                if seen.insert(name.clone()) {
                    declared.push(name.clone());
                }
            }
        }
    }
    Ok((declared, arcs))
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == ',' || c == '"' || c == '\\')
}

fn validate(states: Vec<String>, arcs: Vec<ArcSpec>) -> Result<InputDocument, ParseError> {
    let mut violations: Vec<String> = Vec::new();

    if states.is_empty() {
        violations.push("no states declared".into());
    }
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for name in &states {
        if !valid_name(name) {
            violations.push(format!(
                "state name {name:?} is empty or contains whitespace, ',', '\"' or '\\'"
            ));
        }
        if !seen.insert(name) {
            violations.push(format!("state {name:?} is declared more than once"));
        }
    }

    let mut pairs: BTreeSet<(&str, &str)> = BTreeSet::new();
    for arc in &arcs {
        let label = format!("arc {} -> {}", arc.from, arc.to);
        if arc.from == arc.to {
            violations.push(format!("{label}: self-loops are not representable; the diagonal is implied"));
        }
        for end in [&arc.from, &arc.to] {
            if !seen.contains(end.as_str()) {
                violations.push(format!("{label}: state {end:?} is not declared"));
            }
        }
        if !pairs.insert((&arc.from, &arc.to)) {
            violations.push(format!("{label}: duplicate arc"));
        }
        if arc.exponent.is_negative() {
            violations.push(format!(
                "{label}: exponent {} is negative; transition weights cannot exceed one",
                arc.exponent
            ));
        }
        if !arc.coeff.is_positive() {
            violations.push(format!("{label}: coefficient {} is not positive", arc.coeff));
        }
    }

    if violations.is_empty() {
        Ok(InputDocument { states, arcs })
    } else {
        Err(ParseError::Validation { violations })
    }
}
