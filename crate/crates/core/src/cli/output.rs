//! Report rendering: human-readable text, a stable JSON schema, and DOT
//! exports of the per-level graphs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{PerturbationGraph, StateSet};
use crate::hub::{HubTrace, LevelRecord, StabilityReport};
use crate::oracle::Classification;
use crate::semiring::{MonomialClass, OrderedDivisionSemiring};

/// Singleton vertices print bare, merged ones in braces: `x`, `{x,y}`.
fn vertex_label(s: &StateSet) -> String {
    if s.len() == 1 {
        s.to_string()
    } else {
        format!("{{{s}}}")
    }
}

fn arc_list(g: &PerturbationGraph<MonomialClass>) -> String {
    let parts: Vec<String> = g
        .off_diagonal_pairs()
        .filter(|&(i, j)| !g.weight(i, j).is_zero())
        .map(|(i, j)| {
            format!(
                "{}->{} {}",
                vertex_label(g.vertex(i)),
                vertex_label(g.vertex(j)),
                g.weight(i, j)
            )
        })
        .collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(", ")
    }
}

pub fn render_report(report: &StabilityReport<MonomialClass>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "stable: {}", report.stable.join(" "));
    for entry in &report.vanished {
        let _ = writeln!(
            out,
            "{} vanishes depth={} timescale={}",
            entry.states, entry.depth, entry.time_scale
        );
    }
    out
}

pub fn render_trace(trace: &HubTrace<MonomialClass>) -> String {
    let mut out = String::new();
    for level in &trace.levels {
        let _ = writeln!(out, "level {}: divisor={}", level.depth, level.divisor);
        let _ = writeln!(out, "  scaled: {}", arc_list(&level.scaled));
        let essential: Vec<String> = level
            .essential_arcs
            .iter()
            .map(|(a, b)| format!("{}->{}", vertex_label(a), vertex_label(b)))
            .collect();
        let _ = writeln!(
            out,
            "  essential: {}",
            if essential.is_empty() { "(none)".into() } else { essential.join(", ") }
        );
        let classes: Vec<String> = level
            .essential_classes
            .iter()
            .map(|class| format!("{{{}}}", StateSet::union(class.iter())))
            .collect();
        let _ = writeln!(out, "  classes: {}", classes.join(" "));
        let transient: Vec<String> = level.transient.iter().map(vertex_label).collect();
        let _ = writeln!(
            out,
            "  transient: {}",
            if transient.is_empty() { "(none)".into() } else { transient.join(" ") }
        );
        let _ = writeln!(out, "  shrunken: {}", arc_list(&level.shrunken));
    }
    out
}

/// DOT rendering of one level's scaled graph. Weight-one (essential) arcs
/// are bold; weights are printed as `e^α`.
pub fn render_dot(level: &LevelRecord<MonomialClass>) -> String {
    let g = &level.scaled;
    let mut out = String::new();
    let _ = writeln!(out, "digraph level_{} {{", level.depth);
    let _ = writeln!(out, "  rankdir=LR;");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (i, j) in g.off_diagonal_pairs() {
        let w = g.weight(i, j);
        let MonomialClass::Exp(alpha) = w else { continue };
        let style = if w.is_one() { ", style=bold" } else { "" };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"e^{}\"{}];",
            g.vertex(i),
            g.vertex(j),
            alpha,
            style
        );
    }
    out.push_str("}\n");
    out
}

pub fn classification_name(c: Classification) -> &'static str {
    match c {
        Classification::EmpiricallyStable => "stable",
        Classification::EmpiricallyVanishing => "vanishing",
        Classification::Inconclusive => "inconclusive",
    }
}

// ---------------------------------------------------------------------
// JSON schema. These structs are the machine interface: field names and
// shapes are stable, and parsing emitted output reproduces the document.

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ReportDoc {
    pub stable: Vec<String>,
    pub vanished: Vec<VanishedDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<LevelDoc>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<VerificationDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct VanishedDoc {
    pub states: Vec<String>,
    pub depth: usize,
    pub timescale: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ArcDoc {
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub weight: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct LevelDoc {
    pub depth: usize,
    pub divisor: String,
    pub scaled: Vec<ArcDoc>,
    pub essential: Vec<ArcDoc>,
    pub classes: Vec<Vec<Vec<String>>>,
    pub transient: Vec<Vec<String>>,
    pub shrunken: Vec<ArcDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct VerificationDoc {
    pub coefficient_note: String,
    #[serde(rename = "abstract")]
    pub abstract_oracle: AbstractDoc,
    pub numeric: NumericDoc,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct AbstractDoc {
    pub stable: Vec<String>,
    pub agrees: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct NumericDoc {
    pub epsilons: Vec<f64>,
    pub threshold: f64,
    pub classifications: BTreeMap<String, String>,
    pub sweeps: BTreeMap<String, Vec<f64>>,
    pub agrees: bool,
}

fn names(s: &StateSet) -> Vec<String> {
    s.names().to_vec()
}

fn arc_docs(g: &PerturbationGraph<MonomialClass>) -> Vec<ArcDoc> {
    g.off_diagonal_pairs()
        .filter(|&(i, j)| !g.weight(i, j).is_zero())
        .map(|(i, j)| ArcDoc {
            from: names(g.vertex(i)),
            to: names(g.vertex(j)),
            weight: g.weight(i, j).to_string(),
        })
        .collect()
}

pub fn report_doc(report: &StabilityReport<MonomialClass>) -> ReportDoc {
    ReportDoc {
        stable: report.stable.clone(),
        vanished: report
            .vanished
            .iter()
            .map(|e| VanishedDoc {
                states: names(&e.states),
                depth: e.depth,
                timescale: e.time_scale.to_string(),
            })
            .collect(),
        trace: None,
        verification: None,
    }
}

pub fn level_doc(level: &LevelRecord<MonomialClass>) -> LevelDoc {
    LevelDoc {
        depth: level.depth,
        divisor: level.divisor.to_string(),
        scaled: arc_docs(&level.scaled),
        essential: level
            .essential_arcs
            .iter()
            .map(|(a, b)| ArcDoc {
                from: names(a),
                to: names(b),
                weight: MonomialClass::one().to_string(),
            })
            .collect(),
        classes: level
            .essential_classes
            .iter()
            .map(|class| class.iter().map(names).collect())
            .collect(),
        transient: level.transient.iter().map(names).collect(),
        shrunken: arc_docs(&level.shrunken),
    }
}
