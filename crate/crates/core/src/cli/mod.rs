//! Command-line front end: parse a perturbation document, run the
//! analysis, optionally cross-check it against the oracles, and render the
//! results.

mod input;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

pub use input::{parse, ArcSpec, InputDocument, ParseError};
pub use output::{
    classification_name, level_doc, render_dot, render_report, render_trace, report_doc,
    AbstractDoc, ArcDoc, LevelDoc, NumericDoc, ReportDoc, VanishedDoc, VerificationDoc,
};

use crate::graph::{PerturbationGraph, StateSet};
use crate::hub::{hub, StabilityReport};
use crate::oracle::{
    empirical_stability, sink_sccs_reference, young_stable_states, Classification,
    EmpiricalReport, OracleError, BRUTE_FORCE_CAP, MIN_EPSILON,
};
use crate::semiring::{MonomialClass, OrderedDivisionSemiring};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 2;
pub const EXIT_CAP: u8 = 3;

const COEFFICIENT_NOTE: &str =
    "the stable set is independent of the arc coefficients; they only feed the numerical check";

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Print the per-level trace.
    pub trace: bool,
    /// Write one DOT file per level into this directory.
    pub dot: Option<PathBuf>,
    /// Cross-check with the brute-force and numerical oracles.
    pub verify: bool,
    /// Strictly decreasing ε values for the numerical oracle.
    pub epsilons: Vec<f64>,
    /// Stability threshold for the numerical oracle.
    pub threshold: f64,
    /// Emit machine-readable JSON instead of text.
    pub json: bool,
    /// Vertex cap for the brute-force oracle.
    pub cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            trace: false,
            dot: None,
            verify: false,
            epsilons: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5],
            threshold: 0.01,
            json: false,
            cap: BRUTE_FORCE_CAP,
        }
    }
}

/// Runs the analysis for a validated document and writes the results.
/// Returns the process exit code: 0 success, 1 invalid flags or numerics
/// not applicable, 2 oracle disagreement, 3 oracle size cap exceeded.
pub fn run(
    doc: &InputDocument,
    opts: &AnalyzeOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    if opts.verify {
        if let Some(problem) = flag_problem(opts) {
            writeln!(err, "error: {problem}")?;
            return Ok(EXIT_INPUT);
        }
    }

    let graph = doc.to_graph();
    let (report, trace) = hub(&graph).expect("validated documents have at least one state");

    if let Some(dir) = &opts.dot {
        fs::create_dir_all(dir)?;
        for level in &trace.levels {
            let path = dir.join(format!("level-{}.dot", level.depth));
            fs::write(path, render_dot(level))?;
        }
    }

    let verification = if opts.verify {
        match verify(doc, &graph, &report, opts) {
            Ok(v) => Some(v),
            Err(VerifyFailure::CapExceeded { size, cap }) => {
                writeln!(
                    err,
                    "error: a component of {size} states exceeds the brute-force cap of {cap}; \
                     raise --cap to verify"
                )?;
                return Ok(EXIT_CAP);
            }
            Err(VerifyFailure::NumericsUnavailable(message)) => {
                writeln!(err, "error: numerical oracle not applicable: {message}")?;
                return Ok(EXIT_INPUT);
            }
        }
    } else {
        None
    };

    let agrees = verification
        .as_ref()
        .map_or(true, |v| v.abstract_oracle.agrees && v.numeric.agrees);

    if opts.json {
        let mut doc = report_doc(&report);
        if opts.trace {
            doc.trace = Some(trace.levels.iter().map(level_doc).collect());
        }
        doc.verification = verification;
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        write!(out, "{}", render_report(&report))?;
        if opts.trace {
            write!(out, "{}", render_trace(&trace))?;
        }
        if let Some(v) = &verification {
            if v.abstract_oracle.agrees {
                writeln!(
                    out,
                    "verify: abstract oracle agrees: stable = {}",
                    v.abstract_oracle.stable.join(" ")
                )?;
            } else {
                writeln!(
                    out,
                    "verify: abstract oracle MISMATCH: oracle stable = {}, analysis stable = {}",
                    v.abstract_oracle.stable.join(" "),
                    report.stable.join(" ")
                )?;
            }
            if v.numeric.agrees {
                writeln!(
                    out,
                    "verify: numerical oracle agrees (threshold {})",
                    v.numeric.threshold
                )?;
            } else {
                for (state, class) in &v.numeric.classifications {
                    let expected = if report.is_stable(state) { "stable" } else { "vanishing" };
                    if class != expected {
                        writeln!(
                            out,
                            "verify: numerical MISMATCH for {state}: analysis says {expected}, \
                             sweep says {class}"
                        )?;
                    }
                }
            }
            writeln!(out, "verify: note: {COEFFICIENT_NOTE}")?;
        }
    }

    Ok(if agrees { EXIT_OK } else { EXIT_DISAGREEMENT })
}

fn flag_problem(opts: &AnalyzeOptions) -> Option<String> {
    if opts.epsilons.is_empty() {
        return Some("--epsilons needs at least one value".into());
    }
    for pair in opts.epsilons.windows(2) {
        if pair[1] >= pair[0] {
            return Some("--epsilons must be strictly decreasing".into());
        }
    }
    for &eps in &opts.epsilons {
        if !(MIN_EPSILON..=1.0).contains(&eps) {
            return Some(format!(
                "--epsilons values must lie in [{MIN_EPSILON}, 1], got {eps}"
            ));
        }
    }
    if !(opts.threshold > 0.0) {
        return Some("--threshold must be positive".into());
    }
    if opts.cap == 0 {
        return Some("--cap must be at least 1".into());
    }
    None
}

enum VerifyFailure {
    CapExceeded { size: usize, cap: usize },
    NumericsUnavailable(String),
}

fn verify(
    doc: &InputDocument,
    graph: &PerturbationGraph<MonomialClass>,
    report: &StabilityReport<MonomialClass>,
    opts: &AnalyzeOptions,
) -> Result<VerificationDoc, VerifyFailure> {
    let oracle_stable = abstract_stable_set(graph, opts.cap).map_err(|e| match e {
        OracleError::TooLarge { size, cap } => VerifyFailure::CapExceeded { size, cap },
        other => unreachable!("sink components are strongly connected: {other}"),
    })?;
    let abstract_agrees = oracle_stable == report.stable;

    let empirical = empirical_stability(
        &doc.states,
        &doc.numeric_spec(),
        &opts.epsilons,
        opts.threshold,
    )
    .map_err(|e| VerifyFailure::NumericsUnavailable(e.to_string()))?;
    let numeric_agrees = classifications_match(report, &empirical);

    Ok(VerificationDoc {
        coefficient_note: COEFFICIENT_NOTE.to_string(),
        abstract_oracle: AbstractDoc {
            stable: oracle_stable,
            agrees: abstract_agrees,
        },
        numeric: NumericDoc {
            epsilons: empirical.epsilons.clone(),
            threshold: opts.threshold,
            classifications: empirical
                .classifications
                .iter()
                .map(|(k, &v)| (k.clone(), classification_name(v).to_string()))
                .collect(),
            sweeps: empirical.sweeps.clone(),
            agrees: numeric_agrees,
        },
    })
}

/// Brute-force stable set for an arbitrary input: states outside the sink
/// components of the positive-arc digraph are never stable, and each sink
/// component is strongly connected, so the spanning-tree oracle decides its
/// members independently.
fn abstract_stable_set(
    graph: &PerturbationGraph<MonomialClass>,
    cap: usize,
) -> Result<Vec<String>, OracleError> {
    let n = graph.vertex_count();
    let arcs: Vec<(usize, usize)> = graph
        .off_diagonal_pairs()
        .filter(|&(i, j)| !graph.weight(i, j).is_zero())
        .collect();
    let mut stable: Vec<String> = Vec::new();
    for component in sink_sccs_reference(n, &arcs) {
        let vertices: Vec<StateSet> = component.iter().map(|&v| graph.vertex(v).clone()).collect();
        let mut sub = PerturbationGraph::new(vertices);
        for &a in &component {
            for &b in &component {
                if a == b {
                    continue;
                }
                let i = sub.index_of(graph.vertex(a)).expect("vertex kept");
                let j = sub.index_of(graph.vertex(b)).expect("vertex kept");
                sub.set_weight(i, j, graph.weight(a, b).clone());
            }
        }
        for root in young_stable_states(&sub, cap)? {
            stable.extend(root.names().iter().cloned());
        }
    }
    stable.sort();
    Ok(stable)
}

fn classifications_match(
    report: &StabilityReport<MonomialClass>,
    empirical: &EmpiricalReport,
) -> bool {
    empirical.classifications.iter().all(|(state, &class)| {
        let expected = if report.is_stable(state) {
            Classification::EmpiricallyStable
        } else {
            Classification::EmpiricallyVanishing
        };
        class == expected
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze(text: &str, opts: &AnalyzeOptions) -> (u8, String, String) {
        let doc = parse(text.as_bytes()).unwrap();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(&doc, opts, &mut out, &mut err).unwrap();
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const TWO_BASINS: &str = "states x y z t\nx y 3\ny x 2\nz t 9\nt z 6\n";
    const ESCAPE: &str = "states x y z\nx y 1\ny x 2\nz y 0\n";

    #[test]
    fn default_output_lists_stable_and_vanished() {
        let (code, out, err) = analyze(TWO_BASINS, &AnalyzeOptions::default());
        assert_eq!(code, EXIT_OK);
        assert!(err.is_empty());
        assert_eq!(
            out,
            "stable: x z\n\
             y vanishes depth=1 timescale=eps^-2\n\
             t vanishes depth=2 timescale=eps^-6\n"
        );
    }

    #[test]
    fn trace_flag_appends_levels() {
        let opts = AnalyzeOptions { trace: true, ..AnalyzeOptions::default() };
        let (code, out, _) = analyze(TWO_BASINS, &opts);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("level 1: divisor=eps^2"));
        assert!(out.contains("level 2: divisor=eps^4"));
        assert!(out.contains("level 3: divisor=0"));
    }

    #[test]
    fn verify_agrees_on_fixture() {
        let opts = AnalyzeOptions { verify: true, ..AnalyzeOptions::default() };
        let (code, out, _) = analyze(ESCAPE, &opts);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify: abstract oracle agrees: stable = y"));
        assert!(out.contains("verify: numerical oracle agrees"));
        assert!(out.contains("verify: note: the stable set is independent"));
    }

    #[test]
    fn json_output_round_trips() {
        let opts = AnalyzeOptions {
            trace: true,
            verify: true,
            json: true,
            ..AnalyzeOptions::default()
        };
        let (code, out, _) = analyze(ESCAPE, &opts);
        assert_eq!(code, EXIT_OK);
        let doc: ReportDoc = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.stable, vec!["y"]);
        assert_eq!(doc.vanished.len(), 2);
        let v = doc.verification.as_ref().unwrap();
        assert!(v.abstract_oracle.agrees && v.numeric.agrees);
        assert_eq!(serde_json::from_str::<ReportDoc>(&out).unwrap(), doc);
    }

    #[test]
    fn oversized_component_exits_with_cap_code() {
        let opts = AnalyzeOptions { verify: true, cap: 2, ..AnalyzeOptions::default() };
        let (code, _, err) = analyze(ESCAPE, &opts);
        // {x, y} fits in the cap, but bumping one vertex over it trips:
        assert_eq!(code, EXIT_OK, "two-state component fits cap 2: {err}");

        let opts = AnalyzeOptions { verify: true, cap: 1, ..AnalyzeOptions::default() };
        let (code, _, err) = analyze(ESCAPE, &opts);
        assert_eq!(code, EXIT_CAP);
        assert!(err.contains("exceeds the brute-force cap"));
    }

    #[test]
    fn bad_sweep_flags_exit_with_input_code() {
        let opts = AnalyzeOptions {
            verify: true,
            epsilons: vec![1e-2, 1e-1],
            ..AnalyzeOptions::default()
        };
        let (code, _, err) = analyze(ESCAPE, &opts);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("strictly decreasing"));

        let opts = AnalyzeOptions {
            verify: true,
            epsilons: vec![1e-1, 1e-9],
            ..AnalyzeOptions::default()
        };
        let (code, _, err) = analyze(ESCAPE, &opts);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("must lie in"));
    }

    #[test]
    fn overloaded_rows_exit_with_input_code() {
        // Two unit-coefficient exponent-0 arcs out of x sum to 2 > 1: no
        // valid transition matrix at any ε.
        let text = "states x y z\nx y 0\nx z 0\ny x 1\nz x 1\n";
        let opts = AnalyzeOptions { verify: true, ..AnalyzeOptions::default() };
        let (code, _, err) = analyze(text, &opts);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("numerical oracle not applicable"));
    }

    #[test]
    fn dot_files_are_written_per_level() {
        let dir = tempfile::tempdir().unwrap();
        let opts = AnalyzeOptions {
            dot: Some(dir.path().join("levels")),
            ..AnalyzeOptions::default()
        };
        let (code, _, _) = analyze(TWO_BASINS, &opts);
        assert_eq!(code, EXIT_OK);
        for depth in 1..=3 {
            let path = dir.path().join("levels").join(format!("level-{depth}.dot"));
            let content = fs::read_to_string(&path).unwrap();
            assert!(content.starts_with(&format!("digraph level_{depth} {{")));
        }
        assert!(!dir.path().join("levels").join("level-4.dot").exists());
    }

    #[test]
    fn isolated_states_are_their_own_stable_components() {
        let opts = AnalyzeOptions { verify: true, ..AnalyzeOptions::default() };
        let (code, out, _) = analyze("states a b\n", &opts);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("stable: a b\n"));
        assert!(out.contains("verify: abstract oracle agrees: stable = a b"));
    }
}
