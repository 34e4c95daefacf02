//! Command implementations behind the `quandle` binary.
//!
//! Every command builds its report as a string, so behavior is testable
//! without spawning processes and stdout stays byte-deterministic. Exit
//! codes: 0 success (including EQUAL/DISTINCT verdicts), 1 domain failure
//! (axiom violation, indistinguishable diagrams), 2 I/O or parse error,
//! 3 UNKNOWN verdict under an exhausted budget.

use std::fmt::Write as _;
use std::path::Path;

use quandle_core::free_quandle::{format_element, parse_element, FreeQuandleError};
use quandle_core::knot::{self, KnotDiagram, KnotError};
use quandle_core::present::{
    decide_equal, format_term, hom_enumerate, hom_enumerate_restricted, parse_presentation,
    parse_term, Assignment, QuandlePresentation, RewriteTrace, Verdict,
};
use quandle_core::{FiniteQuandle, GeneratorSet};

pub mod formats;
pub mod resolve;

/// A failed command: message for stderr plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Report text plus the exit code to finish with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::domain(e.to_string())
}

fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::parse(e.to_string())
}

// ---- parallel homomorphism search ----------------------------------------

/// Enumerate homomorphisms, splitting the search on the first generator's
/// image across `threads` workers. The merged result is sorted, so the
/// output is identical to the serial search.
pub fn hom_enumerate_threaded(
    p: &QuandlePresentation,
    target: &FiniteQuandle,
    threads: usize,
) -> Vec<Assignment> {
    let workers = threads.max(1).min(target.order());
    if workers <= 1 {
        return hom_enumerate(p, target);
    }
    let chunks: Vec<Vec<Assignment>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|worker| {
                scope.spawn(move || {
                    let mut found = Vec::new();
                    let mut first = worker;
                    while first < target.order() {
                        found.extend(hom_enumerate_restricted(p, target, first));
                        first += workers;
                    }
                    found
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("hom search worker panicked"))
            .collect()
    });
    let mut merged: Vec<Assignment> = chunks.into_iter().flatten().collect();
    merged.sort();
    merged
}

// ---- commands -------------------------------------------------------------

pub fn cmd_verify(path: &Path) -> Result<CmdOutput, CliError> {
    let q = formats::read_quandle_file(path)?;
    Ok(CmdOutput::ok(format!(
        "valid quandle of order {}\n",
        q.order()
    )))
}

pub fn cmd_make(spec: &str, out: &Path) -> Result<CmdOutput, CliError> {
    let q = resolve::resolve_single(spec)?;
    let text = formats::render_quandle_text(&q);
    std::fs::write(out, text)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", out.display())))?;
    Ok(CmdOutput::ok(String::new()))
}

pub fn cmd_inn(spec: &str) -> Result<CmdOutput, CliError> {
    let q = resolve::resolve_single(spec)?;
    let inn = q.inner_group();
    let mut report = format!("order: {}\n", inn.order());
    for generator in inn.generators() {
        let _ = writeln!(report, "generator: {generator}");
    }
    Ok(CmdOutput::ok(report))
}

fn infer_generators(texts: &[&str]) -> Result<GeneratorSet, CliError> {
    let mut names: Vec<String> = Vec::new();
    for text in texts {
        for token in text.split_whitespace() {
            if token == "^" {
                continue;
            }
            let name = token.strip_suffix("^-1").unwrap_or(token);
            if !names.iter().any(|n| n == name) {
                names.push(name.to_string());
            }
        }
    }
    GeneratorSet::new(names).map_err(parse_err)
}

fn freeq_error(e: FreeQuandleError) -> CliError {
    match e {
        FreeQuandleError::EqualElements => domain(e),
        _ => parse_err(e),
    }
}

pub fn cmd_freeq_normalize(element: &str) -> Result<CmdOutput, CliError> {
    let gens = infer_generators(&[element])?;
    let e = parse_element(&gens, element).map_err(freeq_error)?;
    Ok(CmdOutput::ok(format!("{}\n", format_element(&gens, &e))))
}

pub fn cmd_freeq_embed(element: &str) -> Result<CmdOutput, CliError> {
    let gens = infer_generators(&[element])?;
    let e = parse_element(&gens, element).map_err(freeq_error)?;
    Ok(CmdOutput::ok(format!("{}\n", gens.format_word(&e.embed()))))
}

pub fn cmd_freeq_op(left: &str, right: &str, inverse: bool) -> Result<CmdOutput, CliError> {
    let gens = infer_generators(&[left, right])?;
    let a = parse_element(&gens, left).map_err(freeq_error)?;
    let b = parse_element(&gens, right).map_err(freeq_error)?;
    let result = if inverse {
        a.rack_op_inv(&b)
    } else {
        a.rack_op(&b)
    };
    Ok(CmdOutput::ok(format!(
        "{}\n",
        format_element(&gens, &result)
    )))
}

pub fn cmd_freeq_separate(left: &str, right: &str) -> Result<CmdOutput, CliError> {
    let gens = infer_generators(&[left, right])?;
    let a = parse_element(&gens, left).map_err(freeq_error)?;
    let b = parse_element(&gens, right).map_err(freeq_error)?;
    let witness = a.separate(&b, gens.len()).map_err(freeq_error)?;
    let mut report = format!("n = {}\n", witness.degree());
    for (gen, name) in gens.names().iter().enumerate() {
        let _ = writeln!(report, "rho({name}) = {}", witness.generator_image(gen));
    }
    let _ = writeln!(
        report,
        "phi({}) = {}",
        format_element(&gens, &a),
        witness.image_of(&a)
    );
    let _ = writeln!(
        report,
        "phi({}) = {}",
        format_element(&gens, &b),
        witness.image_of(&b)
    );
    Ok(CmdOutput::ok(report))
}

fn read_presentation(path: &Path) -> Result<QuandlePresentation, CliError> {
    parse_presentation(&formats::read_to_string(path)?).map_err(parse_err)
}

fn hom_line(p: &QuandlePresentation, assignment: &Assignment) -> String {
    let fields: Vec<String> = p
        .generators
        .names()
        .iter()
        .zip(assignment.images())
        .map(|(name, image)| format!("{name}={image}"))
        .collect();
    format!("hom: {}", fields.join(" "))
}

pub fn cmd_present_homs(
    presentation: &Path,
    quandle: &str,
    threads: usize,
) -> Result<CmdOutput, CliError> {
    let p = read_presentation(presentation)?;
    let target = resolve::resolve_single(quandle)?;
    let homs = hom_enumerate_threaded(&p, &target, threads);
    let mut report = String::new();
    for assignment in &homs {
        let _ = writeln!(report, "{}", hom_line(&p, assignment));
    }
    let _ = writeln!(report, "count: {}", homs.len());
    Ok(CmdOutput::ok(report))
}

fn format_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn render_trace(p: &QuandlePresentation, trace: &RewriteTrace) -> String {
    let mut out = format!("trace: {}\n", format_term(&p.generators, &trace.start));
    for step in &trace.steps {
        let _ = writeln!(
            out,
            "trace: {}  [{} at {}]",
            format_term(&p.generators, &step.result),
            step.rule,
            format_path(&step.path)
        );
    }
    out
}

pub fn cmd_present_decide(
    presentation: &Path,
    left: &str,
    right: &str,
    budget: usize,
    library: &str,
) -> Result<CmdOutput, CliError> {
    let p = read_presentation(presentation)?;
    let left = parse_term(&p.generators, left).map_err(parse_err)?;
    let right = parse_term(&p.generators, right).map_err(parse_err)?;
    let library = resolve::resolve_library(library)?;
    let quandles: Vec<FiniteQuandle> = library.iter().map(|(_, q)| q.clone()).collect();
    let outcome = decide_equal(&p, &left, &right, budget, &quandles);
    let mut report = String::new();
    let code = match &outcome.verdict {
        Verdict::Equal(trace) => {
            report.push_str("verdict: EQUAL\n");
            report.push_str(&render_trace(&p, trace));
            0
        }
        Verdict::Distinct(witness) => {
            report.push_str("verdict: DISTINCT\n");
            let _ = writeln!(report, "quandle: {}", library[witness.quandle_index].0);
            let _ = writeln!(report, "{}", hom_line(&p, &witness.assignment));
            let _ = writeln!(
                report,
                "values: {} vs {}",
                witness.left_value, witness.right_value
            );
            0
        }
        Verdict::Unknown => {
            report.push_str("verdict: UNKNOWN\n");
            3
        }
    };
    let _ = writeln!(
        report,
        "budget: rewrites={} hom-checks={}",
        outcome.rewrite_expansions, outcome.hom_checks
    );
    Ok(CmdOutput {
        stdout: report,
        code,
    })
}

fn knot_error(e: KnotError) -> CliError {
    match e {
        KnotError::MultiComponent { .. }
        | KnotError::DuplicateUnderOut { .. }
        | KnotError::DuplicateUnderIn { .. }
        | KnotError::ArcNotWired { .. }
        | KnotError::NotOneArc => domain(e),
        _ => parse_err(e),
    }
}

/// Build a diagram from exactly one of a braid string or a crossing file.
pub fn load_diagram(
    braid: Option<&str>,
    crossings: Option<&Path>,
) -> Result<KnotDiagram, CliError> {
    match (braid, crossings) {
        (Some(text), None) => Ok(KnotDiagram::Braid(
            knot::parse_braid(text).map_err(knot_error)?,
        )),
        (None, Some(path)) => Ok(KnotDiagram::Crossings(
            knot::parse_crossing_list(&formats::read_to_string(path)?).map_err(knot_error)?,
        )),
        _ => Err(CliError::parse(
            "give exactly one of --braid or --crossings".to_string(),
        )),
    }
}

pub fn cmd_knot_colorings(
    diagram: &KnotDiagram,
    quandle: &str,
    threads: usize,
) -> Result<CmdOutput, CliError> {
    let target = resolve::resolve_single(quandle)?;
    let p = knot::diagram_presentation(diagram).map_err(knot_error)?;
    let homs = hom_enumerate_threaded(&p, &target, threads);
    let non_constant = homs.iter().any(|a| !a.is_constant());
    Ok(CmdOutput::ok(format!(
        "colorings: {}\nnon-constant: {}\n",
        homs.len(),
        non_constant
    )))
}

pub fn cmd_knot_distinguish(
    left: &KnotDiagram,
    right: &KnotDiagram,
    library: &str,
) -> Result<CmdOutput, CliError> {
    let library = resolve::resolve_library(library)?;
    let quandles: Vec<FiniteQuandle> = library.iter().map(|(_, q)| q.clone()).collect();
    match knot::distinguish(left, right, &quandles).map_err(knot_error)? {
        knot::DistinguishOutcome::Distinguished {
            quandle_index,
            left_count,
            right_count,
        } => Ok(CmdOutput::ok(format!(
            "distinguished by {} ({left_count} vs {right_count})\n",
            library[quandle_index].0
        ))),
        knot::DistinguishOutcome::IndistinguishableByLibrary => Ok(CmdOutput {
            stdout: "indistinguishable by library\n".to_string(),
            code: 1,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threaded_hom_search_matches_serial() {
        let p = parse_presentation(
            "gens: a b c\nrel: c = (a * b)\nrel: a = (b * c)\nrel: b = (c * a)\n",
        )
        .unwrap();
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let serial = hom_enumerate(&p, &r3);
        for threads in [1, 2, 4, 7] {
            assert_eq!(hom_enumerate_threaded(&p, &r3, threads), serial);
        }
    }

    #[test]
    fn freeq_commands_render_spec_examples() {
        assert_eq!(cmd_freeq_normalize("a ^ a b").unwrap().stdout, "a ^ b\n");
        assert_eq!(cmd_freeq_embed("a ^ b").unwrap().stdout, "b^-1 a b\n");
        assert_eq!(cmd_freeq_op("a", "b", false).unwrap().stdout, "a ^ b\n");
        assert_eq!(cmd_freeq_op("a ^ b", "b", true).unwrap().stdout, "a\n");
        let separate = cmd_freeq_separate("a", "b").unwrap().stdout;
        assert!(separate.starts_with("n = 3\n"));
        assert!(separate.contains("rho(a)"));
        // Equal elements are a domain failure.
        assert_eq!(cmd_freeq_separate("a", "a").unwrap_err().code, 1);
    }

    #[test]
    fn inn_report_for_dihedral_three() {
        let output = cmd_inn("dihedral:3").unwrap();
        assert!(output.stdout.starts_with("order: 6\n"));
        assert_eq!(output.stdout.matches("generator: ").count(), 3);
    }
}
