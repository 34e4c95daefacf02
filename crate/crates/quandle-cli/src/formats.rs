//! Text file formats for group and quandle tables.
//!
//! Group table: a `group <n>` header line, then n lines of n space-separated
//! element indices; the identity is inferred and verified. Quandle table:
//! same layout under a `quandle <n>` header, row x column y holding x * y.

use std::path::Path;

use quandle_core::group::FiniteGroup;
use quandle_core::FiniteQuandle;

use crate::CliError;

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))
}

fn parse_table(text: &str, header: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let first = lines
        .next()
        .ok_or_else(|| CliError::parse(format!("missing `{header} <n>` header")))?;
    let mut tokens = first.split_whitespace();
    match tokens.next() {
        Some(word) if word == header => {}
        _ => return Err(CliError::parse(format!("missing `{header} <n>` header"))),
    }
    let n: usize = tokens
        .next()
        .ok_or_else(|| CliError::parse(format!("missing order in `{header}` header")))?
        .parse()
        .map_err(|_| CliError::parse(format!("bad order in `{header}` header")))?;
    if tokens.next().is_some() {
        return Err(CliError::parse(format!(
            "trailing input in `{header}` header"
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for index in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| CliError::parse(format!("missing row {index}: expected {n} rows")))?;
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| CliError::parse(format!("row {index}: bad entry")))?;
        if row.len() != n {
            return Err(CliError::parse(format!(
                "row {index} has {} entries, expected {n}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if lines.next().is_some() {
        return Err(CliError::parse(format!("trailing rows: expected {n}")));
    }
    Ok(rows)
}

pub fn parse_group_text(text: &str) -> Result<FiniteGroup, CliError> {
    let rows = parse_table(text, "group")?;
    FiniteGroup::verify(&rows).map_err(|e| CliError::domain(format!("invalid group: {e}")))
}

pub fn parse_quandle_text(text: &str) -> Result<FiniteQuandle, CliError> {
    let rows = parse_table(text, "quandle")?;
    FiniteQuandle::verify(&rows).map_err(|e| CliError::domain(format!("invalid quandle: {e}")))
}

pub fn read_group_file(path: &Path) -> Result<FiniteGroup, CliError> {
    parse_group_text(&read_to_string(path)?)
}

pub fn read_quandle_file(path: &Path) -> Result<FiniteQuandle, CliError> {
    parse_quandle_text(&read_to_string(path)?)
}

/// Canonical table text; `parse_quandle_text` round-trips it.
pub fn render_quandle_text(q: &FiniteQuandle) -> String {
    let mut out = format!("quandle {}\n", q.order());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
