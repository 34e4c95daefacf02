//! Knot-quandle presentations from knot diagrams.
//!
//! Two diagram encodings are accepted: braid words (closed up) and signed
//! crossing lists in Wirtinger style. Both compile to a quandle
//! presentation; coloring counts into finite quandles are then diagram
//! invariants. Only single-component closures (knots) are accepted.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::free_group::GeneratorSet;
use crate::present::{coloring_count, ColoringCount, QuandlePresentation, QuandleTerm};
use crate::quandle::FiniteQuandle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("braid text must start with `strands=<k>`")]
    MissingStrandCount,
    #[error("bad strand count {found:?}")]
    BadStrandCount { found: String },
    #[error("bad braid letter {found:?}")]
    BadBraidLetter { found: String },
    #[error("braid letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: isize, strands: usize },
    #[error("closure has {components} components; only knots are supported")]
    MultiComponent { components: usize },
    #[error("crossing line {line}: {message}")]
    CrossingLine { line: usize, message: String },
    #[error("arc {arc:?} appears more than once as an under-crossing output")]
    DuplicateUnderOut { arc: String },
    #[error("arc {arc:?} appears more than once as an under-crossing input")]
    DuplicateUnderIn { arc: String },
    #[error("arc {arc:?} is not wired through any under-crossing")]
    ArcNotWired { arc: String },
    #[error("a crossingless diagram needs exactly one arc")]
    NotOneArc,
    #[error("bad generator names: {0}")]
    Generators(#[from] crate::free_group::WordError),
}

/// A braid word on `strands` strands; letter `±i` is the generator
/// `sigma_i^{±1}`, `1 <= i < strands`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<isize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<isize>) -> Result<Self, KnotError> {
        if strands < 1 {
            return Err(KnotError::BadStrandCount {
                found: strands.to_string(),
            });
        }
        for &letter in &letters {
            let index = letter.unsigned_abs();
            if letter == 0 || index >= strands {
                return Err(KnotError::LetterOutOfRange { letter, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    /// Mirror image: every crossing sign flipped.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }
}

/// Parse braid text: `strands=<k>` followed by whitespace-separated signed
/// integers.
pub fn parse_braid(text: &str) -> Result<BraidWord, KnotError> {
    let mut tokens = text.split_whitespace();
    let head = tokens.next().ok_or(KnotError::MissingStrandCount)?;
    let count = head
        .strip_prefix("strands=")
        .ok_or(KnotError::MissingStrandCount)?;
    let strands: usize = count.parse().map_err(|_| KnotError::BadStrandCount {
        found: count.to_string(),
    })?;
    let mut letters = Vec::new();
    for token in tokens {
        let letter: isize = token.parse().map_err(|_| KnotError::BadBraidLetter {
            found: token.to_string(),
        })?;
        letters.push(letter);
    }
    BraidWord::new(strands, letters)
}

/// One crossing of a Wirtinger-style diagram: the under-strand enters as
/// `under_in`, leaves as `under_out`, passing the `over` arc with a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub over: String,
    pub under_in: String,
    pub under_out: String,
    pub positive: bool,
}

/// A signed crossing list. `arcs` holds the arc names in first-appearance
/// order; a crossingless unknot is written as a single standalone arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingList {
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<String>,
}

impl CrossingList {
    pub fn new(crossings: Vec<Crossing>, standalone_arcs: Vec<String>) -> Self {
        let mut arcs: Vec<String> = Vec::new();
        let mut note = |name: &String| {
            if !arcs.contains(name) {
                arcs.push(name.clone());
            }
        };
        for c in &crossings {
            note(&c.under_in);
            note(&c.over);
            note(&c.under_out);
        }
        for a in &standalone_arcs {
            note(a);
        }
        Self { crossings, arcs }
    }
}

/// Parse crossing-list text: one crossing per line as
/// `over=<arc> in=<arc> out=<arc> sign=<+|->`, plus optional standalone
/// `arc=<name>` lines for crossingless components. Blank lines are skipped.
pub fn parse_crossing_list(text: &str) -> Result<CrossingList, KnotError> {
    let mut crossings = Vec::new();
    let mut standalone = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(name) = trimmed.strip_prefix("arc=") {
            standalone.push(name.trim().to_string());
            continue;
        }
        let mut over = None;
        let mut under_in = None;
        let mut under_out = None;
        let mut positive = None;
        for field in trimmed.split_whitespace() {
            let Some((key, value)) = field.split_once('=') else {
                return Err(KnotError::CrossingLine {
                    line,
                    message: alloc::format!("bad field {field:?}"),
                });
            };
            match key {
                "over" => over = Some(value.to_string()),
                "in" => under_in = Some(value.to_string()),
                "out" => under_out = Some(value.to_string()),
                "sign" => {
                    positive = Some(match value {
                        "+" => true,
                        "-" => false,
                        _ => {
                            return Err(KnotError::CrossingLine {
                                line,
                                message: alloc::format!("bad sign {value:?}"),
                            })
                        }
                    })
                }
                _ => {
                    return Err(KnotError::CrossingLine {
                        line,
                        message: alloc::format!("unknown field {key:?}"),
                    })
                }
            }
        }
        match (over, under_in, under_out, positive) {
            (Some(over), Some(under_in), Some(under_out), Some(positive)) => {
                crossings.push(Crossing {
                    over,
                    under_in,
                    under_out,
                    positive,
                })
            }
            _ => {
                return Err(KnotError::CrossingLine {
                    line,
                    message: "needs over=, in=, out= and sign= fields".to_string(),
                })
            }
        }
    }
    Ok(CrossingList::new(crossings, standalone))
}

/// A knot diagram in either encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotDiagram {
    Braid(BraidWord),
    Crossings(CrossingList),
}

/// Quandle presentation of the closure of a braid word.
///
/// One generator per strand plus one fresh generator per crossing. The pair
/// of strand labels (a, b) at positions (i, i+1) becomes (b, c) under a
/// positive sigma_i with the relation c = a * b, and (c, a) under a negative
/// one with c = b / a; closing the braid equates the final labels with the
/// starting ones.
pub fn braid_presentation(braid: &BraidWord) -> Result<QuandlePresentation, KnotError> {
    // Re-validate: the fields are public, so the word may not have come
    // through the checked constructor.
    let braid = BraidWord::new(braid.strands, braid.letters.clone())?;
    let k = braid.strands;
    let mut underlying: Vec<usize> = (0..k).collect();
    for &letter in &braid.letters {
        let i = letter.unsigned_abs() - 1;
        underlying.swap(i, i + 1);
    }
    let components = cycle_count(&underlying);
    if components != 1 {
        return Err(KnotError::MultiComponent { components });
    }

    let mut names: Vec<String> = (1..=k).map(|i| alloc::format!("g{i}")).collect();
    names.extend((1..=braid.letters.len()).map(|i| alloc::format!("c{i}")));
    let generators = GeneratorSet::new(names)?;

    let mut labels: Vec<usize> = (0..k).collect();
    let mut relations = Vec::new();
    for (crossing, &letter) in braid.letters.iter().enumerate() {
        let i = letter.unsigned_abs() - 1;
        let fresh = k + crossing;
        let (a, b) = (labels[i], labels[i + 1]);
        if letter > 0 {
            relations.push((
                QuandleTerm::Gen(fresh),
                QuandleTerm::star(QuandleTerm::Gen(a), QuandleTerm::Gen(b)),
            ));
            labels[i] = b;
            labels[i + 1] = fresh;
        } else {
            relations.push((
                QuandleTerm::Gen(fresh),
                QuandleTerm::star_inv(QuandleTerm::Gen(b), QuandleTerm::Gen(a)),
            ));
            labels[i] = fresh;
            labels[i + 1] = a;
        }
    }
    for (position, &label) in labels.iter().enumerate() {
        if label != position {
            relations.push((QuandleTerm::Gen(label), QuandleTerm::Gen(position)));
        }
    }
    Ok(QuandlePresentation::new(generators, relations))
}

fn cycle_count(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = perm[p];
        }
    }
    cycles
}

/// Quandle presentation of a signed crossing list: generators are the arcs;
/// each crossing contributes `out = in * over` (positive) or
/// `out = in / over` (negative).
pub fn crossing_presentation(input: &CrossingList) -> Result<QuandlePresentation, KnotError> {
    // Re-derive the arc list so hand-built values cannot desynchronize it.
    let list = CrossingList::new(input.crossings.clone(), input.arcs.clone());
    if list.crossings.is_empty() {
        if list.arcs.len() != 1 {
            return Err(KnotError::NotOneArc);
        }
        let generators = GeneratorSet::new(list.arcs.clone())?;
        return Ok(QuandlePresentation::new(generators, Vec::new()));
    }

    let arc_index = |name: &str| {
        list.arcs
            .iter()
            .position(|a| a == name)
            .expect("arc listed")
    };
    let n = list.arcs.len();
    // The under-strand wiring must traverse every arc exactly once.
    let mut successor: Vec<Option<usize>> = vec![None; n];
    let mut out_seen: Vec<bool> = vec![false; n];
    for c in &list.crossings {
        let from = arc_index(&c.under_in);
        let to = arc_index(&c.under_out);
        if successor[from].is_some() {
            return Err(KnotError::DuplicateUnderIn {
                arc: c.under_in.clone(),
            });
        }
        if out_seen[to] {
            return Err(KnotError::DuplicateUnderOut {
                arc: c.under_out.clone(),
            });
        }
        successor[from] = Some(to);
        out_seen[to] = true;
    }
    let mut wiring = Vec::with_capacity(n);
    for (arc, next) in successor.iter().enumerate() {
        match next {
            Some(next) => wiring.push(*next),
            None => {
                return Err(KnotError::ArcNotWired {
                    arc: list.arcs[arc].clone(),
                })
            }
        }
    }
    let components = cycle_count(&wiring);
    if components != 1 {
        return Err(KnotError::MultiComponent { components });
    }

    let generators = GeneratorSet::new(list.arcs.clone())?;
    let relations = list
        .crossings
        .iter()
        .map(|c| {
            let over = QuandleTerm::Gen(arc_index(&c.over));
            let input = QuandleTerm::Gen(arc_index(&c.under_in));
            let output = QuandleTerm::Gen(arc_index(&c.under_out));
            let rhs = if c.positive {
                QuandleTerm::star(input, over)
            } else {
                QuandleTerm::star_inv(input, over)
            };
            (output, rhs)
        })
        .collect();
    Ok(QuandlePresentation::new(generators, relations))
}

/// Presentation of either diagram encoding.
pub fn diagram_presentation(diagram: &KnotDiagram) -> Result<QuandlePresentation, KnotError> {
    match diagram {
        KnotDiagram::Braid(braid) => braid_presentation(braid),
        KnotDiagram::Crossings(list) => crossing_presentation(list),
    }
}

/// The quandle-coloring invariant of a diagram: the number of homomorphisms
/// of its knot quandle into `target`, plus the non-constant flag. The count
/// is at least `target.order()` because constant colorings always exist.
pub fn coloring_invariant(
    diagram: &KnotDiagram,
    target: &FiniteQuandle,
) -> Result<ColoringCount, KnotError> {
    let presentation = diagram_presentation(diagram)?;
    Ok(coloring_count(&presentation, target))
}

/// Outcome of comparing two diagrams against a quandle library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistinguishOutcome {
    /// The first library quandle with differing coloring counts.
    Distinguished {
        quandle_index: usize,
        left_count: usize,
        right_count: usize,
    },
    IndistinguishableByLibrary,
}

pub fn distinguish(
    left: &KnotDiagram,
    right: &KnotDiagram,
    library: &[FiniteQuandle],
) -> Result<DistinguishOutcome, KnotError> {
    let left_presentation = diagram_presentation(left)?;
    let right_presentation = diagram_presentation(right)?;
    for (quandle_index, target) in library.iter().enumerate() {
        let left_count = coloring_count(&left_presentation, target).count;
        let right_count = coloring_count(&right_presentation, target).count;
        if left_count != right_count {
            return Ok(DistinguishOutcome::Distinguished {
                quandle_index,
                left_count,
                right_count,
            });
        }
    }
    Ok(DistinguishOutcome::IndistinguishableByLibrary)
}
