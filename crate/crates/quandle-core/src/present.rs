//! Finitely presented quandles: term algebra, homomorphism enumeration,
//! enveloping-group presentations, rewriting, and the word-problem
//! semi-decision.
//!
//! The decision procedure interleaves two semi-procedures: a breadth-first
//! rewrite closure that can prove two terms EQUAL with a replayable trace,
//! and a homomorphism search over a library of finite quandles that can
//! prove them DISTINCT with a separating coloring. Either may be cut off by
//! its budget, in which case the outcome is UNKNOWN.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::free_group::{GeneratorSet, GroupPresentation, GroupWord};
use crate::free_quandle::FreeQuandleElement;
use crate::perm::Permutation;
use crate::quandle::FiniteQuandle;

/// Binary quandle operations appearing in terms; `/` denotes the inverse
/// operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuandleOp {
    Star,
    StarInv,
}

/// A term over the generators of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuandleTerm {
    Gen(usize),
    Node(QuandleOp, Box<QuandleTerm>, Box<QuandleTerm>),
}

impl QuandleTerm {
    pub fn star(lhs: QuandleTerm, rhs: QuandleTerm) -> Self {
        Self::Node(QuandleOp::Star, Box::new(lhs), Box::new(rhs))
    }

    pub fn star_inv(lhs: QuandleTerm, rhs: QuandleTerm) -> Self {
        Self::Node(QuandleOp::StarInv, Box::new(lhs), Box::new(rhs))
    }

    pub fn max_generator(&self) -> usize {
        match self {
            Self::Gen(g) => *g,
            Self::Node(_, l, r) => l.max_generator().max(r.max_generator()),
        }
    }

    fn subterm(&self, path: &[usize]) -> Option<&QuandleTerm> {
        match path.split_first() {
            None => Some(self),
            Some((&side, rest)) => match self {
                Self::Gen(_) => None,
                Self::Node(_, l, r) => {
                    let child = if side == 0 { l } else { r };
                    child.subterm(rest)
                }
            },
        }
    }

    fn replaced(&self, path: &[usize], replacement: QuandleTerm) -> QuandleTerm {
        match path.split_first() {
            None => replacement,
            Some((&side, rest)) => match self {
                Self::Gen(_) => unreachable!("path verified by subterm"),
                Self::Node(op, l, r) => {
                    if side == 0 {
                        Self::Node(*op, Box::new(l.replaced(rest, replacement)), r.clone())
                    } else {
                        Self::Node(*op, l.clone(), Box::new(r.replaced(rest, replacement)))
                    }
                }
            },
        }
    }

    /// All subterm paths in preorder; 0 descends left, 1 descends right.
    fn paths(&self) -> Vec<Vec<usize>> {
        fn walk(t: &QuandleTerm, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(prefix.clone());
            if let QuandleTerm::Node(_, l, r) = t {
                prefix.push(0);
                walk(l, prefix, out);
                prefix.pop();
                prefix.push(1);
                walk(r, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

/// A finitely presented quandle: generators plus term equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandlePresentation {
    pub generators: GeneratorSet,
    pub relations: Vec<(QuandleTerm, QuandleTerm)>,
}

impl QuandlePresentation {
    pub fn new(generators: GeneratorSet, relations: Vec<(QuandleTerm, QuandleTerm)>) -> Self {
        assert!(!generators.is_empty(), "quandles are non-empty");
        for (l, r) in &relations {
            debug_assert!(l.max_generator() < generators.len());
            debug_assert!(r.max_generator() < generators.len());
        }
        Self {
            generators,
            relations,
        }
    }
}

// ---- term grammar -------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {kind}")]
pub struct TermParseError {
    pub position: usize,
    pub kind: TermParseKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermParseKind {
    #[error("unknown generator {name:?}")]
    UnknownGenerator { name: String },
    #[error("expected a term, found {found:?}")]
    ExpectedTerm { found: String },
    #[error("expected `*` or `/`, found {found:?}")]
    ExpectedOperator { found: String },
    #[error("expected `)`, found {found:?}")]
    ExpectedClosingParen { found: String },
    #[error("unexpected trailing input {found:?}")]
    TrailingInput { found: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Star,
    Slash,
    Name(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::LParen => "(".to_string(),
            Token::RParen => ")".to_string(),
            Token::Star => "*".to_string(),
            Token::Slash => "/".to_string(),
            Token::Name(n) => n.clone(),
        }
    }
}

fn tokenize(text: &str) -> Vec<(usize, Token)> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((at, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '(' => tokens.push((at, Token::LParen)),
            ')' => tokens.push((at, Token::RParen)),
            '*' => tokens.push((at, Token::Star)),
            '/' => tokens.push((at, Token::Slash)),
            _ => {
                let mut end = at + c.len_utf8();
                while let Some(&(next, c)) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '*' | '/') {
                        break;
                    }
                    end = next + c.len_utf8();
                    chars.next();
                }
                tokens.push((at, Token::Name(text[at..end].to_string())));
            }
        }
    }
    tokens
}

/// Parse a fully parenthesized term: `term := name | "(" term op term ")"`
/// with `op := "*" | "/"`.
pub fn parse_term(generators: &GeneratorSet, text: &str) -> Result<QuandleTerm, TermParseError> {
    let tokens = tokenize(text);
    let end = text.len();
    let (term, next) = parse_term_at(generators, &tokens, 0, end)?;
    if next < tokens.len() {
        let (position, token) = &tokens[next];
        return Err(TermParseError {
            position: *position,
            kind: TermParseKind::TrailingInput {
                found: token.describe(),
            },
        });
    }
    Ok(term)
}

fn parse_term_at(
    generators: &GeneratorSet,
    tokens: &[(usize, Token)],
    index: usize,
    end: usize,
) -> Result<(QuandleTerm, usize), TermParseError> {
    let expected_term = |index: usize| -> TermParseError {
        match tokens.get(index) {
            Some((position, token)) => TermParseError {
                position: *position,
                kind: TermParseKind::ExpectedTerm {
                    found: token.describe(),
                },
            },
            None => TermParseError {
                position: end,
                kind: TermParseKind::ExpectedTerm {
                    found: "end of input".to_string(),
                },
            },
        }
    };
    match tokens.get(index) {
        Some((position, Token::Name(name))) => {
            let gen = generators.index_of(name).ok_or_else(|| TermParseError {
                position: *position,
                kind: TermParseKind::UnknownGenerator { name: name.clone() },
            })?;
            Ok((QuandleTerm::Gen(gen), index + 1))
        }
        Some((_, Token::LParen)) => {
            let (lhs, after_lhs) = parse_term_at(generators, tokens, index + 1, end)?;
            let op = match tokens.get(after_lhs) {
                Some((_, Token::Star)) => QuandleOp::Star,
                Some((_, Token::Slash)) => QuandleOp::StarInv,
                Some((position, token)) => {
                    return Err(TermParseError {
                        position: *position,
                        kind: TermParseKind::ExpectedOperator {
                            found: token.describe(),
                        },
                    })
                }
                None => {
                    return Err(TermParseError {
                        position: end,
                        kind: TermParseKind::ExpectedOperator {
                            found: "end of input".to_string(),
                        },
                    })
                }
            };
            let (rhs, after_rhs) = parse_term_at(generators, tokens, after_lhs + 1, end)?;
            match tokens.get(after_rhs) {
                Some((_, Token::RParen)) => Ok((
                    QuandleTerm::Node(op, Box::new(lhs), Box::new(rhs)),
                    after_rhs + 1,
                )),
                Some((position, token)) => Err(TermParseError {
                    position: *position,
                    kind: TermParseKind::ExpectedClosingParen {
                        found: token.describe(),
                    },
                }),
                None => Err(TermParseError {
                    position: end,
                    kind: TermParseKind::ExpectedClosingParen {
                        found: "end of input".to_string(),
                    },
                }),
            }
        }
        _ => Err(expected_term(index)),
    }
}

pub fn format_term(generators: &GeneratorSet, term: &QuandleTerm) -> String {
    match term {
        QuandleTerm::Gen(g) => generators.name(*g).to_string(),
        QuandleTerm::Node(op, l, r) => {
            let op = match op {
                QuandleOp::Star => '*',
                QuandleOp::StarInv => '/',
            };
            let mut out = String::new();
            out.push('(');
            out.push_str(&format_term(generators, l));
            out.push(' ');
            out.push(op);
            out.push(' ');
            out.push_str(&format_term(generators, r));
            out.push(')');
            out
        }
    }
}

// ---- presentation text --------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationParseError {
    #[error("missing `gens:` line")]
    MissingGenerators,
    #[error("line {line}: expected `gens:` or `rel:`")]
    BadLine { line: usize },
    #[error("line {line}: relation needs a single `=`")]
    MissingEquals { line: usize },
    #[error("line {line}: {source}")]
    Term { line: usize, source: TermParseError },
    #[error("bad generator list: {0}")]
    Generators(#[from] crate::free_group::WordError),
}

/// Parse presentation text: a `gens: x y z` line followed by zero or more
/// `rel: <term> = <term>` lines. Blank lines are skipped.
pub fn parse_presentation(text: &str) -> Result<QuandlePresentation, PresentationParseError> {
    let mut generators: Option<GeneratorSet> = None;
    let mut relations = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(names) = trimmed.strip_prefix("gens:") {
            if generators.is_some() {
                return Err(PresentationParseError::BadLine { line });
            }
            generators = Some(GeneratorSet::new(names.split_whitespace())?);
        } else if let Some(rel) = trimmed.strip_prefix("rel:") {
            let gens = generators
                .as_ref()
                .ok_or(PresentationParseError::MissingGenerators)?;
            let mut sides = rel.splitn(2, '=');
            let (Some(lhs), Some(rhs)) = (sides.next(), sides.next()) else {
                return Err(PresentationParseError::MissingEquals { line });
            };
            let lhs = parse_term(gens, lhs)
                .map_err(|source| PresentationParseError::Term { line, source })?;
            let rhs = parse_term(gens, rhs)
                .map_err(|source| PresentationParseError::Term { line, source })?;
            relations.push((lhs, rhs));
        } else {
            return Err(PresentationParseError::BadLine { line });
        }
    }
    let generators = generators.ok_or(PresentationParseError::MissingGenerators)?;
    if generators.is_empty() {
        return Err(PresentationParseError::MissingGenerators);
    }
    Ok(QuandlePresentation::new(generators, relations))
}

// ---- evaluation and homomorphism search ---------------------------------

/// A total map from generators to elements of a target quandle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    images: Vec<usize>,
}

impl Assignment {
    pub fn new(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> usize {
        self.images[gen]
    }

    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| w[0] == w[1])
    }
}

fn eval_images(term: &QuandleTerm, target: &FiniteQuandle, images: &[usize]) -> usize {
    match term {
        QuandleTerm::Gen(g) => images[*g],
        QuandleTerm::Node(op, l, r) => {
            let a = eval_images(l, target, images);
            let b = eval_images(r, target, images);
            match op {
                QuandleOp::Star => target.op(a, b),
                QuandleOp::StarInv => target.inv_op(a, b),
            }
        }
    }
}

/// Evaluate a term in a finite quandle under a generator assignment.
pub fn eval_term(term: &QuandleTerm, target: &FiniteQuandle, assignment: &Assignment) -> usize {
    eval_images(term, target, assignment.images())
}

/// All homomorphisms from the presented quandle into `target`, sorted
/// lexicographically by image tuple.
///
/// Backtracking assigns generator images in index order and checks each
/// relation as soon as all of its generators are assigned.
pub fn hom_enumerate(p: &QuandlePresentation, target: &FiniteQuandle) -> Vec<Assignment> {
    enumerate_with_first(p, target, None)
}

/// The homomorphisms whose first generator maps to `first_image`. Workers
/// may split the search on this image and merge; results are
/// sort-normalized, so partitioned and serial runs agree.
pub fn hom_enumerate_restricted(
    p: &QuandlePresentation,
    target: &FiniteQuandle,
    first_image: usize,
) -> Vec<Assignment> {
    enumerate_with_first(p, target, Some(first_image))
}

fn enumerate_with_first(
    p: &QuandlePresentation,
    target: &FiniteQuandle,
    first: Option<usize>,
) -> Vec<Assignment> {
    let rank = p.generators.len();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for (index, (lhs, rhs)) in p.relations.iter().enumerate() {
        let depth = lhs.max_generator().max(rhs.max_generator());
        buckets[depth].push(index);
    }
    let mut images = vec![0usize; rank];
    let mut out = Vec::new();
    search(p, target, &buckets, &mut images, 0, first, &mut out);
    out.sort();
    out
}

fn search(
    p: &QuandlePresentation,
    target: &FiniteQuandle,
    buckets: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
    first: Option<usize>,
    out: &mut Vec<Assignment>,
) {
    if depth == images.len() {
        out.push(Assignment::new(images.clone()));
        return;
    }
    let candidates: Vec<usize> = match (depth, first) {
        (0, Some(v)) => vec![v],
        _ => (0..target.order()).collect(),
    };
    for v in candidates {
        images[depth] = v;
        let consistent = buckets[depth].iter().all(|&index| {
            let (lhs, rhs) = &p.relations[index];
            eval_images(lhs, target, images) == eval_images(rhs, target, images)
        });
        if consistent {
            search(p, target, buckets, images, depth + 1, first, out);
        }
    }
}

/// Coloring count plus whether any non-constant homomorphism exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringCount {
    pub count: usize,
    pub non_constant: bool,
}

pub fn coloring_count(p: &QuandlePresentation, target: &FiniteQuandle) -> ColoringCount {
    let homs = hom_enumerate(p, target);
    ColoringCount {
        count: homs.len(),
        non_constant: homs.iter().any(|a| !a.is_constant()),
    }
}

/// The enveloping group of a presented quandle: same generators, with
/// `t * u` rewritten to the conjugate `u^-1 t u` and `t / u` to `u t u^-1`.
pub fn enveloping_presentation(p: &QuandlePresentation) -> GroupPresentation {
    fn word_of(term: &QuandleTerm) -> GroupWord {
        match term {
            QuandleTerm::Gen(g) => GroupWord::generator(*g),
            QuandleTerm::Node(op, l, r) => {
                let wl = word_of(l);
                let wr = word_of(r);
                match op {
                    QuandleOp::Star => wl.conjugate(&wr),
                    QuandleOp::StarInv => wl.conjugate(&wr.invert()),
                }
            }
        }
    }
    GroupPresentation {
        generators: p.generators.clone(),
        relations: p
            .relations
            .iter()
            .map(|(l, r)| (word_of(l), word_of(r)))
            .collect(),
    }
}

/// Evaluate a term over the free quandle on the same generators.
pub fn eval_in_free(term: &QuandleTerm) -> FreeQuandleElement {
    match term {
        QuandleTerm::Gen(g) => FreeQuandleElement::generator(*g),
        QuandleTerm::Node(op, l, r) => {
            let a = eval_in_free(l);
            let b = eval_in_free(r);
            match op {
                QuandleOp::Star => a.rack_op(&b),
                QuandleOp::StarInv => a.rack_op_inv(&b),
            }
        }
    }
}

// ---- rewriting ----------------------------------------------------------

/// One rewrite rule: a presentation relation used in either direction, or a
/// quandle axiom used as a rule. Cancellation expansion needs a partner
/// term; it is drawn from the generator leaves to keep branching finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteRule {
    Relation { index: usize, reversed: bool },
    Idempotence { expand: bool },
    Cancellation,
    CancellationExpand { gen: usize, star_first: bool },
    Distributivity { expand: bool },
}

impl core::fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            RewriteRule::Relation { index, reversed } => {
                if *reversed {
                    write!(f, "relation {index} (right to left)")
                } else {
                    write!(f, "relation {index}")
                }
            }
            RewriteRule::Idempotence { expand: false } => write!(f, "idempotence"),
            RewriteRule::Idempotence { expand: true } => write!(f, "idempotence (expand)"),
            RewriteRule::Cancellation => write!(f, "cancellation"),
            RewriteRule::CancellationExpand { gen, star_first } => {
                write!(
                    f,
                    "cancellation (expand g{gen}, {})",
                    if *star_first { "* then /" } else { "/ then *" }
                )
            }
            RewriteRule::Distributivity { expand } => {
                write!(
                    f,
                    "distributivity ({})",
                    if *expand { "expand" } else { "contract" }
                )
            }
        }
    }
}

fn apply_rule(
    p: &QuandlePresentation,
    term: &QuandleTerm,
    rule: &RewriteRule,
) -> Option<QuandleTerm> {
    use QuandleOp::Star;
    use QuandleTerm::{Gen, Node};
    match rule {
        RewriteRule::Relation { index, reversed } => {
            let (lhs, rhs) = &p.relations[*index];
            let (from, to) = if *reversed { (rhs, lhs) } else { (lhs, rhs) };
            (term == from).then(|| to.clone())
        }
        RewriteRule::Idempotence { expand: false } => match term {
            Node(Star, l, r) if l == r => Some((**l).clone()),
            _ => None,
        },
        RewriteRule::Idempotence { expand: true } => {
            Some(QuandleTerm::star(term.clone(), term.clone()))
        }
        RewriteRule::Cancellation => match term {
            Node(outer, inner, u2) => match &**inner {
                Node(inner_op, a, u) if u == u2 && *inner_op != *outer => Some((**a).clone()),
                _ => None,
            },
            Gen(_) => None,
        },
        RewriteRule::CancellationExpand { gen, star_first } => {
            let g = Gen(*gen);
            Some(if *star_first {
                QuandleTerm::star_inv(QuandleTerm::star(term.clone(), g.clone()), g)
            } else {
                QuandleTerm::star(QuandleTerm::star_inv(term.clone(), g.clone()), g)
            })
        }
        RewriteRule::Distributivity { expand: true } => match term {
            Node(Star, l, c) => match &**l {
                Node(Star, a, b) => Some(QuandleTerm::star(
                    QuandleTerm::star((**a).clone(), (**c).clone()),
                    QuandleTerm::star((**b).clone(), (**c).clone()),
                )),
                _ => None,
            },
            _ => None,
        },
        RewriteRule::Distributivity { expand: false } => match term {
            Node(Star, l, r) => match (&**l, &**r) {
                (Node(Star, a, c1), Node(Star, b, c2)) if c1 == c2 => Some(QuandleTerm::star(
                    QuandleTerm::star((**a).clone(), (**b).clone()),
                    (**c1).clone(),
                )),
                _ => None,
            },
            _ => None,
        },
    }
}

/// Apply a rule at a subterm position; `None` if it does not match there.
pub fn apply_rule_at(
    p: &QuandlePresentation,
    term: &QuandleTerm,
    rule: &RewriteRule,
    path: &[usize],
) -> Option<QuandleTerm> {
    let subterm = term.subterm(path)?;
    let replacement = apply_rule(p, subterm, rule)?;
    Some(term.replaced(path, replacement))
}

fn rule_order(p: &QuandlePresentation) -> Vec<RewriteRule> {
    let mut rules = Vec::new();
    for index in 0..p.relations.len() {
        rules.push(RewriteRule::Relation {
            index,
            reversed: false,
        });
        rules.push(RewriteRule::Relation {
            index,
            reversed: true,
        });
    }
    rules.push(RewriteRule::Idempotence { expand: false });
    rules.push(RewriteRule::Cancellation);
    rules.push(RewriteRule::Distributivity { expand: false });
    rules.push(RewriteRule::Distributivity { expand: true });
    rules.push(RewriteRule::Idempotence { expand: true });
    for gen in 0..p.generators.len() {
        rules.push(RewriteRule::CancellationExpand {
            gen,
            star_first: true,
        });
        rules.push(RewriteRule::CancellationExpand {
            gen,
            star_first: false,
        });
    }
    rules
}

/// One recorded rewrite: the rule, where it applied, and the whole term
/// after application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub path: Vec<usize>,
    pub result: QuandleTerm,
}

/// A chain of rewrites from `start`; replaying it checks every step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: QuandleTerm,
    pub steps: Vec<RewriteStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step} is not a legal rule application")]
pub struct ReplayError {
    pub step: usize,
}

impl RewriteTrace {
    pub fn end(&self) -> &QuandleTerm {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }

    /// Re-apply every step, verifying each against the recorded result.
    pub fn replay(&self, p: &QuandlePresentation) -> Result<QuandleTerm, ReplayError> {
        let mut current = self.start.clone();
        for (index, step) in self.steps.iter().enumerate() {
            let next = apply_rule_at(p, &current, &step.rule, &step.path)
                .ok_or(ReplayError { step: index })?;
            if next != step.result {
                return Err(ReplayError { step: index });
            }
            current = next;
        }
        Ok(current)
    }
}

struct RewriteSearch {
    // Each visited term maps to the (parent, rule, path) that produced it.
    visited: BTreeMap<QuandleTerm, Option<(QuandleTerm, RewriteRule, Vec<usize>)>>,
    queue: VecDeque<QuandleTerm>,
    rules: Vec<RewriteRule>,
}

impl RewriteSearch {
    fn new(p: &QuandlePresentation, start: QuandleTerm) -> Self {
        let mut visited = BTreeMap::new();
        visited.insert(start.clone(), None);
        let mut queue = VecDeque::new();
        queue.push_back(start);
        Self {
            visited,
            queue,
            rules: rule_order(p),
        }
    }

    fn contains(&self, term: &QuandleTerm) -> bool {
        self.visited.contains_key(term)
    }

    fn queue_is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    /// Expand one queued term; false when the queue is exhausted.
    fn expand_one(&mut self, p: &QuandlePresentation) -> bool {
        let Some(current) = self.queue.pop_front() else {
            return false;
        };
        for path in current.paths() {
            for rule in &self.rules {
                let Some(next) = apply_rule_at(p, &current, rule, &path) else {
                    continue;
                };
                if !self.visited.contains_key(&next) {
                    self.visited
                        .insert(next.clone(), Some((current.clone(), *rule, path.clone())));
                    self.queue.push_back(next);
                }
            }
        }
        true
    }

    fn trace_to(&self, target: &QuandleTerm) -> RewriteTrace {
        let mut steps = Vec::new();
        let mut current = target.clone();
        while let Some(Some((parent, rule, path))) = self.visited.get(&current) {
            steps.push(RewriteStep {
                rule: *rule,
                path: path.clone(),
                result: current.clone(),
            });
            current = parent.clone();
        }
        steps.reverse();
        RewriteTrace {
            start: current,
            steps,
        }
    }
}

/// Terms reachable from `start` by the presentation relations and the
/// quandle axioms, capped at `budget` node expansions.
#[derive(Debug, Clone)]
pub struct RewriteClosure {
    pub visited: BTreeSet<QuandleTerm>,
    pub exhausted: bool,
    pub expansions: usize,
}

pub fn rewrite_closure(
    p: &QuandlePresentation,
    start: &QuandleTerm,
    budget: usize,
) -> RewriteClosure {
    let mut bfs = RewriteSearch::new(p, start.clone());
    let mut expansions = 0;
    while expansions < budget && bfs.expand_one(p) {
        expansions += 1;
    }
    let exhausted = !bfs.queue_is_empty();
    RewriteClosure {
        visited: bfs.visited.into_keys().collect(),
        exhausted,
        expansions,
    }
}

// ---- word-problem semi-decision -----------------------------------------

/// Expansions granted to the rewrite procedure per interleaving turn.
const REWRITE_SLICE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(RewriteTrace),
    Distinct(DistinctWitness),
    Unknown,
}

/// A separating coloring: a library quandle and a verified homomorphism
/// under which the two terms evaluate differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctWitness {
    pub quandle_index: usize,
    pub assignment: Assignment,
    pub left_value: usize,
    pub right_value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideOutcome {
    pub verdict: Verdict,
    pub rewrite_expansions: usize,
    pub hom_checks: usize,
}

/// Interleave the rewrite closure from `left` (checking for `right`) with a
/// homomorphism search over `library`, one quandle per turn, rewriting
/// first. `budget` caps the total rewrite expansions.
pub fn decide_equal(
    p: &QuandlePresentation,
    left: &QuandleTerm,
    right: &QuandleTerm,
    budget: usize,
    library: &[FiniteQuandle],
) -> DecideOutcome {
    let mut bfs = RewriteSearch::new(p, left.clone());
    let mut rewrite_expansions = 0;
    let mut hom_checks = 0;
    let mut next_quandle = 0;
    if bfs.contains(right) {
        return DecideOutcome {
            verdict: Verdict::Equal(bfs.trace_to(right)),
            rewrite_expansions,
            hom_checks,
        };
    }
    loop {
        let slice_end = (rewrite_expansions + REWRITE_SLICE).min(budget);
        while rewrite_expansions < slice_end {
            if !bfs.expand_one(p) {
                break;
            }
            rewrite_expansions += 1;
            if bfs.contains(right) {
                return DecideOutcome {
                    verdict: Verdict::Equal(bfs.trace_to(right)),
                    rewrite_expansions,
                    hom_checks,
                };
            }
        }
        if next_quandle < library.len() {
            let target = &library[next_quandle];
            for assignment in hom_enumerate(p, target) {
                hom_checks += 1;
                let left_value = eval_term(left, target, &assignment);
                let right_value = eval_term(right, target, &assignment);
                if left_value != right_value {
                    // Soundness re-check on emission.
                    for (l, r) in &p.relations {
                        assert_eq!(
                            eval_term(l, target, &assignment),
                            eval_term(r, target, &assignment),
                            "enumerated assignment must satisfy the relations"
                        );
                    }
                    return DecideOutcome {
                        verdict: Verdict::Distinct(DistinctWitness {
                            quandle_index: next_quandle,
                            assignment,
                            left_value,
                            right_value,
                        }),
                        rewrite_expansions,
                        hom_checks,
                    };
                }
            }
            next_quandle += 1;
        }
        let rewrites_done = rewrite_expansions >= budget || bfs.queue_is_empty();
        let library_done = next_quandle >= library.len();
        if rewrites_done && library_done {
            return DecideOutcome {
                verdict: Verdict::Unknown,
                rewrite_expansions,
                hom_checks,
            };
        }
    }
}

// ---- census --------------------------------------------------------------

/// Hard cap on the census order; table counts grow explosively.
pub const CENSUS_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("census cap is {cap}; {requested} requested")]
pub struct CensusCapExceeded {
    pub requested: usize,
    pub cap: usize,
}

/// Every quandle table of order 1..=max_order, in deterministic order.
///
/// Columns are chosen left to right among the permutations fixing their own
/// index (forced by axioms 1 and 2), in lexicographic order, with the
/// distributivity constraint checked incrementally.
pub fn quandle_census(max_order: usize) -> Result<Vec<FiniteQuandle>, CensusCapExceeded> {
    if max_order > CENSUS_CAP {
        return Err(CensusCapExceeded {
            requested: max_order,
            cap: CENSUS_CAP,
        });
    }
    let mut out = Vec::new();
    for n in 1..=max_order {
        census_order(n, &mut out);
    }
    Ok(out)
}

/// Census table counts as (order, count) pairs.
pub fn census_counts(max_order: usize) -> Result<Vec<(usize, usize)>, CensusCapExceeded> {
    let census = quandle_census(max_order)?;
    Ok((1..=max_order)
        .map(|n| (n, census.iter().filter(|q| q.order() == n).count()))
        .collect())
}

fn census_order(n: usize, out: &mut Vec<FiniteQuandle>) {
    // Candidate columns for S_y: permutations fixing y, lexicographic.
    let candidates: Vec<Vec<Permutation>> = (0..n)
        .map(|y| {
            crate::group::all_permutations(n)
                .into_iter()
                .filter(|p| p.apply(y) == y)
                .collect()
        })
        .collect();
    let mut columns: Vec<Permutation> = Vec::with_capacity(n);
    census_extend(n, &candidates, &mut columns, out);
}

fn census_extend(
    n: usize,
    candidates: &[Vec<Permutation>],
    columns: &mut Vec<Permutation>,
    out: &mut Vec<FiniteQuandle>,
) {
    let k = columns.len();
    if k == n {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| columns[y].apply(x)).collect())
            .collect();
        out.push(FiniteQuandle::verify(&rows).expect("census candidates satisfy the axioms"));
        return;
    }
    'next: for candidate in &candidates[k] {
        columns.push(candidate.clone());
        // S_{S_z(y)} = S_z . S_y . S_z^-1 for all pairs; when the target
        // column is not chosen yet, it must at least fix its own index.
        for y in 0..=k {
            for z in 0..=k {
                let c = columns[z].apply(y);
                let conj = columns[y].conj_by(&columns[z]);
                if c <= k {
                    if columns[c] != conj {
                        columns.pop();
                        continue 'next;
                    }
                } else if conj.apply(c) != c {
                    columns.pop();
                    continue 'next;
                }
            }
        }
        census_extend(n, candidates, columns, out);
        columns.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn presentation(text: &str) -> QuandlePresentation {
        parse_presentation(text).unwrap()
    }

    fn trefoil() -> QuandlePresentation {
        presentation(
            "gens: a b c\n\
             rel: c = (a * b)\n\
             rel: a = (b * c)\n\
             rel: b = (c * a)\n",
        )
    }

    fn r3() -> FiniteQuandle {
        FiniteQuandle::dihedral(3).unwrap()
    }

    #[test]
    fn parse_term_examples() {
        let g = GeneratorSet::new(["x", "y", "z"]).unwrap();
        assert_eq!(parse_term(&g, "x").unwrap(), QuandleTerm::Gen(0));
        assert_eq!(
            parse_term(&g, "(x * y)").unwrap(),
            QuandleTerm::star(QuandleTerm::Gen(0), QuandleTerm::Gen(1))
        );
        assert_eq!(
            parse_term(&g, "((x * y) / z)").unwrap(),
            QuandleTerm::star_inv(
                QuandleTerm::star(QuandleTerm::Gen(0), QuandleTerm::Gen(1)),
                QuandleTerm::Gen(2)
            )
        );
    }

    #[test]
    fn presentation_text_requires_generators() {
        assert_eq!(
            parse_presentation("rel: x = x\n"),
            Err(PresentationParseError::MissingGenerators)
        );
        assert_eq!(
            parse_presentation("gens:\n"),
            Err(PresentationParseError::MissingGenerators)
        );
        assert!(matches!(
            parse_presentation("gens: x\nrel: x\n"),
            Err(PresentationParseError::MissingEquals { line: 2 })
        ));
    }

    #[test]
    fn parse_term_positions_errors() {
        let g = GeneratorSet::new(["x", "y"]).unwrap();
        let err = parse_term(&g, "(x * w)").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(matches!(err.kind, TermParseKind::UnknownGenerator { .. }));

        let err = parse_term(&g, "(x * y").unwrap_err();
        assert!(matches!(
            err.kind,
            TermParseKind::ExpectedClosingParen { .. }
        ));

        let err = parse_term(&g, "(x y)").unwrap_err();
        assert_eq!(err.position, 3);
        assert!(matches!(err.kind, TermParseKind::ExpectedOperator { .. }));

        let err = parse_term(&g, "x y").unwrap_err();
        assert!(matches!(err.kind, TermParseKind::TrailingInput { .. }));
    }

    #[test]
    fn term_text_round_trip() {
        let g = GeneratorSet::new(["x", "y", "z"]).unwrap();
        for text in ["x", "(x * y)", "((x * y) / z)", "((x / x) * (y * z))"] {
            let t = parse_term(&g, text).unwrap();
            assert_eq!(format_term(&g, &t), text);
        }
    }

    #[test]
    fn tokenizer_handles_non_ascii_input() {
        let g = GeneratorSet::new(["α", "β"]).unwrap();
        let t = parse_term(&g, "(α * β)").unwrap();
        assert_eq!(
            t,
            QuandleTerm::star(QuandleTerm::Gen(0), QuandleTerm::Gen(1))
        );
        // Exotic whitespace splits names at char boundaries, no panic.
        let err = parse_term(&g, "(α\u{a0}x * β)").unwrap_err();
        assert!(matches!(err.kind, TermParseKind::ExpectedOperator { .. }));
        let err = parse_term(&g, "αβx").unwrap_err();
        assert!(matches!(err.kind, TermParseKind::UnknownGenerator { .. }));
    }

    #[test]
    fn eval_term_examples() {
        let g = GeneratorSet::new(["x", "y"]).unwrap();
        let q = r3();
        let a = Assignment::new(vec![2, 1]);
        assert_eq!(eval_term(&parse_term(&g, "x").unwrap(), &q, &a), 2);
        assert_eq!(eval_term(&parse_term(&g, "(x * x)").unwrap(), &q, &a), 2);
        assert_eq!(
            eval_term(&parse_term(&g, "((x * y) / y)").unwrap(), &q, &a),
            2
        );
    }

    #[test]
    fn hom_enumerate_free_generator() {
        let p = presentation("gens: x\n");
        let homs = hom_enumerate(&p, &r3());
        assert_eq!(homs.len(), 3);
        assert_eq!(
            homs,
            vec![
                Assignment::new(vec![0]),
                Assignment::new(vec![1]),
                Assignment::new(vec![2])
            ]
        );
    }

    #[test]
    fn hom_enumerate_trefoil_matches_brute_force() {
        let p = trefoil();
        let q = r3();
        assert_eq!(hom_enumerate(&p, &q).len(), 9);
        // Independent brute force over all assignments.
        let mut expected = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let images = vec![a, b, c];
                    let ok = p
                        .relations
                        .iter()
                        .all(|(l, r)| eval_images(l, &q, &images) == eval_images(r, &q, &images));
                    if ok {
                        expected.push(Assignment::new(images));
                    }
                }
            }
        }
        assert_eq!(hom_enumerate(&p, &q), expected);
    }

    #[test]
    fn hom_enumerate_trefoil_into_trivial() {
        let p = trefoil();
        let t2 = FiniteQuandle::trivial(2).unwrap();
        let homs = hom_enumerate(&p, &t2);
        assert_eq!(homs.len(), 2);
        assert!(homs.iter().all(|a| a.is_constant()));
    }

    #[test]
    fn restricted_enumeration_partitions_the_search() {
        let p = trefoil();
        let q = r3();
        let mut merged = Vec::new();
        for first in 0..3 {
            merged.extend(hom_enumerate_restricted(&p, &q, first));
        }
        merged.sort();
        assert_eq!(merged, hom_enumerate(&p, &q));
    }

    #[test]
    fn coloring_count_examples() {
        let c = coloring_count(&trefoil(), &r3());
        assert_eq!(c.count, 9);
        assert!(c.non_constant);

        let free = presentation("gens: x\n");
        let c = coloring_count(&free, &FiniteQuandle::trivial(4).unwrap());
        assert_eq!(c.count, 4);
        assert!(!c.non_constant);

        let c = coloring_count(&trefoil(), &FiniteQuandle::trivial(2).unwrap());
        assert_eq!(c.count, 2);
        assert!(!c.non_constant);
    }

    #[test]
    fn enveloping_presentation_examples() {
        let free = presentation("gens: x\n");
        let e = enveloping_presentation(&free);
        assert!(e.relations.is_empty());

        let p = presentation("gens: x y\nrel: (x * y) = x\n");
        let e = enveloping_presentation(&p);
        assert_eq!(
            e.relations,
            vec![(
                e.generators.parse_word("y^-1 x y").unwrap(),
                e.generators.parse_word("x").unwrap()
            )]
        );

        // Trivial quandle on two generators: both relations say xy = yx.
        let p = presentation("gens: x y\nrel: (x * y) = x\nrel: (y * x) = y\n");
        let e = enveloping_presentation(&p);
        assert_eq!(
            e.relations[0].0,
            e.generators.parse_word("y^-1 x y").unwrap()
        );
        assert_eq!(
            e.relations[1].0,
            e.generators.parse_word("x^-1 y x").unwrap()
        );
    }

    #[test]
    fn rewrite_closure_examples() {
        let g = GeneratorSet::new(["x", "y"]).unwrap();
        let free = QuandlePresentation::new(g.clone(), Vec::new());
        let xx = parse_term(&g, "(x * x)").unwrap();
        let x = parse_term(&g, "x").unwrap();
        let closure = rewrite_closure(&free, &xx, 1);
        assert!(closure.visited.contains(&x));

        let collapsing =
            QuandlePresentation::new(g.clone(), vec![(QuandleTerm::Gen(0), QuandleTerm::Gen(1))]);
        let closure = rewrite_closure(&collapsing, &x, 1);
        assert!(closure.visited.contains(&QuandleTerm::Gen(1)));

        let cancel = parse_term(&g, "((x * y) / y)").unwrap();
        let closure = rewrite_closure(&free, &cancel, 1);
        assert!(closure.visited.contains(&x));

        // Budget zero visits only the start.
        let closure = rewrite_closure(&free, &xx, 0);
        assert_eq!(closure.visited.len(), 1);
        assert!(closure.exhausted);
    }

    #[test]
    fn decide_idempotence_is_equal() {
        let g = GeneratorSet::new(["x"]).unwrap();
        let p = QuandlePresentation::new(g.clone(), Vec::new());
        let xx = parse_term(&g, "(x * x)").unwrap();
        let x = parse_term(&g, "x").unwrap();
        let outcome = decide_equal(&p, &xx, &x, 100, &[]);
        let Verdict::Equal(trace) = &outcome.verdict else {
            panic!("expected EQUAL, got {:?}", outcome.verdict);
        };
        assert_eq!(trace.start, xx);
        assert_eq!(trace.replay(&p).unwrap(), x);
    }

    #[test]
    fn decide_trefoil_generators_distinct() {
        let p = trefoil();
        let x = QuandleTerm::Gen(0);
        let y = QuandleTerm::Gen(1);
        let outcome = decide_equal(&p, &x, &y, 1_000, &[r3()]);
        let Verdict::Distinct(witness) = &outcome.verdict else {
            panic!("expected DISTINCT, got {:?}", outcome.verdict);
        };
        assert_eq!(witness.quandle_index, 0);
        assert_ne!(witness.left_value, witness.right_value);
        assert!(!witness.assignment.is_constant());
    }

    #[test]
    fn decide_without_resources_is_unknown() {
        let g = GeneratorSet::new(["x", "y"]).unwrap();
        let p = QuandlePresentation::new(g, Vec::new());
        let outcome = decide_equal(&p, &QuandleTerm::Gen(0), &QuandleTerm::Gen(1), 10, &[]);
        assert_eq!(outcome.verdict, Verdict::Unknown);
        assert_eq!(outcome.rewrite_expansions, 10);
        assert_eq!(outcome.hom_checks, 0);

        let outcome = decide_equal(&p, &QuandleTerm::Gen(0), &QuandleTerm::Gen(1), 0, &[]);
        assert_eq!(outcome.verdict, Verdict::Unknown);
        assert_eq!(outcome.rewrite_expansions, 0);
    }

    #[test]
    fn census_small_orders() {
        let census = quandle_census(2).unwrap();
        assert_eq!(census.len(), 2);
        assert_eq!(census[0].order(), 1);
        assert!(census[1].is_trivial());

        assert_eq!(
            quandle_census(7),
            Err(CensusCapExceeded {
                requested: 7,
                cap: 6
            })
        );
    }

    #[test]
    fn census_matches_exhaustive_filter() {
        // Independent oracle: filter every tuple of index-fixing columns by
        // the full triple-loop axiom check.
        fn count_tables(columns: &[Vec<&Permutation>], chosen: &mut Vec<usize>) -> usize {
            let n = columns.len();
            if chosen.len() == n {
                let rows: Vec<Vec<usize>> = (0..n)
                    .map(|x| (0..n).map(|y| columns[y][chosen[y]].apply(x)).collect())
                    .collect();
                let ok = (0..n).all(|x| {
                    (0..n).all(|y| {
                        (0..n).all(|z| rows[rows[x][y]][z] == rows[rows[x][z]][rows[y][z]])
                    })
                });
                return usize::from(ok);
            }
            let mut total = 0;
            for i in 0..columns[chosen.len()].len() {
                chosen.push(i);
                total += count_tables(columns, chosen);
                chosen.pop();
            }
            total
        }
        for n in 1..=4usize {
            let perms = crate::group::all_permutations(n);
            let columns: Vec<Vec<&Permutation>> = (0..n)
                .map(|y| perms.iter().filter(|p| p.apply(y) == y).collect())
                .collect();
            let expected = count_tables(&columns, &mut Vec::new());
            let census = quandle_census(n)
                .unwrap()
                .into_iter()
                .filter(|q| q.order() == n)
                .count();
            assert_eq!(census, expected, "order {n}");
        }
    }

    // Slow (order 5 filters ~8M candidate tables); release mode only:
    // cargo test -p quandle-core --release -- --ignored census_order_five
    #[test]
    #[ignore]
    fn census_order_five_matches_exhaustive_filter() {
        fn count_tables(columns: &[Vec<&Permutation>], chosen: &mut Vec<usize>) -> usize {
            let n = columns.len();
            if chosen.len() == n {
                let rows: Vec<Vec<usize>> = (0..n)
                    .map(|x| (0..n).map(|y| columns[y][chosen[y]].apply(x)).collect())
                    .collect();
                let ok = (0..n).all(|x| {
                    (0..n).all(|y| {
                        (0..n).all(|z| rows[rows[x][y]][z] == rows[rows[x][z]][rows[y][z]])
                    })
                });
                return usize::from(ok);
            }
            let mut total = 0;
            for i in 0..columns[chosen.len()].len() {
                chosen.push(i);
                total += count_tables(columns, chosen);
                chosen.pop();
            }
            total
        }
        let n = 5;
        let perms = crate::group::all_permutations(n);
        let columns: Vec<Vec<&Permutation>> = (0..n)
            .map(|y| perms.iter().filter(|p| p.apply(y) == y).collect())
            .collect();
        let expected = count_tables(&columns, &mut Vec::new());
        assert_eq!(expected, 404);
        let census = quandle_census(n)
            .unwrap()
            .into_iter()
            .filter(|q| q.order() == n)
            .count();
        assert_eq!(census, expected);
    }

    #[test]
    fn free_presentation_decide_agrees_with_free_quandle() {
        let g = GeneratorSet::new(["x", "y"]).unwrap();
        let p = QuandlePresentation::new(g.clone(), Vec::new());
        let terms = [
            parse_term(&g, "x").unwrap(),
            parse_term(&g, "(x * y)").unwrap(),
            parse_term(&g, "((x * y) / y)").unwrap(),
            parse_term(&g, "(y / x)").unwrap(),
        ];
        for a in &terms {
            for b in &terms {
                let in_free = eval_in_free(a).fq_equal(&eval_in_free(b));
                let outcome = decide_equal(&p, a, b, 200, &[]);
                match outcome.verdict {
                    Verdict::Equal(trace) => {
                        assert!(in_free, "EQUAL verdict on free-quandle-distinct terms");
                        assert_eq!(&trace.replay(&p).unwrap(), b);
                    }
                    Verdict::Distinct(_) => unreachable!("no library supplied"),
                    Verdict::Unknown => {}
                }
            }
        }
    }
}
