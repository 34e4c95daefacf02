//! Freely reduced words over a named generating set.
//!
//! Words are stored reduced at all times, so equality of group elements is
//! structural equality of the letter sequences. [`permutation_rep`] realizes
//! any nontrivial word inside a symmetric group; it is the constructive step
//! behind the free-quandle separation machinery.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("generator name {name:?} is empty or contains a reserved character")]
    BadGeneratorName { name: String },
    #[error("generator name {name:?} appears twice")]
    DuplicateGenerator { name: String },
    #[error("generator index {index} out of range for {rank} generators")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("unknown generator {name:?}")]
    UnknownGenerator { name: String },
    #[error("the identity word has no symmetric-group witness")]
    IdentityWord,
}

/// An ordered set of distinct generator names; the index of a generator is
/// its position.
///
/// Names may not contain whitespace or any of `^ ( ) * / =`, which are
/// reserved by the word and term grammars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            let reserved =
                |c: char| c.is_whitespace() || matches!(c, '^' | '(' | ')' | '*' | '/' | '=');
            if name.is_empty() || name.contains(reserved) {
                return Err(WordError::BadGeneratorName { name: name.clone() });
            }
            if names[..i].contains(name) {
                return Err(WordError::DuplicateGenerator { name: name.clone() });
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parse word text: whitespace-separated tokens, each `name` or
    /// `name^-1`. The empty string is the identity.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(name) => (name, true),
                None => (token, false),
            };
            let gen = self
                .index_of(name)
                .ok_or_else(|| WordError::UnknownGenerator {
                    name: name.to_string(),
                })?;
            letters.push(Letter { gen, inverse });
        }
        Ok(GroupWord::from_letters(letters))
    }

    pub fn format_word(&self, word: &GroupWord) -> String {
        let mut out = String::new();
        for (i, l) in word.letters().iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&self.names[l.gen]);
            if l.inverse {
                out.push_str("^-1");
            }
        }
        out
    }
}

/// One letter `g^{+1}` or `g^{-1}` of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Self {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(gen: usize) -> Self {
        Self {
            letters: vec![Letter::pos(gen)],
        }
    }

    /// Free reduction of an arbitrary letter sequence. Idempotent.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut reduced: Vec<Letter> = Vec::new();
        for l in letters {
            if reduced.last().is_some_and(|&t| t.cancels(l)) {
                reduced.pop();
            } else {
                reduced.push(l);
            }
        }
        Self { letters: reduced }
    }

    /// Reduction with generator indices checked against `rank`.
    pub fn reduce<I: IntoIterator<Item = Letter>>(
        letters: I,
        rank: usize,
    ) -> Result<Self, WordError> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        if let Some(l) = letters.iter().find(|l| l.gen >= rank) {
            return Err(WordError::GeneratorOutOfRange { index: l.gen, rank });
        }
        Ok(Self::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        Self::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> Self {
        // Reversing and flipping a reduced word keeps it reduced.
        Self {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate(&self, other: &Self) -> Self {
        other.invert().multiply(self).multiply(other)
    }
}

/// An assignment of one permutation per generator, extending to a group
/// homomorphism with words acting letter by letter, left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricRep {
    degree: usize,
    perms: Vec<Permutation>,
}

impl SymmetricRep {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, gen: usize) -> &Permutation {
        &self.perms[gen]
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    /// Image of a word under the extension to a homomorphism.
    pub fn image_of_word(&self, word: &GroupWord) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for l in word.letters() {
            let p = &self.perms[l.gen];
            acc = if l.inverse {
                acc.then(&p.inverse())
            } else {
                acc.then(p)
            };
        }
        acc
    }
}

/// Permutations on `len(g) + 1` points whose extension moves the point 0
/// under `g`, witnessing that `g` survives in a finite quotient.
///
/// Position `j` (0-indexed) of the word contributes the partial constraint
/// `j -> j+1` to its generator's permutation for a positive letter, and
/// `j+1 -> j` for a negative one; free reduction keeps the constraints
/// consistent. Each partial injection is completed by matching the unmapped
/// points to the unhit points in ascending order, so the construction is
/// deterministic.
pub fn permutation_rep(g: &GroupWord, rank: usize) -> Result<SymmetricRep, WordError> {
    if g.is_identity() {
        return Err(WordError::IdentityWord);
    }
    if let Some(max) = g.max_generator() {
        if max >= rank {
            return Err(WordError::GeneratorOutOfRange { index: max, rank });
        }
    }
    let n = g.len() + 1;
    let mut maps: Vec<Vec<Option<usize>>> = vec![vec![None; n]; rank];
    let mut hit: Vec<Vec<bool>> = vec![vec![false; n]; rank];
    for (j, l) in g.letters().iter().enumerate() {
        let (src, dst) = if l.inverse { (j + 1, j) } else { (j, j + 1) };
        let slot = &mut maps[l.gen][src];
        assert!(
            slot.is_none(),
            "partial maps conflict; the input word was not reduced"
        );
        assert!(
            !hit[l.gen][dst],
            "partial maps conflict; the input word was not reduced"
        );
        *slot = Some(dst);
        hit[l.gen][dst] = true;
    }
    let perms = maps
        .iter()
        .zip(&hit)
        .map(|(map, hit)| {
            let mut images: Vec<usize> = Vec::with_capacity(n);
            let mut unhit = (0..n).filter(|&p| !hit[p]);
            for slot in map {
                images.push(match slot {
                    Some(dst) => *dst,
                    None => unhit.next().expect("as many unmapped points as unhit"),
                });
            }
            Permutation::new(images).expect("completed partial injection is a bijection")
        })
        .collect();
    Ok(SymmetricRep { degree: n, perms })
}

/// A group presentation: generators plus relations given as word equalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: GeneratorSet,
    pub relations: Vec<(GroupWord, GroupWord)>,
}
