//! Symbolic free racks and free quandles on a finite generating set.
//!
//! A rack element is a pair `a^w` of a generator and a reduced group word.
//! The free quandle is the quotient by `a^w = a^{aw}`; stripping the maximal
//! leading power of the base generator from `w` picks the unique shortest
//! representative, so equality is structural. `embed` sends `a^w` to the
//! conjugate `w^-1 a w` inside the free group, giving a second, independent
//! model of the same quandle.
//!
//! Generating sets are finite. That restriction carries weight: with
//! infinitely many generators the free quandle has surjective
//! self-homomorphisms that are not injective (send each generator to its
//! predecessor and fix the first), so the Hopfian behavior exercised in the
//! test suite holds only at finite rank.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::free_group::{
    permutation_rep, GeneratorSet, GroupPresentation, GroupWord, Letter, SymmetricRep, WordError,
};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeQuandleError {
    #[error("elements are equal; nothing to separate")]
    EqualElements,
    #[error("free quandles need a non-empty generating set")]
    EmptyGeneratorSet,
    #[error("empty element text")]
    EmptyElement,
    #[error("expected `^` after the base generator, found {found:?}")]
    ExpectedCaret { found: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An element `a^w` of the free rack: no relation between `a` and `w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RackElement {
    pub gen: usize,
    pub word: GroupWord,
}

impl RackElement {
    pub fn new(gen: usize, word: GroupWord) -> Self {
        Self { gen, word }
    }
}

/// An element of the free quandle in normal form: the exponent word is
/// reduced and does not start with the base generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeQuandleElement {
    gen: usize,
    word: GroupWord,
}

/// Strip the maximal leading power of `gen` from the exponent word. Two rack
/// elements normalize equal exactly when they are equal in the free quandle.
pub fn normalize(element: &RackElement) -> FreeQuandleElement {
    let mut letters = element.word.letters();
    while let Some((first, rest)) = letters.split_first() {
        if first.gen == element.gen {
            letters = rest;
        } else {
            break;
        }
    }
    FreeQuandleElement {
        gen: element.gen,
        word: GroupWord::from_letters(letters.iter().copied()),
    }
}

impl FreeQuandleElement {
    /// Normal form of `a^w`.
    pub fn new(gen: usize, word: GroupWord) -> Self {
        normalize(&RackElement::new(gen, word))
    }

    /// The generator `a^1`.
    pub fn generator(gen: usize) -> Self {
        Self {
            gen,
            word: GroupWord::identity(),
        }
    }

    pub fn gen(&self) -> usize {
        self.gen
    }

    pub fn word(&self) -> &GroupWord {
        &self.word
    }

    /// `a^w * b^u = a^{w u^-1 b u}`.
    pub fn rack_op(&self, other: &Self) -> Self {
        let exponent = self
            .word
            .multiply(&GroupWord::generator(other.gen).conjugate(&other.word));
        Self::new(self.gen, exponent)
    }

    /// The unique `z` with `z * other = self`: `a^{w u^-1 b^-1 u}`.
    pub fn rack_op_inv(&self, other: &Self) -> Self {
        let conjugated_inverse =
            GroupWord::from_letters([Letter::neg(other.gen)]).conjugate(&other.word);
        Self::new(self.gen, self.word.multiply(&conjugated_inverse))
    }

    /// The embedding into free-group conjugation: `a^w -> w^-1 a w`.
    pub fn embed(&self) -> GroupWord {
        GroupWord::generator(self.gen).conjugate(&self.word)
    }

    /// Equality in the free quandle. Normal forms are canonical, so this is
    /// structural equality; debug builds cross-check against the embedding.
    pub fn fq_equal(&self, other: &Self) -> bool {
        let by_normal_form = self == other;
        debug_assert_eq!(by_normal_form, self.embed() == other.embed());
        by_normal_form
    }

    /// A finite separation witness for two distinct elements: permutations
    /// assigned to the generators such that the induced quandle homomorphism
    /// into the conjugation quandle of S_n tells them apart.
    pub fn separate(
        &self,
        other: &Self,
        rank: usize,
    ) -> Result<SeparationWitness, FreeQuandleError> {
        if self.fq_equal(other) {
            return Err(FreeQuandleError::EqualElements);
        }
        let g1 = self.embed();
        let g2 = other.embed();
        let difference = g2.invert().multiply(&g1);
        let rep = permutation_rep(&difference, rank)
            .expect("embeddings of distinct elements differ, so the quotient is nontrivial");
        let witness = SeparationWitness { rep };
        assert_ne!(
            witness.image_of(self),
            witness.image_of(other),
            "separation witness must distinguish its inputs"
        );
        Ok(witness)
    }
}

/// Generator-to-permutation assignment produced by `separate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationWitness {
    rep: SymmetricRep,
}

impl SeparationWitness {
    pub fn degree(&self) -> usize {
        self.rep.degree()
    }

    pub fn assignment(&self) -> &[Permutation] {
        self.rep.perms()
    }

    pub fn generator_image(&self, gen: usize) -> &Permutation {
        self.rep.perm(gen)
    }

    /// Image of a free-quandle element under the induced homomorphism into
    /// the conjugation quandle of S_n.
    pub fn image_of(&self, element: &FreeQuandleElement) -> Permutation {
        self.rep.image_of_word(&element.embed())
    }
}

/// The enveloping group of the free quandle on `generators`: the free-group
/// presentation with no relations.
pub fn enveloping_of_free(
    generators: &GeneratorSet,
) -> Result<GroupPresentation, FreeQuandleError> {
    if generators.is_empty() {
        return Err(FreeQuandleError::EmptyGeneratorSet);
    }
    Ok(GroupPresentation {
        generators: generators.clone(),
        relations: Vec::new(),
    })
}

/// Parse element text: `a ^ <word-text>` with a standalone caret, or a bare
/// generator name for `a^1`.
pub fn parse_element(
    generators: &GeneratorSet,
    text: &str,
) -> Result<FreeQuandleElement, FreeQuandleError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let Some((&name, rest)) = tokens.split_first() else {
        return Err(FreeQuandleError::EmptyElement);
    };
    let gen = generators
        .index_of(name)
        .ok_or_else(|| WordError::UnknownGenerator {
            name: name.to_string(),
        })?;
    let word = match rest.split_first() {
        None => GroupWord::identity(),
        Some((&"^", word_tokens)) => generators.parse_word(&word_tokens.join(" "))?,
        Some((&found, _)) => {
            return Err(FreeQuandleError::ExpectedCaret {
                found: found.to_string(),
            })
        }
    };
    Ok(FreeQuandleElement::new(gen, word))
}

pub fn format_element(generators: &GeneratorSet, element: &FreeQuandleElement) -> String {
    if element.word().is_identity() {
        generators.name(element.gen()).to_string()
    } else {
        let mut out = String::new();
        out.push_str(generators.name(element.gen()));
        out.push_str(" ^ ");
        out.push_str(&generators.format_word(element.word()));
        out
    }
}
