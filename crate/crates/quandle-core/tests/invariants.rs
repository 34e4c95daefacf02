//! Cross-module properties: word algebra laws, the two free-quandle models,
//! separation witnesses, and homomorphism behavior on finite quandles.

use proptest::prelude::*;

use quandle_core::free_group::{permutation_rep, GroupWord, Letter};
use quandle_core::free_quandle::{normalize, FreeQuandleElement, RackElement};
use quandle_core::group::FiniteGroup;
use quandle_core::present::{hom_enumerate, Assignment, QuandlePresentation, QuandleTerm};
use quandle_core::{FiniteQuandle, GeneratorSet, QuandleHom};

fn letters(max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(
        (0..3usize, any::<bool>()).prop_map(|(gen, inverse)| Letter { gen, inverse }),
        0..=max_len,
    )
}

fn word(max_len: usize) -> impl Strategy<Value = GroupWord> {
    letters(max_len).prop_map(GroupWord::from_letters)
}

fn element(max_len: usize) -> impl Strategy<Value = FreeQuandleElement> {
    (0..3usize, word(max_len)).prop_map(|(gen, w)| FreeQuandleElement::new(gen, w))
}

proptest! {
    #[test]
    fn reduce_is_idempotent(raw in letters(12)) {
        let once = GroupWord::from_letters(raw);
        let twice = GroupWord::from_letters(once.letters().iter().copied());
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn group_laws_on_reduced_words(u in word(12), v in word(12), w in word(12)) {
        prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
        prop_assert_eq!(u.multiply(&GroupWord::identity()), u.clone());
        prop_assert_eq!(GroupWord::identity().multiply(&u), u.clone());
        prop_assert!(u.multiply(&u.invert()).is_identity());
        prop_assert!(u.invert().multiply(&u).is_identity());
    }

    #[test]
    fn embedding_is_a_quandle_homomorphism(x in element(8), y in element(8)) {
        prop_assert_eq!(x.rack_op(&y).embed(), x.embed().conjugate(&y.embed()));
        prop_assert_eq!(x.rack_op_inv(&y).embed(), x.embed().conjugate(&y.embed().invert()));
    }

    #[test]
    fn free_quandle_axioms_hold_symbolically(x in element(8), y in element(8), z in element(8)) {
        prop_assert!(x.rack_op(&x).fq_equal(&x));
        prop_assert!(x.rack_op(&y).rack_op_inv(&y).fq_equal(&x));
        prop_assert!(x.rack_op_inv(&y).rack_op(&y).fq_equal(&x));
        let left = x.rack_op(&y).rack_op(&z);
        let right = x.rack_op(&z).rack_op(&y.rack_op(&z));
        prop_assert!(left.fq_equal(&right));
    }

    #[test]
    fn normalize_is_idempotent_and_embed_invariant(gen in 0..3usize, w in word(8)) {
        let raw = RackElement::new(gen, w);
        let normal = normalize(&raw);
        let again = normalize(&RackElement::new(normal.gen(), normal.word().clone()));
        prop_assert_eq!(&again, &normal);
        // The raw pair and its normal form embed identically.
        let raw_embed = GroupWord::generator(raw.gen).conjugate(&raw.word);
        prop_assert_eq!(raw_embed, normal.embed());
    }

    #[test]
    fn fq_equal_matches_embedding_equality(x in element(8), y in element(8)) {
        prop_assert_eq!(x.fq_equal(&y), x.embed() == y.embed());
    }

    #[test]
    fn separation_witness_is_a_partial_homomorphism(x in element(6), y in element(6)) {
        prop_assume!(!x.fq_equal(&y));
        let witness = x.separate(&y, 3).unwrap();
        prop_assert_ne!(witness.image_of(&x), witness.image_of(&y));
        // The induced map respects the operation on combinations of inputs.
        let combos = [
            x.clone(), y.clone(), x.rack_op(&y), y.rack_op(&x),
            x.rack_op(&y).rack_op(&x), y.rack_op_inv(&x),
        ];
        for a in &combos {
            for b in &combos {
                let image = witness.image_of(&a.rack_op(b));
                let expected = witness.image_of(a).conj_by(&witness.image_of(b));
                prop_assert_eq!(image, expected);
            }
        }
    }

    #[test]
    fn table_verifiers_never_panic(
        rows in prop::collection::vec(prop::collection::vec(0..10usize, 0..8), 0..8)
    ) {
        let _ = FiniteQuandle::verify(&rows);
        let _ = FiniteGroup::verify(&rows);
    }

    #[test]
    fn external_parsers_never_panic(
        term_text in "[ab()*/ =^0-9]{0,40}",
        word_text in "[ab^0-9 -]{0,30}",
        braid_text in "[strande=0-9 -]{0,30}",
        crossing_text in "[abcoverinutsg=+ \n-]{0,60}",
    ) {
        let gens = GeneratorSet::new(["a", "b"]).unwrap();
        let _ = quandle_core::present::parse_term(&gens, &term_text);
        let _ = quandle_core::present::parse_presentation(&crossing_text);
        let _ = gens.parse_word(&word_text);
        let _ = quandle_core::free_quandle::parse_element(&gens, &word_text);
        let _ = quandle_core::knot::parse_braid(&braid_text);
        let _ = quandle_core::knot::parse_crossing_list(&crossing_text);
    }

    #[test]
    fn map_preserves_star_iff_inverse_star(
        images in prop::collection::vec(0..6usize, 5),
        pair in 0..3usize,
    ) {
        let source = match pair {
            0 => FiniteQuandle::dihedral(5).unwrap(),
            1 => FiniteQuandle::trivial(5).unwrap(),
            _ => FiniteQuandle::core(&FiniteGroup::cyclic(5)),
        };
        let target = match pair {
            0 => FiniteQuandle::dihedral(6).unwrap(),
            1 => FiniteQuandle::conj(&FiniteGroup::symmetric(3)),
            _ => FiniteQuandle::trivial(6).unwrap(),
        };
        let n = source.order();
        let preserves_star = (0..n).all(|x| (0..n).all(|y| {
            images[source.op(x, y)] == target.op(images[x], images[y])
        }));
        let preserves_inv = (0..n).all(|x| (0..n).all(|y| {
            images[source.inv_op(x, y)] == target.inv_op(images[x], images[y])
        }));
        prop_assert_eq!(preserves_star, preserves_inv);
    }
}

#[test]
fn every_short_word_survives_its_permutation_rep() {
    // Exhaustive over nontrivial reduced words of length <= 8 on 3
    // generators: the represented word moves the point 0.
    fn extend(word: &mut Vec<Letter>, remaining: usize, count: &mut usize) {
        if !word.is_empty() {
            let g = GroupWord::from_letters(word.iter().copied());
            assert_eq!(g.len(), word.len(), "enumeration emits reduced words");
            let rep = permutation_rep(&g, 3).unwrap();
            let image = rep.image_of_word(&g);
            assert!(!image.is_identity());
            assert_eq!(image.apply(0), g.len(), "the walk ends at the far point");
            *count += 1;
        }
        if remaining == 0 {
            return;
        }
        for gen in 0..3usize {
            for inverse in [false, true] {
                let letter = Letter { gen, inverse };
                if word
                    .last()
                    .is_some_and(|last| last.gen == letter.gen && last.inverse != letter.inverse)
                {
                    continue;
                }
                word.push(letter);
                extend(word, remaining - 1, count);
                word.pop();
            }
        }
    }
    let mut count = 0;
    extend(&mut Vec::new(), 8, &mut count);
    // 6 * (1 + 5 + ... + 5^7) reduced nontrivial words.
    assert_eq!(count, 585_936);
}

#[test]
fn graph_of_an_automorphism_is_a_homomorphism() {
    // x -> (x, alpha(x)) into Q x Q is a quandle homomorphism.
    let q = FiniteQuandle::dihedral(5).unwrap();
    let square = FiniteQuandle::product(&[q.clone(), q.clone()]).unwrap();
    for y in 0..q.order() {
        let alpha = q.column(y);
        let images: Vec<usize> = (0..q.order())
            .map(|x| x * q.order() + alpha.apply(x))
            .collect();
        assert!(q.hom_check(&square, &images).is_ok());
    }
}

#[test]
fn product_projections_are_homomorphisms() {
    let r3 = FiniteQuandle::dihedral(3).unwrap();
    let t2 = FiniteQuandle::trivial(2).unwrap();
    let product = FiniteQuandle::product(&[r3.clone(), t2.clone()]).unwrap();
    let first: Vec<usize> = (0..product.order()).map(|i| i / 2).collect();
    let second: Vec<usize> = (0..product.order()).map(|i| i % 2).collect();
    assert!(product.hom_check(&r3, &first).is_ok());
    assert!(product.hom_check(&t2, &second).is_ok());
}

#[test]
fn identity_hom_separates_finite_quandles() {
    // Sanity for the witness-reporting pipeline: a finite quandle separates
    // its own elements through the identity homomorphism.
    let q = FiniteQuandle::conj(&FiniteGroup::symmetric(3));
    let identity: Vec<usize> = (0..q.order()).collect();
    let hom = q.hom_check(&q, &identity).unwrap();
    for x in 0..q.order() {
        for y in 0..q.order() {
            if x != y {
                assert_ne!(hom.apply(x), hom.apply(y));
            }
        }
    }
}

#[test]
fn surjective_endomorphisms_are_bijective_at_small_orders() {
    for q in [
        FiniteQuandle::trivial(3).unwrap(),
        FiniteQuandle::dihedral(3).unwrap(),
        FiniteQuandle::dihedral(5).unwrap(),
        FiniteQuandle::core(&FiniteGroup::cyclic(4)),
    ] {
        let n = q.order();
        let mut images = vec![0usize; n];
        'all_maps: loop {
            if q.hom_check(&q, &images).is_ok() {
                let mut hit = vec![false; n];
                for &v in &images {
                    hit[v] = true;
                }
                if hit.iter().all(|&h| h) {
                    let distinct: std::collections::BTreeSet<_> = images.iter().collect();
                    assert_eq!(
                        distinct.len(),
                        n,
                        "surjective endomorphism must be bijective"
                    );
                }
            }
            // Odometer over all self-maps.
            let mut i = 0;
            loop {
                if i == n {
                    break 'all_maps;
                }
                images[i] += 1;
                if images[i] < n {
                    break;
                }
                images[i] = 0;
                i += 1;
            }
        }
    }
}

#[test]
fn enumerated_homs_compose_functorially() {
    // Composing enumerated homs with a verified quandle hom lands in the
    // enumeration for the composite target.
    let gens = GeneratorSet::new(["x", "y"]).unwrap();
    let p = QuandlePresentation::new(
        gens,
        vec![(
            QuandleTerm::star(QuandleTerm::Gen(0), QuandleTerm::Gen(1)),
            QuandleTerm::Gen(0),
        )],
    );
    let r3 = FiniteQuandle::dihedral(3).unwrap();
    let rotate = r3.hom_check(&r3, &[1, 2, 0]).unwrap();
    let homs = hom_enumerate(&p, &r3);
    for a in &homs {
        let composed: Vec<usize> = a.images().iter().map(|&v| rotate.apply(v)).collect();
        assert!(homs.contains(&Assignment::new(composed)));
    }
}

#[test]
fn quandle_hom_accessors() {
    let hom = QuandleHom::from_images(vec![1, 1, 1]);
    assert!(hom.is_constant());
    assert_eq!(hom.images(), &[1, 1, 1]);
}

#[test]
fn core_values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<FiniteQuandle>();
    assert_send_sync::<quandle_core::group::FiniteGroup>();
    assert_send_sync::<quandle_core::group::PermutationGroup>();
    assert_send_sync::<GroupWord>();
    assert_send_sync::<FreeQuandleElement>();
    assert_send_sync::<QuandlePresentation>();
    assert_send_sync::<QuandleTerm>();
}
