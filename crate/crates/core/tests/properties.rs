//! Randomized invariants. The exhaustive sweeps cover small orders; these
//! sample further out.

use proptest::prelude::*;
use treehopf::algebra::{basis_words_up_to, scalar};
use treehopf::renorm::{dyson_check_electron, dyson_check_photon, make_toy_character, RingKind};
use treehopf::series::*;
use treehopf::tree::{self, enumerate, enumerate_up_to};
use treehopf::*;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use AlgebraTag::{Alpha, AlphaNc, Electron, Gamma};

fn maps() -> &'static HopfMaps {
    HopfMaps::standard()
}

fn tree_of_order(n: usize) -> impl Strategy<Value = Tree> {
    let level = enumerate(n);
    (0..level.len()).prop_map(move |i| level[i].clone())
}

fn tree_up_to(n: usize) -> impl Strategy<Value = Tree> {
    (0..=n).prop_flat_map(tree_of_order)
}

fn nonroot_tree_up_to(n: usize) -> impl Strategy<Value = Tree> {
    (1..=n).prop_flat_map(tree_of_order)
}

/// Up to three words of total order at most `n`, with small integer coefficients.
fn element(tag: AlgebraTag, n: usize) -> impl Strategy<Value = Element> {
    let words = basis_words_up_to(tag, n);
    prop::collection::vec((0..words.len(), -3i64..=3), 1..=3).prop_map(move |terms| {
        Element::from_terms(tag, terms.into_iter().map(|(i, c)| (words[i].clone(), scalar(c))))
    })
}

fn coproduct(tag: AlgebraTag, x: &Element) -> Tensor {
    maps().coproduct(x).unwrap_or_else(|e| panic!("coproduct on {tag}: {e}"))
}

fn on_word(tag: AlgebraTag, f: impl Fn(&Element) -> Tensor) -> impl Fn(&Word) -> Tensor {
    move |w| f(&Element::from_word(tag, w.clone()))
}

fn tags() -> impl Strategy<Value = AlgebraTag> {
    prop_oneof![Just(Gamma), Just(Electron), Just(Alpha), Just(AlphaNc)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn over_and_under_are_associative(a in tree_up_to(4), b in tree_up_to(4), c in tree_up_to(4)) {
        prop_assert_eq!(a.over(&b).over(&c), a.over(&b.over(&c)));
        prop_assert_eq!(a.under(&b).under(&c), a.under(&b.under(&c)));
        prop_assert_eq!(a.over(&b).order(), a.order() + b.order());
    }

    #[test]
    fn root_is_a_unit(t in tree_up_to(10)) {
        let e = Tree::root();
        prop_assert_eq!(e.over(&t), t.clone());
        prop_assert_eq!(t.over(&e), t.clone());
        prop_assert_eq!(e.under(&t), t.clone());
        prop_assert_eq!(t.under(&e), t);
    }

    #[test]
    fn mixed_decomposition(t in nonroot_tree_up_to(10)) {
        let (l, r) = t.un_graft().unwrap();
        prop_assert_eq!(l.over(&r.v_wrap()), t.clone());
        prop_assert_eq!(Tree::graft(&l, &Tree::root()).under(&r), t);
    }

    #[test]
    fn factorizations_rebuild_the_tree(t in tree_up_to(10)) {
        let parts = t.decompose_over();
        prop_assert_eq!(Tree::from_over_decomposition(parts.iter()), t.clone());
        let parts = t.decompose_under();
        prop_assert_eq!(Tree::from_under_decomposition(&parts), t);
    }

    #[test]
    fn text_round_trip(t in tree_up_to(10)) {
        prop_assert_eq!(tree::parse(&t.render()).unwrap(), t.clone());
        prop_assert_eq!(tree::parse(&t.canonical_name()).unwrap(), t);
    }

    #[test]
    fn ring_axioms((tag, x, y, z) in tags().prop_flat_map(|t| (Just(t), element(t, 3), element(t, 3), element(t, 3)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &Element::unit(tag), x.clone());
        if tag == Alpha {
            prop_assert_eq!(&x * &y, &y * &x);
        }
    }

    #[test]
    fn charge_embedding_is_multiplicative(s in tree_up_to(4), t in tree_up_to(4)) {
        for tag in [Alpha, AlphaNc] {
            let lhs = Element::embed_tree(tag, &s.over(&t));
            let rhs = &Element::embed_tree(tag, &s) * &Element::embed_tree(tag, &t);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn products_are_graded(x in element(Electron, 3), y in element(Electron, 3)) {
        let xy = &x * &y;
        for (w, _) in xy.terms() {
            let found = x.terms().any(|(a, _)| y.terms().any(|(b, _)| a.degree() + b.degree() == w.degree()));
            prop_assert!(found);
        }
    }

    #[test]
    fn pruning_coassociativity_on_longer_words(tag in prop_oneof![Just(Gamma), Just(Electron)], seed in 0usize..10_000) {
        let words = basis_words_up_to(tag, 6);
        let x = Element::from_word(tag, words[seed % words.len()].clone());
        let d = coproduct(tag, &x);
        let left = d.expand_slot(0, on_word(tag, |y| coproduct(tag, y)));
        let right = d.expand_slot(1, on_word(tag, |y| coproduct(tag, y)));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pruning_coproducts_are_multiplicative(x in element(Gamma, 3), y in element(Gamma, 3)) {
        for tag in [Gamma, Electron] {
            let (x, y) = (x.retag(tag).unwrap(), y.retag(tag).unwrap());
            let lhs = coproduct(tag, &(&x * &y));
            let rhs = &coproduct(tag, &x) * &coproduct(tag, &y);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn antipode_axiom(tag in tags(), seed in 0usize..10_000) {
        let words = basis_words_up_to(tag, 5);
        let x = Element::from_word(tag, words[seed % words.len()].clone());
        let d = coproduct(tag, &x);
        let unit = Tensor::from_element(&Element::unit(tag).scale(&x.counit()));
        let antipode = |w: &Word| maps().antipode(&Element::from_word(tag, w.clone())).unwrap();
        prop_assert_eq!(d.map_slot(0, antipode).slot_multiply(0, 1, 0).unwrap(), unit.clone());
        prop_assert_eq!(d.map_slot(1, antipode).slot_multiply(0, 1, 0).unwrap(), unit);
    }

    #[test]
    fn counit_laws(tag in tags(), seed in 0usize..10_000) {
        let words = basis_words_up_to(tag, 5);
        let x = Element::from_word(tag, words[seed % words.len()].clone());
        let d = coproduct(tag, &x);
        prop_assert_eq!(d.counit_slot(0), Tensor::from_element(&x));
        prop_assert_eq!(d.counit_slot(1), Tensor::from_element(&x));
    }

    #[test]
    fn pruning_term_count(t in tree_up_to(9)) {
        let d = maps().delta_p_gamma(&Element::embed_tree(Gamma, &t)).unwrap();
        prop_assert_eq!(d.len(), t.decompose_over().len() + 1);
    }

    #[test]
    fn charge_coaction_law_in_the_lift(t in tree_up_to(6)) {
        let delta = |w: &Word| maps().delta_small_nc(&Element::from_word(AlphaNc, w.clone())).unwrap();
        let d = delta(&Word::of_tree(AlphaNc, &t));
        let left = d.expand_slot(0, delta);
        let right = d.expand_slot(1, |w| maps().delta_alpha_nc(&Element::from_word(AlphaNc, w.clone())).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn electron_coaction_is_multiplicative(x in element(Electron, 3), y in element(Electron, 3)) {
        let lhs = maps().electron_renorm_coaction(&(&x * &y)).unwrap();
        let rhs = &maps().electron_renorm_coaction(&x).unwrap() * &maps().electron_renorm_coaction(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn intertwining(x in element(Gamma, 4)) {
        let sigma = |w: &Word| maps().sigma(&Element::from_word(Gamma, w.clone())).unwrap();
        let lhs = maps().delta_alpha(&maps().sigma(&x).unwrap()).unwrap();
        let rhs = maps().photon_renorm_coaction(&x).unwrap().map_slot(0, sigma);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_inverse_and_action(seed in any::<u64>(), matrix in any::<bool>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let dim = matrix.then_some(2);
        let n = 5;
        let f = TruncatedSeries::random_gp(&mut r, n, dim);
        let g = TruncatedSeries::random_gp(&mut r, n, dim);
        let phi = TruncatedSeries::random_gc(&mut r, n, None);
        prop_assert_eq!(f.try_mul(&series_inverse(&f).unwrap()).unwrap(), TruncatedSeries::one(n));
        let lhs = gp_action(&gp_multiply(&f, &g).unwrap(), &phi).unwrap();
        let rhs = gp_multiply(&gp_action(&f, &phi).unwrap(), &gp_action(&g, &phi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let inv = gc_inverse(&phi).unwrap();
        prop_assert_eq!(gc_compose(&phi, &inv).unwrap(), TruncatedSeries::alpha(n));
        prop_assert_eq!(TruncatedSeries::from_json(&f.to_json()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn dyson_identities_for_random_seeds(seed in 100u64..1_000_000, matrix in any::<bool>()) {
        let (kind, d) = if matrix { (RingKind::Matrix, 3) } else { (RingKind::Scalar, 1) };
        let ug = make_toy_character(Gamma, seed, kind, d, 3);
        let ue = make_toy_character(Electron, seed, kind, d, 3);
        let cg = make_toy_character(Alpha, seed, RingKind::Scalar, 1, 3);
        let ce = make_toy_character(Electron, seed ^ 0xff, RingKind::Scalar, 1, 3);
        prop_assert!(dyson_check_photon(maps(), &ug, &cg, 3).unwrap().passed());
        prop_assert!(dyson_check_electron(maps(), &ue, &cg, &ce, 3).unwrap().passed());
    }
}

#[test]
fn catalan_counts() {
    for n in 0..=10 {
        assert_eq!(enumerate(n).len() as u64, tree::catalan(n));
    }
    assert_eq!(enumerate_up_to(3).len(), 1 + 1 + 2 + 5);
}
