use foldmv::characters::{mv_character, twining_coefficient, twining_coefficient_by_filter};
use foldmv::folding::parse_sigma;
use foldmv::lusztig::transport;
use foldmv::polytope::{build_polytope, datum_along, enumerate_data, lies_in_weyl_hull};
use foldmv::weyl::all_reduced_words;
use foldmv::{
    Coweight, ExactCharacters, FoldedSystem, LiftConvention, LusztigDatum, Rational, ReducedWord,
    RootDatum, WeylGroup,
};
use proptest::prelude::*;

fn group(label: &str) -> WeylGroup {
    WeylGroup::new(RootDatum::new(label.parse().unwrap())).unwrap()
}

fn folded(label: &str, sigma: &str) -> FoldedSystem {
    let d = RootDatum::new(label.parse().unwrap());
    let perm = parse_sigma(&d, sigma).unwrap();
    FoldedSystem::from_datum(d, perm).unwrap()
}

fn all_words(g: &WeylGroup) -> Vec<ReducedWord> {
    all_reduced_words(g.datum(), g.longest_element(), 10_000).unwrap()
}

fn dominant_up_to(datum: &RootDatum, height: i64) -> Vec<Coweight> {
    let n = datum.rank();
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    loop {
        let mu = Coweight(v.clone());
        if datum.is_dominant(&mu) {
            out.push(mu);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            v[k] += 1;
            if v.iter().sum::<i64>() <= height {
                break;
            }
            v[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn polytope_is_independent_of_the_word() {
    let g = group("A3");
    let words = all_words(&g);
    let base = g.datum().longest_word();
    for values in [[1, 0, 2, 0, 1, 1], [0, 3, 0, 1, 0, 2], [2, 2, 2, 2, 2, 2]] {
        let d = LusztigDatum::new(base.clone(), values.to_vec()).unwrap();
        let p = build_polytope(&g, &d).unwrap();
        for word in &words {
            let moved = transport(&g, &d, word).unwrap();
            assert_eq!(build_polytope(&g, &moved).unwrap(), p, "{word}");
            assert_eq!(datum_along(&g, &p, word).unwrap(), moved);
        }
    }
}

#[test]
fn pseudo_weyl_inequalities() {
    let g = group("A3");
    let datum = g.datum();
    let word = datum.longest_word();
    let data = enumerate_data(&g, &word, &Coweight(vec![-2, -3, -2])).unwrap();
    assert!(!data.is_empty());
    for d in &data {
        let p = build_polytope(&g, d).unwrap();
        for w in 0..g.len() {
            for v in 0..g.len() {
                assert!(datum.leq_twisted(p.vertex(v), p.vertex(w), g.element(w)));
            }
        }
    }
}

#[test]
fn hull_test_matches_brute_force() {
    for (label, height) in [("A2", 4), ("A3", 3)] {
        let g = group(label);
        let datum = g.datum();
        let word = datum.longest_word();
        let fundamentals = datum.fundamental_weights::<Rational>();
        for lambda in dominant_up_to(datum, height) {
            for mu in datum.weights_of(&lambda).unwrap() {
                for d in enumerate_data(&g, &word, &(&mu - &lambda)).unwrap() {
                    let p = build_polytope(&g, &d).unwrap();
                    let brute = p.vertices().iter().all(|v| {
                        let shifted = v + &lambda;
                        fundamentals.iter().all(|xi| {
                            let top = datum.pair(&lambda, xi).unwrap();
                            g.elements().iter().all(|u| {
                                let moved = u.act_weight(datum, xi);
                                datum.pair(&shifted, &moved).unwrap() <= top
                            })
                        })
                    });
                    assert_eq!(lies_in_weyl_hull(&g, &p, &lambda).unwrap(), brute, "{label} {lambda} {d}");
                }
            }
        }
    }
}

#[test]
fn enumeration_size_is_word_independent() {
    let g = group("A3");
    let words = all_words(&g);
    for nu in [Coweight(vec![-1, -1, -1]), Coweight(vec![-2, -3, -2]), Coweight(vec![-3, -1, -2])] {
        let sizes: Vec<usize> = words
            .iter()
            .map(|w| enumerate_data(&g, w, &nu).unwrap().len())
            .collect();
        assert!(sizes.iter().all(|&s| s == sizes[0]), "{nu}: {sizes:?}");
    }
}

#[test]
fn mv_character_has_weyl_dimension() {
    let g = group("A3");
    let sys = ExactCharacters::of_datum(g.datum());
    let word = g.datum().longest_word();
    for lambda in [Coweight(vec![1, 1, 1]), Coweight(vec![1, 2, 1]), Coweight(vec![2, 2, 2])] {
        let ch = mv_character(&g, &lambda, &word).unwrap();
        assert_eq!(ch.total(), sys.weyl_dimension(&lambda).unwrap(), "{lambda}");
        assert_eq!(ch, sys.weyl_character(&lambda).unwrap());
    }
}

#[test]
fn sigma_action_has_the_order_of_sigma() {
    for (label, sigma) in [("A3", "flip"), ("D4", "triality"), ("D4", "flip")] {
        let sys = folded(label, sigma);
        let g = sys.group();
        let word = g.datum().longest_word();
        let nu = Coweight(vec![-1; g.datum().rank()]).scaled(2);
        for d in enumerate_data(g, &word, &nu).unwrap().into_iter().step_by(7) {
            let p = build_polytope(g, &d).unwrap();
            let mut q = p.clone();
            for _ in 0..sys.data().order() {
                q = sys.apply_sigma(&q);
            }
            assert_eq!(q, p);
        }
    }
}

#[test]
fn theta_p_preserves_coweights() {
    let sys = folded("A4", "flip");
    let word = sys.lifted_longest_word(LiftConvention::Ascending);
    let fg = sys.folded_group();
    for nu in [Coweight(vec![-1, -1]), Coweight(vec![-2, -1]), Coweight(vec![-1, -2])] {
        let embedded = sys.data().embed(&nu).unwrap();
        for d in enumerate_data(sys.group(), &word, &embedded).unwrap() {
            if !sys.data().is_block_constant(&word, &d).unwrap() {
                continue;
            }
            let p = build_polytope(sys.group(), &d).unwrap();
            let q = sys.theta_p(&p).unwrap();
            assert_eq!(q.vertex(fg.longest_index()), &nu);
            assert_eq!(q.datum().coweight(fg.datum()), nu);
            assert_eq!(q.datum(), &sys.data().fold_datum(&d).unwrap());
        }
    }
}

#[test]
fn twining_coefficients_agree_with_filtered_enumeration() {
    let sys = folded("A4", "flip");
    let lambda = Coweight(vec![1, 1, 1, 1]);
    for mu in [Coweight(vec![1, 1, 1, 1]), Coweight(vec![0, 0, 0, 0]), Coweight(vec![1, 0, 0, 1])] {
        assert_eq!(
            twining_coefficient(&sys, &lambda, &mu).unwrap(),
            twining_coefficient_by_filter(&sys, &lambda, &mu).unwrap(),
            "{mu}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transport_preserves_coweight_and_inverts(
        values in proptest::collection::vec(0u64..4, 10),
        pick in 0usize..768,
    ) {
        let g = group("A4");
        let words = all_words(&g);
        let d = LusztigDatum::new(g.datum().longest_word(), values).unwrap();
        let target = &words[pick % words.len()];
        let moved = transport(&g, &d, target).unwrap();
        prop_assert_eq!(moved.coweight(g.datum()), d.coweight(g.datum()));
        prop_assert_eq!(transport(&g, &moved, d.word()).unwrap(), d);
    }

    #[test]
    fn block_constant_data_fold_and_unfold(values in proptest::collection::vec(0u64..5, 4)) {
        let sys = folded("A4", "flip");
        let word = ReducedWord::one_based(&[1, 2, 1, 2]);
        let f = LusztigDatum::new(word, values).unwrap();
        for convention in [LiftConvention::Ascending, LiftConvention::Descending] {
            let d = sys.data().unfold_datum(&f, convention).unwrap();
            prop_assert!(sys.data().is_block_constant(d.word(), &d).unwrap());
            prop_assert_eq!(sys.data().fold_datum(&d).unwrap(), f.clone());
            prop_assert_eq!(
                sys.data().embed(&f.coweight(sys.data().folded())).unwrap(),
                d.coweight(sys.data().datum())
            );
            let p = build_polytope(sys.group(), &d).unwrap();
            prop_assert!(sys.is_sigma_invariant(&p));
        }
    }

    #[test]
    fn float_and_exact_characters_agree(a in 0i64..3, b in 0i64..3) {
        let d = RootDatum::new("B2".parse().unwrap());
        let lambda = Coweight(vec![a, b]);
        prop_assume!(d.is_dominant(&lambda));
        let exact = ExactCharacters::of_datum(&d).weyl_character(&lambda).unwrap();
        let float = foldmv::FloatCharacters::of_datum(&d).weyl_character(&lambda).unwrap();
        prop_assert_eq!(exact, float);
    }
}
