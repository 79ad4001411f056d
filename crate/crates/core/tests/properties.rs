use num_bigint::BigInt;
use proptest::prelude::*;

use milnorkit::magnus::magnus_expand;
use milnorkit::oracle::naive_series_multiply;
use milnorkit::{
    format_word, lcs_min_weight, parse_word, Letter, MinWeight, MultiIndex, Series, Word,
};

fn word(n: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=n, any::<bool>()), 0..=max_len).prop_map(|v| {
        Word::reduce(
            v.into_iter()
                .map(|(i, inv)| Letter::from_signed(i, if inv { -1 } else { 1 })),
        )
    })
}

fn sparse_series(n: usize, cap: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(
        (prop::collection::vec(1..=n as u16, 0..=cap), -5i64..=5),
        0..12,
    )
    .prop_map(move |terms| {
        Series::from_terms(
            n,
            cap,
            terms
                .into_iter()
                .map(|(i, c)| (MultiIndex::new(i), BigInt::from(c))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn words_are_reduced(w in word(3, 20)) {
        prop_assert_eq!(Word::reduce(w.letters().to_vec()), w.clone());
        for pair in w.letters().windows(2) {
            prop_assert_ne!(pair[0], pair[1].inverse());
        }
    }

    #[test]
    fn group_laws(u in word(3, 10), v in word(3, 10), w in word(3, 10)) {
        prop_assert_eq!(u.multiply(&v).multiply(&w), u.multiply(&v.multiply(&w)));
        prop_assert!(u.multiply(&u.invert()).is_identity());
        prop_assert_eq!(u.multiply(&v).invert(), v.invert().multiply(&u.invert()));
    }

    #[test]
    fn format_round_trips(w in word(4, 16)) {
        prop_assert_eq!(parse_word(&format_word(&w), 4).unwrap(), w);
    }

    #[test]
    fn magnus_is_a_homomorphism(u in word(3, 12), v in word(3, 12), cap in 1usize..=6) {
        let a: Series = magnus_expand(&u, 3, cap).unwrap();
        let b: Series = magnus_expand(&v, 3, cap).unwrap();
        let ab: Series = magnus_expand(&u.multiply(&v), 3, cap).unwrap();
        prop_assert_eq!(a.multiply(&b).unwrap(), ab);
        prop_assert_eq!(a.inverse().unwrap(), magnus_expand(&u.invert(), 3, cap).unwrap());
    }

    #[test]
    fn fast_and_naive_products_agree(a in sparse_series(3, 5), b in sparse_series(3, 5)) {
        prop_assert_eq!(a.multiply(&b).unwrap(), naive_series_multiply(&a, &b).unwrap());
    }

    #[test]
    fn truncation_commutes_with_products(a in sparse_series(2, 6), b in sparse_series(2, 6), c in 1usize..=6) {
        let lhs = a.multiply(&b).unwrap().truncated(c).unwrap();
        let rhs = a.truncated(c).unwrap().multiply(&b.truncated(c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fixed_width_agrees_with_bigint(w in word(4, 12), cap in 1usize..=6) {
        let big: Series = magnus_expand(&w, 4, cap).unwrap();
        let small = magnus_expand::<i64>(&w, 4, cap).unwrap();
        prop_assert_eq!(small.convert::<BigInt>().unwrap(), big);
    }

    #[test]
    fn serialized_terms_are_sorted(w in word(3, 10)) {
        let s: Series = magnus_expand(&w, 3, 4).unwrap();
        let keys: Vec<MultiIndex> = s.terms().map(|(i, _)| i).collect();
        prop_assert!(keys.windows(2).all(|p| p[0] < p[1]));
        let lines = s.to_lines();
        prop_assert_eq!(lines[0].as_str(), "1 .");
    }

    #[test]
    fn commutators_raise_depth(u in word(3, 6), v in word(3, 6)) {
        let du = lcs_min_weight(&u, 6).unwrap().known_depth();
        let dv = lcs_min_weight(&v, 6).unwrap().known_depth();
        let c = lcs_min_weight(&u.commutator(&v), 6).unwrap();
        prop_assert!(c.known_depth() >= (du + dv).min(7), "{} {} {:?}", du, dv, c.min_nonzero_weight);
    }
}

#[test]
fn empty_word_has_no_weight() {
    let r = lcs_min_weight(&Word::identity(), 5).unwrap();
    assert_eq!(r.min_nonzero_weight, MinWeight::AtLeast(6));
}
