use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use milnorkit::chen_milnor::{longitude_series, reduce_longitude};
use milnorkit::dwyer::{
    check_surgery, dwyer_number, family_k, validate_surgery, SurgeryPresentation,
};
use milnorkit::milnor::{milnor_table, mu_bar};
use milnorkit::oracle::oracle_longitude;
use milnorkit::{
    magnus_expand, parse_pd, Error, Guards, LinkDiagram, MinWeight, MultiIndex, Series,
};

const FIXTURES: [&str; 10] = [
    "hopf",
    "hopf_alt",
    "unlink2",
    "whitehead",
    "borromean",
    "borromean_alt",
    "w3br",
    "k1",
    "k2",
    "k3",
];

const TREFOIL: &str = r#"{"crossings":[[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#;
const FIGURE_EIGHT: &str = r#"{"crossings":[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]}"#;

fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/fixtures/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn fixture(name: &str) -> LinkDiagram {
    parse_pd(&fixture_text(name)).unwrap()
}

fn all_diagrams() -> Vec<(String, LinkDiagram)> {
    let mut v: Vec<_> = FIXTURES
        .iter()
        .map(|n| (n.to_string(), fixture(n)))
        .collect();
    v.push(("trefoil".into(), parse_pd(TREFOIL).unwrap()));
    v.push(("figure eight".into(), parse_pd(FIGURE_EIGHT).unwrap()));
    v
}

#[test]
fn linking_numbers_are_symmetric() {
    for (name, d) in all_diagrams() {
        let lk = d.linking_matrix();
        for (i, row) in lk.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, lk[j][i], "{name}");
            }
        }
    }
}

#[test]
fn presentation_counts() {
    for (name, d) in all_diagrams() {
        let p = d.wirtinger();
        assert_eq!(p.relations.len(), d.n_crossings(), "{name}");
        assert_eq!(
            p.n_generators,
            d.n_arcs() + d.zero_crossing_components(),
            "{name}"
        );
        for r in &p.relations {
            assert_eq!(
                p.component_of(r.under_in),
                p.component_of(r.under_out),
                "{name}"
            );
            assert_eq!(p.component_of(r.over), p.component_of(r.over_out), "{name}");
        }
    }
}

#[test]
fn longitudes_abelianize_to_linking_rows() {
    for (name, d) in all_diagrams() {
        let p = d.wirtinger();
        let lk = d.linking_matrix();
        for i in 1..=d.n_components() {
            let l = p.longitude(i).unwrap();
            assert_eq!(l.abelianization(&p), lk[i - 1], "{name}, component {i}");
        }
    }
}

#[test]
fn expected_first_weights() {
    let g = Guards::default();
    for (name, cap, expected) in [
        ("hopf", 4, MinWeight::Exact(2)),
        ("unlink2", 6, MinWeight::AtLeast(7)),
        ("whitehead", 5, MinWeight::Exact(4)),
        ("borromean", 4, MinWeight::Exact(3)),
        ("w3br", 7, MinWeight::Exact(6)),
    ] {
        let t = milnor_table(&fixture(name), cap, &g).unwrap();
        assert_eq!(t.first_nonvanishing, expected, "{name}");
    }
}

#[test]
fn hopf_witnesses_both_orders() {
    let t = milnor_table(&fixture("hopf"), 3, &Guards::default()).unwrap();
    let w: Vec<MultiIndex> = t.witnesses().iter().map(|v| v.index.clone()).collect();
    assert_eq!(
        w,
        vec![MultiIndex::from([1u16, 2]), MultiIndex::from([2u16, 1])]
    );
}

#[test]
fn borromean_longitude_coefficient() {
    let d = fixture("borromean");
    let p = d.wirtinger();
    let g = Guards::default();
    let w = reduce_longitude(&p, &p.longitude(3).unwrap(), 3, &g).unwrap();
    let s: Series = magnus_expand(&w, 3, 2).unwrap();
    assert!(s.coefficient(&[1u16, 2].into()).unwrap().abs().is_one());
    let o = oracle_longitude(&p, 3, 3).unwrap();
    let so: Series = magnus_expand(&o, 3, 2).unwrap();
    assert_eq!(
        so.coefficient(&[1u16, 2].into()).unwrap(),
        s.coefficient(&[1u16, 2].into()).unwrap()
    );
    let mu = mu_bar(&d, &[1u16, 2, 3].into(), 3, &g).unwrap();
    assert_eq!(mu.value, s.coefficient(&[1u16, 2].into()).unwrap());
}

#[test]
fn whitehead_longitude_depth() {
    let p = fixture("whitehead").wirtinger();
    let w = reduce_longitude(&p, &p.longitude(1).unwrap(), 5, &Guards::default()).unwrap();
    let s: Series = magnus_expand(&w, 2, 4).unwrap();
    assert_eq!(s.min_nonzero_weight(), Some(3));
}

#[test]
fn oracle_agrees_with_level_schedule() {
    let g = Guards::default();
    let mut small: Vec<(String, LinkDiagram)> = all_diagrams()
        .into_iter()
        .filter(|(_, d)| d.n_crossings() <= 11)
        .collect();
    small.push(("trefoil".into(), parse_pd(TREFOIL).unwrap()));
    for (name, d) in small {
        let p = d.wirtinger();
        let n = d.n_components();
        for q in 2..=4 {
            let steps = q;
            for i in 1..=n {
                let main = reduce_longitude(&p, &p.longitude(i).unwrap(), q, &g).unwrap();
                let oracle = oracle_longitude(&p, i, steps).unwrap();
                let a: Series = magnus_expand(&main, n, q - 1).unwrap();
                let b: Series = magnus_expand(&oracle, n, q - 1).unwrap();
                assert_eq!(a, b, "{name}, component {i}, level {q}");
            }
        }
    }
}

#[test]
fn series_and_word_routes_agree_on_fixtures() {
    let g = Guards::default();
    for name in ["hopf", "whitehead", "borromean"] {
        let p = fixture(name).wirtinger();
        let n = p.n_components();
        for q in 2..=4 {
            let series = longitude_series::<BigInt>(&p, q, &g).unwrap();
            for i in 1..=n {
                let w = reduce_longitude(&p, &p.longitude(i).unwrap(), q, &g).unwrap();
                let m: Series = magnus_expand(&w, n, q - 1).unwrap();
                assert_eq!(series[i - 1], m, "{name}, component {i}, level {q}");
            }
        }
    }
}

#[test]
fn two_extra_levels_change_nothing() {
    let g = Guards::default();
    for name in ["whitehead", "borromean", "w3br"] {
        let p = fixture(name).wirtinger();
        for k in 2..=6 {
            let a = longitude_series::<i64>(&p, k, &g).unwrap();
            let b = longitude_series::<i64>(&p, k + 2, &g).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_eq!(*x, y.truncated(k - 1).unwrap(), "{name}, level {k}");
            }
        }
    }
}

#[test]
fn indeterminacy_is_normalized() {
    let g = Guards::default();
    for name in ["hopf", "whitehead", "borromean"] {
        let t = milnor_table(&fixture(name), 5, &g).unwrap();
        for v in t.entries() {
            if v.index.weight() == 2 {
                assert!(v.modulus.is_zero(), "{name} {v}");
            }
            if !v.modulus.is_zero() {
                assert!(!v.value.is_negative() && v.value < v.modulus, "{name} {v}");
            }
        }
    }
}

#[test]
fn first_weight_invariants_are_well_defined() {
    for name in ["whitehead", "borromean", "w3br"] {
        let t = milnor_table(&fixture(name), 6, &Guards::default()).unwrap();
        for v in t.witnesses() {
            assert!(v.modulus.is_zero(), "{name} {v}");
        }
    }
}

#[test]
fn knots_have_trivial_tables() {
    for json in [TREFOIL, FIGURE_EIGHT] {
        let t = milnor_table(&parse_pd(json).unwrap(), 6, &Guards::default()).unwrap();
        assert!(t.entries().all(|v| v.value.is_zero()));
        assert_eq!(t.first_nonvanishing, MinWeight::AtLeast(7));
    }
}

#[test]
fn sublinks_of_brunnian_links_are_trivial() {
    let g = Guards::default();
    for name in ["borromean", "w3br"] {
        let d = fixture(name);
        for keep in [[1, 2], [1, 3], [2, 3], [3, 1]] {
            let s = d.sublink(&keep).unwrap();
            assert_eq!(s.n_components(), 2);
            let t = milnor_table(&s, 5, &g).unwrap();
            assert_eq!(
                t.first_nonvanishing,
                MinWeight::AtLeast(6),
                "{name} {keep:?}"
            );
        }
    }
}

#[test]
fn reordering_permutes_indices() {
    let g = Guards::default();
    let d = fixture("borromean");
    let t = milnor_table(&d, 3, &g).unwrap();
    let r = milnor_table(&d.with_component_order(&[2, 3, 1]).unwrap(), 3, &g).unwrap();
    // new component k is old order[k-1]
    let old = t.get(&[2u16, 3, 1].into()).unwrap();
    let new = r.get(&[1u16, 2, 3].into()).unwrap();
    assert_eq!(old.value, new.value);
}

#[test]
fn json_table_matches_entries() {
    let t = milnor_table(&fixture("borromean"), 3, &Guards::default()).unwrap();
    let v = t.to_json();
    assert_eq!(v["first_nonvanishing"], 3);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9 + 27);
    assert_eq!(entries[0]["index"], serde_json::json!([1, 1]));
    let e = entries
        .iter()
        .find(|e| e["index"] == serde_json::json!([1, 2, 3]))
        .unwrap();
    assert_eq!(e["value"].to_string(), "1");
    assert_eq!(e["modulus"].to_string(), "0");
}

#[test]
fn family_dwyer_numbers() {
    let g = Guards::default();
    for i in 1..=3 {
        let s = family_k(i).unwrap();
        let cap = 2 * i + 2;
        let r = dwyer_number(&s, cap, &g).unwrap();
        assert_eq!(r.dwyer_number, MinWeight::Exact(2 * i + 2), "K{i}");
        assert_eq!(r.massey_weight, Some(2 * i + 2));
        assert_eq!(r.longitude_min_weight, MinWeight::Exact(2 * i + 1));
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            assert!(w.index.indices().contains(&1), "K{i}: {}", w.index);
        }
    }
}

#[test]
fn k1_report_text() {
    let r = dwyer_number(&family_k(1).unwrap(), 5, &Guards::default()).unwrap();
    assert_eq!(
        r.summary(),
        "D(K) = 4; longitude ∈ G_3 \\ G_4; first Massey weight 4"
    );
    assert_eq!(r.cap_used, 5);
}

#[test]
fn low_cap_gives_lower_bound() {
    let r = dwyer_number(&family_k(2).unwrap(), 5, &Guards::default()).unwrap();
    assert_eq!(r.dwyer_number, MinWeight::AtLeast(6));
    assert_eq!(r.massey_weight, None);
}

#[test]
fn surgered_order_does_not_matter() {
    let g = Guards::default();
    for (i, perms) in [
        (2, vec![vec![2, 1]]),
        (3, vec![vec![3, 1, 2], vec![2, 3, 1]]),
    ] {
        let s = family_k(i).unwrap();
        let base = dwyer_number(&s, 2 * i + 2, &g).unwrap().dwyer_number;
        for p in perms {
            let r = dwyer_number(&s.permute_surgered(&p).unwrap(), 2 * i + 2, &g).unwrap();
            assert_eq!(r.dwyer_number, base, "K{i} {p:?}");
        }
    }
}

#[test]
fn whitehead_surgery_passes_validation() {
    let s = SurgeryPresentation::new(&fixture("whitehead"), 1, &[2], vec![0], true).unwrap();
    let report = validate_surgery(&s, 5, &Guards::default()).unwrap();
    assert!(report.passed());
}

#[test]
fn linked_surgery_curves_are_rejected() {
    // a split unknot K next to a Hopf link used as U
    let s = SurgeryPresentation::parse(
        r#"{"crossings":[[1,3,2,4],[3,1,4,2]],"zero_crossing_components":1,
            "knot_component":3,"surgered":[1,2],"framings":[0,0],"unlink_assertion":true}"#,
    )
    .unwrap();
    match validate_surgery(&s, 4, &Guards::default()) {
        Err(Error::Hypothesis { condition, .. }) => {
            assert_eq!(condition, "surgered components pairwise unlinked")
        }
        other => panic!("{other:?}"),
    }
    let report = check_surgery(&s, 4, &Guards::default()).unwrap();
    assert_eq!(report.checks.iter().filter(|c| !c.passed).count(), 1);
}

#[test]
fn borromean_sublink_is_not_an_unlink() {
    // K split from the Borromean rings, which pass the pairwise test
    let d = fixture("borromean");
    let s = SurgeryPresentation::new(&d, 1, &[2, 3], vec![0, 0], true).unwrap();
    let with_k = SurgeryPresentation::new(
        &parse_pd(&fixture_text("borromean").replace(
            "\"components\"",
            "\"zero_crossing_components\": 1, \"components\"",
        ))
        .unwrap(),
        4,
        &[1, 2, 3],
        vec![0, 0, 0],
        true,
    )
    .unwrap();
    assert!(validate_surgery(&s, 4, &Guards::default()).is_ok());
    match validate_surgery(&with_k, 4, &Guards::default()) {
        Err(Error::Hypothesis { condition, .. }) => {
            assert_eq!(condition, "surgered sublink has vanishing invariants")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn nonzero_framing_is_rejected() {
    let s = SurgeryPresentation::new(&fixture("whitehead"), 1, &[2], vec![1], true).unwrap();
    assert!(matches!(
        validate_surgery(&s, 4, &Guards::default()),
        Err(Error::Hypothesis { .. })
    ));
}

#[test]
fn resource_guard_is_reported() {
    let g = Guards {
        max_terms: 50,
        ..Guards::default()
    };
    let e = dwyer_number(&family_k(3).unwrap(), 8, &g).unwrap_err();
    assert!(
        matches!(
            e,
            Error::Resource {
                what: "series terms",
                ..
            }
        ),
        "{e}"
    );
}

#[test]
fn mu_bar_matches_table() {
    let g = Guards::default();
    let d = fixture("whitehead");
    let t = milnor_table(&d, 4, &g).unwrap();
    for v in t.weight(4) {
        let single = mu_bar(&d, &v.index, 4, &g).unwrap();
        assert_eq!(&single, v);
    }
    let v = mu_bar(&d, &[1u16, 1, 2, 2].into(), 4, &g).unwrap();
    assert!(v.value.abs().is_one() && v.modulus.is_zero());
    assert_eq!(v.modulus, BigInt::zero());
}
