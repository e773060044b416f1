use mfkit::catalog::build_catalog;
use mfkit::kgroup::{
    expected_k0, harvest_relations, multirank, multirank_mf, present_k0, snf, Classification, Variant,
};
use mfkit::{make_ring, Family, Form, MatFac};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn table_for_every_family_up_to_dimension_five() {
    for fam in [Family::A, Family::D] {
        for d in 1..=5 {
            let ctx = make_ring(fam, d, Form::X).unwrap();
            for variant in [Variant::Cm, Variant::Stable] {
                let got = present_k0(&ctx, variant, 5).unwrap();
                assert_eq!(got.classification, expected_k0(fam, d, variant), "{} {variant:?}", ctx.spec());
            }
        }
    }
}

#[test]
fn base_values() {
    let k = |fam, d, v| present_k0(&make_ring(fam, d, Form::X).unwrap(), v, 3).unwrap().classification.to_string();
    assert_eq!(k(Family::A, 1, Variant::Cm), "Z");
    assert_eq!(k(Family::A, 1, Variant::Stable), "Z/2Z");
    assert_eq!(k(Family::D, 2, Variant::Cm), "Z + Z/2Z");
    assert_eq!(k(Family::A, 2, Variant::Stable), "Z");
    assert_eq!(k(Family::D, 1, Variant::Cm), "Z^2");
}

#[test]
fn d2_relations_include_the_periodic_sequence_and_iso() {
    let ctx = make_ring(Family::D, 2, Form::X).unwrap();
    let p = harvest_relations(&ctx, 1).unwrap();
    let col = |l: &str| p.generators.iter().position(|g| g == l).unwrap();
    let has = |pairs: &[(&str, i64)]| {
        p.relations.iter().any(|r| {
            r.iter().enumerate().all(|(j, x)| {
                let want = pairs.iter().find(|(l, _)| col(l) == j).map_or(0, |(_, c)| *c);
                *x == BigInt::from(want)
            })
        })
    };
    assert!(has(&[("[R]", 2), ("alpha+", -1), ("alpha-", -1)]));
    assert!(has(&[("alpha+", 1), ("alpha-", -1)]));
}

#[test]
fn stable_is_the_cm_group_modulo_r() {
    for (fam, d) in [(Family::A, 1), (Family::D, 1), (Family::A, 2), (Family::D, 2)] {
        let ctx = make_ring(fam, d, Form::X).unwrap();
        let p = harvest_relations(&ctx, 4).unwrap();
        let mut aug = p.relations.clone();
        let mut unit = vec![BigInt::from(0); p.generators.len()];
        unit[0] = BigInt::from(1);
        aug.push(unit);
        let via_row = snf(&aug, p.generators.len()).classification;
        assert_eq!(via_row, p.stable().classify());
        assert_eq!(via_row, present_k0(&ctx, Variant::Stable, 4).unwrap().classification);
    }
}

#[test]
fn multirank_specific_values() {
    let a1 = make_ring(Family::A, 1, Form::X).unwrap();
    let cat = build_catalog(&a1, 2).unwrap();
    assert_eq!(multirank(cat.entry("R").unwrap()).unwrap()[0].1, 2);
    assert_eq!(multirank(cat.entry("R/(x0)").unwrap()).unwrap()[0].1, 1);
    for form in [Form::X, Form::Uv] {
        let a2 = make_ring(Family::A, 2, form).unwrap();
        let cat = build_catalog(&a2, 3).unwrap();
        let ranks = |l: &str| multirank(cat.entry(l).unwrap()).unwrap().into_iter().map(|(_, r)| r).collect::<Vec<_>>();
        assert_eq!(ranks("R"), [1, 1]);
        assert_eq!(ranks("phi+:3"), [1, 1]);
        assert_eq!(ranks("R/(x0)"), [1, 0]);
    }
}

#[test]
fn multirank_is_additive_on_base_sequences() {
    for (fam, d) in [(Family::A, 1), (Family::D, 1), (Family::A, 2), (Family::D, 2)] {
        let cat = build_catalog(&make_ring(fam, d, Form::X).unwrap(), 4).unwrap();
        for c in cat.sequences_with_syzygies().unwrap() {
            let r = |m: &MatFac| multirank_mf(m).unwrap().into_iter().map(|(_, x)| x).collect::<Vec<_>>();
            let (l, m, n) = (r(&c.sub), r(&c.mid), r(&c.quot));
            let sum: Vec<u64> = l.iter().zip(&n).map(|(a, b)| a + b).collect();
            assert_eq!(sum, m, "{}", c.name);
        }
    }
}

#[test]
fn unstable_or_bad_bounds_are_errors() {
    let ctx = make_ring(Family::A, 1, Form::X).unwrap();
    assert!(present_k0(&ctx, Variant::Cm, 0).is_err());
    assert_eq!(harvest_relations(&ctx, 0).unwrap().classify(), Classification::new(1, &[]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn snf_postconditions(rows in 0usize..6, cols in 1usize..6, seed in prop::collection::vec(-20i64..=20, 36)) {
        let m: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(seed[i * 6 + j])).collect()).collect();
        let r = snf(&m, cols);
        prop_assert!(r.check(&m));
    }
}
