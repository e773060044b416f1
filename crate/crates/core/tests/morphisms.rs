use mfkit::catalog::get_sequences;
use mfkit::homology::{graded_exactness_check, ModulePresentation};
use mfkit::{build_catalog, make_ring, Ctx, Family, Form, GaussRat, MFMorphism, Mat, MatFac, Poly};
use proptest::prelude::*;

fn small_poly(ctx: &Ctx, coeffs: &[(i64, [i32; 3])]) -> Poly {
    let n = ctx.nvars();
    coeffs.iter().fold(ctx.zero(), |acc, (c, e)| {
        let mut exps = vec![0; n];
        for (k, x) in e.iter().enumerate().take(n) {
            exps[k] = *x;
        }
        acc + Poly::monomial(GaussRat::ratio(*c, 1), &exps)
    })
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, [i32; 3])>> {
    prop::collection::vec((-3i64..=3, [0i32..=2, 0i32..=2, 0i32..=2]), 0..3)
}

fn scaled(m: &MFMorphism, c: &Poly) -> MFMorphism {
    MFMorphism { p: m.p.scale_poly(c), q: m.q.scale_poly(c), ..m.clone() }
}

#[test]
fn lift_of_identity_is_identity() {
    let ctx = make_ring(Family::D, 2, Form::Uv).unwrap();
    for e in &build_catalog(&ctx, 3).unwrap().entries {
        let lifted = MFMorphism::identity(&e.mf).knorrer_lift().unwrap();
        let id = MFMorphism::identity(&e.mf.knorrer().unwrap());
        assert_eq!((lifted.p, lifted.q), (id.p, id.q), "{}", e.label);
    }
}

#[test]
fn lifted_sequence_maps_are_morphisms() {
    for (fam, d) in [(Family::A, 1), (Family::D, 1), (Family::A, 2), (Family::D, 2)] {
        let ctx = make_ring(fam, d, Form::Uv).unwrap();
        for c in get_sequences(&ctx, 3).unwrap() {
            c.inclusion.knorrer_lift().unwrap().check().unwrap();
            c.projection.knorrer_lift().unwrap().check().unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lift_preserves_composition(k in 0usize..64, c1 in coeffs(), c2 in coeffs()) {
        let ctx = make_ring(Family::D, 1, Form::Uv).unwrap();
        let seqs = get_sequences(&ctx, 3).unwrap();
        let s = &seqs[k % seqs.len()];
        let (a, b) = (small_poly(&ctx, &c1), small_poly(&ctx, &c2));
        let iota = scaled(&s.inclusion, &a);
        let pi = scaled(&s.projection, &b);
        iota.check().unwrap();
        pi.check().unwrap();
        let whole = pi.compose(&iota).unwrap().knorrer_lift().unwrap();
        let parts = pi.knorrer_lift().unwrap().compose(&iota.knorrer_lift().unwrap()).unwrap();
        prop_assert_eq!(whole.p, parts.p);
        prop_assert_eq!(whole.q, parts.q);
    }

    #[test]
    fn direct_sum_validates_iff_both_parts_do(i in 0usize..32, j in 0usize..32, bi in any::<bool>(), bj in any::<bool>()) {
        let ctx = make_ring(Family::D, 2, Form::X).unwrap();
        let es = build_catalog(&ctx, 3).unwrap().entries.clone();
        let pick = |k: usize, broken: bool| -> MatFac {
            let m = es[k % es.len()].mf.clone();
            if broken {
                let mut a = m.a.clone();
                a[(0, 0)] = a[(0, 0)].clone() + ctx.var(1);
                MatFac { a, ..m }
            } else {
                m
            }
        };
        let (m1, m2) = (pick(i, bi), pick(j, bj));
        let sum = m1.direct_sum(&m2).unwrap();
        prop_assert_eq!(sum.is_valid(), m1.is_valid() && m2.is_valid());
        prop_assert!(m1.direct_sum(&MatFac::trivial(&ctx)).unwrap().is_valid() == m1.is_valid());
    }
}

#[test]
fn phi_pair_over_d1_and_its_syzygy() {
    let ctx = make_ring(Family::D, 1, Form::X).unwrap();
    let (x0, x1) = (ctx.var(0), ctx.var(1));
    for n in 1..=6u32 {
        let plus = Mat::from_rows(vec![vec![x0.clone(), x1.pow(n)], vec![ctx.zero(), -x0.clone()]], 2).unwrap();
        let minus = Mat::from_rows(
            vec![vec![x0.clone() * x1.clone(), x1.pow(n + 1)], vec![ctx.zero(), -(x0.clone() * x1.clone())]],
            2,
        )
        .unwrap();
        let m = MatFac::new(ctx.clone(), plus.clone(), minus.clone(), None).unwrap();
        assert!(m.is_valid());
        let s = m.syzygy();
        assert_eq!((s.a, s.b), (minus, plus));
    }
}

fn d2_presentation_sequence(alpha: Mat) -> Vec<(i64, bool)> {
    let ctx = make_ring(Family::D, 2, Form::X).unwrap();
    let (x0, x2) = (ctx.var(0), ctx.var(2));
    let nv = ctx.nvars();
    let gens = Mat::from_rows(vec![vec![x0.clone(), x2.clone()]], nv).unwrap();
    let mods = vec![
        ModulePresentation::free(&ctx, 2),
        ModulePresentation::free(&ctx, 2),
        ModulePresentation::free(&ctx, 1),
        ModulePresentation::new(ctx.clone(), gens),
    ];
    let row = Mat::from_rows(vec![vec![x0, -x2]], nv).unwrap();
    let maps = vec![alpha, row, Mat::identity(1, nv)];
    match graded_exactness_check(&mods, &maps, 20, false, true) {
        Ok(v) => v.iter().map(|d| (d.degree, d.exact)).collect(),
        Err(e) => panic!("{e}"),
    }
}

#[test]
fn alpha_presents_the_ideal_x0_x2() {
    let ctx = make_ring(Family::D, 2, Form::X).unwrap();
    let alpha = build_catalog(&ctx, 1).unwrap().entry("alpha+").unwrap().mf.a.clone();
    let verdicts = d2_presentation_sequence(alpha.clone());
    assert_eq!(verdicts.last().unwrap().0, 20);
    assert!(verdicts.iter().all(|&(_, e)| e));

    let mut flipped = alpha;
    flipped[(1, 1)] = -flipped[(1, 1)].clone();
    let verdicts = d2_presentation_sequence(flipped);
    let first = verdicts.iter().find(|(_, e)| !e).expect("flipped sign must break exactness").0;
    assert!(first <= 6, "first failing degree {first}");
}
