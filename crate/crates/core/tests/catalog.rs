use mfkit::catalog::{build_catalog, dominating_sequence, get_sequences, list_modules, x_module};
use mfkit::homology::Summand;
use mfkit::locus::{nonfree_locus, prime_m, prime_p};
use mfkit::{make_ring, minimize, Family, Form, MfError};

const FAMILIES: [Family; 2] = [Family::A, Family::D];

#[test]
fn every_entry_validates_up_to_dimension_five() {
    for fam in FAMILIES {
        for d in 1..=5 {
            for form in [Form::X, Form::Uv] {
                let ctx = make_ring(fam, d, form).unwrap();
                for e in list_modules(&ctx, 3).unwrap() {
                    assert!(e.mf.is_valid(), "{} over {}", e.label, ctx.spec());
                    assert!(e.mf.is_polynomial());
                }
            }
        }
    }
}

#[test]
fn a1_list_matches_the_displayed_factorizations() {
    let ctx = make_ring(Family::A, 1, Form::X).unwrap();
    let es = list_modules(&ctx, 2).unwrap();
    let x0 = ctx.var(0);
    let x1 = ctx.var(1);
    assert_eq!(es[0].mf.a[(0, 0)], *ctx.f());
    assert_eq!(es[1].mf.a[(0, 0)], x0);
    assert_eq!(es[3].mf.a[(0, 1)], x1.pow(2));
    assert_eq!(es[3].mf.a, es[3].mf.b);
}

#[test]
fn d2_alpha_and_beta_are_literal() {
    let ctx = make_ring(Family::D, 2, Form::X).unwrap();
    let cat = build_catalog(&ctx, 1).unwrap();
    let a = &cat.entry("alpha+").unwrap().mf.a;
    let (x0, x1, x2) = (ctx.var(0), ctx.var(1), ctx.var(2));
    assert_eq!(a.to_rows(), vec![vec![x2.clone(), &x0 * &x1], vec![x0.clone(), x2.clone()]]);
    let b = &cat.entry("beta+").unwrap().mf.a;
    assert_eq!(b.to_rows(), vec![vec![x0.pow(2), x2.clone()], vec![x2, x1]]);
}

#[test]
fn lifted_entries_validate_against_f_plus_uv() {
    let a3 = make_ring(Family::A, 3, Form::Uv).unwrap();
    let a1 = make_ring(Family::A, 1, Form::Uv).unwrap();
    let base = list_modules(&a1, 1).unwrap();
    let lifted = list_modules(&a3, 1).unwrap();
    assert_eq!(base.len(), lifted.len());
    for (b, l) in base.iter().zip(&lifted).skip(1) {
        let k = b.mf.knorrer().unwrap();
        assert_eq!(k, l.mf);
        assert!(k.is_valid());
    }
}

#[test]
fn knorrer_images_are_a_bijection_on_labels() {
    for fam in FAMILIES {
        for d in 1..=3 {
            let lo = build_catalog(&make_ring(fam, d, Form::Uv).unwrap(), 2).unwrap();
            let hi = build_catalog(&make_ring(fam, d + 2, Form::Uv).unwrap(), 2).unwrap();
            let mut hit = vec![false; hi.entries.len()];
            for e in &lo.entries {
                let m = minimize(&e.mf.knorrer().unwrap()).unwrap().mf;
                let expect = if e.label == "R" { None } else { Some(format!("F({})", e.label)) };
                match expect {
                    None => assert_eq!(m.size(), 0),
                    Some(l) => {
                        let k = hi.entries.iter().position(|h| h.label == l).unwrap();
                        assert_eq!(hi.entries[k].mf, m);
                        assert!(!hit[k]);
                        hit[k] = true;
                    }
                }
            }
            assert_eq!(hit.iter().filter(|h| **h).count(), hi.entries.len() - 1);
        }
    }
}

#[test]
fn x_modules() {
    let cases = [
        (Family::A, 1, "R/(x0)", "R/(x0)"),
        (Family::D, 1, "R/(x0)", "R/(x0x1)"),
        (Family::A, 2, "R/(x0)", "R/(x2)"),
        (Family::D, 2, "alpha+", "alpha-"),
        (Family::A, 3, "F(R/(x0))", "F(R/(x0))"),
        (Family::D, 4, "F(alpha+)", "F(alpha-)"),
    ];
    for (fam, d, x, ox) in cases {
        let (a, b) = x_module(&make_ring(fam, d, Form::X).unwrap()).unwrap();
        assert_eq!((a.label.as_str(), b.label.as_str()), (x, ox));
        assert_eq!(a.mf.syzygy(), b.mf);
    }
}

#[test]
fn sequences_verify_in_all_dimensions() {
    for fam in FAMILIES {
        for d in 1..=5 {
            for form in [Form::X, Form::Uv] {
                let ctx = make_ring(fam, d, form).unwrap();
                for c in get_sequences(&ctx, 2).unwrap() {
                    c.verify().unwrap_or_else(|e| panic!("{} over {}: {e}", c.name, ctx.spec()));
                }
            }
        }
    }
}

#[test]
fn displayed_sequences() {
    let a1 = get_sequences(&make_ring(Family::A, 1, Form::X).unwrap(), 2).unwrap();
    assert!(a1.iter().any(|c| c.name == "0 -> R/(x0) -> phi:2 -> R/(x0) -> 0"));
    let d1 = get_sequences(&make_ring(Family::D, 1, Form::X).unwrap(), 1).unwrap();
    assert_eq!(d1.len(), 7);
    let third = d1.iter().find(|c| c.name == "0 -> R/(x0x1) -> R/(x1) ⊕ R -> R/(x0x1) -> 0").unwrap();
    assert_eq!(third.free_rank, 1);
    let a2 = get_sequences(&make_ring(Family::A, 2, Form::X).unwrap(), 1).unwrap();
    assert_eq!(a2.len(), 3);
    let d2 = get_sequences(&make_ring(Family::D, 2, Form::X).unwrap(), 3).unwrap();
    assert!(d2.iter().any(|c| c.name == "0 -> alpha+ -> psi+:3 -> alpha+ -> 0"));
    assert!(d2.iter().any(|c| c.name == "0 -> alpha+ -> beta+ ⊕ R -> alpha+ -> 0"));
}

#[test]
fn dominating_sequences_for_every_module_in_p() {
    for fam in FAMILIES {
        for d in 1..=4 {
            let ctx = make_ring(fam, d, Form::X).unwrap();
            let cat = build_catalog(&ctx, 2).unwrap();
            let xs = [cat.x.0.clone(), cat.x.1.clone()];
            for e in &cat.entries {
                match cat.dominating_sequence(&e.label) {
                    Ok(c) => {
                        assert!(cat.in_p(&e.label));
                        assert!(xs.contains(&c.sub.label().to_string()) && xs.contains(&c.quot.label().to_string()));
                        assert!(c.mid_parts.contains(&Summand::Module(e.label.clone())));
                    }
                    Err(MfError::NotInP(_)) => assert!(!cat.in_p(&e.label)),
                    Err(err) => panic!("{} over {}: {err}", e.label, ctx.spec()),
                }
            }
        }
    }
}

#[test]
fn dominating_examples() {
    let a1 = make_ring(Family::A, 1, Form::X).unwrap();
    let phi = list_modules(&a1, 3).unwrap().into_iter().find(|e| e.label == "phi:3").unwrap();
    let c = dominating_sequence(&phi).unwrap();
    assert_eq!((c.sub.label(), c.quot.label(), c.free_rank), ("R/(x0)", "R/(x0)", 0));
    let a3 = make_ring(Family::A, 3, Form::X).unwrap();
    let fphi = list_modules(&a3, 1).unwrap().into_iter().find(|e| e.label == "F(phi:1)").unwrap();
    let c = dominating_sequence(&fphi).unwrap();
    assert_eq!((c.sub.label(), c.quot.label()), ("F(R/(x0))", "F(R/(x0))"));
    let r = list_modules(&a1, 1).unwrap().remove(0);
    assert!(matches!(dominating_sequence(&r), Err(MfError::NotInP(_))));
}

#[test]
fn declared_loci_are_confirmed() {
    for fam in FAMILIES {
        for d in 1..=5 {
            let ctx = make_ring(fam, d, Form::X).unwrap();
            let cat = build_catalog(&ctx, 2).unwrap();
            for e in &cat.entries {
                let rep = nonfree_locus(&e.mf).unwrap();
                assert_eq!(rep.locus, e.declared_locus, "{} over {}", e.label, ctx.spec());
            }
            let bigger: Vec<&str> =
                cat.entries.iter().filter(|e| e.declared_locus.len() > 1).map(|e| e.label.as_str()).collect();
            let mut xs = vec![cat.x.0.as_str(), cat.x.1.as_str()];
            xs.dedup();
            assert_eq!(bigger, xs);
            let (x, _) = cat.x_module();
            assert_eq!(x.declared_locus, vec![prime_p(&ctx), prime_m(&ctx)]);
        }
    }
}
