use mfkit::catalog::{build_catalog, get_sequences};
use mfkit::json::{local_cert_from_json, local_cert_to_json, ses_from_json, ses_to_json};
use mfkit::locus::{paper_local_certs, verify_local_free_cert};
use mfkit::{make_ring, Family, Form, MfError};

const BASE: [(Family, u32); 4] = [(Family::A, 1), (Family::D, 1), (Family::A, 2), (Family::D, 2)];

#[test]
fn sequence_certificates_round_trip_through_json() {
    for (fam, d) in BASE {
        for c in get_sequences(&make_ring(fam, d, Form::X).unwrap(), 2).unwrap() {
            let back = ses_from_json(&ses_to_json(&c)).unwrap();
            back.verify().unwrap();
            assert_eq!(ses_to_json(&back), ses_to_json(&c));
        }
    }
}

#[test]
fn base_sequences_are_exact_to_degree_twenty() {
    for (fam, d) in BASE {
        for c in get_sequences(&make_ring(fam, d, Form::X).unwrap(), 3).unwrap() {
            let v = c.graded_check(20).unwrap();
            assert_eq!(v.len(), 21, "{}", c.name);
            assert!(v.iter().all(|v| v.exact), "{}", c.name);
        }
    }
}

#[test]
fn every_displayed_localization_identity_verifies() {
    let mut count = 0;
    for (fam, d) in BASE {
        let ctx = make_ring(fam, d, Form::Uv).unwrap();
        let cat = build_catalog(&ctx, 6).unwrap();
        for e in &cat.entries {
            let Some(n) = e.param else { continue };
            for cert in paper_local_certs(&ctx, &e.label, n) {
                assert!(verify_local_free_cert(&e.mf, &cert).unwrap(), "{} at {}", e.label, cert.prime.name);
                let back = local_cert_from_json(&local_cert_to_json(&cert, &ctx)).unwrap();
                assert!(verify_local_free_cert(&e.mf, &back).unwrap());
                count += 1;
            }
        }
    }
    assert_eq!(count, 6 * (1 + 2 + 3));
}

#[test]
fn localization_identities_need_the_full_clearing_power() {
    let ctx = make_ring(Family::A, 2, Form::Uv).unwrap();
    let cat = build_catalog(&ctx, 4).unwrap();
    let e = cat.entry("phi+:4").unwrap();
    let mut cert = paper_local_certs(&ctx, "phi+:4", 4).into_iter().find(|c| c.clearing_exponent == 4).unwrap();
    assert!(verify_local_free_cert(&e.mf, &cert).unwrap());
    cert.clearing_exponent = 3;
    assert!(matches!(verify_local_free_cert(&e.mf, &cert), Err(MfError::DenominatorMismatch { .. })));
}

#[test]
fn malformed_certificates_are_rejected() {
    let ctx = make_ring(Family::A, 1, Form::X).unwrap();
    let cert = paper_local_certs(&ctx, "phi:2", 2).remove(0);
    let json = local_cert_to_json(&cert, &ctx);
    let bad = json.replacen("\"x1\"", "\"y9\"", 1);
    assert!(local_cert_from_json(&bad).is_err());
    assert!(ses_from_json("[]").is_err());
}
