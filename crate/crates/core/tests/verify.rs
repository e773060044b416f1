use mfkit::verify::{default_cutoff, run_suite};
use mfkit::{make_ring, Family, Form};

#[test]
fn d1_has_seven_passing_sequence_lines() {
    let ctx = make_ring(Family::D, 1, Form::X).unwrap();
    let checks = run_suite(&ctx, 5, default_cutoff(&ctx)).unwrap();
    let seqs: Vec<_> = checks.iter().filter(|c| c.key.contains(" sequence ")).collect();
    assert_eq!(seqs.len(), 7);
    assert!(seqs.iter().all(|c| c.pass), "{seqs:?}");
    assert!(seqs[0].key.starts_with("D-inf:1 sequence 1/7 "));
}

#[test]
fn every_ring_passes_the_suite() {
    for fam in [Family::A, Family::D] {
        for d in 1..=5 {
            for form in [Form::X, Form::Uv] {
                let ctx = make_ring(fam, d, form).unwrap();
                let checks = run_suite(&ctx, 2, 4).unwrap();
                for c in &checks {
                    assert!(c.pass, "{c}");
                }
                assert!(checks.iter().any(|c| c.key.contains("K0")));
            }
        }
    }
}

#[test]
fn local_certificate_lines_cover_the_displayed_cases() {
    let keys = |fam, d| {
        let ctx = make_ring(fam, d, Form::Uv).unwrap();
        run_suite(&ctx, 3, 6)
            .unwrap()
            .into_iter()
            .filter(|c| c.key.contains("local certificate"))
            .map(|c| c.key)
            .collect::<Vec<_>>()
    };
    assert_eq!(keys(Family::A, 1).len(), 1);
    assert_eq!(keys(Family::D, 1).len(), 2);
    assert_eq!(keys(Family::A, 2).len(), 3);
}

#[test]
fn output_is_deterministic() {
    let ctx = make_ring(Family::A, 2, Form::X).unwrap();
    let a: Vec<String> = run_suite(&ctx, 3, 8).unwrap().iter().map(|c| c.to_string()).collect();
    let b: Vec<String> = run_suite(&ctx, 3, 8).unwrap().iter().map(|c| c.to_string()).collect();
    assert_eq!(a, b);
}
