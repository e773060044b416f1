//! The full verification suite for one ring, as a checklist.

use std::fmt;

use serde::Serialize;

use crate::catalog::{build_catalog, get_sequences, Catalog};
use crate::error::Result;
use crate::homology::SESCert;
use crate::kgroup::{expected_k0, multirank_mf, present_k0, Variant};
use crate::locus::{nonfree_locus, paper_local_certs, prime_m, prime_p, verify_local_free_cert};
use crate::matfac::minimize;
use crate::ring::{make_ring, Ctx, Form};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub key: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(key: String, outcome: std::result::Result<(), String>) -> Check {
        match outcome {
            Ok(()) => Check { key, pass: true, detail: None },
            Err(e) => Check { key, pass: false, detail: Some(e) },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.key, if self.pass { "PASS" } else { "FAIL" })?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// The graded-check cutoff used when none is given.
pub fn default_cutoff(ctx: &Ctx) -> i64 {
    if ctx.dim() <= 2 {
        20
    } else {
        6
    }
}

/// A sequence name with every catalog parameter replaced by `n`.
pub fn sequence_pattern(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    let mut chars = name.chars().peekable();
    while let Some(c) = chars.next() {
        out.push(c);
        if c == ':' && chars.peek().is_some_and(|d| d.is_ascii_digit()) {
            while chars.peek().is_some_and(|d| d.is_ascii_digit()) {
                chars.next();
            }
            out.push('n');
        }
    }
    out
}

fn check_sequence(c: &SESCert, cutoff: i64) -> std::result::Result<(), String> {
    c.verify().map_err(|e| format!("{}: {e}", c.name))?;
    let verdicts = c.graded_check(cutoff).map_err(|e| format!("{}: {e}", c.name))?;
    match verdicts.iter().find(|v| !v.exact) {
        Some(v) => Err(format!("{}: not exact in degree {}", c.name, v.degree)),
        None => Ok(()),
    }
}

fn catalog_checks(ring: &str, cat: &Catalog, out: &mut Vec<Check>) {
    for e in &cat.entries {
        let outcome = e.mf.validate().map_err(|w| w.to_string());
        out.push(Check::new(format!("{ring} catalog {}", e.label), outcome));
    }
}

fn sequence_checks(ring: &str, ctx: &Ctx, n_max: u32, cutoff: i64, out: &mut Vec<Check>) -> Result<()> {
    let seqs = get_sequences(ctx, n_max)?;
    let mut groups: Vec<(String, Vec<&SESCert>)> = Vec::new();
    for c in &seqs {
        let pat = sequence_pattern(&c.name);
        match groups.iter_mut().find(|(p, _)| *p == pat) {
            Some((_, g)) => g.push(c),
            None => groups.push((pat, vec![c])),
        }
    }
    let total = groups.len();
    for (i, (pat, members)) in groups.iter().enumerate() {
        let outcome = members.iter().try_for_each(|c| check_sequence(c, cutoff));
        out.push(Check::new(format!("{ring} sequence {}/{total} {pat}", i + 1), outcome));
    }
    Ok(())
}

fn locus_checks(ring: &str, ctx: &Ctx, cat: &Catalog, out: &mut Vec<Check>) {
    for e in &cat.entries {
        let outcome = match nonfree_locus(&e.mf) {
            Ok(rep) if rep.locus == e.declared_locus => Ok(()),
            Ok(rep) => {
                Err(format!("found {{{}}}", rep.locus.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(", ")))
            }
            Err(err) => Err(err.to_string()),
        };
        out.push(Check::new(format!("{ring} locus {}", e.label), outcome));
    }
    let (x, ox) = cat.x_module();
    let pm = vec![prime_p(ctx), prime_m(ctx)];
    let outcome = if x.declared_locus == pm && ox.declared_locus == pm {
        let bigger: Vec<&str> =
            cat.entries.iter().filter(|e| e.declared_locus.len() > 1).map(|e| e.label.as_str()).collect();
        let mut xs = vec![x.label.as_str(), ox.label.as_str()];
        xs.dedup();
        if bigger == xs {
            Ok(())
        } else {
            Err(format!("modules with larger locus: {}", bigger.join(", ")))
        }
    } else {
        Err("X is not free exactly off {p, m}".to_string())
    };
    out.push(Check::new(format!("{ring} locus of X is {{p, m}} and only X, ΩX are not free at p"), outcome));

    let mut groups: Vec<(String, std::result::Result<(), String>)> = Vec::new();
    for e in &cat.entries {
        let Some(n) = e.param else { continue };
        for cert in paper_local_certs(ctx, &e.label, n) {
            let key = format!("{ring} local certificate {} at {}", sequence_pattern(&e.label), cert.prime.name);
            let outcome = match verify_local_free_cert(&e.mf, &cert) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("{} rejected", e.label)),
                Err(err) => Err(format!("{}: {err}", e.label)),
            };
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, o)) => {
                    if o.is_ok() {
                        *o = outcome;
                    }
                }
                None => groups.push((key, outcome)),
            }
        }
    }
    out.extend(groups.into_iter().map(|(k, o)| Check::new(k, o)));
}

fn k0_checks(ring: &str, ctx: &Ctx, n_max: u32, out: &mut Vec<Check>) {
    for variant in [Variant::Cm, Variant::Stable] {
        let want = expected_k0(ctx.family(), ctx.dim(), variant);
        let outcome = match present_k0(ctx, variant, n_max) {
            Ok(r) if r.classification == want => Ok(()),
            Ok(r) => Err(format!("found {}", r.classification)),
            Err(e) => Err(e.to_string()),
        };
        let name = match variant {
            Variant::Cm => "K0",
            Variant::Stable => "stable K0",
        };
        out.push(Check::new(format!("{ring} {name} = {want}"), outcome));
    }
}

fn knorrer_checks(ring: &str, ctx: &Ctx, n_max: u32, out: &mut Vec<Check>) -> Result<()> {
    let uv = make_ring(ctx.family(), ctx.dim(), Form::Uv)?;
    let cat = build_catalog(&uv, n_max)?;
    let mut valid = Ok(());
    let mut commutes = Ok(());
    for e in &cat.entries {
        match (e.mf.knorrer(), e.mf.syzygy().knorrer()) {
            (Ok(k), Ok(ks)) => {
                if valid.is_ok() && !k.is_valid() {
                    valid = Err(format!("{} does not validate", e.label));
                }
                if commutes.is_ok() && ks != k.syzygy() {
                    commutes = Err(format!("{} differs", e.label));
                }
            }
            (Err(err), _) | (_, Err(err)) => valid = Err(format!("{}: {err}", e.label)),
        }
    }
    out.push(Check::new(format!("{ring} knorrer images validate"), valid));
    out.push(Check::new(format!("{ring} knorrer commutes with syzygy"), commutes));
    if ctx.dim() >= 3 {
        let lo = build_catalog(&make_ring(ctx.family(), ctx.dim() - 2, Form::Uv)?, n_max)?;
        let mut outcome = Ok(());
        for e in lo.entries.iter().filter(|e| !e.is_free()) {
            let lifted = format!("F({})", e.label);
            let ok = match (minimize(&e.mf.knorrer()?), cat.entry(&lifted)) {
                (Ok(m), Some(t)) => m.mf == t.mf,
                _ => false,
            };
            if !ok {
                outcome = Err(format!("{lifted} is not the lift of {}", e.label));
                break;
            }
        }
        out.push(Check::new(format!("{ring} catalog is the knorrer lift of dimension {}", ctx.dim() - 2), outcome));
    }
    Ok(())
}

fn multirank_checks(ring: &str, ctx: &Ctx, n_max: u32, out: &mut Vec<Check>) -> Result<()> {
    if ctx.dim() > 2 {
        return Ok(());
    }
    let cat = build_catalog(ctx, n_max)?;
    let mut outcome = Ok(());
    for c in cat.sequences_with_syzygies()? {
        let r = |m| multirank_mf(m).map(|v| v.into_iter().map(|(_, x)| x).collect::<Vec<_>>());
        let (l, m, n) = (r(&c.sub)?, r(&c.mid)?, r(&c.quot)?);
        let sum: Vec<u64> = l.iter().zip(&n).map(|(a, b)| a + b).collect();
        if sum != m {
            outcome = Err(format!("{}: {:?} + {:?} != {:?}", c.name, l, n, m));
            break;
        }
    }
    out.push(Check::new(format!("{ring} multirank is additive on sequences"), outcome));
    Ok(())
}

/// Runs every check for `ctx` with catalogs up to `n_max`.
pub fn run_suite(ctx: &Ctx, n_max: u32, cutoff: i64) -> Result<Vec<Check>> {
    let ring = ctx.spec().to_string();
    let cat = build_catalog(ctx, n_max)?;
    let mut out = Vec::new();
    catalog_checks(&ring, &cat, &mut out);
    sequence_checks(&ring, ctx, n_max, cutoff, &mut out)?;
    locus_checks(&ring, ctx, &cat, &mut out);
    k0_checks(&ring, ctx, n_max, &mut out);
    knorrer_checks(&ring, ctx, n_max, &mut out)?;
    multirank_checks(&ring, ctx, n_max, &mut out)?;
    Ok(out)
}
