//! The four base catalogs in dimensions one and two.

use crate::homology::SESCert;
use crate::matfac::MatFac;
use crate::matrix::Mat;
use crate::ring::{Ctx, Family};
use crate::text::parse_poly;

use super::certs::{diagram_cert, periodic_cert};
use super::{CatalogEntry, LocusTag};

pub(crate) struct BaseData {
    pub entries: Vec<CatalogEntry>,
    /// Raw certificates, and whether the syzygy sequence is listed as well.
    pub raw: Vec<(SESCert, bool)>,
    pub iso_pairs: Vec<(String, String)>,
    pub x: (String, String),
}

/// A matrix written as `"a, b; c, d"`.
fn mat(ctx: &Ctx, s: &str) -> Mat {
    let rows = s
        .split(';')
        .map(|r| r.split(',').map(|e| parse_poly(e.trim(), ctx).expect("catalog literal")).collect())
        .collect();
    Mat::from_rows(rows, ctx.nvars()).expect("square literal")
}

fn fac(ctx: &Ctx, label: &str, a: &str, b: &str) -> MatFac {
    MatFac { ctx: ctx.clone(), a: mat(ctx, a), b: mat(ctx, b), label: Some(label.to_string()) }
}

struct Builder {
    entries: Vec<CatalogEntry>,
}

impl Builder {
    fn new(ctx: &Ctx) -> Builder {
        Builder { entries: vec![CatalogEntry::new(MatFac::free(ctx), LocusTag::None, None)] }
    }

    fn add(&mut self, m: MatFac, locus: LocusTag, param: Option<u32>) -> MatFac {
        self.entries.push(CatalogEntry::new(m.clone(), locus, param));
        m
    }

    /// Adds the syzygy of `m` under `label`.
    fn add_syz(&mut self, m: &MatFac, label: &str, locus: LocusTag, param: Option<u32>) -> MatFac {
        self.add(m.syzygy().with_label(label), locus, param)
    }
}

pub(crate) fn base_data(ctx: &Ctx, n_max: u32) -> BaseData {
    match (ctx.family(), ctx.dim()) {
        (Family::A, 1) => a1(ctx, n_max),
        (Family::D, 1) => d1(ctx, n_max),
        (Family::A, 2) => a2(ctx, n_max),
        (Family::D, 2) => d2(ctx, n_max),
        _ => unreachable!("base catalogs exist in dimensions 1 and 2"),
    }
}

fn a1(ctx: &Ctx, n_max: u32) -> BaseData {
    let mut b = Builder::new(ctx);
    let x = b.add(fac(ctx, "R/(x0)", "x0", "x0"), LocusTag::Punctured, None);
    let mut raw = vec![(periodic_cert(&x), false)];
    let minus = fac(ctx, "-R/(x0)", "-x0", "-x0");
    for n in 1..=n_max {
        let m = format!("x0, x1^{n}; 0, -x0");
        let phi = b.add(fac(ctx, &format!("phi:{n}"), &m, &m), LocusTag::Closed, Some(n));
        raw.push((diagram_cert(&x, &phi, &minus), false));
    }
    BaseData { entries: b.entries, raw, iso_pairs: vec![], x: ("R/(x0)".into(), "R/(x0)".into()) }
}

fn d1(ctx: &Ctx, n_max: u32) -> BaseData {
    let mut b = Builder::new(ctx);
    let x = b.add(fac(ctx, "R/(x0)", "x0", "x0*x1"), LocusTag::Punctured, None);
    let ox = b.add_syz(&x, "R/(x0x1)", LocusTag::Punctured, None);
    let sq = b.add(fac(ctx, "R/(x0^2)", "x0^2", "x1"), LocusTag::Closed, None);
    b.add_syz(&sq, "R/(x1)", LocusTag::Closed, None);
    let quot = fac(ctx, "-R/(x0)", "-x0", "-x0*x1");
    let phi = |n: u32| {
        fac(ctx, &format!("phi+:{n}"), &format!("x0, x1^{n}; 0, -x0"), &format!("x0*x1, x1^{}; 0, -x0*x1", n + 1))
    };
    let mut raw = vec![(periodic_cert(&x), false), (diagram_cert(&x, &phi(0), &quot), true)];
    for n in 1..=n_max {
        let p = b.add(phi(n), LocusTag::Closed, Some(n));
        b.add_syz(&p, &format!("phi-:{n}"), LocusTag::Closed, Some(n));
        let s = fac(ctx, &format!("psi+:{n}"), &format!("x0*x1, x1^{n}; 0, -x0"), &format!("x0, x1^{n}; 0, -x0*x1"));
        let s = b.add(s, LocusTag::Closed, Some(n));
        b.add_syz(&s, &format!("psi-:{n}"), LocusTag::Closed, Some(n));
        raw.push((diagram_cert(&x, &p, &quot), true));
        raw.push((diagram_cert(&ox, &s, &quot), true));
    }
    BaseData { entries: b.entries, raw, iso_pairs: vec![], x: ("R/(x0)".into(), "R/(x0x1)".into()) }
}

fn a2(ctx: &Ctx, n_max: u32) -> BaseData {
    let mut b = Builder::new(ctx);
    let x = b.add(fac(ctx, "R/(x0)", "x0", "x2"), LocusTag::Punctured, None);
    let ox = b.add_syz(&x, "R/(x2)", LocusTag::Punctured, None);
    let mut raw = vec![(periodic_cert(&x), false)];
    for n in 1..=n_max {
        let p = fac(ctx, &format!("phi+:{n}"), &format!("x2, x1^{n}; 0, x0"), &format!("x0, -x1^{n}; 0, x2"));
        let p = b.add(p, LocusTag::Closed, Some(n));
        b.add_syz(&p, &format!("phi-:{n}"), LocusTag::Closed, Some(n));
        raw.push((diagram_cert(&ox, &p, &x), true));
    }
    BaseData { entries: b.entries, raw, iso_pairs: vec![], x: ("R/(x0)".into(), "R/(x2)".into()) }
}

fn d2(ctx: &Ctx, n_max: u32) -> BaseData {
    let mut b = Builder::new(ctx);
    let alpha = b.add(fac(ctx, "alpha+", "x2, x0*x1; x0, x2", "-x2, x0*x1; x0, -x2"), LocusTag::Punctured, None);
    b.add_syz(&alpha, "alpha-", LocusTag::Punctured, None);
    let beta = b.add(fac(ctx, "beta+", "x0^2, x2; x2, x1", "x1, -x2; -x2, x0^2"), LocusTag::Closed, None);
    b.add_syz(&beta, "beta-", LocusTag::Closed, None);
    let four = |label: String, upper: (String, String)| {
        let m =
            |d: &str| format!("{d}x2, x0*x1, {}; x0, {d}x2, {}; 0, 0, {d}x2, x0*x1; 0, 0, x0, {d}x2", upper.0, upper.1);
        fac(ctx, &label, &m(""), &m("-"))
    };
    let phi = |n: u32| four(format!("phi+:{n}"), (format!("0, -x1^{}", n + 1), format!("x1^{n}, 0")));
    let psi = |n: u32| four(format!("psi+:{n}"), (format!("-x1^{n}, 0"), format!("0, x1^{n}")));
    let mut raw = vec![(periodic_cert(&alpha), false), (diagram_cert(&alpha, &phi(0), &alpha), false)];
    let mut iso_pairs = vec![("alpha+".into(), "alpha-".into()), ("beta+".into(), "beta-".into())];
    for n in 1..=n_max {
        let p = b.add(phi(n), LocusTag::Closed, Some(n));
        b.add_syz(&p, &format!("phi-:{n}"), LocusTag::Closed, Some(n));
        let s = b.add(psi(n), LocusTag::Closed, Some(n));
        b.add_syz(&s, &format!("psi-:{n}"), LocusTag::Closed, Some(n));
        raw.push((diagram_cert(&alpha, &p, &alpha), false));
        raw.push((diagram_cert(&alpha, &s, &alpha), false));
        iso_pairs.push((format!("phi+:{n}"), format!("phi-:{n}")));
        iso_pairs.push((format!("psi+:{n}"), format!("psi-:{n}")));
    }
    BaseData { entries: b.entries, raw, iso_pairs, x: ("alpha+".into(), "alpha-".into()) }
}
