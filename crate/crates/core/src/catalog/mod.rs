//! Catalogs of indecomposable maximal Cohen-Macaulay modules over A∞ᵈ and D∞ᵈ.
//!
//! Dimensions one and two carry explicit lists. Every higher dimension is the
//! Knörrer image of the catalog two dimensions down, computed in uv-coordinates
//! and moved to the requested coordinates afterwards. Representatives in
//! dimension three and up are canonical only up to isomorphism.

mod base;
mod certs;
mod quiver;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{MfError, Result};
use crate::homology::{infer_shifts, ModulePresentation, SESCert, Shifts, Summand};
use crate::locus::{prime_m, prime_p, prime_q, transport_locus, PrimeSpec};
use crate::matfac::{find_signed_iso, MFIso, MatFac};
use crate::matrix::Mat;
use crate::ring::{make_ring, Ctx, Form, RingSpec};

pub use quiver::{ar_quiver, QuiverDesc, QuiverShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum LocusTag {
    /// Free everywhere.
    None,
    /// Nonfree at `p` and `m`.
    Punctured,
    /// Nonfree at `m` only.
    Closed,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub mf: MatFac,
    pub declared_locus: Vec<PrimeSpec>,
    pub shifts: Option<Shifts>,
    /// The family parameter `n`, when there is one.
    pub param: Option<u32>,
}

impl CatalogEntry {
    pub(crate) fn new(mf: MatFac, tag: LocusTag, param: Option<u32>) -> CatalogEntry {
        let declared_locus = match tag {
            LocusTag::None => vec![],
            LocusTag::Punctured => vec![prime_p(&mf.ctx), prime_m(&mf.ctx)],
            LocusTag::Closed => vec![prime_m(&mf.ctx)],
        };
        CatalogEntry::with_locus(mf, declared_locus, param)
    }

    fn with_locus(mf: MatFac, declared_locus: Vec<PrimeSpec>, param: Option<u32>) -> CatalogEntry {
        let shifts = infer_shifts(&ModulePresentation::cokernel(&mf));
        CatalogEntry { label: mf.label().to_string(), mf, declared_locus, shifts, param }
    }

    pub fn is_free(&self) -> bool {
        self.label == "R"
    }
}

/// An isomorphism between two entries.
#[derive(Clone, Debug)]
pub struct IsoCert {
    pub source: String,
    pub target: String,
    pub iso: MFIso,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub ctx: Ctx,
    pub n_max: u32,
    pub entries: Vec<CatalogEntry>,
    pub sequences: Vec<SESCert>,
    pub isos: Vec<IsoCert>,
    /// Labels of `X_R` and `Ω X_R`.
    pub x: (String, String),
}

impl Catalog {
    pub fn entry(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    fn require(&self, label: &str) -> Result<&CatalogEntry> {
        self.entry(label).ok_or_else(|| MfError::UnknownModule(label.to_string()))
    }

    pub fn x_module(&self) -> (&CatalogEntry, &CatalogEntry) {
        (self.entry(&self.x.0).expect("X is listed"), self.entry(&self.x.1).expect("ΩX is listed"))
    }

    /// Label of the entry equal to the syzygy of `label`.
    pub fn syzygy_label(&self, label: &str) -> Result<String> {
        let e = self.require(label)?;
        certs::literal_label(&e.mf.syzygy(), &self.entries)
            .ok_or_else(|| MfError::Unverified(format!("syzygy of {label} is not listed")))
    }

    /// Whether the entry is indecomposable, nonfree and locally free on the punctured spectrum.
    pub fn in_p(&self, label: &str) -> bool {
        label != "R" && label != self.x.0 && label != self.x.1 && self.entry(label).is_some()
    }

    /// The listed sequences followed by their syzygy sequences.
    pub fn sequences_with_syzygies(&self) -> Result<Vec<SESCert>> {
        let mut out = self.sequences.clone();
        for c in &self.sequences {
            let s = certs::syzygy_cert(c, &self.entries)?;
            if !out.iter().any(|o| o.name == s.name) {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// A verified sequence `0 -> L -> M ⊕ R^n -> N -> 0` with `L, N ∈ {X, ΩX}`.
    pub fn dominating_sequence(&self, label: &str) -> Result<SESCert> {
        self.require(label)?;
        if !self.in_p(label) {
            return Err(MfError::NotInP(label.to_string()));
        }
        let xs = [self.x.0.as_str(), self.x.1.as_str()];
        let target = Summand::Module(label.to_string());
        for c in self.sequences_with_syzygies()? {
            let ends = xs.contains(&c.sub.label()) && xs.contains(&c.quot.label());
            let modules: Vec<&Summand> = c.mid_parts.iter().filter(|s| matches!(s, Summand::Module(_))).collect();
            if ends && modules == [&target] {
                c.verify()?;
                return Ok(c);
            }
        }
        Err(MfError::Unverified(format!("no dominating sequence for {label}")))
    }
}

fn primes_by_name(primes: &[PrimeSpec], ctx: &Ctx) -> Result<Vec<PrimeSpec>> {
    primes
        .iter()
        .map(|p| match p.name.as_str() {
            "p" => Ok(prime_p(ctx)),
            "m" => Ok(prime_m(ctx)),
            "q" => prime_q(ctx),
            other => Err(MfError::Unsupported(format!("cannot move the prime {other}"))),
        })
        .collect()
}

fn build_base(uv: &Ctx, n_max: u32) -> Result<Catalog> {
    let data = base::base_data(uv, n_max);
    let entries = data.entries;
    let mut sequences = Vec::new();
    for (raw, with_syz) in data.raw {
        let c = certs::normalise(raw, &entries)?;
        if with_syz {
            let s = certs::syzygy_cert(&c, &entries)?;
            sequences.push(c);
            sequences.push(s);
        } else {
            sequences.push(c);
        }
    }
    let find = |l: &str| entries.iter().find(|e| e.label == l).expect("iso between listed entries");
    let mut isos = Vec::new();
    for (s, t) in data.iso_pairs {
        let iso = find_signed_iso(&find(&s).mf, &find(&t).mf)
            .ok_or_else(|| MfError::Unverified(format!("no signed isomorphism {s} -> {t}")))?;
        isos.push(IsoCert { source: s, target: t, iso });
    }
    Ok(Catalog { ctx: uv.clone(), n_max, entries, sequences, isos, x: data.x })
}

fn lift(prev: &Catalog) -> Result<Catalog> {
    let ext = prev.ctx.knorrer_extension()?;
    let mut entries = vec![CatalogEntry::new(MatFac::free(&ext), LocusTag::None, None)];
    for e in prev.entries.iter().filter(|e| !e.is_free()) {
        let locus = transport_locus(&e.declared_locus, &ext)?;
        entries.push(CatalogEntry::with_locus(e.mf.knorrer()?, locus, e.param));
    }
    let sequences =
        prev.sequences.iter().map(|c| certs::lift_cert(c, &prev.entries, &entries)).collect::<Result<Vec<_>>>()?;
    let isos = prev
        .isos
        .iter()
        .map(|i| {
            Ok(IsoCert {
                source: format!("F({})", i.source),
                target: format!("F({})", i.target),
                iso: i.iso.knorrer_lift()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let x = (format!("F({})", prev.x.0), format!("F({})", prev.x.1));
    Ok(Catalog { ctx: ext, n_max: prev.n_max, entries, sequences, isos, x })
}

/// The same catalog over another presentation of the ring.
fn move_to(cat: &Catalog, ctx: &Ctx) -> Result<Catalog> {
    let nv = ctx.nvars();
    let images = if cat.ctx.same_ring(ctx) { None } else { Some(cat.ctx.coordinate_change(ctx)?) };
    let fm = |m: &MatFac| -> Result<MatFac> {
        match &images {
            None => m.recontext(ctx),
            Some(_) => m.change_coordinates(ctx),
        }
    };
    let fx = |m: &Mat| -> Mat {
        match &images {
            None => m.clone(),
            Some(imgs) => m.map(|p| p.substitute(imgs, nv)),
        }
    };
    let entries = cat
        .entries
        .iter()
        .map(|e| Ok(CatalogEntry::with_locus(fm(&e.mf)?, primes_by_name(&e.declared_locus, ctx)?, e.param)))
        .collect::<Result<Vec<_>>>()?;
    let sequences = cat.sequences.iter().map(|c| certs::map_cert(c, &fm, &fx)).collect::<Result<Vec<_>>>()?;
    let isos = cat
        .isos
        .iter()
        .map(|i| {
            Ok(IsoCert { source: i.source.clone(), target: i.target.clone(), iso: certs::map_iso(&i.iso, &fm, &fx)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog { ctx: ctx.clone(), n_max: cat.n_max, entries, sequences, isos, x: cat.x.clone() })
}

fn build_uv(spec: RingSpec, n_max: u32) -> Result<Arc<Catalog>> {
    let uv_spec = RingSpec { form: Form::Uv, ..spec };
    if let Some(c) = cached(uv_spec, n_max) {
        return Ok(c);
    }
    let cat = if spec.d <= 2 {
        build_base(&make_ring(spec.family, spec.d, Form::Uv)?, n_max)?
    } else {
        let prev = build_uv(RingSpec { d: spec.d - 2, ..uv_spec }, n_max)?;
        lift(&prev)?
    };
    Ok(store(uv_spec, n_max, cat))
}

type Cache = Mutex<HashMap<(RingSpec, u32), Arc<Catalog>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(spec: RingSpec, n_max: u32) -> Option<Arc<Catalog>> {
    cache().lock().expect("catalog cache").get(&(spec, n_max)).cloned()
}

fn store(spec: RingSpec, n_max: u32, cat: Catalog) -> Arc<Catalog> {
    let cat = Arc::new(cat);
    cache().lock().expect("catalog cache").entry((spec, n_max)).or_insert(cat).clone()
}

/// The catalog of `ctx` truncated at `n_max`, shared and cached.
pub fn build_catalog(ctx: &Ctx, n_max: u32) -> Result<Arc<Catalog>> {
    if n_max < 1 {
        return Err(MfError::NMax { min: 1, got: n_max as usize });
    }
    let spec = ctx.spec();
    if let Some(c) = cached(spec, n_max) {
        return Ok(c);
    }
    let uv = build_uv(spec, n_max)?;
    if spec.form == Form::Uv {
        return Ok(uv);
    }
    let moved = move_to(&uv, ctx)?;
    Ok(store(spec, n_max, moved))
}

pub fn list_modules(ctx: &Ctx, n_max: u32) -> Result<Vec<CatalogEntry>> {
    Ok(build_catalog(ctx, n_max)?.entries.clone())
}

/// `(X_R, Ω X_R)`.
pub fn x_module(ctx: &Ctx) -> Result<(CatalogEntry, CatalogEntry)> {
    let cat = build_catalog(ctx, 1)?;
    let (x, ox) = cat.x_module();
    Ok((x.clone(), ox.clone()))
}

pub fn get_sequences(ctx: &Ctx, n_max: u32) -> Result<Vec<SESCert>> {
    Ok(build_catalog(ctx, n_max)?.sequences.clone())
}

/// The sequence of [`Catalog::dominating_sequence`] for an entry of the catalog of its ring.
pub fn dominating_sequence(entry: &CatalogEntry) -> Result<SESCert> {
    let cat = build_catalog(&entry.mf.ctx, entry.param.unwrap_or(1).max(1))?;
    match cat.entry(&entry.label) {
        Some(e) if e.mf == entry.mf => cat.dominating_sequence(&entry.label),
        _ => Err(MfError::UnknownModule(entry.label.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Family;

    fn labels(c: &Catalog) -> Vec<&str> {
        c.entries.iter().map(|e| e.label.as_str()).collect()
    }

    #[test]
    fn base_lists() {
        let a1 = build_catalog(&make_ring(Family::A, 1, Form::X).unwrap(), 2).unwrap();
        assert_eq!(labels(&a1), ["R", "R/(x0)", "phi:1", "phi:2"]);
        let d2 = build_catalog(&make_ring(Family::D, 2, Form::X).unwrap(), 1).unwrap();
        assert_eq!(labels(&d2), ["R", "alpha+", "alpha-", "beta+", "beta-", "phi+:1", "phi-:1", "psi+:1", "psi-:1"]);
        assert!(build_catalog(&make_ring(Family::A, 1, Form::X).unwrap(), 0).is_err());
    }

    #[test]
    fn base_sequences_verify_and_name() {
        for fam in [Family::A, Family::D] {
            for d in 1..=2 {
                let cat = build_catalog(&make_ring(fam, d, Form::Uv).unwrap(), 2).unwrap();
                for c in cat.sequences_with_syzygies().unwrap() {
                    c.verify().unwrap_or_else(|e| panic!("{}: {e}", c.name));
                }
            }
        }
        let d1 = build_catalog(&make_ring(Family::D, 1, Form::X).unwrap(), 1).unwrap();
        let names: Vec<&str> = d1.sequences.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"0 -> R/(x0x1) -> R/(x1) ⊕ R -> R/(x0x1) -> 0"), "{names:?}");
    }

    #[test]
    fn lifted_catalog_validates() {
        let a3 = build_catalog(&make_ring(Family::A, 3, Form::Uv).unwrap(), 1).unwrap();
        assert_eq!(labels(&a3), ["R", "F(R/(x0))", "F(phi:1)"]);
        assert!(a3.entries.iter().all(|e| e.mf.is_valid()));
        for c in &a3.sequences {
            c.verify().unwrap_or_else(|e| panic!("{}: {e}", c.name));
        }
    }

    #[test]
    fn dominating_examples() {
        let d2 = build_catalog(&make_ring(Family::D, 2, Form::X).unwrap(), 1).unwrap();
        let c = d2.dominating_sequence("beta+").unwrap();
        assert_eq!((c.sub.label(), c.quot.label(), c.free_rank), ("alpha+", "alpha+", 1));
        assert!(matches!(d2.dominating_sequence("alpha-"), Err(MfError::NotInP(_))));
        assert!(matches!(d2.dominating_sequence("nope"), Err(MfError::UnknownModule(_))));
    }
}
