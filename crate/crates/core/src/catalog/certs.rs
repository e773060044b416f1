//! Building, normalising and lifting sequence certificates.

use crate::error::{MfError, Result};
use crate::homology::{SESCert, Splitting, Summand};
use crate::matfac::{find_signed_iso, minimize, Block, MFIso, MFMorphism, MatFac};
use crate::matrix::Mat;
use crate::poly::Poly;

use super::CatalogEntry;

/// `0 -> sub -> mid -> quot -> 0` with column maps `(E, 0)ᵀ` and `(0, E)`;
/// `mid` must be block upper triangular over `sub` and `quot`.
pub(crate) fn diagram_cert(sub: &MatFac, mid: &MatFac, quot: &MatFac) -> SESCert {
    let nv = mid.ctx.nvars();
    let (a, b) = (sub.size(), quot.size());
    let iota = Mat::vstack(&Mat::identity(a, nv), &Mat::zeros(b, a, nv));
    let pi = Mat::hstack(&Mat::zeros(b, a, nv), &Mat::identity(b, nv));
    let split = Splitting { retraction: iota.transpose(), section: pi.transpose() };
    SESCert {
        name: String::new(),
        sub: sub.clone(),
        mid: mid.clone(),
        quot: quot.clone(),
        inclusion: MFMorphism { source: sub.clone(), target: mid.clone(), p: iota.clone(), q: iota },
        projection: MFMorphism { source: mid.clone(), target: quot.clone(), p: pi.clone(), q: pi },
        split0: split.clone(),
        split1: split,
        free_rank: 0,
        mid_parts: vec![],
    }
}

/// `0 -> ΩM -> R^n -> M -> 0` presented by `([[B, E], [0, A]], [[A, -E], [0, B]])`.
pub(crate) fn periodic_cert(m: &MatFac) -> SESCert {
    let n = m.size();
    let nv = m.ctx.nvars();
    let e = Mat::identity(n, nv);
    let z = Mat::zeros(n, n, nv);
    let mid = MatFac {
        ctx: m.ctx.clone(),
        a: Mat::block2(&m.b, &e, &z, &m.a),
        b: Mat::block2(&m.a, &e.neg(), &z, &m.b),
        label: None,
    };
    diagram_cert(&m.syzygy(), &mid, m)
}

/// `M -> target` as the identity matrices, for literally equal factorizations.
fn relabel_iso(m: &MatFac, target: &MatFac) -> MFIso {
    let e = Mat::identity(m.size(), m.ctx.nvars());
    MFIso {
        forward: MFMorphism { source: m.clone(), target: target.clone(), p: e.clone(), q: e.clone() },
        backward: MFMorphism { source: target.clone(), target: m.clone(), p: e.clone(), q: e },
    }
}

/// The catalog entry `m` is isomorphic to, by literal equality or a signed permutation.
pub(crate) fn match_entry<'a>(m: &MatFac, entries: &'a [CatalogEntry]) -> Option<(&'a CatalogEntry, MFIso)> {
    if let Some(e) = entries.iter().find(|e| e.mf == *m) {
        return Some((e, relabel_iso(m, &e.mf)));
    }
    entries.iter().filter(|e| e.mf.size() == m.size()).find_map(|e| find_signed_iso(m, &e.mf).map(|iso| (e, iso)))
}

/// Block-diagonal sum of isomorphisms.
pub(crate) fn iso_sum(isos: &[MFIso]) -> Result<MFIso> {
    let sum = |f: &dyn Fn(&MFIso) -> &MFMorphism| -> Result<MFMorphism> {
        let parts: Vec<&MFMorphism> = isos.iter().map(f).collect();
        let nv = parts[0].source.ctx.nvars();
        let src: Vec<&MatFac> = parts.iter().map(|m| &m.source).collect();
        let tgt: Vec<&MatFac> = parts.iter().map(|m| &m.target).collect();
        let ps: Vec<&Mat> = parts.iter().map(|m| &m.p).collect();
        let qs: Vec<&Mat> = parts.iter().map(|m| &m.q).collect();
        Ok(MFMorphism {
            source: MatFac::direct_sum_all(&src)?,
            target: MatFac::direct_sum_all(&tgt)?,
            p: Mat::block_diag(&ps, nv),
            q: Mat::block_diag(&qs, nv),
        })
    };
    if isos.is_empty() {
        return Err(MfError::SizeMismatch("empty sum of isomorphisms".into()));
    }
    Ok(MFIso { forward: sum(&|i| &i.forward)?, backward: sum(&|i| &i.backward)? })
}

fn block_mf(ctx: &crate::ring::Ctx, b: Block) -> MatFac {
    match b {
        Block::Free => MatFac::free(ctx),
        Block::Trivial => MatFac::trivial(ctx),
    }
}

fn block_summand(b: Block) -> Summand {
    match b {
        Block::Free => Summand::Free,
        Block::Trivial => Summand::Trivial,
    }
}

/// Iso from `mid` onto a literal block sum of catalog entries and `(f,1)`, `(1,f)` blocks.
pub(crate) fn normalise_mid(mid: &MatFac, entries: &[CatalogEntry]) -> Result<(MFIso, Vec<Summand>)> {
    if let Some((e, iso)) = match_entry(mid, entries) {
        let part = if e.label == "R" { Summand::Free } else { Summand::Module(e.label.clone()) };
        return Ok((iso, vec![part]));
    }
    let min = minimize(mid)?;
    let mut isos = Vec::new();
    let mut parts = Vec::new();
    if min.mf.size() > 0 {
        let (e, g) = match_entry(&min.mf, entries)
            .ok_or_else(|| MfError::Unverified(format!("reduced part of {} is not a catalog entry", mid.label())))?;
        isos.push(g);
        parts.push(Summand::Module(e.label.clone()));
    }
    for &b in &min.blocks {
        isos.push(MFIso::identity(&block_mf(&mid.ctx, b)));
        parts.push(block_summand(b));
    }
    let onto = iso_sum(&isos)?;
    Ok((onto.compose(&min.iso)?, parts))
}

pub(crate) fn transport_sub(c: &mut SESCert, iso: &MFIso) -> Result<()> {
    c.inclusion = c.inclusion.compose(&iso.backward)?;
    c.split0.retraction = iso.forward.p.mul(&c.split0.retraction);
    c.split1.retraction = iso.forward.q.mul(&c.split1.retraction);
    c.sub = iso.forward.target.clone();
    Ok(())
}

pub(crate) fn transport_quot(c: &mut SESCert, iso: &MFIso) -> Result<()> {
    c.projection = iso.forward.compose(&c.projection)?;
    c.split0.section = c.split0.section.mul(&iso.backward.p);
    c.split1.section = c.split1.section.mul(&iso.backward.q);
    c.quot = iso.forward.target.clone();
    Ok(())
}

pub(crate) fn transport_mid(c: &mut SESCert, iso: &MFIso) -> Result<()> {
    c.inclusion = iso.forward.compose(&c.inclusion)?;
    c.projection = c.projection.compose(&iso.backward)?;
    c.split0.retraction = c.split0.retraction.mul(&iso.backward.p);
    c.split1.retraction = c.split1.retraction.mul(&iso.backward.q);
    c.split0.section = iso.forward.p.mul(&c.split0.section);
    c.split1.section = iso.forward.q.mul(&c.split1.section);
    c.mid = iso.forward.target.clone();
    Ok(())
}

pub(crate) fn summand_text(s: &Summand) -> &str {
    match s {
        Summand::Module(l) => l,
        Summand::Free => "R",
        Summand::Trivial => "0",
    }
}

pub(crate) fn sequence_name(c: &SESCert) -> String {
    let mids: Vec<&str> = c.mid_parts.iter().filter(|s| **s != Summand::Trivial).map(summand_text).collect();
    let mid = if mids.is_empty() { "0".to_string() } else { mids.join(" ⊕ ") };
    format!("0 -> {} -> {} -> {} -> 0", c.sub.label(), mid, c.quot.label())
}

/// Replace the three terms of `c` by catalog entries.
pub(crate) fn normalise(mut c: SESCert, entries: &[CatalogEntry]) -> Result<SESCert> {
    let (_, s) = match_entry(&c.sub, entries)
        .ok_or_else(|| MfError::Unverified(format!("left term {} is not a catalog entry", c.sub)))?;
    transport_sub(&mut c, &s)?;
    let (_, q) = match_entry(&c.quot, entries)
        .ok_or_else(|| MfError::Unverified(format!("right term {} is not a catalog entry", c.quot)))?;
    transport_quot(&mut c, &q)?;
    let (m, parts) = normalise_mid(&c.mid, entries)?;
    transport_mid(&mut c, &m)?;
    c.mid = c.mid.clone().with_label(parts.iter().map(summand_text).collect::<Vec<_>>().join(" ⊕ "));
    c.free_rank = parts.iter().filter(|p| **p == Summand::Free).count();
    c.mid_parts = parts;
    c.name = sequence_name(&c);
    Ok(c)
}

/// Label of the entry literally equal to a factorization.
pub(crate) fn literal_label(m: &MatFac, entries: &[CatalogEntry]) -> Option<String> {
    entries.iter().find(|e| e.mf == *m).map(|e| e.label.clone())
}

/// The syzygy of a normalised certificate, with terms relabelled by entries.
pub(crate) fn syzygy_cert(c: &SESCert, entries: &[CatalogEntry]) -> Result<SESCert> {
    let mut s = c.syzygy();
    let relabel = |m: &MatFac| -> Result<MatFac> {
        let l = literal_label(m, entries)
            .ok_or_else(|| MfError::Unverified(format!("syzygy {} is not a catalog entry", m.label())))?;
        Ok(m.clone().with_label(l))
    };
    s.sub = relabel(&s.sub)?;
    s.quot = relabel(&s.quot)?;
    s.inclusion.source = s.sub.clone();
    s.projection.target = s.quot.clone();
    let mut parts = Vec::new();
    for p in &c.mid_parts {
        parts.push(match p {
            Summand::Module(l) => {
                let e = entries.iter().find(|e| &e.label == l).ok_or_else(|| MfError::UnknownModule(l.clone()))?;
                Summand::Module(relabel(&e.mf.syzygy())?.label().to_string())
            }
            other => other.syzygy(),
        });
    }
    s.mid = s.mid.clone().with_label(parts.iter().map(summand_text).collect::<Vec<_>>().join(" ⊕ "));
    s.inclusion.target = s.mid.clone();
    s.projection.source = s.mid.clone();
    s.mid_parts = parts;
    s.name = sequence_name(&s);
    Ok(s)
}

/// `F(M_1 ⊕ … ⊕ M_k) -> F(M_1) ⊕ … ⊕ F(M_k)`, a permutation on both sides.
fn knorrer_sum_iso(fm: &MatFac, parts: &[MatFac]) -> Result<MFIso> {
    let nv = fm.ctx.nvars();
    let total: usize = parts.iter().map(MatFac::size).sum();
    let mut perm = vec![0; 2 * total];
    let mut off = 0;
    for p in parts {
        let n = p.size();
        for k in 0..n {
            perm[off + k] = 2 * off + k;
            perm[total + off + k] = 2 * off + n + k;
        }
        off += n;
    }
    let lifted: Vec<MatFac> = parts.iter().map(MatFac::knorrer).collect::<Result<_>>()?;
    let target = MatFac::direct_sum_all(&lifted.iter().collect::<Vec<_>>())?;
    let p = Mat::permutation(&perm, nv);
    let pt = p.transpose();
    Ok(MFIso {
        forward: MFMorphism { source: fm.clone(), target: target.clone(), p: p.clone(), q: p },
        backward: MFMorphism { source: target, target: fm.clone(), p: pt.clone(), q: pt },
    })
}

fn extend(m: &Mat) -> Mat {
    m.map(|p: &Poly| p.extend_vars(2))
}

/// The Knörrer image of a normalised certificate, normalised against the lifted entries.
pub(crate) fn lift_cert(c: &SESCert, base: &[CatalogEntry], lifted: &[CatalogEntry]) -> Result<SESCert> {
    let inclusion = c.inclusion.knorrer_lift()?;
    let projection = c.projection.knorrer_lift()?;
    let nv = inclusion.p.nvars();
    let split = |a: &Splitting, b: &Splitting| Splitting {
        retraction: Mat::block_diag(&[&extend(&a.retraction), &extend(&b.retraction)], nv),
        section: Mat::block_diag(&[&extend(&a.section), &extend(&b.section)], nv),
    };
    let mut out = SESCert {
        name: String::new(),
        sub: inclusion.source.clone(),
        mid: inclusion.target.clone(),
        quot: projection.target.clone(),
        split0: split(&c.split0, &c.split1),
        split1: split(&c.split1, &c.split0),
        inclusion,
        projection,
        free_rank: 0,
        mid_parts: vec![],
    };
    let base_ctx = &c.mid.ctx;
    let part_mfs: Vec<MatFac> = c
        .mid_parts
        .iter()
        .map(|p| match p {
            Summand::Module(l) => base
                .iter()
                .find(|e| &e.label == l)
                .map(|e| e.mf.clone())
                .ok_or_else(|| MfError::UnknownModule(l.clone())),
            Summand::Free => Ok(MatFac::free(base_ctx)),
            Summand::Trivial => Ok(MatFac::trivial(base_ctx)),
        })
        .collect::<Result<_>>()?;
    let perm = knorrer_sum_iso(&out.mid, &part_mfs)?;
    let mut isos = Vec::new();
    let mut parts = Vec::new();
    for (summand, m) in c.mid_parts.iter().zip(&part_mfs) {
        let fm = m.knorrer()?;
        match summand {
            Summand::Module(_) => {
                let (e, iso) = match_entry(&fm, lifted)
                    .ok_or_else(|| MfError::Unverified(format!("{} is not a lifted entry", fm.label())))?;
                isos.push(iso);
                parts.push(Summand::Module(e.label.clone()));
            }
            _ => {
                let min = minimize(&fm)?;
                if min.mf.size() != 0 {
                    return Err(MfError::Unverified("Knörrer image of a unit block is not split".into()));
                }
                isos.push(min.iso.clone());
                parts.extend(min.blocks.iter().map(|&b| block_summand(b)));
            }
        }
    }
    let onto = iso_sum(&isos)?.compose(&perm)?;
    transport_mid(&mut out, &onto)?;
    let (_, s) = match_entry(&out.sub, lifted).ok_or_else(|| MfError::UnknownModule(out.sub.label().into()))?;
    transport_sub(&mut out, &s)?;
    let (_, q) = match_entry(&out.quot, lifted).ok_or_else(|| MfError::UnknownModule(out.quot.label().into()))?;
    transport_quot(&mut out, &q)?;
    out.mid = out.mid.clone().with_label(parts.iter().map(summand_text).collect::<Vec<_>>().join(" ⊕ "));
    out.free_rank = parts.iter().filter(|p| **p == Summand::Free).count();
    out.mid_parts = parts;
    out.name = sequence_name(&out);
    Ok(out)
}

/// Apply `fm` to every factorization and `fx` to every matrix of a certificate.
pub(crate) fn map_cert(
    c: &SESCert,
    fm: &dyn Fn(&MatFac) -> Result<MatFac>,
    fx: &dyn Fn(&Mat) -> Mat,
) -> Result<SESCert> {
    let mor = |m: &MFMorphism| -> Result<MFMorphism> {
        Ok(MFMorphism { source: fm(&m.source)?, target: fm(&m.target)?, p: fx(&m.p), q: fx(&m.q) })
    };
    let split = |s: &Splitting| Splitting { retraction: fx(&s.retraction), section: fx(&s.section) };
    Ok(SESCert {
        name: c.name.clone(),
        sub: fm(&c.sub)?,
        mid: fm(&c.mid)?,
        quot: fm(&c.quot)?,
        inclusion: mor(&c.inclusion)?,
        projection: mor(&c.projection)?,
        split0: split(&c.split0),
        split1: split(&c.split1),
        free_rank: c.free_rank,
        mid_parts: c.mid_parts.clone(),
    })
}

pub(crate) fn map_iso(i: &MFIso, fm: &dyn Fn(&MatFac) -> Result<MatFac>, fx: &dyn Fn(&Mat) -> Mat) -> Result<MFIso> {
    let mor = |m: &MFMorphism| -> Result<MFMorphism> {
        Ok(MFMorphism { source: fm(&m.source)?, target: fm(&m.target)?, p: fx(&m.p), q: fx(&m.q) })
    };
    Ok(MFIso { forward: mor(&i.forward)?, backward: mor(&i.backward)? })
}
