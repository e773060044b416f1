//! JSON wire formats. Polynomials travel as strings in the text format.

use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{MfError, Result};
use crate::homology::{SESCert, Splitting, Summand};
use crate::locus::{LocalFreeCert, PrimeSpec};
use crate::matfac::{MFMorphism, MatFac};
use crate::matrix::Mat;
use crate::ring::{Ctx, RingCtx, RingSpec};
use crate::text::{parse_poly, poly_to_string};

pub type MatJson = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatFacJson {
    pub ctx: RingSpec,
    pub size: usize,
    #[serde(rename = "A")]
    pub a: MatJson,
    #[serde(rename = "B")]
    pub b: MatJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapJson {
    pub p: MatJson,
    pub q: MatJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplittingJson {
    pub retraction: MatJson,
    pub section: MatJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SesJson {
    pub name: String,
    pub sub: MatFacJson,
    pub mid: MatFacJson,
    pub quot: MatFacJson,
    pub inclusion: MapJson,
    pub projection: MapJson,
    pub split0: SplittingJson,
    pub split1: SplittingJson,
    pub free_rank: usize,
    #[serde(default)]
    pub mid_parts: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClearingJson {
    pub var: String,
    pub exponent: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalCertJson {
    pub ctx: RingSpec,
    pub prime: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_name: Option<String>,
    #[serde(rename = "U")]
    pub u: MatJson,
    #[serde(rename = "V")]
    pub v: MatJson,
    #[serde(rename = "D")]
    pub d: MatJson,
    pub clearing: ClearingJson,
}

pub fn mat_to_json(m: &Mat, ctx: &RingCtx) -> MatJson {
    m.to_rows().iter().map(|r| r.iter().map(|p| poly_to_string(p, ctx)).collect()).collect()
}

/// An `rows × cols` matrix; `cols` is needed for matrices without rows.
pub fn mat_from_json(rows: &MatJson, cols: usize, ctx: &RingCtx) -> Result<Mat> {
    if rows.is_empty() {
        return Ok(Mat::zeros(0, cols, ctx.nvars()));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_poly(s, ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = Mat::from_rows(parsed, ctx.nvars())?;
    if m.cols() != cols {
        return Err(MfError::SizeMismatch(format!("expected {cols} columns, found {}", m.cols())));
    }
    Ok(m)
}

pub fn matfac_to_wire(m: &MatFac) -> MatFacJson {
    MatFacJson {
        ctx: m.ctx.spec(),
        size: m.size(),
        a: mat_to_json(&m.a, &m.ctx),
        b: mat_to_json(&m.b, &m.ctx),
        label: m.label.clone(),
    }
}

pub fn matfac_from_wire(w: &MatFacJson) -> Result<MatFac> {
    let ctx = RingCtx::from_spec(w.ctx)?;
    matfac_from_wire_in(w, &ctx)
}

fn matfac_from_wire_in(w: &MatFacJson, ctx: &Ctx) -> Result<MatFac> {
    if w.ctx != ctx.spec() {
        return Err(MfError::ContextMismatch(w.ctx.to_string(), ctx.spec().to_string()));
    }
    if w.a.len() != w.size || w.b.len() != w.size {
        return Err(MfError::SizeMismatch(format!(
            "declared size {} but {} and {} rows",
            w.size,
            w.a.len(),
            w.b.len()
        )));
    }
    let a = mat_from_json(&w.a, w.size, ctx)?;
    let b = mat_from_json(&w.b, w.size, ctx)?;
    MatFac::new(ctx.clone(), a, b, w.label.clone())
}

pub fn matfac_to_json(m: &MatFac) -> String {
    serde_json::to_string_pretty(&matfac_to_wire(m)).expect("serializable")
}

pub fn matfac_from_json(s: &str) -> Result<MatFac> {
    let w: MatFacJson = serde_json::from_str(s).map_err(|e| MfError::Json(e.to_string()))?;
    matfac_from_wire(&w)
}

pub fn ses_to_wire(c: &SESCert) -> SesJson {
    let ctx = &c.mid.ctx;
    let map = |m: &MFMorphism| MapJson { p: mat_to_json(&m.p, ctx), q: mat_to_json(&m.q, ctx) };
    let split = |s: &Splitting| SplittingJson {
        retraction: mat_to_json(&s.retraction, ctx),
        section: mat_to_json(&s.section, ctx),
    };
    SesJson {
        name: c.name.clone(),
        sub: matfac_to_wire(&c.sub),
        mid: matfac_to_wire(&c.mid),
        quot: matfac_to_wire(&c.quot),
        inclusion: map(&c.inclusion),
        projection: map(&c.projection),
        split0: split(&c.split0),
        split1: split(&c.split1),
        free_rank: c.free_rank,
        mid_parts: c.mid_parts.clone(),
    }
}

/// Parses the certificate without checking its identities.
pub fn ses_from_wire(w: &SesJson) -> Result<SESCert> {
    let ctx = RingCtx::from_spec(w.mid.ctx)?;
    let sub = matfac_from_wire_in(&w.sub, &ctx)?;
    let mid = matfac_from_wire_in(&w.mid, &ctx)?;
    let quot = matfac_from_wire_in(&w.quot, &ctx)?;
    let (a, m, b) = (sub.size(), mid.size(), quot.size());
    let map = |j: &MapJson, cols: usize| -> Result<(Mat, Mat)> {
        Ok((mat_from_json(&j.p, cols, &ctx)?, mat_from_json(&j.q, cols, &ctx)?))
    };
    let (ip, iq) = map(&w.inclusion, a)?;
    let (pp, pq) = map(&w.projection, m)?;
    let split = |s: &SplittingJson| -> Result<Splitting> {
        Ok(Splitting {
            retraction: mat_from_json(&s.retraction, m, &ctx)?,
            section: mat_from_json(&s.section, b, &ctx)?,
        })
    };
    Ok(SESCert {
        name: w.name.clone(),
        inclusion: MFMorphism { source: sub.clone(), target: mid.clone(), p: ip, q: iq },
        projection: MFMorphism { source: mid.clone(), target: quot.clone(), p: pp, q: pq },
        split0: split(&w.split0)?,
        split1: split(&w.split1)?,
        sub,
        mid,
        quot,
        free_rank: w.free_rank,
        mid_parts: w.mid_parts.clone(),
    })
}

pub fn ses_to_json(c: &SESCert) -> String {
    serde_json::to_string_pretty(&ses_to_wire(c)).expect("serializable")
}

pub fn ses_from_json(s: &str) -> Result<SESCert> {
    let w: SesJson = serde_json::from_str(s).map_err(|e| MfError::Json(e.to_string()))?;
    ses_from_wire(&w)
}

pub fn local_cert_to_wire(c: &LocalFreeCert, ctx: &RingCtx) -> LocalCertJson {
    let nv = ctx.nvars();
    let d = Mat::diag(&c.d.iter().map(|&x| crate::poly::Poly::from_i64(x as i64, nv)).collect::<Vec<_>>(), nv);
    LocalCertJson {
        ctx: ctx.spec(),
        prime: c.prime.var_names(ctx),
        prime_name: Some(c.prime.name.clone()),
        u: mat_to_json(&c.u, ctx),
        v: mat_to_json(&c.v, ctx),
        d: mat_to_json(&d, ctx),
        clearing: ClearingJson { var: ctx.var_names()[c.clearing_var].clone(), exponent: c.clearing_exponent },
    }
}

pub fn local_cert_from_wire(w: &LocalCertJson) -> Result<LocalFreeCert> {
    let ctx = RingCtx::from_spec(w.ctx)?;
    let names: Vec<&str> = w.prime.iter().map(String::as_str).collect();
    let display = format!("({})", names.join(", "));
    let prime = PrimeSpec::from_names(&ctx, w.prime_name.as_deref().unwrap_or(&display), &names)?;
    let n = w.u.len();
    let d = mat_from_json(&w.d, n, &ctx)?;
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            let e = &d[(i, j)];
            let ok = if i == j { e.is_zero() || e.is_one() } else { e.is_zero() };
            if !ok {
                return Err(MfError::Parse(format!("D must be diagonal with entries 0 or 1, found ({i}, {j})")));
            }
        }
        diag.push(u8::from(d[(i, i)].is_one()));
    }
    let clearing_var = ctx
        .var_index(&w.clearing.var)
        .ok_or_else(|| MfError::Parse(format!("unknown variable `{}`", w.clearing.var)))?;
    Ok(LocalFreeCert {
        prime,
        u: mat_from_json(&w.u, n, &ctx)?,
        v: mat_from_json(&w.v, n, &ctx)?,
        d: diag,
        clearing_var,
        clearing_exponent: w.clearing.exponent,
    })
}

pub fn local_cert_to_json(c: &LocalFreeCert, ctx: &RingCtx) -> String {
    serde_json::to_string_pretty(&local_cert_to_wire(c, ctx)).expect("serializable")
}

pub fn local_cert_from_json(s: &str) -> Result<LocalFreeCert> {
    let w: LocalCertJson = serde_json::from_str(s).map_err(|e| MfError::Json(e.to_string()))?;
    local_cert_from_wire(&w)
}

/// The catalog as an array of factorization records.
pub fn catalog_to_json(cat: &Catalog) -> String {
    let recs: Vec<MatFacJson> = cat.entries.iter().map(|e| matfac_to_wire(&e.mf)).collect();
    serde_json::to_string_pretty(&recs).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, Family, Form};

    #[test]
    fn matfac_round_trip() {
        let ctx = make_ring(Family::D, 2, Form::X).unwrap();
        let cat = crate::catalog::build_catalog(&ctx, 2).unwrap();
        for e in &cat.entries {
            let back = matfac_from_json(&matfac_to_json(&e.mf)).unwrap();
            assert_eq!(back, e.mf);
            assert_eq!(back.label, e.mf.label);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(matfac_from_json("{"), Err(MfError::Json(_))));
        let ctx = make_ring(Family::A, 1, Form::X).unwrap();
        let mut w = matfac_to_wire(&MatFac::free(&ctx));
        w.size = 2;
        assert!(matfac_from_wire(&w).is_err());
        w.size = 1;
        w.a = vec![vec!["y7".into()]];
        assert!(matches!(matfac_from_wire(&w), Err(MfError::Parse(_))));
    }
}
