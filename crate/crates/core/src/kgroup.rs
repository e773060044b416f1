//! Grothendieck groups of the catalogs and the multirank map.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{build_catalog, CatalogEntry};
use crate::error::{MfError, Result};
use crate::homology::Summand;
use crate::locus::PrimeSpec;
use crate::matfac::MatFac;
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::ring::{make_ring, Ctx, Family, Form};

pub type IntMat = Vec<Vec<BigInt>>;

/// `U M V = D` with `U`, `V` unimodular and `d_1 | d_2 | ...` on the diagonal of `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnfResult {
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
    pub classification: Classification,
}

/// `ℤ^free_rank ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Classification {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Classification {
        Classification { free_rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}Z")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
}

fn int_mul(a: &IntMat, b: &IntMat, inner: usize) -> IntMat {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

/// Determinant by fraction-free elimination.
pub fn int_det(m: &IntMat) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

struct Snf {
    d: IntMat,
    u: IntMat,
    v: IntMat,
    rows: usize,
    cols: usize,
}

impl Snf {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in self.d.iter_mut().chain(self.v.iter_mut()) {
            r.swap(a, b);
        }
    }

    /// row `dst` += k * row `src`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let x = &self.d[src][j] * k;
            self.d[dst][j] += x;
        }
        for j in 0..self.rows {
            let x = &self.u[src][j] * k;
            self.u[dst][j] += x;
        }
    }

    /// col `dst` += k * col `src`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in self.d.iter_mut().chain(self.v.iter_mut()) {
            let x = &r[src] * k;
            r[dst] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.d[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.d[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((i, j)) = self.smallest(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            let mut clean = true;
            for i in t + 1..self.rows {
                let q = self.d[i][t].div_floor(&self.d[t][t]);
                if !q.is_zero() {
                    self.add_row(i, t, &-q);
                }
                clean &= self.d[i][t].is_zero();
            }
            for j in t + 1..self.cols {
                let q = self.d[t][j].div_floor(&self.d[t][t]);
                if !q.is_zero() {
                    self.add_col(j, t, &-q);
                }
                clean &= self.d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad =
                (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.d[i][j].is_multiple_of(&self.d[t][t])));
            if let Some(i) = bad {
                self.add_row(t, i, &BigInt::one());
                continue;
            }
            if self.d[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
    }
}

impl SnfResult {
    /// Recomputes `U M V = D`, `|det U| = |det V| = 1` and the divisibility chain.
    pub fn check(&self, m: &IntMat) -> bool {
        let rows = self.u.len();
        let cols = self.v.len();
        if m.len() != rows || m.iter().any(|r| r.len() != cols) {
            return false;
        }
        let umv = int_mul(&int_mul(&self.u, m, rows), &self.v, cols);
        if umv != self.d || !int_det(&self.u).abs().is_one() || !int_det(&self.v).abs().is_one() {
            return false;
        }
        let diag: Vec<&BigInt> = (0..rows.min(cols)).map(|i| &self.d[i][i]).collect();
        let off_diag_zero = (0..rows).all(|i| (0..cols).all(|j| i == j || self.d[i][j].is_zero()));
        let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(w[0]) });
        off_diag_zero && chain && diag.iter().all(|x| !x.is_negative())
    }
}

/// Smith normal form of a `rows × cols` integer matrix.
pub fn snf(m: &IntMat, cols: usize) -> SnfResult {
    let rows = m.len();
    let mut s = Snf { d: m.clone(), u: identity(rows), v: identity(cols), rows, cols };
    s.run();
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| s.d[i][i].clone()).filter(|x| !x.is_zero()).collect();
    let classification =
        Classification { free_rank: cols - diag.len(), torsion: diag.into_iter().filter(|x| !x.is_one()).collect() };
    let out = SnfResult { u: s.u, v: s.v, d: s.d, classification };
    assert!(out.check(m), "Smith normal form postconditions");
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Cm,
    Stable,
}

impl std::str::FromStr for Variant {
    type Err = MfError;
    fn from_str(s: &str) -> Result<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "cm" => Ok(Variant::Cm),
            "stable" => Ok(Variant::Stable),
            other => Err(MfError::Parse(format!("unknown variant `{other}`"))),
        }
    }
}

/// Generators and integer relations; relation rows index the generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbPresentation {
    pub generators: Vec<String>,
    pub relations: IntMat,
    /// The certificate each relation row came from.
    pub sources: Vec<String>,
}

impl AbPresentation {
    pub fn classify(&self) -> Classification {
        snf(&self.relations, self.generators.len()).classification
    }

    /// Drops the `[R]` generator, which is the quotient by `[R] = 0`.
    pub fn stable(&self) -> AbPresentation {
        let k = self.generators.iter().position(|g| g == "[R]").expect("[R] is a generator");
        let drop =
            |row: &Vec<BigInt>| row.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, x)| x.clone()).collect();
        AbPresentation {
            generators: self.generators.iter().filter(|g| *g != "[R]").cloned().collect(),
            relations: self.relations.iter().map(drop).collect(),
            sources: self.sources.clone(),
        }
    }
}

/// One relation per verified sequence (`[mid] - [L] - [N]`, free blocks in the `[R]`
/// column) and per verified isomorphism (`[M] - [M']`).
pub fn harvest_relations(ctx: &Ctx, n_max: u32) -> Result<AbPresentation> {
    if n_max == 0 {
        return Ok(AbPresentation { generators: vec!["[R]".into()], relations: vec![], sources: vec![] });
    }
    let cat = build_catalog(ctx, n_max)?;
    let mut generators = vec!["[R]".to_string()];
    generators.extend(cat.entries.iter().filter(|e| !e.is_free()).map(|e| e.label.clone()));
    let col = |label: &str| -> Result<usize> {
        let key = if label == "R" { "[R]" } else { label };
        generators.iter().position(|g| g == key).ok_or_else(|| MfError::UnknownModule(label.to_string()))
    };
    let mut relations = Vec::new();
    let mut sources = Vec::new();
    for c in cat.sequences_with_syzygies()? {
        c.verify()?;
        let mut row = vec![BigInt::zero(); generators.len()];
        row[col(c.sub.label())?] -= 1;
        row[col(c.quot.label())?] -= 1;
        for p in &c.mid_parts {
            match p {
                Summand::Module(l) => row[col(l)?] += 1,
                Summand::Free => row[0] += 1,
                Summand::Trivial => {}
            }
        }
        relations.push(row);
        sources.push(c.name.clone());
    }
    for i in &cat.isos {
        i.iso.check()?;
        let mut row = vec![BigInt::zero(); generators.len()];
        row[col(&i.source)?] += 1;
        row[col(&i.target)?] -= 1;
        relations.push(row);
        sources.push(format!("{} ≅ {}", i.source, i.target));
    }
    Ok(AbPresentation { generators, relations, sources })
}

#[derive(Clone, Debug, Serialize)]
pub struct K0Result {
    pub variant: Variant,
    pub n_max: u32,
    pub presentation: AbPresentation,
    pub classification: Classification,
    /// Whether the ring is a domain, the hypothesis under which the quotient
    /// by `[R]` is the stable group.
    pub domain: bool,
}

fn is_domain(ctx: &Ctx) -> bool {
    !(ctx.dim() == 1 || (ctx.family() == Family::A && ctx.dim() == 2))
}

/// The classification at `n_max`, checked to agree with the one at `n_max + 1`.
pub fn present_k0(ctx: &Ctx, variant: Variant, n_max: u32) -> Result<K0Result> {
    if n_max < 1 {
        return Err(MfError::NMax { min: 1, got: n_max as usize });
    }
    let pick = |p: AbPresentation| match variant {
        Variant::Cm => p,
        Variant::Stable => p.stable(),
    };
    let here = pick(harvest_relations(ctx, n_max)?);
    let next = pick(harvest_relations(ctx, n_max + 1)?);
    let (a, b) = (here.classify(), next.classify());
    if a != b {
        return Err(MfError::Unstable(a.to_string(), b.to_string()));
    }
    Ok(K0Result { variant, n_max, presentation: here, classification: a, domain: is_domain(ctx) })
}

/// The groups of the classification table, by family and parity of the dimension.
pub fn expected_k0(family: Family, d: u32, variant: Variant) -> Classification {
    let odd = d % 2 == 1;
    let two_free = (family == Family::A) != odd;
    match variant {
        Variant::Cm if family == Family::A && d == 1 => Classification::new(1, &[]),
        Variant::Cm if two_free => Classification::new(2, &[]),
        Variant::Cm => Classification::new(1, &[2]),
        Variant::Stable if two_free => Classification::new(1, &[]),
        Variant::Stable => Classification::new(0, &[2]),
    }
}

/// Minimal primes of the base rings with the nilpotency order of `R` there.
pub fn minimal_primes(ctx: &Ctx) -> Result<Vec<(PrimeSpec, u32)>> {
    let prime = |name: &str, var: usize| PrimeSpec { name: name.to_string(), vars: vec![var] };
    match (ctx.family(), ctx.dim()) {
        (Family::A, 1) => Ok(vec![(prime("(x0)", 0), 2)]),
        (Family::D, 1) => Ok(vec![(prime("(x0)", 0), 2), (prime("(x1)", 1), 1)]),
        (Family::A, 2) => Ok(vec![(prime("(x0)", 0), 1), (prime("(x2)", 2), 1)]),
        (Family::D, 2) => Ok(vec![(PrimeSpec { name: "(0)".into(), vars: vec![] }, 1)]),
        _ => Err(MfError::Unsupported(format!("multirank over {}", ctx.spec()))),
    }
}

/// Lowest power of `t` in `p`.
fn t_valuation(p: &Poly, t: usize) -> Option<i32> {
    p.terms().map(|(m, _)| m.0[t]).min()
}

fn truncate(p: &Poly, t: usize, e: i32) -> Poly {
    p.map_terms(|m, c| (m.0[t] < e).then(|| (m.clone(), c.clone())))
}

/// Length of `Cok A` over the localisation at `(t)` of `S/(t^e)`.
fn local_length(a: &Mat, t: usize, e: i32) -> u64 {
    let n = a.rows();
    let mut m = a.map(|p| truncate(p, t, e));
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..a.cols()).collect();
    let mut total = 0u64;
    loop {
        let mut best: Option<(i32, usize, usize)> = None;
        for &i in &rows {
            for &j in &cols {
                if let Some(v) = t_valuation(&m[(i, j)], t) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        let piv = m[(i, j)].clone();
        let mut shift = vec![0; m.nvars()];
        shift[t] = -v;
        let unit = piv.mul_term(&crate::scalar::Field::one(), &crate::poly::Monomial(shift.clone()));
        for &r in rows.iter().filter(|&&r| r != i) {
            let arj = m[(r, j)].mul_term(&crate::scalar::Field::one(), &crate::poly::Monomial(shift.clone()));
            if arj.is_zero() {
                continue;
            }
            for k in 0..m.cols() {
                m[(r, k)] = truncate(&(&(&unit * &m[(r, k)]) - &(&arj * &m[(i, k)])), t, e);
            }
        }
        total += v.min(e) as u64;
        rows.retain(|&r| r != i);
        cols.retain(|&c| c != j);
    }
    total + e as u64 * rows.len() as u64
}

/// Rank of `Cok A` over the fraction field of a domain `S/(f)`.
fn domain_rank(a: &Mat, ctx: &crate::ring::RingCtx) -> u64 {
    let n = a.rows();
    let mut m = a.nf(ctx);
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..a.cols()).collect();
    let mut rank = 0;
    while let Some((i, j)) = rows.iter().find_map(|&i| cols.iter().find(|&&j| !m[(i, j)].is_zero()).map(|&j| (i, j))) {
        let piv = m[(i, j)].clone();
        for &r in rows.iter().filter(|&&r| r != i) {
            let arj = m[(r, j)].clone();
            if arj.is_zero() {
                continue;
            }
            for k in 0..m.cols() {
                m[(r, k)] = ctx.reduce(&(&(&piv * &m[(r, k)]) - &(&arj * &m[(i, k)])));
            }
        }
        rank += 1;
        rows.retain(|&r| r != i);
        cols.retain(|&c| c != j);
    }
    (n - rank) as u64
}

/// Lengths of the localisations of `Cok A` at the minimal primes (d ≤ 2).
pub fn multirank_mf(mf: &MatFac) -> Result<Vec<(PrimeSpec, u64)>> {
    let ctx = &mf.ctx;
    if ctx.dim() > 2 {
        return Err(MfError::Unsupported(format!("multirank over {}", ctx.spec())));
    }
    let uv = make_ring(ctx.family(), ctx.dim(), Form::Uv)?;
    let mf = if ctx.same_ring(&uv) { mf.clone() } else { mf.change_coordinates(&uv)? };
    minimal_primes(&uv)?
        .into_iter()
        .map(|(p, e)| {
            let len = match p.vars.as_slice() {
                [t] => local_length(&mf.a, *t, e as i32),
                _ => domain_rank(&mf.a, &uv),
            };
            Ok((p, len))
        })
        .collect()
}

pub fn multirank(entry: &CatalogEntry) -> Result<Vec<(PrimeSpec, u64)>> {
    multirank_mf(&entry.mf)
}
