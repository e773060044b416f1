//! Freeness and nonfreeness of cokernels at variable-generated primes.
//!
//! Localization is never built as a ring. An element of `R_p` is stored as a
//! Laurent polynomial whose negative exponents sit only on variables outside
//! `p`; it is zero in `R_p` iff after clearing denominators it is divisible by
//! the *local modulus* (the defining polynomial with the factors that became
//! units removed).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MfError, Result};
use crate::matfac::MatFac;
use crate::matrix::Mat;
use crate::poly::{Monomial, Poly};
use crate::ring::{reduce_by, RingCtx};
use crate::scalar::Field;
use crate::text::poly_to_string;

/// A prime ideal generated by a subset of the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeSpec {
    pub name: String,
    /// Sorted variable indices.
    pub vars: Vec<usize>,
}

impl PrimeSpec {
    pub fn new(ctx: &RingCtx, name: &str, mut vars: Vec<usize>) -> Result<PrimeSpec> {
        vars.sort_unstable();
        vars.dedup();
        if let Some(&v) = vars.iter().find(|&&v| v >= ctx.nvars()) {
            return Err(MfError::VariableMismatch { expected: ctx.nvars(), found: v + 1 });
        }
        if !ctx.f().kill_vars(&vars).is_zero() {
            return Err(MfError::Unsupported(format!("f does not lie in the ideal {}", show_vars(ctx, &vars))));
        }
        Ok(PrimeSpec { name: name.to_string(), vars })
    }

    pub fn from_names(ctx: &RingCtx, name: &str, names: &[&str]) -> Result<PrimeSpec> {
        let vars = names
            .iter()
            .map(|n| ctx.var_index(n).ok_or_else(|| MfError::Parse(format!("unknown variable `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        PrimeSpec::new(ctx, name, vars)
    }

    pub fn contains(&self, var: usize) -> bool {
        self.vars.binary_search(&var).is_ok()
    }

    /// Variables that become units after localizing.
    pub fn inverted(&self, ctx: &RingCtx) -> Vec<usize> {
        (0..ctx.nvars()).filter(|v| !self.contains(*v)).collect()
    }

    pub fn display(&self, ctx: &RingCtx) -> String {
        show_vars(ctx, &self.vars)
    }

    pub fn var_names(&self, ctx: &RingCtx) -> Vec<String> {
        self.vars.iter().map(|&v| ctx.var_names()[v].clone()).collect()
    }
}

impl fmt::Display for PrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn show_vars(ctx: &RingCtx, vars: &[usize]) -> String {
    let names: Vec<&str> = vars.iter().map(|&v| ctx.var_names()[v].as_str()).collect();
    format!("({})", names.join(", "))
}

/// `p`: every variable except `x1`.
pub fn prime_p(ctx: &RingCtx) -> PrimeSpec {
    let vars = (0..ctx.nvars()).filter(|&v| v != 1).collect();
    PrimeSpec::new(ctx, "p", vars).expect("f lies in p")
}

/// `m`: the maximal ideal.
pub fn prime_m(ctx: &RingCtx) -> PrimeSpec {
    PrimeSpec::new(ctx, "m", (0..ctx.nvars()).collect()).expect("f lies in m")
}

/// `q = (x1)`, only a prime containing `f` for D-infinity in dimension one.
pub fn prime_q(ctx: &RingCtx) -> Result<PrimeSpec> {
    PrimeSpec::new(ctx, "q", vec![1])
}

/// The named primes of the ring: `p`, `m`, and for D-infinity of dimension one also `q`.
pub fn named_primes(ctx: &RingCtx) -> Vec<PrimeSpec> {
    let mut v = vec![prime_p(ctx)];
    if let Ok(q) = prime_q(ctx) {
        v.push(q);
    }
    v.push(prime_m(ctx));
    v
}

/// The generator of `f R_p` after removing unit factors (monomial `f` only).
pub fn local_modulus(ctx: &RingCtx, prime: &PrimeSpec) -> Poly {
    let f = ctx.f();
    match f.as_term() {
        Some((c, m)) => {
            let mut e = m.0.clone();
            for v in prime.inverted(ctx) {
                e[v] = 0;
            }
            Poly::term(c, Monomial(e))
        }
        None => f.clone(),
    }
}

/// A monomial `x^a` with `x^a p` polynomial (and `a` minimal).
fn clearing_monomial(p: &Poly) -> Monomial {
    Monomial(p.min_exponents().into_iter().map(|e| (-e).max(0)).collect())
}

/// Arithmetic in `R_p`.
pub struct LocalRing<'a> {
    pub ctx: &'a RingCtx,
    pub prime: PrimeSpec,
    modulus: Poly,
    lead: Monomial,
}

impl<'a> LocalRing<'a> {
    pub fn new(ctx: &'a RingCtx, prime: &PrimeSpec) -> LocalRing<'a> {
        let modulus = local_modulus(ctx, prime);
        let lead = ctx.leading_monomial(&modulus).expect("nonzero modulus");
        LocalRing { ctx, prime: prime.clone(), modulus, lead }
    }

    fn check_denominators(&self, p: &Poly) -> Result<()> {
        for (m, _) in p.terms() {
            if let Some(v) = self.prime.vars.iter().find(|&&v| m.0[v] < 0) {
                return Err(MfError::Unsupported(format!(
                    "denominator in {} which lies in the prime",
                    self.ctx.var_names()[*v]
                )));
            }
        }
        Ok(())
    }

    /// Canonical representative: `x^-a * rem(x^a p, modulus)`.
    pub fn normalize(&self, p: &Poly) -> Poly {
        let a = clearing_monomial(p);
        let cleared = p.mul_term(&Field::one(), &a);
        let r = reduce_by(&cleared, &self.modulus, &self.lead, |x, y| self.ctx.cmp_monomials(x, y));
        r.mul_term(&Field::one(), &a.inverse())
    }

    pub fn is_zero(&self, p: &Poly) -> bool {
        self.normalize(p).is_zero()
    }

    /// Nonvanishing modulo the prime after clearing denominators.
    pub fn is_unit(&self, p: &Poly) -> bool {
        let a = clearing_monomial(p);
        let cleared = p.mul_term(&Field::one(), &a);
        !self.ctx.reduce(&cleared).kill_vars(&self.prime.vars).is_zero()
    }

    /// Exact inverse when `p` is a unit monomial in the inverted variables.
    fn monomial_inverse(&self, p: &Poly) -> Option<Poly> {
        let (c, m) = p.as_term()?;
        if self.prime.vars.iter().any(|&v| m.0[v] != 0) {
            return None;
        }
        Some(Poly::term(c.inv()?, m.inverse()))
    }
}

/// Whether `e` is a unit in `R_p`: its normal form survives setting the prime's variables to 0.
pub fn is_unit_at(e: &Poly, prime: &PrimeSpec, ctx: &RingCtx) -> bool {
    LocalRing::new(ctx, prime).is_unit(e)
}

/// Minimal presentation at a prime whose relation matrix is nonzero.
#[derive(Clone, Debug)]
pub struct NonfreeCert {
    pub prime: PrimeSpec,
    pub matrix: Mat,
}

impl NonfreeCert {
    /// All entries lie in the prime and some entry is nonzero in `R_p`.
    pub fn check(&self, ctx: &RingCtx) -> bool {
        let local = LocalRing::new(ctx, &self.prime);
        self.matrix.entries().all(|e| !local.is_unit(e)) && self.matrix.entries().any(|e| !local.is_zero(e))
    }
}

/// `U A V = D` over `R_p` after multiplying through by `var^exponent`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFreeCert {
    pub prime: PrimeSpec,
    pub u: Mat,
    pub v: Mat,
    /// Diagonal of `D`, each entry 0 or 1.
    pub d: Vec<u8>,
    pub clearing_var: usize,
    pub clearing_exponent: i32,
}

impl LocalFreeCert {
    /// Rank of the free localized cokernel.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|&&x| x == 0).count()
    }
}

/// Verdict of [`verify_nonfree`].
#[derive(Clone, Debug)]
pub enum LocalVerdict {
    Nonfree(NonfreeCert),
    /// Free of the given rank; the certificate is present when all pivots were
    /// monomial units.
    Free {
        rank: usize,
        cert: Option<LocalFreeCert>,
    },
}

impl LocalVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, LocalVerdict::Free { .. })
    }
}

fn max_degree(m: &Mat, ctx: &RingCtx) -> i64 {
    m.entries().flat_map(|p| p.terms().map(|(mono, _)| mono.weighted_degree(ctx.weights()).abs())).max().unwrap_or(0)
}

/// Check a localization certificate for `Cok A`.
pub fn verify_local_free_cert(mf: &MatFac, cert: &LocalFreeCert) -> Result<bool> {
    let ctx = &mf.ctx;
    let n = mf.size();
    if cert.prime.vars.iter().any(|&v| v >= ctx.nvars()) || cert.clearing_var >= ctx.nvars() {
        return Err(MfError::VariableMismatch { expected: ctx.nvars(), found: ctx.nvars() + 1 });
    }
    if cert.u.rows() != n || cert.u.cols() != n || cert.v.rows() != n || cert.v.cols() != n || cert.d.len() != n {
        return Err(MfError::SizeMismatch(format!("certificate sizes do not match a {n}x{n} factorization")));
    }
    if cert.prime.contains(cert.clearing_var) {
        return Err(MfError::Unsupported("clearing variable lies in the prime".into()));
    }
    let local = LocalRing::new(ctx, &cert.prime);
    for e in cert.u.entries().chain(cert.v.entries()) {
        local.check_denominators(e)?;
    }
    if cert.d.iter().any(|&x| x > 1) {
        return Ok(false);
    }
    let nv = ctx.nvars();
    let d = Mat::diag(&cert.d.iter().map(|&x| Poly::from_i64(x as i64, nv)).collect::<Vec<_>>(), nv);
    let lhs = cert.u.mul(&mf.a).mul(&cert.v);
    let mut clear = vec![0; nv];
    clear[cert.clearing_var] = cert.clearing_exponent;
    let clear = Monomial(clear);
    for i in 0..n {
        for j in 0..n {
            let diff = (&lhs[(i, j)] - &d[(i, j)]).mul_term(&Field::one(), &clear);
            if diff.is_laurent() {
                return Err(MfError::DenominatorMismatch {
                    var: ctx.var_names()[cert.clearing_var].clone(),
                    exponent: cert.clearing_exponent,
                    detail: format!("entry ({i}, {j}) is {}", poly_to_string(&diff, ctx)),
                });
            }
            if !local.is_zero(&diff) {
                return Ok(false);
            }
        }
    }
    Ok(local.is_unit(&cert.u.det()) && local.is_unit(&cert.v.det()))
}

/// Unit-pivot elimination of `Cok A` over `R_p`.
pub fn verify_nonfree(mf: &MatFac, prime: &PrimeSpec) -> Result<LocalVerdict> {
    let ctx: &RingCtx = &mf.ctx;
    let local = LocalRing::new(ctx, prime);
    let n = mf.size();
    let nv = ctx.nvars();
    let cap = 4 * max_degree(&mf.a, ctx).max(ctx.f_degree());
    let mut a = mf.a.map(|p| local.normalize(p));
    let mut u = Mat::identity(n, nv);
    let mut v = Mat::identity(n, nv);
    let mut rows: Vec<bool> = vec![true; n];
    let mut cols: Vec<bool> = vec![true; n];
    let mut pivots = Vec::new();
    let mut certifiable = true;
    loop {
        let mut choice: Option<(u8, usize, usize)> = None;
        for i in (0..n).filter(|&i| rows[i]) {
            for j in (0..n).filter(|&j| cols[j]) {
                let e = &a[(i, j)];
                if e.is_zero() || !local.is_unit(e) {
                    continue;
                }
                let rank = if e.as_constant().is_some() {
                    0
                } else if local.monomial_inverse(e).is_some() {
                    1
                } else {
                    2
                };
                if choice.is_none_or(|(r, _, _)| rank < r) {
                    choice = Some((rank, i, j));
                }
            }
        }
        let Some((kind, i, j)) = choice else { break };
        let piv = a[(i, j)].clone();
        match local.monomial_inverse(&piv) {
            Some(inv) => {
                for r in (0..n).filter(|&r| r != i && rows[r]) {
                    if a[(r, j)].is_zero() {
                        continue;
                    }
                    let lambda = -(&a[(r, j)] * &inv);
                    for k in 0..n {
                        a[(r, k)] = local.normalize(&(&a[(r, k)] + &(&lambda * &a[(i, k)])));
                        u[(r, k)] = local.normalize(&(&u[(r, k)] + &(&lambda * &u[(i, k)])));
                    }
                }
                for c in (0..n).filter(|&c| c != j && cols[c]) {
                    if a[(i, c)].is_zero() {
                        continue;
                    }
                    let mu = -(&a[(i, c)] * &inv);
                    for k in 0..n {
                        a[(k, c)] = local.normalize(&(&a[(k, c)] + &(&mu * &a[(k, j)])));
                        v[(k, c)] = local.normalize(&(&v[(k, c)] + &(&mu * &v[(k, j)])));
                    }
                }
                for k in 0..n {
                    u[(i, k)] = local.normalize(&(&u[(i, k)] * &inv));
                }
                a[(i, j)] = Poly::one(nv);
            }
            None => {
                debug_assert_eq!(kind, 2);
                certifiable = false;
                for r in (0..n).filter(|&r| r != i && rows[r]) {
                    let arj = a[(r, j)].clone();
                    if arj.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        a[(r, k)] = local.normalize(&(&(&piv * &a[(r, k)]) - &(&arj * &a[(i, k)])));
                    }
                }
            }
        }
        rows[i] = false;
        cols[j] = false;
        pivots.push((i, j));
        let live = Mat::from_fn(n, n, nv, |r, c| if rows[r] && cols[c] { a[(r, c)].clone() } else { Poly::zero(nv) });
        let deg = max_degree(&live.map(|p| p.mul_term(&Field::one(), &clearing_monomial(p))), ctx);
        if deg > cap {
            return Err(MfError::DegreeCap(cap));
        }
    }
    let ar: Vec<usize> = (0..n).filter(|&i| rows[i]).collect();
    let ac: Vec<usize> = (0..n).filter(|&j| cols[j]).collect();
    let rest = a.submatrix(&ar, &ac);
    if rest.entries().any(|e| !local.is_zero(e)) {
        return Ok(LocalVerdict::Nonfree(NonfreeCert { prime: prime.clone(), matrix: rest }));
    }
    let rank = ar.len();
    let cert = if certifiable { build_cert(mf, prime, &u, &v, &pivots, &ar, &ac) } else { None };
    Ok(LocalVerdict::Free { rank, cert })
}

fn build_cert(
    mf: &MatFac,
    prime: &PrimeSpec,
    u: &Mat,
    v: &Mat,
    pivots: &[(usize, usize)],
    free_rows: &[usize],
    free_cols: &[usize],
) -> Option<LocalFreeCert> {
    let ctx = &mf.ctx;
    let n = mf.size();
    let nv = ctx.nvars();
    // column permutation placing pivot column j at row position i
    let mut target = vec![0; n];
    for &(i, j) in pivots {
        target[j] = i;
    }
    for (&r, &c) in free_rows.iter().zip(free_cols) {
        target[c] = r;
    }
    let perm = Mat::permutation(&target, nv);
    let v = v.mul(&perm.transpose());
    let mut d = vec![0u8; n];
    for &(i, _) in pivots {
        d[i] = 1;
    }
    let lhs = u.mul(&mf.a).mul(&v);
    let mut exps: Vec<(usize, i32)> = Vec::new();
    for e in lhs.entries() {
        for (var, ex) in e.min_exponents().into_iter().enumerate() {
            if ex < 0 {
                match exps.iter_mut().find(|(w, _)| *w == var) {
                    Some(slot) => slot.1 = slot.1.max(-ex),
                    None => exps.push((var, -ex)),
                }
            }
        }
    }
    let (clearing_var, clearing_exponent) = match exps.as_slice() {
        [] => (prime.inverted(ctx).first().copied()?, 0),
        [(var, ex)] => (*var, *ex),
        _ => return None,
    };
    Some(LocalFreeCert { prime: prime.clone(), u: u.clone(), v, d, clearing_var, clearing_exponent })
}

/// Per-prime outcome for one module.
#[derive(Clone, Debug)]
pub struct LocusReport {
    pub label: String,
    pub locus: Vec<PrimeSpec>,
    pub verdicts: Vec<(PrimeSpec, LocalVerdict)>,
}

/// The named primes at which `Cok A` is not free, cross-checked against the
/// certificates produced at the primes where it is.
pub fn nonfree_locus(mf: &MatFac) -> Result<LocusReport> {
    nonfree_locus_at(mf, &named_primes(&mf.ctx))
}

pub fn nonfree_locus_at(mf: &MatFac, primes: &[PrimeSpec]) -> Result<LocusReport> {
    let mut verdicts = Vec::new();
    let mut locus = Vec::new();
    for prime in primes {
        let verdict = verify_nonfree(mf, prime)?;
        match &verdict {
            LocalVerdict::Nonfree(c) => {
                if !c.check(&mf.ctx) {
                    return Err(MfError::LocusInconsistency {
                        label: mf.label().into(),
                        prime: prime.name.clone(),
                        detail: "nonfree certificate does not check".into(),
                    });
                }
                locus.push(prime.clone());
            }
            LocalVerdict::Free { rank, cert: Some(c) } => {
                if !verify_local_free_cert(mf, c)? || c.rank() != *rank {
                    return Err(MfError::LocusInconsistency {
                        label: mf.label().into(),
                        prime: prime.name.clone(),
                        detail: "elimination says free but its certificate fails".into(),
                    });
                }
            }
            LocalVerdict::Free { cert: None, .. } => {}
        }
        verdicts.push((prime.clone(), verdict));
    }
    Ok(LocusReport { label: mf.label().into(), locus, verdicts })
}

/// Primes of `R'` pushed to the Knörrer extension `R` by adjoining the two new variables.
pub fn transport_locus(locus: &[PrimeSpec], target: &RingCtx) -> Result<Vec<PrimeSpec>> {
    let nv = target.nvars();
    locus
        .iter()
        .map(|p| {
            let mut vars = p.vars.clone();
            vars.extend([nv - 2, nv - 1]);
            PrimeSpec::new(target, &p.name, vars)
        })
        .collect()
}

/// The localization identities displayed for the base rings, for the given `n`.
pub fn paper_local_certs(mf_ctx: &RingCtx, label: &str, n: u32) -> Vec<LocalFreeCert> {
    use crate::ring::{Family, Form};
    let ctx = mf_ctx;
    let spec = ctx.spec();
    let nv = ctx.nvars();
    let native = spec.form == Form::Uv || spec.d == 1 || (spec.family == Family::D && spec.d == 2);
    if spec.d > 2 || !native {
        return vec![];
    }
    let x = |i: usize| ctx.var(i);
    let c = |k: i64| ctx.constant(k);
    let xinv = |i: usize, e: i32| {
        let mut m = vec![0; nv];
        m[i] = -e;
        Poly::monomial(Field::one(), &m)
    };
    let en = n as i32;
    let m2 = |rows: Vec<Vec<Poly>>| Mat::from_rows(rows, nv).expect("2x2");
    let cert = |prime: PrimeSpec, u: Mat, v: Mat, var: usize, ex: i32| LocalFreeCert {
        prime,
        u,
        v,
        d: vec![0, 1],
        clearing_var: var,
        clearing_exponent: ex,
    };
    let p = prime_p(ctx);
    match (spec.family, spec.d, label) {
        (Family::A, 1, l) if l == format!("phi:{n}") => {
            let u = m2(vec![vec![-(&x(0) * &xinv(1, en)), c(-1)], vec![xinv(1, en), c(0)]]);
            let v = m2(vec![vec![c(1), c(0)], vec![-(&x(0) * &xinv(1, en)), c(1)]]);
            vec![cert(p, u, v, 1, en)]
        }
        (Family::D, 1, l) if l == format!("phi+:{n}") => {
            let u = m2(vec![vec![&x(0) * &xinv(1, en), c(1)], vec![xinv(1, en), c(0)]]);
            let v = m2(vec![vec![c(1), c(0)], vec![-(&x(0) * &xinv(1, en)), c(1)]]);
            vec![cert(p, u, v, 1, en)]
        }
        (Family::D, 1, l) if l == format!("psi+:{n}") => {
            let u = m2(vec![vec![&x(0) * &xinv(1, en), c(1)], vec![xinv(1, en), c(0)]]);
            let v = m2(vec![vec![c(1), c(0)], vec![-(&(&x(0) * &x(1)) * &xinv(1, en)), c(1)]]);
            vec![cert(p, u, v, 1, en)]
        }
        (Family::A, 2, l) if l == format!("phi+:{n}") => {
            let x1n = x(1).pow(n);
            let not_x0 = PrimeSpec::new(ctx, "(x1, x2)", vec![1, 2]).expect("contains f");
            let not_x2 = PrimeSpec::new(ctx, "(x0, x1)", vec![0, 1]).expect("contains f");
            let u0 = m2(vec![vec![x(0), -&x1n], vec![c(0), xinv(0, 1)]]);
            let u1 = m2(vec![vec![&x(0) * &xinv(1, en), c(-1)], vec![c(1), c(0)]]);
            let v1 = m2(vec![vec![-&x1n, x(0)], vec![x(2), xinv(1, en)]]);
            let u2 = m2(vec![vec![c(0), c(1)], vec![c(1), c(0)]]);
            let v2 = m2(vec![vec![-&x1n, xinv(2, 1)], vec![x(2), c(0)]]);
            vec![cert(not_x0, u0, Mat::identity(2, nv), 0, 1), cert(p, u1, v1, 1, en), cert(not_x2, u2, v2, 2, 1)]
        }
        _ => vec![],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, Ctx, Family, Form};

    fn phi(ctx: &Ctx, n: u32) -> MatFac {
        let m = vec![vec![ctx.var(0), ctx.var(1).pow(n)], vec![ctx.zero(), -ctx.var(0)]];
        MatFac::from_rows(ctx, m.clone(), m, &format!("phi:{n}"))
    }

    #[test]
    fn unit_tests_at_p_and_m() {
        let r = make_ring(Family::A, 1, Form::X).unwrap();
        let p = prime_p(&r);
        let m = prime_m(&r);
        assert!(is_unit_at(&r.var(1), &p, &r));
        assert!(!is_unit_at(&r.var(0), &p, &r));
        assert!(is_unit_at(&(r.constant(1) + r.var(0)), &m, &r));
        assert!(!is_unit_at(&r.var(1), &m, &r));
    }

    #[test]
    fn named_primes_per_ring() {
        let d1 = make_ring(Family::D, 1, Form::X).unwrap();
        let names: Vec<String> = named_primes(&d1).into_iter().map(|p| p.name).collect();
        assert_eq!(names, ["p", "q", "m"]);
        let a1 = make_ring(Family::A, 1, Form::X).unwrap();
        assert!(prime_q(&a1).is_err());
        let d2 = make_ring(Family::D, 2, Form::X).unwrap();
        assert_eq!(prime_p(&d2).display(&d2), "(x0, x2)");
    }

    #[test]
    fn local_modulus_strips_inverted_factors() {
        let d1 = make_ring(Family::D, 1, Form::X).unwrap();
        assert_eq!(local_modulus(&d1, &prime_p(&d1)), d1.var(0).pow(2));
        assert_eq!(local_modulus(&d1, &prime_q(&d1).unwrap()), d1.var(1));
        assert_eq!(&local_modulus(&d1, &prime_m(&d1)), d1.f());
    }

    #[test]
    fn r_mod_x0_and_phi_over_a1() {
        let r = make_ring(Family::A, 1, Form::X).unwrap();
        let x0 = MatFac::from_rows(&r, vec![vec![r.var(0)]], vec![vec![r.var(0)]], "R/(x0)");
        match verify_nonfree(&x0, &prime_p(&r)).unwrap() {
            LocalVerdict::Nonfree(c) => assert_eq!(c.matrix, Mat::scalar(1, &r.var(0))),
            v => panic!("{v:?}"),
        }
        let m = phi(&r, 3);
        assert!(matches!(verify_nonfree(&m, &prime_m(&r)).unwrap(), LocalVerdict::Nonfree(_)));
        match verify_nonfree(&m, &prime_p(&r)).unwrap() {
            LocalVerdict::Free { rank: 1, cert: Some(c) } => assert!(verify_local_free_cert(&m, &c).unwrap()),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn paper_certificate_for_phi() {
        let r = make_ring(Family::A, 1, Form::X).unwrap();
        for n in 1..=4 {
            let m = phi(&r, n);
            let certs = paper_local_certs(&r, m.label(), n);
            assert_eq!(certs.len(), 1);
            assert!(verify_local_free_cert(&m, &certs[0]).unwrap());
            let mut short = certs[0].clone();
            short.clearing_exponent -= 1;
            assert!(matches!(verify_local_free_cert(&m, &short), Err(MfError::DenominatorMismatch { .. })));
            let mut wrong = certs[0].clone();
            wrong.d = vec![1, 1];
            assert!(!verify_local_free_cert(&m, &wrong).unwrap());
        }
    }

    #[test]
    fn transport_adds_new_variables() {
        let r1 = make_ring(Family::A, 1, Form::X).unwrap();
        let r3 = r1.knorrer_extension().unwrap();
        let t = transport_locus(&[prime_p(&r1), prime_m(&r1)], &r3).unwrap();
        assert_eq!(t, vec![prime_p(&r3), prime_m(&r3)]);
        assert!(transport_locus(&[], &r3).unwrap().is_empty());
    }
}
