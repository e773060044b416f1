//! Matrix factorizations `(A, B)` with `AB = BA = fE` and their morphisms.

use std::fmt;

use crate::error::{MfError, Result};
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::ring::{Ctx, RingCtx};
use crate::scalar::{Field, GaussRat};
use crate::text::poly_to_string;

/// A matrix factorization of the defining polynomial of `ctx`.
#[derive(Clone, Debug)]
pub struct MatFac {
    pub ctx: Ctx,
    pub a: Mat,
    pub b: Mat,
    pub label: Option<String>,
}

impl PartialEq for MatFac {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.a == other.a && self.b == other.b
    }
}

/// First entry at which a matrix identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub product: &'static str,
    pub row: usize,
    pub col: usize,
    pub residual: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - fE at ({}, {}): {}", self.product, self.row, self.col, self.residual)
    }
}

fn first_nonzero(m: &Mat) -> Option<(usize, usize)> {
    (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).find(|&(i, j)| !m[(i, j)].is_zero())
}

fn check_identity(what: &str, lhs: &Mat, rhs: &Mat, ctx: &RingCtx) -> Result<()> {
    let diff = lhs.sub(rhs);
    match first_nonzero(&diff) {
        None => Ok(()),
        Some((row, col)) => Err(MfError::IdentityFailure {
            what: what.to_string(),
            row,
            col,
            residual: poly_to_string(&diff[(row, col)], ctx),
        }),
    }
}

impl MatFac {
    pub fn new(ctx: Ctx, a: Mat, b: Mat, label: Option<String>) -> Result<MatFac> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(MfError::SizeMismatch(format!(
                "A is {}x{}, B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        for m in [&a, &b] {
            if m.nvars() != ctx.nvars() {
                return Err(MfError::VariableMismatch { expected: ctx.nvars(), found: m.nvars() });
            }
        }
        Ok(MatFac { ctx, a, b, label })
    }

    /// Build from rows of entries; panics on malformed input, for literal data.
    pub fn from_rows(ctx: &Ctx, a: Vec<Vec<Poly>>, b: Vec<Vec<Poly>>, label: &str) -> MatFac {
        let n = ctx.nvars();
        let a = Mat::from_rows(a, n).expect("literal matrix");
        let b = Mat::from_rows(b, n).expect("literal matrix");
        MatFac::new(ctx.clone(), a, b, Some(label.to_string())).expect("literal factorization")
    }

    /// The free module of rank one, `(f, 1)`.
    pub fn free(ctx: &Ctx) -> MatFac {
        let a = Mat::scalar(1, ctx.f());
        let b = Mat::identity(1, ctx.nvars());
        MatFac { ctx: ctx.clone(), a, b, label: Some("R".into()) }
    }

    /// The factorization `(1, f)` with zero cokernel.
    pub fn trivial(ctx: &Ctx) -> MatFac {
        let a = Mat::identity(1, ctx.nvars());
        let b = Mat::scalar(1, ctx.f());
        MatFac { ctx: ctx.clone(), a, b, label: Some("0".into()) }
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or("?")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> MatFac {
        self.label = Some(label.into());
        self
    }

    /// Check `AB = fE` and `BA = fE`, reporting the first failing entry.
    pub fn validate(&self) -> std::result::Result<(), Witness> {
        let fe = Mat::scalar(self.size(), self.ctx.f());
        for (name, prod) in [("AB", self.a.mul(&self.b)), ("BA", self.b.mul(&self.a))] {
            let diff = prod.sub(&fe);
            if let Some((row, col)) = first_nonzero(&diff) {
                return Err(Witness {
                    product: name,
                    row,
                    col,
                    residual: poly_to_string(&diff[(row, col)], &self.ctx),
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn syzygy(&self) -> MatFac {
        let label = self.label.as_ref().map(|l| match l.strip_prefix("Ω(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) if balanced(inner) => inner.to_string(),
            _ => format!("Ω({l})"),
        });
        MatFac { ctx: self.ctx.clone(), a: self.b.clone(), b: self.a.clone(), label }
    }

    pub fn direct_sum(&self, other: &MatFac) -> Result<MatFac> {
        if !self.ctx.same_ring(&other.ctx) {
            return Err(MfError::ContextMismatch(self.ctx.spec().to_string(), other.ctx.spec().to_string()));
        }
        let n = self.ctx.nvars();
        Ok(MatFac {
            ctx: self.ctx.clone(),
            a: Mat::block_diag(&[&self.a, &other.a], n),
            b: Mat::block_diag(&[&self.b, &other.b], n),
            label: Some(format!("{} ⊕ {}", self.label(), other.label())),
        })
    }

    pub fn direct_sum_all(parts: &[&MatFac]) -> Result<MatFac> {
        let (first, rest) = parts.split_first().ok_or_else(|| MfError::SizeMismatch("empty direct sum".into()))?;
        let mut acc = (*first).clone();
        for p in rest {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Knörrer's factorization `([[A, yE], [zE, -B]], [[B, yE], [zE, -A]])` of `f + yz`.
    pub fn knorrer(&self) -> Result<MatFac> {
        let ext = self.ctx.knorrer_extension()?;
        let n = self.size();
        let nv = ext.nvars();
        let a = self.a.map(|p| p.extend_vars(2));
        let b = self.b.map(|p| p.extend_vars(2));
        let y = Mat::scalar(n, &Poly::var(nv - 2, nv));
        let z = Mat::scalar(n, &Poly::var(nv - 1, nv));
        let label = self.label.as_ref().map(|l| if l == "R" { "F(R)".to_string() } else { format!("F({l})") });
        Ok(MatFac { ctx: ext, a: Mat::block2(&a, &y, &z, &b.neg()), b: Mat::block2(&b, &y, &z, &a.neg()), label })
    }

    /// Reinterpret over another ring with the same variables and `f` (e.g. an
    /// x-form that coincides with its uv-form).
    pub fn recontext(&self, ctx: &Ctx) -> Result<MatFac> {
        if !self.ctx.same_ring(ctx) {
            return Err(MfError::ContextMismatch(self.ctx.spec().to_string(), ctx.spec().to_string()));
        }
        Ok(MatFac { ctx: ctx.clone(), ..self.clone() })
    }

    /// Transport along a linear change of coordinates to `target`.
    pub fn change_coordinates(&self, target: &Ctx) -> Result<MatFac> {
        let images = self.ctx.coordinate_change(target)?;
        let nv = target.nvars();
        let sub = |m: &Mat| m.map(|p| p.substitute(&images, nv));
        Ok(MatFac { ctx: target.clone(), a: sub(&self.a), b: sub(&self.b), label: self.label.clone() })
    }

    /// Whether every entry of both matrices lies in the maximal ideal.
    pub fn is_reduced(&self) -> bool {
        self.a.entries().chain(self.b.entries()).all(|p| p.constant_term().is_zero())
    }

    /// Whether all entries are polynomials (no negative exponents).
    pub fn is_polynomial(&self) -> bool {
        self.a.entries().chain(self.b.entries()).all(|p| !p.is_laurent())
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

impl fmt::Display for MatFac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |m: &Mat| {
            m.to_rows()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|p| poly_to_string(p, &self.ctx)).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "{}: A = [{}], B = [{}]", self.label(), show(&self.a), show(&self.b))
    }
}

/// A morphism of matrix factorizations: `p A = A' q` and `q B = B' p`.
///
/// The identities are checked exactly over the polynomial ring, which makes
/// the Knörrer lift of a morphism a morphism again.
#[derive(Clone, Debug, PartialEq)]
pub struct MFMorphism {
    pub source: MatFac,
    pub target: MatFac,
    pub p: Mat,
    pub q: Mat,
}

impl MFMorphism {
    pub fn new(source: MatFac, target: MatFac, p: Mat, q: Mat) -> Result<MFMorphism> {
        let (n, m) = (source.size(), target.size());
        for (name, x) in [("p", &p), ("q", &q)] {
            if x.rows() != m || x.cols() != n {
                return Err(MfError::SizeMismatch(format!("{name} is {}x{}, expected {m}x{n}", x.rows(), x.cols())));
            }
        }
        let mor = MFMorphism { source, target, p, q };
        mor.check()?;
        Ok(mor)
    }

    pub fn identity(m: &MatFac) -> MFMorphism {
        let e = Mat::identity(m.size(), m.ctx.nvars());
        MFMorphism { source: m.clone(), target: m.clone(), p: e.clone(), q: e }
    }

    pub fn zero(source: &MatFac, target: &MatFac) -> MFMorphism {
        let z = Mat::zeros(target.size(), source.size(), source.ctx.nvars());
        MFMorphism { source: source.clone(), target: target.clone(), p: z.clone(), q: z }
    }

    pub fn check(&self) -> Result<()> {
        let ctx = &self.source.ctx;
        check_identity("pA = A'q", &self.p.mul(&self.source.a), &self.target.a.mul(&self.q), ctx)?;
        check_identity("qB = B'p", &self.q.mul(&self.source.b), &self.target.b.mul(&self.p), ctx)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MFMorphism) -> Result<MFMorphism> {
        if other.target != self.source {
            return Err(MfError::SizeMismatch("composition of non-composable morphisms".into()));
        }
        Ok(MFMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            p: self.p.mul(&other.p),
            q: self.q.mul(&other.q),
        })
    }

    /// The same maps on syzygies: `(q, p)` from `ΩM` to `ΩM'`.
    pub fn syzygy(&self) -> MFMorphism {
        MFMorphism { source: self.source.syzygy(), target: self.target.syzygy(), p: self.q.clone(), q: self.p.clone() }
    }

    /// `(diag(p, q), diag(q, p))` between Knörrer images.
    pub fn knorrer_lift(&self) -> Result<MFMorphism> {
        self.check()?;
        let source = self.source.knorrer()?;
        let target = self.target.knorrer()?;
        let nv = source.ctx.nvars();
        let p = self.p.map(|x| x.extend_vars(2));
        let q = self.q.map(|x| x.extend_vars(2));
        Ok(MFMorphism { p: Mat::block_diag(&[&p, &q], nv), q: Mat::block_diag(&[&q, &p], nv), source, target })
    }

    pub fn change_coordinates(&self, target_ctx: &Ctx) -> Result<MFMorphism> {
        let images = self.source.ctx.coordinate_change(target_ctx)?;
        let nv = target_ctx.nvars();
        let sub = |m: &Mat| m.map(|x| x.substitute(&images, nv));
        Ok(MFMorphism {
            source: self.source.change_coordinates(target_ctx)?,
            target: self.target.change_coordinates(target_ctx)?,
            p: sub(&self.p),
            q: sub(&self.q),
        })
    }
}

/// An isomorphism of factorizations given with its inverse.
#[derive(Clone, Debug)]
pub struct MFIso {
    pub forward: MFMorphism,
    pub backward: MFMorphism,
}

impl MFIso {
    pub fn identity(m: &MatFac) -> MFIso {
        MFIso { forward: MFMorphism::identity(m), backward: MFMorphism::identity(m) }
    }

    /// Checks both morphisms and that they are mutually inverse.
    pub fn check(&self) -> Result<()> {
        self.forward.check()?;
        self.backward.check()?;
        let ctx = &self.forward.source.ctx;
        let (n, m) = (self.forward.source.size(), self.forward.target.size());
        let nv = ctx.nvars();
        let bf = self.backward.compose(&self.forward)?;
        let fb = self.forward.compose(&self.backward)?;
        check_identity("inverse (p)", &bf.p, &Mat::identity(n, nv), ctx)?;
        check_identity("inverse (q)", &bf.q, &Mat::identity(n, nv), ctx)?;
        check_identity("inverse (p')", &fb.p, &Mat::identity(m, nv), ctx)?;
        check_identity("inverse (q')", &fb.q, &Mat::identity(m, nv), ctx)
    }

    pub fn inverse(&self) -> MFIso {
        MFIso { forward: self.backward.clone(), backward: self.forward.clone() }
    }

    pub fn compose(&self, other: &MFIso) -> Result<MFIso> {
        Ok(MFIso { forward: self.forward.compose(&other.forward)?, backward: other.backward.compose(&self.backward)? })
    }

    pub fn knorrer_lift(&self) -> Result<MFIso> {
        Ok(MFIso { forward: self.forward.knorrer_lift()?, backward: self.backward.knorrer_lift()? })
    }

    pub fn syzygy(&self) -> MFIso {
        MFIso { forward: self.forward.syzygy(), backward: self.backward.syzygy() }
    }
}

/// `true` iff `U A V = A'` modulo `f` and `det U`, `det V` are local units.
pub fn check_equivalence(m: &MatFac, m2: &MatFac, u: &Mat, v: &Mat) -> Result<bool> {
    let n = m.size();
    if u.rows() != m2.size() || u.cols() != n || v.rows() != n || v.cols() != m2.size() || !u.is_square() {
        return Err(MfError::SizeMismatch(format!(
            "U is {}x{}, V is {}x{}, sizes {} and {}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols(),
            n,
            m2.size()
        )));
    }
    let ctx = &m.ctx;
    let lhs = u.mul(&m.a).mul(v).nf(ctx);
    if lhs != m2.a.nf(ctx) {
        return Ok(false);
    }
    Ok(ctx.is_local_unit(&u.det_mod(ctx)) && ctx.is_local_unit(&v.det_mod(ctx)))
}

/// What a split-off block of [`minimize`] was.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    /// `(1, f)`, zero cokernel.
    Trivial,
    /// `(f, 1)`, a free summand `R`.
    Free,
}

/// Result of [`minimize`].
#[derive(Clone, Debug)]
pub struct Minimized {
    /// The reduced factorization; size 0 when the cokernel is free.
    pub mf: MatFac,
    /// Number of unit blocks split off, free and trivial.
    pub removed: usize,
    /// Kinds of the split blocks, in pivot order.
    pub blocks: Vec<Block>,
    /// Isomorphism from the input to `mf ⊕ blocks` (block diagonal, literal).
    pub iso: MFIso,
}

impl Minimized {
    /// Number of free summands `R` split off.
    pub fn free_rank(&self) -> usize {
        self.blocks.iter().filter(|b| **b == Block::Free).count()
    }
}

struct Reducer<'a> {
    ctx: &'a RingCtx,
    a: Mat,
    b: Mat,
    u: Mat,
    u_inv: Mat,
    v: Mat,
    v_inv: Mat,
    row_active: Vec<bool>,
    col_active: Vec<bool>,
}

fn axpy(target: &Poly, lambda: &Poly, x: &Poly) -> Poly {
    if x.is_zero() || lambda.is_zero() {
        target.clone()
    } else {
        target + &(lambda * x)
    }
}

impl Reducer<'_> {
    fn n(&self) -> usize {
        self.a.rows()
    }

    /// A row i += λ row r (and the compensating column operation on B).
    fn add_row_a(&mut self, i: usize, r: usize, lambda: &Poly) {
        let n = self.n();
        for k in 0..n {
            self.a[(i, k)] = axpy(&self.a[(i, k)], lambda, &self.a[(r, k)]);
            self.u[(i, k)] = axpy(&self.u[(i, k)], lambda, &self.u[(r, k)]);
        }
        let neg = -lambda;
        for k in 0..n {
            self.b[(k, r)] = axpy(&self.b[(k, r)], &neg, &self.b[(k, i)]);
            self.u_inv[(k, r)] = axpy(&self.u_inv[(k, r)], &neg, &self.u_inv[(k, i)]);
        }
    }

    /// A col j += μ col c (and the compensating row operation on B).
    fn add_col_a(&mut self, j: usize, c: usize, mu: &Poly) {
        let n = self.n();
        for k in 0..n {
            self.a[(k, j)] = axpy(&self.a[(k, j)], mu, &self.a[(k, c)]);
            self.v[(k, j)] = axpy(&self.v[(k, j)], mu, &self.v[(k, c)]);
        }
        let neg = -mu;
        for k in 0..n {
            self.b[(c, k)] = axpy(&self.b[(c, k)], &neg, &self.b[(j, k)]);
            self.v_inv[(c, k)] = axpy(&self.v_inv[(c, k)], &neg, &self.v_inv[(j, k)]);
        }
    }

    fn scale_row_a(&mut self, i: usize, s: &GaussRat) {
        let s_inv = s.inv().expect("nonzero scale");
        for k in 0..self.n() {
            self.a[(i, k)] = self.a[(i, k)].scale(s);
            self.u[(i, k)] = self.u[(i, k)].scale(s);
            self.b[(k, i)] = self.b[(k, i)].scale(&s_inv);
            self.u_inv[(k, i)] = self.u_inv[(k, i)].scale(&s_inv);
        }
    }

    fn scale_col_a(&mut self, j: usize, s: &GaussRat) {
        let s_inv = s.inv().expect("nonzero scale");
        for k in 0..self.n() {
            self.a[(k, j)] = self.a[(k, j)].scale(s);
            self.v[(k, j)] = self.v[(k, j)].scale(s);
            self.b[(j, k)] = self.b[(j, k)].scale(&s_inv);
            self.v_inv[(j, k)] = self.v_inv[(j, k)].scale(&s_inv);
        }
    }

    /// Row-major search for a constant entry of the active part of A, then B.
    fn find_constant_pivot(&self) -> Option<(bool, usize, usize)> {
        let n = self.n();
        for (in_b, m) in [(false, &self.a), (true, &self.b)] {
            for r in 0..n {
                for c in 0..n {
                    let (ar, ac) = if in_b { (c, r) } else { (r, c) };
                    if self.row_active[ar]
                        && self.col_active[ac]
                        && m[(r, c)].as_constant().is_some_and(|x| !x.is_zero())
                    {
                        return Some((in_b, r, c));
                    }
                }
            }
        }
        None
    }

    fn find_nonconstant_unit(&self) -> Option<(bool, usize, usize)> {
        let n = self.n();
        for (in_b, m) in [(false, &self.a), (true, &self.b)] {
            for r in 0..n {
                for c in 0..n {
                    let (ar, ac) = if in_b { (c, r) } else { (r, c) };
                    if self.row_active[ar] && self.col_active[ac] && !m[(r, c)].constant_term().is_zero() {
                        return Some((in_b, r, c));
                    }
                }
            }
        }
        None
    }

    /// Split off the block at A(i, j) with constant value.
    fn pivot_a(&mut self, i: usize, j: usize) {
        let c = self.a[(i, j)].as_constant().expect("constant pivot");
        self.scale_row_a(i, &c.inv().expect("nonzero pivot"));
        for r in 0..self.n() {
            if r != i && self.row_active[r] && !self.a[(r, j)].is_zero() {
                let lambda = -self.a[(r, j)].clone();
                self.add_row_a(r, i, &lambda);
            }
        }
        for k in 0..self.n() {
            if k != j && self.col_active[k] && !self.a[(i, k)].is_zero() {
                let mu = -self.a[(i, k)].clone();
                self.add_col_a(k, j, &mu);
            }
        }
        self.row_active[i] = false;
        self.col_active[j] = false;
    }

    /// Split off the block at B(r, c) with constant value; B rows index A columns.
    fn pivot_b(&mut self, r: usize, c: usize) {
        let val = self.b[(r, c)].as_constant().expect("constant pivot");
        self.scale_col_a(r, &val);
        for k in 0..self.n() {
            // B row k += λ B row r  <=>  A col r += (-λ) A col k
            if k != r && self.col_active[k] && !self.b[(k, c)].is_zero() {
                let lambda = self.b[(k, c)].clone();
                self.add_col_a(r, k, &lambda);
            }
        }
        for k in 0..self.n() {
            // B col k += μ B col c  <=>  A row c += (-μ) A row k
            if k != c && self.row_active[k] && !self.b[(r, k)].is_zero() {
                let mu = self.b[(r, k)].clone();
                self.add_row_a(c, k, &mu);
            }
        }
        self.row_active[c] = false;
        self.col_active[r] = false;
    }
}

/// Local inverse of `u` (nonzero constant term) by a truncated geometric
/// series, valid only if it becomes exact in `R` below `cap`.
pub fn local_inverse(u: &Poly, ctx: &RingCtx, cap: i64) -> Result<Poly> {
    let c = u.constant_term();
    let c_inv = c.inv().ok_or_else(|| MfError::Unsupported("inverse of a non-unit".into()))?;
    let nil = Poly::one(u.nvars()) - u.scale(&c_inv);
    let mut power = Poly::one(u.nvars());
    let mut sum = Poly::one(u.nvars());
    for _ in 0..=cap.max(1) {
        power = ctx.reduce(&(&power * &nil));
        if power.is_zero() {
            return Ok(ctx.reduce(&sum.scale(&c_inv)));
        }
        let min_deg = power.terms().map(|(m, _)| m.weighted_degree(ctx.weights())).min().unwrap_or(0);
        if min_deg > cap {
            break;
        }
        sum = sum + power.clone();
    }
    Err(MfError::DegreeCap(cap))
}

fn max_weighted_degree(m: &MatFac) -> i64 {
    m.a.entries()
        .chain(m.b.entries())
        .flat_map(|p| p.terms().map(|(mono, _)| mono.weighted_degree(m.ctx.weights())))
        .max()
        .unwrap_or(0)
}

/// Split off all blocks `(1, f)` and `(f, 1)` reachable through unit pivots.
pub fn minimize(mf: &MatFac) -> Result<Minimized> {
    let n = mf.size();
    let nv = mf.ctx.nvars();
    let mut red = Reducer {
        ctx: &mf.ctx,
        a: mf.a.clone(),
        b: mf.b.clone(),
        u: Mat::identity(n, nv),
        u_inv: Mat::identity(n, nv),
        v: Mat::identity(n, nv),
        v_inv: Mat::identity(n, nv),
        row_active: vec![true; n],
        col_active: vec![true; n],
    };
    let mut pivot_rows = Vec::new();
    let mut pivot_cols = Vec::new();
    let mut blocks = Vec::new();
    loop {
        if let Some((in_b, r, c)) = red.find_constant_pivot() {
            if in_b {
                red.pivot_b(r, c);
                pivot_rows.push(c);
                pivot_cols.push(r);
                blocks.push(Block::Free);
            } else {
                red.pivot_a(r, c);
                pivot_rows.push(r);
                pivot_cols.push(c);
                blocks.push(Block::Trivial);
            }
            continue;
        }
        if let Some((in_b, r, c)) = red.find_nonconstant_unit() {
            // A polynomial pivot with a genuine local inverse cannot be split off
            // exactly over the polynomial ring; report rather than approximate.
            let m = if in_b { &red.b } else { &red.a };
            let cap = 4 * max_weighted_degree(mf).max(1);
            local_inverse(&m[(r, c)], red.ctx, cap)?;
            return Err(MfError::Unsupported(format!(
                "unit pivot {} is not constant",
                poly_to_string(&m[(r, c)], red.ctx)
            )));
        }
        break;
    }
    let active_rows: Vec<usize> = (0..n).filter(|&i| red.row_active[i]).collect();
    let active_cols: Vec<usize> = (0..n).filter(|&j| red.col_active[j]).collect();
    let ro: Vec<usize> = active_rows.iter().chain(&pivot_rows).copied().collect();
    let co: Vec<usize> = active_cols.iter().chain(&pivot_cols).copied().collect();
    let selection = |order: &[usize]| {
        let mut p = Mat::zeros(n, n, nv);
        for (k, &i) in order.iter().enumerate() {
            p[(k, i)] = Poly::one(nv);
        }
        p
    };
    let pr = selection(&ro);
    let pc = selection(&co);
    let full_a = pr.mul(&red.a).mul(&pc.transpose());
    let full_b = pc.mul(&red.b).mul(&pr.transpose());
    let k = active_rows.len();
    let min = MatFac {
        ctx: mf.ctx.clone(),
        a: full_a.block(0, 0, k, k),
        b: full_b.block(0, 0, k, k),
        label: mf.label.clone(),
    };
    let full = MatFac { ctx: mf.ctx.clone(), a: full_a, b: full_b, label: mf.label.clone() };
    let forward = MFMorphism { source: mf.clone(), target: full.clone(), p: pr.mul(&red.u), q: pc.mul(&red.v_inv) };
    let backward = MFMorphism {
        source: full,
        target: mf.clone(),
        p: red.u_inv.mul(&pr.transpose()),
        q: red.v.mul(&pc.transpose()),
    };
    let iso = MFIso { forward, backward };
    let removed = blocks.len();
    Ok(Minimized { mf: min, removed, blocks, iso })
}

/// Search for an isomorphism `(p, q)` with `p`, `q` signed permutation matrices.
pub fn find_signed_iso(m: &MatFac, m2: &MatFac) -> Option<MFIso> {
    let n = m.size();
    if n != m2.size() || n > 6 || !m.ctx.same_ring(&m2.ctx) {
        return None;
    }
    let nv = m.ctx.nvars();
    let perms = permutations(n);
    // sign relation between x and y: Some(true) equal, Some(false) negatives, None otherwise
    let rel = |x: &Poly, y: &Poly| -> Option<Option<bool>> {
        if x.is_zero() && y.is_zero() {
            Some(None)
        } else if x == y {
            Some(Some(true))
        } else if *x == -y {
            Some(Some(false))
        } else {
            None
        }
    };
    for sigma in &perms {
        for tau in &perms {
            // p = D_s P_sigma with (P_sigma)_{i, sigma(i)} = 1; q = D_t P_tau.
            // (pA)_{ij} = s_i A[sigma i][j];  (A'q)_{ij} = t_k A'[i][k] with tau(k) = j.
            // (qB)_{ij} = t_i B[tau i][j];    (B'p)_{ij} = s_k B'[i][k] with sigma(k) = j.
            let mut tau_inv = vec![0; n];
            let mut sigma_inv = vec![0; n];
            for i in 0..n {
                tau_inv[tau[i]] = i;
                sigma_inv[sigma[i]] = i;
            }
            let mut constraints = Vec::new();
            let mut ok = true;
            'outer: for i in 0..n {
                for j in 0..n {
                    let k = tau_inv[j];
                    match rel(&m.a[(sigma[i], j)], &m2.a[(i, k)]) {
                        None => {
                            ok = false;
                            break 'outer;
                        }
                        Some(Some(same)) => constraints.push((i, n + k, same)),
                        Some(None) => {}
                    }
                    let k = sigma_inv[j];
                    match rel(&m.b[(tau[i], j)], &m2.b[(i, k)]) {
                        None => {
                            ok = false;
                            break 'outer;
                        }
                        Some(Some(same)) => constraints.push((n + i, k, same)),
                        Some(None) => {}
                    }
                }
            }
            if !ok {
                continue;
            }
            let Some(signs) = solve_signs(2 * n, &constraints) else { continue };
            let sign = |b: bool| if b { Poly::one(nv) } else { -Poly::one(nv) };
            let mut p = Mat::zeros(n, n, nv);
            let mut q = Mat::zeros(n, n, nv);
            for i in 0..n {
                p[(i, sigma[i])] = sign(signs[i]);
                q[(i, tau[i])] = sign(signs[n + i]);
            }
            let forward = MFMorphism { source: m.clone(), target: m2.clone(), p: p.clone(), q: q.clone() };
            let backward = MFMorphism { source: m2.clone(), target: m.clone(), p: p.transpose(), q: q.transpose() };
            let iso = MFIso { forward, backward };
            if iso.check().is_ok() {
                return Some(iso);
            }
        }
    }
    None
}

/// Two-colouring: constraint `(a, b, same)` means sign_a * sign_b = ±1.
fn solve_signs(n: usize, constraints: &[(usize, usize, bool)]) -> Option<Vec<bool>> {
    let mut val: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if val[start].is_some() {
            continue;
        }
        val[start] = Some(true);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let vx = val[x].expect("assigned");
            for &(a, b, same) in constraints {
                let other = if a == x {
                    b
                } else if b == x {
                    a
                } else {
                    continue;
                };
                let want = if same { vx } else { !vx };
                match val[other] {
                    None => {
                        val[other] = Some(want);
                        stack.push(other);
                    }
                    Some(v) if v != want => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(val.into_iter().map(|v| v.expect("assigned")).collect())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, Family, Form};

    fn a1() -> Ctx {
        make_ring(Family::A, 1, Form::X).unwrap()
    }

    fn phi(ctx: &Ctx, n: u32) -> MatFac {
        let x0 = ctx.var(0);
        let x1n = ctx.var(1).pow(n);
        let m = vec![vec![x0.clone(), x1n], vec![ctx.zero(), -&x0]];
        MatFac::from_rows(ctx, m.clone(), m, &format!("phi:{n}"))
    }

    #[test]
    fn simple_factorizations_validate() {
        let r = a1();
        let x0 = MatFac::from_rows(&r, vec![vec![r.var(0)]], vec![vec![r.var(0)]], "R/(x0)");
        assert!(x0.is_valid());
        assert!(phi(&r, 3).is_valid());
        assert!(MatFac::free(&r).is_valid() && MatFac::trivial(&r).is_valid());
    }

    #[test]
    fn invalid_factorization_reports_witness() {
        let r = a1();
        let bad = MatFac::from_rows(&r, vec![vec![r.var(0)]], vec![vec![r.var(1)]], "bad");
        let w = bad.validate().unwrap_err();
        assert_eq!((w.product, w.row, w.col), ("AB", 0, 0));
        assert_eq!(w.residual, "-x0^2 + x0*x1");
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let r = a1();
        let a = Mat::identity(2, 2);
        let b = Mat::identity(1, 2);
        assert!(matches!(MatFac::new(r, a, b, None), Err(MfError::SizeMismatch(_))));
    }

    #[test]
    fn syzygy_label_is_an_involution() {
        let r = a1();
        let m = phi(&r, 2);
        assert_eq!(m.syzygy().label(), "Ω(phi:2)");
        assert_eq!(m.syzygy().syzygy().label(), "phi:2");
        assert_eq!(m.syzygy().syzygy(), m);
    }

    #[test]
    fn knorrer_of_x0() {
        let r = a1();
        let x0 = MatFac::from_rows(&r, vec![vec![r.var(0)]], vec![vec![r.var(0)]], "R/(x0)");
        let k = x0.knorrer().unwrap();
        assert!(k.is_valid());
        let e = &k.ctx;
        let expect = Mat::from_rows(vec![vec![e.var(0), e.var(2)], vec![e.var(3), -e.var(0)]], 4).unwrap();
        assert_eq!(k.a, expect);
        assert_eq!(k.b, expect);
        assert_eq!(k.label(), "F(R/(x0))");
    }

    #[test]
    fn minimize_keeps_reduced_input() {
        let r = a1();
        let m = minimize(&phi(&r, 2)).unwrap();
        assert_eq!(m.removed, 0);
        assert_eq!(m.mf, phi(&r, 2));
        m.iso.check().unwrap();
    }

    #[test]
    fn minimize_splits_free_and_trivial_blocks() {
        let r = a1();
        let m = phi(&r, 2);
        let sum = MatFac::direct_sum_all(&[&MatFac::free(&r), &m, &MatFac::trivial(&r)]).unwrap();
        let min = minimize(&sum).unwrap();
        assert_eq!(min.removed, 2);
        assert_eq!(min.free_rank(), 1);
        assert_eq!(min.blocks, vec![Block::Trivial, Block::Free]);
        assert!(min.mf.is_valid() && min.mf.is_reduced());
        assert_eq!(min.mf.size(), 2);
        min.iso.check().unwrap();
    }

    #[test]
    fn each_unit_block_adds_one_to_removed() {
        let r = a1();
        let m = phi(&r, 3);
        let base = minimize(&m).unwrap().removed;
        for block in [MatFac::trivial(&r), MatFac::free(&r)] {
            let min = minimize(&m.direct_sum(&block).unwrap()).unwrap();
            assert_eq!((min.mf.clone(), min.removed), (m.clone(), base + 1));
        }
    }

    #[test]
    fn minimize_of_free_module_is_empty() {
        let r = a1();
        let f = MatFac::free(&r).knorrer().unwrap();
        let min = minimize(&f).unwrap();
        assert_eq!((min.mf.size(), min.removed, min.free_rank()), (0, 2, 1));
        min.iso.check().unwrap();
    }

    #[test]
    fn equivalence_from_d1_proof() {
        let r = make_ring(Family::D, 1, Form::X).unwrap();
        let (x0, x1) = (r.var(0), r.var(1));
        let one = r.constant(1);
        let zero = r.zero();
        let a = vec![vec![x0.clone(), one.clone()], vec![zero.clone(), -&x0]];
        let b = vec![vec![&x0 * &x1, x1.clone()], vec![zero.clone(), -(&x0 * &x1)]];
        let m = MatFac::from_rows(&r, a, b, "phi+:0");
        assert!(m.is_valid());
        let target = MatFac::from_rows(
            &r,
            vec![vec![x0.pow(2), zero.clone()], vec![zero.clone(), one.clone()]],
            vec![vec![x1.clone(), zero.clone()], vec![zero.clone(), r.f().clone()]],
            "diag",
        );
        let u = Mat::from_rows(vec![vec![x0.clone(), one.clone()], vec![one.clone(), zero.clone()]], 2).unwrap();
        let v = Mat::from_rows(vec![vec![one.clone(), zero.clone()], vec![-&x0, one.clone()]], 2).unwrap();
        assert!(check_equivalence(&m, &target, &u, &v).unwrap());
        let e = Mat::identity(2, 2);
        assert!(check_equivalence(&m, &m, &e, &e).unwrap());
        assert!(!check_equivalence(&m, &target, &e, &e).unwrap());
    }

    #[test]
    fn signed_iso_search() {
        let r = a1();
        let x0 = r.var(0);
        let m = MatFac::from_rows(&r, vec![vec![-&x0]], vec![vec![-&x0]], "neg");
        let m2 = MatFac::from_rows(&r, vec![vec![x0.clone()]], vec![vec![x0.clone()]], "pos");
        let iso = find_signed_iso(&m, &m2).unwrap();
        iso.check().unwrap();
    }

    #[test]
    fn local_inverse_of_nilpotent_perturbation() {
        let r = a1();
        let u = r.constant(2) + r.var(0);
        let w = local_inverse(&u, &r, 8).unwrap();
        assert!(r.reduce(&(&u * &w)).is_one());
        let bad = r.constant(1) + r.var(1);
        assert!(matches!(local_inverse(&bad, &r, 8), Err(MfError::DegreeCap(8))));
    }
}
