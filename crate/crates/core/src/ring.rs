//! Hypersurface rings `k[x_0..x_d]/(f)` of types A-infinity and D-infinity.
//!
//! Two coordinate systems are supported. The *x-form* uses the sum-of-squares
//! polynomials; the *uv-form* uses a one- or two-dimensional base polynomial
//! plus hyperbolic pairs `u_j v_j`, which is the shape produced by the Knörrer
//! construction. Both are related by an explicit linear change of variables
//! over the Gaussian rationals, see [`RingCtx::coordinate_change`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MfError, Result};
use crate::poly::{Monomial, Poly};
use crate::scalar::{Field, GaussRat};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "A-inf")]
    A,
    #[serde(rename = "D-inf")]
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A-inf",
            Family::D => "D-inf",
        })
    }
}

impl FromStr for Family {
    type Err = MfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A-inf" | "A" | "Ainf" => Ok(Family::A),
            "D-inf" | "D" | "Dinf" => Ok(Family::D),
            other => Err(MfError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Form {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "uv")]
    Uv,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::X => "x",
            Form::Uv => "uv",
        })
    }
}

impl FromStr for Form {
    type Err = MfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "x-form" => Ok(Form::X),
            "uv" | "uv-form" => Ok(Form::Uv),
            other => Err(MfError::Parse(format!("unknown presentation form `{other}`"))),
        }
    }
}

/// Result of [`RingCtx::weighted_degree`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

/// A polynomial in normal form modulo the defining polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuotElem(pub Poly);

impl QuotElem {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Serializable ring selector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingSpec {
    pub family: Family,
    pub d: u32,
    pub form: Form,
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family, self.d)?;
        if self.form == Form::X && !(self.d == 1 || (self.family == Family::D && self.d == 2)) {
            write!(f, " (x-form)")?;
        }
        Ok(())
    }
}

/// A hypersurface ring together with its grading and monomial order.
#[derive(Clone, Debug)]
pub struct RingCtx {
    spec: RingSpec,
    var_names: Vec<String>,
    weights: Vec<u32>,
    f: Poly,
    lead: Monomial,
}

pub type Ctx = Arc<RingCtx>;

impl PartialEq for RingCtx {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for RingCtx {}

/// Number of variables in the base ring (dimension 1 or 2 part) of the uv-form.
fn base_dim(d: u32) -> u32 {
    if d % 2 == 1 {
        1
    } else {
        2
    }
}

/// Build a ring context; `d >= 1`.
pub fn make_ring(family: Family, d: u32, form: Form) -> Result<Ctx> {
    RingCtx::new(family, d, form).map(Arc::new)
}

impl RingCtx {
    pub fn new(family: Family, d: u32, form: Form) -> Result<RingCtx> {
        if d < 1 {
            return Err(MfError::InvalidDimension(d));
        }
        let n = (d + 1) as usize;
        let (var_names, weights) = match form {
            Form::X => {
                let names = (0..n).map(|i| format!("x{i}")).collect();
                let weights = (0..n).map(|i| var_weight(family, i == 0)).collect();
                (names, weights)
            }
            Form::Uv => {
                let b = base_dim(d) as usize + 1;
                let mut names: Vec<String> = (0..b).map(|i| format!("x{i}")).collect();
                for j in 1..=((d - base_dim(d)) / 2) {
                    names.push(format!("u{j}"));
                    names.push(format!("v{j}"));
                }
                let weights = (0..n).map(|i| var_weight(family, i == 0)).collect();
                (names, weights)
            }
        };
        let mut ctx = RingCtx {
            spec: RingSpec { family, d, form },
            var_names,
            weights,
            f: Poly::zero(n),
            lead: Monomial::one(n),
        };
        let f = ctx.defining_polynomial();
        ctx.lead = ctx.leading_monomial(&f).expect("f is nonzero");
        ctx.f = f;
        Ok(ctx)
    }

    pub fn from_spec(spec: RingSpec) -> Result<Ctx> {
        make_ring(spec.family, spec.d, spec.form)
    }

    fn defining_polynomial(&self) -> Poly {
        let RingSpec { family, d, form } = self.spec;
        let n = self.nvars();
        let x = |i: usize| Poly::var(i, n);
        let mut f = match family {
            Family::A => x(0).pow(2),
            Family::D => &x(0).pow(2) * &x(1),
        };
        match form {
            Form::X => {
                for i in 2..n {
                    if family == Family::D && d == 2 {
                        f = f - x(i).pow(2);
                    } else {
                        f = f + x(i).pow(2);
                    }
                }
            }
            Form::Uv => {
                let b = base_dim(d) as usize;
                if b == 2 {
                    f = match family {
                        Family::A => &x(0) * &x(2),
                        Family::D => f - x(2).pow(2),
                    };
                }
                let mut i = b + 1;
                while i < n {
                    f = f + &x(i) * &x(i + 1);
                    i += 2;
                }
            }
        }
        f
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn dim(&self) -> u32 {
        self.spec.d
    }

    pub fn form(&self) -> Form {
        self.spec.form
    }

    pub fn nvars(&self) -> usize {
        (self.spec.d + 1) as usize
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(i, self.nvars())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn constant(&self, c: i64) -> Poly {
        Poly::from_i64(c, self.nvars())
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    /// Weighted degree of `f`: 2 for A-infinity, 4 for D-infinity.
    pub fn f_degree(&self) -> i64 {
        self.lead.weighted_degree(&self.weights)
    }

    /// Whether this ring has identical variables and defining polynomial to `other`.
    pub fn same_ring(&self, other: &RingCtx) -> bool {
        self.var_names == other.var_names && self.f == other.f && self.weights == other.weights
    }

    /// Weighted-graded lexicographic comparison (`x0 > x1 > ...` within a degree).
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.weighted_degree(&self.weights).cmp(&b.weighted_degree(&self.weights)).then_with(|| a.0.cmp(&b.0))
    }

    pub fn leading_monomial(&self, p: &Poly) -> Option<Monomial> {
        p.terms().map(|(m, _)| m).max_by(|a, b| self.cmp_monomials(a, b)).cloned()
    }

    /// Terms in descending monomial order.
    pub fn sorted_terms<'a>(&self, p: &'a Poly) -> Vec<(&'a Monomial, &'a GaussRat)> {
        let mut v: Vec<_> = p.terms().collect();
        v.sort_by(|a, b| self.cmp_monomials(b.0, a.0));
        v
    }

    fn check_vars(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(MfError::VariableMismatch { expected: self.nvars(), found: p.nvars() });
        }
        Ok(())
    }

    /// Remainder of division by `f`, returned as a plain polynomial.
    pub fn reduce(&self, p: &Poly) -> Poly {
        reduce_by(p, &self.f, &self.lead, |a, b| self.cmp_monomials(a, b))
    }

    /// Normal form modulo `f`.
    pub fn nf(&self, p: &Poly) -> Result<QuotElem> {
        self.check_vars(p)?;
        if p.is_laurent() {
            return Err(MfError::Laurent);
        }
        Ok(QuotElem(self.reduce(p)))
    }

    pub fn is_zero_mod_f(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn weighted_degree(&self, p: &Poly) -> Degree {
        let mut degs = p.terms().map(|(m, _)| m.weighted_degree(&self.weights));
        match degs.next() {
            None => Degree::Zero,
            Some(d0) => {
                if degs.all(|d| d == d0) {
                    Degree::Homogeneous(d0)
                } else {
                    Degree::Inhomogeneous
                }
            }
        }
    }

    /// Constant term of the normal form, which detects units of the local ring.
    pub fn is_local_unit(&self, p: &Poly) -> bool {
        !self.reduce(p).constant_term().is_zero()
    }

    /// The ring obtained by adjoining a fresh pair `u, v` and adding `u*v` to `f`.
    /// Only defined for rings already in uv coordinates (which includes the
    /// x-forms that coincide with them).
    pub fn knorrer_extension(&self) -> Result<Ctx> {
        let uv = RingCtx::new(self.spec.family, self.spec.d, Form::Uv)?;
        if !self.same_ring(&uv) {
            return Err(MfError::NeedsUvForm(self.spec.to_string()));
        }
        make_ring(self.spec.family, self.spec.d + 2, Form::Uv)
    }

    /// The images of this ring's variables under the coordinate change to
    /// `target` (same family and dimension), as polynomials over `target`.
    /// Applying them maps `f` to `target.f()`.
    pub fn coordinate_change(&self, target: &RingCtx) -> Result<Vec<Poly>> {
        if self.spec.family != target.spec.family || self.spec.d != target.spec.d {
            return Err(MfError::ContextMismatch(self.spec.to_string(), target.spec.to_string()));
        }
        let n = self.nvars();
        let id: Vec<Poly> = (0..n).map(|i| Poly::var(i, n)).collect();
        match (self.spec.form, target.spec.form) {
            (a, b) if a == b => Ok(id),
            (Form::Uv, Form::X) => Ok(uv_to_x(self.spec.family, self.spec.d)),
            (Form::X, Form::Uv) => Ok(x_to_uv(self.spec.family, self.spec.d)),
            _ => unreachable!(),
        }
    }
}

fn var_weight(family: Family, is_x0: bool) -> u32 {
    match family {
        Family::A => 1,
        Family::D => {
            if is_x0 {
                1
            } else {
                2
            }
        }
    }
}

fn gi(re: i64, im: i64) -> GaussRat {
    GaussRat::from_i64(re) + GaussRat::i() * GaussRat::from_i64(im)
}

fn uv_to_x(family: Family, d: u32) -> Vec<Poly> {
    let n = (d + 1) as usize;
    let x = |i: usize| Poly::var(i, n);
    let lin = |a: usize, ca: GaussRat, b: usize, cb: GaussRat| x(a).scale(&ca) + x(b).scale(&cb);
    let b = base_dim(d) as usize;
    let mut imgs: Vec<Poly> = (0..=b).map(x).collect();
    if b == 2 {
        match family {
            Family::A => {
                imgs[0] = lin(0, gi(1, 0), 2, gi(0, 1));
                imgs[2] = lin(0, gi(1, 0), 2, gi(0, -1));
            }
            Family::D if d > 2 => imgs[2] = x(2).scale(&gi(0, 1)),
            Family::D => {}
        }
    }
    let mut a = b + 1;
    while a < n {
        imgs.push(lin(a, gi(1, 0), a + 1, gi(0, 1)));
        imgs.push(lin(a, gi(1, 0), a + 1, gi(0, -1)));
        a += 2;
    }
    imgs
}

fn x_to_uv(family: Family, d: u32) -> Vec<Poly> {
    let n = (d + 1) as usize;
    let x = |i: usize| Poly::var(i, n);
    let half = GaussRat::ratio(1, 2);
    // 1/(2i) = -i/2
    let half_over_i = GaussRat::i() * GaussRat::ratio(-1, 2);
    let sum = |a: usize, b: usize| (&x(a) + &x(b)).scale(&half);
    let diff = |a: usize, b: usize| (&x(a) - &x(b)).scale(&half_over_i);
    let b = base_dim(d) as usize;
    let mut imgs: Vec<Poly> = (0..=b).map(x).collect();
    if b == 2 {
        match family {
            Family::A => {
                imgs[0] = sum(0, 2);
                imgs[2] = diff(0, 2);
            }
            Family::D if d > 2 => imgs[2] = x(2).scale(&gi(0, -1)),
            Family::D => {}
        }
    }
    let mut a = b + 1;
    while a < n {
        imgs.push(sum(a, a + 1));
        imgs.push(diff(a, a + 1));
        a += 2;
    }
    imgs
}

/// Remainder of `p` on division by `g` with leading monomial `lead`.
pub fn reduce_by(p: &Poly, g: &Poly, lead: &Monomial, cmp: impl Fn(&Monomial, &Monomial) -> Ordering) -> Poly {
    let lc = g.coeff(lead);
    let lc_inv = lc.inv().expect("leading coefficient is nonzero");
    let mut rem = Poly::zero(p.nvars());
    let mut work = p.clone();
    loop {
        // largest term of `work`
        let top = work.terms().map(|(m, _)| m).max_by(|a, b| cmp(a, b)).cloned();
        let Some(m) = top else { break };
        let c = work.coeff(&m);
        match m.div(lead) {
            Some(q) => {
                let factor = c * lc_inv.clone();
                work = work - g.mul_term(&factor, &q);
            }
            None => {
                rem.add_term(m.clone(), c.clone());
                work.add_term(m, -c);
            }
        }
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_defining_polynomial() {
        let r = make_ring(Family::A, 1, Form::X).unwrap();
        assert_eq!(r.nvars(), 2);
        assert_eq!(r.f(), &r.var(0).pow(2));
    }

    #[test]
    fn d2_x_form_uses_minus_sign() {
        let r = make_ring(Family::D, 2, Form::X).unwrap();
        let expect = &(&r.var(0).pow(2) * &r.var(1)) - &r.var(2).pow(2);
        assert_eq!(r.f(), &expect);
        assert_eq!(r.f_degree(), 4);
    }

    #[test]
    fn a3_uv_form() {
        let r = make_ring(Family::A, 3, Form::Uv).unwrap();
        assert_eq!(r.var_names(), &["x0", "x1", "u1", "v1"]);
        let expect = r.var(0).pow(2) + &r.var(2) * &r.var(3);
        assert_eq!(r.f(), &expect);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(make_ring(Family::A, 0, Form::X), Err(MfError::InvalidDimension(0))));
        assert!(matches!("E-inf".parse::<Family>(), Err(MfError::UnknownFamily(_))));
    }

    #[test]
    fn nf_examples() {
        let r = make_ring(Family::A, 1, Form::X).unwrap();
        assert!(r.nf(r.f()).unwrap().is_zero());
        let p = r.var(0).pow(3) + r.var(1);
        assert_eq!(r.nf(&p).unwrap().0, r.var(1));

        let d2 = make_ring(Family::D, 2, Form::X).unwrap();
        let p = &(&d2.var(0).pow(2) * &d2.var(1)) + &d2.var(2).pow(2);
        assert_eq!(d2.nf(&p).unwrap().0, d2.var(2).pow(2).scale(&GaussRat::from_i64(2)));
    }

    #[test]
    fn nf_rejects_wrong_variable_count() {
        let r = make_ring(Family::A, 1, Form::X).unwrap();
        assert!(matches!(r.nf(&Poly::var(0, 3)), Err(MfError::VariableMismatch { .. })));
    }

    #[test]
    fn weighted_degrees() {
        let r = make_ring(Family::D, 2, Form::X).unwrap();
        assert_eq!(r.weighted_degree(r.f()), Degree::Homogeneous(4));
        assert_eq!(r.weighted_degree(&r.constant(1)), Degree::Homogeneous(0));
        assert_eq!(r.weighted_degree(&r.zero()), Degree::Zero);
        let d1 = make_ring(Family::D, 1, Form::X).unwrap();
        assert_eq!(d1.weighted_degree(&(d1.var(0) + d1.var(1))), Degree::Inhomogeneous);
    }

    #[test]
    fn coordinate_changes_transport_f() {
        for family in [Family::A, Family::D] {
            for d in 1..=6 {
                let uv = make_ring(family, d, Form::Uv).unwrap();
                let x = make_ring(family, d, Form::X).unwrap();
                let to_x = uv.coordinate_change(&x).unwrap();
                assert_eq!(&uv.f().substitute(&to_x, x.nvars()), x.f(), "{family} {d}");
                let to_uv = x.coordinate_change(&uv).unwrap();
                assert_eq!(&x.f().substitute(&to_uv, uv.nvars()), uv.f(), "{family} {d}");
            }
        }
    }

    #[test]
    fn knorrer_extension_needs_uv_coordinates() {
        let a1 = make_ring(Family::A, 1, Form::X).unwrap();
        assert_eq!(a1.knorrer_extension().unwrap().spec(), RingSpec { family: Family::A, d: 3, form: Form::Uv });
        let a2x = make_ring(Family::A, 2, Form::X).unwrap();
        assert!(a2x.knorrer_extension().is_err());
    }
}
