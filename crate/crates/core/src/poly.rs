//! Sparse multivariate (Laurent) polynomials over an exact field.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector, which gives a
//! canonical representation: two polynomials are equal iff their maps are.
//! Order-dependent operations (leading terms, division) live in [`crate::ring`],
//! where the weights of the ambient ring are known.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Field, GaussRat};

/// Exponent vector. Negative entries are only produced on inverted variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: i32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_laurent(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|a| -a).collect())
    }

    /// `self / other` if every exponent stays nonnegative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
    }
}

/// A polynomial with coefficients in `K` in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<K: Field = GaussRat> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Poly<K> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: K, nvars: usize) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(K::one(), nvars)
    }

    pub fn from_i64(c: i64, nvars: usize) -> Self {
        Self::constant(K::from_i64(c), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        Self::term(K::one(), Monomial::var(nvars, i, 1))
    }

    pub fn term(c: K, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// `c * prod x_i^e_i` from an exponent slice.
    pub fn monomial(c: K, exps: &[i32]) -> Self {
        Self::term(c, Monomial(exps.to_vec()))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, K)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().map(|(m, c)| m.is_one() && c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// The scalar value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term `(c, m)` if this polynomial is a nonzero monomial.
    pub fn as_term(&self) -> Option<(K, &Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), m))
        } else {
            None
        }
    }

    pub fn is_laurent(&self) -> bool {
        self.terms.keys().any(Monomial::is_laurent)
    }

    pub fn add_term(&mut self, m: Monomial, c: K) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    /// Multiply by the monomial `c * m`.
    pub fn mul_term(&self, c: &K, m: &Monomial) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute polynomials for every variable. `images[i]` replaces `x_i`;
    /// all images share the target variable count `target_nvars`.
    /// Negative exponents require the image to be a monomial.
    pub fn substitute(&self, images: &[Poly<K>], target_nvars: usize) -> Poly<K> {
        assert_eq!(images.len(), self.nvars, "assignment must cover every variable");
        let mut out = Poly::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone(), target_nvars);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e as u32);
                } else if e < 0 {
                    let (ic, im) = images[i].as_term().expect("negative exponent needs a monomial image");
                    let inv = Poly::term(ic.inv().expect("nonzero"), im.inverse());
                    t = &t * &inv.pow((-e) as u32);
                }
            }
            out = out + t;
        }
        out
    }

    /// Set every variable in `vars` to zero.
    pub fn kill_vars(&self, vars: &[usize]) -> Poly<K> {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Append `extra` fresh variables (exponent 0) at the end.
    pub fn extend_vars(&self, extra: usize) -> Poly<K> {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut v = m.0.clone();
                    v.extend(std::iter::repeat_n(0, extra));
                    (Monomial(v), c.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (the gcd monomial for
    /// polynomials, the common denominator for Laurent polynomials).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut mins = vec![i32::MAX; self.nvars];
        for m in self.terms.keys() {
            for (a, &e) in mins.iter_mut().zip(&m.0) {
                *a = (*a).min(e);
            }
        }
        if self.terms.is_empty() {
            mins.iter_mut().for_each(|a| *a = 0);
        }
        mins
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Monomial, &K) -> Option<(Monomial, K)>) -> Poly<K> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                out.add_term(m2, c2);
            }
        }
        out
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(mut self, rhs: Poly<K>) -> Poly<K> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        self.clone() + rhs.clone()
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(mut self, rhs: Poly<K>) -> Poly<K> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        self.clone() - rhs.clone()
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { nvars: self.nvars, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        -self.clone()
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Poly<K>) -> Poly<K> {
        &self * &rhs
    }
}
