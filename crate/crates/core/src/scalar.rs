//! Exact coefficient fields.
//!
//! The default field is the Gaussian rationals `Q(i)`, which contains the
//! square root of `-1` needed to pass between sum-of-squares and `uv` forms
//! of the defining polynomials. A small prime field is provided as an
//! alternative coefficient domain for the polynomial layer.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative field of characteristic different from two with exact arithmetic.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        GaussRat::real(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part as an integer, if the value is a real integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(self.re * rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussRat { re, im }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Field for GaussRat {
    fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn from_i64(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(n)))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    /// `a/b`, `c/d*i` or `(a/b+c/d*i)`; the parenthesised form keeps the
    /// coefficient a single token inside polynomial text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}*i", fmt_rat(&self.im))
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "({}{}{}*i)", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of the prime field `F_P`, `P` an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const CHECK: () = assert!(P > 2 && P < (1 << 32), "P must be an odd prime below 2^32");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_F{}", self.0, P)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_inverse() {
        let z = GaussRat::new(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        let w = z.inv().unwrap();
        assert_eq!(z * w, GaussRat::one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn i_squared() {
        assert_eq!(GaussRat::i() * GaussRat::i(), GaussRat::from_i64(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(GaussRat::i().to_string(), "1*i");
        let z = GaussRat::ratio(1, 2) - GaussRat::i() * GaussRat::ratio(3, 4);
        assert_eq!(z.to_string(), "(1/2-3/4*i)");
    }

    #[test]
    fn prime_field() {
        type F7 = Fp<7>;
        let a = F7::new(3);
        assert_eq!(a * a.inv().unwrap(), F7::one());
        assert_eq!(F7::new(-1), F7::new(6));
        assert_eq!((F7::new(5) + F7::new(4)).value(), 2);
    }
}
