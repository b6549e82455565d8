//! Coefficient rings used by Fock vectors.
//!
//! [`Scalar`] is the ring interface every Fock-space routine is generic over.
//! [`Field`] adds division for exact linear algebra. [`Coefficient`] is the
//! exact field Q(i, sqrt(s)) used when on-shell momenta need an irrational
//! energy component.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::rational::Rational;

pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn conj(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * Self::from_int(n)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
}

pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;

    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<Rational> {
        None
    }
}

/// Sign of an element known to be real.
pub trait RealSign: Scalar {
    /// `None` when the element has a nonzero imaginary part.
    fn real_sign(&self) -> Option<i8>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_int(n)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl RealSign for Rational {
    fn real_sign(&self) -> Option<i8> {
        Some(self.signum())
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
    fn conj(&self) -> Self {
        *self
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(r.to_f64(), 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

/// Element `re + i im + sqrt(s) rad + i sqrt(s) irad` of Q(i, sqrt(s)).
///
/// `s == 0` marks an element of Q(i); the radical parts are then zero. `s` must
/// be a positive non-square when used. Mixing two different nonzero radicands
/// panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coefficient {
    pub re: Rational,
    pub im: Rational,
    pub rad: Rational,
    pub irad: Rational,
    pub s: u64,
}

impl Coefficient {
    pub fn real(r: Rational) -> Self {
        Coefficient { re: r, im: Rational::zero(), rad: Rational::zero(), irad: Rational::zero(), s: 0 }
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Coefficient { re, im, rad: Rational::zero(), irad: Rational::zero(), s: 0 }
    }

    pub fn i() -> Self {
        Self::gaussian(Rational::zero(), Rational::one())
    }

    /// `c * sqrt(s)`.
    pub fn sqrt_of(s: u64, c: Rational) -> Self {
        let mut out = Coefficient::real(Rational::zero());
        if c.is_zero() {
            return out;
        }
        out.rad = c;
        out.s = s;
        out
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero() && self.irad.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.im.is_zero() && self.rad.is_zero() && self.irad.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }

    fn joint_s(a: u64, b: u64) -> u64 {
        match (a, b) {
            (0, x) | (x, 0) => x,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed radicands {} and {}", x, y),
        }
    }

    fn normalized(mut self) -> Self {
        if self.rad.is_zero() && self.irad.is_zero() {
            self.s = 0;
        }
        self
    }

    /// Conjugation sqrt(s) -> -sqrt(s), leaving i fixed.
    pub fn radical_conj(&self) -> Self {
        Coefficient {
            re: self.re.clone(),
            im: self.im.clone(),
            rad: -self.rad.clone(),
            irad: -self.irad.clone(),
            s: self.s,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let r = (self.s as f64).sqrt();
        Complex64::new(self.re.to_f64() + r * self.rad.to_f64(), self.im.to_f64() + r * self.irad.to_f64())
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 0 {
            write!(f, "({} + {}i)", self.re, self.im)
        } else {
            write!(f, "({} + {}i + ({} + {}i)√{})", self.re, self.im, self.rad, self.irad, self.s)
        }
    }
}

/// Nonzero parts joined by `+`, e.g. `3/2 + 1*i*sqrt(2)`; zero prints as `0`.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rad = format!("sqrt({})", self.s);
        let parts: Vec<String> = [(&self.re, ""), (&self.im, "i"), (&self.rad, rad.as_str()), (&self.irad, "")]
            .iter()
            .enumerate()
            .filter(|(_, (c, _))| !c.is_zero())
            .map(|(k, (c, unit))| match k {
                0 => c.to_string(),
                3 => format!("{}*i*{}", c, rad),
                _ => format!("{}*{}", c, unit),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for Coefficient {
    type Output = Coefficient;
    fn add(self, o: Coefficient) -> Coefficient {
        Coefficient {
            s: Self::joint_s(self.s, o.s),
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            rad: &self.rad + &o.rad,
            irad: &self.irad + &o.irad,
        }
        .normalized()
    }
}

impl Sub for Coefficient {
    type Output = Coefficient;
    fn sub(self, o: Coefficient) -> Coefficient {
        self + (-o)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient { re: -self.re, im: -self.im, rad: -self.rad, irad: -self.irad, s: self.s }
    }
}

impl Mul for Coefficient {
    type Output = Coefficient;
    fn mul(self, o: Coefficient) -> Coefficient {
        let s = Self::joint_s(self.s, o.s);
        // (a + b i + c r + e i r)(a' + b' i + c' r + e' i r), r^2 = s, i^2 = -1
        let sr = Rational::from_int(s as i64);
        let (a, b, c, e) = (&self.re, &self.im, &self.rad, &self.irad);
        let (a2, b2, c2, e2) = (&o.re, &o.im, &o.rad, &o.irad);
        let re = &(&(a * a2) - &(b * b2)) + &(&sr * &(&(c * c2) - &(e * e2)));
        let im = &(&(a * b2) + &(b * a2)) + &(&sr * &(&(c * e2) + &(e * c2)));
        let rad = &(&(a * c2) + &(c * a2)) - &(&(b * e2) + &(e * b2));
        let irad = &(&(a * e2) + &(e * a2)) + &(&(b * c2) + &(c * b2));
        Coefficient { re, im, rad, irad, s }.normalized()
    }
}

impl Scalar for Coefficient {
    fn zero() -> Self {
        Coefficient::real(Rational::zero())
    }
    fn one() -> Self {
        Coefficient::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero() && self.irad.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Coefficient::real(r.clone())
    }
    fn conj(&self) -> Self {
        Coefficient {
            re: self.re.clone(),
            im: -self.im.clone(),
            rad: self.rad.clone(),
            irad: -self.irad.clone(),
            s: self.s,
        }
    }
}

impl Field for Coefficient {
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        // x * conj(x) lies in Q(sqrt s); times its radical conjugate lies in Q.
        let n1 = self.clone() * self.conj();
        let n2 = n1.clone() * n1.radical_conj();
        let q = n2.as_rational().expect("norm must be rational");
        let num = self.conj() * n1.radical_conj();
        let qi = Coefficient::real(q.recip()?);
        Some(num * qi)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational()
    }
}

impl RealSign for Coefficient {
    fn real_sign(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        let a = self.re.signum();
        let c = self.rad.signum();
        if c == 0 || self.s == 0 {
            return Some(a);
        }
        if a == 0 || a == c {
            return Some(c);
        }
        // opposite signs: compare a^2 with c^2 s
        let lhs = &self.re * &self.re;
        let rhs = &(&self.rad * &self.rad) * &Rational::from_int(self.s as i64);
        Some(match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => c,
            std::cmp::Ordering::Equal => 0,
        })
    }
}
