//! Exact complex-rational scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cq {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Cq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Cq { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Cq { re: rat(n, 1), im: BigRational::zero() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Cq { re: rat(n, d), im: BigRational::zero() }
    }

    /// `re + im·i` with integer parts.
    pub fn gaussian(re: i64, im: i64) -> Self {
        Cq { re: rat(re, 1), im: rat(im, 1) }
    }

    pub fn i() -> Self {
        Self::gaussian(0, 1)
    }

    pub fn zero() -> Self {
        Cq { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Cq { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|² as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Cq { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cq { re: &self.re * r, im: &self.im * r }
    }
}

impl Default for Cq {
    fn default() -> Self {
        Cq::zero()
    }
}

impl From<i64> for Cq {
    fn from(n: i64) -> Self {
        Cq::from_int(n)
    }
}

impl From<BigRational> for Cq {
    fn from(r: BigRational) -> Self {
        Cq { re: r, im: BigRational::zero() }
    }
}

impl Add for &Cq {
    type Output = Cq;
    fn add(self, o: &Cq) -> Cq {
        Cq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Add for Cq {
    type Output = Cq;
    fn add(self, o: Cq) -> Cq {
        &self + &o
    }
}

impl AddAssign<&Cq> for Cq {
    fn add_assign(&mut self, o: &Cq) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl Sub for &Cq {
    type Output = Cq;
    fn sub(self, o: &Cq) -> Cq {
        Cq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Sub for Cq {
    type Output = Cq;
    fn sub(self, o: Cq) -> Cq {
        &self - &o
    }
}

impl Mul for &Cq {
    type Output = Cq;
    fn mul(self, o: &Cq) -> Cq {
        Cq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Mul for Cq {
    type Output = Cq;
    fn mul(self, o: Cq) -> Cq {
        &self * &o
    }
}

impl Div for &Cq {
    type Output = Cq;
    /// Panics on division by zero; use [`Cq::inv`] for a fallible inverse.
    fn div(self, o: &Cq) -> Cq {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &Cq {
    type Output = Cq;
    fn neg(self) -> Cq {
        Cq { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for Cq {
    type Output = Cq;
    fn neg(self) -> Cq {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cq {
    /// Real values print as a bare rational (`-3/2`); anything with an
    /// imaginary part prints as `(re+imi)` or `(re-imi)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "({}{}{}i)", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
        }
    }
}

impl fmt::Debug for Cq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Cq {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) forms: `3`, `-3/2`, `(0-1i)`, `(1/2+3i)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix("i)")) {
            // split at the sign separating real and imaginary parts (not a leading sign)
            let pos = inner
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last()
                .ok_or_else(|| Error::Parse(format!("bad complex `{s}`")))?;
            let re = parse_rat(&inner[..pos])?;
            let im = parse_rat(&inner[pos..].trim_start_matches('+'))?;
            Ok(Cq { re, im })
        } else {
            Ok(Cq::from(parse_rat(s)?))
        }
    }
}
