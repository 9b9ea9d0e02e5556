//! Exact rationals and truncated univariate power series over them.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidInput(format!("zero denominator in {num}/{den}")));
        }
        Ok(Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Degenerate("division by zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// Checked division, reporting `what` when the divisor vanishes.
    pub fn checked_div(&self, rhs: &Rational, what: &str) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Degenerate(format!("vanishing {what}")));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Rising factorial `(self)_k = self (self+1) ... (self+k-1)`.
    pub fn rising(&self, k: u32) -> Self {
        let mut acc = Rational::one();
        let mut cur = self.clone();
        for _ in 0..k {
            acc *= &cur;
            cur += Rational::one();
        }
        acc
    }

    pub fn factorial(k: u32) -> Self {
        Rational::one().rising(k)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("malformed rational literal '{s}'"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in '{s}'")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::integer(n.into())
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::integer(n.into())
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
// Division panics on a zero divisor like the underlying type; fallible call
// sites use `checked_div`.
forward_binop!(Div, div, /);

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<Rational> for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        self.0 *= rhs.0;
    }
}

impl<'a> MulAssign<&'a Rational> for Rational {
    fn mul_assign(&mut self, rhs: &'a Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for `Rational::new(num, den)`.
pub fn rat(num: i64, den: i64) -> Result<Rational> {
    Rational::new(num, den)
}

/// Elementary symmetric polynomial `e_r` evaluated at a list of rationals.
pub fn elementary(values: &[Rational], r: usize) -> Rational {
    // e_0..e_r by the usual one-pass recurrence
    let mut e = vec![Rational::zero(); r + 1];
    e[0] = Rational::one();
    for v in values {
        for k in (1..=r).rev() {
            let add = &e[k - 1] * v;
            e[k] += add;
        }
    }
    e.swap_remove(r)
}

/// Complete homogeneous symmetric polynomial `h_r` evaluated at a list of rationals.
pub fn complete_homogeneous(values: &[Rational], r: usize) -> Rational {
    let mut h = vec![Rational::zero(); r + 1];
    h[0] = Rational::one();
    for v in values {
        for k in 1..=r {
            let add = &h[k - 1] * v;
            h[k] += add;
        }
    }
    h.swap_remove(r)
}

/// Power series `c_0 + c_1 s + ... + c_order s^order`, truncated at `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniSeries {
    coeffs: Vec<Rational>,
}

impl UniSeries {
    /// Builds a series of the given order, padding with zeros or dropping
    /// coefficients past the truncation.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        UniSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        UniSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        UniSeries::new(vec![Rational::one()], order)
    }

    /// `c + d s`
    pub fn linear(c: Rational, d: Rational, order: usize) -> Self {
        UniSeries::new(vec![c, d], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^k`; zero past the truncation.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UniSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &UniSeries) -> Result<Self> {
        check_orders(self, other)?;
        Ok(UniSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &UniSeries) -> Result<Self> {
        check_orders(self, other)?;
        Ok(UniSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = UniSeries::one(self.order());
        for _ in 0..k {
            acc = ps_mul(&acc, self).expect("orders agree");
        }
        acc
    }
}

fn check_orders(a: &UniSeries, b: &UniSeries) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::InvalidInput(format!(
            "series orders differ: {} vs {}",
            a.order(),
            b.order()
        )));
    }
    Ok(())
}

/// Cauchy product truncated to the common order.
pub fn ps_mul(a: &UniSeries, b: &UniSeries) -> Result<UniSeries> {
    check_orders(a, b)?;
    let order = a.order();
    let mut out = vec![Rational::zero(); order + 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().take(order + 1 - i).enumerate() {
            out[i + j] += ai * bj;
        }
    }
    Ok(UniSeries { coeffs: out })
}

/// Multiplicative inverse of a series with nonzero constant term.
pub fn ps_inv(a: &UniSeries) -> Result<UniSeries> {
    let c0 = &a.coeffs[0];
    if c0.is_zero() {
        return Err(Error::NonInvertible);
    }
    let inv0 = c0.recip()?;
    let order = a.order();
    let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
    out.push(inv0.clone());
    for k in 1..=order {
        let mut acc = Rational::zero();
        for j in 1..=k {
            acc += &a.coeffs[j] * &out[k - j];
        }
        out.push(-(acc * &inv0));
    }
    Ok(UniSeries { coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d).unwrap()
    }

    fn series(c: &[i64], order: usize) -> UniSeries {
        UniSeries::new(c.iter().map(|&x| Rational::integer(x)).collect(), order)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(r(2, 4).to_string(), "1/2");
        assert_eq!(r(3, -6).to_string(), "-1/2");
        let z = r(0, 7);
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(z.to_string(), "0");
        assert!(matches!(rat(1, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn parse_literals() {
        assert_eq!("5/2".parse::<Rational>().unwrap(), r(5, 2));
        assert_eq!("-3".parse::<Rational>().unwrap(), r(-3, 1));
        assert_eq!(" 4/-8 ".parse::<Rational>().unwrap(), r(-1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let v = vec![r(1, 2), r(3, 1)];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1/2","3"]"#);
        let back: Vec<Rational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn series_products() {
        assert_eq!(ps_mul(&series(&[1, 1], 2), &series(&[1, -1], 2)).unwrap(), series(&[1, 0, -1], 2));
        let b = series(&[3, -2, 7], 2);
        assert_eq!(ps_mul(&UniSeries::one(2), &b).unwrap(), b);
        assert_eq!(ps_mul(&series(&[1, 1, 1], 2), &series(&[1, 1], 2)).unwrap(), series(&[1, 2, 2], 2));
        assert!(ps_mul(&series(&[1], 1), &series(&[1], 2)).is_err());
    }

    #[test]
    fn series_inverses() {
        assert_eq!(ps_inv(&series(&[1, -1], 3)).unwrap(), series(&[1, 1, 1, 1], 3));
        assert_eq!(ps_inv(&UniSeries::one(2)).unwrap(), UniSeries::one(2));
        let inv = ps_inv(&series(&[2, 1], 1)).unwrap();
        assert_eq!(inv.coeffs(), &[r(1, 2), r(-1, 4)]);
        assert_eq!(ps_inv(&series(&[0, 1], 2)), Err(Error::NonInvertible));
    }

    #[test]
    fn symmetric_functions_of_values() {
        let v = [r(1, 1), r(2, 1), r(3, 1)];
        assert_eq!(elementary(&v, 0), r(1, 1));
        assert_eq!(elementary(&v, 2), r(11, 1));
        assert_eq!(elementary(&v, 4), r(0, 1));
        assert_eq!(complete_homogeneous(&v, 2), r(25, 1));
        assert_eq!(Rational::integer(3).rising(3), r(60, 1));
    }
}
