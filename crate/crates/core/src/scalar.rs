//! Exact scalar fields.
//!
//! Two fields are provided: the rationals (arbitrary precision, always kept
//! in lowest terms by `num-rational`) and prime fields `GF(p)` with
//! `p < 2^31`, so that a product of two residues fits in a `u64`.
//!
//! The algebra code is generic over [`Field`], a small context object that
//! knows how to build constants, parse literals and sample elements. The
//! elements themselves implement [`Scalar`] and support the usual arithmetic
//! operators.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// An element of an exact field.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

/// Runtime description of a field, as written in files (`Q`, `F7`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDecl {
    Rationals,
    Prime(u32),
}

impl FieldDecl {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDecl::Rationals => 0,
            FieldDecl::Prime(p) => *p as u64,
        }
    }
}

impl Display for FieldDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDecl::Rationals => write!(f, "Q"),
            FieldDecl::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldDecl {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldDecl::Rationals);
        }
        let digits = s
            .strip_prefix('F')
            .ok_or_else(|| Error::Parse(format!("unknown field literal `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field literal `{s}`")))?;
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Parse(format!("F{p}: characteristic must be a prime below 2^31")));
        }
        Ok(FieldDecl::Prime(p as u32))
    }
}

/// A field together with the operations the algorithms need on top of
/// ring arithmetic.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Scalar;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn decl(&self) -> FieldDecl;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;
    /// The `index`-th element in a fixed enumeration (finite fields only).
    fn element_at(&self, index: u64) -> Self::Elem;
    fn parse(&self, text: &str) -> Result<Self::Elem>;
    /// Uniform sample: integers in `[-bound, bound]` over Q, all of `GF(p)`
    /// otherwise.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;
    /// Size of the set `sample` draws from.
    fn sample_set_size(&self, bound: u64) -> u64;

    /// A primitive `n`-th root of unity, if the field has one.
    fn root_of_unity(&self, n: u64) -> Option<Self::Elem>;

    fn characteristic(&self) -> u64 {
        self.decl().characteristic()
    }

    /// `count` pairwise distinct elements, or all of them when the field is
    /// smaller than that.
    fn distinct_elements(&self, count: u64) -> Vec<Self::Elem> {
        match self.size() {
            Some(q) if q <= count => (0..q).map(|i| self.element_at(i)).collect(),
            _ => (1..=count as i64).map(|i| self.from_i64(i)).collect(),
        }
    }
}

pub type Rational = BigRational;

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn decl(&self) -> FieldDecl {
        FieldDecl::Rationals
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn element_at(&self, index: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let k = index.div_ceil(2) as i64;
        self.from_i64(if index % 2 == 1 { k } else { -k })
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let text = text.trim();
        let bad = || Error::Parse(format!("malformed scalar `{text}`"));
        match text.split_once('/') {
            None => Ok(BigRational::from_integer(parse_int(text).ok_or_else(bad)?)),
            Some((a, b)) => {
                let num = parse_int(a).ok_or_else(bad)?;
                let den = parse_int(b).ok_or_else(bad)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{text}`")));
                }
                Ok(BigRational::new(num, den))
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> BigRational {
        let b = bound.max(1) as i64;
        self.from_i64(rng.gen_range(-b..=b))
    }

    fn sample_set_size(&self, bound: u64) -> u64 {
        2 * bound.max(1) + 1
    }

    fn root_of_unity(&self, n: u64) -> Option<BigRational> {
        match n {
            1 => Some(self.one()),
            2 => Some(self.from_i64(-1)),
            _ => None,
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// A residue modulo a prime. The modulus travels with the value so that the
/// arithmetic operators need no context.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Fp {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp {
            value: acc as u32,
            modulus: self.modulus,
        }
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u64 + rhs.value as u64;
        Fp {
            value: (s % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus as u64;
        let s = self.value as u64 + p - rhs.value as u64;
        Fp {
            value: (s % p) as u32,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u64 * rhs.value as u64;
        Fp {
            value: (s % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn inverse(&self) -> Option<Fp> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }
}

/// The prime field `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if (p as u64) >= 1 << 31 || !is_prime(p as u64) {
            return Err(Error::Parse(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, n: i64) -> Fp {
        Fp {
            value: n.rem_euclid(self.p as i64) as u32,
            modulus: self.p,
        }
    }

    /// A primitive `n`-th root of unity, if `n` divides `p - 1`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Option<Fp> {
        let q = self.p as u64 - 1;
        if n == 0 || !q.is_multiple_of(n) {
            return None;
        }
        let factors = prime_factors(n);
        (1..self.p as u64)
            .map(|g| {
                Fp {
                    value: g as u32,
                    modulus: self.p,
                }
                .pow(q / n)
            })
            .find(|w| w.pow(n).is_one() && factors.iter().all(|f| !w.pow(n / f).is_one()))
    }
}

impl Field for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        self.reduce(0)
    }

    fn one(&self) -> Fp {
        self.reduce(1)
    }

    fn from_i64(&self, n: i64) -> Fp {
        self.reduce(n)
    }

    fn decl(&self) -> FieldDecl {
        FieldDecl::Prime(self.p)
    }

    fn size(&self) -> Option<u64> {
        Some(self.p as u64)
    }

    fn element_at(&self, index: u64) -> Fp {
        self.reduce((index % self.p as u64) as i64)
    }

    fn parse(&self, text: &str) -> Result<Fp> {
        let text = text.trim();
        if text.contains('/') {
            return Err(Error::Parse(format!(
                "fraction literal `{text}` is not allowed over F{}",
                self.p
            )));
        }
        let n = parse_int(text).ok_or_else(|| Error::Parse(format!("malformed scalar `{text}`")))?;
        let r = n % BigInt::from(self.p);
        let r: i64 = r.try_into().expect("residue fits in i64");
        Ok(self.reduce(r))
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> Fp {
        Fp {
            value: rng.gen_range(0..self.p),
            modulus: self.p,
        }
    }

    fn sample_set_size(&self, _bound: u64) -> u64 {
        self.p as u64
    }

    fn root_of_unity(&self, n: u64) -> Option<Fp> {
        self.primitive_root_of_unity(n)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parse_examples() {
        let q = Rationals;
        assert_eq!(q.parse("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(q.parse("-4/-8").unwrap().to_string(), "1/2");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("1.5").is_err());
        assert!(q.parse("").is_err());
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.parse("9").unwrap().value(), 2);
        assert_eq!(f7.parse("-1").unwrap().value(), 6);
        assert!(f7.parse("1/2").is_err());
    }

    #[test]
    fn field_literals() {
        assert_eq!("Q".parse::<FieldDecl>().unwrap(), FieldDecl::Rationals);
        assert_eq!("F7".parse::<FieldDecl>().unwrap(), FieldDecl::Prime(7));
        assert!("F8".parse::<FieldDecl>().is_err());
        assert!("R".parse::<FieldDecl>().is_err());
        assert_eq!(FieldDecl::Prime(5).to_string(), "F5");
    }

    #[test]
    fn sampling_ranges_and_determinism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = Rationals.sample(&mut rng, 4);
            assert!(x.abs() <= BigRational::from_integer(4.into()));
            assert!(x.is_integer());
        }
        let f7 = PrimeField::new(7).unwrap();
        for _ in 0..200 {
            assert!(f7.sample(&mut rng, 4).value() < 7);
        }
        let a = Rationals.sample(&mut ChaCha8Rng::seed_from_u64(3), 100);
        let b = Rationals.sample(&mut ChaCha8Rng::seed_from_u64(3), 100);
        assert_eq!(a, b);
    }

    #[test]
    fn roots_of_unity() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.primitive_root_of_unity(2).unwrap().value(), 4);
        let w = f5.primitive_root_of_unity(4).unwrap();
        assert!(w.pow(4).is_one() && !w.pow(2).is_one());
        assert!(PrimeField::new(7).unwrap().primitive_root_of_unity(4).is_none());
    }

    #[test]
    fn distinct_elements_small_field() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.distinct_elements(5).len(), 3);
        assert_eq!(Rationals.distinct_elements(5).len(), 5);
    }
}
