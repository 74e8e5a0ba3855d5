//! Exact scalars: rationals in lowest terms and residues modulo a prime.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// The coefficient domain of a scalar or polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Rational,
    /// Prime field of the given characteristic. Primality is the caller's
    /// responsibility; moduli must stay below 2^63.
    Prime(u64),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Element of `Z/pZ` stored as its reduced representative in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp { value: value % modulus, modulus }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        Fp { value: (value as i128).rem_euclid(m) as u64, modulus }
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Self {
        let r = value.mod_floor(&BigInt::from(modulus));
        Fp { value: r.to_u64().unwrap_or(0), modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }

    pub fn add(self, o: Fp) -> Fp {
        let s = (self.value as u128 + o.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }

    pub fn sub(self, o: Fp) -> Fp {
        let s = (self.value as u128 + self.modulus as u128 - o.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }

    pub fn mul(self, o: Fp) -> Fp {
        Fp { value: Self::mul_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }

    pub fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self.value;
        let mut acc = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul_mod(acc, base, self.modulus);
            }
            base = Self::mul_mod(base, base, self.modulus);
            e >>= 1;
        }
        Fp { value: acc, modulus: self.modulus }
    }

    pub fn inv(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid; modulus may be composite in misuse, so check gcd
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(Fp::from_i64_wide(t0, self.modulus))
    }

    fn from_i64_wide(v: i128, modulus: u64) -> Fp {
        Fp { value: v.rem_euclid(modulus as i128) as u64, modulus }
    }
}

/// An exact scalar. Values of different domains never combine implicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(Fp),
}

impl Scalar {
    pub fn zero(domain: Domain) -> Scalar {
        match domain {
            Domain::Rational => Scalar::Rat(BigRational::zero()),
            Domain::Prime(p) => Scalar::Mod(Fp::new(0, p)),
        }
    }

    pub fn one(domain: Domain) -> Scalar {
        match domain {
            Domain::Rational => Scalar::Rat(BigRational::one()),
            Domain::Prime(p) => Scalar::Mod(Fp::new(1, p)),
        }
    }

    pub fn from_i64(v: i64, domain: Domain) -> Scalar {
        match domain {
            Domain::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Domain::Prime(p) => Scalar::Mod(Fp::from_i64(v, p)),
        }
    }

    pub fn from_bigint(v: &BigInt, domain: Domain) -> Scalar {
        match domain {
            Domain::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Domain::Prime(p) => Scalar::Mod(Fp::from_bigint(v, p)),
        }
    }

    pub fn rational(v: BigRational) -> Scalar {
        Scalar::Rat(v)
    }

    pub fn int(v: i64) -> Scalar {
        Scalar::from_i64(v, Domain::Rational)
    }

    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Rat(_) => Domain::Rational,
            Scalar::Mod(x) => Domain::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(x) => x.value == 1 % x.modulus,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod(_) => None,
        }
    }

    pub fn as_fp(&self) -> Option<Fp> {
        match self {
            Scalar::Mod(x) => Some(*x),
            Scalar::Rat(_) => None,
        }
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!("scalar domain mismatch: {} vs {}", self.domain(), other.domain())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => Scalar::Mod(a.add(*b)),
            _ => self.mismatch(other),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => Scalar::Mod(a.sub(*b)),
            _ => self.mismatch(other),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => Scalar::Mod(a.mul(*b)),
            _ => self.mismatch(other),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => Scalar::Mod(a.neg()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) if a.is_zero() => None,
            Scalar::Rat(a) => Some(Scalar::Rat(a.recip())),
            Scalar::Mod(a) => a.inv().map(Scalar::Mod),
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(num_traits::pow(a.clone(), e as usize)),
            Scalar::Mod(a) => Scalar::Mod(a.pow(e as u64)),
        }
    }

    /// Reduces a rational into `F_p`; fails when `p` divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar, AlgebraError> {
        match self {
            Scalar::Rat(r) => {
                let num = Fp::from_bigint(r.numer(), p);
                let den = Fp::from_bigint(r.denom(), p);
                let inv = den.inv().ok_or(AlgebraError::DenominatorDivisibleByPrime(p))?;
                Ok(Scalar::Mod(num.mul(inv)))
            }
            Scalar::Mod(x) if x.modulus == p => Ok(self.clone()),
            Scalar::Mod(x) => Err(AlgebraError::DomainMismatch(Domain::Prime(x.modulus), Domain::Prime(p))),
        }
    }

    /// Canonical order: rationals by value, residues by representative.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod(a), Scalar::Mod(b)) => a.value.cmp(&b.value),
            (Scalar::Rat(_), Scalar::Mod(_)) => Ordering::Less,
            (Scalar::Mod(_), Scalar::Rat(_)) => Ordering::Greater,
        }
    }

    pub fn abs_rational(&self) -> Option<BigRational> {
        self.as_rational().map(|r| r.abs())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(x) => write!(f, "{}", x.value),
        }
    }
}

/// Parses `"a"` or `"a/b"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational, AlgebraError> {
    let text = text.trim();
    let bad = || AlgebraError::Parse(text.to_string());
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(text.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
