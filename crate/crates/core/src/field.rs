//! Runtime-selected coefficient fields.
//!
//! Every container type in this crate carries its field as a value, so a
//! single generic code path serves both the rationals and prime fields with
//! no global state. `PrimeField` elements are reduced residues in a `u64`;
//! rational elements are arbitrary-precision fractions.

use alloc::string::String;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub trait Field: Clone + fmt::Debug + PartialEq + Eq {
    type Elem: Clone + fmt::Debug + PartialEq + Eq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    /// Used only for rendering; prime fields say no.
    fn is_negative(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, Error>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn characteristic(&self) -> u64;

    /// Scale a row so that fraction-free elimination starts from
    /// denominator-free entries. Identity where there are no denominators.
    fn clear_denominators(&self, _row: &mut [Self::Elem]) {}

    /// Human-facing rendering ("3", "-1/2").
    fn show(&self, a: &Self::Elem) -> String;

    /// Canonical serialization string: "num/den" over the rationals, the
    /// decimal residue over a prime field.
    fn encode(&self, a: &Self::Elem) -> String;

    fn decode(&self, s: &str) -> Result<Self::Elem, Error>;
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

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

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, Error> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn clear_denominators(&self, row: &mut [BigRational]) {
        let mut l = BigInt::one();
        for x in row.iter() {
            l = l.lcm(x.denom());
        }
        if l.is_one() {
            return;
        }
        let l = BigRational::from_integer(l);
        for x in row.iter_mut() {
            *x = &*x * &l;
        }
    }

    fn show(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            a.to_string()
        }
    }

    fn encode(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            let mut s = a.numer().to_string();
            s.push('/');
            s.push_str(&a.denom().to_string());
            s
        }
    }

    fn decode(&self, s: &str) -> Result<BigRational, Error> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num.trim()).map_err(|_| Error::Parse("bad rational"))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| Error::Parse("bad rational"))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator"));
        }
        Ok(BigRational::new(n, d))
    }
}

/// A prime field F_p for a u64 prime p. Elements are reduced residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Image of a rational number mod p; fails when p divides the denominator.
    pub fn reduce_rational(&self, x: &BigRational) -> Result<u64, Error> {
        let p = BigInt::from(self.p);
        let n = x.numer().mod_floor(&p).to_u64().expect("reduced residue fits");
        let d = x.denom().mod_floor(&p).to_u64().expect("reduced residue fits");
        if d == 0 {
            return Err(Error::BadReduction);
        }
        self.div(&n, &d)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }

    fn is_negative(&self, _a: &u64) -> bool {
        false
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Result<u64, Error> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended euclid on (a, p)
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(s0.rem_euclid(self.p as i128) as u64)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn show(&self, a: &u64) -> String {
        a.to_string()
    }

    fn encode(&self, a: &u64) -> String {
        a.to_string()
    }

    fn decode(&self, s: &str) -> Result<u64, Error> {
        let v = i64::from_str(s.trim()).map_err(|_| Error::Parse("bad residue"))?;
        Ok(self.from_i64(v))
    }
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow = |b: u64, mut e: u64| -> u64 {
        let mut acc: u128 = 1;
        let m = n as u128;
        let mut bb = b as u128 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % m;
            }
            bb = bb * bb % m;
            e >>= 1;
        }
        acc as u64
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Row of field elements; a convenience alias used by the linear algebra.
pub type Row<K> = Vec<<K as Field>::Elem>;
