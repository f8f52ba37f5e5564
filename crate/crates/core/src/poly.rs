//! Polynomials in T over a runtime field.
//!
//! Coefficients are stored in ascending degree order and kept trimmed, so
//! `coeffs.len()` is `deg + 1` for nonzero polynomials and 0 for zero.
//! The absolute value on K = F((1/T)) restricts to polynomials as
//! |p| = e^deg, so `log_norm` is just the degree.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::field::Field;
use crate::series::LogNorm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<K: Field> {
    field: K,
    coeffs: Vec<K::Elem>,
}

impl<K: Field> Poly<K> {
    pub fn new(field: K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: K) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: K) -> Self {
        let c = field.one();
        Poly::new(field, vec![c])
    }

    pub fn constant(field: K, c: K::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// c * T^d
    pub fn monomial(field: K, c: K::Elem, d: usize) -> Self {
        let mut coeffs = vec![field.zero(); d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    /// Convenience over integer coefficient lists, ascending degree.
    pub fn from_int_coeffs(field: K, cs: &[i64]) -> Self {
        let coeffs = cs.iter().map(|&c| field.from_i64(c)).collect();
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn log_norm(&self) -> LogNorm {
        match self.deg() {
            Some(d) => LogNorm::Finite(d as i64),
            None => LogNorm::NegInf,
        }
    }

    pub fn lc(&self) -> Option<&K::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, d: usize) -> K::Elem {
        self.coeffs.get(d).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.field.add(&self.coeff(i), &other.coeff(i)));
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let out = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly { field: self.field.clone(), coeffs: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(&out[i + j], &self.field.mul(a, b));
            }
        }
        Poly::new(self.field.clone(), out)
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let out = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), out)
    }

    /// Multiply by T^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![self.field.zero(); k];
        out.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: out }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field.clone());
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.from_i64(i as i64), c))
            .collect();
        Poly::new(self.field.clone(), out)
    }

    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    /// Coefficients of p(S + alpha) in S; index m is the coefficient of
    /// (T - alpha)^m in p.
    pub fn taylor_shift(&self, alpha: &K::Elem) -> Self {
        let mut out = Poly::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            // out = out * (S + alpha) + c
            let shifted = out.shift_up(1).add(&out.scale(alpha));
            out = shifted.add(&Poly::constant(self.field.clone(), c.clone()));
        }
        out
    }

    /// Multiplicity of alpha as a root (0 when p(alpha) != 0).
    pub fn ord_at(&self, alpha: &K::Elem) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let shifted = self.taylor_shift(alpha);
        shifted.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    /// T^t * p(1/T). Requires deg p <= t.
    pub fn reverse_at(&self, t: usize) -> Result<Self, Error> {
        if let Some(d) = self.deg() {
            if d > t {
                return Err(Error::Precondition("reverse_at needs deg <= t"));
            }
        }
        let mut out = vec![self.field.zero(); t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[t - i] = c.clone();
        }
        Ok(Poly::new(self.field.clone(), out))
    }

    pub fn divrem(&self, d: &Self) -> Result<(Self, Self), Error> {
        assert_eq!(self.field, d.field, "field mismatch");
        let dd = match d.deg() {
            Some(x) => x,
            None => return Err(Error::DivisionByZero),
        };
        let lc_inv = self.field.inv(d.lc().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = self.field.mul(rem.last().unwrap(), &lc_inv);
            for i in 0..=dd {
                let t = self.field.mul(&c, &d.coeffs[i]);
                rem[k + i] = self.field.sub(&rem[k + i], &t);
            }
            debug_assert!(self.field.is_zero(rem.last().unwrap()));
            rem.pop();
            quo[k] = c;
        }
        Ok((
            Poly::new(self.field.clone(), quo),
            Poly::new(self.field.clone(), rem),
        ))
    }

    /// Division known to be exact; checked.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d).expect("exact_div by zero");
        assert!(r.is_zero(), "exact_div had a remainder");
        q
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical text form, most significant term first.
    pub fn show(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        write!(s, "{self}").unwrap();
        s
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let (neg, mag) = if self.field.is_negative(c) {
                (true, self.field.neg(c))
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = d == 0 || !self.field.is_one(&mag);
            if show_coeff {
                write!(f, "{}", self.field.show(&mag))?;
            }
            if d > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if d == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{d}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn mul_and_divrem() {
        let q = Rationals;
        let a = Poly::from_int_coeffs(q, &[1, 2, 1]); // 1 + 2T + T^2
        let b = Poly::from_int_coeffs(q, &[1, 1]);
        assert_eq!(a.exact_div(&b), b);
        let (quo, rem) = Poly::from_int_coeffs(q, &[0, 0, 1]).divrem(&b).unwrap();
        assert_eq!(quo, Poly::from_int_coeffs(q, &[-1, 1]));
        assert_eq!(rem, Poly::from_int_coeffs(q, &[1]));
    }

    #[test]
    fn taylor_shift_and_ord() {
        let q = Rationals;
        // (T-1)^2 * T
        let p = Poly::from_int_coeffs(q, &[0, 1, -2, 1]);
        assert_eq!(p.ord_at(&q.from_i64(1)), Some(2));
        assert_eq!(p.ord_at(&q.from_i64(0)), Some(1));
        assert_eq!(p.ord_at(&q.from_i64(2)), Some(0));
        let sh = p.taylor_shift(&q.from_i64(1));
        // p(S+1) = (S+1)S^2 = S^2 + S^3
        assert_eq!(sh, Poly::from_int_coeffs(q, &[0, 0, 1, 1]));
    }

    #[test]
    fn reverse_swaps_ends() {
        let f5 = PrimeField::new(5).unwrap();
        let p = Poly::from_int_coeffs(f5, &[1, 2]); // 1 + 2T
        let r = p.reverse_at(3).unwrap(); // T^3 (1 + 2/T) = T^3 + 2T^2
        assert_eq!(r, Poly::from_int_coeffs(f5, &[0, 0, 2, 1]));
        assert!(p.reverse_at(0).is_err());
    }

    #[test]
    fn display_forms() {
        let q = Rationals;
        let p = Poly::from_int_coeffs(q, &[-1, 0, 2]);
        assert_eq!(p.show(), "2*T^2 - 1");
        assert_eq!(Poly::<Rationals>::zero(q).show(), "0");
        let m = Poly::from_int_coeffs(q, &[0, -1]);
        assert_eq!(m.show(), "-T");
    }
}
