//! Truncated Laurent series in 1/T, power series in T, and log-scale norms.
//!
//! A `LaurentSeries` stores coefficients for exponents `hi` down to a floor;
//! exponents above `hi` are known to be zero and exponents below the floor
//! are unknown. A floor of `None` marks an exact series (a Laurent
//! polynomial), which is how polynomials and finite constructions embed.
//! Norms are reported through `LogNorm`, which keeps an explicit
//! indeterminate state instead of ever guessing: a series whose stored
//! window is entirely zero has norm at most `e^(floor-1)` and nothing more
//! can be said.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::field::Field;
use crate::poly::Poly;

/// log|x| for the absolute value with |T| = e.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogNorm {
    /// Norm of an exact zero.
    NegInf,
    Finite(i64),
    /// All stored coefficients vanish; the true value is <= upper (and may
    /// be -inf). `upper` is floor - 1 of the inspected window.
    Indeterminate { upper: i64 },
}

impl LogNorm {
    pub fn is_determinate(&self) -> bool {
        !matches!(self, LogNorm::Indeterminate { .. })
    }

    pub fn as_finite(&self) -> Option<i64> {
        match self {
            LogNorm::Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// Finite value or an error (indeterminate and -inf both refuse).
    pub fn require_finite(&self) -> Result<i64, Error> {
        match self {
            LogNorm::Finite(v) => Ok(*v),
            LogNorm::NegInf => Err(Error::Precondition("norm is -inf")),
            LogNorm::Indeterminate { .. } => Err(Error::Indeterminate),
        }
    }

    /// Certified maximum: indeterminate windows below a finite value are
    /// absorbed, otherwise indeterminacy propagates.
    pub fn max(self, other: Self) -> Self {
        use LogNorm::*;
        match (self, other) {
            (NegInf, x) | (x, NegInf) => x,
            (Finite(a), Finite(b)) => Finite(a.max(b)),
            (Finite(a), Indeterminate { upper }) | (Indeterminate { upper }, Finite(a)) => {
                if upper <= a {
                    Finite(a)
                } else {
                    Indeterminate { upper }
                }
            }
            (Indeterminate { upper: a }, Indeterminate { upper: b }) => {
                Indeterminate { upper: a.max(b) }
            }
        }
    }

    pub fn add_const(self, c: i64) -> Self {
        match self {
            LogNorm::NegInf => LogNorm::NegInf,
            LogNorm::Finite(v) => LogNorm::Finite(v + c),
            LogNorm::Indeterminate { upper } => LogNorm::Indeterminate { upper: upper + c },
        }
    }
}

impl fmt::Display for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNorm::NegInf => write!(f, "-inf"),
            LogNorm::Finite(v) => write!(f, "{v}"),
            LogNorm::Indeterminate { upper } => write!(f, "<={upper}?"),
        }
    }
}

/// Truncated (or exact) Laurent series in descending powers of T.
#[derive(Clone, Debug)]
pub struct LaurentSeries<K: Field> {
    field: K,
    /// Exponent of `coeffs[0]`; all exponents above are known zero.
    hi: i64,
    /// Descending exponents hi, hi-1, ...
    coeffs: Vec<K::Elem>,
    /// `Some(f)`: exponents below f unknown and storage covers [f, hi].
    /// `None`: exact; everything outside storage is zero.
    floor: Option<i64>,
}

impl<K: Field> LaurentSeries<K> {
    pub fn new(field: K, hi: i64, coeffs: Vec<K::Elem>, floor: Option<i64>) -> Result<Self, Error> {
        if let Some(f) = floor {
            let want = hi - f + 1;
            if want < 0 || coeffs.len() as i64 != want {
                return Err(Error::Precondition("storage must cover [floor, hi]"));
            }
        }
        let mut s = LaurentSeries { field, hi, coeffs, floor };
        s.trim();
        Ok(s)
    }

    pub fn exact_zero(field: K) -> Self {
        LaurentSeries { field, hi: -1, coeffs: Vec::new(), floor: None }
    }

    /// The series that is zero down to `floor` exclusive, unknown below.
    pub fn zero_to_floor(field: K, floor: i64) -> Self {
        LaurentSeries { field, hi: floor - 1, coeffs: Vec::new(), floor: Some(floor) }
    }

    pub fn from_poly(p: &Poly<K>) -> Self {
        match p.deg() {
            None => Self::exact_zero(p.field().clone()),
            Some(d) => {
                let coeffs = p.coeffs().iter().rev().cloned().collect();
                LaurentSeries {
                    field: p.field().clone(),
                    hi: d as i64,
                    coeffs,
                    floor: None,
                }
            }
        }
    }

    /// Single term c * T^e, exact.
    pub fn monomial(field: K, c: K::Elem, e: i64) -> Self {
        let mut s = LaurentSeries { field, hi: e, coeffs: vec![c], floor: None };
        s.trim();
        s
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.floor.is_none() && self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.first() {
            if self.field.is_zero(c) {
                self.coeffs.remove(0);
                self.hi -= 1;
            } else {
                break;
            }
        }
        if self.floor.is_none() {
            while self.coeffs.last().map_or(false, |c| self.field.is_zero(c)) {
                self.coeffs.pop();
            }
            if self.coeffs.is_empty() {
                self.hi = -1;
            }
        }
    }

    /// Stored coefficients, descending from the exponent `hi`.
    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    /// Lowest exponent with a stored (or implied zero) coefficient.
    pub fn lo(&self) -> i64 {
        match self.floor {
            Some(f) => f,
            None => self.hi - self.coeffs.len() as i64 + 1,
        }
    }

    /// Coefficient at exponent e when it is known.
    pub fn coeff(&self, e: i64) -> Result<K::Elem, Error> {
        if e > self.hi {
            return Ok(self.field.zero());
        }
        match self.floor {
            Some(f) if e < f => Err(Error::Indeterminate),
            _ => {
                let idx = self.hi - e;
                Ok(self
                    .coeffs
                    .get(idx as usize)
                    .cloned()
                    .unwrap_or_else(|| self.field.zero()))
            }
        }
    }

    pub fn log_norm(&self) -> LogNorm {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !self.field.is_zero(c) {
                return LogNorm::Finite(self.hi - i as i64);
            }
        }
        match self.floor {
            None => LogNorm::NegInf,
            Some(f) => LogNorm::Indeterminate { upper: f - 1 },
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            hi: self.hi,
            coeffs,
            floor: self.floor,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let floor = match (self.floor, other.floor) {
            (None, None) => None,
            (Some(f), None) | (None, Some(f)) => Some(f),
            (Some(f), Some(g)) => Some(f.max(g)),
        };
        let hi = self.hi.max(other.hi);
        let lo = match floor {
            Some(f) => f,
            None => self.lo().min(other.lo()),
        };
        let mut coeffs = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        let mut e = hi;
        while e >= lo {
            let a = self.coeff(e).expect("within floor");
            let b = other.coeff(e).expect("within floor");
            coeffs.push(self.field.add(&a, &b));
            e -= 1;
        }
        let mut s = LaurentSeries { field: self.field.clone(), hi, coeffs, floor };
        s.trim();
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::exact_zero(self.field.clone());
        }
        let floor = match (self.floor, other.floor) {
            (None, None) => None,
            (Some(f), None) => Some(f + other.hi),
            (None, Some(g)) => Some(g + self.hi),
            (Some(f), Some(g)) => Some((f + other.hi).max(g + self.hi)),
        };
        let hi = self.hi + other.hi;
        let lo = match floor {
            Some(f) => f,
            None => self.lo() + other.lo(),
        };
        if hi < lo {
            // nothing knowable
            return match floor {
                Some(f) => Self::zero_to_floor(self.field.clone(), f.min(hi + 1)),
                None => Self::exact_zero(self.field.clone()),
            };
        }
        let mut coeffs = vec![self.field.zero(); (hi - lo + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            let ea = self.hi - i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let eb = other.hi - j as i64;
                let e = ea + eb;
                if e < lo {
                    break;
                }
                let idx = (hi - e) as usize;
                coeffs[idx] = self.field.add(&coeffs[idx], &self.field.mul(a, b));
            }
        }
        let mut s = LaurentSeries { field: self.field.clone(), hi, coeffs, floor };
        s.trim();
        s
    }

    pub fn mul_poly(&self, p: &Poly<K>) -> Self {
        self.mul(&Self::from_poly(p))
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        if self.field.is_zero(c) {
            return match self.floor {
                None => Self::exact_zero(self.field.clone()),
                Some(f) => Self::zero_to_floor(self.field.clone(), f),
            };
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        LaurentSeries {
            field: self.field.clone(),
            hi: self.hi,
            coeffs,
            floor: self.floor,
        }
    }

    /// Multiply by T^k (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            field: self.field.clone(),
            hi: self.hi + k,
            coeffs: self.coeffs.clone(),
            floor: self.floor.map(|f| f + k),
        }
    }

    /// Forget everything below `floor`.
    pub fn truncate_floor(&self, floor: i64) -> Self {
        let lo = self.lo();
        let mut coeffs = self.coeffs.clone();
        if floor > lo {
            coeffs.truncate((self.hi - floor + 1).max(0) as usize);
        } else if floor < lo {
            // pad with known zeros (only legitimate for exact input)
            assert!(self.floor.is_none(), "cannot deepen a truncated series");
            let extra = (lo - floor) as usize;
            coeffs.extend(core::iter::repeat(self.field.zero()).take(extra));
        }
        if self.hi < floor - 1 {
            return Self::zero_to_floor(self.field.clone(), floor);
        }
        let mut s = LaurentSeries {
            field: self.field.clone(),
            hi: self.hi,
            coeffs,
            floor: Some(floor),
        };
        s.trim();
        s
    }

    /// Multiplicative inverse computed down to `target_floor` (or as deep as
    /// the input precision certifies, whichever is shallower).
    pub fn inv_truncated(&self, target_floor: i64) -> Result<Self, Error> {
        let h = match self.log_norm() {
            LogNorm::Finite(h) => h,
            LogNorm::NegInf => return Err(Error::DivisionByZero),
            LogNorm::Indeterminate { .. } => return Err(Error::Indeterminate),
        };
        let lc = self.coeff(h).expect("leading coefficient is stored");
        let lc_inv = self.field.inv(&lc)?;
        let floor = match self.floor {
            None => target_floor,
            Some(f) => target_floor.max(f - 2 * h),
        };
        let depth = (-h - floor).max(0) as usize; // number of coefficients after the lead
        let mut b: Vec<K::Elem> = Vec::with_capacity(depth + 1);
        b.push(lc_inv.clone());
        for k in 1..=depth {
            // coefficient of T^(-h-k)
            let mut acc = self.field.zero();
            for (j, bj) in b.iter().enumerate() {
                let a = self.coeff(h - (k as i64 - j as i64))?;
                if !self.field.is_zero(&a) {
                    acc = self.field.add(&acc, &self.field.mul(bj, &a));
                }
            }
            b.push(self.field.neg(&self.field.mul(&lc_inv, &acc)));
        }
        let mut s = LaurentSeries {
            field: self.field.clone(),
            hi: -h,
            coeffs: b,
            floor: Some(floor),
        };
        s.trim();
        Ok(s)
    }

    /// self / den, known down to `target_floor` when precision allows.
    pub fn div(&self, den: &Self, target_floor: i64) -> Result<Self, Error> {
        let inv = den.inv_truncated(target_floor - self.hi)?;
        Ok(self.mul(&inv))
    }

    /// Canonical representative (top zeros trimmed; exact zero normalized).
    pub fn canon(&self) -> Self {
        let mut s = self.clone();
        s.trim();
        s
    }

    /// Storage view: (hi, descending coefficients, floor).
    pub fn parts(&self) -> (i64, &[K::Elem], Option<i64>) {
        (self.hi, &self.coeffs, self.floor)
    }
}

impl<K: Field> PartialEq for LaurentSeries<K> {
    fn eq(&self, other: &Self) -> bool {
        let a = self.canon();
        let b = other.canon();
        a.field == b.field && a.floor == b.floor && a.hi == b.hi && a.coeffs == b.coeffs
    }
}

impl<K: Field> Eq for LaurentSeries<K> {}

impl<K: Field> fmt::Display for LaurentSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            let e = self.hi - i as i64;
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "{}", self.field.show(c))?;
            if e != 0 {
                write!(f, "*T^{e}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        if let Some(fl) = self.floor {
            write!(f, " + O(T^{})", fl - 1)?;
        }
        Ok(())
    }
}

/// Expansion of num/den as a Laurent series in 1/T down to `floor`.
pub fn expand_ratio<K: Field>(num: &Poly<K>, den: &Poly<K>, floor: i64) -> Result<LaurentSeries<K>, Error> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(LaurentSeries::exact_zero(num.field().clone()));
    }
    let n = LaurentSeries::from_poly(num);
    let d = LaurentSeries::from_poly(den);
    let out = n.div(&d, floor)?;
    Ok(out.truncate_floor(floor))
}

/// Pairing of a series vector with a polynomial vector.
pub fn dot<K: Field>(u: &[LaurentSeries<K>], x: &[Poly<K>]) -> LaurentSeries<K> {
    assert_eq!(u.len(), x.len(), "dimension mismatch");
    assert!(!u.is_empty());
    let mut acc = LaurentSeries::exact_zero(u[0].field().clone());
    for (s, p) in u.iter().zip(x.iter()) {
        acc = acc.add(&s.mul_poly(p));
    }
    acc
}

/// Max of entry norms, with indeterminate windows absorbed where certified.
pub fn log_norm_vec<K: Field>(v: &[LaurentSeries<K>]) -> LogNorm {
    v.iter().fold(LogNorm::NegInf, |acc, s| acc.max(s.log_norm()))
}

/// Truncated power series in ascending powers of T; coeffs.len() == prec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries<K: Field> {
    field: K,
    coeffs: Vec<K::Elem>,
}

impl<K: Field> PowerSeries<K> {
    pub fn new(field: K, coeffs: Vec<K::Elem>) -> Self {
        PowerSeries { field, coeffs }
    }

    pub fn zero(field: K, prec: usize) -> Self {
        let coeffs = vec![field.zero(); prec];
        PowerSeries { field, coeffs }
    }

    pub fn one(field: K, prec: usize) -> Self {
        let mut s = Self::zero(field, prec);
        if prec > 0 {
            s.coeffs[0] = s.field.one();
        }
        s
    }

    pub fn from_poly(p: &Poly<K>, prec: usize) -> Self {
        let mut coeffs = vec![p.field().zero(); prec];
        for (i, c) in p.coeffs().iter().enumerate() {
            if i >= prec {
                break;
            }
            coeffs[i] = c.clone();
        }
        PowerSeries { field: p.field().clone(), coeffs }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<K::Elem, Error> {
        self.coeffs.get(i).cloned().ok_or(Error::Indeterminate)
    }

    /// Order of vanishing at 0, `None` when zero through the precision.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let prec = self.prec().min(other.prec());
        let coeffs = (0..prec)
            .map(|i| self.field.add(&self.coeffs[i], &other.coeffs[i]))
            .collect();
        PowerSeries { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        PowerSeries { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let prec = self.prec().min(other.prec());
        let mut coeffs = vec![self.field.zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= prec {
                break;
            }
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= prec {
                    break;
                }
                coeffs[i + j] = self.field.add(&coeffs[i + j], &self.field.mul(a, b));
            }
        }
        PowerSeries { field: self.field.clone(), coeffs }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        PowerSeries { field: self.field.clone(), coeffs }
    }

    /// Multiply by T^k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        PowerSeries { field: self.field.clone(), coeffs }
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(prec);
        PowerSeries { field: self.field.clone(), coeffs }
    }

    /// View f(T) as f(1/T): a Laurent series with top exponent 0.
    pub fn swap_variable(&self) -> LaurentSeries<K> {
        let prec = self.prec() as i64;
        LaurentSeries::new(
            self.field.clone(),
            0,
            self.coeffs.clone(),
            Some(1 - prec),
        )
        .expect("storage covers window")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn log_norm_scan_and_indeterminate() {
        let s = LaurentSeries::new(q(), 2, vec![q().from_i64(0), q().from_i64(3), q().from_i64(0)], Some(0)).unwrap();
        assert_eq!(s.log_norm(), LogNorm::Finite(1));
        let z = LaurentSeries::zero_to_floor(q(), -4);
        assert_eq!(z.log_norm(), LogNorm::Indeterminate { upper: -5 });
        assert_eq!(LaurentSeries::exact_zero(q()).log_norm(), LogNorm::NegInf);
    }

    #[test]
    fn lognorm_max_absorbs_certified_windows() {
        let a = LogNorm::Finite(0);
        let b = LogNorm::Indeterminate { upper: -3 };
        assert_eq!(a.max(b), LogNorm::Finite(0));
        let c = LogNorm::Indeterminate { upper: 2 };
        assert_eq!(a.max(c), LogNorm::Indeterminate { upper: 2 });
        assert_eq!(LogNorm::NegInf.max(b), b);
    }

    #[test]
    fn mul_tracks_floors() {
        // (T + 1 + unknown below T^-2) * T^3
        let a = LaurentSeries::new(
            q(),
            1,
            vec![q().one(), q().one(), q().zero(), q().zero()],
            Some(-2),
        )
        .unwrap();
        let t3 = LaurentSeries::from_poly(&Poly::from_int_coeffs(q(), &[0, 0, 0, 1]));
        let p = a.mul(&t3);
        assert_eq!(p.hi(), 4);
        assert_eq!(p.floor(), Some(1));
        assert_eq!(p.coeff(4).unwrap(), q().one());
        assert!(p.coeff(0).is_err());
    }

    #[test]
    fn inversion_depth() {
        // x = T^2 known down to T^-1: relative precision 4
        let x = LaurentSeries::new(
            q(),
            2,
            vec![q().one(), q().zero(), q().zero(), q().one()],
            Some(-1),
        )
        .unwrap();
        let inv = x.inv_truncated(-100).unwrap();
        // 1/x certified down to floor - 2*hi = -1 - 4 = -5
        assert_eq!(inv.floor(), Some(-5));
        assert_eq!(inv.coeff(-2).unwrap(), q().one());
        assert_eq!(inv.coeff(-5).unwrap(), q().from_i64(-1));
        // check x * inv = 1 on the certified window
        let prod = x.mul(&inv);
        assert_eq!(prod.coeff(0).unwrap(), q().one());
        assert_eq!(prod.log_norm(), LogNorm::Finite(0));
    }

    #[test]
    fn ratio_expansion() {
        // 1/(T - 1) = T^-1 + T^-2 + ...
        let one = Poly::from_int_coeffs(q(), &[1]);
        let den = Poly::from_int_coeffs(q(), &[-1, 1]);
        let s = expand_ratio(&one, &den, -3).unwrap();
        assert_eq!(s.coeff(-1).unwrap(), q().one());
        assert_eq!(s.coeff(-3).unwrap(), q().one());
        assert_eq!(s.floor(), Some(-3));
    }

    #[test]
    fn power_series_over_fp() {
        let f5 = PrimeField::new(5).unwrap();
        let a = PowerSeries::from_poly(&Poly::from_int_coeffs(f5, &[1, 1]), 4);
        let b = a.mul(&a); // (1+T)^2
        assert_eq!(b.coeffs(), &[1, 2, 1, 0]);
        assert_eq!(b.ord(), Some(0));
        let z = PowerSeries::zero(f5, 3);
        assert_eq!(z.ord(), None);
    }

    #[test]
    fn swap_variable_window() {
        let f = PowerSeries::new(q(), vec![q().one(), q().from_i64(2), q().from_i64(3)]);
        let s = f.swap_variable();
        assert_eq!(s.coeff(0).unwrap(), q().one());
        assert_eq!(s.coeff(-2).unwrap(), q().from_i64(3));
        assert_eq!(s.floor(), Some(-2));
        assert!(s.coeff(-3).is_err());
    }
}
