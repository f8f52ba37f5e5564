//! Simultaneous rational approximation of a tuple of power series.
//!
//! A system f = (f_1, ..., f_n) over a field K and an index tuple
//! rho = (rho_1, ..., rho_n) pose sigma - 1 linear conditions (with
//! sigma = rho_1 + ... + rho_n) on polynomial tuples a = (a_1, ..., a_n)
//! with deg a_i < rho_i: the combination a_1 f_1 + ... + a_n f_n must
//! vanish to order sigma - 1 at the origin.  The tuple rho is *normal*
//! when every nonzero solution vanishes to order exactly sigma - 1, and
//! the system is *perfect* when every tuple is normal.
//!
//! Systems that are normal along the diagonal produce points
//! u = (f_1(1/T), ..., f_n(1/T)) whose minima follow the extremal
//! staircase, and the solutions along the staircase index sequence
//! turn into integer vectors realizing every minimum.  Both statements
//! are checked exactly here, not assumed.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::{Field, Rationals};
use crate::linalg::{FMat, PolyMat};
use crate::minima::{minima_profile, trajectory, UnitPoint};
use crate::nsystem::{extremal, Profile};
use crate::poly::Poly;
use crate::series::PowerSeries;

use num_rational::BigRational;

/// exp(omega T) truncated to `prec` coefficients.  Needs characteristic 0.
pub fn series_exp<K: Field>(field: K, omega: &K::Elem, prec: usize) -> Result<PowerSeries<K>, Error> {
    if field.characteristic() != 0 {
        return Err(Error::CharacteristicNotZero);
    }
    let mut coeffs = Vec::with_capacity(prec);
    let mut cur = field.one();
    for j in 0..prec {
        if j > 0 {
            cur = field.mul(&cur, omega);
            cur = field.div(&cur, &field.from_i64(j as i64))?;
        }
        coeffs.push(cur.clone());
    }
    Ok(PowerSeries::new(field, coeffs))
}

/// (1 + T)^omega truncated to `prec` coefficients.  Needs characteristic 0.
pub fn series_binomial<K: Field>(field: K, omega: &K::Elem, prec: usize) -> Result<PowerSeries<K>, Error> {
    if field.characteristic() != 0 {
        return Err(Error::CharacteristicNotZero);
    }
    let mut coeffs = Vec::with_capacity(prec);
    let mut cur = field.one();
    for j in 0..prec {
        if j > 0 {
            let factor = field.sub(omega, &field.from_i64(j as i64 - 1));
            cur = field.div(&field.mul(&cur, &factor), &field.from_i64(j as i64))?;
        }
        coeffs.push(cur.clone());
    }
    Ok(PowerSeries::new(field, coeffs))
}

/// log(1 - T) = -(T + T^2/2 + ...) truncated to `prec` coefficients.
pub fn series_log1m<K: Field>(field: K, prec: usize) -> Result<PowerSeries<K>, Error> {
    if field.characteristic() != 0 {
        return Err(Error::CharacteristicNotZero);
    }
    let mut coeffs = vec![field.zero()];
    for j in 1..prec as i64 {
        coeffs.push(field.neg(&field.div(&field.one(), &field.from_i64(j))?));
    }
    coeffs.truncate(prec);
    Ok(PowerSeries::new(field, coeffs))
}

/// A tuple of power series sharing a working precision.
#[derive(Clone, Debug)]
pub struct SeriesSystem<K: Field> {
    f: Vec<PowerSeries<K>>,
}

impl<K: Field> SeriesSystem<K> {
    pub fn new(f: Vec<PowerSeries<K>>) -> Result<Self, Error> {
        if f.len() < 2 {
            return Err(Error::Precondition("system needs at least two series"));
        }
        Ok(SeriesSystem { f })
    }

    /// (exp(omega_1 T), ..., exp(omega_n T)); the omegas must be pairwise
    /// distinct or the tuple (0, ..., 0, 1) already fails to be normal.
    pub fn exp(field: K, omegas: &[K::Elem], prec: usize) -> Result<Self, Error> {
        for i in 0..omegas.len() {
            for j in i + 1..omegas.len() {
                if field.is_zero(&field.sub(&omegas[i], &omegas[j])) {
                    return Err(Error::Precondition("exponents must be pairwise distinct"));
                }
            }
        }
        let f = omegas
            .iter()
            .map(|w| series_exp(field.clone(), w, prec))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(f)
    }

    /// ((log(1-T))^{n-1}, ..., log(1-T), 1).
    pub fn log_powers(field: K, n: usize, prec: usize) -> Result<Self, Error> {
        let l = series_log1m(field.clone(), prec)?;
        let mut f = Vec::with_capacity(n);
        let mut pw = PowerSeries::one(field.clone(), prec);
        for _ in 0..n {
            f.push(pw.clone());
            pw = pw.mul(&l);
        }
        f.reverse();
        Self::new(f)
    }

    pub fn f(&self) -> &[PowerSeries<K>] {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn field(&self) -> &K {
        self.f[0].field()
    }

    pub fn prec(&self) -> usize {
        self.f.iter().map(|s| s.prec()).min().unwrap()
    }

    /// The point (f_1(1/T), ..., f_n(1/T)).  Fails unless the sup norm of
    /// the tuple is exactly 1, i.e. some f_i has a unit constant term and
    /// none has a pole.
    pub fn point(&self) -> Result<UnitPoint<K>, Error> {
        UnitPoint::new(self.f.iter().map(|s| s.swap_variable()).collect())
    }
}

impl SeriesSystem<Rationals> {
    /// ((1+T)^{omega_1}, ..., (1+T)^{omega_n}); the omegas must be pairwise
    /// incongruent modulo the integers.
    pub fn binomial(omegas: &[BigRational], prec: usize) -> Result<Self, Error> {
        let q = Rationals;
        for i in 0..omegas.len() {
            for j in i + 1..omegas.len() {
                if (&omegas[i] - &omegas[j]).is_integer() {
                    return Err(Error::Precondition(
                        "binomial exponents must be incongruent mod the integers",
                    ));
                }
            }
        }
        let f = omegas
            .iter()
            .map(|w| series_binomial(q.clone(), w, prec))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(f)
    }
}

pub fn sigma(rho: &[usize]) -> usize {
    rho.iter().sum()
}

/// The canonical solution of the approximation conditions for one index
/// tuple, together with the solution space dimension and the certified
/// vanishing order of a_1 f_1 + ... + a_n f_n.
#[derive(Clone, Debug)]
pub struct PadeSolution<K: Field> {
    pub rho: Vec<usize>,
    /// first basis vector of the solution space, leading unknown scaled to 1
    pub a: Vec<Poly<K>>,
    /// dimension of the solution space (always >= 1)
    pub nullity: usize,
    /// ord_0 of the combination, or None when it vanishes through the
    /// whole working precision
    pub ord: Option<i64>,
    /// second basis vector when the solution space has dimension >= 2
    pub second: Option<Vec<Poly<K>>>,
}

fn unpack_solution<K: Field>(field: &K, rho: &[usize], v: &[K::Elem]) -> Vec<Poly<K>> {
    let mut out = Vec::with_capacity(rho.len());
    let mut off = 0;
    for &ri in rho {
        out.push(Poly::new(field.clone(), v[off..off + ri].to_vec()));
        off += ri;
    }
    out
}

fn combination<K: Field>(sys: &SeriesSystem<K>, a: &[Poly<K>]) -> PowerSeries<K> {
    let prec = sys.prec();
    let mut acc = PowerSeries::zero(sys.field().clone(), prec);
    for (p, f) in a.iter().zip(&sys.f) {
        acc = acc.add(&f.mul(&PowerSeries::from_poly(p, prec)));
    }
    acc
}

/// Solve the order-(sigma - 1) conditions for `rho`.  The working precision
/// must reach two coefficients past sigma - 1 so the achieved order is
/// certified rather than an artifact of truncation.
pub fn pade_solve<K: Field>(sys: &SeriesSystem<K>, rho: &[usize]) -> Result<PadeSolution<K>, Error> {
    if rho.len() != sys.n() {
        return Err(Error::Precondition("index tuple length must match the system"));
    }
    let sig = sigma(rho);
    if sig == 0 {
        return Err(Error::Precondition("index tuple must have a positive entry"));
    }
    let prec = sys.prec();
    if prec < sig + 2 {
        return Err(Error::PrecisionShort {
            needed: (sig + 2) as i64,
            have: prec as i64,
        });
    }
    let field = sys.field().clone();
    // Unknowns: the coefficients of a_i in degrees 0..rho_i, blocked by i.
    // Condition c demands that the combination has zero coefficient at T^c.
    let mut mat = FMat::zero(field.clone(), sig - 1, sig);
    for c in 0..sig - 1 {
        let mut col = 0;
        for (i, &ri) in rho.iter().enumerate() {
            for d in 0..ri {
                if d <= c {
                    mat.set(c, col, sys.f[i].coeff(c - d)?);
                }
                col += 1;
            }
        }
    }
    let null = mat.nullspace();
    let nullity = null.len();
    debug_assert!(nullity >= 1, "sigma - 1 conditions on sigma unknowns");
    let a = unpack_solution(&field, rho, &null[0]);
    let second = if nullity >= 2 {
        Some(unpack_solution(&field, rho, &null[1]))
    } else {
        None
    };
    let ord = combination(sys, &a).ord().map(|o| o as i64);
    if let Some(o) = ord {
        debug_assert!(o >= sig as i64 - 1);
    }
    Ok(PadeSolution {
        rho: rho.to_vec(),
        a,
        nullity,
        ord,
        second,
    })
}

/// Outcome of a normality check.  The witness of a failure is a concrete
/// nonzero solution whose combination vanishes beyond order sigma - 1.
#[derive(Clone, Debug)]
pub enum Normality<K: Field> {
    Normal,
    NotNormal { witness: Vec<Poly<K>> },
}

impl<K: Field> Normality<K> {
    pub fn is_normal(&self) -> bool {
        matches!(self, Normality::Normal)
    }
}

pub fn check_normal<K: Field>(sys: &SeriesSystem<K>, rho: &[usize]) -> Result<Normality<K>, Error> {
    let sol = pade_solve(sys, rho)?;
    let sig = sigma(rho) as i64;
    if sol.nullity == 1 {
        return Ok(if sol.ord == Some(sig - 1) {
            Normality::Normal
        } else {
            Normality::NotNormal { witness: sol.a }
        });
    }
    // Two independent solutions: combine them into one vanishing past
    // sigma - 1, which is the honest counterexample.
    let b = sol.second.expect("nullity >= 2 comes with a second vector");
    let field = sys.field().clone();
    let idx = sig as usize - 1;
    let ca = combination(sys, &sol.a).coeff(idx)?;
    let cb = combination(sys, &b).coeff(idx)?;
    let witness = if field.is_zero(&cb) {
        b
    } else if field.is_zero(&ca) {
        sol.a
    } else {
        let t = field.div(&ca, &cb)?;
        sol.a
            .iter()
            .zip(&b)
            .map(|(p, q)| p.sub(&q.scale(&t)))
            .collect()
    };
    debug_assert!(witness.iter().any(|p| !p.is_zero()));
    Ok(Normality::NotNormal { witness })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// every tuple with 1 <= sigma <= bound
    All,
    /// (m, ..., m) with n m <= bound
    Diagonal,
    /// weakly increasing tuples only
    Sorted,
}

/// The index tuples a scan visits, in a fixed deterministic order.
pub fn scan_tuples(n: usize, bound: usize, mode: ScanMode) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if mode == ScanMode::Diagonal {
        let mut m = 1;
        while n * m <= bound {
            out.push(vec![m; n]);
            m += 1;
        }
        return out;
    }
    let mut rho = vec![0usize; n];
    loop {
        let sig = sigma(&rho);
        let sorted_ok = mode != ScanMode::Sorted || rho.windows(2).all(|w| w[0] <= w[1]);
        if sig >= 1 && sig <= bound && sorted_ok {
            out.push(rho.clone());
        }
        // odometer over tuples with every entry <= bound
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if rho[i] < bound {
                rho[i] += 1;
                for r in rho.iter_mut().take(i) {
                    *r = 0;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Enumerate index tuples up to the sigma bound and report the ones that
/// fail to be normal.  An empty report certifies perfectness through the
/// bound; modes restrict the enumeration for systems that are symmetric
/// or only interesting along sorted tuples.
pub fn perfect_scan<K: Field>(
    sys: &SeriesSystem<K>,
    bound: usize,
    mode: ScanMode,
) -> Result<Vec<Vec<usize>>, Error> {
    if bound == 0 {
        return Err(Error::Precondition("scan bound must be positive"));
    }
    if sys.prec() < bound + 2 {
        return Err(Error::PrecisionShort {
            needed: (bound + 2) as i64,
            have: sys.prec() as i64,
        });
    }
    let mut bad = Vec::new();
    for rho in scan_tuples(sys.n(), bound, mode) {
        if !check_normal(sys, &rho)?.is_normal() {
            bad.push(rho);
        }
    }
    Ok(bad)
}

/// Check that a system normal along the diagonal produces a point whose
/// minima follow the extremal staircase: verifies the diagonal normality
/// hypothesis within reach of the horizon, builds u = (f_i(1/T)), asserts
/// unit norm, and compares the full minima map against extremal(n, q_max).
/// Also checks the two bounds that drive the proof: the first minimum
/// stays above floor(q/n) and the spread L_n - L_1 never exceeds 1.
pub fn extremal_profile_check<K: Field>(sys: &SeriesSystem<K>, q_max: i64) -> Result<Profile, Error> {
    let n = sys.n();
    if q_max < 0 {
        return Err(Error::Precondition("horizon must be nonnegative"));
    }
    let mut m = 1;
    while (n * m) as i64 <= q_max {
        if !check_normal(sys, &vec![m; n])?.is_normal() {
            return Err(Error::Verification("system is not normal on the diagonal"));
        }
        m += 1;
    }
    let u = sys.point()?;
    let prof = minima_profile(&u, q_max)?;
    for q in 0..=q_max {
        let row = prof.at(q);
        if row[0] < q.div_euclid(n as i64) {
            return Err(Error::Verification("first minimum fell below floor(q/n)"));
        }
        if row[n - 1] - row[0] > 1 {
            return Err(Error::Verification("minima spread beyond a unit band"));
        }
    }
    if prof != extremal(n, q_max) {
        return Err(Error::Verification("minima do not follow the staircase"));
    }
    Ok(prof)
}

/// The integer vector realizing the i-th step of the staircase, reversed
/// out of the canonical solution at the staircase index tuple.
#[derive(Clone, Debug)]
pub struct Realizer<K: Field> {
    pub i: usize,
    pub rho: Vec<usize>,
    pub a: Vec<Poly<K>>,
    /// y = T^{rho_n - 1} (a_1(1/T), ..., a_n(1/T))
    pub y: Vec<Poly<K>>,
    /// log ||y|| = ceil(i/n) - 1
    pub level: i64,
    /// log |y . u| = ceil(i/n) - i
    pub pair_log: i64,
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1).div_euclid(b)
}

/// Staircase index tuple: rho_{i,j} = ceil((i + j - n) / n), weakly
/// increasing with sigma = i and top entry ceil(i/n).
pub fn staircase_tuple(n: usize, i: usize) -> Vec<usize> {
    (1..=n)
        .map(|j| ceil_div(i as i64 + j as i64 - n as i64, n as i64).max(0) as usize)
        .collect()
}

/// Solve along the staircase tuples for i = 1..=i_max, requiring normality
/// at each, and verify exactly the geometry the solutions are supposed to
/// carry: the norm of y_i, the pairing |y_i . u|, the degree i - 1 of each
/// n-window determinant det(a_i, ..., a_{i+n-1}), and that each window's
/// trajectories sorted at q = i - 1 and q = i reproduce the minima of u.
pub fn realizer_sequence<K: Field>(
    sys: &SeriesSystem<K>,
    i_max: usize,
) -> Result<Vec<Realizer<K>>, Error> {
    let n = sys.n();
    if i_max == 0 {
        return Err(Error::Precondition("need i_max >= 1"));
    }
    if sys.prec() < i_max + 2 {
        return Err(Error::PrecisionShort {
            needed: (i_max + 2) as i64,
            have: sys.prec() as i64,
        });
    }
    let field = sys.field().clone();
    let u = sys.point()?;
    let mut out: Vec<Realizer<K>> = Vec::with_capacity(i_max);
    for i in 1..=i_max {
        let rho = staircase_tuple(n, i);
        debug_assert_eq!(sigma(&rho), i);
        if !check_normal(sys, &rho)?.is_normal() {
            return Err(Error::Verification("system is not normal at a staircase tuple"));
        }
        let sol = pade_solve(sys, &rho)?;
        let top = *rho.last().unwrap();
        debug_assert_eq!(top as i64, ceil_div(i as i64, n as i64));
        let y = sol
            .a
            .iter()
            .map(|p| p.reverse_at(top - 1))
            .collect::<Result<Vec<_>, _>>()?;
        let tr = trajectory(&y, &u)?;
        let want_level = top as i64 - 1;
        let want_pair = top as i64 - i as i64;
        if tr.level != want_level {
            return Err(Error::Verification("realizer norm misses ceil(i/n) - 1"));
        }
        if tr.pair_log != Some(want_pair) {
            return Err(Error::Verification("realizer pairing misses ceil(i/n) - i"));
        }
        out.push(Realizer {
            i,
            rho,
            a: sol.a,
            y,
            level: tr.level,
            pair_log: want_pair,
        });
    }
    if i_max >= n {
        let prof = minima_profile(&u, i_max as i64 - 1)?;
        for i in 1..=i_max - n + 1 {
            let window: Vec<Vec<Poly<K>>> = (0..n).map(|w| out[i - 1 + w].a.clone()).collect();
            let det = PolyMat::from_rows(field.clone(), window).det();
            if det.deg() != Some(i - 1) {
                return Err(Error::Verification("window determinant degree is not i - 1"));
            }
            for q in [i as i64 - 1, i as i64] {
                if q > i_max as i64 - 1 {
                    continue;
                }
                let mut vals: Vec<i64> = (0..n)
                    .map(|w| {
                        let r = &out[i - 1 + w];
                        r.level.max(q + r.pair_log)
                    })
                    .collect();
                vals.sort_unstable();
                if vals != prof.at(q) {
                    return Err(Error::Verification("window trajectories miss the minima"));
                }
            }
        }
    }
    Ok(out)
}
