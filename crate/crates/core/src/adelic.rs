//! Product-formula estimates for combinations a_1 e^{w_1 T} + ... + a_n e^{w_n T}.
//!
//! Everything runs in integer log scale: |f|_alpha = e^{-ord_alpha(f)} for
//! the finite places and |f|_inf = e^{deg f}, so all the inequalities below
//! become integer comparisons and no floating point ever appears.
//!
//! Expanding e^{w T} around a point alpha produces the prefactor e^{w alpha}.
//! These prefactors are carried symbolically, one symbol per exact exponent
//! value w * alpha, and a coefficient counts as zero only when the channels
//! sharing each exponent value sum to zero.  For the scalar fields available
//! here this test is sound and complete, not merely generic: t -> e^t takes
//! equal values only at equal rational arguments.  (Over the complex numbers
//! the analogous convention can overstate orders when exponents differ by a
//! period; such points are not representable here and stay out of scope.)

use alloc::vec::Vec;

use crate::error::Error;
use crate::field::Field;
use crate::linalg::PolyMat;
use crate::pade::series_exp;
use crate::poly::Poly;

fn require_setup<K: Field>(
    field: &K,
    a: &[Poly<K>],
    omegas: &[K::Elem],
    allow_zero: bool,
) -> Result<(), Error> {
    if field.characteristic() != 0 {
        return Err(Error::CharacteristicNotZero);
    }
    if a.is_empty() || a.len() != omegas.len() {
        return Err(Error::Precondition("polynomial and exponent tuples must match"));
    }
    if !allow_zero && a.iter().any(|p| p.is_zero()) {
        return Err(Error::Precondition("polynomials must be nonzero"));
    }
    if a.iter().all(|p| p.is_zero()) {
        return Err(Error::Precondition("some polynomial must be nonzero"));
    }
    for i in 0..omegas.len() {
        for j in i + 1..omegas.len() {
            if field.is_zero(&field.sub(&omegas[i], &omegas[j])) {
                return Err(Error::Precondition("exponents must be pairwise distinct"));
            }
        }
    }
    Ok(())
}

/// Coefficients of p(X + alpha), by repeated synthetic division.
fn taylor_shift<K: Field>(field: &K, p: &Poly<K>, alpha: &K::Elem) -> Vec<K::Elem> {
    let mut c = p.coeffs().to_vec();
    let n = c.len();
    if n < 2 {
        return c;
    }
    for i in 0..n - 1 {
        for j in (i..n - 1).rev() {
            let t = field.mul(alpha, &c[j + 1]);
            c[j] = field.add(&c[j], &t);
        }
    }
    c
}

/// ord_alpha(p), or None for the zero polynomial.
pub fn ord_at<K: Field>(field: &K, p: &Poly<K>, alpha: &K::Elem) -> Option<i64> {
    taylor_shift(field, p, alpha)
        .iter()
        .position(|x| !field.is_zero(x))
        .map(|m| m as i64)
}

/// The combination sum_i a_i(T) e^{w_i T} expanded in powers of (T - alpha).
///
/// Channel i carries the symbolic prefactor attached to the exponent value
/// w_i * alpha; channels with equal exponent values alias the same symbol
/// (in particular alpha = 0 merges them all into the constant 1).
pub struct ExpSeries<K: Field> {
    field: K,
    groups: Vec<Vec<usize>>,
    chans: Vec<Vec<K::Elem>>,
    prec: usize,
}

impl<K: Field> ExpSeries<K> {
    pub fn build(
        field: &K,
        a: &[Poly<K>],
        omegas: &[K::Elem],
        alpha: &K::Elem,
        prec: usize,
    ) -> Result<Self, Error> {
        if prec == 0 {
            return Err(Error::Precondition("need positive precision"));
        }
        let mut chans = Vec::with_capacity(a.len());
        for (p, w) in a.iter().zip(omegas) {
            let shifted = taylor_shift(field, p, alpha);
            let exps = series_exp(field.clone(), w, prec)?;
            let mut chan = Vec::with_capacity(prec);
            for c in 0..prec {
                let mut acc = field.zero();
                for (m, s) in shifted.iter().enumerate().take(c + 1) {
                    let t = field.mul(s, exps.coeffs().get(c - m).unwrap());
                    acc = field.add(&acc, &t);
                }
                chan.push(acc);
            }
            chans.push(chan);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<K::Elem> = Vec::new();
        for (i, w) in omegas.iter().enumerate() {
            let z = field.mul(w, alpha);
            match reps.iter().position(|r| field.is_zero(&field.sub(r, &z))) {
                Some(g) => groups[g].push(i),
                None => {
                    reps.push(z);
                    groups.push(alloc::vec![i]);
                }
            }
        }
        Ok(ExpSeries {
            field: field.clone(),
            groups,
            chans,
            prec,
        })
    }

    fn coeff_is_zero(&self, c: usize) -> bool {
        self.groups.iter().all(|g| {
            let mut acc = self.field.zero();
            for &i in g {
                acc = self.field.add(&acc, &self.chans[i][c]);
            }
            self.field.is_zero(&acc)
        })
    }

    /// Index of the first nonzero coefficient, or None when the whole
    /// window of `prec` coefficients vanishes.
    pub fn ord(&self) -> Option<i64> {
        (0..self.prec).find(|&c| !self.coeff_is_zero(c)).map(|c| c as i64)
    }
}

/// Exact local orders at one point: ord_alpha of each polynomial (None for
/// zero entries), ord_alpha of the combination with the exponentials, and
/// the log of the sup norm max_i |a_i|_alpha.
#[derive(Clone, Debug)]
pub struct LocalData<K: Field> {
    pub alpha: K::Elem,
    pub ord_a: Vec<Option<i64>>,
    pub ord_af: i64,
    pub norm_log: i64,
}

/// Working precision that certifies ord_alpha(a . f): the determinant
/// estimate bounds the order by the degree sum plus n(n-1)/2.
fn local_precision<K: Field>(a: &[Poly<K>]) -> usize {
    let dsum: usize = a.iter().filter_map(|p| p.deg()).sum();
    let n = a.len();
    dsum + n * (n - 1) / 2 + 2
}

pub fn local_data<K: Field>(
    field: &K,
    a: &[Poly<K>],
    omegas: &[K::Elem],
    alpha: &K::Elem,
) -> Result<LocalData<K>, Error> {
    require_setup(field, a, omegas, true)?;
    let prec = local_precision(a);
    let es = ExpSeries::build(field, a, omegas, alpha, prec)?;
    let ord_af = es.ord().ok_or(Error::PrecisionShort {
        needed: prec as i64 + 1,
        have: prec as i64,
    })?;
    let ord_a: Vec<Option<i64>> = a.iter().map(|p| ord_at(field, p, alpha)).collect();
    let min_ord = ord_a.iter().flatten().min().copied().expect("some entry is nonzero");
    Ok(LocalData {
        alpha: alpha.clone(),
        ord_a,
        ord_af,
        norm_log: -min_ord,
    })
}

/// Matrix with row k holding (w_i + d/dT)^k a_i, the coefficient tuples of
/// the k-th derivative of the combination.
pub fn wronskian_matrix<K: Field>(
    field: &K,
    a: &[Poly<K>],
    omegas: &[K::Elem],
) -> Result<PolyMat<K>, Error> {
    require_setup(field, a, omegas, false)?;
    let n = a.len();
    let mut rows = Vec::with_capacity(n);
    let mut cur: Vec<Poly<K>> = a.to_vec();
    for k in 0..n {
        if k > 0 {
            cur = cur
                .iter()
                .zip(omegas)
                .map(|(p, w)| p.scale(w).add(&p.derivative()))
                .collect();
        }
        rows.push(cur.clone());
    }
    Ok(PolyMat::from_rows(field.clone(), rows))
}

/// Determinant of the derivative matrix together with its verified shape:
/// the degree is the sum of the input degrees and the leading coefficient
/// factors as (product of leading coefficients) * Vandermonde(omegas).
#[derive(Clone, Debug)]
pub struct DeltaReport<K: Field> {
    pub delta: Poly<K>,
    pub deg: usize,
}

pub fn delta<K: Field>(
    field: &K,
    a: &[Poly<K>],
    omegas: &[K::Elem],
) -> Result<DeltaReport<K>, Error> {
    let w = wronskian_matrix(field, a, omegas)?;
    let delta = w.det();
    let dsum: usize = a.iter().map(|p| p.deg().expect("nonzero")).sum();
    if delta.deg() != Some(dsum) {
        return Err(Error::Verification("determinant degree is not the degree sum"));
    }
    let mut want = field.one();
    for p in a {
        want = field.mul(&want, p.lc().expect("nonzero"));
    }
    for i in 0..omegas.len() {
        for j in i + 1..omegas.len() {
            want = field.mul(&want, &field.sub(&omegas[j], &omegas[i]));
        }
    }
    if delta.lc() != Some(&want) {
        return Err(Error::Verification("determinant lead is not the Vandermonde product"));
    }
    Ok(DeltaReport { delta, deg: dsum })
}

/// Differentiating drops local orders by at most one per step: checks
/// ord_alpha((w_i + d/dT)^k a_i) >= ord_alpha(a_i) - k entrywise and
/// ord_alpha of the k-th derived combination >= ord_alpha(a . f) - k.
pub fn derivative_order_check<K: Field>(
    field: &K,
    a: &[Poly<K>],
    omegas: &[K::Elem],
    alpha: &K::Elem,
) -> Result<(), Error> {
    let ld = local_data(field, a, omegas, alpha)?;
    let w = wronskian_matrix(field, a, omegas)?;
    for k in 0..a.len() {
        let row = w.row(k);
        for (i, p) in row.iter().enumerate() {
            let base = ord_at(field, &a[i], alpha).expect("nonzero");
            if let Some(o) = ord_at(field, p, alpha) {
                if o < base - k as i64 {
                    return Err(Error::Verification("derivative entry dropped too many orders"));
                }
            }
        }
        if ld.ord_af > 0 {
            let es = ExpSeries::build(field, row, omegas, alpha, ld.ord_af as usize)?;
            if let Some(c) = es.ord() {
                if c < ld.ord_af - k as i64 {
                    return Err(Error::Verification("derived combination dropped too many orders"));
                }
            }
        }
    }
    Ok(())
}

/// The product inequality over a finite point set S, with every step of its
/// derivation re-checked on the concrete input: the determinant shape, the
/// per-point estimate ord(Delta) >= -n(n-1)/2 + ord(a . f) + (sum of the
/// ord_alpha(a_i) minus the smallest), and deg(Delta) >= sum of the local
/// orders of Delta over S.  The margin is the slack of the inequality in
/// log scale and is certified nonnegative.
#[derive(Clone, Debug)]
pub struct AdelicReport<K: Field> {
    pub margin: i64,
    pub local: Vec<LocalData<K>>,
    pub delta_deg: usize,
}

pub fn adelic_margin<K: Field>(
    field: &K,
    a: &[Poly<K>],
    omegas: &[K::Elem],
    points: &[K::Elem],
) -> Result<AdelicReport<K>, Error> {
    require_setup(field, a, omegas, false)?;
    if points.is_empty() {
        return Err(Error::Precondition("need at least one point"));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if field.is_zero(&field.sub(&points[i], &points[j])) {
                return Err(Error::Precondition("points must be pairwise distinct"));
            }
        }
    }
    let rep = delta(field, a, omegas)?;
    let n = a.len();
    let binom = (n * (n - 1) / 2) as i64;
    let mut margin: i64 = a.iter().map(|p| p.deg().expect("nonzero") as i64).sum();
    let mut ord_delta_sum = 0i64;
    let mut local = Vec::with_capacity(points.len());
    for al in points {
        let ld = local_data(field, a, omegas, al)?;
        let min_ord = -ld.norm_log;
        let sum_ord: i64 = ld.ord_a.iter().map(|o| o.expect("nonzero")).sum();
        let od = ord_at(field, &rep.delta, al).expect("delta is nonzero");
        if od < -binom + ld.ord_af + (sum_ord - min_ord) {
            return Err(Error::Verification("local determinant estimate failed"));
        }
        ord_delta_sum += od;
        margin += min_ord - sum_ord - ld.ord_af;
        local.push(ld);
    }
    if (rep.deg as i64) < ord_delta_sum {
        return Err(Error::Verification("local orders exceed the determinant degree"));
    }
    margin += points.len() as i64 * binom;
    if margin < 0 {
        return Err(Error::Verification("product inequality violated"));
    }
    Ok(AdelicReport {
        margin,
        local,
        delta_deg: rep.deg,
    })
}

/// Margins of the two corollaries phrased for u = (e^{w_1/T}, ..., e^{w_n/T}):
/// the substituted instance x_i = T^d a_i(1/T) at the single point 0, the
/// product |a . u| |a_2| ... |a_n| against e^{-n(n-1)/2}, and the pairwise
/// product |a_1| prod |a_1 u_i - a_i u_1| against its (n-1)-th power.
#[derive(Clone, Debug)]
pub struct CorollaryReport {
    pub substitution_margin: i64,
    /// log |a . u| at the infinite place
    pub combination_norm: i64,
    pub product_margin: i64,
    /// log |a_1 u_i - a_i u_1| for i = 2..n
    pub pair_norms: Vec<i64>,
    pub pair_margin: i64,
}

pub fn corollary_checks<K: Field>(
    field: &K,
    a: &[Poly<K>],
    omegas: &[K::Elem],
) -> Result<CorollaryReport, Error> {
    require_setup(field, a, omegas, false)?;
    let n = a.len();
    let binom = (n * (n - 1) / 2) as i64;
    let zero = field.zero();
    let d = a.iter().filter_map(|p| p.deg()).max().expect("nonzero");
    let x: Vec<Poly<K>> = a
        .iter()
        .map(|p| p.reverse_at(d))
        .collect::<Result<_, _>>()?;
    for (p, xp) in a.iter().zip(&x) {
        let pd = p.deg().unwrap() as i64;
        let p0 = ord_at(field, p, &zero).unwrap();
        if xp.deg().map(|e| e as i64) != Some(d as i64 - p0)
            || ord_at(field, xp, &zero) != Some(d as i64 - pd)
        {
            return Err(Error::Verification("variable swap broke the degree bookkeeping"));
        }
    }
    let sub = adelic_margin(field, &x, omegas, core::slice::from_ref(&zero))?;
    let combination_norm = d as i64 - sub.local[0].ord_af;
    let tail_degs: i64 = a[1..].iter().map(|p| p.deg().unwrap() as i64).sum();
    let product_margin = combination_norm + tail_degs + binom;
    if product_margin < 0 {
        return Err(Error::Verification("first corollary display violated"));
    }
    let mut pair_norms = Vec::with_capacity(n - 1);
    for i in 1..n {
        let pair = [a[0].clone(), a[i].neg()];
        let pw = [omegas[i].clone(), omegas[0].clone()];
        let dp = a[0].deg().unwrap().max(a[i].deg().unwrap());
        let px: Vec<Poly<K>> = pair
            .iter()
            .map(|p| p.reverse_at(dp))
            .collect::<Result<_, _>>()?;
        let ld = local_data(field, &px, &pw, &zero)?;
        pair_norms.push(dp as i64 - ld.ord_af);
    }
    let pair_margin =
        a[0].deg().unwrap() as i64 + pair_norms.iter().sum::<i64>() + (n as i64 - 1) * binom;
    if pair_margin < 0 {
        return Err(Error::Verification("second corollary display violated"));
    }
    Ok(CorollaryReport {
        substitution_margin: sub.margin,
        combination_norm,
        product_margin,
        pair_norms,
        pair_margin,
    })
}
