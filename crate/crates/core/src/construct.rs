//! Inverse direction of the minima map: build a unit point whose minima
//! realize a prescribed profile, one basis exchange per switch.
//!
//! The working state is a polynomial basis of A^n together with a
//! distinguished row. Each switch replaces one row by `x_h + T^b x_k`,
//! lifting it to a prescribed norm while keeping the family orthogonal;
//! the stage point is then the unit vector annihilating every row except
//! the distinguished one. Stage points form a Cauchy sequence whose
//! pairwise distances are forced exactly, which is what the returned
//! certificate records.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::{log_norm_pvec, PolyMat};
use crate::minima::UnitPoint;
use crate::nsystem::{eval_switches, SwitchData};
use crate::poly::Poly;
use crate::series::{expand_ratio, LaurentSeries, LogNorm};
use crate::wedge::{hadamard_defect, Hadamard};

/// A vector of rational functions over a common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVec<K: Field> {
    pub nums: Vec<Poly<K>>,
    pub den: Poly<K>,
}

fn pdeg<K: Field>(p: &Poly<K>) -> Option<i64> {
    p.deg().map(|d| d as i64)
}

impl<K: Field> RationalVec<K> {
    pub fn unit_last(field: K, n: usize) -> Self {
        let mut nums: Vec<Poly<K>> = (0..n).map(|_| Poly::zero(field.clone())).collect();
        nums[n - 1] = Poly::one(field.clone());
        RationalVec { nums, den: Poly::one(field) }
    }

    /// max_j deg(num_j) - deg(den); None when the vector is zero.
    pub fn log_norm(&self) -> Option<i64> {
        let dd = pdeg(&self.den).expect("nonzero denominator");
        self.nums.iter().filter_map(pdeg).max().map(|d| d - dd)
    }

    /// log of the projective distance: the largest degree among the 2x2
    /// minors, relative to the denominators. Both vectors are expected to
    /// have norm one, which makes the normalization trivial. None means
    /// the two are proportional.
    pub fn dist_log(&self, other: &Self) -> Option<i64> {
        debug_assert_eq!(self.nums.len(), other.nums.len());
        let shift = pdeg(&self.den).expect("nonzero denominator")
            + pdeg(&other.den).expect("nonzero denominator");
        let mut best: Option<i64> = None;
        for i in 0..self.nums.len() {
            for j in (i + 1)..self.nums.len() {
                let minor = self.nums[i]
                    .mul(&other.nums[j])
                    .sub(&self.nums[j].mul(&other.nums[i]));
                if let Some(d) = pdeg(&minor) {
                    best = Some(best.map_or(d, |b: i64| b.max(d)));
                }
            }
        }
        best.map(|d| d - shift)
    }

    /// log norm of the coordinatewise difference; None when equal.
    pub fn sub_log_norm(&self, other: &Self) -> Option<i64> {
        debug_assert_eq!(self.nums.len(), other.nums.len());
        let shift = pdeg(&self.den).expect("nonzero denominator")
            + pdeg(&other.den).expect("nonzero denominator");
        let mut best: Option<i64> = None;
        for i in 0..self.nums.len() {
            let diff = self.nums[i].mul(&other.den).sub(&other.nums[i].mul(&self.den));
            if let Some(d) = pdeg(&diff) {
                best = Some(best.map_or(d, |b: i64| b.max(d)));
            }
        }
        best.map(|d| d - shift)
    }
}

/// The family (rows minus the skipped one, then the last standard vector),
/// in row order.
fn family_with_last_unit<K: Field>(
    field: K,
    rows: &[Vec<Poly<K>>],
    skip: usize,
) -> Vec<Vec<Poly<K>>> {
    let n = rows.len();
    let mut fam: Vec<Vec<Poly<K>>> = Vec::with_capacity(n);
    for (j, row) in rows.iter().enumerate() {
        if j + 1 != skip {
            fam.push(row.clone());
        }
    }
    let mut en: Vec<Poly<K>> = (0..n).map(|_| Poly::zero(field.clone())).collect();
    en[n - 1] = Poly::one(field);
    fam.push(en);
    fam
}

fn row_norm<K: Field>(row: &[Poly<K>]) -> Result<i64, Error> {
    log_norm_pvec(row).as_finite().ok_or(Error::Precondition("zero basis row"))
}

/// One exchange step. Rows h..l-1 of the basis shift down by one slot and
/// the freed slot l receives `x_h + T^b y_k`, with b chosen so the new row
/// has norm exactly `a`. Preconditions are re-checked on every call and
/// the postconditions (target norm, orthogonality of the family with row k
/// removed, preservation of the determinant's leading coefficient) are
/// verified before the new basis is returned.
pub fn basis_step<K: Field>(
    basis: &PolyMat<K>,
    h: usize,
    k: usize,
    l: usize,
    a: i64,
) -> Result<PolyMat<K>, Error> {
    let n = basis.rows();
    if basis.cols() != n || n < 2 {
        return Err(Error::Precondition("square basis of size >= 2 expected"));
    }
    if !(1 <= k && k < l && l <= n && 1 <= h && h <= l) {
        return Err(Error::Precondition("need 1 <= h <= l and 1 <= k < l <= n"));
    }
    let field = basis.at(0, 0).field().clone();
    let old = basis.row_vecs();
    if a <= row_norm(&old[h - 1])? {
        return Err(Error::Precondition("a-not-large-enough"));
    }
    for row in old.iter().take(l) {
        if a < row_norm(row)? {
            return Err(Error::Precondition("a-below-family-norm"));
        }
    }
    match hadamard_defect(&family_with_last_unit(field.clone(), &old, h))? {
        Hadamard::Defect(0) => {}
        _ => return Err(Error::Precondition("family-not-orthogonal")),
    }

    let mut rows: Vec<Vec<Poly<K>>> = Vec::with_capacity(n);
    for j in 1..=n {
        if j == l {
            rows.push(Vec::new());
        } else if j < h || j > l {
            rows.push(old[j - 1].clone());
        } else {
            rows.push(old[j].clone());
        }
    }
    let b = a - row_norm(&rows[k - 1])?;
    debug_assert!(b >= 0, "norm bound keeps the shift nonnegative");
    rows[l - 1] = old[h - 1]
        .iter()
        .zip(rows[k - 1].iter())
        .map(|(xh, yk)| xh.add(&yk.shift_up(b as usize)))
        .collect();

    if log_norm_pvec(&rows[l - 1]) != LogNorm::Finite(a) {
        return Err(Error::Verification("exchange row misses its target norm"));
    }
    match hadamard_defect(&family_with_last_unit(field.clone(), &rows, k))? {
        Hadamard::Defect(0) => {}
        _ => return Err(Error::Verification("exchanged family lost orthogonality")),
    }
    let det_new =
        PolyMat::from_rows(field.clone(), family_with_last_unit(field.clone(), &rows, k)).det();
    let det_old =
        PolyMat::from_rows(field.clone(), family_with_last_unit(field.clone(), &old, h)).det();
    // the exchange multiplies the determinant by a monic unit times the
    // permutation sign of moving the reused row across l - k - 1 others
    let lead_old = det_old.lc().ok_or(Error::Verification("degenerate old family"))?;
    let expected = if (l - k - 1) % 2 == 1 { field.neg(lead_old) } else { lead_old.clone() };
    if det_new.lc() != Some(&expected) {
        return Err(Error::Verification("exchange changed the determinant lead"));
    }
    Ok(PolyMat::from_rows(field, rows))
}

/// The state after consuming one switch: the working basis realizes the
/// profile row at q, and u is the unit vector annihilating every basis
/// row except the distinguished one (1-based index k).
#[derive(Clone, Debug)]
pub struct ConstructionStep<K: Field> {
    pub q: i64,
    pub k: usize,
    pub basis: PolyMat<K>,
    pub u: RationalVec<K>,
    /// log distance to the previous stage point; equals -q.
    pub dist_log: i64,
}

pub struct Constructed<K: Field> {
    /// The point, certified on coefficients [-prec, 0]. Exact (no floor)
    /// when the switch list was consumed and the last stage denominator is
    /// constant.
    pub point: UnitPoint<K>,
    /// Exact rational form, present when every switch was consumed.
    pub exact: Option<RationalVec<K>>,
    pub steps: Vec<ConstructionStep<K>>,
}

/// Build a point whose minima realize the evaluated switch data for all
/// q <= prec - 1. Switches beyond prec cannot influence coefficients above
/// the floor and are ignored; when the whole list is consumed the exact
/// rational form is returned alongside the truncation.
pub fn construct_point<K: Field>(
    field: K,
    sd: &SwitchData,
    prec: i64,
) -> Result<Constructed<K>, Error> {
    if prec < 1 {
        return Err(Error::Precondition("precision must be at least 1"));
    }
    let prof = eval_switches(sd, prec)?;
    let n = sd.n;
    let mut basis = PolyMat::identity(field.clone(), n);
    let mut k_prev = n;
    let mut u_prev = RationalVec::unit_last(field.clone(), n);
    let mut steps: Vec<ConstructionStep<K>> = Vec::new();
    let mut consumed_all = true;
    for rec in &sd.records[1..] {
        if rec.q > prec {
            consumed_all = false;
            break;
        }
        let a = prof.at(rec.q)[rec.l - 1];
        basis = basis_step(&basis, k_prev, rec.k, rec.l, a)?;
        let rows = basis.row_vecs();
        for (j, row) in rows.iter().enumerate() {
            assert_eq!(
                log_norm_pvec(row),
                LogNorm::Finite(prof.at(rec.q)[j]),
                "basis row norms must realize the profile at q = {}",
                rec.q
            );
        }
        let m = PolyMat::from_rows(
            field.clone(),
            family_with_last_unit(field.clone(), &rows, rec.k),
        );
        let det = m.det();
        // the determinant lead is a unit; scaling both sides by its inverse
        // leaves the point unchanged and makes the denominator monic
        let lead = det.lc().cloned().expect("nonsingular stage matrix");
        assert!(
            field.is_one(&lead) || field.is_one(&field.neg(&lead)),
            "stage determinant lead must be a sign"
        );
        let unscale = field.inv(&lead)?;
        let den = det.scale(&unscale);
        let nums: Vec<Poly<K>> =
            (0..n).map(|j| m.cofactor(n - 1, j).scale(&unscale)).collect();
        let u_cur = RationalVec { nums, den };
        assert_eq!(u_cur.log_norm(), Some(0), "stage point must have norm one");
        let d = u_cur.dist_log(&u_prev).expect("consecutive stage points differ");
        assert_eq!(d, -rec.q, "stage points must drift at rate exactly q");
        steps.push(ConstructionStep {
            q: rec.q,
            k: rec.k,
            basis: basis.clone(),
            u: u_cur.clone(),
            dist_log: d,
        });
        u_prev = u_cur;
        k_prev = rec.k;
    }

    // every earlier stage point sits at distance exactly e^{-q_{i+1}} from
    // the final one
    let last = steps
        .last()
        .map(|s| s.u.clone())
        .unwrap_or_else(|| RationalVec::unit_last(field.clone(), n));
    let mut prev = RationalVec::unit_last(field.clone(), n);
    for s in &steps {
        assert_eq!(
            prev.sub_log_norm(&last),
            Some(-s.q),
            "stage point must sit at distance e^-q of the final one"
        );
        prev = s.u.clone();
    }

    let exactly_polynomial = consumed_all && pdeg(&last.den) == Some(0);
    let lead = last.den.lc().cloned().unwrap_or_else(|| field.one());
    let coords: Vec<LaurentSeries<K>> = last
        .nums
        .iter()
        .map(|p| -> Result<LaurentSeries<K>, Error> {
            if exactly_polynomial {
                Ok(LaurentSeries::from_poly(&p.scale(&field.inv(&lead)?)))
            } else {
                Ok(expand_ratio(p, &last.den, -(prec + 1))?.truncate_floor(-prec))
            }
        })
        .collect::<Result<_, _>>()?;
    let point = UnitPoint::new(coords)?;
    Ok(Constructed { point, exact: consumed_all.then_some(last), steps })
}

fn reduce_poly(p: &Poly<Rationals>, fp: &PrimeField) -> Result<Poly<PrimeField>, Error> {
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        coeffs.push(fp.reduce_rational(c)?);
    }
    Ok(Poly::new(fp.clone(), coeffs))
}

fn reduce_series(
    s: &LaurentSeries<Rationals>,
    fp: &PrimeField,
) -> Result<LaurentSeries<PrimeField>, Error> {
    let (hi, coeffs, floor) = s.parts();
    let mut red = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        red.push(fp.reduce_rational(c)?);
    }
    LaurentSeries::new(fp.clone(), hi, red, floor)
}

/// Run the construction over the rationals and over F_p and check that the
/// rational run is integral and reduces to the F_p run stage by stage.
pub fn universality_reduce(sd: &SwitchData, p: u64, prec: i64) -> Result<(), Error> {
    let fp = PrimeField::new(p)?;
    let over_q = construct_point(Rationals, sd, prec)?;
    let over_p = construct_point(fp.clone(), sd, prec)?;
    if over_q.steps.len() != over_p.steps.len() {
        return Err(Error::Verification("stage counts differ across fields"));
    }
    for (sq, sp) in over_q.steps.iter().zip(&over_p.steps) {
        if sq.q != sp.q || sq.k != sp.k || sq.dist_log != sp.dist_log {
            return Err(Error::Verification("stage shape differs across fields"));
        }
        for row in sq.basis.row_vecs() {
            for c in row.iter().flat_map(|p| p.coeffs()) {
                if !c.is_integer() {
                    return Err(Error::Verification("rational basis is not integral"));
                }
            }
        }
        for (pq, pp) in sq.basis.row_vecs().iter().zip(sp.basis.row_vecs().iter()) {
            for (cq, cp) in pq.iter().zip(pp.iter()) {
                if &reduce_poly(cq, &fp)? != cp {
                    return Err(Error::Verification("basis does not reduce mod p"));
                }
            }
        }
        for (nq, np) in sq.u.nums.iter().zip(&sp.u.nums) {
            if &reduce_poly(nq, &fp)? != np {
                return Err(Error::Verification("stage point does not reduce mod p"));
            }
        }
        if reduce_poly(&sq.u.den, &fp)? != sp.u.den {
            return Err(Error::Verification("stage denominator does not reduce mod p"));
        }
    }
    for (cq, cp) in over_q.point.coords().iter().zip(over_p.point.coords()) {
        if &reduce_series(cq, &fp)? != cp {
            return Err(Error::Verification("final point does not reduce mod p"));
        }
    }
    Ok(())
}

/// Convergents of the continued fraction (0, a_1, a_2, ...): rows
/// (denominator, numerator) of y_i = a_i y_{i-1} + y_{i-2}, plus the n = 2
/// unit point (-xi, 1) at the requested precision.
pub fn cf_point<K: Field>(
    field: K,
    quotients: &[Poly<K>],
    prec: i64,
) -> Result<(UnitPoint<K>, Vec<[Poly<K>; 2]>), Error> {
    if prec < 1 {
        return Err(Error::Precondition("precision must be at least 1"));
    }
    for a in quotients {
        if a.deg().map(|d| d < 1).unwrap_or(true) {
            return Err(Error::Precondition("quotient degrees must be at least 1"));
        }
    }
    let mut den_prev = Poly::zero(field.clone());
    let mut num_prev = Poly::one(field.clone());
    let mut den = Poly::one(field.clone());
    let mut num = Poly::zero(field.clone());
    let mut convergents: Vec<[Poly<K>; 2]> = Vec::with_capacity(quotients.len());
    for a in quotients {
        let d = a.mul(&den).add(&den_prev);
        let m = a.mul(&num).add(&num_prev);
        den_prev = core::mem::replace(&mut den, d);
        num_prev = core::mem::replace(&mut num, m);
        convergents.push([den.clone(), num.clone()]);
    }
    let one = LaurentSeries::from_poly(&Poly::one(field.clone()));
    let coords = if quotients.is_empty() {
        vec![LaurentSeries::exact_zero(field), one]
    } else {
        let xi = expand_ratio(&num, &den, -(prec + 1))?;
        vec![xi.neg().truncate_floor(-prec), one]
    };
    Ok((UnitPoint::new(coords)?, convergents))
}

/// Read continued fraction quotients off a series with |xi| < 1. Exact
/// input runs the polynomial Euclidean algorithm; truncated input stops
/// early once the remainder is zero to the floor, and raises Indeterminate
/// when a quotient is only partially visible at the available precision.
pub fn cf_expand<K: Field>(xi: &LaurentSeries<K>, depth: usize) -> Result<Vec<Poly<K>>, Error> {
    if let LogNorm::Finite(v) = xi.log_norm() {
        if v >= 0 {
            return Err(Error::Precondition("need |xi| < 1"));
        }
    }
    let field = xi.field().clone();
    let mut out: Vec<Poly<K>> = Vec::new();
    if xi.is_exact() {
        // N(T) / T^m with m = -lo: quotients by exact division
        let (hi, coeffs, _) = xi.parts();
        if coeffs.is_empty() {
            return Ok(out);
        }
        let m = (coeffs.len() as i64 - 1 - hi) as usize;
        let mut r0 = Poly::monomial(field.clone(), field.one(), m);
        let mut asc: Vec<K::Elem> = coeffs.iter().rev().cloned().collect();
        asc.truncate(coeffs.len());
        let mut r1 = Poly::new(field.clone(), asc);
        while out.len() < depth && !r1.is_zero() {
            let (quot, rem) = r0.divrem(&r1)?;
            out.push(quot);
            r0 = core::mem::replace(&mut r1, rem);
        }
        return Ok(out);
    }
    let mut cur = xi.clone();
    while out.len() < depth {
        match cur.log_norm() {
            LogNorm::NegInf | LogNorm::Indeterminate { .. } => break,
            LogNorm::Finite(_) => {}
        }
        let inv = cur.inv_truncated(i64::MIN / 4)?;
        let (hi, _, floor) = inv.parts();
        if floor.map(|f| f > 0).unwrap_or(false) {
            return Err(Error::Indeterminate);
        }
        let mut asc: Vec<K::Elem> = Vec::with_capacity(hi.max(0) as usize + 1);
        for d in 0..=hi {
            asc.push(inv.coeff(d)?);
        }
        let a = Poly::new(field.clone(), asc);
        debug_assert!(a.deg().map(|d| d >= 1).unwrap_or(false));
        cur = inv.sub(&LaurentSeries::from_poly(&a));
        out.push(a);
    }
    Ok(out)
}
