//! Successive minima of the parametric convex bodies attached to a unit
//! vector u: the map q -> (L_{u,1}(q), ..., L_{u,n}(q)) on the integer grid,
//! realizing bases, and the dual, compound and tilde variants.
//!
//! Two independent algorithms are provided. The authoritative one solves, for
//! each (q, t), an exact linear system over the coefficient field and counts
//! the dimension of the rational span of its solutions. The accelerator
//! maintains a unimodular basis of A^n reduced against the gauge
//! max(||x||, e^q |u.x|) and reads the minima off the reduced rows; it also
//! yields certificates. The two must agree everywhere.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::Field;
use crate::linalg::{log_norm_pvec, FMat, PolyMat};
use crate::nsystem::Profile;
use crate::poly::Poly;
use crate::series::{dot, log_norm_vec, LaurentSeries, LogNorm};
use crate::wedge::index_sets;

/// A vector of norm exactly 1 with a certified precision horizon.
#[derive(Clone, Debug)]
pub struct UnitPoint<K: Field> {
    u: Vec<LaurentSeries<K>>,
    /// None: all entries exact. Some(N): coefficients certified on [-N, 0];
    /// profiles may be requested for q <= N - 1 only.
    prec: Option<i64>,
}

impl<K: Field> UnitPoint<K> {
    pub fn new(u: Vec<LaurentSeries<K>>) -> Result<Self, Error> {
        if u.len() < 2 {
            return Err(Error::Precondition("need at least 2 coordinates"));
        }
        match log_norm_vec(&u) {
            LogNorm::Finite(0) => {}
            LogNorm::Finite(_) | LogNorm::NegInf => {
                return Err(Error::Precondition("norm must be exactly 1"))
            }
            LogNorm::Indeterminate { .. } => return Err(Error::Indeterminate),
        }
        let mut prec: Option<i64> = None;
        for s in &u {
            if let Some(f) = s.floor() {
                let have = -f;
                prec = Some(match prec {
                    None => have,
                    Some(p) => p.min(have),
                });
            }
        }
        Ok(UnitPoint { u, prec })
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn field(&self) -> &K {
        self.u[0].field()
    }

    pub fn coords(&self) -> &[LaurentSeries<K>] {
        &self.u
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn require_horizon(&self, q: i64) -> Result<(), Error> {
        if q < 0 {
            return Err(Error::Precondition("horizon must be >= 0"));
        }
        match self.prec {
            Some(n) if q > n - 1 => Err(Error::PrecisionShort { needed: q + 1, have: n }),
            _ => Ok(()),
        }
    }
}

/// Piecewise description of q -> L_x(q) = max(log||x||, q + log|u.x|):
/// slope 0 at height `level`, then slope 1 from the breakpoint on.
#[derive(Clone, Debug)]
pub struct Trajectory<K: Field> {
    pub x: Vec<Poly<K>>,
    pub level: i64,
    /// log|u.x|, or None when u.x = 0 (the trajectory stays flat).
    pub pair_log: Option<i64>,
}

impl<K: Field> Trajectory<K> {
    pub fn breakpoint(&self) -> Option<i64> {
        self.pair_log.map(|p| self.level - p)
    }

    pub fn eval(&self, q: i64) -> i64 {
        match self.pair_log {
            None => self.level,
            Some(p) => self.level.max(q + p),
        }
    }
}

pub fn trajectory<K: Field>(x: &[Poly<K>], u: &UnitPoint<K>) -> Result<Trajectory<K>, Error> {
    assert_eq!(x.len(), u.n());
    let level = match log_norm_pvec(x) {
        LogNorm::Finite(d) => d,
        LogNorm::NegInf => return Err(Error::Precondition("zero vector")),
        LogNorm::Indeterminate { .. } => return Err(Error::Indeterminate),
    };
    let pair_log = match dot(&u.u, x).log_norm() {
        LogNorm::Finite(p) => Some(p),
        LogNorm::NegInf => None,
        LogNorm::Indeterminate { .. } => return Err(Error::Indeterminate),
    };
    Ok(Trajectory { x: x.to_vec(), level, pair_log })
}

/// Dimension over the rational function field of the span of the solution
/// set of `rows` (each row a linear constraint on the coefficients of a
/// vector of `ncomp` polynomials of degree <= deg_bound).
fn solution_span_rank<K: Field>(
    field: &K,
    ncomp: usize,
    deg_bound: i64,
    rows: Vec<Vec<K::Elem>>,
) -> usize {
    if deg_bound < 0 {
        return 0;
    }
    let per = (deg_bound + 1) as usize;
    if rows.is_empty() {
        return ncomp;
    }
    let mat = FMat::from_rows(field.clone(), rows);
    let null = mat.nullspace();
    if null.is_empty() {
        return 0;
    }
    let pols: Vec<Vec<Poly<K>>> = null
        .iter()
        .map(|sol| {
            (0..ncomp)
                .map(|i| Poly::new(field.clone(), sol[i * per..(i + 1) * per].to_vec()))
                .collect()
        })
        .collect();
    PolyMat::from_rows(field.clone(), pols).rank_k()
}

/// Constraint rows forcing the coefficients of T^t, ..., T^{t-q+1} of u.x to
/// vanish, over unknown coefficient vectors of x with deg x_i <= t.
fn minima_rows<K: Field>(u: &UnitPoint<K>, q: i64, t: i64) -> Result<Vec<Vec<K::Elem>>, Error> {
    let n = u.n();
    let field = u.field();
    let per = (t + 1) as usize;
    let mut rows = Vec::with_capacity(q as usize);
    for c in ((t - q + 1)..=t).rev() {
        let mut row = vec![field.zero(); n * per];
        for i in 0..n {
            for d in 0..=t {
                row[i * per + d as usize] = u.u[i].coeff(c - d)?;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn minima_rank_at<K: Field>(u: &UnitPoint<K>, q: i64, t: i64) -> Result<usize, Error> {
    if t < 0 {
        return Ok(0);
    }
    let rows = minima_rows(u, q, t)?;
    Ok(solution_span_rank(u.field(), u.n(), t, rows))
}

/// The successive-minima profile on [0, q_max] by the per-(q, t) linear
/// system method. Exact; errors only on an insufficient precision horizon.
pub fn minima_profile<K: Field>(u: &UnitPoint<K>, q_max: i64) -> Result<Profile, Error> {
    u.require_horizon(q_max)?;
    let n = u.n();
    let mut values: Vec<Vec<i64>> = Vec::with_capacity(q_max as usize + 1);
    let mut prev = vec![0i64; n];
    for q in 0..=q_max {
        let row = minima_row_from(u, q, &prev)?;
        prev.clone_from(&row);
        values.push(row);
    }
    Ok(Profile { n, values })
}

/// One profile row in isolation; the scan starts from zero lower bounds
/// instead of the previous row, so rows for different q are independent.
pub fn minima_row<K: Field>(u: &UnitPoint<K>, q: i64) -> Result<Vec<i64>, Error> {
    u.require_horizon(q)?;
    minima_row_from(u, q, &vec![0i64; u.n()])
}

fn minima_row_from<K: Field>(u: &UnitPoint<K>, q: i64, lower: &[i64]) -> Result<Vec<i64>, Error> {
    let n = u.n();
    let mut row = vec![0i64; n];
    let mut filled = 0usize;
    let mut t = lower[0];
    while filled < n {
        t = t.max(lower[filled]);
        let rank = minima_rank_at(u, q, t)?;
        if rank > filled {
            for j in filled..rank.min(n) {
                row[j] = t;
            }
            filled = rank.min(n);
        } else {
            t += 1;
            assert!(t <= q, "minima scan overran its horizon");
        }
    }
    Ok(row)
}

/// Basis certificate at a single q: rows of a unimodular matrix whose
/// trajectories realize the claimed minima.
#[derive(Clone, Debug)]
pub struct MinimaCertificate<K: Field> {
    pub q: i64,
    pub values: Vec<i64>,
    pub basis: PolyMat<K>,
}

impl<K: Field> MinimaCertificate<K> {
    /// det in F^x, values sorted summing to q, and the j-th row's gauge
    /// max(log||x_j||, q + log|u.x_j|) equal to the j-th value.
    pub fn verify(&self, u: &UnitPoint<K>) -> Result<(), Error> {
        let n = u.n();
        if self.basis.rows() != n || self.basis.cols() != n {
            return Err(Error::Verification("certificate basis shape"));
        }
        if self.basis.det().deg() != Some(0) {
            return Err(Error::NonUnimodular);
        }
        if self.values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Verification("certificate values unsorted"));
        }
        if self.values.iter().sum::<i64>() != self.q {
            return Err(Error::Verification("certificate values do not sum to q"));
        }
        for (j, claimed) in self.values.iter().enumerate() {
            let x = self.basis.row(j);
            let lam = log_norm_pvec(x)
                .max(dot(&u.u, x).log_norm().add_const(self.q))
                .require_finite()?;
            if lam != *claimed {
                return Err(Error::Verification("certificate row misses its minimum"));
            }
        }
        Ok(())
    }
}

struct GaugeRow<K: Field> {
    x: Vec<Poly<K>>,
    level: i64,
    pair: LaurentSeries<K>,
}

impl<K: Field> GaugeRow<K> {
    fn from_vec(u: &UnitPoint<K>, x: Vec<Poly<K>>) -> Result<Self, Error> {
        let level = match log_norm_pvec(&x) {
            LogNorm::Finite(d) => d,
            _ => return Err(Error::Verification("basis row degenerated")),
        };
        let pair = dot(&u.u, &x);
        Ok(GaugeRow { x, level, pair })
    }

    fn gauge(&self, q: i64) -> Result<i64, Error> {
        LogNorm::Finite(self.level)
            .max(self.pair.log_norm().add_const(q))
            .require_finite()
    }
}

/// Incremental reduced-basis computation of the minima with certificates:
/// starting from the standard basis, at each q the basis is re-reduced by
/// cancelling dependent leading vectors, which only ever applies unimodular
/// row operations. Cross-checked against minima_profile by the test suites.
pub fn minima_with_certificates<K: Field>(
    u: &UnitPoint<K>,
    q_max: i64,
) -> Result<(Profile, Vec<MinimaCertificate<K>>), Error> {
    u.require_horizon(q_max)?;
    let n = u.n();
    let field = u.field().clone();
    let mut rows: Vec<GaugeRow<K>> = (0..n)
        .map(|i| {
            let x: Vec<Poly<K>> = (0..n)
                .map(|j| {
                    if i == j {
                        Poly::one(field.clone())
                    } else {
                        Poly::zero(field.clone())
                    }
                })
                .collect();
            GaugeRow::from_vec(u, x)
        })
        .collect::<Result<_, _>>()?;

    let mut values: Vec<Vec<i64>> = Vec::with_capacity(q_max as usize + 1);
    let mut certs = Vec::with_capacity(q_max as usize + 1);
    for q in 0..=q_max {
        reduce_at(u, &mut rows, q)?;
        let mut order: Vec<usize> = (0..n).collect();
        let gauges: Vec<i64> = rows.iter().map(|r| r.gauge(q)).collect::<Result<_, _>>()?;
        order.sort_by_key(|&j| gauges[j]);
        values.push(order.iter().map(|&j| gauges[j]).collect());
        let lam = values.last().unwrap();
        assert_eq!(lam.iter().sum::<i64>(), q, "minima must sum to q");
        let basis = PolyMat::from_rows(
            field.clone(),
            order.iter().map(|&j| rows[j].x.clone()).collect(),
        );
        certs.push(MinimaCertificate { q, values: lam.clone(), basis });
    }
    Ok((Profile { n, values }, certs))
}

/// Leading vector of a row at its gauge: top coefficients of the embedded
/// vector (x, T^q u.x).
fn leading_vector<K: Field>(
    u: &UnitPoint<K>,
    row: &GaugeRow<K>,
    q: i64,
    g: i64,
) -> Result<Vec<K::Elem>, Error> {
    let field = u.field();
    let n = u.n();
    let mut lv = Vec::with_capacity(n + 1);
    debug_assert!(g >= 0);
    for p in &row.x {
        lv.push(p.coeff(g as usize));
    }
    lv.push(row.pair.coeff(g - q)?);
    let _ = field;
    Ok(lv)
}

fn reduce_at<K: Field>(u: &UnitPoint<K>, rows: &mut Vec<GaugeRow<K>>, q: i64) -> Result<(), Error> {
    let n = u.n();
    let field = u.field().clone();
    loop {
        let gauges: Vec<i64> = rows.iter().map(|r| r.gauge(q)).collect::<Result<_, _>>()?;
        let lvs: Vec<Vec<K::Elem>> = rows
            .iter()
            .zip(&gauges)
            .map(|(r, &g)| leading_vector(u, r, q, g))
            .collect::<Result<_, _>>()?;
        // dependence among the rows of the LV matrix = right nullspace of its
        // transpose
        let mut t = FMat::zero(field.clone(), n + 1, n);
        for (j, lv) in lvs.iter().enumerate() {
            for (i, v) in lv.iter().enumerate() {
                t.set(i, j, v.clone());
            }
        }
        let null = t.nullspace();
        let c = match null.first() {
            None => return Ok(()),
            Some(c) => c.clone(),
        };
        let mut target = usize::MAX;
        for j in 0..n {
            if field.is_zero(&c[j]) {
                continue;
            }
            if target == usize::MAX
                || gauges[j] > gauges[target]
                || (gauges[j] == gauges[target] && j > target)
            {
                target = j;
            }
        }
        let gt = gauges[target];
        let mut x = vec![Poly::zero(field.clone()); n];
        let mut pair = LaurentSeries::exact_zero(field.clone());
        for j in 0..n {
            if field.is_zero(&c[j]) {
                continue;
            }
            let shift = Poly::monomial(field.clone(), c[j].clone(), (gt - gauges[j]) as usize);
            for (xi, pj) in x.iter_mut().zip(rows[j].x.iter()) {
                *xi = xi.add(&pj.mul(&shift));
            }
            pair = pair.add(&rows[j].pair.mul_poly(&shift));
        }
        let level = match log_norm_pvec(&x) {
            LogNorm::Finite(d) => d,
            _ => return Err(Error::Verification("reduction produced a zero row")),
        };
        debug_assert!(level <= gt);
        rows[target] = GaugeRow { x, level, pair };
        debug_assert!(rows[target].gauge(q)? < gt);
    }
}

/// Dual minima: least t such that ||y|| <= e^{q+t}, ||u wedge y|| <= e^t has
/// at least j independent solutions; values lie in [-q, 0].
pub fn dual_profile<K: Field>(u: &UnitPoint<K>, q_max: i64) -> Result<Profile, Error> {
    u.require_horizon(q_max)?;
    let n = u.n();
    let field = u.field().clone();
    let pairs: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                v.push((i, j));
            }
        }
        v
    };
    let mut values = Vec::with_capacity(q_max as usize + 1);
    for q in 0..=q_max {
        let mut row = vec![0i64; n];
        let mut filled = 0usize;
        let mut t = -q;
        while filled < n {
            let deg_bound = q + t;
            let per = (deg_bound + 1) as usize;
            let mut rows = Vec::new();
            for &(i, j) in &pairs {
                for c in (t + 1)..=(t + q) {
                    let mut r = vec![field.zero(); n * per];
                    for d in 0..=deg_bound {
                        let ui = u.u[i].coeff(c - d)?;
                        let uj = u.u[j].coeff(c - d)?;
                        r[j * per + d as usize] = ui;
                        r[i * per + d as usize] = field.neg(&uj);
                    }
                    rows.push(r);
                }
            }
            let rank = solution_span_rank(&field, n, deg_bound, rows);
            if rank > filled {
                for jj in filled..rank.min(n) {
                    row[jj] = t;
                }
                filled = rank.min(n);
            } else {
                t += 1;
                assert!(t <= 0, "dual scan overran t = 0");
            }
        }
        values.push(row);
    }
    Ok(Profile { n, values })
}

/// Sorted m-subset sums of the minima values.
pub fn compound_profile(values: &[i64], m: usize) -> Vec<i64> {
    let n = values.len();
    let mut sums: Vec<i64> = index_sets(n, m)
        .into_iter()
        .map(|s| s.into_iter().map(|i| values[i]).sum())
        .collect();
    sums.sort_unstable();
    sums
}

/// Compound minima computed directly on grade-m coordinates: least t with j
/// independent omega of degree <= t whose interior product with u is
/// bounded by e^{t-q}.
pub fn compound_direct<K: Field>(
    u: &UnitPoint<K>,
    m: usize,
    q_max: i64,
) -> Result<Profile, Error> {
    u.require_horizon(q_max)?;
    let n = u.n();
    if m < 1 || m > n {
        return Err(Error::Precondition("grade out of range"));
    }
    let field = u.field().clone();
    let sets = index_sets(n, m);
    let lsets = index_sets(n, m - 1);
    let ncomp = sets.len();
    // per grade-m set: (position-in-lsets, sign, contracted coordinate index)
    let mut routes: Vec<Vec<(usize, bool, usize)>> = Vec::with_capacity(ncomp);
    for set in &sets {
        let mut r = Vec::with_capacity(m);
        for (pos, &i) in set.iter().enumerate() {
            let rest: Vec<usize> = set.iter().copied().filter(|&x| x != i).collect();
            let at = lsets.iter().position(|s| *s == rest).expect("subset present");
            r.push((at, pos % 2 == 0, i));
        }
        routes.push(r);
    }
    let mut values = Vec::with_capacity(q_max as usize + 1);
    for q in 0..=q_max {
        let mut row = vec![0i64; ncomp];
        let mut filled = 0usize;
        let mut t = 0i64;
        while filled < ncomp {
            let per = (t + 1) as usize;
            let mut rows = Vec::new();
            for (li, _) in lsets.iter().enumerate() {
                for c in ((t - q + 1)..=t).rev() {
                    let mut r = vec![field.zero(); ncomp * per];
                    for (si, route) in routes.iter().enumerate() {
                        for &(at, plus, ui) in route {
                            if at != li {
                                continue;
                            }
                            for d in 0..=t {
                                let v = u.u[ui].coeff(c - d)?;
                                let cur = &r[si * per + d as usize];
                                r[si * per + d as usize] = if plus {
                                    field.add(cur, &v)
                                } else {
                                    field.sub(cur, &v)
                                };
                            }
                        }
                    }
                    rows.push(r);
                }
            }
            let rank = solution_span_rank(&field, ncomp, t, rows);
            if rank > filled {
                for jj in filled..rank.min(ncomp) {
                    row[jj] = t;
                }
                filled = rank.min(ncomp);
            } else {
                t += 1;
                assert!(t <= q, "compound scan overran its horizon");
            }
        }
        values.push(row);
    }
    Ok(Profile { n: ncomp, values })
}

/// tilde L_{u,j}(q) = q + L*_{u,j}(nq), rows for q in [0, q_max].
pub fn tilde_profile<K: Field>(u: &UnitPoint<K>, q_max: i64) -> Result<Profile, Error> {
    let n = u.n() as i64;
    u.require_horizon(n * q_max)?;
    let dual = dual_profile(u, n * q_max)?;
    let values = (0..=q_max)
        .map(|q| dual.at(n * q).iter().map(|v| q + v).collect())
        .collect();
    Ok(Profile { n: u.n(), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::nsystem::extremal;
    use crate::testutil::{e_point, exp_point2, golden_point, random_point};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn unit_point_validation() {
        assert!(UnitPoint::new(vec![
            LaurentSeries::from_poly(&Poly::from_int_coeffs(q(), &[0, 1])),
            LaurentSeries::from_poly(&Poly::one(q())),
        ])
        .is_err());
        assert!(UnitPoint::new(vec![
            LaurentSeries::exact_zero(q()),
            LaurentSeries::exact_zero(q()),
        ])
        .is_err());
        let p = e_point(q(), 3);
        assert_eq!(p.prec(), None);
    }

    #[test]
    fn standard_basis_point() {
        let u = e_point(PrimeField::new(5).unwrap(), 3);
        let p = minima_profile(&u, 6).unwrap();
        for qq in 0..=6 {
            assert_eq!(p.at(qq), &[0, 0, qq]);
        }
        p.validate().unwrap();
        let (pf, certs) = minima_with_certificates(&u, 6).unwrap();
        assert_eq!(pf, p);
        for c in &certs {
            c.verify(&u).unwrap();
        }
    }

    #[test]
    fn golden_ratio_minima() {
        let u = golden_point(12);
        let p = minima_profile(&u, 10).unwrap();
        for qq in 0..=10 {
            assert_eq!(p.at(qq), &[qq / 2, qq - qq / 2], "q = {qq}");
        }
        let (pf, certs) = minima_with_certificates(&u, 10).unwrap();
        assert_eq!(pf, p);
        for c in &certs {
            c.verify(&u).unwrap();
        }
    }

    #[test]
    fn exponential_point_is_extremal() {
        let u = exp_point2(10);
        let p = minima_profile(&u, 8).unwrap();
        assert_eq!(p, extremal(2, 8));
    }

    #[test]
    fn trajectory_examples() {
        let u3 = e_point(q(), 3);
        let e1 = vec![Poly::one(q()), Poly::zero(q()), Poly::zero(q())];
        let t = trajectory(&e1, &u3).unwrap();
        assert_eq!(t.pair_log, None);
        assert_eq!(t.eval(5), 0);
        let e3 = vec![Poly::zero(q()), Poly::zero(q()), Poly::one(q())];
        let t = trajectory(&e3, &u3).unwrap();
        assert_eq!(t.eval(5), 5);
        assert_eq!(t.breakpoint(), Some(0));

        let u = golden_point(12);
        let x = vec![Poly::from_int_coeffs(q(), &[0, 1]), Poly::one(q())];
        let t = trajectory(&x, &u).unwrap();
        assert_eq!(t.level, 1);
        assert_eq!(t.pair_log, Some(-2));
        assert_eq!(t.breakpoint(), Some(3));
    }

    #[test]
    fn dual_of_standard_point() {
        let u = e_point(PrimeField::new(3).unwrap(), 3);
        let d = dual_profile(&u, 5).unwrap();
        for qq in 0..=5 {
            assert_eq!(d.at(qq), &[-qq, 0, 0]);
        }
    }

    #[test]
    fn dual_is_reversed_negation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = PrimeField::new(5).unwrap();
        for _ in 0..6 {
            let n = rng.gen_range(2..=3);
            let u = random_point(&mut rng, f.clone(), n, 9);
            let p = minima_profile(&u, 8).unwrap();
            let d = dual_profile(&u, 8).unwrap();
            for qq in 0..=8 {
                let rev: Vec<i64> = p.at(qq).iter().rev().map(|v| -v).collect();
                assert_eq!(d.at(qq), &rev[..], "q = {qq}");
            }
        }
    }

    #[test]
    fn dual_of_exponential_point() {
        let u = exp_point2(9);
        let d = dual_profile(&u, 6).unwrap();
        for qq in 0..=6 {
            assert_eq!(d.at(qq), &[-(qq - qq / 2), -(qq / 2)]);
        }
    }

    #[test]
    fn tilde_examples() {
        let u = e_point(q(), 2);
        let t = tilde_profile(&u, 1).unwrap();
        assert_eq!(t.at(0), &[0, 0]);
        assert_eq!(t.at(1), &[-1, 1]);
        let u = exp_point2(13);
        let t = tilde_profile(&u, 3).unwrap();
        assert_eq!(t.at(3), &[0, 0]);
    }

    #[test]
    fn subset_sums() {
        assert_eq!(compound_profile(&[0, 0, 4], 2), vec![0, 4, 4]);
        assert_eq!(compound_profile(&[1, 2, 3], 2), vec![3, 4, 5]);
        assert_eq!(compound_profile(&[1, 1, 2, 2], 2), vec![2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn compound_direct_cases() {
        let u = e_point(PrimeField::new(5).unwrap(), 3);
        let c = compound_direct(&u, 2, 4).unwrap();
        assert_eq!(c.at(4), &[0, 4, 4]);
        // m = n: single component equal to q
        let c = compound_direct(&u, 3, 4).unwrap();
        for qq in 0..=4 {
            assert_eq!(c.at(qq), &[qq]);
        }
        // m = 1 agrees with the plain minima
        let c = compound_direct(&u, 1, 4).unwrap();
        assert_eq!(c, minima_profile(&u, 4).unwrap());
    }

    #[test]
    fn accelerator_matches_authoritative() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = PrimeField::new(3).unwrap();
        for _ in 0..8 {
            let n = rng.gen_range(2..=4);
            let u = random_point(&mut rng, f.clone(), n, 11);
            let p = minima_profile(&u, 10).unwrap();
            p.validate().unwrap();
            let (pf, certs) = minima_with_certificates(&u, 10).unwrap();
            assert_eq!(pf, p);
            for c in &certs {
                c.verify(&u).unwrap();
            }
        }
    }

    #[test]
    fn monotone_in_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = PrimeField::new(7).unwrap();
        let u = random_point(&mut rng, f, 3, 10);
        let p = minima_profile(&u, 9).unwrap();
        for qq in 1..=9 {
            for j in 0..3 {
                let a = p.at(qq - 1)[j];
                let b = p.at(qq)[j];
                assert!(a <= b && b <= a + 1);
            }
        }
    }

    #[test]
    fn compound_identities_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f = PrimeField::new(5).unwrap();
        for _ in 0..4 {
            let u = random_point(&mut rng, f.clone(), 3, 8);
            let p = minima_profile(&u, 7).unwrap();
            let c = compound_direct(&u, 2, 7).unwrap();
            for qq in 0..=7 {
                let expect = compound_profile(p.at(qq), 2);
                assert_eq!(c.at(qq), &expect[..], "q = {qq}");
                assert_eq!(c.at(qq).iter().sum::<i64>(), 2 * qq);
                assert_eq!(c.at(qq)[0], p.at(qq)[0] + p.at(qq)[1]);
                assert_eq!(c.at(qq)[1] - c.at(qq)[0], p.at(qq)[2] - p.at(qq)[1]);
            }
            // slope of the first compound component changing 1 -> 0 forces a tie
            for qq in 1..7 {
                let a = c.at(qq - 1)[0];
                let b = c.at(qq)[0];
                let d = c.at(qq + 1)[0];
                if b - a == 1 && d - b == 0 {
                    assert_eq!(p.at(qq)[1], p.at(qq)[2]);
                }
            }
        }
    }

    #[test]
    fn precision_horizon_enforced() {
        let u = golden_point(6);
        assert!(minima_profile(&u, 5).is_ok());
        assert!(matches!(
            minima_profile(&u, 6),
            Err(Error::PrecisionShort { needed: 7, have: 6 })
        ));
    }
}
