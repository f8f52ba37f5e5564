//! Exterior algebra on coordinate vectors: wedge coordinates, interior
//! products, Hadamard defect and projective distance.
//!
//! Grade-m coordinates are indexed by the m-element subsets of {0..n-1} in
//! lexicographic order.

use alloc::vec::Vec;

use crate::error::Error;
use crate::field::Field;
use crate::poly::Poly;
use crate::series::{LaurentSeries, LogNorm};

/// All m-element subsets of {0..n-1}, lexicographic.
pub fn index_sets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - m {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in (i + 1)..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, m: usize) -> usize {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut acc: usize = 1;
    for i in 0..m {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Minimal ring surface needed by determinant expansion; implemented by
/// polynomials and Laurent series (both carry their field).
pub trait WedgeRing: Clone {
    fn w_add(&self, o: &Self) -> Self;
    fn w_sub(&self, o: &Self) -> Self;
    fn w_mul(&self, o: &Self) -> Self;
    fn w_zero(&self) -> Self;
}

impl<K: Field> WedgeRing for Poly<K> {
    fn w_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn w_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn w_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn w_zero(&self) -> Self {
        Poly::zero(self.field().clone())
    }
}

impl<K: Field> WedgeRing for LaurentSeries<K> {
    fn w_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn w_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn w_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn w_zero(&self) -> Self {
        LaurentSeries::exact_zero(self.field().clone())
    }
}

/// Determinant by expansion along the first row; fine at wedge sizes.
fn det_expand<R: WedgeRing>(rows: &[Vec<R>]) -> R {
    let m = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == m));
    match m {
        0 => panic!("empty determinant"),
        1 => rows[0][0].clone(),
        _ => {
            let mut acc = rows[0][0].w_zero();
            for (j, top) in rows[0].iter().enumerate() {
                let sub: Vec<Vec<R>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = top.w_mul(&det_expand(&sub));
                acc = if j % 2 == 0 { acc.w_add(&term) } else { acc.w_sub(&term) };
            }
            acc
        }
    }
}

/// Wedge of m vectors of length n: the C(n, m) maximal minors in
/// lexicographic subset order.
pub fn wedge<R: WedgeRing>(vectors: &[Vec<R>]) -> Vec<R> {
    let m = vectors.len();
    assert!(m >= 1, "wedge of an empty family");
    let n = vectors[0].len();
    assert!(vectors.iter().all(|v| v.len() == n), "dimension mismatch");
    assert!(m <= n, "too many vectors");
    index_sets(n, m)
        .into_iter()
        .map(|cols| {
            let rows: Vec<Vec<R>> = vectors
                .iter()
                .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
                .collect();
            det_expand(&rows)
        })
        .collect()
}

/// Interior product of a series vector u with grade-m coordinates, giving
/// grade m-1 coordinates. On a decomposable v_1 ^ ... ^ v_m this is
/// sum_j (-1)^(j+1) (u.v_j) v_1 ^ ... (skip j) ... ^ v_m.
pub fn contract<K: Field>(
    u: &[LaurentSeries<K>],
    omega: &[LaurentSeries<K>],
    m: usize,
) -> Vec<LaurentSeries<K>> {
    let n = u.len();
    assert!(m >= 1 && m <= n);
    let sets_m = index_sets(n, m);
    let sets_lo = index_sets(n, m - 1);
    assert_eq!(omega.len(), sets_m.len(), "coordinate count mismatch");
    let field = u[0].field().clone();
    let mut out: Vec<LaurentSeries<K>> = sets_lo
        .iter()
        .map(|_| LaurentSeries::exact_zero(field.clone()))
        .collect();
    for (set, w) in sets_m.iter().zip(omega.iter()) {
        for (pos, &i) in set.iter().enumerate() {
            let rest: Vec<usize> = set
                .iter()
                .copied()
                .filter(|&x| x != i)
                .collect();
            let target = sets_lo
                .iter()
                .position(|s| *s == rest)
                .expect("subset present");
            let term = w.mul(&u[i]);
            out[target] = if pos % 2 == 0 {
                out[target].add(&term)
            } else {
                out[target].sub(&term)
            };
        }
    }
    out
}

/// Grade-(m-1) contraction where the grade-m coordinates are polynomials.
pub fn contract_poly<K: Field>(
    u: &[LaurentSeries<K>],
    omega: &[Poly<K>],
    m: usize,
) -> Vec<LaurentSeries<K>> {
    let series: Vec<LaurentSeries<K>> = omega.iter().map(LaurentSeries::from_poly).collect();
    contract(u, &series, m)
}

pub enum Hadamard {
    /// sum of row norms minus the norm of the wedge, always >= 0.
    Defect(i64),
    /// The wedge vanished: the family is linearly dependent.
    Dependent,
}

/// Defect of the norm product inequality for a family of polynomial vectors.
pub fn hadamard_defect<K: Field>(vectors: &[Vec<Poly<K>>]) -> Result<Hadamard, Error> {
    let mut sum = 0i64;
    for v in vectors {
        match crate::linalg::log_norm_pvec(v) {
            LogNorm::Finite(d) => sum += d,
            LogNorm::NegInf => return Err(Error::Precondition("zero vector in family")),
            LogNorm::Indeterminate { .. } => return Err(Error::Indeterminate),
        }
    }
    let w = wedge(vectors);
    match crate::linalg::log_norm_pvec(&w) {
        LogNorm::Finite(d) => Ok(Hadamard::Defect(sum - d)),
        LogNorm::NegInf => Ok(Hadamard::Dependent),
        LogNorm::Indeterminate { .. } => Err(Error::Indeterminate),
    }
}

/// log dist(x, y) = log||x ^ y|| - log||x|| - log||y|| on nonzero vectors.
/// NegInf means projectively equal.
pub fn projective_distance<K: Field>(
    x: &[LaurentSeries<K>],
    y: &[LaurentSeries<K>],
) -> Result<LogNorm, Error> {
    let nx = crate::series::log_norm_vec(x).require_finite()?;
    let ny = crate::series::log_norm_vec(y).require_finite()?;
    let pair = [x.to_vec(), y.to_vec()];
    let w = wedge(&pair);
    match crate::series::log_norm_vec(&w) {
        LogNorm::Finite(d) => Ok(LogNorm::Finite(d - nx - ny)),
        LogNorm::NegInf => Ok(LogNorm::NegInf),
        LogNorm::Indeterminate { upper } => Ok(LogNorm::Indeterminate {
            upper: upper - nx - ny,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::series::expand_ratio;

    fn q() -> Rationals {
        Rationals
    }

    #[test]
    fn subsets_lex() {
        assert_eq!(
            index_sets(4, 2),
            alloc::vec![
                alloc::vec![0, 1],
                alloc::vec![0, 2],
                alloc::vec![0, 3],
                alloc::vec![1, 2],
                alloc::vec![1, 3],
                alloc::vec![2, 3]
            ]
        );
        assert_eq!(index_sets(3, 3).len(), 1);
        assert_eq!(binomial(4, 2), 6);
    }

    #[test]
    fn hadamard_example() {
        // rows (T, 1) and (T, 0): wedge = -T, defect = 1 + 1 - 1
        let t = Poly::from_int_coeffs(q(), &[0, 1]);
        let one = Poly::one(q());
        let zero = Poly::<Rationals>::zero(q());
        let fam = [
            alloc::vec![t.clone(), one],
            alloc::vec![t, zero],
        ];
        match hadamard_defect(&fam).unwrap() {
            Hadamard::Defect(d) => assert_eq!(d, 1),
            Hadamard::Dependent => panic!("independent family"),
        }
    }

    #[test]
    fn dependent_family_flagged() {
        let one = Poly::one(q());
        let fam = [alloc::vec![one.clone(), one.clone()], alloc::vec![one.clone(), one]];
        assert!(matches!(hadamard_defect(&fam).unwrap(), Hadamard::Dependent));
    }

    #[test]
    fn contraction_on_a_plane() {
        // u = (a, b) exact, omega = e1 ^ e2 -> (-b, a)
        let a = LaurentSeries::from_poly(&Poly::from_int_coeffs(q(), &[2]));
        let b = LaurentSeries::from_poly(&Poly::from_int_coeffs(q(), &[3]));
        let u = [a, b];
        let omega = [LaurentSeries::from_poly(&Poly::one(q()))];
        let c = contract(&u, &omega, 2);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], LaurentSeries::from_poly(&Poly::from_int_coeffs(q(), &[-3])));
        assert_eq!(c[1], LaurentSeries::from_poly(&Poly::from_int_coeffs(q(), &[2])));
    }

    #[test]
    fn projective_distance_example() {
        // x = (1, 0), y = (1, 1/T): distance e^-1
        let one = Poly::one(q());
        let x = [
            LaurentSeries::from_poly(&one),
            LaurentSeries::exact_zero(q()),
        ];
        let invt = expand_ratio(&one, &Poly::from_int_coeffs(q(), &[0, 1]), -5).unwrap();
        let y = [LaurentSeries::from_poly(&one), invt];
        assert_eq!(projective_distance(&x, &y).unwrap(), LogNorm::Finite(-1));
        assert_eq!(projective_distance(&x, &x).unwrap(), LogNorm::NegInf);
    }
}
