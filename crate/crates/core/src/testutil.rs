//! Shared fixtures for the unit tests: reference points with known minima.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Rationals};
use crate::minima::UnitPoint;
use crate::nsystem::Profile;
use crate::poly::Poly;
use crate::series::LaurentSeries;

pub fn e_point<K: Field>(field: K, n: usize) -> UnitPoint<K> {
    let mut u: Vec<LaurentSeries<K>> =
        (0..n).map(|_| LaurentSeries::exact_zero(field.clone())).collect();
    u[n - 1] = LaurentSeries::from_poly(&Poly::one(field));
    UnitPoint::new(u).unwrap()
}

/// Root of s^2 + T s - 1 = 0 of the form 1/T - 1/T^3 + 2/T^5 - ..., i.e. the
/// continued fraction [0, T, T, T, ...], to the given floor.
pub fn golden_series(floor: i64) -> LaurentSeries<Rationals> {
    let one = LaurentSeries::from_poly(&Poly::one(Rationals));
    let mut s = LaurentSeries::monomial(Rationals, BigRational::one(), -1);
    for _ in 0..(2 * (-floor) as usize) {
        // s <- (1 - s^2) / T contracts toward the root
        s = one.sub(&s.mul(&s)).shift(-1).truncate_floor(floor);
    }
    s
}

pub fn golden_point(prec: i64) -> UnitPoint<Rationals> {
    let xi = golden_series(-prec);
    let one = LaurentSeries::from_poly(&Poly::one(Rationals));
    UnitPoint::new(vec![xi.neg(), one]).unwrap()
}

/// (e^{0/T}, e^{1/T}) over the rationals, truncated at floor -prec.
pub fn exp_point2(prec: i64) -> UnitPoint<Rationals> {
    let mut coeffs = Vec::new();
    let mut fact = BigRational::one();
    for j in 0..=prec {
        if j > 0 {
            fact = fact * BigRational::from_integer(j.into());
        }
        coeffs.push(BigRational::one() / fact.clone());
    }
    coeffs.reverse();
    let e1 = LaurentSeries::new(Rationals, 0, coeffs, Some(-prec)).unwrap();
    let one = LaurentSeries::from_poly(&Poly::one(Rationals));
    UnitPoint::new(vec![one, e1]).unwrap()
}

pub fn random_point<K: Field>(
    rng: &mut ChaCha8Rng,
    field: K,
    n: usize,
    prec: i64,
) -> UnitPoint<K> {
    loop {
        let u: Vec<LaurentSeries<K>> = (0..n)
            .map(|_| {
                let coeffs: Vec<K::Elem> = (0..=prec)
                    .map(|_| field.from_i64(rng.gen_range(-6..=6)))
                    .collect();
                LaurentSeries::new(field.clone(), 0, coeffs, Some(-prec)).unwrap()
            })
            .collect();
        if let Ok(p) = UnitPoint::new(u) {
            return p;
        }
    }
}

/// Random valid profile via admissible rising-index walks.
pub fn random_profile(rng: &mut ChaCha8Rng, n: usize, horizon: i64) -> Profile {
    let mut values = vec![vec![0i64; n]];
    let mut prev_rise: Option<usize> = None;
    for q in 0..horizon {
        let row = values[q as usize].clone();
        let mut admissible: Vec<usize> = Vec::new();
        for r in 1..=n {
            let top = r == n || row[r] > row[r - 1];
            if !top {
                continue;
            }
            let ok = match prev_rise {
                None => true,
                Some(rp) => r <= rp || row[rp - 1] == row[r - 1],
            };
            if ok {
                admissible.push(r);
            }
        }
        let r = admissible[rng.gen_range(0..admissible.len())];
        let mut next = row;
        next[r - 1] += 1;
        values.push(next);
        prev_rise = Some(r);
    }
    Profile { n, values }
}
