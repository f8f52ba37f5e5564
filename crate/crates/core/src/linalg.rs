//! Exact linear algebra over the coefficient field and over F[T].
//!
//! Elimination is fraction-free throughout (Bareiss): rows over the
//! rationals are denominator-cleared first and every interior division is
//! exact, which keeps entries integral and polynomial entries polynomial.
//! Pivots are chosen deterministically so downstream output is reproducible
//! byte for byte.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::Field;
use crate::poly::Poly;
use crate::series::LogNorm;

/// Dense matrix over the coefficient field, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMat<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> FMat<K> {
    pub fn zero(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        FMat { field, rows, cols, data }
    }

    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        FMat { field, rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    fn row_mut(&mut self, i: usize) -> &mut [K::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Fraction-free forward elimination in place.
    /// Returns pivot (row, col) pairs in order.
    fn eliminate(&mut self) -> Vec<(usize, usize)> {
        let f = self.field.clone();
        for i in 0..self.rows {
            f.clear_denominators(self.row_mut(i));
        }
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = f.one();
        let mut prow = 0usize;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(r) = (prow..self.rows).find(|&r| !f.is_zero(self.at(r, col))) else {
                continue;
            };
            if r != prow {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, prow * self.cols + j);
                }
            }
            let pivot = self.at(prow, col).clone();
            for i in (prow + 1)..self.rows {
                let head = self.at(i, col).clone();
                for j in (col + 1)..self.cols {
                    let t1 = f.mul(self.at(i, j), &pivot);
                    let t2 = f.mul(&head, self.at(prow, j));
                    let num = f.sub(&t1, &t2);
                    let v = f.div(&num, &prev).expect("pivot nonzero");
                    self.set(i, j, v);
                }
                self.set(i, col, f.zero());
            }
            prev = pivot;
            pivots.push((prow, col));
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate().len()
    }

    /// Basis of the right nullspace, one vector per free column, each scaled
    /// so its first nonzero entry is 1. Deterministic.
    pub fn nullspace(&self) -> Vec<Vec<K::Elem>> {
        let f = self.field.clone();
        let mut m = self.clone();
        let pivots = m.eliminate();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_cols.contains(&fc) {
                continue;
            }
            let mut x = vec![f.zero(); self.cols];
            x[fc] = f.one();
            for &(r, pc) in pivots.iter().rev() {
                if pc > fc {
                    continue;
                }
                let mut acc = f.zero();
                for j in (pc + 1)..self.cols {
                    if f.is_zero(&x[j]) {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(m.at(r, j), &x[j]));
                }
                let v = f.div(&f.neg(&acc), m.at(r, pc)).expect("pivot nonzero");
                x[pc] = v;
            }
            // canonical scaling: first nonzero entry becomes 1
            if let Some(lead) = x.iter().position(|v| !f.is_zero(v)) {
                let inv = f.inv(&x[lead].clone()).expect("nonzero");
                for v in x.iter_mut() {
                    *v = f.mul(v, &inv);
                }
            }
            basis.push(x);
        }
        basis
    }
}

/// Dense matrix of polynomials, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<Poly<K>>,
}

impl<K: Field> PolyMat<K> {
    pub fn from_rows(field: K, rows: Vec<Vec<Poly<K>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        PolyMat { field, rows: r, cols: c, data }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![Poly::zero(field.clone()); n];
            row[i] = Poly::one(field.clone());
            rows.push(row);
        }
        PolyMat::from_rows(field, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly<K> {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Poly<K>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Poly<K>>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn set(&mut self, i: usize, j: usize, v: Poly<K>) {
        self.data[i * self.cols + j] = v;
    }

    /// Fraction-free elimination; pivots picked by least degree for growth
    /// control, ties by row order. Returns (pivot list, swap parity).
    fn eliminate(&mut self) -> (Vec<(usize, usize)>, bool) {
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut prev = Poly::one(self.field.clone());
        let mut prow = 0usize;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let mut best: Option<(usize, usize)> = None; // (deg, row)
            for r in prow..self.rows {
                if let Some(d) = self.at(r, col).deg() {
                    if best.map_or(true, |(bd, _)| d < bd) {
                        best = Some((d, r));
                    }
                }
            }
            let Some((_, r)) = best else { continue };
            if r != prow {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, prow * self.cols + j);
                }
                odd = !odd;
            }
            let pivot = self.at(prow, col).clone();
            for i in (prow + 1)..self.rows {
                let head = self.at(i, col).clone();
                for j in (col + 1)..self.cols {
                    let t1 = self.at(i, j).mul(&pivot);
                    let t2 = head.mul(self.at(prow, j));
                    let num = t1.sub(&t2);
                    self.set(i, j, num.exact_div(&prev));
                }
                self.set(i, col, Poly::zero(self.field.clone()));
            }
            prev = pivot;
            pivots.push((prow, col));
            prow += 1;
        }
        (pivots, odd)
    }

    /// Rank over the fraction field F(T).
    pub fn rank_k(&self) -> usize {
        let mut m = self.clone();
        m.eliminate().0.len()
    }

    pub fn det(&self) -> Poly<K> {
        assert_eq!(self.rows, self.cols, "det needs a square matrix");
        if self.rows == 0 {
            return Poly::one(self.field.clone());
        }
        let mut m = self.clone();
        let (pivots, odd) = m.eliminate();
        if pivots.len() < self.rows {
            return Poly::zero(self.field.clone());
        }
        let (r, c) = pivots[pivots.len() - 1];
        let d = m.at(r, c).clone();
        if odd {
            d.neg()
        } else {
            d
        }
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Poly<K> {
        let mut rows = Vec::with_capacity(self.rows - 1);
        for i in 0..self.rows {
            if i == skip_row {
                continue;
            }
            let mut row = Vec::with_capacity(self.cols - 1);
            for j in 0..self.cols {
                if j == skip_col {
                    continue;
                }
                row.push(self.at(i, j).clone());
            }
            rows.push(row);
        }
        PolyMat::from_rows(self.field.clone(), rows).det()
    }

    /// Cofactor (-1)^(i+j) * minor(i, j).
    pub fn cofactor(&self, i: usize, j: usize) -> Poly<K> {
        let m = self.minor(i, j);
        if (i + j) % 2 == 1 {
            m.neg()
        } else {
            m
        }
    }

    /// Rows of the inverse transpose, for a matrix with unit determinant.
    /// Row i of the result pairs to 1 with row i of self and to 0 with the
    /// others; applying it twice gives back self.
    pub fn unimodular_dual(&self) -> Result<PolyMat<K>, Error> {
        assert_eq!(self.rows, self.cols, "dual needs a square matrix");
        let d = self.det();
        let unit = match d.deg() {
            Some(0) => d.lc().unwrap().clone(),
            _ => return Err(Error::NonUnimodular),
        };
        let inv = self.field.inv(&unit).expect("unit is nonzero");
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.cofactor(i, j).scale(&inv));
            }
            rows.push(row);
        }
        Ok(PolyMat::from_rows(self.field.clone(), rows))
    }
}

/// Max degree over the entries of a polynomial vector.
pub fn log_norm_pvec<K: Field>(v: &[Poly<K>]) -> LogNorm {
    v.iter().fold(LogNorm::NegInf, |acc, p| acc.max(p.log_norm()))
}
