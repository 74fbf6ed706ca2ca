//! Dense matrices over `F_p` and graded polynomial matrices.

use serde::{Deserialize, Serialize};

use super::field::{FieldElem, PrimeField};
use super::poly::{Poly, PolyRing};
use super::vector::Vector;
use crate::error::{Error, Result};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixF {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl MatrixF {
    pub fn zeros(rows: usize, cols: usize) -> MatrixF {
        MatrixF { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> MatrixF {
        let mut m = MatrixF::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> MatrixF {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend_from_slice(row);
        }
        MatrixF { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> MatrixF {
        let mut t = MatrixF::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &PrimeField, other: &MatrixF) -> MatrixF {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = f.p() as u64;
        let mut out = MatrixF::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self, f: &PrimeField) -> (MatrixF, usize, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(f);
        let rank = pivots.len();
        (m, rank, pivots)
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut e = Echelon::new(*f, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    fn rref_in_place(&mut self, f: &PrimeField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, f.mul(v, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..self.cols {
                    let v = f.add(self.get(i, j), f.mul(neg, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Columns form a basis of the null space `{v : self * v = 0}`.
    pub fn kernel_basis(&self, f: &PrimeField) -> MatrixF {
        let (r, rank, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = MatrixF::zeros(self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k.set(fc, idx, 1);
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                k.set(pc, idx, f.neg(r.get(pi, fc)));
            }
        }
        k
    }
}

/// Incrementally maintained row echelon form: rows are inserted one at a time
/// and reduced against the pivots found so far.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<FieldElem>>,
    pivot_cols: Vec<usize>,
    by_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: PrimeField, width: usize) -> Echelon {
        Echelon { field, width, rows: Vec::new(), pivot_cols: Vec::new(), by_col: vec![None; width] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` in place against the stored pivots.
    pub fn reduce(&self, v: &mut [FieldElem]) {
        let f = &self.field;
        let p = f.p() as u64;
        for c in 0..self.width {
            if v[c] == 0 {
                continue;
            }
            if let Some(ri) = self.by_col[c] {
                let row = &self.rows[ri];
                let factor = (p - v[c] as u64) % p;
                for j in c..self.width {
                    if row[j] != 0 {
                        v[j] = ((v[j] as u64 + factor * row[j] as u64) % p) as u32;
                    }
                }
            }
        }
    }

    /// Inserts a row; returns whether it was independent of the previous ones.
    pub fn insert(&mut self, mut v: Vec<FieldElem>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[c]);
        for x in v.iter_mut().skip(c) {
            *x = self.field.mul(*x, inv);
        }
        self.by_col[c] = Some(self.rows.len());
        self.pivot_cols.push(c);
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }
}

/// A homogeneous map of graded free modules `S^cols -> S^rows`, stored by
/// columns. Column `j` has degree `col_shifts[j]`; an entry `(i, j)` must be
/// zero or homogeneous of degree `col_shifts[j] - row_shifts[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPoly {
    pub row_shifts: Vec<i32>,
    pub col_shifts: Vec<i32>,
    pub columns: Vec<Vector>,
}

impl MatrixPoly {
    pub fn new(row_shifts: Vec<i32>, col_shifts: Vec<i32>, columns: Vec<Vector>) -> Result<MatrixPoly> {
        if columns.len() != col_shifts.len() {
            return Err(Error::Input("column count does not match shifts".into()));
        }
        for (j, col) in columns.iter().enumerate() {
            if let Some(mc) = col.max_comp() {
                if mc as usize >= row_shifts.len() {
                    return Err(Error::Input(format!("column {j} exceeds the row count")));
                }
            }
            if !col.is_homogeneous(&row_shifts) {
                return Err(Error::NonHomogeneous(format!("column {j}")));
            }
            if let Some(d) = col.degree(&row_shifts) {
                if d != col_shifts[j] {
                    return Err(Error::NonHomogeneous(format!(
                        "column {j} has degree {d}, expected {}",
                        col_shifts[j]
                    )));
                }
            }
        }
        Ok(MatrixPoly { row_shifts, col_shifts, columns })
    }

    pub fn zero(row_shifts: Vec<i32>, col_shifts: Vec<i32>) -> MatrixPoly {
        let columns = vec![Vector::zero(); col_shifts.len()];
        MatrixPoly { row_shifts, col_shifts, columns }
    }

    pub fn nrows(&self) -> usize {
        self.row_shifts.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_shifts.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        self.columns[j].component(i)
    }

    /// Matrix product `self * other` (other's rows are self's columns).
    pub fn compose(&self, f: &PrimeField, other: &MatrixPoly) -> MatrixPoly {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch");
        let columns = other.columns.iter().map(|c| self.apply(f, c)).collect();
        MatrixPoly { row_shifts: self.row_shifts.clone(), col_shifts: other.col_shifts.clone(), columns }
    }

    /// Image of a vector in the source module.
    pub fn apply(&self, f: &PrimeField, v: &Vector) -> Vector {
        let mut acc = Vector::zero();
        for t in v.terms() {
            acc = acc.add_scaled(f, &self.columns[t.comp as usize], t.coef, &t.mono);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Whether every nonzero entry has positive degree.
    pub fn is_minimal(&self) -> bool {
        self.columns.iter().all(|c| c.terms().iter().all(|t| !t.mono.is_one()))
    }

    pub fn display_rows(&self, ring: &PolyRing) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| ring.display(&self.entry(i, j))).collect())
            .collect()
    }
}

/// Serializable view of a polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixText {
    pub row_shifts: Vec<i32>,
    pub col_shifts: Vec<i32>,
    pub entries: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Fraction-free elimination: rows are combined as
    /// `a_pp * row_i - a_ip * row_p` without ever dividing.
    fn fraction_free_rank(f: &PrimeField, m: &MatrixF) -> usize {
        let mut a: Vec<Vec<u64>> = (0..m.rows()).map(|i| m.row(i).iter().map(|&x| x as u64).collect()).collect();
        let p = f.p() as u64;
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(pr) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(pr, rank);
            for i in rank + 1..a.len() {
                if a[i][c] == 0 {
                    continue;
                }
                let (piv, lead) = (a[rank][c], a[i][c]);
                let top = a[rank].clone();
                for (x, t) in a[i].iter_mut().zip(&top) {
                    *x = (piv * *x % p + (p - lead) * t % p) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_matrix(rng: &mut ChaCha8Rng, f: &PrimeField, r: usize, c: usize, sparse: bool) -> MatrixF {
        let mut m = MatrixF::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let v = if sparse && rng.gen_bool(0.8) { 0 } else { rng.gen_range(0..f.p()) };
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn trivial_ranks() {
        let f = PrimeField::default();
        let (_, r, piv) = MatrixF::identity(3).rref(&f);
        assert_eq!((r, piv), (3, vec![0, 1, 2]));
        let (_, r, piv) = MatrixF::zeros(2, 5).rref(&f);
        assert_eq!((r, piv), (0, vec![]));
        assert_eq!(MatrixF::zeros(0, 0).rank(&f), 0);
    }

    #[test]
    fn kernel_examples() {
        let f = PrimeField::default();
        assert_eq!(MatrixF::identity(3).kernel_basis(&f).cols(), 0);
        assert_eq!(MatrixF::zeros(2, 3).kernel_basis(&f).cols(), 3);
        let k = MatrixF::from_rows(&[vec![1, 1], vec![1, 1]]).kernel_basis(&f);
        assert_eq!(k.cols(), 1);
        assert_eq!(f.add(k.get(0, 0), k.get(1, 0)), 0);
        assert_ne!(k.get(0, 0), 0);
    }

    #[test]
    fn rank_agrees_with_fraction_free_oracle() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..100 {
            // mix full-rank and rank-deficient matrices
            let m = if trial % 3 == 0 {
                let a = random_matrix(&mut rng, &f, 20, 7, false);
                let b = random_matrix(&mut rng, &f, 7, 20, false);
                a.mul(&f, &b)
            } else {
                random_matrix(&mut rng, &f, 20, 20, trial % 3 == 1)
            };
            let (_, r, _) = m.rref(&f);
            assert_eq!(r, fraction_free_rank(&f, &m), "trial {trial}");
            assert_eq!(r, m.rank(&f));
            assert_eq!(r, m.transpose().rank(&f));
            let k = m.kernel_basis(&f);
            assert_eq!(k.cols(), 20 - r);
            assert!(m.mul(&f, &k).is_zero());
        }
    }

    #[test]
    fn echelon_membership() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(vec![1, 2, 0]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![2, 5, 1]));
        assert!(e.contains(&[1, 3, 1]));
        assert!(!e.contains(&[0, 0, 1]));
    }
}
