//! Eisenbud operators: writing the square of the lifted differential as
//! `d~_{n-1} d~_n = sum_i f_i t~_{i,n}` gives chain endomorphisms `t_i` of
//! homological degree -2 and internal degree `-deg f_i`.

use crate::algebra::{MatrixPoly, Monomial, Poly, Vector};
use crate::error::{Error, Result};
use crate::groebner::CofactorDivider;

use super::Resolution;

#[derive(Clone, Debug)]
pub struct Operators {
    /// `t[i][n]` is `t~_{i,n}: F_n -> F_{n-2}` (lifted to `S`); entries for
    /// `n < 2` are empty maps.
    pub t: Vec<Vec<MatrixPoly>>,
}

impl Operators {
    pub fn codim(&self) -> usize {
        self.t.len()
    }

    /// `sum_i a_i t_{i,n}` (homogeneous only when the combined operators
    /// share an internal degree).
    pub fn combination(&self, res: &Resolution, coeffs: &[u32], n: usize) -> MatrixPoly {
        let f = res.field();
        let mut cols: Vec<Vector> = vec![Vector::zero(); res.shifts_at(n).len()];
        let mut col_shifts = res.shifts_at(n).to_vec();
        for (i, &a) in coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let t = &self.t[i][n];
            col_shifts = t.col_shifts.clone();
            for (c, tc) in cols.iter_mut().zip(&t.columns) {
                *c = c.add(&f, &tc.scale(&f, a));
            }
        }
        MatrixPoly { row_shifts: res.shifts_at(n.saturating_sub(2)).to_vec(), col_shifts, columns: cols }
    }
}

/// Computes `t~_{i,n}` for all `2 <= n <= computed length` by dividing each
/// entry of `d~_{n-1} d~_n` by the relations with cofactor tracking.
pub fn eisenbud_operators(res: &Resolution) -> Result<Operators> {
    operators_for_lift(res, &res.maps)
}

/// Operators for an arbitrary lift `lifts[n - 1]` of `d_n` to `S`.
pub fn operators_for_lift(res: &Resolution, lifts: &[MatrixPoly]) -> Result<Operators> {
    let field = res.field();
    let rels = res.ring.relations();
    let c = rels.len();
    let degs = res.ring.relation_degrees();
    let div = CofactorDivider::new(field, rels)?;
    let mut t: Vec<Vec<MatrixPoly>> = vec![Vec::new(); c];
    let top = res.computed_length();
    for n in 0..=top {
        if n < 2 {
            for (i, ti) in t.iter_mut().enumerate() {
                let cs = res.shifts_at(n).iter().map(|s| s - degs[i] as i32).collect();
                ti.push(MatrixPoly::zero(Vec::new(), cs));
            }
            continue;
        }
        let prod = lifts[n - 2].compose(&field, &lifts[n - 1]);
        let rows = prod.nrows();
        let mut cols: Vec<Vec<Vec<Poly>>> = vec![Vec::with_capacity(prod.ncols()); c];
        for col in &prod.columns {
            let entries = col.to_polys(rows);
            let mut per_op: Vec<Vec<Poly>> = vec![vec![Poly::zero(); rows]; c];
            for (k, p) in entries.iter().enumerate() {
                let q = div.divide(p).ok_or_else(|| {
                    Error::Internal(format!("entry of d~^2 in homological degree {n} is not in the ideal"))
                })?;
                for i in 0..c {
                    per_op[i][k] = q[i].clone();
                }
            }
            for i in 0..c {
                cols[i].push(std::mem::take(&mut per_op[i]));
            }
        }
        for i in 0..c {
            let col_shifts: Vec<i32> = res.shifts_at(n).iter().map(|s| s - degs[i] as i32).collect();
            let columns = cols[i].iter().map(|ps| Vector::from_polys(ps)).collect();
            t[i].push(MatrixPoly::new(res.shifts_at(n - 2).to_vec(), col_shifts, columns)?);
        }
    }
    Ok(Operators { t })
}

/// A random lift of the differentials: `d_n + sum_i f_i A_{i,n}` with
/// random homogeneous matrices `A_{i,n}`.
pub fn random_lift(res: &Resolution, rng: &mut impl rand::Rng) -> Vec<MatrixPoly> {
    let f = res.field();
    let nvars = res.ring.nvars();
    let rels = res.ring.relations();
    res.maps
        .iter()
        .map(|d| {
            let columns = d
                .columns
                .iter()
                .enumerate()
                .map(|(j, col)| {
                    let mut col = col.clone();
                    for (k, &rs) in d.row_shifts.iter().enumerate() {
                        for g in rels {
                            let deg = d.col_shifts[j] - rs - g.degree().unwrap() as i32;
                            if deg < 0 {
                                continue;
                            }
                            let terms = Monomial::all_of_degree(nvars, deg as u32)
                                .into_iter()
                                .map(|m| (m, rng.gen_range(0..f.p())))
                                .collect();
                            let a = Poly::from_terms(&f, terms);
                            col = col.add(&f, &Vector::from_poly(&a.mul(&f, g), k));
                        }
                    }
                    col
                })
                .collect();
            MatrixPoly { row_shifts: d.row_shifts.clone(), col_shifts: d.col_shifts.clone(), columns }
        })
        .collect()
}

/// Verifies `d~_{n-1} d~_n = sum_i f_i t~_{i,n}` exactly over `S` for the
/// stored lift.
pub fn check_operator_identity(res: &Resolution, ops: &Operators) -> bool {
    check_identity_for_lift(res, &res.maps, ops)
}

pub fn check_identity_for_lift(res: &Resolution, lifts: &[MatrixPoly], ops: &Operators) -> bool {
    let f = res.field();
    let rels = res.ring.relations();
    for n in 2..=res.computed_length() {
        let prod = lifts[n - 2].compose(&f, &lifts[n - 1]);
        for j in 0..prod.ncols() {
            let mut acc = prod.columns[j].clone();
            for (i, g) in rels.iter().enumerate() {
                acc = acc.sub(&f, &ops.t[i][n].columns[j].mul_poly(&f, g));
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}
