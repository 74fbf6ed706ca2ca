//! Induced action of Eisenbud operators on `Tor_n(M, N) -> Tor_{n-2}(M, N)`,
//! computed degree by degree on cycles modulo boundaries.

use serde::{Deserialize, Serialize};

use crate::algebra::{MatrixF, MatrixPoly};
use crate::error::{Error, Result};
use crate::resolution::Operators;

use super::{TensorComplex, TorTable};

fn hcat(a: &MatrixF, b: &MatrixF) -> MatrixF {
    assert_eq!(a.rows(), b.rows());
    let mut out = MatrixF::zeros(a.rows(), a.cols() + b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j));
        }
        for j in 0..b.cols() {
            out.set(i, a.cols() + j, b.get(i, j));
        }
    }
    out
}

/// Rank of the span of `vectors` modulo `B_n` in degree `d`.
fn rank_mod_boundaries(cx: &TensorComplex<'_>, n: usize, d: i32, vectors: &MatrixF) -> usize {
    let f = cx.field();
    let b = cx.boundaries(n, d);
    hcat(vectors, &b).rank(&f) - b.rank(&f)
}

/// Rank of the image of `op ⊗ N: H_n -> H_{n-2}` landing in internal degree
/// `d_tgt` (`op` lowers internal degree by `deg`), together with
/// `dim H_{n-2, d_tgt}`.
pub fn action_image_rank(cx: &TensorComplex<'_>, op: &MatrixPoly, deg: i32, n: usize, d_tgt: i32) -> (usize, usize) {
    let f = cx.field();
    let d_src = d_tgt + deg;
    let z = cx.cycles(n, d_src);
    let image = cx.matrix(op, n, d_src, n - 2, deg).mul(&f, &z);
    let target = cx.homology_dim(n - 2, d_tgt) as usize;
    (rank_mod_boundaries(cx, n - 2, d_tgt, &image), target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectivityCheck {
    pub n: usize,
    pub degree: i32,
    pub image_rank: usize,
    pub target_dim: usize,
}

impl SurjectivityCheck {
    pub fn passed(&self) -> bool {
        self.image_rank == self.target_dim
    }
}

/// Internal degree of the combination `sum a_i t_i`; all operators with a
/// nonzero coefficient must share it.
pub fn combination_degree(degrees: &[u32], coeffs: &[u32]) -> Result<i32> {
    let mut deg = None;
    for (&d, &a) in degrees.iter().zip(coeffs) {
        if a == 0 {
            continue;
        }
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => {
                return Err(Error::Input("operators of different degrees cannot be combined".into()))
            }
            _ => {}
        }
    }
    deg.map(|d| d as i32).ok_or_else(|| Error::DegenerateCoefficients("all coefficients are zero".into()))
}

/// Surjectivity of `sum a_i t_i: Tor_n -> Tor_{n-2}` for every `n` in
/// `window`, checked in every internal degree where `Tor_{n-2}` is nonzero.
pub fn form_is_surjective(
    cx: &TensorComplex<'_>,
    ops: &Operators,
    coeffs: &[u32],
    window: &[usize],
    table: &TorTable,
) -> Result<Vec<SurjectivityCheck>> {
    let deg = combination_degree(&cx.res.ring.relation_degrees(), coeffs)?;
    let mut out = Vec::new();
    for &n in window {
        if n < 2 {
            continue;
        }
        let op = ops.combination(cx.res, coeffs, n);
        for &(e, dim) in &table.graded[n - 2] {
            let (image_rank, target_dim) = action_image_rank(cx, &op, deg, n, e);
            if target_dim as i64 != dim {
                return Err(Error::Internal(format!("Tor_{} has dimension {target_dim} in degree {e}, table says {dim}", n - 2)));
            }
            out.push(SurjectivityCheck { n, degree: e, image_rank, target_dim });
        }
    }
    Ok(out)
}

/// Whether two chain maps of the same degree agree on homology in
/// `H_n -> H_{n-k}` for the nonzero pieces of `Tor_n`.
fn agree_on_homology(cx: &TensorComplex<'_>, a: &MatrixF, b: &MatrixF, tgt: usize, d_tgt: i32) -> bool {
    let f = cx.field();
    let mut diff = a.clone();
    for i in 0..diff.rows() {
        for j in 0..diff.cols() {
            diff.set(i, j, f.sub(a.get(i, j), b.get(i, j)));
        }
    }
    rank_mod_boundaries(cx, tgt, d_tgt, &diff) == 0
}

/// `t_i t_j = t_j t_i` on `Tor_n -> Tor_{n-4}` for all pairs `i < j`.
pub fn check_commutation(cx: &TensorComplex<'_>, ops: &Operators, n: usize, table: &TorTable) -> bool {
    if n < 4 {
        return true;
    }
    let f = cx.field();
    let degs = cx.res.ring.relation_degrees();
    for i in 0..ops.codim() {
        for j in i + 1..ops.codim() {
            let (di, dj) = (degs[i] as i32, degs[j] as i32);
            for &(d, _) in &table.graded[n] {
                let z = cx.cycles(n, d);
                let ij = cx
                    .matrix(&ops.t[i][n - 2], n - 2, d - dj, n - 4, di)
                    .mul(&f, &cx.matrix(&ops.t[j][n], n, d, n - 2, dj).mul(&f, &z));
                let ji = cx
                    .matrix(&ops.t[j][n - 2], n - 2, d - di, n - 4, dj)
                    .mul(&f, &cx.matrix(&ops.t[i][n], n, d, n - 2, di).mul(&f, &z));
                if !agree_on_homology(cx, &ij, &ji, n - 4, d - di - dj) {
                    return false;
                }
            }
        }
    }
    true
}

/// Operators from two different lifts induce the same maps on `Tor_n`.
pub fn check_lift_independence(cx: &TensorComplex<'_>, a: &Operators, b: &Operators, n: usize, table: &TorTable) -> bool {
    if n < 2 {
        return true;
    }
    let f = cx.field();
    let degs = cx.res.ring.relation_degrees();
    for (i, &di) in degs.iter().enumerate().take(a.codim()) {
        let di = di as i32;
        for &(d, _) in &table.graded[n] {
            let z = cx.cycles(n, d);
            let x = cx.matrix(&a.t[i][n], n, d, n - 2, di).mul(&f, &z);
            let y = cx.matrix(&b.t[i][n], n, d, n - 2, di).mul(&f, &z);
            if !agree_on_homology(cx, &x, &y, n - 2, d - di) {
                return false;
            }
        }
    }
    true
}
