//! The complex `F ⊗ N` for a resolution `F` of `M`, with homology computed
//! either from Hilbert series of cokernels or degree by degree.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::algebra::{FieldElem, MatrixF, MatrixPoly, Monomial, PrimeField, Term, Vector};
use crate::error::{Error, Result};
use crate::graded::Module;
use crate::groebner::{GBasis, HilbertSeries};
use crate::resolution::Resolution;

/// Basis of `(F_n ⊗ N)_d`: pairs (tensor component `i * rank N + j`,
/// standard monomial of `N` in component `j`).
#[derive(Debug)]
pub struct Piece {
    pub basis: Vec<(u32, Monomial)>,
    index: HashMap<(u32, Monomial), usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

type NormalForm = Vec<(u32, Monomial, FieldElem)>;

pub struct TensorComplex<'a> {
    pub res: &'a Resolution,
    /// Pruned presentation of the second argument.
    pub n: Module,
    field: PrimeField,
    ngb: GBasis,
    n_series: HilbertSeries,
    leads: Vec<Vec<Monomial>>,
    standard: RefCell<Vec<Vec<Vec<Monomial>>>>,
    normal_forms: RefCell<HashMap<(u32, Monomial), Rc<NormalForm>>>,
    pieces: RefCell<HashMap<(usize, i32), Rc<Piece>>>,
    ranks: RefCell<HashMap<(usize, i32), usize>>,
    cokernels: RefCell<HashMap<usize, HilbertSeries>>,
}

impl<'a> TensorComplex<'a> {
    pub fn new(res: &'a Resolution, n: &Module) -> Result<TensorComplex<'a>> {
        if n.ring != res.ring {
            return Err(Error::RingMismatch);
        }
        let n = n.pruned()?;
        let ngb = n.gb()?;
        let n_series = n.hilbert_series()?;
        let leads = ngb.lead_monomials();
        let rank = n.rank();
        Ok(TensorComplex {
            res,
            field: res.field(),
            ngb,
            n_series,
            leads,
            standard: RefCell::new(vec![Vec::new(); rank]),
            normal_forms: RefCell::new(HashMap::new()),
            pieces: RefCell::new(HashMap::new()),
            ranks: RefCell::new(HashMap::new()),
            cokernels: RefCell::new(HashMap::new()),
            n,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn nb(&self) -> usize {
        self.n.rank()
    }

    /// Lowest internal degree of `F_n ⊗ N`, `None` when `F_n = 0` or `N = 0`.
    pub fn low_degree(&self, n: usize) -> Option<i32> {
        let a = self.res.shifts_at(n).iter().min()?;
        let b = self.n.shifts.iter().min()?;
        Some(a + b)
    }

    /// Standard monomials of degree `e` in component `j` of `N`, generated
    /// one degree at a time from the order ideal property.
    fn standard(&self, j: usize, e: i32) -> Vec<Monomial> {
        if e < 0 {
            return Vec::new();
        }
        let mut all = self.standard.borrow_mut();
        let levels = &mut all[j];
        let nvars = self.n.ring.nvars();
        let leads = &self.leads[j];
        let is_standard = |m: &Monomial| !leads.iter().any(|l| l.divides(m));
        while levels.len() <= e as usize {
            let next: Vec<Monomial> = match levels.last() {
                None => [Monomial::ONE].into_iter().filter(is_standard).collect(),
                Some(prev) => {
                    let mut set = BTreeSet::new();
                    for m in prev {
                        for v in 0..nvars {
                            let w = m.mul(&Monomial::var(v));
                            if is_standard(&w) {
                                set.insert(w);
                            }
                        }
                    }
                    set.into_iter().rev().collect()
                }
            };
            levels.push(next);
        }
        levels[e as usize].clone()
    }

    /// Normal form of `m e_j` in `N`.
    fn normal_form(&self, j: u32, m: Monomial) -> Rc<NormalForm> {
        if let Some(v) = self.normal_forms.borrow().get(&(j, m)) {
            return v.clone();
        }
        let v = Vector::from_sorted(vec![Term { mono: m, comp: j, coef: 1 }]);
        let r = self.ngb.engine().reduce(&v);
        let nf: Rc<NormalForm> = Rc::new(r.terms().iter().map(|t| (t.comp, t.mono, t.coef)).collect());
        self.normal_forms.borrow_mut().insert((j, m), nf.clone());
        nf
    }

    pub fn piece(&self, n: usize, d: i32) -> Rc<Piece> {
        if let Some(p) = self.pieces.borrow().get(&(n, d)) {
            return p.clone();
        }
        let nb = self.nb();
        let mut basis = Vec::new();
        for (i, &s) in self.res.shifts_at(n).iter().enumerate() {
            for (j, &b) in self.n.shifts.iter().enumerate() {
                for m in self.standard(j, d - s - b) {
                    basis.push(((i * nb + j) as u32, m));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let p = Rc::new(Piece { basis, index });
        self.pieces.borrow_mut().insert((n, d), p.clone());
        p
    }

    /// Matrix of `map ⊗ N: (F_src ⊗ N)_{d_src} -> (F_tgt ⊗ N)_{d_src - deg}`
    /// where `map` lowers internal degree by `deg`.
    pub fn matrix(&self, map: &MatrixPoly, src: usize, d_src: i32, tgt: usize, deg: i32) -> MatrixF {
        let f = self.field;
        let nb = self.nb() as u32;
        let sp = self.piece(src, d_src);
        let tp = self.piece(tgt, d_src - deg);
        let mut out = MatrixF::zeros(tp.dim(), sp.dim());
        for (col, &(c, m)) in sp.basis.iter().enumerate() {
            let (i, j) = (c / nb, c % nb);
            for t in map.columns[i as usize].terms() {
                for &(j2, m2, c2) in self.normal_form(j, t.mono.mul(&m)).iter() {
                    let row = tp.index[&(t.comp * nb + j2, m2)];
                    let v = f.add(out.get(row, col), f.mul(t.coef, c2));
                    out.set(row, col, v);
                }
            }
        }
        out
    }

    /// Matrix of `d_n ⊗ N` in degree `d` (empty for `n = 0`).
    pub fn differential(&self, n: usize, d: i32) -> MatrixF {
        if n == 0 {
            return MatrixF::zeros(0, self.piece(0, d).dim());
        }
        if self.res.shifts_at(n).is_empty() {
            return MatrixF::zeros(self.piece(n - 1, d).dim(), 0);
        }
        self.matrix(&self.res.map(n), n, d, n - 1, 0)
    }

    fn differential_rank(&self, n: usize, d: i32) -> usize {
        if let Some(&r) = self.ranks.borrow().get(&(n, d)) {
            return r;
        }
        let r = self.differential(n, d).rank(&self.field);
        self.ranks.borrow_mut().insert((n, d), r);
        r
    }

    /// `dim_k H_n(F ⊗ N)_d` by linear algebra.
    pub fn homology_dim(&self, n: usize, d: i32) -> i64 {
        let dim = self.piece(n, d).dim();
        if dim == 0 {
            return 0;
        }
        (dim - self.differential_rank(n, d) - self.differential_rank(n + 1, d)) as i64
    }

    /// Basis of the cycles `Z_n` in degree `d`, as columns.
    pub fn cycles(&self, n: usize, d: i32) -> MatrixF {
        self.differential(n, d).kernel_basis(&self.field)
    }

    /// Spanning set of the boundaries `B_n` in degree `d`, as columns.
    pub fn boundaries(&self, n: usize, d: i32) -> MatrixF {
        if self.res.shifts_at(n + 1).is_empty() {
            return MatrixF::zeros(self.piece(n, d).dim(), 0);
        }
        self.differential(n + 1, d)
    }

    /// Hilbert series of `F_n ⊗ N`.
    pub fn chain_series(&self, n: usize) -> HilbertSeries {
        let mut hs = HilbertSeries::zero(self.n.ring.nvars());
        for &s in self.res.shifts_at(n) {
            hs = hs.add(&self.n_series.shift(s));
        }
        hs
    }

    /// Hilbert series of `coker(d_n ⊗ N)`, computed from a Gröbner basis of
    /// the image of `d_n` plus the relations of `N` in every block.
    fn cokernel_series(&self, n: usize) -> Result<HilbertSeries> {
        if n == 0 {
            return Ok(HilbertSeries::zero(self.n.ring.nvars()));
        }
        if let Some(hs) = self.cokernels.borrow().get(&n) {
            return Ok(hs.clone());
        }
        let target = Module::free(self.n.ring.clone(), self.res.shifts_at(n - 1).to_vec());
        let mut p = target.tensor(&self.n)?;
        if !self.res.shifts_at(n).is_empty() {
            let nb = self.nb() as u32;
            for col in &self.res.map(n).columns {
                for j in 0..nb {
                    let v = col.remap_monotone(|k| k * nb + j);
                    if !v.is_zero() {
                        p.relations.push(v);
                    }
                }
            }
        }
        let hs = p.hilbert_series()?;
        self.cokernels.borrow_mut().insert(n, hs.clone());
        Ok(hs)
    }

    /// Hilbert series of `H_n(F ⊗ N)` from
    /// `HS(H_n) = HS(coker d_n) + HS(coker d_{n+1}) - HS(F_{n-1} ⊗ N)`.
    pub fn homology_series(&self, n: usize) -> Result<HilbertSeries> {
        let mut hs = self.cokernel_series(n)?.add(&self.cokernel_series(n + 1)?);
        if n > 0 {
            hs = hs.sub(&self.chain_series(n - 1));
        }
        Ok(hs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::resolve;
    use crate::resolution::tests::{quo, ring};

    #[test]
    fn periodic_complex_homology() {
        let r = ring(&["x", "y"], &["x*y"]);
        let res = resolve(&quo(&r, &["x"]), 6).unwrap();
        let cx = TensorComplex::new(&res, &quo(&r, &["y"])).unwrap();
        for n in 0..=5 {
            let expect = if n % 2 == 0 { 1 } else { 0 };
            let hs = cx.homology_series(n).unwrap();
            assert_eq!(hs.length(), Some(expect), "exact H_{n}");
            let total: i64 = (0..=n as i32 + 4).map(|d| cx.homology_dim(n, d)).sum();
            assert_eq!(total, expect, "degreewise H_{n}");
        }
        // Tor_2 sits in degree 2
        assert_eq!(cx.homology_dim(2, 2), 1);
    }

    #[test]
    fn koszul_complex_is_acyclic() {
        let s = ring(&["x", "y"], &[]);
        let res = resolve(&quo(&s, &["x", "y"]), 3).unwrap();
        let cx = TensorComplex::new(&res, &Module::free(s, vec![0])).unwrap();
        assert_eq!(cx.homology_series(0).unwrap().length(), Some(1));
        for n in 1..=2 {
            assert!(cx.homology_series(n).unwrap().is_zero());
            assert!((0..6).all(|d| cx.homology_dim(n, d) == 0));
        }
    }
}
