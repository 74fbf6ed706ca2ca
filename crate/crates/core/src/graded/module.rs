//! Finitely generated graded modules given by presentations
//! `F_1 -> F_0 -> M -> 0` over a complete intersection.

use crate::algebra::{Echelon, MatrixPoly, Monomial, Poly, Vector};
use crate::error::{Error, Result};
use crate::groebner::hilbert::{module_series, HilbertSeries};
use crate::groebner::{buchberger, minimal_generators, GBasis};

use super::ring::CiRing;

/// `coker(S^relations -> F_0)` viewed over `ring`: the ring relations are
/// implicit in every component.
#[derive(Clone, Debug)]
pub struct Module {
    pub ring: CiRing,
    pub shifts: Vec<i32>,
    pub relations: Vec<Vector>,
}

impl Module {
    pub fn new(ring: CiRing, shifts: Vec<i32>, relations: Vec<Vector>) -> Result<Module> {
        // validates homogeneity and ranks
        let degs = relations
            .iter()
            .map(|r| r.degree(&shifts).unwrap_or(0))
            .collect();
        MatrixPoly::new(shifts.clone(), degs, relations.clone())?;
        Ok(Module { ring, shifts, relations })
    }

    /// The cyclic module `R / (gens)`.
    pub fn quotient(ring: CiRing, gens: &[Poly]) -> Result<Module> {
        let rels = gens.iter().filter(|g| !g.is_zero()).map(|g| Vector::from_poly(g, 0)).collect();
        Module::new(ring, vec![0], rels)
    }

    /// The free module `R(-a_1) + ... + R(-a_k)`.
    pub fn free(ring: CiRing, shifts: Vec<i32>) -> Module {
        Module { ring, shifts, relations: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn presentation(&self) -> MatrixPoly {
        let degs = self.relations.iter().map(|r| r.degree(&self.shifts).unwrap_or(0)).collect();
        MatrixPoly { row_shifts: self.shifts.clone(), col_shifts: degs, columns: self.relations.clone() }
    }

    /// Gröbner basis of the relation module (including ring relations).
    pub fn gb(&self) -> Result<GBasis> {
        buchberger(self.ring.poly.field, &self.shifts, &self.relations, self.ring.mode(), None)
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        let gb = self.gb()?;
        Ok(module_series(&gb.lead_monomials(), &self.shifts, self.ring.nvars()))
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.hilbert_series()?.is_zero())
    }

    /// Length, or `None` when infinite.
    pub fn length(&self) -> Result<Option<i64>> {
        Ok(self.hilbert_series()?.length())
    }

    /// Krull dimension, read off the pole order of the Hilbert series at
    /// `t = 1`; `None` for the zero module.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.hilbert_series()?.dimension())
    }

    /// Hilbert function `h(0..=max_degree)` by degreewise linear algebra:
    /// the dimension of `F_d` minus the rank of the span of all monomial
    /// multiples of relations (and ring relations) landing in degree `d`.
    pub fn hilbert_function_degreewise(&self, max_degree: i32) -> Vec<i64> {
        let f = self.ring.poly.field;
        let n = self.ring.nvars();
        let mut gens: Vec<(i32, Vector)> = self
            .relations
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| (r.degree(&self.shifts).unwrap(), r.clone()))
            .collect();
        for k in 0..self.rank() {
            for g in self.ring.relations() {
                let v = Vector::from_poly(g, k);
                gens.push((v.degree(&self.shifts).unwrap(), v));
            }
        }
        (0..=max_degree)
            .map(|d| {
                let mut basis: Vec<(u32, Monomial)> = Vec::new();
                for (k, &a) in self.shifts.iter().enumerate() {
                    if d >= a {
                        for m in Monomial::all_of_degree(n, (d - a) as u32) {
                            basis.push((k as u32, m));
                        }
                    }
                }
                let index: std::collections::HashMap<(u32, Monomial), usize> =
                    basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
                let mut ech = Echelon::new(f, basis.len());
                for (gd, g) in &gens {
                    if *gd > d {
                        continue;
                    }
                    for m in Monomial::all_of_degree(n, (d - gd) as u32) {
                        let mut row = vec![0u32; basis.len()];
                        for t in g.terms() {
                            row[index[&(t.comp, t.mono.mul(&m))]] = t.coef;
                        }
                        ech.insert(row);
                    }
                }
                (basis.len() - ech.rank()) as i64
            })
            .collect()
    }

    /// The same module regarded over `target`, whose defining ideal must be
    /// contained in that of `self.ring`; the missing ring relations become
    /// explicit relations.
    pub fn over_ring(&self, target: &CiRing) -> Result<Module> {
        if !target.ideal_within(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut relations = self.relations.clone();
        for g in self.ring.relations() {
            if target.ideal_contains(g) {
                continue;
            }
            for k in 0..self.rank() {
                relations.push(Vector::from_poly(g, k));
            }
        }
        Ok(Module { ring: target.clone(), shifts: self.shifts.clone(), relations })
    }

    /// The module regarded over the ambient polynomial ring.
    pub fn over_polynomial_ring(&self) -> Result<Module> {
        self.over_ring(&CiRing::polynomial(self.ring.poly.clone()))
    }

    /// `M ⊗ N`, generator `(i, j)` at index `i * rank(N) + j`.
    pub fn tensor(&self, other: &Module) -> Result<Module> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let nb = other.rank();
        let mut shifts = Vec::with_capacity(self.rank() * nb);
        for &a in &self.shifts {
            for &b in &other.shifts {
                shifts.push(a + b);
            }
        }
        let f = self.ring.poly.field;
        let mut relations = Vec::new();
        for r in &self.relations {
            for j in 0..nb {
                relations.push(r.remap(&f, |i| i * nb as u32 + j as u32));
            }
        }
        for i in 0..self.rank() {
            for r in &other.relations {
                relations.push(r.remap_monotone(|j| i as u32 * nb as u32 + j));
            }
        }
        Ok(Module { ring: self.ring.clone(), shifts, relations })
    }

    pub fn direct_sum(&self, other: &Module) -> Result<Module> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let off = self.rank() as u32;
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        let mut relations = self.relations.clone();
        relations.extend(other.relations.iter().map(|r| r.remap_monotone(|j| j + off)));
        Ok(Module { ring: self.ring.clone(), shifts, relations })
    }

    /// A minimal presentation: generators killed by relations with a unit
    /// entry are eliminated and the relations are replaced by a minimal
    /// generating set modulo the ring relations.
    pub fn pruned(&self) -> Result<Module> {
        let f = self.ring.poly.field;
        let mut shifts = self.shifts.clone();
        let mut rels: Vec<Vector> = self.relations.iter().filter(|r| !r.is_zero()).cloned().collect();
        loop {
            let found = rels.iter().enumerate().find_map(|(ci, r)| {
                r.terms().iter().find(|t| t.mono.is_one()).map(|t| (ci, t.comp, t.coef))
            });
            let Some((ci, k, c)) = found else { break };
            let pivot = rels.swap_remove(ci).scale(&f, f.inv(c));
            // e_k = e_k - pivot in M; substitute into the remaining relations
            rels = rels
                .into_iter()
                .map(|r| {
                    let pk = r.component(k as usize);
                    let mut out = r;
                    for &(m, a) in pk.terms() {
                        out = out.add_scaled(&f, &pivot, f.neg(a), &m);
                    }
                    out
                })
                .filter(|r| !r.is_zero())
                .map(|r| r.remap_monotone(|j| if j > k { j - 1 } else { j }))
                .collect();
            shifts.remove(k as usize);
        }
        let rels = minimal_generators(f, &shifts, self.ring.mode(), &rels, None)?;
        Ok(Module { ring: self.ring.clone(), shifts, relations: rels })
    }

    /// Depth at the irrelevant ideal, `dim S - pd_S(M)`.
    pub fn depth(&self) -> Result<usize> {
        if self.is_zero()? {
            return Err(Error::Input("depth of the zero module".into()));
        }
        let res = crate::resolution::min_resolution_s(self)?;
        Ok(self.ring.nvars() - res.length())
    }

    pub fn describe(&self) -> ModuleText {
        let p = self.presentation();
        ModuleText {
            ring: self.ring.tag.clone(),
            shifts: self.shifts.clone(),
            relations: p.display_rows(&self.ring.poly),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ModuleText {
    pub ring: String,
    pub shifts: Vec<i32>,
    pub relations: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::{PolyRing, PrimeField};

    fn setup(names: &[&str], rels: &[&str]) -> CiRing {
        let s = PolyRing::new(PrimeField::default(), names.iter().map(|x| x.to_string()).collect()).unwrap();
        let f: Vec<Poly> = rels.iter().map(|t| parse_poly(&s, t, 1, 1).unwrap()).collect();
        if f.is_empty() {
            CiRing::polynomial(s)
        } else {
            CiRing::new(s, f, "R").unwrap()
        }
    }

    fn quo(r: &CiRing, gens: &[&str]) -> Module {
        let g: Vec<Poly> = gens.iter().map(|t| parse_poly(&r.poly, t, 1, 1).unwrap()).collect();
        Module::quotient(r.clone(), &g).unwrap()
    }

    #[test]
    fn hilbert_function_examples() {
        let s = setup(&["x", "y"], &[]);
        let free = Module::free(s.clone(), vec![0]);
        assert_eq!(free.hilbert_series().unwrap().values(0, 3), vec![1, 2, 3, 4]);
        assert_eq!(free.hilbert_function_degreewise(3), vec![1, 2, 3, 4]);
        let m = quo(&s, &["x^2", "x*y", "y"]);
        assert_eq!(m.hilbert_function_degreewise(3), vec![1, 1, 0, 0]);
        assert_eq!(m.length().unwrap(), Some(2));
        assert_eq!(quo(&s, &["x"]).length().unwrap(), None);
        assert_eq!(quo(&s, &["x", "y"]).length().unwrap(), Some(1));

        let r = setup(&["x1", "x2", "y1", "y2"], &["x1*y1", "x2*y2"]);
        let m = quo(&r, &["x1", "x2"]);
        let expect: Vec<i64> = (0..6).map(|d| d + 1).collect();
        assert_eq!(m.hilbert_series().unwrap().values(0, 5), expect);
        assert_eq!(m.hilbert_function_degreewise(5), expect);
        assert_eq!(m.dimension().unwrap(), Some(2));
        assert_eq!(Module::free(r.clone(), vec![0]).dimension().unwrap(), Some(2));
    }

    #[test]
    fn staircase_matches_degreewise_on_a_binomial_ideal() {
        let s = setup(&["x", "y"], &[]);
        let m = quo(&s, &["x^2-y^2", "x*y-y^2"]);
        let hs = m.hilbert_series().unwrap();
        assert_eq!(hs.values(0, 12), m.hilbert_function_degreewise(12));
    }

    #[test]
    fn pruning_removes_unit_relations() {
        let s = setup(&["x", "y"], &[]);
        let f = s.poly.field;
        // coker [[1, x], [y, 0]] with shifts 0,1: e0 = -y e1, so M = S/(xy)(-1)
        let x = parse_poly(&s.poly, "x", 1, 1).unwrap();
        let y = parse_poly(&s.poly, "y", 1, 1).unwrap();
        let c0 = Vector::from_polys(&[Poly::constant(1), y.clone()]);
        let c1 = Vector::from_polys(&[x.clone(), Poly::zero()]);
        let m = Module::new(s.clone(), vec![1, 0], vec![c0, c1]).unwrap();
        let p = m.pruned().unwrap();
        assert_eq!(p.shifts, vec![0]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].component(0), x.mul(&f, &y));
        assert_eq!(p.hilbert_series().unwrap(), m.hilbert_series().unwrap());
    }

    #[test]
    fn tensor_of_cyclic_modules() {
        let r = setup(&["x", "y"], &["x*y"]);
        let m = quo(&r, &["x"]);
        let n = quo(&r, &["y"]);
        assert_eq!(m.tensor(&n).unwrap().length().unwrap(), Some(1));
    }

    #[test]
    fn restriction_of_scalars() {
        let r = setup(&["x", "y"], &["x*y"]);
        let m = quo(&r, &["x"]);
        let ms = m.over_polynomial_ring().unwrap();
        assert_eq!(ms.hilbert_series().unwrap().values(0, 4), m.hilbert_series().unwrap().values(0, 4));
        assert_eq!(ms.relations.len(), 2);
    }
}
