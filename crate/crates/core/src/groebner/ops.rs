//! Gröbner-based operations: bases over `S` or a quotient `R = S/(f)`,
//! normal forms, syzygies/kernels, minimal generators and ideal membership
//! with cofactors.

use crate::algebra::{MatrixPoly, Poly, PrimeField, Vector};
use crate::error::{Error, Result};

use super::engine::GbEngine;

/// Whether computations happen in free `S`-modules or free `R`-modules, with
/// `R` given by a Gröbner basis of its defining ideal.
#[derive(Clone, Copy, Debug)]
pub enum RingMode<'a> {
    OverS,
    OverR(&'a [Poly]),
}

impl<'a> RingMode<'a> {
    pub fn relations(&self) -> &'a [Poly] {
        match self {
            RingMode::OverS => &[],
            RingMode::OverR(g) => g,
        }
    }
}

/// Inserts `g * e_k` for every ring relation `g` and every component `k`.
fn add_ring_relations(e: &mut GbEngine, mode: RingMode<'_>) -> Result<usize> {
    let rels = mode.relations();
    let rank = e.rank();
    let mut vs = Vec::with_capacity(rels.len() * rank);
    for k in 0..rank {
        for g in rels {
            vs.push(Vector::from_poly(g, k));
        }
    }
    let n = vs.len();
    e.add_known_basis(vs)?;
    Ok(n)
}

/// A Gröbner basis of a submodule of a shifted free module.
#[derive(Clone, Debug)]
pub struct GBasis {
    pub shifts: Vec<i32>,
    /// Reduced basis; in `OverR` mode the ring relations `g * e_k` are
    /// included (they are part of the submodule of `S^r` that is computed).
    pub generators: Vec<Vector>,
    engine: GbEngine,
}

impl GBasis {
    pub fn engine(&self) -> &GbEngine {
        &self.engine
    }

    pub fn normal_form(&self, v: &Vector) -> Result<Vector> {
        if v.max_comp().is_some_and(|c| c as usize >= self.shifts.len()) {
            return Err(Error::Input("vector outside the ambient free module".into()));
        }
        Ok(self.engine.reduce(v))
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.engine.contains(v)
    }

    pub fn lead_monomials(&self) -> Vec<Vec<crate::algebra::Monomial>> {
        self.engine.lead_monomials()
    }

    /// Complete through the given degree (or entirely).
    pub fn is_complete(&self) -> bool {
        self.engine.is_complete()
    }
}

/// Gröbner basis of the submodule generated by the given homogeneous vectors
/// (plus the ring relations in `OverR` mode), up to degree `cap`.
pub fn buchberger(
    field: PrimeField,
    shifts: &[i32],
    gens: &[Vector],
    mode: RingMode<'_>,
    cap: Option<i32>,
) -> Result<GBasis> {
    let mut e = GbEngine::new(field, shifts.to_vec());
    add_ring_relations(&mut e, mode)?;
    for g in gens {
        e.add_generator(g.clone())?;
    }
    e.compute(cap);
    let generators = e.reduced_basis();
    Ok(GBasis { shifts: shifts.to_vec(), generators, engine: e })
}

/// Generators of the kernel of `phi: F -> G` (columns of `phi` are the images
/// of the basis of `F`) over `S` or over `R`. In `OverR` mode the result
/// generates the kernel modulo `(f) F`, and every vector is in normal form
/// modulo the ring relations.
///
/// The returned vectors form a Gröbner basis of that kernel (together with
/// the ring relations), complete through degree `cap`.
pub fn kernel(field: PrimeField, phi: &MatrixPoly, mode: RingMode<'_>, cap: Option<i32>) -> Result<Vec<Vector>> {
    let r = phi.nrows();
    let s = phi.ncols();
    let mut shifts = phi.row_shifts.clone();
    shifts.extend_from_slice(&phi.col_shifts);
    let mut e = GbEngine::new(field, shifts);
    let known = add_ring_relations(&mut e, mode)?;
    for (j, col) in phi.columns.iter().enumerate() {
        let v = col.add(&field, &Vector::unit(r + j));
        e.add_generator(v)?;
    }
    e.compute(cap);
    let mut out = Vec::new();
    for v in &e.basis()[known..] {
        let lead = v.lead().unwrap();
        if lead.comp as usize >= r {
            out.push(v.restrict(r as u32, (r + s) as u32));
        }
    }
    Ok(out)
}

/// Syzygies of the generators of a basis: the kernel of the map from the free
/// module on the basis elements.
pub fn syzygies(field: PrimeField, gb: &GBasis, mode: RingMode<'_>) -> Result<MatrixPoly> {
    let col_shifts: Vec<i32> =
        gb.generators.iter().map(|g| g.degree(&gb.shifts).unwrap_or(0)).collect();
    let phi = MatrixPoly::new(gb.shifts.clone(), col_shifts.clone(), gb.generators.clone())?;
    let ker = kernel(field, &phi, mode, None)?;
    let ker = minimal_generators(field, &col_shifts, mode, &ker, None)?;
    let shifts = ker.iter().map(|v| v.degree(&col_shifts).unwrap()).collect();
    MatrixPoly::new(col_shifts, shifts, ker)
}

/// A minimal homogeneous generating set of the submodule generated by
/// `candidates` modulo the ring relations (for `OverR`). Returned vectors are
/// normal forms with respect to earlier choices, in ascending degree.
///
/// Candidates above `cap` are ignored.
pub fn minimal_generators(
    field: PrimeField,
    shifts: &[i32],
    mode: RingMode<'_>,
    candidates: &[Vector],
    cap: Option<i32>,
) -> Result<Vec<Vector>> {
    let mut e = GbEngine::new(field, shifts.to_vec());
    add_ring_relations(&mut e, mode)?;
    let mut cands: Vec<(i32, &Vector)> = Vec::with_capacity(candidates.len());
    for c in candidates {
        if c.is_zero() {
            continue;
        }
        if !c.is_homogeneous(shifts) {
            return Err(Error::NonHomogeneous(format!("{c:?}")));
        }
        let d = c.degree(shifts).unwrap();
        if cap.is_some_and(|m| d > m) {
            continue;
        }
        cands.push((d, c));
    }
    cands.sort_by_key(|c| c.0);
    let mut chosen = Vec::new();
    for (d, c) in cands {
        e.compute(Some(d));
        let r = e.reduce(c);
        if !r.is_zero() {
            let r = r.monic(&field);
            chosen.push(r.clone());
            e.insert_reduced(r);
        }
    }
    Ok(chosen)
}

/// Ideal membership with cofactors: for `p` in `(f_1..f_c)` returns `q` with
/// `p = sum q_i f_i`.
#[derive(Clone, Debug)]
pub struct CofactorDivider {
    field: PrimeField,
    ngens: usize,
    engine: GbEngine,
}

impl CofactorDivider {
    pub fn new(field: PrimeField, gens: &[Poly]) -> Result<CofactorDivider> {
        let mut shifts = vec![0];
        for g in gens {
            if !g.is_homogeneous() || g.is_zero() {
                return Err(Error::NonHomogeneous("ideal generator".into()));
            }
            shifts.push(g.degree().unwrap() as i32);
        }
        let mut e = GbEngine::new(field, shifts);
        for (i, g) in gens.iter().enumerate() {
            e.add_generator(Vector::from_poly(g, 0).add(&field, &Vector::unit(i + 1)))?;
        }
        e.compute(None);
        Ok(CofactorDivider { field, ngens: gens.len(), engine: e })
    }

    pub fn divide(&self, p: &Poly) -> Option<Vec<Poly>> {
        if p.is_zero() {
            return Some(vec![Poly::zero(); self.ngens]);
        }
        let r = self.engine.reduce(&Vector::from_poly(p, 0));
        if !r.component(0).is_zero() {
            return None;
        }
        let neg = r.neg(&self.field);
        Some((1..=self.ngens).map(|i| neg.component(i)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::PolyRing;

    fn ring(names: &[&str]) -> PolyRing {
        PolyRing::new(PrimeField::default(), names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn p(r: &PolyRing, s: &str) -> Poly {
        parse_poly(r, s, 1, 1).unwrap()
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring(&["x", "y"]);
        let gens = [Vector::from_poly(&p(&r, "x"), 0), Vector::from_poly(&p(&r, "y"), 0)];
        let gb = buchberger(r.field, &[0], &gens, RingMode::OverS, None).unwrap();
        let syz = syzygies(r.field, &gb, RingMode::OverS).unwrap();
        assert_eq!(syz.ncols(), 1);
        let col = syz.columns[0].to_polys(2);
        // generators sorted descending: x then y, syzygy (y, -x) up to scaling
        let f = r.field;
        assert_eq!(col[0], p(&r, "y").scale(&f, col[0].lead().unwrap().1));
        assert!(gb_product_is_zero(&r, &gb, &syz));
    }

    fn gb_product_is_zero(r: &PolyRing, gb: &GBasis, syz: &MatrixPoly) -> bool {
        let cols: Vec<i32> = gb.generators.iter().map(|g| g.degree(&gb.shifts).unwrap()).collect();
        let m = MatrixPoly::new(gb.shifts.clone(), cols, gb.generators.clone()).unwrap();
        m.compose(&r.field, syz).is_zero()
    }

    #[test]
    fn free_module_has_no_syzygies() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(r.field, &[0], &[Vector::from_poly(&p(&r, "x"), 0)], RingMode::OverS, None).unwrap();
        assert_eq!(syzygies(r.field, &gb, RingMode::OverS).unwrap().ncols(), 0);
    }

    #[test]
    fn syzygy_over_hypersurface() {
        let r = ring(&["x", "y"]);
        let rel = [p(&r, "x*y")];
        let mode = RingMode::OverR(&rel);
        let gb = buchberger(r.field, &[0], &[Vector::from_poly(&p(&r, "x"), 0)], mode, None).unwrap();
        // xy*e1 lies in the submodule over R and reduces to zero
        let xy = Vector::from_poly(&p(&r, "x*y"), 0);
        assert!(gb.normal_form(&xy).unwrap().is_zero());
        let phi = MatrixPoly::new(vec![0], vec![1], vec![Vector::from_poly(&p(&r, "x"), 0)]).unwrap();
        let k = kernel(r.field, &phi, mode, None).unwrap();
        let k = minimal_generators(r.field, &[1], mode, &k, None).unwrap();
        assert_eq!(k, vec![Vector::from_poly(&p(&r, "y"), 0)]);
    }

    #[test]
    fn normal_form_modulo_ring_relation() {
        let r = ring(&["x", "y"]);
        let rel = [p(&r, "x*y")];
        let gb = buchberger(r.field, &[0], &[], RingMode::OverR(&rel), None).unwrap();
        assert!(gb.normal_form(&Vector::from_poly(&p(&r, "x*y"), 0)).unwrap().is_zero());
    }

    #[test]
    fn cofactors_reconstruct_the_element() {
        let r = ring(&["a", "b", "c", "d"]);
        let f = r.field;
        let gens = [p(&r, "a*d-b*c"), p(&r, "b^2")];
        let div = CofactorDivider::new(f, &gens).unwrap();
        let target = p(&r, "(a*d-b*c)*(a+c)*a + b^2*d*a - 3*b^2*c^2 + (a*d-b*c)*b*c");
        let q = div.divide(&target).unwrap();
        let back = q[0].mul(&f, &gens[0]).add(&f, &q[1].mul(&f, &gens[1]));
        assert_eq!(back, target);
        assert!(div.divide(&p(&r, "a^2")).is_none());
    }
}
