//! Minimal graded free resolutions over `S` and over complete intersections,
//! and Eisenbud operators obtained by lifting a resolution to `S`.

mod operators;

pub use operators::{
    check_identity_for_lift, check_operator_identity, eisenbud_operators, operators_for_lift, random_lift, Operators,
};

use crate::algebra::{MatrixPoly, PrimeField, Vector};
use crate::error::{Error, Result};
use crate::graded::{CiRing, Module};
use crate::groebner::{kernel, minimal_generators};

/// Extra degrees computed beyond the a priori generator degree bound; any
/// minimal generator found there would indicate an engine bug.
pub const DEGREE_MARGIN: i32 = 2;

/// A prefix `F_L -> ... -> F_0` of a minimal graded free resolution.
///
/// Differentials are stored as `S`-matrices whose entries are normal forms
/// modulo the ring relations; they double as the lifted differentials.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub ring: CiRing,
    /// Minimal presentation of the resolved module.
    pub module: Module,
    /// Generator degrees of `F_0, F_1, ...`.
    pub shifts: Vec<Vec<i32>>,
    /// `maps[n - 1]` is `d_n: F_n -> F_{n-1}`.
    pub maps: Vec<MatrixPoly>,
    /// Whether the resolution is known to stop (`F_{L+1} = 0`).
    pub finished: bool,
    /// A priori bounds on generator degrees, when the ring is not `S`.
    pub degree_bounds: Option<Vec<i32>>,
}

impl Resolution {
    pub fn field(&self) -> PrimeField {
        self.ring.poly.field
    }

    /// Number of computed differentials.
    pub fn computed_length(&self) -> usize {
        self.maps.len()
    }

    /// Projective dimension (only meaningful when `finished`).
    pub fn length(&self) -> usize {
        let mut l = self.shifts.len() - 1;
        while l > 0 && self.shifts[l].is_empty() {
            l -= 1;
        }
        l
    }

    pub fn betti(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }

    /// Generator degrees of `F_n` (empty beyond a finished resolution).
    pub fn shifts_at(&self, n: usize) -> &[i32] {
        self.shifts.get(n).map_or(&[], |s| s.as_slice())
    }

    /// Whether `F_n` is known (computed or past the end of a finished
    /// resolution).
    pub fn knows(&self, n: usize) -> bool {
        n < self.shifts.len() || self.finished
    }

    /// `d_n: F_n -> F_{n-1}` for `n >= 1`; zero maps past the end.
    pub fn map(&self, n: usize) -> MatrixPoly {
        assert!(n >= 1);
        match self.maps.get(n - 1) {
            Some(m) => m.clone(),
            None => {
                assert!(self.finished, "map {n} not computed");
                MatrixPoly::zero(self.shifts_at(n - 1).to_vec(), self.shifts_at(n).to_vec())
            }
        }
    }

    pub fn max_degree(&self, n: usize) -> Option<i32> {
        self.shifts_at(n).iter().copied().max()
    }

    /// Whether every differential has entries in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.is_minimal())
    }

    /// Checks `d_{n-1} d_n = 0` over the ring for every computed `n`.
    pub fn check_complex(&self) -> bool {
        let f = self.field();
        let mut e = crate::groebner::GbEngine::new(f, vec![0]);
        e.add_known_basis(self.ring.gb().iter().map(|g| Vector::from_poly(g, 0))).unwrap();
        for n in 2..=self.maps.len() {
            let prod = self.maps[n - 2].compose(&f, &self.maps[n - 1]);
            for col in &prod.columns {
                for k in 0..prod.nrows() {
                    let p = col.component(k);
                    if !e.reduce(&Vector::from_poly(&p, 0)).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Upper bounds on the generator degrees of a minimal resolution over
/// `R = S/(f)`, from the Eisenbud-Shamash construction: the generators of
/// `F_n` have degree at most `max_{j + 2k = n} (maxdeg G_j + k * max deg f)`
/// where `G` resolves the module over `S`.
pub fn degree_bounds(s_res: &Resolution, ring: &CiRing, nmax: usize) -> Vec<i32> {
    let fmax = ring.max_relation_degree() as i32;
    let pd = s_res.length();
    (0..=nmax)
        .map(|n| {
            let mut best = i32::MIN;
            for j in 0..=pd.min(n) {
                if (n - j) % 2 != 0 {
                    continue;
                }
                if let Some(g) = s_res.max_degree(j) {
                    best = best.max(g + ((n - j) / 2) as i32 * fmax);
                }
            }
            best
        })
        .collect()
}

/// Minimal graded free resolution of `module` over its ring, up to and
/// including `F_{len}`. Over `S` the computation stops early once the
/// resolution ends.
pub fn resolve(module: &Module, len: usize) -> Result<Resolution> {
    let ring = module.ring.clone();
    let f = ring.poly.field;
    let pruned = module.pruned()?;
    let bounds = if ring.codim() > 0 {
        let s_res = min_resolution_s(module)?;
        Some(degree_bounds(&s_res, &ring, len + 1))
    } else {
        None
    };
    let mut shifts = vec![pruned.shifts.clone()];
    let mut maps = Vec::new();
    let mut finished = false;
    if len >= 1 {
        if pruned.relations.is_empty() {
            finished = true;
        } else {
            let p = pruned.presentation();
            shifts.push(p.col_shifts.clone());
            maps.push(p);
        }
    }
    let mut n = 1;
    while !finished && n < len {
        let d = &maps[n - 1];
        let cap = bounds.as_ref().map(|b| b[n + 1] + DEGREE_MARGIN);
        let ker = kernel(f, d, ring.mode(), cap)?;
        let gens = minimal_generators(f, &d.col_shifts, ring.mode(), &ker, cap)?;
        if gens.is_empty() {
            finished = true;
            break;
        }
        let col_shifts: Vec<i32> = gens.iter().map(|g| g.degree(&d.col_shifts).unwrap()).collect();
        if let Some(b) = &bounds {
            if let Some(&top) = col_shifts.iter().max() {
                if top > b[n + 1] {
                    return Err(Error::DegreeBound(format!(
                        "generator of degree {top} in homological degree {} exceeds the bound {}",
                        n + 1,
                        b[n + 1]
                    )));
                }
            }
        }
        let m = MatrixPoly::new(d.col_shifts.clone(), col_shifts.clone(), gens)?;
        shifts.push(col_shifts);
        maps.push(m);
        n += 1;
    }
    Ok(Resolution { ring, module: pruned, shifts, maps, finished, degree_bounds: bounds })
}

/// The complete minimal free resolution of `module` regarded as an
/// `S`-module (finite by Hilbert's syzygy theorem).
pub fn min_resolution_s(module: &Module) -> Result<Resolution> {
    let m = module.over_polynomial_ring()?;
    let res = resolve(&m, m.ring.nvars() + 1)?;
    if !res.finished {
        return Err(Error::Internal("resolution over S did not terminate".into()));
    }
    Ok(res)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::{Poly, PolyRing};

    pub(crate) fn ring(names: &[&str], rels: &[&str]) -> CiRing {
        let s = PolyRing::new(PrimeField::default(), names.iter().map(|x| x.to_string()).collect()).unwrap();
        let f: Vec<Poly> = rels.iter().map(|t| parse_poly(&s, t, 1, 1).unwrap()).collect();
        if f.is_empty() {
            CiRing::polynomial(s)
        } else {
            CiRing::new(s, f, "R").unwrap()
        }
    }

    pub(crate) fn quo(r: &CiRing, gens: &[&str]) -> Module {
        let g: Vec<Poly> = gens.iter().map(|t| parse_poly(&r.poly, t, 1, 1).unwrap()).collect();
        Module::quotient(r.clone(), &g).unwrap()
    }

    #[test]
    fn koszul_resolution_of_residue_field() {
        let s = ring(&["x", "y"], &[]);
        let res = min_resolution_s(&quo(&s, &["x", "y"])).unwrap();
        assert_eq!(res.betti(), vec![1, 2, 1]);
        assert!(res.is_minimal() && res.check_complex());
        assert_eq!(quo(&s, &["x", "y"]).depth().unwrap(), 0);
        assert_eq!(Module::free(s, vec![0]).depth().unwrap(), 2);
    }

    #[test]
    fn hilbert_burch_shape() {
        let s = ring(&["x", "y"], &[]);
        let res = min_resolution_s(&quo(&s, &["x^2", "x*y"])).unwrap();
        assert_eq!(res.betti(), vec![1, 2, 1]);
        assert_eq!(res.shifts[2], vec![3]);
    }

    #[test]
    fn complete_intersection_over_s() {
        let s = ring(&["x1", "x2", "y1", "y2"], &[]);
        let res = min_resolution_s(&quo(&s, &["x1*y1", "x2*y2"])).unwrap();
        assert_eq!(res.betti(), vec![1, 2, 1]);
        let r = ring(&["x1", "x2", "y1", "y2"], &["x1*y1", "x2*y2"]);
        assert_eq!(quo(&r, &["x1", "x2"]).depth().unwrap(), 2);
    }

    #[test]
    fn periodic_resolution_over_hypersurface() {
        let r = ring(&["x", "y"], &["x*y"]);
        let res = resolve(&quo(&r, &["x"]), 8).unwrap();
        assert_eq!(res.betti(), vec![1; 9]);
        let f = r.poly.field;
        let x = Vector::from_poly(&parse_poly(&r.poly, "x", 1, 1).unwrap(), 0);
        let y = Vector::from_poly(&parse_poly(&r.poly, "y", 1, 1).unwrap(), 0);
        for n in 1..=8 {
            let col = &res.map(n).columns[0];
            assert_eq!(col, if n % 2 == 1 { &x } else { &y }, "d_{n}");
            assert_eq!(res.shifts[n], vec![n as i32]);
        }
        assert!(res.check_complex());
        let _ = f;
    }

    #[test]
    fn residue_field_over_hypersurface() {
        let r = ring(&["x", "y"], &["x*y"]);
        let res = resolve(&quo(&r, &["x", "y"]), 6).unwrap();
        assert_eq!(res.betti(), vec![1, 2, 2, 2, 2, 2, 2]);
        assert!(res.check_complex() && res.is_minimal());
    }

    #[test]
    fn free_module_resolution() {
        let r = ring(&["x", "y"], &["x*y"]);
        let res = resolve(&Module::free(r, vec![0]), 5).unwrap();
        assert_eq!(res.betti(), vec![1]);
        assert!(res.finished);
    }
}
