//! Complete intersections `R = S/(f_1..f_c)` over a standard graded
//! polynomial ring.

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, PolyRing, Vector};
use crate::error::{Error, Result};
use crate::groebner::hilbert::{module_series, HilbertSeries};
use crate::groebner::{buchberger, RingMode};

/// `S/(f_1..f_c)` with `f` a homogeneous regular sequence in the square of
/// the irrelevant ideal. With no relations this is `S` itself.
#[derive(Clone, Debug, PartialEq)]
pub struct CiRing {
    pub poly: PolyRing,
    relations: Vec<Poly>,
    gb: Vec<Poly>,
    /// Human-readable tag ("S", "R", "R'", ...).
    pub tag: String,
}

impl CiRing {
    /// The ambient polynomial ring.
    pub fn polynomial(poly: PolyRing) -> CiRing {
        CiRing { poly, relations: Vec::new(), gb: Vec::new(), tag: "S".into() }
    }

    /// Validates the relations (homogeneous, degree at least two, regular
    /// sequence certified by the codimension count `dim S/(f) = dim S - c`).
    pub fn new(poly: PolyRing, relations: Vec<Poly>, tag: &str) -> Result<CiRing> {
        for (i, f) in relations.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::Input(format!("relation {} is zero", i + 1)));
            }
            if !f.is_homogeneous() {
                return Err(Error::NonHomogeneous(format!("relation {}", poly.display(f))));
            }
            if f.degree().unwrap() < 2 {
                return Err(Error::Input(format!(
                    "relation {} has degree {}; relations must lie in the square of the maximal ideal",
                    poly.display(f),
                    f.degree().unwrap()
                )));
            }
        }
        let gens: Vec<Vector> = relations.iter().map(|f| Vector::from_poly(f, 0)).collect();
        let gb = buchberger(poly.field, &[0], &gens, RingMode::OverS, None)?;
        let hs = module_series(&gb.lead_monomials(), &[0], poly.nvars());
        let expected = poly.nvars() - relations.len().min(poly.nvars());
        if relations.len() > poly.nvars() || hs.dimension() != Some(expected) {
            return Err(Error::NotRegular(format!(
                "dim S/(f) = {:?}, expected {} for {} relations",
                hs.dimension(),
                expected,
                relations.len()
            )));
        }
        let gb = gb.generators.iter().map(|v| v.component(0)).collect();
        Ok(CiRing { poly, relations, gb, tag: tag.into() })
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// Reduced Gröbner basis of the defining ideal.
    pub fn gb(&self) -> &[Poly] {
        &self.gb
    }

    pub fn mode(&self) -> RingMode<'_> {
        if self.gb.is_empty() {
            RingMode::OverS
        } else {
            RingMode::OverR(&self.gb)
        }
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn codim(&self) -> usize {
        self.relations.len()
    }

    pub fn dim(&self) -> usize {
        self.nvars() - self.codim()
    }

    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations.iter().map(|f| f.degree().unwrap()).collect()
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relation_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let leads = vec![self.gb.iter().map(|g| g.lead().unwrap().0).collect()];
        module_series(&leads, &[0], self.nvars())
    }

    /// Whether `p` lies in the defining ideal.
    pub fn ideal_contains(&self, p: &Poly) -> bool {
        let f = &self.poly.field;
        let mut e = crate::groebner::GbEngine::new(*f, vec![0]);
        e.add_known_basis(self.gb.iter().map(|g| Vector::from_poly(g, 0))).unwrap();
        e.reduce(&Vector::from_poly(p, 0)).is_zero()
    }

    /// Whether the defining ideal of `self` is contained in that of `other`.
    pub fn ideal_within(&self, other: &CiRing) -> bool {
        self.poly == other.poly && self.relations.iter().all(|f| other.ideal_contains(f))
    }

    pub fn describe(&self) -> RingText {
        RingText {
            tag: self.tag.clone(),
            variables: self.poly.names.clone(),
            p: self.poly.field.p(),
            relations: self.relations.iter().map(|f| self.poly.display(f)).collect(),
            dim: self.dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingText {
    pub tag: String,
    pub variables: Vec<String>,
    pub p: u32,
    pub relations: Vec<String>,
    pub dim: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::PrimeField;

    fn poly_ring(names: &[&str]) -> PolyRing {
        PolyRing::new(PrimeField::default(), names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn validates_relations() {
        let s = poly_ring(&["x1", "x2", "y1", "y2"]);
        let f = |t: &str| parse_poly(&s, t, 1, 1).unwrap();
        let r = CiRing::new(s.clone(), vec![f("x1*y1"), f("x2*y2")], "R").unwrap();
        assert_eq!(r.dim(), 2);
        assert_eq!(r.hilbert_series().dimension(), Some(2));
        let err = CiRing::new(s.clone(), vec![f("x1")], "R").unwrap_err();
        assert_eq!(err.code(), "INPUT");
        let err = CiRing::new(s.clone(), vec![f("x1*y1"), f("x1*y2")], "R").unwrap_err();
        assert_eq!(err.code(), "NOT_REGULAR");
        let err = CiRing::new(s.clone(), vec![f("x1*y1 + x2")], "R").unwrap_err();
        assert_eq!(err.code(), "NON_HOMOGENEOUS");
    }
}
