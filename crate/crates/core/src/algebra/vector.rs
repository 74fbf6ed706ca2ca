//! Elements of graded free modules `S^r`, stored as sparse term lists under a
//! position-over-term order where a smaller component index ranks higher.

use std::cmp::Ordering;

use super::field::{FieldElem, PrimeField};
use super::monomial::Monomial;
use super::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub comp: u32,
    pub coef: FieldElem,
}

/// Compares `(comp, mono)` positions under the position-over-term order.
#[inline]
pub fn pos_cmp(ca: u32, ma: &Monomial, cb: u32, mb: &Monomial) -> Ordering {
    cb.cmp(&ca).then_with(|| ma.cmp(mb))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn unit(comp: usize) -> Vector {
        Vector { terms: vec![Term { mono: Monomial::ONE, comp: comp as u32, coef: 1 }] }
    }

    /// `p * e_comp`.
    pub fn from_poly(p: &Poly, comp: usize) -> Vector {
        Vector {
            terms: p.terms().iter().map(|&(mono, coef)| Term { mono, comp: comp as u32, coef }).collect(),
        }
    }

    /// Builds `sum_k polys[k] * e_k`.
    pub fn from_polys(polys: &[Poly]) -> Vector {
        let mut terms = Vec::new();
        for (k, p) in polys.iter().enumerate() {
            terms.extend(p.terms().iter().map(|&(mono, coef)| Term { mono, comp: k as u32, coef }));
        }
        Vector { terms }
    }

    pub fn from_terms(f: &PrimeField, mut terms: Vec<Term>) -> Vector {
        terms.sort_by(|a, b| pos_cmp(b.comp, &b.mono, a.comp, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coef = f.add(last.coef, t.coef)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        Vector { terms: out }
    }

    pub fn from_sorted(terms: Vec<Term>) -> Vector {
        debug_assert!(terms
            .windows(2)
            .all(|w| pos_cmp(w[0].comp, &w[0].mono, w[1].comp, &w[1].mono) == Ordering::Greater));
        Vector { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Degree in a free module with the given generator shifts, read off the
    /// leading term.
    pub fn degree(&self, shifts: &[i32]) -> Option<i32> {
        self.terms.first().map(|t| t.mono.degree() as i32 + shifts[t.comp as usize])
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        match self.degree(shifts) {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.mono.degree() as i32 + shifts[t.comp as usize] == d),
        }
    }

    /// The coordinate polynomial in component `k`.
    pub fn component(&self, k: usize) -> Poly {
        Poly::from_sorted(
            self.terms.iter().filter(|t| t.comp as usize == k).map(|t| (t.mono, t.coef)).collect(),
        )
    }

    /// All coordinates as polynomials, for a module of the given rank.
    pub fn to_polys(&self, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.comp as usize].push((t.mono, t.coef));
        }
        buckets.into_iter().map(Poly::from_sorted).collect()
    }

    pub fn scale(&self, f: &PrimeField, c: FieldElem) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|t| Term { coef: f.mul(t.coef, c), ..*t }).collect() }
    }

    pub fn neg(&self, f: &PrimeField) -> Vector {
        self.scale(f, f.neg(1))
    }

    pub fn mul_term(&self, f: &PrimeField, m: &Monomial, c: FieldElem) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.mul(m), comp: t.comp, coef: f.mul(t.coef, c) })
                .collect(),
        }
    }

    pub fn mul_poly(&self, f: &PrimeField, p: &Poly) -> Vector {
        let mut acc = Vector::zero();
        for &(m, c) in p.terms() {
            acc = acc.add_scaled(f, self, c, &m);
        }
        acc
    }

    pub fn add(&self, f: &PrimeField, other: &Vector) -> Vector {
        self.add_scaled(f, other, 1, &Monomial::ONE)
    }

    pub fn sub(&self, f: &PrimeField, other: &Vector) -> Vector {
        self.add_scaled(f, other, f.neg(1), &Monomial::ONE)
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, f: &PrimeField, other: &Vector, c: FieldElem, m: &Monomial) -> Vector {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        merge_into(f, &self.terms, &other.terms, c, m, &mut out);
        Vector { terms: out }
    }

    /// Renumbers components: term in component `k` moves to `map(k)`.
    /// The map must be strictly increasing so the order is preserved.
    pub fn remap_monotone(&self, map: impl Fn(u32) -> u32) -> Vector {
        Vector { terms: self.terms.iter().map(|t| Term { comp: map(t.comp), ..*t }).collect() }
    }

    /// Renumbers components by an arbitrary map and re-sorts.
    pub fn remap(&self, f: &PrimeField, map: impl Fn(u32) -> u32) -> Vector {
        Vector::from_terms(f, self.terms.iter().map(|t| Term { comp: map(t.comp), ..*t }).collect())
    }

    /// Keeps components in `lo..hi`, renumbered from zero.
    pub fn restrict(&self, lo: u32, hi: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| Term { comp: t.comp - lo, ..*t })
                .collect(),
        }
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self, f: &PrimeField) -> Vector {
        match self.lead() {
            None => Vector::zero(),
            Some(t) if t.coef == 1 => self.clone(),
            Some(t) => self.scale(f, f.inv(t.coef)),
        }
    }

    pub fn max_comp(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }
}

/// Merges `a + c*m*b` into `out` (both inputs sorted).
pub fn merge_into(f: &PrimeField, a: &[Term], b: &[Term], c: FieldElem, m: &Monomial, out: &mut Vec<Term>) {
    let mut i = 0;
    let mut j = 0;
    while j < b.len() {
        let bm = b[j].mono.mul(m);
        let bc = b[j].comp;
        while i < a.len() && pos_cmp(a[i].comp, &a[i].mono, bc, &bm) == Ordering::Greater {
            out.push(a[i]);
            i += 1;
        }
        if i < a.len() && a[i].comp == bc && a[i].mono == bm {
            let s = f.add(a[i].coef, f.mul(b[j].coef, c));
            if s != 0 {
                out.push(Term { mono: bm, comp: bc, coef: s });
            }
            i += 1;
        } else {
            out.push(Term { mono: bm, comp: bc, coef: f.mul(b[j].coef, c) });
        }
        j += 1;
    }
    out.extend_from_slice(&a[i..]);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn position_over_term_prefers_low_components() {
        let f = PrimeField::default();
        let x = Monomial::var(0);
        let v = Vector::from_terms(
            &f,
            vec![
                Term { mono: x.mul(&x), comp: 1, coef: 1 },
                Term { mono: Monomial::ONE, comp: 0, coef: 2 },
                Term { mono: x, comp: 0, coef: 3 },
            ],
        );
        let comps: Vec<u32> = v.terms().iter().map(|t| t.comp).collect();
        assert_eq!(comps, vec![0, 0, 1]);
        assert_eq!(v.lead().unwrap().mono, x);
        assert!(v.sub(&f, &v).is_zero());
        assert_eq!(v.degree(&[1, 0]), Some(2));
        assert!(!v.is_homogeneous(&[1, 0]));
    }
}
