//! Sparse polynomials in canonical form (strictly descending grevlex terms,
//! nonzero coefficients).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{FieldElem, PrimeField};
use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, FieldElem)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Poly {
        Poly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: FieldElem) -> Poly {
        if c == 0 {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, sorting and combining them.
    pub fn from_terms(f: &PrimeField, mut terms: Vec<(Monomial, FieldElem)>) -> Poly {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, FieldElem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    /// Wraps terms that are already canonical.
    pub fn from_sorted(terms: Vec<(Monomial, FieldElem)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElem)> {
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

    pub fn lead(&self) -> Option<(Monomial, FieldElem)> {
        self.terms.first().copied()
    }

    /// Degree of the leading term (the maximum degree under grevlex).
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    /// Whether this is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, f: &PrimeField, other: &Poly) -> Poly {
        self.add_scaled(f, other, 1, &Monomial::ONE)
    }

    pub fn sub(&self, f: &PrimeField, other: &Poly) -> Poly {
        self.add_scaled(f, other, f.neg(1), &Monomial::ONE)
    }

    pub fn neg(&self, f: &PrimeField) -> Poly {
        self.scale(f, f.neg(1))
    }

    pub fn scale(&self, f: &PrimeField, c: FieldElem) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, f: &PrimeField, m: &Monomial, c: FieldElem) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect() }
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, f: &PrimeField, other: &Poly, c: FieldElem, m: &Monomial) -> Poly {
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, f.mul(b[j].1, c)));
                j += 1;
                continue;
            }
            match a[i].0.cmp(&bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, f.mul(b[j].1, c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].1, f.mul(b[j].1, c));
                    if s != 0 {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, f: &PrimeField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Poly::zero();
        for &(m, c) in &small.terms {
            acc = acc.add_scaled(f, large, c, &m);
        }
        acc
    }

    pub fn pow(&self, f: &PrimeField, e: u32) -> Poly {
        let mut acc = Poly::constant(1);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// The homogeneous component of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly { terms: self.terms.iter().copied().filter(|t| t.0.degree() == degree).collect() }
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    pub fn display(&self, f: &PrimeField, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let v = f.signed(*c);
            let (neg, abs) = (v < 0, v.unsigned_abs());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else {
                if abs != 1 {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&m.display(names));
            }
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Poly{:?}", self.terms)
    }
}

/// The ambient polynomial ring `S = F_p[x_1..x_n]`, standard graded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRing {
    pub field: PrimeField,
    pub names: Vec<String>,
}

impl PolyRing {
    pub fn new(field: PrimeField, names: Vec<String>) -> Result<PolyRing> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, got: names.len() });
        }
        if names.is_empty() {
            return Err(Error::Input("the ring needs at least one variable".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Input(format!("variable {n} declared twice")));
            }
        }
        Ok(PolyRing { field, names })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::term(Monomial::var(i), 1)
    }

    pub fn display(&self, p: &Poly) -> String {
        p.display(&self.field, &self.names)
    }

    /// Binary ring operation with a ring-compatibility check.
    pub fn arith(&self, other: &PolyRing, a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
        if self != other {
            return Err(Error::RingMismatch);
        }
        let f = &self.field;
        Ok(match op {
            PolyOp::Add => a.add(f, b),
            PolyOp::Sub => a.sub(f, b),
            PolyOp::Mul => a.mul(f, b),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(n: usize) -> PolyRing {
        let names = (0..n).map(|i| format!("x{i}")).collect();
        PolyRing::new(PrimeField::default(), names).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(2);
        let f = r.field;
        let x = r.var(0);
        let y = r.var(1);
        let p = x.add(&f, &y).mul(&f, &x.sub(&f, &y));
        let expect = Poly::from_terms(&f, vec![(mono(&[2, 0]), 1), (mono(&[0, 2]), f.neg(1))]);
        assert_eq!(p, expect);
        assert!(p.is_homogeneous());
        assert_eq!(x.add(&f, &Poly::zero()), x);
    }

    #[test]
    fn four_variable_monomial_product() {
        let r = ring(4);
        let f = r.field;
        let a = Poly::term(mono(&[1, 0, 1, 0]), 1);
        let b = Poly::term(mono(&[0, 1, 0, 1]), 1);
        let p = r.arith(&r, &a, &b, PolyOp::Mul).unwrap();
        // direct expansion: the exponent vectors add componentwise
        assert_eq!(p.terms(), &[(mono(&[1, 1, 1, 1]), 1)]);
        assert_eq!(p.degree(), Some(4));
        assert!(r.arith(&ring(3), &a, &b, PolyOp::Add).is_err());
        let _ = f;
    }

    #[test]
    fn display_uses_signed_coefficients() {
        let r = ring(2);
        let f = r.field;
        let p = Poly::from_terms(&f, vec![(mono(&[1, 1]), 1), (mono(&[0, 2]), f.neg(3))]);
        assert_eq!(r.display(&p), "x0*x1 - 3*x1^2");
    }

    fn random_poly(rng: &mut ChaCha8Rng, f: &PrimeField) -> Poly {
        let n = rng.gen_range(0..5);
        let terms = (0..n)
            .map(|_| {
                let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                (mono(&e), rng.gen_range(0..f.p()))
            })
            .collect();
        Poly::from_terms(f, terms)
    }

    #[test]
    fn ring_axioms_on_seeded_samples() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = random_poly(&mut rng, &f);
            let b = random_poly(&mut rng, &f);
            let c = random_poly(&mut rng, &f);
            assert_eq!(a.add(&f, &b).add(&f, &c), a.add(&f, &b.add(&f, &c)));
            assert_eq!(a.mul(&f, &b.add(&f, &c)), a.mul(&f, &b).add(&f, &a.mul(&f, &c)));
            assert_eq!(a.mul(&f, &b), b.mul(&f, &a));
            assert!(a.sub(&f, &a).is_zero());
        }
    }

    proptest! {
        #[test]
        fn canonical_form_is_strictly_descending(
            raw in prop::collection::vec((prop::collection::vec(0u32..3, 3), 0u32..32003), 0..8)
        ) {
            let f = PrimeField::default();
            let p = Poly::from_terms(&f, raw.iter().map(|(e, c)| (mono(e), *c)).collect());
            prop_assert!(p.terms().windows(2).all(|w| w[0].0 > w[1].0));
            prop_assert!(p.terms().iter().all(|t| t.1 != 0));
        }
    }
}
