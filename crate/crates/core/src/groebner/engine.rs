//! Homogeneous Buchberger algorithm for submodules of shifted free modules,
//! processed degree by degree so that a computation can stop at a degree cap.

use std::collections::BTreeMap;

use crate::algebra::vector::merge_into;
use crate::algebra::{Monomial, PrimeField, Term, Vector};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
}

/// State of an (incremental) Gröbner basis computation.
///
/// The basis is complete through degree [`GbEngine::done_through`]: every
/// element of the submodule of degree at most that value reduces to zero.
#[derive(Clone, Debug)]
pub struct GbEngine {
    field: PrimeField,
    shifts: Vec<i32>,
    basis: Vec<Vector>,
    degrees: Vec<i32>,
    leads: Vec<Vec<(Monomial, usize)>>,
    pairs: BTreeMap<i32, Vec<Pair>>,
    pending: BTreeMap<i32, Vec<Vector>>,
    done_through: Option<i32>,
    complete: bool,
    stats: GbStats,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_skipped: usize,
}

impl GbEngine {
    pub fn new(field: PrimeField, shifts: Vec<i32>) -> GbEngine {
        let rank = shifts.len();
        GbEngine {
            field,
            shifts,
            basis: Vec::new(),
            degrees: Vec::new(),
            leads: vec![Vec::new(); rank],
            pairs: BTreeMap::new(),
            pending: BTreeMap::new(),
            done_through: None,
            complete: true,
            stats: GbStats::default(),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    /// Whether no pairs or generators remain unprocessed.
    pub fn is_complete(&self) -> bool {
        self.complete && self.pairs.is_empty() && self.pending.is_empty()
    }

    pub fn done_through(&self) -> Option<i32> {
        if self.pairs.is_empty() && self.pending.is_empty() {
            None
        } else {
            self.done_through
        }
    }

    fn check(&self, v: &Vector) -> Result<i32> {
        if let Some(mc) = v.max_comp() {
            if mc as usize >= self.rank() {
                return Err(Error::Input(format!("component {mc} outside a free module of rank {}", self.rank())));
            }
        }
        if !v.is_homogeneous(&self.shifts) {
            return Err(Error::NonHomogeneous(format!("{v:?}")));
        }
        Ok(v.degree(&self.shifts).unwrap_or(i32::MIN))
    }

    /// Queues a generator; it is processed when its degree is reached.
    pub fn add_generator(&mut self, v: Vector) -> Result<()> {
        let d = self.check(&v)?;
        if v.is_zero() {
            return Ok(());
        }
        self.pending.entry(d).or_default().push(v);
        Ok(())
    }

    /// Inserts vectors that are already known to form a Gröbner basis of the
    /// submodule they generate. No pairs among them are created, only pairs
    /// with elements inserted later.
    pub fn add_known_basis(&mut self, vs: impl IntoIterator<Item = Vector>) -> Result<()> {
        for v in vs {
            self.check(&v)?;
            if v.is_zero() {
                continue;
            }
            let v = v.monic(&self.field);
            let d = v.degree(&self.shifts).unwrap();
            let lead = *v.lead().unwrap();
            let idx = self.basis.len();
            self.leads[lead.comp as usize].push((lead.mono, idx));
            self.basis.push(v);
            self.degrees.push(d);
        }
        Ok(())
    }

    fn find_reducer(&self, comp: u32, m: &Monomial) -> Option<usize> {
        self.leads[comp as usize].iter().find(|(l, _)| l.divides(m)).map(|&(_, i)| i)
    }

    /// Full normal form of `v` with respect to the current basis.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut cur: Vec<Term> = v.terms().to_vec();
        self.reduce_terms(&mut cur, 0);
        Vector::from_sorted(cur)
    }

    /// Normal form of `v`, but only reducing terms strictly after the first
    /// `keep` positions are considered once the lead is irreducible.
    fn reduce_terms(&self, cur: &mut Vec<Term>, start: usize) {
        let f = &self.field;
        let mut scratch: Vec<Term> = Vec::new();
        let mut i = start;
        while i < cur.len() {
            let t = cur[i];
            match self.find_reducer(t.comp, &t.mono) {
                Some(gi) => {
                    let g = &self.basis[gi];
                    let q = g.lead().unwrap().mono.quotient_of(&t.mono);
                    scratch.clear();
                    merge_into(f, &cur[i..], g.terms(), f.neg(t.coef), &q, &mut scratch);
                    cur.truncate(i);
                    cur.extend_from_slice(&scratch);
                }
                None => i += 1,
            }
        }
    }

    /// Reduces only until the leading term is irreducible.
    pub fn reduce_lead(&self, v: &Vector) -> Vector {
        let f = &self.field;
        let mut cur: Vec<Term> = v.terms().to_vec();
        let mut scratch = Vec::new();
        while let Some(t) = cur.first().copied() {
            match self.find_reducer(t.comp, &t.mono) {
                Some(gi) => {
                    let g = &self.basis[gi];
                    let q = g.lead().unwrap().mono.quotient_of(&t.mono);
                    scratch.clear();
                    merge_into(f, &cur, g.terms(), f.neg(t.coef), &q, &mut scratch);
                    std::mem::swap(&mut cur, &mut scratch);
                }
                None => break,
            }
        }
        Vector::from_sorted(cur)
    }

    /// Whether `v` lies in the submodule (valid up to the completed degree).
    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce_lead(v).is_zero()
    }

    /// Inserts a fully reduced nonzero vector into the basis, updating the
    /// pair queue with the Gebauer-Möller criteria.
    pub fn insert_reduced(&mut self, v: Vector) {
        debug_assert!(!v.is_zero());
        let v = v.monic(&self.field);
        let lead = *v.lead().unwrap();
        let (c, m) = (lead.comp, lead.mono);
        let d = v.degree(&self.shifts).unwrap();
        let idx = self.basis.len();

        // chain criterion on queued pairs
        let shift = self.shifts[c as usize];
        let leads = &self.leads;
        let basis = &self.basis;
        let lm = |k: usize| basis[k].lead().unwrap().mono;
        for list in self.pairs.values_mut() {
            list.retain(|p| {
                if p.comp != c || !m.divides(&p.lcm) {
                    return true;
                }
                let drop = lm(p.i).lcm(&m) != p.lcm && lm(p.j).lcm(&m) != p.lcm;
                !drop
            });
        }
        self.pairs.retain(|_, l| !l.is_empty());

        // new pairs, pruned by the M and F criteria
        let mut cands: Vec<(Monomial, usize)> =
            leads[c as usize].iter().map(|&(l, i)| (l.lcm(&m), i)).collect();
        cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut kept: Vec<(Monomial, usize)> = Vec::new();
        for (l, i) in cands {
            if kept.iter().any(|(k, _)| k.divides(&l)) {
                self.stats.pairs_skipped += 1;
                continue;
            }
            kept.push((l, i));
        }
        // sorted ascending, so a proper divisor always appears before; equal
        // lcms are removed by the divisibility test too (F criterion)
        for (l, i) in kept {
            let pd = l.degree() as i32 + shift;
            self.pairs.entry(pd).or_default().push(Pair { i, j: idx, lcm: l, comp: c });
        }

        self.leads[c as usize].push((m, idx));
        self.basis.push(v);
        self.degrees.push(d);
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let f = &self.field;
        let gi = &self.basis[p.i];
        let gj = &self.basis[p.j];
        let qi = gi.lead().unwrap().mono.quotient_of(&p.lcm);
        let qj = gj.lead().unwrap().mono.quotient_of(&p.lcm);
        let a = gi.mul_term(f, &qi, 1);
        a.add_scaled(f, gj, f.neg(1), &qj)
    }

    fn next_degree(&self) -> Option<i32> {
        let a = self.pairs.keys().next().copied();
        let b = self.pending.keys().next().copied();
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Processes every pair and generator of degree at most `cap` (or all of
    /// them when `cap` is `None`).
    pub fn compute(&mut self, cap: Option<i32>) {
        while let Some(d) = self.next_degree() {
            if cap.is_some_and(|c| d > c) {
                break;
            }
            self.process_degree(d);
        }
        self.done_through = cap;
        self.complete = self.pairs.is_empty() && self.pending.is_empty();
    }

    fn process_degree(&mut self, d: i32) {
        let gens = self.pending.remove(&d).unwrap_or_default();
        for g in gens {
            let r = self.reduce(&g);
            if !r.is_zero() {
                self.insert_reduced(r);
            }
        }
        let pairs = self.pairs.remove(&d).unwrap_or_default();
        for p in pairs {
            self.stats.pairs_reduced += 1;
            let s = self.spoly(&p);
            let r = self.reduce(&s);
            if r.is_zero() {
                self.stats.zero_reductions += 1;
            } else {
                self.insert_reduced(r);
            }
        }
    }

    /// Leading monomials grouped by component.
    pub fn lead_monomials(&self) -> Vec<Vec<Monomial>> {
        self.leads.iter().map(|l| l.iter().map(|x| x.0).collect()).collect()
    }

    /// A reduced Gröbner basis: minimal leads, tails in normal form, monic,
    /// sorted by leading term (descending).
    pub fn reduced_basis(&self) -> Vec<Vector> {
        let mut keep: Vec<usize> = Vec::new();
        for (idx, v) in self.basis.iter().enumerate() {
            let t = v.lead().unwrap();
            let redundant = self.basis.iter().enumerate().any(|(k, w)| {
                let l = w.lead().unwrap();
                k != idx && l.comp == t.comp && l.mono.divides(&t.mono) && (l.mono != t.mono || k < idx)
            });
            if !redundant {
                keep.push(idx);
            }
        }
        let mut sub = GbEngine::new(self.field, self.shifts.clone());
        sub.add_known_basis(keep.iter().map(|&i| self.basis[i].clone())).unwrap();
        let mut out: Vec<Vector> = Vec::with_capacity(keep.len());
        for (pos, &i) in keep.iter().enumerate() {
            let v = &sub.basis[pos];
            let mut terms = v.terms().to_vec();
            // tails reduce against everything (leads are mutually indivisible)
            sub.reduce_terms(&mut terms, 1);
            out.push(Vector::from_sorted(terms));
            let _ = i;
        }
        out.sort_by(|a, b| {
            let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
            crate::algebra::vector::pos_cmp(y.comp, &y.mono, x.comp, &x.mono)
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::algebra::{Poly, PolyRing};

    fn ring(names: &[&str]) -> PolyRing {
        PolyRing::new(PrimeField::default(), names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn p(r: &PolyRing, s: &str) -> Poly {
        parse_poly(r, s, 1, 1).unwrap()
    }

    fn ideal_gb(r: &PolyRing, gens: &[&str]) -> Vec<Poly> {
        let mut e = GbEngine::new(r.field, vec![0]);
        for g in gens {
            e.add_generator(Vector::from_poly(&p(r, g), 0)).unwrap();
        }
        e.compute(None);
        e.reduced_basis().iter().map(|v| v.component(0)).collect()
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let r = ring(&["x"]);
        assert_eq!(ideal_gb(&r, &["x"]), vec![p(&r, "x")]);
    }

    #[test]
    fn binomial_ideal() {
        // (x^2-y^2, xy-y^2) = (x-y)(x,y): the generators already form a basis
        // and y^3 is not in the ideal
        let r = ring(&["x", "y"]);
        let gb = ideal_gb(&r, &["x^2-y^2", "x*y-y^2"]);
        let shown: Vec<String> = gb.iter().map(|g| r.display(g)).collect();
        assert_eq!(shown, vec!["x^2 - y^2", "x*y - y^2"]);
        let gb = ideal_gb(&r, &["x^2-y^2", "x*y-y^2", "x*y^2"]);
        let shown: Vec<String> = gb.iter().map(|g| r.display(g)).collect();
        assert_eq!(shown, vec!["y^3", "x^2 - y^2", "x*y - y^2"]);
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"]);
        let mut e = GbEngine::new(r.field, vec![0]);
        e.add_generator(Vector::from_poly(&p(&r, "x"), 0)).unwrap();
        e.compute(None);
        assert!(e.reduce(&Vector::from_poly(&p(&r, "x"), 0)).is_zero());
        let y = Vector::from_poly(&p(&r, "y"), 0);
        assert_eq!(e.reduce(&y), y);
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = ring(&["x", "y"]);
        let mut e = GbEngine::new(r.field, vec![0]);
        let err = e.add_generator(Vector::from_poly(&p(&r, "x^2+y"), 0)).unwrap_err();
        assert_eq!(err.code(), "NON_HOMOGENEOUS");
    }

    #[test]
    fn degree_cap_truncates() {
        let r = ring(&["x", "y"]);
        let mut e = GbEngine::new(r.field, vec![0]);
        for g in ["x^2-y^2", "x*y-y^2", "x*y^2"] {
            e.add_generator(Vector::from_poly(&p(&r, g), 0)).unwrap();
        }
        e.compute(Some(2));
        assert!(!e.is_complete());
        assert_eq!(e.basis().len(), 2);
        e.compute(None);
        assert!(e.is_complete());
        assert_eq!(e.basis().len(), 3);
    }
}
