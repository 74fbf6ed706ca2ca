//! Hilbert series of monomial staircases and of graded modules given by a
//! Gröbner basis.
//!
//! A series is stored as a Laurent numerator over `(1 - t)^n`, where `n` is
//! the number of variables of the ambient polynomial ring.

use serde::{Deserialize, Serialize};

use crate::algebra::Monomial;

/// Laurent polynomial `sum_k coeffs[k] * t^(low + k)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Laurent {
    pub low: i32,
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Laurent {
        Laurent { low: 0, coeffs: vec![1] }
    }

    pub fn monomial(c: i64, e: i32) -> Laurent {
        Laurent { low: e, coeffs: vec![c] }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn normalized(mut self) -> Laurent {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let k = e - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    pub fn high(&self) -> Option<i32> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.combine(other, -1)
    }

    fn combine(&self, other: &Laurent, sign: i64) -> Laurent {
        if other.coeffs.is_empty() {
            return self.clone();
        }
        if self.coeffs.is_empty() {
            return other.scale(sign);
        }
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let coeffs = (low..=high).map(|e| self.coeff(e) + sign * other.coeff(e)).collect();
        Laurent { low, coeffs }.normalized()
    }

    pub fn scale(&self, c: i64) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|&x| x * c).collect() }.normalized()
    }

    pub fn shift(&self, s: i32) -> Laurent {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        Laurent { low: self.low + s, coeffs: self.coeffs.clone() }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent { low: self.low + other.low, coeffs }.normalized()
    }

    /// Multiplies by `1 - t^d`.
    pub fn mul_one_minus(&self, d: i32) -> Laurent {
        self.sub(&self.shift(d))
    }

    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `1 - t`, if possible.
    pub fn div_one_minus_t(&self) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if self.eval_one() != 0 {
            return None;
        }
        // q = p / (1 - t): q_k = sum_{i <= k} p_i
        let mut acc = 0i64;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            coeffs.push(acc);
        }
        Some(Laurent { low: self.low, coeffs }.normalized())
    }
}

/// A Hilbert series `numerator / (1 - t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Laurent,
    pub nvars: usize,
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> HilbertSeries {
        HilbertSeries { numerator: Laurent::zero(), nvars }
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.nvars, other.nvars);
        HilbertSeries { numerator: self.numerator.add(&other.numerator), nvars: self.nvars }
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.nvars, other.nvars);
        HilbertSeries { numerator: self.numerator.sub(&other.numerator), nvars: self.nvars }
    }

    pub fn shift(&self, s: i32) -> HilbertSeries {
        HilbertSeries { numerator: self.numerator.shift(s), nvars: self.nvars }
    }

    pub fn scale(&self, c: i64) -> HilbertSeries {
        HilbertSeries { numerator: self.numerator.scale(c), nvars: self.nvars }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Cancels common factors of `1 - t`: returns `(q, d)` with
    /// `series = q / (1 - t)^d`, `q(1) != 0` (or `q = 0`).
    pub fn reduced(&self) -> (Laurent, usize) {
        let mut q = self.numerator.clone();
        let mut d = self.nvars;
        if q.is_zero() {
            return (q, 0);
        }
        while d > 0 {
            match q.div_one_minus_t() {
                Some(next) if q.eval_one() == 0 => {
                    q = next;
                    d -= 1;
                }
                _ => break,
            }
        }
        (q, d)
    }

    /// Krull dimension (order of the pole at `t = 1`); `None` for the zero
    /// module.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let (q, d) = self.reduced();
        if d == 0 && q.eval_one() == 0 {
            // cannot happen for a genuine Hilbert series of a nonzero module
            return Some(0);
        }
        Some(d)
    }

    /// Length (sum of all values) when finite.
    pub fn length(&self) -> Option<i64> {
        let (q, d) = self.reduced();
        if d == 0 {
            Some(q.eval_one())
        } else {
            None
        }
    }

    /// The value `h(d)` of the Hilbert function.
    pub fn value(&self, d: i32) -> i64 {
        let n = self.nvars as i64;
        let mut total = 0i64;
        for (k, &c) in self.numerator.coeffs.iter().enumerate() {
            let m = d - (self.numerator.low + k as i32);
            if m < 0 || c == 0 {
                continue;
            }
            total += c * binomial(m as i64 + n - 1, n - 1);
        }
        total
    }

    /// Values for all degrees in `lo..=hi`.
    pub fn values(&self, lo: i32, hi: i32) -> Vec<i64> {
        (lo..=hi).map(|d| self.value(d)).collect()
    }

    /// When finite, the Hilbert function as an explicit Laurent polynomial.
    pub fn as_polynomial(&self) -> Option<Laurent> {
        let (q, d) = self.reduced();
        (d == 0).then_some(q)
    }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return if k == 0 && n == -1 { 1 } else { 0 };
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        // ascending grevlex: divisors come first
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `K(t)` of the Hilbert series `K(t) / (1 - t)^n` of `S / I` for a
/// monomial ideal `I` given by (not necessarily minimal) generators.
pub fn monomial_numerator(gens: &[Monomial], nvars: usize) -> Laurent {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens, nvars)
}

fn numerator_rec(gens: Vec<Monomial>, nvars: usize) -> Laurent {
    if gens.is_empty() {
        return Laurent::one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return Laurent::zero();
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let mut support = Monomial::ONE;
    let mut coprime = true;
    for g in &gens {
        if !support.is_coprime(g) {
            coprime = false;
            break;
        }
        support = support.lcm(g);
    }
    if coprime {
        let mut acc = Laurent::one();
        for g in &gens {
            acc = acc.mul_one_minus(g.degree() as i32);
        }
        return acc;
    }
    // pivot on the variable occurring in the most generators that are not
    // pure powers of that variable
    let mut best = (0usize, 0usize);
    for v in 0..nvars {
        let count = gens.iter().filter(|g| g.exponent(v) > 0 && g.degree() > g.exponent(v)).count();
        if count > best.1 {
            best = (v, count);
        }
    }
    let v = best.0;
    let mut exps: Vec<u32> = gens.iter().map(|g| g.exponent(v)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let mut e = exps[exps.len() / 2].max(1);
    // the pivot must not already lie in the ideal
    if let Some(k) = gens.iter().filter(|g| g.degree() == g.exponent(v)).map(|g| g.exponent(v)).min() {
        e = e.min(k - 1);
    }
    let mut pe = vec![0u32; nvars];
    pe[v] = e;
    let pivot = Monomial::from_exponents(&pe);

    let mut plus = gens.clone();
    plus.push(pivot);
    let plus = minimalize(plus);
    let colon = minimalize(gens.iter().map(|g| g.colon(&pivot)).collect());
    numerator_rec(plus, nvars).add(&numerator_rec(colon, nvars).shift(e as i32))
}

/// Hilbert series of `F / U` where `F` is free with the given shifts and the
/// leading module of `U` has the given leading monomials per component.
pub fn module_series(leads: &[Vec<Monomial>], shifts: &[i32], nvars: usize) -> HilbertSeries {
    let mut num = Laurent::zero();
    for (k, gens) in leads.iter().enumerate() {
        num = num.add(&monomial_numerator(gens, nvars).shift(shifts[k]));
    }
    HilbertSeries { numerator: num, nvars }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Counts standard monomials degree by degree.
    fn brute_force(gens: &[Monomial], nvars: usize, d: u32) -> i64 {
        Monomial::all_of_degree(nvars, d).iter().filter(|x| !gens.iter().any(|g| g.divides(x))).count() as i64
    }

    #[test]
    fn simple_series() {
        // S = k[x,y]: 1/(1-t)^2, h(d) = d+1
        let hs = HilbertSeries { numerator: monomial_numerator(&[], 2), nvars: 2 };
        assert_eq!(hs.values(0, 3), vec![1, 2, 3, 4]);
        assert_eq!(hs.dimension(), Some(2));
        // S/(x^2, xy, y): 1, 1, 0, ...
        let gens = [m(&[2, 0]), m(&[1, 1]), m(&[0, 1])];
        let hs = HilbertSeries { numerator: monomial_numerator(&gens, 2), nvars: 2 };
        assert_eq!(hs.values(0, 3), vec![1, 1, 0, 0]);
        assert_eq!(hs.length(), Some(2));
        assert_eq!(hs.dimension(), Some(0));
        // S/(x) in k[x,y] has dimension one and infinite length
        let hs = HilbertSeries { numerator: monomial_numerator(&[m(&[1, 0])], 2), nvars: 2 };
        assert_eq!(hs.length(), None);
        assert_eq!(hs.dimension(), Some(1));
    }

    #[test]
    fn laurent_division() {
        let p = Laurent::one().mul_one_minus(3);
        let q = p.div_one_minus_t().unwrap();
        assert_eq!(q, Laurent { low: 0, coeffs: vec![1, 1, 1] });
        assert!(Laurent::one().div_one_minus_t().is_none());
    }

    proptest! {
        #[test]
        fn numerator_matches_brute_force(
            raw in prop::collection::vec(prop::collection::vec(0u32..4, 3), 0..6)
        ) {
            let gens: Vec<Monomial> = raw.iter().map(|e| m(e)).collect();
            let hs = HilbertSeries { numerator: monomial_numerator(&gens, 3), nvars: 3 };
            for d in 0..10 {
                prop_assert_eq!(hs.value(d as i32), brute_force(&gens, 3, d));
            }
        }
    }
}
