//! Packed monomials in at most [`MAX_VARS`] variables.
//!
//! Exponents live in 7-bit fields (one byte per variable, top bit of each
//! byte is a guard bit that must stay clear); the most significant byte holds
//! the total degree. With this layout divisibility is a single subtraction and
//! graded reverse lexicographic comparison is a single integer comparison.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_VARS: usize = 15;
pub const MAX_EXPONENT: u32 = 127;
pub const MAX_DEGREE: u32 = 255;

const GUARDS: u128 = 0x0080_8080_8080_8080_8080_8080_8080_8080;
const VAR_BITS: u128 = (1u128 << 120) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    bits: u128,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { bits: 0 };

    /// Builds a monomial from an exponent vector.
    ///
    /// # Panics
    /// Panics if there are too many variables or an exponent/degree overflows;
    /// input validation happens at parse time.
    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut bits = 0u128;
        let mut deg = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent {e} too large");
            bits |= (e as u128) << (8 * i);
            deg += e;
        }
        assert!(deg <= MAX_DEGREE, "degree {deg} too large");
        Monomial { bits: bits | ((deg as u128) << 120) }
    }

    pub fn var(i: usize) -> Monomial {
        assert!(i < MAX_VARS);
        Monomial { bits: (1u128 << (8 * i)) | (1u128 << 120) }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        (self.bits >> 120) as u32
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        ((self.bits >> (8 * i)) & 0x7f) as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.bits == 0
    }

    /// Product of two monomials; `None` on exponent or degree overflow.
    #[inline]
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let s = self.bits.checked_add(other.bits)?;
        if s & GUARDS != 0 {
            return None;
        }
        Some(Monomial { bits: s })
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other)
            .expect("monomial exponent overflow")
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        let d = ((other.bits & VAR_BITS) | GUARDS) - (self.bits & VAR_BITS);
        d & GUARDS == GUARDS
    }

    /// `other / self` assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial { bits: other.bits - self.bits }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if divisor.divides(self) {
            Some(divisor.quotient_of(self))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut bits = 0u128;
        let mut deg = 0u128;
        for i in 0..MAX_VARS {
            let e = self.exponent(i).max(other.exponent(i)) as u128;
            bits |= e << (8 * i);
            deg += e;
        }
        Monomial { bits: bits | (deg << 120) }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut bits = 0u128;
        let mut deg = 0u128;
        for i in 0..MAX_VARS {
            let e = self.exponent(i).min(other.exponent(i)) as u128;
            bits |= e << (8 * i);
            deg += e;
        }
        Monomial { bits: bits | (deg << 120) }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Removes the variable `i` entirely (sets its exponent to zero).
    pub fn without_var(&self, i: usize) -> Monomial {
        let e = self.exponent(i) as u128;
        Monomial { bits: self.bits - (e << (8 * i)) - (e << 120) }
    }

    /// The colon `self : other`, i.e. `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        self.gcd(other).quotient_of(self)
    }

    #[inline]
    fn key(&self) -> u128 {
        self.bits ^ VAR_BITS
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exponent(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    /// All monomials of the given degree in `nvars` variables, descending.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
        }
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, degree, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

/// Graded reverse lexicographic order.
impl Ord for Monomial {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    #[inline]
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<u32> = (0..MAX_VARS).map(|i| self.exponent(i)).collect();
        let last = exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "x{:?}", &exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_in_three_variables() {
        // x > y > z, and among degree 2: x^2 > xy > y^2 > xz > yz > z^2
        let order = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in order.windows(2) {
            assert!(w[0] > w[1], "{:?} should exceed {:?}", w[0], w[1]);
        }
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        assert_eq!(Monomial::all_of_degree(3, 2), order.to_vec());
    }

    #[test]
    fn divisibility_and_quotients() {
        let a = m(&[1, 2, 0]);
        let b = m(&[3, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[2, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert_eq!(b.colon(&m(&[1, 5, 0])), m(&[2, 0, 1]));
        assert!(Monomial::ONE.divides(&a));
    }

    #[test]
    fn overflow_detected() {
        let a = m(&[100]);
        assert!(a.checked_mul(&a).is_none());
    }

    fn arb_mono() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..6, 4)
    }

    proptest! {
        #[test]
        fn packed_ops_match_exponent_vectors(a in arb_mono(), b in arb_mono()) {
            let (ma, mb) = (m(&a), m(&b));
            let prod: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert_eq!(ma.mul(&mb), m(&prod));
            let div = a.iter().zip(&b).all(|(x, y)| x <= y);
            prop_assert_eq!(ma.divides(&mb), div);
            let l: Vec<u32> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
            prop_assert_eq!(ma.lcm(&mb), m(&l));
            prop_assert_eq!(ma.degree(), a.iter().sum::<u32>());
            // grevlex reference: degree, then last differing exponent smaller wins
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            let reference = da.cmp(&db).then_with(|| {
                for i in (0..4).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            });
            prop_assert_eq!(ma.cmp(&mb), reference);
        }
    }
}
