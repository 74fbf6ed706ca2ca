//! Integer sequences: backward differences, the theta function, eventual
//! constancy and polynomial fits of the even and odd Tor lengths.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// A numerical function known on `start..start + values.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumFn {
    pub start: i64,
    pub values: Vec<i64>,
}

impl NumFn {
    pub fn new(start: i64, values: Vec<i64>) -> NumFn {
        NumFn { start, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn at(&self, n: i64) -> Option<i64> {
        let k = n - self.start;
        (k >= 0).then(|| self.values.get(k as usize).copied()).flatten()
    }

    /// The last `w` values (fewer when the sequence is shorter).
    pub fn tail(&self, w: usize) -> &[i64] {
        &self.values[self.values.len().saturating_sub(w)..]
    }
}

pub fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `nabla^r F(n) = sum_i (-1)^i C(r, i) F(n - i)`, defined for
/// `n >= start + r`.
pub fn nabla(f: &NumFn, r: usize) -> Result<NumFn> {
    if f.len() <= r {
        return Err(Error::NotStabilized(format!(
            "{}-th difference needs more than {} values, have {}",
            r,
            r,
            f.len()
        )));
    }
    let values = (r..f.len())
        .map(|k| (0..=r).map(|i| if i % 2 == 0 { 1 } else { -1 } * binomial(r as u64, i as u64) * f.values[k - i]).sum())
        .collect();
    Ok(NumFn::new(f.start + r as i64, values))
}

/// `theta(n) = l(Tor_{2n}) - l(Tor_{2n-1})` for `1 <= n <= nmax / 2`.
pub fn theta_function(lengths: &[i64]) -> NumFn {
    let top = (lengths.len() - 1) / 2;
    NumFn::new(1, (1..=top).map(|n| lengths[2 * n] - lengths[2 * n - 1]).collect())
}

/// `H_e(n) = l(Tor_{2n})` for `n >= 0`.
pub fn even_function(lengths: &[i64]) -> NumFn {
    NumFn::new(0, lengths.iter().step_by(2).copied().collect())
}

/// `H_o(n) = l(Tor_{2n-1})` for `n >= 1`.
pub fn odd_function(lengths: &[i64]) -> NumFn {
    NumFn::new(1, lengths.iter().skip(1).step_by(2).copied().collect())
}

/// The eventually constant value of `f`, required to be constant on the
/// trailing window (at least two values).
pub fn eventual_value(f: &NumFn, window: usize) -> Result<(i64, usize)> {
    let w = window.min(f.len());
    if w < 2 {
        return Err(Error::NotStabilized(format!("only {} values available for a constancy check", f.len())));
    }
    let tail = f.tail(w);
    if tail.iter().all(|&v| v == tail[0]) {
        Ok((tail[0], w))
    } else {
        Err(Error::NotStabilized(format!("trailing values {tail:?} are not constant")))
    }
}

/// Rationals serialized as `"p/q"` strings.
mod rational_strings {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|t| t.parse::<Rational>().map_err(serde::de::Error::custom)).collect()
    }
}

/// A polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFit {
    /// `-1` for the zero polynomial.
    pub degree: i32,
    #[serde(with = "rational_strings")]
    pub coefficients: Vec<Rational>,
    /// First argument of the window on which the fit is verified.
    pub valid_from: i64,
}

impl PolyFit {
    fn from_coeffs(coeffs: Vec<Rational>, valid_from: i64) -> PolyFit {
        let mut coefficients = coeffs;
        while coefficients.last().is_some_and(|c| *c == Rational::from_integer(0)) {
            coefficients.pop();
        }
        PolyFit { degree: coefficients.len() as i32 - 1, coefficients, valid_from }
    }

    pub fn zero(valid_from: i64) -> PolyFit {
        PolyFit::from_coeffs(Vec::new(), valid_from)
    }

    pub fn eval(&self, x: i64) -> Rational {
        self.coefficients.iter().rev().fold(Rational::from_integer(0), |acc, c| acc * x + c)
    }

    /// Coefficient of `x^k`.
    pub fn coefficient(&self, k: usize) -> Rational {
        self.coefficients.get(k).copied().unwrap_or_else(|| Rational::from_integer(0))
    }
}

/// Polynomial through the points `(x_i, y_i)` by Newton interpolation.
pub fn interpolate(xs: &[i64], ys: &[i64]) -> Vec<Rational> {
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.iter().map(|&y| Rational::from_integer(y)).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / Rational::from_integer(xs[i] - xs[i - level]);
        }
    }
    // expand sum_k dd[k] prod_{j<k} (x - x_j)
    let mut out = vec![Rational::from_integer(0); n.max(1)];
    let mut basis = vec![Rational::from_integer(1)];
    for k in 0..n {
        for (i, b) in basis.iter().enumerate() {
            out[i] += dd[k] * b;
        }
        let mut next = vec![Rational::from_integer(0); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += *b;
            next[i] -= *b * xs[k];
        }
        basis = next;
    }
    out
}

/// Smallest-degree polynomial (degree at most `max_degree`) agreeing with
/// `f` on a trailing stretch: the `(d + 1)`-st differences must vanish on
/// the last `window` arguments.
pub fn fit_polynomial(f: &NumFn, window: usize, max_degree: i32) -> Result<PolyFit> {
    for d in -1..=max_degree {
        let order = (d + 1) as usize;
        let Ok(diff) = nabla(f, order) else { break };
        if diff.len() < window {
            break;
        }
        if diff.tail(window).iter().all(|&v| v == 0) {
            let valid_from = diff.end() - window as i64 + 1 - order as i64;
            if d < 0 {
                return Ok(PolyFit::from_coeffs(Vec::new(), valid_from));
            }
            let xs: Vec<i64> = (f.end() - d as i64..=f.end()).collect();
            let ys: Vec<i64> = xs.iter().map(|&x| f.at(x).unwrap()).collect();
            return Ok(PolyFit::from_coeffs(interpolate(&xs, &ys), valid_from));
        }
    }
    Err(Error::NotStabilized(format!(
        "no polynomial of degree <= {max_degree} fits the last {window} differences of {:?}",
        f.values
    )))
}

/// Even and odd Hilbert polynomials of a Tor table and the complexity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFit {
    pub even: PolyFit,
    pub odd: PolyFit,
    pub window: usize,
    pub complexity: usize,
    /// Degree `r - 1` coefficients of the even and odd polynomials.
    pub a: String,
    pub b: String,
}

impl HilbertFit {
    pub fn vanishing(even: PolyFit, odd: PolyFit, window: usize) -> HilbertFit {
        HilbertFit { even, odd, window, complexity: 0, a: "0".into(), b: "0".into() }
    }

    pub fn leading(&self) -> (Rational, Rational) {
        match self.complexity {
            0 => (Rational::from_integer(0), Rational::from_integer(0)),
            r => (self.even.coefficient(r - 1), self.odd.coefficient(r - 1)),
        }
    }
}

pub fn fit_tor(lengths: &[i64], window: usize, max_degree: i32) -> Result<HilbertFit> {
    let even = fit_polynomial(&even_function(lengths), window, max_degree)?;
    let odd = fit_polynomial(&odd_function(lengths), window, max_degree)?;
    let complexity = (even.degree.max(odd.degree) + 1) as usize;
    let (a, b) = match complexity {
        0 => (Rational::from_integer(0), Rational::from_integer(0)),
        r => (even.coefficient(r - 1), odd.coefficient(r - 1)),
    };
    Ok(HilbertFit { even, odd, window, complexity, a: a.to_string(), b: b.to_string() })
}

pub fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn differences() {
        let c = NumFn::new(0, vec![5; 6]);
        assert!(nabla(&c, 1).unwrap().values.iter().all(|&v| v == 0));
        let lin = NumFn::new(0, (0..8).map(|n| n + 1).collect());
        assert!(nabla(&lin, 1).unwrap().values.iter().all(|&v| v == 1));
        let sq = NumFn::new(0, (0..8).map(|n| n * n).collect());
        let d2 = nabla(&sq, 2).unwrap();
        assert!(d2.values.iter().all(|&v| v == 2));
        assert_eq!(d2.start, 2);
        assert_eq!(nabla(&sq, 0).unwrap(), sq);
        assert!(nabla(&NumFn::new(0, vec![1, 2]), 2).is_err());
    }

    #[test]
    fn theta_of_periodic_table() {
        let lengths: Vec<i64> = (0..=12).map(|n| if n % 2 == 0 { 1 } else { 0 }).collect();
        let th = theta_function(&lengths);
        assert_eq!(th.values, vec![1; 6]);
        let fit = fit_tor(&lengths, 3, 3).unwrap();
        assert_eq!(fit.complexity, 1);
        assert_eq!((fit.even.degree, fit.odd.degree), (0, -1));
        assert_eq!(fit.leading(), (Rational::from_integer(1), Rational::from_integer(0)));
    }

    #[test]
    fn fit_reports_failure() {
        let lengths: Vec<i64> = (0..=12).map(|n| 1 << n).collect();
        assert_eq!(fit_tor(&lengths, 3, 3).unwrap_err().code(), "NOT_STABILIZED");
    }

    proptest! {
        #[test]
        fn nabla_matches_iterated_difference(vals in proptest::collection::vec(-50i64..50, 6..12), r in 0usize..4) {
            let f = NumFn::new(3, vals);
            let mut g = f.clone();
            for _ in 0..r {
                g = NumFn::new(g.start + 1, g.values.windows(2).map(|w| w[1] - w[0]).collect());
            }
            prop_assert_eq!(nabla(&f, r).unwrap(), g);
        }

        #[test]
        fn interpolation_reproduces_polynomials(c in proptest::collection::vec(-6i64..6, 1..4), start in -3i64..5) {
            let p = |x: i64| c.iter().rev().fold(0i64, |acc, &k| acc * x + k);
            let xs: Vec<i64> = (start..start + c.len() as i64).collect();
            let ys: Vec<i64> = xs.iter().map(|&x| p(x)).collect();
            let coeffs = interpolate(&xs, &ys);
            for (k, &ck) in c.iter().enumerate() {
                prop_assert_eq!(coeffs[k], Rational::from_integer(ck));
            }
        }

        #[test]
        fn fitted_degree_matches_generator(c in proptest::collection::vec(-4i64..5, 0..3)) {
            let p = |x: i64| c.iter().rev().fold(0i64, |acc, &k| acc * x + k);
            let f = NumFn::new(0, (0..10).map(p).collect());
            let fit = fit_polynomial(&f, 3, 3).unwrap();
            let mut deg = c.len() as i32 - 1;
            while deg >= 0 && c[deg as usize] == 0 { deg -= 1; }
            prop_assert_eq!(fit.degree, deg);
            for x in 0..10 { prop_assert_eq!(fit.eval(x), Rational::from_integer(p(x))); }
        }
    }
}
