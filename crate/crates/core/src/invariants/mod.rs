//! Numerical invariants of a pair `(M, N)` over a complete intersection
//! (theta, chi, complexity, q) and checks of the inequalities relating them
//! to dimensions and depths.

mod biadd;
mod numeric;

pub use biadd::{biadditivity_check, BiadditivityReport, ShortExactSequence};
pub use numeric::{
    binomial, eventual_value, even_function, factorial, fit_polynomial, fit_tor, interpolate, nabla, odd_function,
    theta_function, HilbertFit, NumFn, PolyFit, Rational,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{Module, ModuleText, RingText};
use crate::resolution::{check_operator_identity, eisenbud_operators, Resolution};
use crate::tor::{
    resolve_for_tor, table_from_complex, tensor_length, tensor_top_degree, Route, TensorComplex, TorOptions, TorTable,
};

#[derive(Clone, Debug)]
pub struct Settings {
    pub tor: TorOptions,
    /// Trailing window for polynomial fits and eventual constancy.
    pub fit_window: usize,
    /// Trailing window of homological degrees for surjectivity checks.
    pub surjectivity_window: usize,
    pub seed: u64,
    pub retries: usize,
    /// Also run the consistency properties (symmetry, operator identity, ...).
    pub properties: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tor: TorOptions::default(),
            fit_window: 3,
            surjectivity_window: 4,
            seed: 0,
            retries: 8,
            properties: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaValue {
    pub s: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Tor table of a pair at one ring level with the invariants read off it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInvariants {
    pub ring: String,
    pub codim: usize,
    pub tensor_length: i64,
    pub tor: TorTable,
    pub theta: NumFn,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit: Option<HilbertFit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complexity: Option<usize>,
    pub theta_s: Vec<ThetaValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl PairInvariants {
    pub fn theta(&self, s: usize) -> Option<i64> {
        self.theta_s.iter().find(|t| t.s == s).and_then(|t| t.value)
    }

    /// `theta_r` with `r` the complexity.
    pub fn theta_r(&self) -> Option<i64> {
        self.complexity.and_then(|r| self.theta(r))
    }
}

/// Polynomial fits of the even and odd parts of a certified table, with
/// degree at most `max_degree`.
pub fn cx_pair(tor: &TorTable, max_degree: i32, window: usize) -> Result<HilbertFit> {
    if !tor.certified {
        return Err(Error::NotCertified(format!("Tor table over {} is not certified", tor.ring)));
    }
    if let Some(v) = &tor.vanishing {
        // certified eventual vanishing: both polynomials are zero
        let zero = |start: usize| PolyFit::zero(start as i64);
        return Ok(HilbertFit::vanishing(zero(v.from.div_ceil(2)), zero(v.from.div_ceil(2)), window));
    }
    fit_tor(&tor.lengths, window, max_degree)
}

/// Complexity of a module from its Betti numbers `b_0..b_nmax`.
pub fn cx_module(betti: &[usize], codim: usize, window: usize) -> Result<HilbertFit> {
    let lengths: Vec<i64> = betti.iter().map(|&b| b as i64).collect();
    fit_tor(&lengths, window, codim as i32 - 1)
}

/// `chi = sum (-1)^i l(Tor_i)`, defined when Tor vanishes eventually.
pub fn chi(tor: &TorTable, complexity: Option<usize>) -> Result<i64> {
    if tor.vanishing.is_some() {
        return Ok(tor.lengths.iter().enumerate().map(|(i, &l)| if i % 2 == 0 { l } else { -l }).sum());
    }
    match complexity {
        Some(r) if r > 0 => Err(Error::CxPositive),
        _ => Err(Error::NotCertified(format!("eventual vanishing of Tor over {} not certified", tor.ring))),
    }
}

/// `q = sup{ n : Tor_n != 0 }`, defined when Tor vanishes eventually.
pub fn q_invariant(tor: &TorTable) -> Result<i64> {
    match &tor.vanishing {
        Some(v) if v.from > 0 => Ok(v.from as i64 - 1),
        Some(_) => Err(Error::Undefined("Tor vanishes identically".into())),
        None => Err(Error::Undefined(format!("Tor over {} does not vanish eventually", tor.ring))),
    }
}

/// The eventually constant value of `nabla^{s-1} theta`; `theta_0` is chi.
pub fn theta_s(tor: &TorTable, s: usize, complexity: Option<usize>, window: usize) -> Result<i64> {
    if let Some(r) = complexity {
        if s < r {
            return Err(Error::Undefined(format!("theta_{s} needs s >= cx = {r}")));
        }
    }
    if s == 0 {
        return chi(tor, complexity);
    }
    let diff = nabla(&theta_function(&tor.lengths), s - 1)?;
    Ok(eventual_value(&diff, window)?.0)
}

/// Reads the invariants off a table at a ring of codimension `codim`.
pub fn analyse_table(tor: TorTable, codim: usize, tensor_length: i64, window: usize) -> PairInvariants {
    let mut notes = Vec::new();
    let fit = match cx_pair(&tor, codim as i32 - 1, window) {
        Ok(f) => Some(f),
        Err(e) => {
            notes.push(format!("complexity: {} ({})", e, e.code()));
            None
        }
    };
    let complexity = fit.as_ref().map(|f| f.complexity);
    let range: Vec<usize> = match complexity {
        Some(r) => (r..=codim.max(r + 2)).collect(),
        None => (1..=codim).collect(),
    };
    let theta_s = range
        .into_iter()
        .map(|s| match theta_s(&tor, s, complexity, window) {
            Ok(v) => ThetaValue { s, value: Some(v), error: None },
            Err(e) => ThetaValue { s, value: None, error: Some(e.code().to_string()) },
        })
        .collect();
    let chi = chi(&tor, complexity).ok();
    let q = q_invariant(&tor).ok();
    PairInvariants {
        ring: tor.ring.clone(),
        codim,
        tensor_length,
        theta: theta_function(&tor.lengths),
        tor,
        fit,
        complexity,
        theta_s,
        chi,
        q,
        notes,
    }
}

/// Tor table and invariants of `(M, N)` over their common ring.
pub fn pair_invariants(m: &Module, n: &Module, settings: &Settings) -> Result<PairInvariants> {
    let len = tensor_length(m, n)?;
    let res = resolve_for_tor(m, settings.tor.nmax)?;
    pair_from_resolution(&res, n, len, settings)
}

fn pair_from_resolution(res: &Resolution, n: &Module, len: i64, settings: &Settings) -> Result<PairInvariants> {
    let cx = TensorComplex::new(res, n)?;
    let top = tensor_top_degree(&res.module, n)?;
    let table = table_from_complex(&cx, &settings.tor, top)?;
    Ok(analyse_table(table, res.ring.codim(), len, settings.fit_window))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One named check with the values on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub lhs: String,
    pub relation: String,
    pub rhs: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Check {
    fn new(name: &str, statement: &str, lhs: String, relation: &str, rhs: String, ok: bool) -> Check {
        Check {
            name: name.into(),
            statement: statement.into(),
            lhs,
            relation: relation.into(),
            rhs,
            status: if ok { Status::Pass } else { Status::Fail },
            reason: None,
        }
    }

    pub fn compare(name: &str, statement: &str, lhs: i64, relation: &str, rhs: i64) -> Check {
        let ok = match relation {
            "<=" => lhs <= rhs,
            "<" => lhs < rhs,
            "=" => lhs == rhs,
            ">=" => lhs >= rhs,
            ">" => lhs > rhs,
            _ => panic!("unknown relation {relation}"),
        };
        Check::new(name, statement, lhs.to_string(), relation, rhs.to_string(), ok)
    }

    /// `lhs <=> rhs` or `lhs => rhs` between two described conditions.
    pub fn logical(name: &str, statement: &str, lhs: (String, bool), relation: &str, rhs: (String, bool)) -> Check {
        let ok = match relation {
            "<=>" => lhs.1 == rhs.1,
            "=>" => !lhs.1 || rhs.1,
            _ => panic!("unknown relation {relation}"),
        };
        let mut c = Check::new(
            name,
            statement,
            format!("{} ({})", lhs.0, lhs.1),
            relation,
            format!("{} ({})", rhs.0, rhs.1),
            ok,
        );
        if relation == "=>" && !lhs.1 {
            c.reason = Some("hypothesis false, implication holds vacuously".into());
        }
        c
    }

    /// Equality of two integer sequences.
    pub fn new_lists(name: &str, statement: &str, lhs: &[i64], rhs: &[i64]) -> Check {
        Check::new(name, statement, format!("{lhs:?}"), "=", format!("{rhs:?}"), lhs == rhs)
    }

    pub fn skipped(name: &str, statement: &str, reason: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            statement: statement.into(),
            lhs: String::new(),
            relation: String::new(),
            rhs: String::new(),
            status: Status::Skipped,
            reason: Some(reason.into()),
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Check {
        self.reason = Some(reason.into());
        self
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub dim_q: usize,
    pub dim_r: usize,
    pub codim: usize,
    pub dim_m: usize,
    pub dim_n: usize,
    pub depth_m: usize,
    pub depth_n: usize,
}

impl Dims {
    pub fn of(m: &Module, n: &Module) -> Result<Dims> {
        let dim = |x: &Module, name: &str| {
            x.dimension()?.ok_or_else(|| Error::Input(format!("{name} is the zero module")))
        };
        Ok(Dims {
            dim_q: m.ring.nvars(),
            dim_r: m.ring.dim(),
            codim: m.ring.codim(),
            dim_m: dim(m, "M")?,
            dim_n: dim(n, "N")?,
            depth_m: m.depth()?,
            depth_n: n.depth()?,
        })
    }

    pub fn m_cohen_macaulay(&self) -> bool {
        self.depth_m == self.dim_m
    }

    pub fn n_cohen_macaulay(&self) -> bool {
        self.depth_n == self.dim_n
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub ring: RingText,
    pub m: ModuleText,
    pub n: ModuleText,
    pub dims: Dims,
    pub over_r: PairInvariants,
    pub over_q: PairInvariants,
    pub betti_m: Vec<usize>,
    pub betti_n: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cx_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cx_n: Option<usize>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub properties: Vec<Check>,
    /// Values of the open inequalities, recorded but never asserted.
    pub observations: Vec<Check>,
    /// `dim M + dim N < dim R + r` together with `theta_r > 0`.
    pub question_candidate: bool,
}

impl InvariantReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().chain(&self.properties).filter(|c| c.failed()).count()
    }
}

fn over_polynomial(m: &Module, n: &Module, settings: &Settings) -> Result<PairInvariants> {
    let mq = m.over_polynomial_ring()?;
    let nq = n.over_polynomial_ring()?;
    let len = tensor_length(&mq, &nq)?;
    let res = resolve_for_tor(&mq, settings.tor.nmax)?;
    pair_from_resolution(&res, &nq, len, settings)
}

/// Full invariant report with the theorem checks for a pair over `R`.
pub fn verify_theorems(m: &Module, n: &Module, settings: &Settings) -> Result<InvariantReport> {
    if m.ring != n.ring {
        return Err(Error::RingMismatch);
    }
    let len = tensor_length(m, n)?;
    let dims = Dims::of(m, n)?;
    let nmax = settings.tor.nmax;
    let res_m = resolve_for_tor(m, nmax)?;
    let res_n = resolve_for_tor(n, nmax)?;
    let over_r = pair_from_resolution(&res_m, n, len, settings)?;
    let over_q = over_polynomial(m, n, settings)?;
    let betti = |res: &Resolution| -> Vec<usize> {
        let mut b = res.betti();
        b.resize(nmax + 1, 0);
        b.truncate(nmax + 1);
        b
    };
    let (betti_m, betti_n) = (betti(&res_m), betti(&res_n));
    let c = dims.codim;
    let cx_m = cx_module(&betti_m, c, settings.fit_window).ok().map(|f| f.complexity);
    let cx_n = cx_module(&betti_n, c, settings.fit_window).ok().map(|f| f.complexity);
    let checks = theorem_checks(&dims, &over_r, &over_q, cx_m, cx_n);
    let observations = observations(&dims, cx_m, &over_r);
    let question_candidate = match (over_r.complexity, over_r.theta_r()) {
        (Some(r), Some(t)) => dims.dim_m + dims.dim_n < dims.dim_r + r && t > 0,
        _ => false,
    };
    let properties = if settings.properties {
        property_checks(&res_m, &res_n, m, &over_r, settings)?
    } else {
        Vec::new()
    };
    Ok(InvariantReport {
        ring: m.ring.describe(),
        m: m.describe(),
        n: n.describe(),
        dims,
        over_r,
        over_q,
        betti_m,
        betti_n,
        cx_m,
        cx_n,
        checks,
        properties,
        observations,
        question_candidate,
    })
}

fn theorem_checks(d: &Dims, r_inv: &PairInvariants, q_inv: &PairInvariants, cx_m: Option<usize>, cx_n: Option<usize>) -> Vec<Check> {
    let (dim_q, dim_r, c) = (d.dim_q as i64, d.dim_r as i64, d.codim as i64);
    let (dm, dn, pm, pn) = (d.dim_m as i64, d.dim_n as i64, d.depth_m as i64, d.depth_n as i64);
    let r = r_inv.complexity.map(|r| r as i64);
    let qq = q_inv.q;
    let no_cx = "complexity of the pair not stabilized";
    let mut out = Vec::new();

    out.push(Check::compare("a", "dim M + dim N <= dim R + c", dm + dn, "<=", dim_r + c));
    out.push(match r {
        Some(r) => Check::compare("b", "depth M + depth N <= dim R + cx(M,N)", pm + pn, "<=", dim_r + r),
        None => Check::skipped("b", "depth M + depth N <= dim R + cx(M,N)", no_cx),
    });
    out.push(match qq {
        Some(q) => Check::compare("c", "q^Q - c = dim R - depth M - depth N", q - c, "=", dim_r - pm - pn),
        None => Check::skipped("c", "q^Q - c = dim R - depth M - depth N", "q^Q undefined"),
    });
    match (qq, r) {
        (Some(q), Some(r)) => out.push(Check::compare("d.lower", "c - cx(M,N) <= q^Q", c - r, "<=", q)),
        _ => out.push(Check::skipped("d.lower", "c - cx(M,N) <= q^Q", no_cx)),
    }
    match qq {
        Some(q) => {
            out.push(Check::compare("d.upper", "q^Q <= dim Q", q, "<=", dim_q));
            out.push(Check::compare("e.inequality", "q^Q >= dim Q - dim M - dim N", q, ">=", dim_q - dm - dn));
            out.push(Check::logical(
                "e.equality",
                "q^Q = dim Q - dim M - dim N iff M and N are Cohen-Macaulay",
                (format!("{q} = {}", dim_q - dm - dn), q == dim_q - dm - dn),
                "<=>",
                ("M, N Cohen-Macaulay".into(), d.m_cohen_macaulay() && d.n_cohen_macaulay()),
            ));
        }
        None => {
            for name in ["d.upper", "e.inequality", "e.equality"] {
                out.push(Check::skipped(name, "bounds on q^Q", "q^Q undefined"));
            }
        }
    }
    match (r, cx_m, cx_n) {
        (Some(r), Some(a), Some(b)) => {
            out.push(Check::compare("f", "cx(M,N) >= cx M + cx N - c", r, ">=", a as i64 + b as i64 - c))
        }
        _ => out.push(Check::skipped("f", "cx(M,N) >= cx M + cx N - c", "a complexity did not stabilize")),
    }
    match (r, cx_m) {
        (Some(r), Some(a)) => out.push(Check::compare("g", "cx(M,N) <= cx M", r, "<=", a as i64)),
        _ => out.push(Check::skipped("g", "cx(M,N) <= cx M", "a complexity did not stabilize")),
    }
    match cx_m {
        Some(a) => out.push(Check::compare("h", "dim N + depth M <= dim R + cx M", dn + pm, "<=", dim_r + a as i64)),
        None => out.push(Check::skipped("h", "dim N + depth M <= dim R + cx M", "cx M did not stabilize")),
    }
    let theta_c = r_inv.theta(d.codim);
    match theta_c {
        Some(t) => out.push(
            Check::logical(
                "i",
                "dim M + dim N < dim R + c iff theta_c = 0",
                (format!("{} < {}", dm + dn, dim_r + c), dm + dn < dim_r + c),
                "<=>",
                (format!("theta_{c} = {t}"), t == 0),
            )
            .with_reason("graded rings over a field satisfy the admissibility hypothesis"),
        ),
        None => out.push(Check::skipped("i", "dim M + dim N < dim R + c iff theta_c = 0", "theta_c not stabilized")),
    }
    match (r, r_inv.theta_r()) {
        (Some(r), Some(t)) => out.push(Check::logical(
            "j",
            "theta_r <= 0 implies depth M + depth N < dim R + r",
            (format!("theta_{r} = {t} <= 0"), t <= 0),
            "=>",
            (format!("{} < {}", pm + pn, dim_r + r), pm + pn < dim_r + r),
        )),
        _ => out.push(Check::skipped("j", "theta_r <= 0 implies depth M + depth N < dim R + r", no_cx)),
    }
    match (qq, r_inv.q) {
        (Some(q), Some(qr)) => out.push(Check::compare("k", "q^Q = q^R + c", q, "=", qr + c)),
        _ => out.push(Check::skipped("k", "q^Q = q^R + c", "q^R undefined (Tor over R does not vanish)")),
    }
    out
}

fn observations(d: &Dims, cx_m: Option<usize>, inv: &PairInvariants) -> Vec<Check> {
    let lhs = (d.dim_m + d.dim_n) as i64;
    let mut out = vec![Check::compare("dims_vs_q", "dim M + dim N <= dim Q", lhs, "<=", d.dim_q as i64)];
    if let Some(a) = cx_m {
        out.push(Check::compare("dims_vs_cx", "dim M + dim N <= dim R + cx M", lhs, "<=", (d.dim_r + a) as i64));
    }
    // the converse of (j) is false in general; a failure here is a witness
    if let (Some(r), Some(t)) = (inv.complexity, inv.theta_r()) {
        let depth = (d.depth_m + d.depth_n) as i64;
        let bound = (d.dim_r + r) as i64;
        out.push(Check::logical(
            "j.converse",
            "depth M + depth N < dim R + r implies theta_r <= 0",
            (format!("{depth} < {bound}"), depth < bound),
            "=>",
            (format!("theta_{r} = {t} <= 0"), t <= 0),
        ));
    }
    out
}

fn property_checks(
    res_m: &Resolution,
    res_n: &Resolution,
    m: &Module,
    inv: &PairInvariants,
    settings: &Settings,
) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let flag = |name: &str, statement: &str, ok: bool| {
        Check::new(name, statement, ok.to_string(), "=", "true".into(), ok)
    };
    out.push(flag("dd_zero", "d o d = 0 on the resolution of M", res_m.check_complex()));
    let ops = eisenbud_operators(res_m)?;
    out.push(flag("operator_identity", "lifted d^2 = sum f_i t_i exactly", check_operator_identity(res_m, &ops)));

    let swapped = {
        let cx = TensorComplex::new(res_n, m)?;
        let top = tensor_top_degree(&res_n.module, m)?;
        table_from_complex(&cx, &settings.tor, top)?
    };
    out.push(Check::new(
        "symmetry",
        "l(Tor_n(M,N)) = l(Tor_n(N,M))",
        format!("{:?}", inv.tor.lengths),
        "=",
        format!("{:?}", swapped.lengths),
        inv.tor.lengths == swapped.lengths,
    ));
    out.push(if settings.tor.route == Route::Both && !inv.tor.unchecked.is_empty() {
        let why = format!("degreewise differentials too large for Tor_n, n in {:?}", inv.tor.unchecked);
        Check::skipped("routes_agree", "exact and degreewise homology agree", &why)
    } else if settings.tor.route == Route::Both {
        flag("routes_agree", "exact and degreewise homology agree in every degree", true)
            .with_reason("route disagreement aborts the computation")
    } else {
        Check::skipped("routes_agree", "exact and degreewise homology agree", "single route selected")
    });
    match inv.complexity {
        Some(r) => {
            for s in [r + 1, r + 2] {
                let name = format!("theta_{}_zero", if s == r + 1 { "r+1" } else { "r+2" });
                out.push(match inv.theta(s) {
                    Some(t) => Check::compare(&name, &format!("theta_{s} = 0 for s > cx"), t, "=", 0),
                    None => Check::skipped(&name, &format!("theta_{s} = 0"), "not stabilized on the computed range"),
                });
            }
            out.push(cross_route(inv, r));
        }
        None => out.push(Check::skipped("theta_cross_route", "theta_r = (r-1)! (a - b)", "complexity not stabilized")),
    }
    Ok(out)
}

/// `nabla^{r-1} theta` against the leading coefficients of the even and odd
/// polynomials: `P_e(n) - P_o(n) = (a - b) n^{r-1} + ...`, whose
/// `(r-1)`-st difference is `(r-1)! (a - b)`.
fn cross_route(inv: &PairInvariants, r: usize) -> Check {
    let statement = "theta_r = (r-1)! (a - b)";
    if r == 0 {
        return Check::skipped("theta_cross_route", statement, "cx = 0");
    }
    let (Some(fit), Some(t)) = (&inv.fit, inv.theta(r)) else {
        return Check::skipped("theta_cross_route", statement, "theta_r or fit missing");
    };
    let (a, b) = fit.leading();
    let rhs = (a - b) * factorial(r - 1);
    Check::new(
        "theta_cross_route",
        statement,
        t.to_string(),
        "=",
        rhs.to_string(),
        Rational::from_integer(t) == rhs,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::tests::{quo, ring};

    fn settings(nmax: usize) -> Settings {
        Settings { tor: TorOptions { nmax, ..Default::default() }, ..Default::default() }
    }

    #[test]
    fn hypersurface_invariants() {
        let r = ring(&["x", "y"], &["x*y"]);
        let inv = pair_invariants(&quo(&r, &["x"]), &quo(&r, &["y"]), &settings(12)).unwrap();
        assert_eq!(inv.complexity, Some(1));
        assert_eq!(inv.theta(1), Some(1));
        assert_eq!(inv.theta(2), Some(0));
        assert_eq!(inv.theta.values, vec![1; 6]);
        assert_eq!(inv.chi, None);
        assert_eq!(chi(&inv.tor, inv.complexity).unwrap_err().code(), "CX_POSITIVE");
        assert_eq!(q_invariant(&inv.tor).unwrap_err().code(), "UNDEFINED");
        assert_eq!(theta_s(&inv.tor, 0, Some(1), 3).unwrap_err().code(), "UNDEFINED");
    }

    #[test]
    fn polynomial_ring_chi() {
        let s = ring(&["x", "y"], &[]);
        let inv = pair_invariants(&quo(&s, &["x^2", "x*y"]), &quo(&s, &["y"]), &settings(6)).unwrap();
        assert_eq!(inv.chi, Some(1));
        assert_eq!(inv.complexity, Some(0));
        assert_eq!(inv.theta(0), Some(1));
        let kk = pair_invariants(&quo(&s, &["x", "y"]), &quo(&s, &["x", "y"]), &settings(6)).unwrap();
        assert_eq!((kk.chi, kk.q), (Some(0), Some(2)));
    }

    #[test]
    fn hypersurface_report() {
        let r = ring(&["x", "y"], &["x*y"]);
        let rep = verify_theorems(&quo(&r, &["x"]), &quo(&r, &["y"]), &settings(8)).unwrap();
        assert_eq!(rep.failures(), 0, "{:#?}", rep.checks);
        let c = rep.checks.iter().find(|c| c.name == "c").unwrap();
        assert_eq!((c.lhs.as_str(), c.rhs.as_str()), ("-1", "-1"));
        assert_eq!(rep.over_q.q, Some(0));
        assert_eq!(rep.checks.iter().find(|c| c.name == "k").unwrap().status, Status::Skipped);
    }

    #[test]
    fn residue_field_over_hypersurface() {
        let r = ring(&["x", "y"], &["x*y"]);
        let k = quo(&r, &["x", "y"]);
        let rep = verify_theorems(&k, &k, &settings(8)).unwrap();
        assert_eq!(rep.failures(), 0, "{:#?}", rep.checks);
        assert_eq!(rep.betti_m[..4], [1, 2, 2, 2]);
        assert_eq!((rep.over_r.complexity, rep.cx_m), (Some(1), Some(1)));
        let a = rep.checks.iter().find(|c| c.name == "a").unwrap();
        assert_eq!((a.lhs.as_str(), a.rhs.as_str()), ("0", "2"));
    }
}

#[cfg(test)]
mod codim_two {
    use super::*;
    use crate::resolution::tests::{quo, ring};

    #[test]
    fn e2_report() {
        let r = ring(&["x1", "x2", "y1", "y2"], &["x1*y1", "x2*y2"]);
        let rep = verify_theorems(&quo(&r, &["x1", "x2"]), &quo(&r, &["y1", "y2"]), &Settings::default()).unwrap();
        assert_eq!(rep.failures(), 0, "{:#?}", rep.checks);
        assert_eq!(rep.over_r.tor.lengths, vec![1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6, 0, 7]);
        assert_eq!(rep.over_r.complexity, Some(2));
        assert_eq!((rep.over_r.theta(2), rep.over_r.theta(3)), (Some(1), Some(0)));
        assert_eq!(rep.over_q.q, Some(0));
        let b = rep.checks.iter().find(|c| c.name == "b").unwrap();
        assert_eq!((b.lhs.as_str(), b.rhs.as_str()), ("4", "4"));
        assert!(rep.properties.iter().all(|c| c.status == Status::Pass), "{:#?}", rep.properties);
    }
}
