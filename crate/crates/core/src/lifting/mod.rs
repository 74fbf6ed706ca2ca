//! Principal liftings `R' = S/(g_1..g_{c-1})` of `R = R'/(g_c)` built from
//! an eventually surjective combination of Eisenbud operators, and checks of
//! how Tor, complexity and theta change along them.

mod semi;

pub use semi::{is_regular_sequence, same_presentation, verify_semilifting, SemiliftReport, Semilifting};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::graded::{CiRing, Module, RingText};
use crate::invariants::{analyse_table, Check, PairInvariants, Settings};
use crate::resolution::{eisenbud_operators, Operators, Resolution};
use crate::tor::{
    action_image_rank, form_is_surjective, resolve_for_tor, table_from_complex, tensor_length, tensor_top_degree,
    SurjectivityCheck, TensorComplex, TorTable,
};

/// A combination `sum a_i t_i` found to be surjective on the trailing window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjectiveForm {
    pub coefficients: Vec<u32>,
    /// Index of the relation whose coefficient serves as the unit `a_c`.
    pub pivot: usize,
    pub attempts: usize,
    pub seed: u64,
    pub window: Vec<usize>,
    pub checks: Vec<SurjectivityCheck>,
}

/// Homological degrees `n >= 2` of the trailing window of width `w`.
pub fn trailing_window(nmax: usize, w: usize) -> Vec<usize> {
    (nmax.saturating_sub(w - 1).max(2)..=nmax).collect()
}

/// Searches for random coefficients, supported on relations of a single
/// degree, whose operator combination is surjective
/// `Tor_n -> Tor_{n-2}` for every `n` in the trailing window. Degree
/// classes are tried in increasing order, one attempt each, cycling.
pub fn find_surjective_form(
    cx: &TensorComplex<'_>,
    ops: &Operators,
    table: &TorTable,
    settings: &Settings,
) -> Result<SurjectiveForm> {
    let ring = &cx.res.ring;
    let c = ring.codim();
    if c == 0 {
        return Err(Error::Input("the polynomial ring has no principal lifting".into()));
    }
    let degs = ring.relation_degrees();
    let mut classes: Vec<u32> = degs.clone();
    classes.sort_unstable();
    classes.dedup();
    let p = ring.poly.field.p();
    let window = trailing_window(table.nmax(), settings.surjectivity_window);
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    for attempt in 0..settings.retries.max(1) {
        let class = classes[attempt % classes.len()];
        let coefficients: Vec<u32> =
            degs.iter().map(|&d| if d == class { rng.gen_range(1..p) } else { 0 }).collect();
        let checks = form_is_surjective(cx, ops, &coefficients, &window, table)?;
        if checks.iter().all(|c| c.passed()) {
            let pivot = coefficients.iter().rposition(|&a| a != 0).unwrap();
            return Ok(SurjectiveForm {
                coefficients,
                pivot,
                attempts: attempt + 1,
                seed: settings.seed,
                window,
                checks,
            });
        }
        log::debug!("attempt {} with {:?} not surjective", attempt + 1, coefficients);
    }
    Err(Error::NoSurjectiveForm { attempts: settings.retries.max(1) })
}

#[derive(Clone, Debug)]
pub struct PrincipalLifting {
    pub coefficients: Vec<u32>,
    pub pivot: usize,
    /// `g_i = f_i - (a_i / a_p) f_p` for `i != p`: the relations of `R'`.
    pub ring: CiRing,
    /// `g_p = f_p / a_p`, with `R = R' / (g_p)`.
    pub last: Poly,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingText {
    pub coefficients: Vec<u32>,
    pub pivot: usize,
    pub ring: RingText,
    pub last: String,
    pub checks: Vec<Check>,
}

impl PrincipalLifting {
    pub fn describe(&self) -> LiftingText {
        LiftingText {
            coefficients: self.coefficients.clone(),
            pivot: self.pivot,
            ring: self.ring.describe(),
            last: self.ring.poly.display(&self.last),
            checks: self.checks.clone(),
        }
    }
}

fn lifted_tag(tag: &str) -> String {
    format!("{tag}'")
}

/// The principal lifting for `(a_1..a_c)` with `a_c != 0`.
pub fn principal_lifting(ring: &CiRing, coefficients: &[u32]) -> Result<PrincipalLifting> {
    let c = ring.codim();
    if c == 0 || coefficients.len() != c {
        return Err(Error::Input(format!("expected {c} coefficients, got {}", coefficients.len())));
    }
    principal_lifting_at(ring, coefficients, c - 1)
}

/// The principal lifting with the unit coefficient at `pivot`; only
/// relations of the pivot's degree may carry nonzero coefficients.
pub fn principal_lifting_at(ring: &CiRing, coefficients: &[u32], pivot: usize) -> Result<PrincipalLifting> {
    let f = ring.poly.field;
    let rels = ring.relations();
    let a: Vec<u32> = coefficients.iter().map(|&x| f.elem(x as i64)).collect();
    if a.get(pivot).copied().unwrap_or(0) == 0 {
        return Err(Error::DegenerateCoefficients(format!("coefficient {} must be nonzero", pivot + 1)));
    }
    let degs = ring.relation_degrees();
    if a.iter().zip(&degs).any(|(&ai, &d)| ai != 0 && d != degs[pivot]) {
        return Err(Error::DegenerateCoefficients("coefficients must sit on relations of one degree".into()));
    }
    let inv = f.inv(a[pivot]);
    let fp = &rels[pivot];
    let mut new_rels = Vec::new();
    for (i, fi) in rels.iter().enumerate() {
        if i != pivot {
            new_rels.push(fi.sub(&f, &fp.scale(&f, f.mul(a[i], inv))));
        }
    }
    let last = fp.scale(&f, inv);
    let tag = lifted_tag(&ring.tag);
    let lifted = if new_rels.is_empty() {
        let mut s = CiRing::polynomial(ring.poly.clone());
        s.tag = tag;
        s
    } else {
        CiRing::new(ring.poly.clone(), new_rels.clone(), &tag)?
    };
    let mut all = new_rels;
    all.push(last.clone());
    let generated = CiRing::new(ring.poly.clone(), all, "g")?;
    let same = ring.ideal_within(&generated) && generated.ideal_within(ring);
    let flag = |name: &str, statement: &str, ok: bool| Check::compare(name, statement, ok as i64, "=", 1);
    let checks = vec![
        flag("same_ideal", "(f_1..f_c) = (g_1..g_c) by two-sided membership", same),
        Check::compare("dimension", "dim R' = dim R + 1", lifted.dim() as i64, "=", ring.dim() as i64 + 1),
        flag("regular", "g_1..g_{c-1} is a regular sequence", true).with_reason("codimension count of R'"),
    ];
    Ok(PrincipalLifting { coefficients: coefficients.to_vec(), pivot, ring: lifted, last, checks })
}

/// Total rank of `x = sum a_i t_i: Tor_n -> Tor_{n-2}`.
fn action_rank(cx: &TensorComplex<'_>, ops: &Operators, form: &SurjectiveForm, n: usize, table: &TorTable) -> usize {
    if n < 2 || n > table.nmax() {
        return 0;
    }
    let deg = cx.res.ring.relation_degrees()[form.pivot] as i32;
    let op = ops.combination(cx.res, &form.coefficients, n);
    table.graded[n - 2].iter().map(|&(e, _)| action_image_rank(cx, &op, deg, n, e).0).sum()
}

/// The long exact sequence
/// `Tor^R_{n+1} -x-> Tor^R_{n-1} -> Tor^{R'}_n -> Tor^R_n -x-> Tor^R_{n-2}`
/// at the level of lengths:
/// `l(Tor^{R'}_n) = (l_{n-1} - rank x_{n+1}) + (l_n - rank x_n)`.
pub fn change_of_rings_check(
    cx: &TensorComplex<'_>,
    ops: &Operators,
    form: &SurjectiveForm,
    over_r: &TorTable,
    over_lift: &TorTable,
) -> Vec<Check> {
    let l = &over_r.lengths;
    (0..over_r.nmax())
        .map(|n| {
            let coker = if n == 0 { 0 } else { l[n - 1] - action_rank(cx, ops, form, n + 1, over_r) as i64 };
            let ker = l[n] - action_rank(cx, ops, form, n, over_r) as i64;
            Check::compare(
                &format!("les_{n}"),
                "l(Tor'_n) = l(coker x_{n+1}) + l(ker x_n)",
                over_lift.lengths[n],
                "=",
                coker + ker,
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftStep {
    pub form: SurjectiveForm,
    pub lifting: LiftingText,
    pub over_lift: PairInvariants,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftChain {
    pub over_r: PairInvariants,
    pub steps: Vec<LiftStep>,
    /// `theta_r` over `R` against chi at the bottom of the chain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<Check>,
}

impl LiftChain {
    pub fn failures(&self) -> usize {
        let step = self.steps.iter().flat_map(|s| s.checks.iter().chain(&s.lifting.checks));
        step.chain(&self.bottom).filter(|c| c.failed()).count()
    }

    pub fn bottom_ring(&self) -> &PairInvariants {
        self.steps.last().map(|s| &s.over_lift).unwrap_or(&self.over_r)
    }
}

/// Checks of the complexity reduction for one lifting step: the length identity on the
/// window, the drop in complexity and `theta'_{s-1} = theta_s` for
/// `s = cx` and `s = c`.
pub fn verify_reduction(inv: &PairInvariants, lifted: &PairInvariants, window: &[usize]) -> Vec<Check> {
    let (l, lp) = (&inv.tor.lengths, &lifted.tor.lengths);
    let mut out: Vec<Check> = window
        .iter()
        .map(|&n| {
            Check::compare(&format!("length_{n}"), "l(Tor'_n) = l(Tor_n) - l(Tor_{n-2})", lp[n], "=", l[n] - l[n - 2])
        })
        .collect();
    match (inv.complexity, lifted.complexity) {
        (Some(r), Some(rp)) => {
            out.push(Check::compare("cx_drop", "cx' = cx - 1", rp as i64, "=", r as i64 - 1));
            let mut ss = vec![r, inv.codim];
            ss.dedup();
            for s in ss.into_iter().filter(|&s| s >= 1) {
                let name = format!("theta_{s}");
                let statement = format!("theta'_{} = theta_{s}", s - 1);
                out.push(match (lifted.theta(s - 1), inv.theta(s)) {
                    (Some(a), Some(b)) => Check::compare(&name, &statement, a, "=", b),
                    _ => Check::skipped(&name, &statement, "theta not stabilized"),
                });
            }
        }
        _ => out.push(Check::skipped("cx_drop", "cx' = cx - 1", "complexity not stabilized")),
    }
    out
}

/// Resolution of `m` and the invariants of `(m, n)` at the ring of `m`.
fn level(m: &Module, n: &Module, len: i64, settings: &Settings) -> Result<(Resolution, PairInvariants)> {
    let res = resolve_for_tor(m, settings.tor.nmax)?;
    let table = {
        let cx = TensorComplex::new(&res, n)?;
        table_from_complex(&cx, &settings.tor, tensor_top_degree(m, n)?)?
    };
    let inv = analyse_table(table, m.ring.codim(), len, settings.fit_window);
    Ok((res, inv))
}

/// Lifts repeatedly until the complexity reaches zero, verifying each step.
pub fn lift_chain(m: &Module, n: &Module, settings: &Settings) -> Result<LiftChain> {
    let len = tensor_length(m, n)?;
    let (mut m, mut n) = (m.clone(), n.clone());
    let (mut res, over_r) = level(&m, &n, len, settings)?;
    let mut inv = over_r.clone();
    let mut steps = Vec::new();
    loop {
        let r = inv.complexity.ok_or_else(|| {
            Error::NotStabilized(format!("complexity over {} did not stabilize", m.ring.tag))
        })?;
        if r == 0 {
            break;
        }
        if m.ring.codim() == 0 {
            return Err(Error::Internal("positive complexity over the polynomial ring".into()));
        }
        let cx = TensorComplex::new(&res, &n)?;
        let ops = eisenbud_operators(&res)?;
        let form = find_surjective_form(&cx, &ops, &inv.tor, settings)?;
        let lifting = principal_lifting_at(&m.ring, &form.coefficients, form.pivot)?;
        let (m2, n2) = (m.over_ring(&lifting.ring)?, n.over_ring(&lifting.ring)?);
        let (res2, inv2) = level(&m2, &n2, len, settings)?;
        let mut checks = change_of_rings_check(&cx, &ops, &form, &inv.tor, &inv2.tor);
        checks.extend(verify_reduction(&inv, &inv2, &form.window));
        drop(cx);
        steps.push(LiftStep { form, lifting: lifting.describe(), over_lift: inv2.clone(), checks });
        (m, n, res, inv) = (m2, n2, res2, inv2);
    }
    let bottom = match (over_r.complexity, steps.last()) {
        (Some(r), Some(last)) => Some(match (over_r.theta(r), last.over_lift.chi) {
            (Some(t), Some(x)) => Check::compare("bottom", &format!("theta_{r} over R = chi at the bottom"), t, "=", x),
            _ => Check::skipped("bottom", "theta_r = chi at the bottom", "theta_r or chi undefined"),
        }),
        _ => None,
    };
    Ok(LiftChain { over_r, steps, bottom })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::Status;
    use crate::resolution::tests::{quo, ring};
    use crate::tor::TorOptions;

    fn settings(nmax: usize) -> Settings {
        Settings { tor: TorOptions { nmax, ..Default::default() }, ..Default::default() }
    }

    #[test]
    fn lifting_formulas() {
        let r = ring(&["x1", "x2", "y1", "y2"], &["x1*y1", "x2*y2"]);
        let l = principal_lifting(&r, &[1, 1]).unwrap();
        assert_eq!(l.describe().ring.relations, vec!["x1*y1 - x2*y2".to_string()]);
        assert!(l.checks.iter().all(|c| c.status == Status::Pass));
        let l = principal_lifting(&r, &[0, 1]).unwrap();
        assert_eq!(l.describe().ring.relations, vec!["x1*y1".to_string()]);
        assert_eq!(principal_lifting(&r, &[1, 0]).unwrap_err().code(), "DEGENERATE");
        let h = ring(&["x", "y"], &["x*y"]);
        let l = principal_lifting(&h, &[5]).unwrap();
        assert_eq!(l.ring.codim(), 0);
        assert_eq!(l.ring.dim(), 2);
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        let r = ring(&["x", "y"], &["x^2", "y^3"]);
        assert_eq!(principal_lifting(&r, &[1, 1]).unwrap_err().code(), "DEGENERATE");
        assert!(principal_lifting_at(&r, &[1, 0], 0).is_ok());
    }

    #[test]
    fn hypersurface_chain() {
        let r = ring(&["x", "y"], &["x*y"]);
        let chain = lift_chain(&quo(&r, &["x"]), &quo(&r, &["y"]), &settings(8)).unwrap();
        assert_eq!(chain.steps.len(), 1);
        assert_eq!(chain.failures(), 0, "{:#?}", chain.steps[0].checks);
        assert_eq!(chain.bottom_ring().chi, Some(1));
        assert_eq!(chain.bottom.as_ref().unwrap().status, Status::Pass);
    }

    #[test]
    fn codimension_two_chain() {
        let r = ring(&["x1", "x2", "y1", "y2"], &["x1*y1", "x2*y2"]);
        let chain = lift_chain(&quo(&r, &["x1", "x2"]), &quo(&r, &["y1", "y2"]), &settings(10)).unwrap();
        assert_eq!(chain.steps.len(), 2);
        assert_eq!(chain.failures(), 0, "{:#?}", chain.steps);
        assert_eq!(chain.steps[0].over_lift.complexity, Some(1));
        assert_eq!(chain.steps[0].over_lift.theta(1), Some(1));
        assert_eq!(chain.bottom_ring().chi, Some(1));
    }

    #[test]
    fn window_bounds() {
        assert_eq!(trailing_window(12, 4), vec![9, 10, 11, 12]);
        assert_eq!(trailing_window(3, 4), vec![2, 3]);
    }
}
