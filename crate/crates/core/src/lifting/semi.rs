//! Verification of user-supplied liftings `M'` over `S/(f_1..f_c')` and
//! `N'` over `S/(f_{c'+1}..f_c)` of a pair over `R = S/(f_1..f_c)`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Vector};
use crate::error::{Error, Result};
use crate::graded::{CiRing, Module};
use crate::invariants::{pair_invariants, Check, PairInvariants, Settings};
use crate::tor::tensor_length;

/// Whether the homogeneous `seq` is a regular sequence on `m`, by the
/// Hilbert series identity `HS(M/gM) = (1 - t^d) HS(M)` at each step
/// (the difference is `t^d HS(0 :_M g)`).
pub fn is_regular_sequence(m: &Module, seq: &[Poly]) -> Result<bool> {
    let mut cur = m.clone();
    let mut hs = cur.hilbert_series()?;
    for g in seq {
        let d = g.degree().ok_or_else(|| Error::Input("zero element in a regular sequence".into()))? as i32;
        for k in 0..cur.rank() {
            cur.relations.push(Vector::from_poly(g, k));
        }
        let next = cur.hilbert_series()?;
        let expect = hs.sub(&hs.shift(d));
        if next != expect {
            return Ok(false);
        }
        hs = next;
    }
    Ok(true)
}

/// Same generators and the same relation submodule, modulo rings with the
/// same defining ideal.
pub fn same_presentation(a: &Module, b: &Module) -> Result<bool> {
    if !(a.ring.ideal_within(&b.ring) && b.ring.ideal_within(&a.ring)) || a.shifts != b.shifts {
        return Ok(false);
    }
    let (ga, gb) = (a.gb()?, b.gb()?);
    Ok(b.relations.iter().all(|r| ga.contains(r)) && a.relations.iter().all(|r| gb.contains(r)))
}

/// `M'` over `S/(f_1..f_split)` and `N'` over `S/(f_{split+1}..f_c)`.
#[derive(Clone, Debug)]
pub struct Semilifting {
    pub split: usize,
    pub m: Module,
    pub n: Module,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiliftReport {
    pub split: usize,
    pub over_r: PairInvariants,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub over_q: Option<PairInvariants>,
    pub checks: Vec<Check>,
}

impl SemiliftReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.failed()).count()
    }
}

fn flag(name: &str, statement: &str, ok: bool) -> Check {
    Check::compare(name, statement, ok as i64, "=", 1)
}

fn dimension(m: &Module, name: &str) -> Result<i64> {
    m.dimension()?.map(|d| d as i64).ok_or_else(|| Error::Input(format!("{name} is the zero module")))
}

/// The module with the presentation of `m` read over `ring`.
fn reread(m: &Module, ring: &CiRing) -> Module {
    Module { ring: ring.clone(), shifts: m.shifts.clone(), relations: m.relations.clone() }
}

pub fn verify_semilifting(m: &Module, n: &Module, lift: &Semilifting, settings: &Settings) -> Result<SemiliftReport> {
    let ring = &m.ring;
    if n.ring != *ring {
        return Err(Error::RingMismatch);
    }
    let (r1, r2) = (&lift.m.ring, &lift.n.ring);
    if r1.poly != ring.poly || r2.poly != ring.poly {
        return Err(Error::RingMismatch);
    }
    let c = ring.codim();
    let mut checks = vec![Check::compare("split", "c' + (c - c') = c", (r1.codim() + r2.codim()) as i64, "=", c as i64)];
    checks.push(Check::compare("split_index", "codim of the ring of M' is c'", r1.codim() as i64, "=", lift.split as i64));
    let mut joint = r1.relations().to_vec();
    joint.extend_from_slice(r2.relations());
    let same_ideal = match CiRing::new(ring.poly.clone(), joint, "R") {
        Ok(sum) => sum.ideal_within(ring) && ring.ideal_within(&sum),
        Err(_) => false,
    };
    checks.push(flag("ideals", "the two relation sets together generate the ideal of R", same_ideal));
    checks.push(flag(
        "regular_on_m",
        "the relations of the ring of N' form a regular sequence on M'",
        is_regular_sequence(&lift.m, r2.relations())?,
    ));
    checks.push(flag(
        "regular_on_n",
        "the relations of the ring of M' form a regular sequence on N'",
        is_regular_sequence(&lift.n, r1.relations())?,
    ));
    checks.push(flag("presentation_m", "M' / (f) M' = M", same_presentation(&reread(&lift.m, ring), m)?));
    checks.push(flag("presentation_n", "N' / (f) N' = N", same_presentation(&reread(&lift.n, ring), n)?));
    let (dm, dn) = (dimension(m, "M")?, dimension(n, "N")?);
    let (dm1, dn1) = (dimension(&lift.m, "M'")?, dimension(&lift.n, "N'")?);
    checks.push(Check::compare("dimension", "dim M' + dim N' = dim M + dim N + c", dm1 + dn1, "=", dm + dn + c as i64));

    let over_r = pair_invariants(m, n, settings)?;
    let mq = lift.m.over_polynomial_ring()?;
    let nq = lift.n.over_polynomial_ring()?;
    let over_q = match tensor_length(&mq, &nq) {
        Ok(_) => Some(pair_invariants(&mq, &nq, settings)?),
        Err(e) if e.code() == "INFINITE_COLENGTH" => {
            checks.push(flag("finite_colength", "l(M' ⊗ N') is finite", false));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(q) = &over_q {
        checks.push(Check::new_lists(
            "tor",
            "l(Tor^Q_i(M',N')) = l(Tor^R_i(M,N)) for i <= nmax",
            &q.tor.lengths,
            &over_r.tor.lengths,
        ));
        checks.push(match (q.chi, over_r.chi) {
            (Some(a), Some(b)) => Check::compare("chi", "chi^Q(M',N') = chi^R(M,N)", a, "=", b),
            _ => Check::skipped("chi", "chi^Q(M',N') = chi^R(M,N)", "chi undefined over R"),
        });
    }
    let dim_r = ring.dim() as i64;
    match over_r.complexity {
        Some(r) => {
            checks.push(Check::compare("liftable_dimension", "dim M + dim N <= dim R + r", dm + dn, "<=", dim_r + r as i64));
            checks.push(match over_r.theta(r) {
                Some(t) => Check::compare("liftable_theta", "theta_r >= 0", t, ">=", 0),
                None => Check::skipped("liftable_theta", "theta_r >= 0", "theta_r not stabilized"),
            });
        }
        None => checks.push(Check::skipped("liftable", "conclusions for liftable pairs", "complexity not stabilized")),
    }
    Ok(SemiliftReport { split: lift.split, over_r, over_q, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use crate::invariants::Status;
    use crate::resolution::tests::{quo, ring};
    use crate::tor::TorOptions;

    fn settings() -> Settings {
        Settings { tor: TorOptions { nmax: 8, ..Default::default() }, ..Default::default() }
    }

    #[test]
    fn regular_sequences() {
        let s = ring(&["x", "y"], &[]);
        let p = |t: &str| parse_poly(&s.poly, t, 1, 1).unwrap();
        let m = quo(&s, &["x"]);
        assert!(is_regular_sequence(&m, &[p("y^2")]).unwrap());
        assert!(!is_regular_sequence(&m, &[p("x*y")]).unwrap());
        assert!(is_regular_sequence(&Module::free(s.clone(), vec![0]), &[p("x"), p("y")]).unwrap());
        let xy = [p("x*y"), p("x^2")];
        assert!(!is_regular_sequence(&Module::free(s, vec![0]), &xy).unwrap());
    }

    #[test]
    fn intersection_lifting() {
        let names = ["X1", "X2", "X3", "X4"];
        let r = ring(&names, &["X1*X4 - X2*X3", "X2^2"]);
        let r1 = ring(&names, &["X1*X4 - X2*X3"]);
        let r2 = ring(&names, &["X2^2"]);
        let lift = Semilifting { split: 1, m: quo(&r1, &["X1", "X3", "X4"]), n: quo(&r2, &["X2"]) };
        let rep = verify_semilifting(&quo(&r, &["X1", "X3", "X4"]), &quo(&r, &["X2"]), &lift, &settings()).unwrap();
        assert_eq!(rep.failures(), 0, "{:#?}", rep.checks);
        assert_eq!(rep.over_q.as_ref().unwrap().tor.lengths, rep.over_r.tor.lengths);
    }

    #[test]
    fn wrong_split_is_reported() {
        let names = ["x1", "x2", "y1", "y2"];
        let r = ring(&names, &["x1*y1", "x2*y2"]);
        let s = ring(&names, &[]);
        let lift = Semilifting { split: 2, m: quo(&r, &["x1", "x2"]), n: quo(&s, &["y1", "y2"]) };
        let rep = verify_semilifting(&quo(&r, &["x1", "x2"]), &quo(&r, &["y1", "y2"]), &lift, &settings()).unwrap();
        let get = |name: &str| rep.checks.iter().find(|c| c.name == name).unwrap().status;
        assert_eq!(get("regular_on_n"), Status::Fail);
        assert_eq!(get("tor"), Status::Fail);
    }
}
