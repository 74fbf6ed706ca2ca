//! Acceptance suite: one test per criterion. Every comparison is exact
//! (integer or rational equality); no numerical tolerance is involved.

use std::path::PathBuf;
use std::process::Command as Process;

use citor::algebra::{PolyRing, Vector};
use citor::graded::Module;
use citor::invariants::{biadditivity_check, verify_theorems, Check, Settings, Status};
use citor::io::{parse_problem, random_instances, random_sequences, Body, Report, BUNDLED};
use citor::tor::{tor_table, Route, TorOptions};

const NMAX: usize = 12;

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.cit"))
}

fn cli(args: &[&str]) -> (Report, i32) {
    let out = Process::new(env!("CARGO_BIN_EXE_citor")).args(args).output().expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    (report, out.status.code().unwrap())
}

fn body<'a>(r: &'a Report, command: &str) -> &'a Body {
    &r.results.iter().find(|o| o.command == command).unwrap_or_else(|| panic!("no {command}")).body
}

fn check<'a>(checks: &'a [Check], name: &str) -> &'a Check {
    checks.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no check {name}"))
}

/// Prints one result line and fails the test on a mismatch.
fn verdict(label: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("{label}: PASS");
    } else {
        println!("{label}: FAIL");
        panic!("{label}:\n  {}", failures.join("\n  "));
    }
}

macro_rules! expect {
    ($fails:ident, $lhs:expr, $rhs:expr, $what:expr) => {
        let (l, r) = ($lhs, $rhs);
        if l != r {
            $fails.push(format!("{}: got {:?}, expected {:?}", $what, l, r));
        }
    };
}

/// The periodic table `1, 0, 1, 0, ...` of `R/(x)` against `R/(y)` over
/// `k[x,y]/(xy)`, from the 2-periodic resolution `... -x-> R -y-> R -x-> R`.
fn hypersurface_oracle() -> Vec<i64> {
    (0..=NMAX).map(|n| (n % 2 == 0) as i64).collect()
}

/// Künneth: the table of a product pair is the convolution of the tables.
fn convolve(a: &[i64], b: &[i64]) -> Vec<i64> {
    (0..a.len()).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect()
}

#[test]
fn criterion_1_hypersurface() {
    let file = corpus_file("hypersurface");
    let file = file.to_str().unwrap();
    let mut fails = Vec::new();
    let (tor, code) = cli(&["tor", file, "H"]);
    expect!(fails, code, 0, "tor exit code");
    let Body::Tor(t) = body(&tor, "tor") else { panic!("tor body") };
    expect!(fails, t.over_r.lengths.clone(), hypersurface_oracle(), "l(Tor_n), n <= 12");
    let (rep, code) = cli(&["verify", file, "H"]);
    expect!(fails, code, 0, "verify exit code");
    let Body::Invariants(inv) = body(&rep, "verify") else { panic!("verify body") };
    expect!(fails, inv.over_r.complexity, Some(1), "cx");
    expect!(fails, inv.over_r.theta(1), Some(1), "theta_1");
    expect!(fails, inv.over_q.q, Some(0), "q^Q");
    let c = check(&inv.checks, "c");
    expect!(fails, (c.lhs.as_str(), c.rhs.as_str(), c.status), ("-1", "-1", Status::Pass), "q^Q - c = dim R - depths");
    verdict("criterion 1 (hypersurface table, cx 1, theta_1 1, q^Q 0, identity 0-1 = 1-1-1)", &fails);
}

#[test]
fn criterion_2_codimension_two() {
    let file = corpus_file("codim2");
    let file = file.to_str().unwrap();
    let mut fails = Vec::new();
    let (rep, code) = cli(&["verify", file, "P"]);
    expect!(fails, code, 0, "verify exit code");
    let Body::Invariants(inv) = body(&rep, "verify") else { panic!("verify body") };
    let h = hypersurface_oracle();
    let closed: Vec<i64> = (0..=NMAX as i64).map(|n| if n % 2 == 0 { n / 2 + 1 } else { 0 }).collect();
    expect!(fails, convolve(&h, &h), closed.clone(), "Künneth oracle against the closed form");
    expect!(fails, inv.over_r.tor.lengths.clone(), closed, "l(Tor_n), n <= 12");
    expect!(fails, inv.over_r.complexity, Some(2), "cx = c");
    expect!(fails, inv.dims.codim, 2, "c");
    expect!(fails, inv.over_q.q, Some(0), "q^Q");
    expect!(fails, inv.over_r.theta(2), Some(1), "theta_2");
    let b = check(&inv.checks, "b");
    expect!(fails, (b.lhs.as_str(), b.rhs.as_str(), b.status), ("4", "4", Status::Pass), "depth inequality");
    let j = check(&inv.checks, "j");
    expect!(fails, j.status, Status::Pass, "equality with theta_2 > 0");
    let (theta, code) = cli(&["theta", file, "P", "--s", "2"]);
    expect!(fails, code, 0, "theta exit code");
    match body(&theta, "theta --s 2") {
        Body::Theta(t) => {
            expect!(fails, t.value, 1, "theta --s 2");
        }
        other => fails.push(format!("theta body {other:?}")),
    }
    verdict("criterion 2 (codim 2 table n+1/0, cx 2 = c, q^Q 0, theta_2 1, depth 2+2 = 2+2)", &fails);
}

#[test]
fn criterion_3_principal_lifting() {
    let file = corpus_file("codim2");
    let (rep, code) = cli(&["lift", file.to_str().unwrap(), "P", "--seed", "0"]);
    let mut fails = Vec::new();
    expect!(fails, code, 0, "lift exit code");
    let Body::Lift(chain) = body(&rep, "lift") else { panic!("lift body") };
    expect!(fails, chain.steps.len(), 2, "number of liftings to cx 0");
    expect!(fails, chain.failures(), 0, "failed checks in the chain");
    if let [first, second] = &chain.steps[..] {
        if first.form.attempts > 8 {
            fails.push(format!("surjective form after {} attempts", first.form.attempts));
        }
        // over R' the table is l_n - l_{n-2}: 1, 0, 1, 0, ...
        expect!(fails, first.over_lift.tor.lengths.clone(), hypersurface_oracle(), "l(Tor^R')");
        for &n in &first.form.window {
            let name = format!("length_{n}");
            expect!(fails, check(&first.checks, &name).status, Status::Pass, name);
        }
        expect!(fails, (chain.over_r.complexity, first.over_lift.complexity), (Some(2), Some(1)), "cx drop");
        expect!(fails, (first.over_lift.theta(1), chain.over_r.theta(2)), (Some(1), Some(1)), "theta'_1 = theta_2");
        expect!(fails, second.over_lift.complexity, Some(0), "cx at the bottom");
        expect!(fails, second.over_lift.chi, Some(1), "chi at the bottom");
        for c in first.lifting.checks.iter().chain(&second.lifting.checks) {
            expect!(fails, c.status, Status::Pass, format!("lifting check {}", c.name));
        }
    }
    verdict("criterion 3 (lift codim 2: form within 8 retries, length identity, cx 2 -> 1 -> 0, theta'_1 = 1, chi 1)", &fails);
}

#[test]
fn criterion_4_chi_converse() {
    let file = corpus_file("depth_gap");
    let file = file.to_str().unwrap();
    let mut fails = Vec::new();
    let (rep, code) = cli(&["chi", file, "C", "--level", "q"]);
    expect!(fails, code, 0, "chi exit code");
    match body(&rep, "chi --level q") {
        Body::Chi(c) => {
            expect!(fails, c.value, 1, "chi^Q");
        }
        other => fails.push(format!("chi body {other:?}")),
    }
    let (rep, _) = cli(&["verify", file, "C"]);
    let Body::Invariants(inv) = body(&rep, "verify") else { panic!("verify body") };
    let d = &inv.dims;
    expect!(fails, (d.depth_m, d.depth_n, d.dim_q), (0, 1, 2), "depth M, depth N, dim S");
    expect!(fails, inv.over_r.chi, Some(1), "chi over S");
    let witness = check(&inv.observations, "j.converse");
    expect!(fails, witness.status, Status::Fail, "converse implication refuted");
    verdict("criterion 4 (chi^Q = 1 with depth 0 + 1 < dim S = 2)", &fails);
}

#[test]
fn criterion_5_semilifting() {
    let file = corpus_file("intersection");
    let (rep, code) = cli(&["semilift", file.to_str().unwrap(), "L"]);
    let mut fails = Vec::new();
    expect!(fails, code, 0, "semilift exit code");
    let Body::Semilift(s) = body(&rep, "semilift") else { panic!("semilift body") };
    for c in &s.checks {
        expect!(fails, c.status, Status::Pass, format!("check {}", c.name));
    }
    match &s.over_q {
        Some(q) => {
            expect!(fails, q.tor.lengths.len(), NMAX + 1, "range of i");
            expect!(fails, q.tor.lengths.clone(), s.over_r.tor.lengths.clone(), "l(Tor^S_i(M',N')) = l(Tor^R_i(M,N))");
        }
        None => fails.push("no table over S".into()),
    }
    verdict("criterion 5 (semilifting: dimension identity and equal Tor lengths for i <= 12)", &fails);
}

fn settings() -> Settings {
    Settings { tor: TorOptions { nmax: NMAX, ..Default::default() }, ..Default::default() }
}

#[test]
fn criterion_6_random_theorem_suite() {
    let mut fails = Vec::new();
    let mut skipped = 0;
    let mut by_cx = std::collections::BTreeMap::new();
    let instances = random_instances(0, 50);
    expect!(fails, instances.len(), 50, "instances");
    for inst in &instances {
        let p = parse_problem(&inst.text, None).unwrap();
        let (_, m, n) = p.pair("P").unwrap();
        let rep = match verify_theorems(m, n, &settings()) {
            Ok(r) => r,
            Err(e) => {
                fails.push(format!("{}: {e}", inst.name));
                continue;
            }
        };
        *by_cx.entry(rep.over_r.complexity).or_insert(0) += 1;
        for c in &rep.checks {
            match c.status {
                Status::Fail => fails.push(format!("{} check {}: {} {} {}", inst.name, c.name, c.lhs, c.relation, c.rhs)),
                Status::Skipped => {
                    assert!(!c.reason.as_deref().unwrap_or("").is_empty(), "skip without reason");
                    println!("  {} skipped {}: {}", inst.name, c.name, c.reason.as_deref().unwrap());
                    skipped += 1;
                }
                Status::Pass => {}
            }
        }
    }
    println!("  {skipped} skipped checks across 50 instances; instances by complexity: {by_cx:?}");
    verdict("criterion 6 (checks a-k on 50 random monomial instances: no failures)", &fails);
}

/// `NF(NF(v)) = NF(v)` and `NF(relation) = 0` on products of relations
/// with variables plus a monomial.
fn gb_idempotent(m: &Module) -> Result<(), String> {
    let gb = m.gb().map_err(|e| e.to_string())?;
    let poly: &PolyRing = &m.ring.poly;
    let f = poly.field;
    for (k, rel) in m.relations.iter().enumerate() {
        if !gb.normal_form(rel).unwrap().is_zero() {
            return Err(format!("relation {k} does not reduce to zero"));
        }
        let x = poly.var(k % poly.nvars());
        let y = poly.var((k + 1) % poly.nvars());
        let v = rel.mul_poly(&f, &x).add(&f, &Vector::from_poly(&x.mul(&f, &y).mul(&f, &y), 0));
        let once = gb.normal_form(&v).unwrap();
        if gb.normal_form(&once).unwrap() != once {
            return Err(format!("normal form of relation {k} is not idempotent"));
        }
    }
    Ok(())
}

#[test]
fn criterion_7_properties() {
    let mut fails = Vec::new();
    let mut pairs = Vec::new();
    for b in BUNDLED {
        let p = parse_problem(b.text, None).unwrap();
        for decl in &p.pairs {
            let (_, m, n) = p.pair(&decl.name).unwrap();
            pairs.push((format!("{}:{}", b.name, decl.name), m.clone(), n.clone()));
        }
    }
    for inst in random_instances(0, 50) {
        let p = parse_problem(&inst.text, None).unwrap();
        let (_, m, n) = p.pair("P").unwrap();
        pairs.push((inst.name.clone(), m.clone(), n.clone()));
    }
    let required = ["dd_zero", "operator_identity", "symmetry", "routes_agree", "theta_r+1_zero", "theta_r+2_zero"];
    for (name, m, n) in &pairs {
        for (which, x) in [("M", m), ("N", n)] {
            if let Err(e) = gb_idempotent(x) {
                fails.push(format!("{name} {which}: {e}"));
            }
        }
        let rep = verify_theorems(m, n, &settings()).unwrap();
        for prop in &rep.properties {
            match prop.status {
                Status::Fail => fails.push(format!("{name} {}: {} vs {}", prop.name, prop.lhs, prop.rhs)),
                Status::Skipped if required.contains(&prop.name.as_str()) => {
                    fails.push(format!("{name} {} skipped: {:?}", prop.name, prop.reason))
                }
                _ => {}
            }
        }
        // both routes separately, against each other
        let route = |r: Route| tor_table(m, n, &TorOptions { route: r, ..settings().tor }).unwrap().lengths;
        expect!(fails, route(Route::Exact), route(Route::Degreewise), format!("{name} exact vs degreewise"));
    }
    println!("  {} pairs", pairs.len());
    verdict("criterion 7 (GB idempotence, dd = 0, operator identity, symmetry, routes, theta_r+1 = theta_r+2 = 0, cross route)", &fails);
}

#[test]
fn criterion_8_biadditivity() {
    let mut fails = Vec::new();
    let sequences = random_sequences(0, 10);
    expect!(fails, sequences.len(), 10, "sequences");
    for inst in &sequences {
        let p = parse_problem(&inst.text, None).unwrap();
        let decl = &p.sequences[0];
        let n = p.module(&decl.against).unwrap();
        match biadditivity_check(&decl.ses, n, &settings()) {
            Ok(rep) => {
                let [t1, t2, t3] = rep.theta;
                expect!(fails, t2, t1 + t3, format!("{} theta_{}(M2,N) = theta(M1,N) + theta(M3,N)", inst.name, rep.r));
                expect!(fails, rep.check.status, Status::Pass, format!("{} check", inst.name));
            }
            Err(e) => fails.push(format!("{}: {e}", inst.name)),
        }
    }
    verdict("criterion 8 (biadditivity of theta_r on 10 exact sequences)", &fails);
}
