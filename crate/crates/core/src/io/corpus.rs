//! The bundled example corpus with golden reports, and seeded random
//! monomial complete intersections.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::problem::parse_problem;
use super::report::{Body, CorpusEntry, Outcome, Report, Summary, TOOL};
use super::run::{error_report, run, Command, RunOptions};

pub struct Bundled {
    pub name: &'static str,
    pub text: &'static str,
    /// Golden report for the default flags.
    pub golden: &'static str,
}

macro_rules! bundled {
    ($($name:literal),*) => {
        &[$(Bundled {
            name: $name,
            text: include_str!(concat!("../../corpus/", $name, ".cit")),
            golden: include_str!(concat!("../../corpus/golden/", $name, ".json")),
        }),*]
    };
}

pub const BUNDLED: &[Bundled] = bundled!("hypersurface", "codim2", "depth_gap", "intersection", "reserved", "sequences");

pub fn bundled(name: &str) -> Option<&'static Bundled> {
    BUNDLED.iter().find(|b| b.name == name)
}

/// Runs the TASK list of a problem text.
pub fn run_text(name: &str, text: &str, opts: &RunOptions) -> Report {
    match parse_problem(text, None) {
        Ok(p) => run(&p, name, Command::Run, None, opts),
        Err(e) => error_report("run", name, &e, opts, crate::algebra::PrimeField::default().p()),
    }
}

fn first_difference(expected: &str, got: &str) -> Option<String> {
    if expected == got {
        return None;
    }
    let mut e = expected.lines();
    let mut g = got.lines();
    for no in 1.. {
        match (e.next(), g.next()) {
            (Some(a), Some(b)) if a == b => continue,
            (a, b) => {
                return Some(format!(
                    "line {no}: expected {:?}, got {:?}",
                    a.unwrap_or("<end>").trim(),
                    b.unwrap_or("<end>").trim()
                ))
            }
        }
    }
    unreachable!()
}

fn entry(name: &str, report: &Report, golden: Option<&str>) -> CorpusEntry {
    let diff = golden.and_then(|g| first_difference(g, &report.to_json()));
    CorpusEntry {
        name: name.into(),
        golden: golden.is_some(),
        matched: diff.is_none(),
        failures: report.summary.failed,
        errors: report.summary.errors + report.summary.input_errors,
        diff,
    }
}

/// Runs the bundled files (diffing against golden reports) and `random`
/// seeded random instances (checked for failures only).
pub fn corpus_report(opts: &RunOptions, random: usize) -> Report {
    let mut entries = Vec::new();
    for b in BUNDLED {
        let report = run_text(b.name, b.text, opts);
        let golden = (!b.golden.trim().is_empty()).then_some(b.golden);
        entries.push(entry(b.name, &report, golden));
    }
    for inst in random_instances(opts.settings.seed, random) {
        let report = run_text(&inst.name, &inst.text, opts);
        entries.push(entry(&inst.name, &report, None));
    }
    let results = vec![Outcome { target: "corpus".into(), command: "corpus".into(), body: Body::Corpus(entries) }];
    Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: "corpus".into(),
        input: None,
        parameters: opts.parameters(crate::algebra::PrimeField::default().p()),
        summary: Summary::of(&results),
        results,
        timings: None,
    }
}

/// Golden reports of the bundled files for the given flags.
pub fn golden_reports(opts: &RunOptions) -> Vec<(&'static str, String)> {
    BUNDLED.iter().map(|b| (b.name, run_text(b.name, b.text, opts).to_json())).collect()
}

/// A generated problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub text: String,
}

type Mono = Vec<u32>;

fn mono_text(m: &Mono) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn list_text(ms: &[Mono]) -> String {
    ms.iter().map(mono_text).collect::<Vec<_>>().join(", ")
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A monomial complete intersection with two cyclic monomial modules whose
/// tensor product has finite length.
struct Raw {
    nvars: usize,
    relations: Vec<Mono>,
    i: Vec<Mono>,
    j: Vec<Mono>,
}

/// Draws one instance. Codimension three is only drawn with at most 5
/// variables; larger draws make the resolutions too big for the defaults.
fn draw(rng: &mut ChaCha8Rng) -> Raw {
    loop {
        let nvars = rng.gen_range(2..=6);
        let c = rng.gen_range(1..=nvars.min(3));
        if c == 3 && nvars > 5 {
            continue;
        }
        let mut vars: Vec<usize> = (0..nvars).collect();
        vars.shuffle(rng);
        // disjoint supports keep the relations pairwise coprime
        let mut groups: Vec<Vec<usize>> = vars[..c].iter().map(|&v| vec![v]).collect();
        for &v in &vars[c..] {
            if rng.gen_bool(0.4) {
                groups[rng.gen_range(0..c)].push(v);
            }
        }
        let relations: Vec<Mono> = groups
            .iter()
            .map(|g| {
                let mut m = vec![0; nvars];
                for &v in g {
                    m[v] = 1;
                }
                if g.len() == 1 {
                    m[g[0]] = 2;
                }
                m
            })
            .collect();
        let (mut i, mut j) = (Vec::new(), Vec::new());
        for v in 0..nvars {
            let mut m = vec![0; nvars];
            m[v] = rng.gen_range(1..=2);
            if rng.gen_bool(0.5) {
                i.push(m);
            } else {
                j.push(m);
            }
        }
        for ideal in [&mut i, &mut j] {
            if ideal.is_empty() || rng.gen_bool(0.3) {
                let mut m = vec![0; nvars];
                for _ in 0..2 {
                    m[rng.gen_range(0..nvars)] += 1;
                }
                if !ideal.iter().any(|g| divides(g, &m)) {
                    ideal.push(m);
                }
            }
        }
        return Raw { nvars, relations, i, j };
    }
}

fn header(raw: &Raw) -> String {
    let names: Vec<String> = (1..=raw.nvars).map(|k| format!("x{k}")).collect();
    format!("FIELD 32003\nRING {}\nCI {}\n", names.join(", "), list_text(&raw.relations))
}

/// `count` seeded random pairs, each a problem file with `TASK verify`.
pub fn random_instances(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let raw = draw(&mut rng);
            let text = format!(
                "{}MODULE M = quotient {}\nMODULE N = quotient {}\nPAIR P = M N\nTASK verify P\n",
                header(&raw),
                list_text(&raw.i),
                list_text(&raw.j)
            );
            Instance { name: format!("random-{seed}-{k:02}"), text }
        })
        .collect()
}

/// `count` seeded colon sequences `0 -> R/(I:g)(-1) -g-> R/I -> R/(I+g) -> 0`
/// with `g` a variable outside `I`, each tested against `N = R/J`.
pub fn random_sequences(seed: u64, count: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e55);
    let mut out = Vec::new();
    while out.len() < count {
        let raw = draw(&mut rng);
        let n = raw.nvars;
        let v = rng.gen_range(0..n);
        let mut g = vec![0; n];
        g[v] = 1;
        let mut ideal = raw.i.clone();
        ideal.extend(raw.relations.iter().cloned());
        if ideal.iter().any(|m| divides(m, &g)) {
            continue;
        }
        let colon: Vec<Mono> = ideal
            .iter()
            .map(|m| m.iter().zip(&g).map(|(a, b)| a.saturating_sub(*b)).collect())
            .collect();
        let mut sum = raw.i.clone();
        sum.push(g.clone());
        let colon_row = list_text(&colon);
        let text = format!(
            "{}MODULE A = coker [ {colon_row} ] shifts 1\nMODULE B = quotient {}\nMODULE C = quotient {}\n\
             MODULE N = quotient {}\nSES Z = A B C alpha [ {} ] beta [ 1 ] with N\nTASK biadditivity Z\n",
            header(&raw),
            list_text(&raw.i),
            list_text(&sum),
            list_text(&raw.j),
            mono_text(&g)
        );
        out.push(Instance { name: format!("sequence-{seed}-{:02}", out.len()), text });
    }
    out
}
