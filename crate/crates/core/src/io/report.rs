//! The structured report emitted by every command.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graded::{ModuleText, RingText};
use crate::invariants::{BiadditivityReport, Check, HilbertFit, InvariantReport, PairInvariants, Status};
use crate::lifting::{LiftChain, SemiliftReport};
use crate::tor::{Route, TorTable};

pub const TOOL: &str = "citor";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedModule {
    pub name: String,
    pub module: ModuleText,
}

/// Echo of the parsed problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub source: String,
    pub ring: RingText,
    pub modules: Vec<NamedModule>,
    pub pairs: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub p: u32,
    pub nmax: usize,
    pub window: usize,
    pub seed: u64,
    pub retries: usize,
    pub route: Route,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<i32>,
    pub zero_window: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorBody {
    pub over_r: TorTable,
    pub over_q: TorTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaBody {
    pub s: usize,
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complexity: Option<usize>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiBody {
    pub level: String,
    pub ring: String,
    pub value: i64,
    pub invariants: PairInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxBody {
    pub ring: String,
    pub complexity: usize,
    pub fit: HilbertFit,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cx_m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cx_n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub golden: bool,
    pub matched: bool,
    pub failures: usize,
    pub errors: usize,
    /// First differing line against the golden report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
    pub input: bool,
}

impl From<&Error> for ErrorBody {
    fn from(e: &Error) -> Self {
        ErrorBody { code: e.code().into(), message: e.to_string(), input: e.is_input_error() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Body {
    Tor(TorBody),
    Invariants(Box<InvariantReport>),
    Theta(ThetaBody),
    Chi(Box<ChiBody>),
    Cx(CxBody),
    Lift(Box<LiftChain>),
    Semilift(Box<SemiliftReport>),
    Biadditivity(BiadditivityReport),
    Corpus(Vec<CorpusEntry>),
    Error(ErrorBody),
}

impl Body {
    /// All checks carried by the body (hard checks and properties).
    pub fn checks(&self) -> Vec<&Check> {
        match self {
            Body::Invariants(r) => r.checks.iter().chain(&r.properties).collect(),
            Body::Lift(c) => {
                let steps = c.steps.iter().flat_map(|s| s.lifting.checks.iter().chain(&s.checks));
                steps.chain(&c.bottom).collect()
            }
            Body::Semilift(r) => r.checks.iter().collect(),
            Body::Biadditivity(r) => r.exactness.iter().chain(std::iter::once(&r.check)).collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub target: String,
    pub command: String,
    pub body: Body,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
    pub input_errors: usize,
    /// Corpus entries that differ from their golden report.
    pub mismatches: usize,
}

impl Summary {
    pub fn of(results: &[Outcome]) -> Summary {
        let mut s = Summary::default();
        for r in results {
            for c in r.body.checks() {
                s.checks += 1;
                match c.status {
                    Status::Pass => s.passed += 1,
                    Status::Fail => s.failed += 1,
                    Status::Skipped => s.skipped += 1,
                }
            }
            match &r.body {
                Body::Error(e) if e.input => s.input_errors += 1,
                Body::Error(_) => s.errors += 1,
                Body::Corpus(entries) => {
                    for e in entries {
                        s.failed += e.failures;
                        s.errors += e.errors;
                        s.mismatches += (!e.matched) as usize;
                    }
                }
                _ => {}
            }
        }
        s
    }

    /// 0 when everything passed, 2 for input errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.input_errors > 0 {
            2
        } else if self.failed > 0 || self.errors > 0 || self.mismatches > 0 {
            1
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub target: String,
    pub command: String,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    pub parameters: Parameters,
    pub results: Vec<Outcome>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

/// One row of the CSV export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRow {
    pub target: String,
    pub ring: String,
    pub n: usize,
    pub tor_length: i64,
    /// `theta(n/2)` on even `n`, empty otherwise.
    pub theta: Option<i64>,
}

fn rows_of(target: &str, table: &TorTable, out: &mut Vec<SequenceRow>) {
    for (n, &l) in table.lengths.iter().enumerate() {
        let theta = (n >= 2 && n % 2 == 0).then(|| l - table.lengths[n - 1]);
        out.push(SequenceRow { target: target.into(), ring: table.ring.clone(), n, tor_length: l, theta });
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code()
    }

    /// Tor lengths and theta values of every table in the report.
    pub fn sequence_rows(&self) -> Vec<SequenceRow> {
        let mut out = Vec::new();
        for r in &self.results {
            let t = &r.target;
            match &r.body {
                Body::Tor(b) => {
                    rows_of(t, &b.over_r, &mut out);
                    rows_of(t, &b.over_q, &mut out);
                }
                Body::Invariants(b) => {
                    rows_of(t, &b.over_r.tor, &mut out);
                    rows_of(t, &b.over_q.tor, &mut out);
                }
                Body::Chi(b) => rows_of(t, &b.invariants.tor, &mut out),
                Body::Lift(b) => {
                    rows_of(t, &b.over_r.tor, &mut out);
                    for s in &b.steps {
                        rows_of(t, &s.over_lift.tor, &mut out);
                    }
                }
                Body::Semilift(b) => {
                    rows_of(t, &b.over_r.tor, &mut out);
                    if let Some(q) = &b.over_q {
                        rows_of(t, &q.tor, &mut out);
                    }
                }
                _ => {}
            }
        }
        out
    }
}
