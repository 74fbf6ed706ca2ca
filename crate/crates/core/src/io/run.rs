//! Command dispatch over a parsed problem.

use std::str::FromStr;
use std::time::Instant;

use super::problem::{Problem, Task};
use super::report::{
    Body, ChiBody, CxBody, ErrorBody, InputEcho, NamedModule, Outcome, Parameters, Report, Summary, ThetaBody, Timing,
    TorBody, TOOL,
};
use crate::error::{Error, Result};
use crate::graded::Module;
use crate::invariants::{
    biadditivity_check, chi, cx_module, pair_invariants, theta_s, verify_theorems, PairInvariants, Settings,
};
use crate::lifting::{lift_chain, verify_semilifting};
use crate::tor::{resolve_for_tor, tor_table};

/// Ring level of `chi --level`: the polynomial ring, `R` itself, or the
/// bottom of the principal lifting chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Q,
    R,
    I,
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Level> {
        match s {
            "q" => Ok(Level::Q),
            "r" => Ok(Level::R),
            "i" => Ok(Level::I),
            _ => Err(Error::Input(format!("unknown level '{s}' (q, r, i)"))),
        }
    }
}

impl Level {
    fn name(self) -> &'static str {
        match self {
            Level::Q => "q",
            Level::R => "r",
            Level::I => "i",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tor,
    Invariants,
    Theta { s: usize },
    Chi { level: Level },
    Cx,
    Lift,
    Semilift,
    Biadd,
    Verify,
    /// The TASK list of the file, or `verify` when it has none.
    Run,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Tor => "tor",
            Command::Invariants => "invariants",
            Command::Theta { .. } => "theta",
            Command::Chi { .. } => "chi",
            Command::Cx => "cx",
            Command::Lift => "lift",
            Command::Semilift => "semilift",
            Command::Biadd => "biadditivity",
            Command::Verify => "verify",
            Command::Run => "run",
        }
    }

    /// Display form including arguments, e.g. `theta --s 2`.
    pub fn label(&self) -> String {
        match self {
            Command::Theta { s } => format!("theta --s {s}"),
            Command::Chi { level } => format!("chi --level {}", level.name()),
            c => c.name().into(),
        }
    }

    /// Parses `name [target] [--s k] [--level l]`; returns the command and
    /// the optional target.
    pub fn parse(name: &str, args: &[String]) -> Result<(Command, Option<String>)> {
        let mut target = None;
        let mut s = None;
        let mut level = None;
        let mut it = args.iter();
        while let Some(a) = it.next() {
            let mut value = |flag: &str| {
                it.next().cloned().ok_or_else(|| Error::Input(format!("{flag} needs a value")))
            };
            match a.as_str() {
                "--s" => {
                    let v = value("--s")?;
                    s = Some(v.parse().map_err(|_| Error::Input(format!("--s expects an integer, got '{v}'")))?);
                }
                "--level" => level = Some(value("--level")?.parse()?),
                flag if flag.starts_with("--") => return Err(Error::Input(format!("unknown option {flag}"))),
                t if target.is_none() => target = Some(t.to_string()),
                t => return Err(Error::Input(format!("unexpected argument '{t}'"))),
            }
        }
        let cmd = match name {
            "tor" => Command::Tor,
            "invariants" => Command::Invariants,
            "theta" => Command::Theta { s: s.ok_or_else(|| Error::Input("theta needs --s".into()))? },
            "chi" => Command::Chi { level: level.unwrap_or(Level::R) },
            "cx" => Command::Cx,
            "lift" => Command::Lift,
            "semilift" => Command::Semilift,
            "biadditivity" => Command::Biadd,
            "verify" => Command::Verify,
            "run" => Command::Run,
            other => return Err(Error::Input(format!("unknown command '{other}'"))),
        };
        Ok((cmd, target))
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub settings: Settings,
    pub timings: bool,
}

impl RunOptions {
    pub fn parameters(&self, p: u32) -> Parameters {
        let s = &self.settings;
        Parameters {
            p,
            nmax: s.tor.nmax,
            window: s.fit_window,
            seed: s.seed,
            retries: s.retries,
            route: s.tor.route,
            degree_bound: s.tor.degree_bound,
            zero_window: s.tor.zero_window,
        }
    }
}

pub fn echo(problem: &Problem, source: &str) -> InputEcho {
    InputEcho {
        source: source.into(),
        ring: problem.ring.describe(),
        modules: problem
            .modules
            .iter()
            .map(|(name, m)| NamedModule { name: name.clone(), module: m.describe() })
            .collect(),
        pairs: problem.pairs.iter().map(|p| (p.name.clone(), p.m.clone(), p.n.clone())).collect(),
    }
}

fn pair_modules<'a>(problem: &'a Problem, name: &str) -> Result<(&'a Module, &'a Module)> {
    problem
        .pair(name)
        .map(|(_, m, n)| (m, n))
        .ok_or_else(|| Error::Input(format!("undefined pair '{name}'")))
}

fn complexity_of(betti: &[usize], codim: usize, window: usize) -> Option<usize> {
    cx_module(betti, codim, window).ok().map(|f| f.complexity)
}

fn pair_body(problem: &Problem, cmd: Command, target: &str, settings: &Settings) -> Result<Body> {
    let (m, n) = pair_modules(problem, target)?;
    Ok(match cmd {
        Command::Tor => {
            let over_r = tor_table(m, n, &settings.tor)?;
            let over_q = tor_table(&m.over_polynomial_ring()?, &n.over_polynomial_ring()?, &settings.tor)?;
            Body::Tor(TorBody { over_r, over_q })
        }
        Command::Invariants | Command::Verify => {
            let s = Settings { properties: cmd == Command::Verify, ..settings.clone() };
            Body::Invariants(Box::new(verify_theorems(m, n, &s)?))
        }
        Command::Theta { s } => {
            let inv = pair_invariants(m, n, settings)?;
            let value = theta_s(&inv.tor, s, inv.complexity, settings.fit_window)?;
            Body::Theta(ThetaBody { s, ring: inv.ring, complexity: inv.complexity, value })
        }
        Command::Chi { level } => {
            let inv: PairInvariants = match level {
                Level::Q => pair_invariants(&m.over_polynomial_ring()?, &n.over_polynomial_ring()?, settings)?,
                Level::R => pair_invariants(m, n, settings)?,
                Level::I => lift_chain(m, n, settings)?.bottom_ring().clone(),
            };
            let value = chi(&inv.tor, inv.complexity)?;
            Body::Chi(Box::new(ChiBody { level: level.name().into(), ring: inv.ring.clone(), value, invariants: inv }))
        }
        Command::Cx => {
            let inv = pair_invariants(m, n, settings)?;
            let (Some(complexity), Some(fit)) = (inv.complexity, inv.fit) else {
                return Err(Error::NotStabilized(format!("complexity of {target} did not stabilize")));
            };
            let nmax = settings.tor.nmax;
            let c = m.ring.codim();
            let betti = |x: &Module| -> Result<Vec<usize>> {
                let mut b = resolve_for_tor(x, nmax)?.betti();
                b.resize(nmax + 1, 0);
                Ok(b)
            };
            let cx_m = complexity_of(&betti(m)?, c, settings.fit_window);
            let cx_n = complexity_of(&betti(n)?, c, settings.fit_window);
            Body::Cx(CxBody { ring: inv.ring, complexity, fit, cx_m, cx_n })
        }
        Command::Lift => Body::Lift(Box::new(lift_chain(m, n, settings)?)),
        _ => unreachable!("not a pair command"),
    })
}

fn lifting_body(problem: &Problem, target: &str, settings: &Settings) -> Result<Body> {
    let decl = problem
        .liftings
        .iter()
        .find(|l| l.name == target)
        .ok_or_else(|| Error::Input(format!("undefined lifting '{target}'")))?;
    let (m, n) = pair_modules(problem, &decl.pair)?;
    Ok(Body::Semilift(Box::new(verify_semilifting(m, n, &decl.lifting, settings)?)))
}

fn sequence_body(problem: &Problem, target: &str, settings: &Settings) -> Result<Body> {
    let decl = problem
        .sequences
        .iter()
        .find(|s| s.name == target)
        .ok_or_else(|| Error::Input(format!("undefined sequence '{target}'")))?;
    let n = problem
        .module(&decl.against)
        .ok_or_else(|| Error::Input(format!("undefined module '{}'", decl.against)))?;
    Ok(Body::Biadditivity(biadditivity_check(&decl.ses, n, settings)?))
}

struct Runner<'a> {
    problem: &'a Problem,
    opts: &'a RunOptions,
    results: Vec<Outcome>,
    timings: Vec<Timing>,
}

impl Runner<'_> {
    fn one(&mut self, cmd: Command, target: &str) {
        let start = Instant::now();
        let settings = &self.opts.settings;
        let body = match cmd {
            Command::Semilift => lifting_body(self.problem, target, settings),
            Command::Biadd => sequence_body(self.problem, target, settings),
            _ => pair_body(self.problem, cmd, target, settings),
        };
        let body = body.unwrap_or_else(|e| {
            log::warn!("{} {target}: {e}", cmd.label());
            Body::Error(ErrorBody::from(&e))
        });
        self.timings.push(Timing {
            target: target.into(),
            command: cmd.label(),
            millis: start.elapsed().as_millis() as u64,
        });
        self.results.push(Outcome { target: target.into(), command: cmd.label(), body });
    }

    fn error(&mut self, cmd: &str, target: &str, e: Error) {
        self.results.push(Outcome { target: target.into(), command: cmd.into(), body: Body::Error(ErrorBody::from(&e)) });
    }

    /// Targets of a command: the named one, or every declared object of
    /// the right kind.
    fn targets(&self, cmd: Command, target: Option<&str>) -> Vec<String> {
        if let Some(t) = target {
            return vec![t.to_string()];
        }
        let p = self.problem;
        match cmd {
            Command::Semilift => p.liftings.iter().map(|l| l.name.clone()).collect(),
            Command::Biadd => p.sequences.iter().map(|s| s.name.clone()).collect(),
            _ => p.pairs.iter().map(|p| p.name.clone()).collect(),
        }
    }

    fn command(&mut self, cmd: Command, target: Option<&str>) {
        match cmd {
            Command::Verify if target.is_none() => {
                for t in self.targets(Command::Verify, None) {
                    self.one(Command::Verify, &t);
                }
                for t in self.targets(Command::Semilift, None) {
                    self.one(Command::Semilift, &t);
                }
                for t in self.targets(Command::Biadd, None) {
                    self.one(Command::Biadd, &t);
                }
            }
            Command::Run => {
                if self.problem.tasks.is_empty() {
                    self.command(Command::Verify, target);
                }
                for Task { command, args, line } in &self.problem.tasks {
                    match Command::parse(command, args) {
                        Ok((Command::Run, _)) => self.error("run", "", Error::Input(format!("line {line}: nested run"))),
                        Ok((c, t)) => self.command(c, t.as_deref()),
                        Err(e) => self.error(command, "", e),
                    }
                }
            }
            _ => {
                for t in self.targets(cmd, target) {
                    self.one(cmd, &t);
                }
            }
        }
    }
}

/// Runs `cmd` on `problem`; `source` names the input in the echo.
pub fn run(problem: &Problem, source: &str, cmd: Command, target: Option<&str>, opts: &RunOptions) -> Report {
    let mut runner = Runner { problem, opts, results: Vec::new(), timings: Vec::new() };
    runner.command(cmd, target);
    let summary = Summary::of(&runner.results);
    Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: cmd.label(),
        input: Some(echo(problem, source)),
        parameters: opts.parameters(problem.field.p()),
        results: runner.results,
        summary,
        timings: opts.timings.then_some(runner.timings),
    }
}

/// A report for an input that could not be parsed.
pub fn error_report(command: &str, source: &str, e: &Error, opts: &RunOptions, p: u32) -> Report {
    let results = vec![Outcome { target: source.into(), command: command.into(), body: Body::Error(ErrorBody::from(e)) }];
    Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: command.into(),
        input: None,
        parameters: opts.parameters(p),
        summary: Summary::of(&results),
        results,
        timings: None,
    }
}
