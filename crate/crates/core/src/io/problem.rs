//! Line-oriented problem files.
//!
//! ```text
//! FIELD 32003
//! RING x1, x2, y1, y2
//! CI x1*y1, x2*y2
//! MODULE M = quotient x1, x2
//! MODULE N = coker [ y1, y2 ] shifts 0
//! MODULE P over S = quotient x1, x2
//! PAIR E = M N
//! LIFTING L = E split 1 P Q
//! SES Z = A B C alpha [ x1 ] beta [ 1 ] with N
//! TASK verify E
//! ```
//!
//! `over` selects the ring of a module by the (1-based) indices of the CI
//! relations it keeps, `S` for none; the default keeps all of them.
//! Text after `#` is a comment.

use std::collections::BTreeMap;

use crate::algebra::parse::{parse_poly, split_list};
use crate::algebra::{MatrixPoly, Poly, PolyRing, PrimeField, Vector};
use crate::error::{Error, Result};
use crate::graded::{CiRing, Module};
use crate::invariants::ShortExactSequence;
use crate::lifting::Semilifting;

#[derive(Clone, Debug)]
pub struct PairDecl {
    pub name: String,
    pub m: String,
    pub n: String,
}

#[derive(Clone, Debug)]
pub struct LiftingDecl {
    pub name: String,
    pub pair: String,
    pub lifting: Semilifting,
    pub m: String,
    pub n: String,
}

#[derive(Clone, Debug)]
pub struct SesDecl {
    pub name: String,
    pub modules: [String; 3],
    pub ses: ShortExactSequence,
    pub against: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub command: String,
    pub args: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub field: PrimeField,
    pub ring: CiRing,
    /// Modules in declaration order.
    pub modules: Vec<(String, Module)>,
    pub pairs: Vec<PairDecl>,
    pub liftings: Vec<LiftingDecl>,
    pub sequences: Vec<SesDecl>,
    pub tasks: Vec<Task>,
}

impl Problem {
    pub fn module(&self, name: &str) -> Option<&Module> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn pair(&self, name: &str) -> Option<(&PairDecl, &Module, &Module)> {
        let p = self.pairs.iter().find(|p| p.name == name)?;
        Some((p, self.module(&p.m)?, self.module(&p.n)?))
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Adds the line number to errors raised while validating a datum.
fn at_line(e: Error, line: usize) -> Error {
    let tag = |s: String| format!("line {line}: {s}");
    match e {
        Error::Input(s) => Error::Input(tag(s)),
        Error::NonHomogeneous(s) => Error::NonHomogeneous(tag(s)),
        Error::NotRegular(s) => Error::NotRegular(tag(s)),
        other => other,
    }
}

/// One logical line: its number, the text without comment, and a cursor.
struct Line<'a> {
    no: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Line<'a> {
    fn col(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    /// Next whitespace-delimited word (stopping before `=`, `[`).
    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| c.is_whitespace() || c == '=' || c == '[').unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn expect_word(&mut self, what: &str) -> Result<&'a str> {
        let col = {
            self.skip_ws();
            self.col()
        };
        self.word().ok_or_else(|| parse_err(self.no, col, format!("expected {what}")))
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(parse_err(self.no, self.col(), format!("expected '{token}'")))
        }
    }

    fn peek_is(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.text[self.pos..].starts_with(token)
    }

    /// The rest of the line with its starting column.
    fn rest(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let col = self.pos;
        self.pos = self.text.len();
        (col, &self.text[col..])
    }

    /// A bracketed matrix `[ a, b ; c, d ]`.
    fn matrix_text(&mut self) -> Result<(usize, &'a str)> {
        self.expect("[")?;
        let start = self.pos;
        let close = self.text[start..]
            .find(']')
            .ok_or_else(|| parse_err(self.no, self.col(), "unterminated matrix"))?;
        self.pos = start + close + 1;
        Ok((start, &self.text[start..start + close]))
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(parse_err(self.no, self.col(), format!("unexpected '{}'", &self.text[self.pos..])))
        }
    }
}

fn parse_usize(line: &mut Line<'_>, what: &str) -> Result<usize> {
    line.skip_ws();
    let col = line.col();
    let w = line.expect_word(what)?;
    w.parse().map_err(|_| parse_err(line.no, col, format!("expected {what}, found '{w}'")))
}

fn parse_shift_list(line: &mut Line<'_>) -> Result<Vec<i32>> {
    let mut out = Vec::new();
    while !line.at_end() {
        let col = line.col();
        let w = line.word().unwrap();
        out.push(w.parse().map_err(|_| parse_err(line.no, col, format!("expected an integer shift, found '{w}'")))?);
    }
    Ok(out)
}

/// Rows of polynomials; `col0` is the 0-based offset of `text` in the line.
fn parse_rows(poly: &PolyRing, text: &str, no: usize, col0: usize) -> Result<Vec<Vec<Poly>>> {
    let mut rows = Vec::new();
    let mut offset = 0;
    for row in text.split(';') {
        let entries = split_list(row)
            .into_iter()
            .map(|(o, t)| parse_poly(poly, t, no, col0 + offset + o + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push(entries);
        offset += row.len() + 1;
    }
    let width = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != width) {
        return Err(parse_err(no, col0 + 1, "matrix rows have different lengths"));
    }
    Ok(rows)
}

/// Matrix whose rows index the target generators, as columns of vectors.
fn columns_of(rows: &[Vec<Poly>]) -> Vec<Vector> {
    let width = rows.first().map_or(0, |r| r.len());
    (0..width)
        .map(|j| {
            let col: Vec<Poly> = rows.iter().map(|r| r[j].clone()).collect();
            Vector::from_polys(&col)
        })
        .collect()
}

struct Builder {
    field: PrimeField,
    /// Set when the command line fixes the prime.
    field_fixed: bool,
    poly: Option<PolyRing>,
    relations: Vec<Poly>,
    rings: BTreeMap<Vec<usize>, CiRing>,
    problem_ring: Option<CiRing>,
    modules: Vec<(String, Module)>,
    pairs: Vec<PairDecl>,
    liftings: Vec<LiftingDecl>,
    sequences: Vec<SesDecl>,
    tasks: Vec<Task>,
}

impl Builder {
    fn poly(&self, no: usize) -> Result<&PolyRing> {
        self.poly.as_ref().ok_or_else(|| parse_err(no, 1, "RING must come first"))
    }

    /// The ring of the problem, fixed once the first module is declared.
    fn main_ring(&mut self, no: usize) -> Result<CiRing> {
        if self.problem_ring.is_none() {
            let all: Vec<usize> = (0..self.relations.len()).collect();
            let r = self.ring_for(all, no)?;
            self.problem_ring = Some(r);
        }
        Ok(self.problem_ring.clone().unwrap())
    }

    fn ring_for(&mut self, keep: Vec<usize>, no: usize) -> Result<CiRing> {
        if let Some(r) = self.rings.get(&keep) {
            return Ok(r.clone());
        }
        let poly = self.poly(no)?.clone();
        let ring = if keep.is_empty() {
            CiRing::polynomial(poly)
        } else {
            let rels = keep.iter().map(|&i| self.relations[i].clone()).collect();
            let tag = if keep.len() == self.relations.len() {
                "R".to_string()
            } else {
                format!("R_{}", keep.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(""))
            };
            CiRing::new(poly, rels, &tag).map_err(|e| at_line(e, no))?
        };
        self.rings.insert(keep, ring.clone());
        Ok(ring)
    }

    fn module_name(&self, line: &mut Line<'_>) -> Result<(String, Module)> {
        line.skip_ws();
        let col = line.col();
        let name = line.expect_word("a module name")?;
        let m = self
            .modules
            .iter()
            .find(|(n, _)| n == name)
            .ok_or_else(|| parse_err(line.no, col, format!("undefined module '{name}'")))?;
        Ok(m.clone())
    }

    fn field_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        if self.poly.is_some() {
            return Err(parse_err(line.no, 1, "FIELD must precede RING"));
        }
        let (col, text) = line.rest();
        let digits = text.trim_start_matches('p').trim_start().trim_start_matches('=').trim();
        let p: u32 = digits
            .parse()
            .map_err(|_| parse_err(line.no, col + 1, format!("expected a prime, found '{text}'")))?;
        if !self.field_fixed {
            self.field = PrimeField::new(p)?;
        }
        Ok(())
    }

    fn ring_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        if self.poly.is_some() {
            return Err(parse_err(line.no, 1, "RING declared twice"));
        }
        let (col, text) = line.rest();
        let names: Vec<String> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        if names.is_empty() {
            return Err(parse_err(line.no, col + 1, "RING needs at least one variable"));
        }
        for n in &names {
            if !n.chars().next().unwrap().is_alphabetic() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(parse_err(line.no, col + 1, format!("invalid variable name '{n}'")));
            }
        }
        self.poly = Some(PolyRing::new(self.field, names)?);
        Ok(())
    }

    fn ci_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        if self.problem_ring.is_some() || !self.relations.is_empty() {
            return Err(parse_err(line.no, 1, "CI must come once, before any MODULE"));
        }
        let poly = self.poly(line.no)?.clone();
        let (col, text) = line.rest();
        for (o, t) in split_list(text) {
            self.relations.push(parse_poly(&poly, t, line.no, col + o + 1)?);
        }
        self.main_ring(line.no)?;
        Ok(())
    }

    fn module_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        let no = line.no;
        let main = self.main_ring(no)?;
        line.skip_ws();
        let name_col = line.col();
        let name = line.expect_word("a module name")?.to_string();
        if self.modules.iter().any(|(n, _)| *n == name) {
            return Err(parse_err(no, name_col, format!("module '{name}' declared twice")));
        }
        let ring = if line.peek_is("over") {
            line.word();
            let mut keep = Vec::new();
            while !line.peek_is("=") {
                line.skip_ws();
                let col = line.col();
                let w = line.expect_word("relation indices or S")?;
                if w == "S" {
                    continue;
                }
                for part in w.split(',').filter(|s| !s.is_empty()) {
                    let i: usize = part
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1 && i <= self.relations.len())
                        .ok_or_else(|| parse_err(no, col, format!("'{part}' is not a CI relation index")))?;
                    keep.push(i - 1);
                }
            }
            keep.sort_unstable();
            keep.dedup();
            self.ring_for(keep, no)?
        } else {
            main
        };
        line.expect("=")?;
        line.skip_ws();
        let kind_col = line.col();
        let kind = line.expect_word("quotient, coker or free")?;
        let module = match kind {
            "quotient" => {
                let (col, text) = line.rest();
                let gens = split_list(text)
                    .into_iter()
                    .map(|(o, t)| parse_poly(&ring.poly, t, no, col + o + 1))
                    .collect::<Result<Vec<_>>>()?;
                Module::quotient(ring, &gens)
            }
            "coker" => {
                let (col, text) = line.matrix_text()?;
                let rows = parse_rows(&ring.poly, text, no, col)?;
                line.skip_ws();
                let shifts = if line.peek_is("shifts") {
                    line.word();
                    parse_shift_list(line)?
                } else {
                    vec![0; rows.len()]
                };
                if shifts.len() != rows.len() {
                    return Err(parse_err(
                        no,
                        line.col(),
                        format!("{} shifts for a matrix with {} rows", shifts.len(), rows.len()),
                    ));
                }
                Module::new(ring, shifts, columns_of(&rows))
            }
            "free" => {
                let shifts = parse_shift_list(line)?;
                Ok(Module::free(ring, if shifts.is_empty() { vec![0] } else { shifts }))
            }
            other => return Err(parse_err(no, kind_col, format!("unknown module kind '{other}'"))),
        }
        .map_err(|e| at_line(e, no))?;
        line.finish()?;
        self.modules.push((name, module));
        Ok(())
    }

    fn decl_name(&self, line: &mut Line<'_>, what: &str) -> Result<String> {
        let name = line.expect_word(what)?.to_string();
        line.expect("=")?;
        Ok(name)
    }

    fn pair_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        let name = self.decl_name(line, "a pair name")?;
        let (m, mm) = self.module_name(line)?;
        let (n, nn) = self.module_name(line)?;
        line.finish()?;
        if mm.ring != nn.ring {
            return Err(at_line(Error::Input(format!("{m} and {n} live over different rings")), line.no));
        }
        self.pairs.push(PairDecl { name, m, n });
        Ok(())
    }

    fn lifting_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        let name = self.decl_name(line, "a lifting name")?;
        line.skip_ws();
        let col = line.col();
        let pair = line.expect_word("a pair name")?.to_string();
        if !self.pairs.iter().any(|p| p.name == pair) {
            return Err(parse_err(line.no, col, format!("undefined pair '{pair}'")));
        }
        line.skip_ws();
        let col = line.col();
        if line.expect_word("split")? != "split" {
            return Err(parse_err(line.no, col, "expected 'split'"));
        }
        let split = parse_usize(line, "the split index c'")?;
        let (m, mm) = self.module_name(line)?;
        let (n, nn) = self.module_name(line)?;
        line.finish()?;
        let lifting = Semilifting { split, m: mm, n: nn };
        self.liftings.push(LiftingDecl { name, pair, lifting, m, n });
        Ok(())
    }

    fn ses_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        let no = line.no;
        let name = self.decl_name(line, "a sequence name")?;
        let (n1, m1) = self.module_name(line)?;
        let (n2, m2) = self.module_name(line)?;
        let (n3, m3) = self.module_name(line)?;
        let poly = m1.ring.poly.clone();
        let mut maps = Vec::new();
        for (label, src, tgt) in [("alpha", &m1, &m2), ("beta", &m2, &m3)] {
            line.skip_ws();
            let col = line.col();
            if line.expect_word(label)? != label {
                return Err(parse_err(no, col, format!("expected '{label}'")));
            }
            let (c0, text) = line.matrix_text()?;
            let rows = parse_rows(&poly, text, no, c0)?;
            if rows.len() != tgt.rank() || rows.first().map_or(0, |r| r.len()) != src.rank() {
                return Err(parse_err(no, c0, format!("{label} must be {} x {}", tgt.rank(), src.rank())));
            }
            let m = MatrixPoly::new(tgt.shifts.clone(), src.shifts.clone(), columns_of(&rows))
                .map_err(|e| at_line(e, no))?;
            maps.push(m);
        }
        line.skip_ws();
        let col = line.col();
        if line.expect_word("with")? != "with" {
            return Err(parse_err(no, col, "expected 'with'"));
        }
        let (against, _) = self.module_name(line)?;
        line.finish()?;
        let beta = maps.pop().unwrap();
        let alpha = maps.pop().unwrap();
        let ses = ShortExactSequence::new(m1, m2, m3, alpha, beta).map_err(|e| at_line(e, no))?;
        self.sequences.push(SesDecl { name, modules: [n1, n2, n3], ses, against });
        Ok(())
    }

    fn task_line(&mut self, line: &mut Line<'_>) -> Result<()> {
        let command = line.expect_word("a command")?.to_string();
        let mut args = Vec::new();
        while let Some(w) = line.word() {
            args.push(w.to_string());
        }
        line.finish()?;
        self.tasks.push(Task { command, args, line: line.no });
        Ok(())
    }
}

/// Parses a problem file; `p` overrides the FIELD line when given.
pub fn parse_problem(text: &str, p: Option<u32>) -> Result<Problem> {
    let field = match p {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::default(),
    };
    let mut b = Builder {
        field,
        field_fixed: p.is_some(),
        poly: None,
        relations: Vec::new(),
        rings: BTreeMap::new(),
        problem_ring: None,
        modules: Vec::new(),
        pairs: Vec::new(),
        liftings: Vec::new(),
        sequences: Vec::new(),
        tasks: Vec::new(),
    };
    for (k, raw) in text.lines().enumerate() {
        let no = k + 1;
        let text = raw.split('#').next().unwrap().trim_end();
        let mut line = Line { no, text, pos: 0 };
        if line.at_end() {
            continue;
        }
        line.skip_ws();
        let col = line.col();
        let key = line.word().unwrap_or_default();
        match key {
            "FIELD" => b.field_line(&mut line)?,
            "RING" => b.ring_line(&mut line)?,
            "CI" => b.ci_line(&mut line)?,
            "MODULE" => b.module_line(&mut line)?,
            "PAIR" => b.pair_line(&mut line)?,
            "LIFTING" => b.lifting_line(&mut line)?,
            "SES" => b.ses_line(&mut line)?,
            "TASK" => b.task_line(&mut line)?,
            other => return Err(parse_err(no, col, format!("unknown section '{other}'"))),
        }
    }
    if b.poly.is_none() {
        return Err(parse_err(1, 1, "no RING declared"));
    }
    let ring = b.main_ring(1)?;
    Ok(Problem {
        field: b.field,
        ring,
        modules: b.modules,
        pairs: b.pairs,
        liftings: b.liftings,
        sequences: b.sequences,
        tasks: b.tasks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HYPERSURFACE: &str = "FIELD p=32003\nRING x, y\nCI x*y\nMODULE M = quotient x\nMODULE N = quotient y\nPAIR E = M N\n";

    #[test]
    fn minimal_file() {
        let p = parse_problem(HYPERSURFACE, None).unwrap();
        assert_eq!(p.ring.codim(), 1);
        assert_eq!(p.field.p(), 32003);
        let (_, m, n) = p.pair("E").unwrap();
        assert_eq!((m.rank(), n.rank()), (1, 1));
    }

    #[test]
    fn linear_relation_rejected() {
        let err = parse_problem("RING x, y\nCI x\n", None).unwrap_err();
        assert_eq!(err.code(), "INPUT");
        assert!(err.to_string().contains("square of the maximal ideal"));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_problem("RING x, y\nCI x*y\nMODULE M = quotient x +* y\n", None).unwrap_err();
        match err {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (3, 24)),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_problem("RING x, y\nMODULE M = quotient x\nPAIR E = M Q\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, col: 12, .. }), "{err:?}");
        let err = parse_problem("RING x, y\nMODULE M = quotient x^2 + y\n", None).unwrap_err();
        assert_eq!(err.code(), "NON_HOMOGENEOUS");
        let err = parse_problem("RING x, y\nMODULE M = coker [ x ; y ] shifts 0\n", None).unwrap_err();
        assert_eq!(err.code(), "PARSE");
        let err = parse_problem("RING x, y\nFROB x\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 1, .. }));
    }

    #[test]
    fn coker_and_over() {
        let text = "RING x1, x2, y1, y2\nCI x1*y1, x2*y2\n\
                    MODULE A = coker [ x1, x2, 0 ; 0, 0, y1 ] shifts 0 1\n\
                    MODULE B over 1 = quotient x1\nMODULE C over S = quotient y1, y2\n";
        let p = parse_problem(text, None).unwrap();
        let a = p.module("A").unwrap();
        assert_eq!((a.rank(), a.relations.len()), (2, 3));
        assert_eq!(p.module("B").unwrap().ring.codim(), 1);
        assert_eq!(p.module("C").unwrap().ring.codim(), 0);
    }

    #[test]
    fn prime_override() {
        let p = parse_problem(HYPERSURFACE, Some(101)).unwrap();
        assert_eq!(p.field.p(), 101);
        assert_eq!(p.ring.poly.field.p(), 101);
        assert_eq!(parse_problem(HYPERSURFACE, Some(100)).unwrap_err().code(), "INVALID_PRIME");
        let bare = parse_problem("RING x, y\nCI x*y\n", Some(7)).unwrap();
        assert_eq!(bare.ring.poly.field.p(), 7);
    }

    #[test]
    fn sequences_and_tasks() {
        let text = "RING x, y\nCI x*y\nMODULE A = coker [ x, y ] shifts 1\nMODULE B = quotient x^2\n\
                    MODULE C = quotient x\nMODULE N = quotient y^2\n\
                    SES Z = A B C alpha [ x ] beta [ 1 ] with N\nTASK biadditivity Z\n";
        let p = parse_problem(text, None).unwrap();
        assert_eq!(p.sequences.len(), 1);
        assert_eq!(p.tasks, vec![Task { command: "biadditivity".into(), args: vec!["Z".into()], line: 8 }]);
    }
}
