//! Additivity of `theta_r(-, N)` on short exact sequences.

use serde::{Deserialize, Serialize};

use crate::algebra::{MatrixPoly, Vector};
use crate::error::{Error, Result};
use crate::graded::Module;

use super::{pair_invariants, Check, Settings};

/// `0 -> M1 --alpha--> M2 --beta--> M3 -> 0`, the maps given on generators
/// (`alpha` has one column per generator of `M1`, in the free cover of `M2`).
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub m1: Module,
    pub m2: Module,
    pub m3: Module,
    pub alpha: MatrixPoly,
    pub beta: MatrixPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiadditivityReport {
    pub r: usize,
    pub complexities: [usize; 3],
    pub theta: [i64; 3],
    pub exactness: Vec<Check>,
    pub check: Check,
}

fn maps_relations(src: &Module, tgt: &Module, map: &MatrixPoly) -> Result<bool> {
    let f = src.ring.poly.field;
    let gb = tgt.gb()?;
    Ok(src.relations.iter().all(|r| gb.contains(&map.apply(&f, r))))
}

fn with_columns(m: &Module, map: &MatrixPoly) -> Module {
    let mut out = m.clone();
    out.relations.extend(map.columns.iter().filter(|c| !c.is_zero()).cloned());
    out
}

impl ShortExactSequence {
    pub fn new(m1: Module, m2: Module, m3: Module, alpha: MatrixPoly, beta: MatrixPoly) -> Result<Self> {
        if m1.ring != m2.ring || m2.ring != m3.ring {
            return Err(Error::RingMismatch);
        }
        if alpha.row_shifts != m2.shifts || alpha.col_shifts != m1.shifts {
            return Err(Error::Input("alpha must map the generators of M1 into the free cover of M2".into()));
        }
        if beta.row_shifts != m3.shifts || beta.col_shifts != m2.shifts {
            return Err(Error::Input("beta must map the generators of M2 into the free cover of M3".into()));
        }
        Ok(ShortExactSequence { m1, m2, m3, alpha, beta })
    }

    /// Exactness from Gröbner bases: both maps well defined, `beta alpha = 0`,
    /// `beta` onto, `HS(M2 / im alpha) = HS(M3)` (so `im alpha = ker beta`)
    /// and `HS(M1) = HS(im alpha)` (so `alpha` is injective).
    pub fn exactness(&self) -> Result<Vec<Check>> {
        let f = self.m1.ring.poly.field;
        let flag = |name: &str, statement: &str, ok: bool| Check::compare(name, statement, ok as i64, "=", 1);
        let mut out = vec![
            flag("alpha_defined", "alpha maps relations of M1 into relations of M2", maps_relations(&self.m1, &self.m2, &self.alpha)?),
            flag("beta_defined", "beta maps relations of M2 into relations of M3", maps_relations(&self.m2, &self.m3, &self.beta)?),
        ];
        let gb3 = self.m3.gb()?;
        let comp = self.beta.compose(&f, &self.alpha);
        out.push(flag("complex", "beta o alpha = 0", comp.columns.iter().all(|c| gb3.contains(c))));
        out.push(flag("onto", "coker beta = 0", with_columns(&self.m3, &self.beta).is_zero()?));
        let quotient = with_columns(&self.m2, &self.alpha).hilbert_series()?;
        let hs3 = self.m3.hilbert_series()?;
        out.push(flag("middle", "HS(M2 / im alpha) = HS(M3)", quotient == hs3));
        let image = self.m2.hilbert_series()?.sub(&quotient);
        out.push(flag("injective", "HS(M1) = HS(im alpha)", self.m1.hilbert_series()? == image));
        Ok(out)
    }

    /// The split sequence `0 -> A -> A + B -> B -> 0`.
    pub fn split(a: &Module, b: &Module) -> Result<Self> {
        let sum = a.direct_sum(b)?;
        let (ka, kb) = (a.rank(), b.rank());
        let alpha = MatrixPoly::new(sum.shifts.clone(), a.shifts.clone(), (0..ka).map(Vector::unit).collect())?;
        let beta_cols = (0..ka + kb)
            .map(|j| if j < ka { Vector::zero() } else { Vector::unit(j - ka) })
            .collect();
        let beta = MatrixPoly::new(b.shifts.clone(), sum.shifts.clone(), beta_cols)?;
        ShortExactSequence::new(a.clone(), sum, b.clone(), alpha, beta)
    }
}

/// Verifies exactness, then `theta_r(M2, N) = theta_r(M1, N) + theta_r(M3, N)`
/// with `r` the largest complexity of the three pairs.
pub fn biadditivity_check(ses: &ShortExactSequence, n: &Module, settings: &Settings) -> Result<BiadditivityReport> {
    let exactness = ses.exactness()?;
    if let Some(bad) = exactness.iter().find(|c| c.failed()) {
        return Err(Error::NotExact(bad.statement.clone()));
    }
    let invs = [&ses.m1, &ses.m2, &ses.m3]
        .map(|m| pair_invariants(m, n, settings));
    let mut complexities = [0; 3];
    let mut pairs = Vec::new();
    for (k, inv) in invs.into_iter().enumerate() {
        let inv = inv?;
        complexities[k] = inv.complexity.ok_or_else(|| {
            Error::NotStabilized(format!("complexity of (M{}, N) did not stabilize", k + 1))
        })?;
        pairs.push(inv);
    }
    let r = *complexities.iter().max().unwrap();
    let mut theta = [0; 3];
    for (k, inv) in pairs.iter().enumerate() {
        theta[k] = super::theta_s(&inv.tor, r, inv.complexity, settings.fit_window)?;
    }
    let check = Check::compare(
        "biadditivity",
        &format!("theta_{r}(M2,N) = theta_{r}(M1,N) + theta_{r}(M3,N)"),
        theta[1],
        "=",
        theta[0] + theta[2],
    );
    Ok(BiadditivityReport { r, complexities, theta, exactness, check })
}
