//! Lengths of `Tor_n(M, N)` over a complete intersection (or over `S`) and
//! the action of the Eisenbud operators on them.

mod action;
mod complex;

pub use action::{action_image_rank, check_commutation, check_lift_independence, form_is_surjective, SurjectivityCheck};
pub use complex::{Piece, TensorComplex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::Module;
use crate::resolution::{resolve, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Hilbert series of cokernels of `d ⊗ N`, from Gröbner bases.
    Exact,
    /// Degreewise ranks up to a cutoff with a trailing zero window.
    Degreewise,
    /// Both, with degree-by-degree agreement required.
    Both,
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        match s {
            "exact" => Ok(Route::Exact),
            "degreewise" => Ok(Route::Degreewise),
            "both" => Ok(Route::Both),
            _ => Err(Error::Input(format!("unknown route '{s}' (exact, degreewise, both)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TorOptions {
    pub nmax: usize,
    pub route: Route,
    /// Fixed internal degree cutoff for the degreewise route.
    pub degree_bound: Option<i32>,
    /// Width of the trailing zero window of the degreewise route.
    pub zero_window: usize,
}

impl Default for TorOptions {
    fn default() -> Self {
        TorOptions { nmax: 12, route: Route::Both, degree_bound: None, zero_window: 4 }
    }
}

/// Evidence that `Tor_n = 0` for all `n >= from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vanishing {
    pub from: usize,
    /// `finite_resolution` when `M` has a finite resolution, `rigidity` when
    /// `codim + 1` consecutive zeros were observed (Murthy's rigidity for
    /// complete intersections).
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorTable {
    pub ring: String,
    pub route: Route,
    pub certified: bool,
    /// `lengths[n] = l(Tor_n)` for `n = 0..=nmax`.
    pub lengths: Vec<i64>,
    /// Nonzero graded pieces `(internal degree, dimension)` of each `Tor_n`.
    pub graded: Vec<Vec<(i32, i64)>>,
    pub vanishing: Option<Vanishing>,
    /// Homological degrees where the degreewise cross-check was skipped
    /// because a differential exceeded [`MAX_DENSE_ENTRIES`].
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unchecked: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TorTable {
    pub fn nmax(&self) -> usize {
        self.lengths.len() - 1
    }

    /// Whether `Tor_n = 0` for all `n > nmax` is certified.
    pub fn eventually_zero(&self) -> bool {
        self.vanishing.is_some()
    }
}

/// `l(M ⊗ N)`, or `INFINITE_COLENGTH`.
pub fn tensor_length(m: &Module, n: &Module) -> Result<i64> {
    let t = m.tensor(n)?;
    t.length()?.ok_or_else(|| Error::InfiniteColength("l(M ⊗ N) is infinite".into()))
}

/// Top internal degree of `M ⊗ N` (finite length assumed).
pub fn tensor_top_degree(m: &Module, n: &Module) -> Result<i32> {
    let hs = m.tensor(n)?.hilbert_series()?;
    Ok(hs.as_polynomial().and_then(|p| p.high()).unwrap_or(0))
}

/// Resolution of `m` long enough for `Tor_n`, `n <= nmax`.
pub fn resolve_for_tor(m: &Module, nmax: usize) -> Result<Resolution> {
    resolve(m, nmax + 1)
}

/// The Tor table of `(M, N)` over their common ring.
pub fn tor_table(m: &Module, n: &Module, opts: &TorOptions) -> Result<TorTable> {
    tensor_length(m, n)?;
    let res = resolve_for_tor(m, opts.nmax)?;
    let cx = TensorComplex::new(&res, n)?;
    table_from_complex(&cx, opts, tensor_top_degree(m, n)?)
}

/// Largest dense differential the degreewise route will build.
pub const MAX_DENSE_ENTRIES: usize = 1 << 27;

/// Degreewise dimensions of `H_n` on `lo..=hi` with the cutoff rule, and
/// whether the trailing window is zero. Fails with `DegreeBound` before
/// allocating a differential larger than [`MAX_DENSE_ENTRIES`].
fn degreewise_dims(cx: &TensorComplex<'_>, n: usize, opts: &TorOptions, top: i32) -> Result<(i32, Vec<i64>, bool)> {
    let Some(lo) = cx.low_degree(n) else {
        return Ok((0, Vec::new(), true));
    };
    let next = cx.res.max_degree(n + 1).or(cx.res.max_degree(n)).unwrap_or(lo);
    let nshift = cx.n.shifts.iter().copied().max().unwrap_or(0);
    let w = opts.zero_window as i32;
    let hi = opts.degree_bound.unwrap_or(next + nshift + top + w);
    for d in lo..=hi {
        let here = cx.piece(n, d).dim();
        let below = if n > 0 { cx.piece(n - 1, d).dim() } else { 0 };
        let above = cx.piece(n + 1, d).dim();
        let entries = here * below.max(above);
        if entries > MAX_DENSE_ENTRIES {
            return Err(Error::DegreeBound(format!(
                "degreewise Tor_{n} in degree {d} needs a {entries}-entry matrix (limit {MAX_DENSE_ENTRIES})"
            )));
        }
    }
    let dims: Vec<i64> = (lo..=hi).map(|d| cx.homology_dim(n, d)).collect();
    let tail = (hi - w + 1).max(lo);
    let certified = (tail..=hi).all(|d| dims[(d - lo) as usize] == 0);
    Ok((lo, dims, certified))
}

pub fn table_from_complex(cx: &TensorComplex<'_>, opts: &TorOptions, tensor_top: i32) -> Result<TorTable> {
    let res = cx.res;
    let mut lengths = Vec::with_capacity(opts.nmax + 1);
    let mut graded = Vec::with_capacity(opts.nmax + 1);
    let mut certified = true;
    let mut notes = Vec::new();
    let mut unchecked = Vec::new();
    for n in 0..=opts.nmax {
        let exact = match opts.route {
            Route::Degreewise => None,
            _ => {
                let hs = cx.homology_series(n)?;
                let poly = hs.as_polynomial().ok_or_else(|| {
                    Error::InfiniteColength(format!("Tor_{n} does not have finite length"))
                })?;
                Some(poly)
            }
        };
        let degreewise = match opts.route {
            Route::Exact => None,
            Route::Degreewise => Some(degreewise_dims(cx, n, opts, tensor_top)?),
            Route::Both => match degreewise_dims(cx, n, opts, tensor_top) {
                Ok(dw) => Some(dw),
                Err(Error::DegreeBound(msg)) => {
                    notes.push(format!("{msg}; exact route only"));
                    unchecked.push(n);
                    None
                }
                Err(e) => return Err(e),
            },
        };
        let pieces: Vec<(i32, i64)> = match (&exact, &degreewise) {
            (Some(poly), dw) => {
                if let Some((lo, dims, ok)) = dw {
                    for (k, &v) in dims.iter().enumerate() {
                        let d = lo + k as i32;
                        if v != poly.coeff(d) {
                            return Err(Error::Internal(format!(
                                "routes disagree on Tor_{n} in degree {d}: exact {}, degreewise {v}",
                                poly.coeff(d)
                            )));
                        }
                    }
                    if !ok {
                        notes.push(format!("degreewise window for Tor_{n} not zero; exact route used"));
                    }
                }
                let lo = poly.low;
                poly.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (lo + k as i32, c))
                    .collect()
            }
            (None, Some((lo, dims, ok))) => {
                if !ok {
                    certified = false;
                    notes.push(format!("degreewise window for Tor_{n} not zero"));
                }
                dims.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (lo + k as i32, c))
                    .collect()
            }
            (None, None) => unreachable!(),
        };
        if pieces.iter().any(|&(_, c)| c < 0) {
            return Err(Error::Internal(format!("negative dimension in Tor_{n}")));
        }
        lengths.push(pieces.iter().map(|&(_, c)| c).sum());
        graded.push(pieces);
    }
    let vanishing = vanishing_certificate(res, &lengths);
    Ok(TorTable { ring: res.ring.tag.clone(), route: opts.route, certified, lengths, graded, vanishing, unchecked, notes })
}

fn vanishing_certificate(res: &Resolution, lengths: &[i64]) -> Option<Vanishing> {
    if res.finished {
        let mut from = res.length() + 1;
        while from > 0 && lengths.get(from - 1) == Some(&0) {
            from -= 1;
        }
        return Some(Vanishing { from, certificate: "finite_resolution".into() });
    }
    let run = res.ring.codim() + 1;
    let zeros = lengths.iter().rev().take_while(|&&l| l == 0).count();
    if zeros >= run {
        return Some(Vanishing { from: lengths.len() - zeros, certificate: "rigidity".into() });
    }
    None
}
