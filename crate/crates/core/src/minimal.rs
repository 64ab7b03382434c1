//! Width, the partial order on chains, minimality certificates, and
//! enumeration of minimal paths.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use thiserror::Error;

use crate::chain::{allowed_index_paths, Chain, ChainError, ElemPath};
use crate::digraph::{Digraph, Vertex};
use crate::omega::{block_constraints, membership};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalError {
    #[error("chain is not ∂-invariant in the digraph")]
    NotOmegaMember,
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub fn width(c: &Chain) -> BigInt {
    c.width()
}

/// `u ≤ v`: every coefficient of `u` lies between 0 and the matching
/// coefficient of `v`, and `w(u) ≤ w(v)`.
pub fn chain_leq(u: &Chain, v: &Chain) -> Result<bool, ChainError> {
    if u.dim() != v.dim() && !u.is_zero() && !v.is_zero() {
        return Err(ChainError::DimMismatch(u.dim(), v.dim()));
    }
    let conformal = u.terms().all(|(p, a)| {
        let b = v.coeff(p);
        a.abs() <= b.abs() && (a - &b).abs() <= b.abs()
    });
    Ok(conformal && u.width() <= v.width())
}

/// `u < v`.
pub fn chain_lt(u: &Chain, v: &Chain) -> Result<bool, ChainError> {
    Ok(chain_leq(u, v)? && u != v)
}

/// Depth-first search over integer boxes subject to linear constraints
/// `Σ s·x = 0`, with interval pruning on every row.
pub(crate) struct BoxSearch {
    lo: Vec<i64>,
    hi: Vec<i64>,
    rows: Vec<Vec<(usize, i64)>>,
    var_rows: Vec<Vec<(usize, i64)>>,
}

impl BoxSearch {
    pub(crate) fn new(lo: Vec<i64>, hi: Vec<i64>, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let mut var_rows = vec![Vec::new(); lo.len()];
        for (r, row) in rows.iter().enumerate() {
            for &(v, s) in row {
                var_rows[v].push((r, s));
            }
        }
        BoxSearch {
            lo,
            hi,
            rows,
            var_rows,
        }
    }

    fn row_range(&self, r: usize, from: usize) -> (i64, i64) {
        let mut lo = 0;
        let mut hi = 0;
        for &(v, s) in &self.rows[r] {
            if v >= from {
                let (a, b) = (s * self.lo[v], s * self.hi[v]);
                lo += a.min(b);
                hi += a.max(b);
            }
        }
        (lo, hi)
    }

    /// Visits every solution, values tried from the end of each interval
    /// farthest from zero towards zero. `extra` may prune partial
    /// assignments (it sees the first `k` assigned values).
    pub(crate) fn run<F, P>(&self, mut visit: F, extra: P)
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
        P: Fn(&[i64], usize) -> bool,
    {
        let n = self.lo.len();
        // Remaining range of each row over variables v >= k, for every k.
        let mut rest: Vec<Vec<(i64, i64)>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            rest.push((0..self.rows.len()).map(|r| self.row_range(r, k)).collect());
        }
        let mut x = vec![0i64; n];
        let mut sums = vec![0i64; self.rows.len()];
        let _ = self.dfs(0, &mut x, &mut sums, &rest, &mut visit, &extra);
    }

    fn dfs<F, P>(
        &self,
        k: usize,
        x: &mut Vec<i64>,
        sums: &mut Vec<i64>,
        rest: &[Vec<(i64, i64)>],
        visit: &mut F,
        extra: &P,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
        P: Fn(&[i64], usize) -> bool,
    {
        if k == x.len() {
            return visit(x);
        }
        let (lo, hi) = (self.lo[k], self.hi[k]);
        let mut values: Vec<i64> = (lo..=hi).collect();
        values.sort_by_key(|v| std::cmp::Reverse(v.abs()));
        for v in values {
            x[k] = v;
            for &(r, s) in &self.var_rows[k] {
                sums[r] += s * v;
            }
            let feasible = self.var_rows[k].iter().all(|&(r, _)| {
                let (a, b) = rest[k + 1][r];
                sums[r] + a <= 0 && 0 <= sums[r] + b
            });
            let flow = if feasible && extra(x, k + 1) {
                self.dfs(k + 1, x, sums, rest, visit, extra)
            } else {
                ControlFlow::Continue(())
            };
            for &(r, s) in &self.var_rows[k] {
                sums[r] -= s * v;
            }
            x[k] = 0;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn to_i64(k: &BigInt) -> i64 {
    i64::try_from(k).expect("coefficient fits in i64")
}

/// Outcome of the minimality search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    /// A nonzero `P' < P` in Ω when `P` is not minimal.
    pub witness: Option<Chain>,
}

fn index_paths(c: &Chain, g: &Digraph) -> Vec<Vec<usize>> {
    c.paths()
        .map(|p| {
            p.vertices()
                .iter()
                .map(|v| g.index_of(v).expect("vertex of g"))
                .collect()
        })
        .collect()
}

/// Decides whether `p` is minimal in Ω_n(g). The search ranges over `d`
/// with each `d_p` between 0 and `c_p`, excluding `0` and `P` itself.
pub fn is_minimal(g: &Digraph, p: &Chain) -> Result<Minimality, MinimalError> {
    if !membership(g, p) {
        return Err(MinimalError::NotOmegaMember);
    }
    if p.is_zero() {
        return Ok(Minimality {
            minimal: false,
            witness: None,
        });
    }
    let terms: Vec<(ElemPath, i64)> = p.terms().map(|(q, k)| (q.clone(), to_i64(k))).collect();
    let lo: Vec<i64> = terms.iter().map(|(_, c)| (*c).min(0)).collect();
    let hi: Vec<i64> = terms.iter().map(|(_, c)| (*c).max(0)).collect();
    let rows = constraint_rows(g, p.dim(), &index_paths(p, g));
    let search = BoxSearch::new(lo, hi, rows);
    let full: Vec<i64> = terms.iter().map(|(_, c)| *c).collect();
    let mut found = None;
    search.run(
        |x| {
            if x.iter().any(|&v| v != 0) && x != full.as_slice() {
                found = Some(x.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
        |_, _| true,
    );
    Ok(match found {
        Some(x) => Minimality {
            minimal: false,
            witness: Some(assemble(p.dim(), terms.iter().map(|(q, _)| q), &x)),
        },
        None => Minimality {
            minimal: true,
            witness: None,
        },
    })
}

fn constraint_rows(g: &Digraph, n: usize, paths: &[Vec<usize>]) -> Vec<Vec<(usize, i64)>> {
    block_constraints(g, n, paths)
        .into_iter()
        .map(|row| row.into_iter().map(|(c, s)| (c, s as i64)).collect())
        .collect()
}

fn assemble<'a>(dim: usize, paths: impl Iterator<Item = &'a ElemPath>, x: &[i64]) -> Chain {
    let mut c = Chain::zero(dim);
    for (p, &v) in paths.zip(x) {
        if v != 0 {
            c.add_term(p.clone(), BigInt::from(v));
        }
    }
    c
}

/// Writes `c` as a sum of minimal chains by repeatedly descending to a
/// minimal element below the remainder and peeling it off.
pub fn minimal_decompose(g: &Digraph, c: &Chain) -> Result<Vec<Chain>, MinimalError> {
    if !membership(g, c) {
        return Err(MinimalError::NotOmegaMember);
    }
    let mut rest = c.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let mut cur = rest.clone();
        while let Some(w) = is_minimal(g, &cur)?.witness {
            cur = w;
        }
        rest = &rest - &cur;
        out.push(cur);
    }
    Ok(out)
}

/// Does `small` sit conformally inside `x` (same signs, support contained),
/// up to a global sign?
fn conformal_in(small: &[i64], x: &[i64]) -> bool {
    let fits = |sign: i64| {
        small
            .iter()
            .zip(x)
            .all(|(&m, &v)| m == 0 || (v != 0 && m * sign * v > 0 && (m * sign).abs() <= v.abs()))
    };
    fits(1) || fits(-1)
}

/// Allowed `n`-paths grouped by (start, end), as index sequences.
fn strata(g: &Digraph, n: usize, s: Option<&Vertex>, e: Option<&Vertex>) -> Vec<Vec<Vec<usize>>> {
    let si = s.map(|v| g.index_of(v));
    let ei = e.map(|v| g.index_of(v));
    if matches!(si, Some(None)) || matches!(ei, Some(None)) {
        return Vec::new();
    }
    let mut grouped: std::collections::BTreeMap<(usize, usize), Vec<Vec<usize>>> =
        Default::default();
    for p in allowed_index_paths(g, n) {
        if si.flatten().is_some_and(|i| p[0] != i) || ei.flatten().is_some_and(|i| p[n] != i) {
            continue;
        }
        grouped.entry((p[0], p[n])).or_default().push(p);
    }
    grouped.into_values().collect()
}

fn to_paths(g: &Digraph, ps: &[Vec<usize>]) -> Vec<ElemPath> {
    ps.iter()
        .map(|p| ElemPath::new(p.iter().map(|&i| g.vertex(i).clone()).collect()).expect("nonempty"))
        .collect()
}

/// Minimal ±1 vectors of one (start, end) stratum, by increasing support.
fn stratum_minimal(g: &Digraph, n: usize, ps: &[Vec<usize>]) -> Vec<Chain> {
    let m = ps.len();
    let rows = constraint_rows(g, n, ps);
    let search = BoxSearch::new(vec![-1; m], vec![1; m], rows);
    let paths = to_paths(g, ps);
    let mut found: Vec<Vec<i64>> = Vec::new();
    for k in 1..=m {
        let mut level = Vec::new();
        search.run(
            |x| {
                let support = x.iter().filter(|&&v| v != 0).count();
                if support == k && !found.iter().any(|f| conformal_in(f, x)) {
                    level.push(x.to_vec());
                }
                ControlFlow::Continue(())
            },
            |x, assigned| {
                let nz = x[..assigned].iter().filter(|&&v| v != 0).count();
                let first = x[..assigned].iter().find(|&&v| v != 0);
                nz <= k && nz + (m - assigned) >= k && first.is_none_or(|&v| v > 0)
            },
        );
        found.extend(level);
    }
    found.iter().map(|x| assemble(n, paths.iter(), x)).collect()
}

/// Minimal paths of length `n`, up to sign, optionally restricted to a
/// start and/or end vertex. Each is normalised so its first coefficient is
/// positive.
pub fn enumerate_minimal(
    g: &Digraph,
    n: usize,
    s: Option<&Vertex>,
    e: Option<&Vertex>,
) -> Vec<Chain> {
    let groups = strata(g, n, s, e);
    groups
        .par_iter()
        .map(|ps| stratum_minimal(g, n, ps))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Slow cross-check: minimal elements among all integer vectors with
/// coefficients bounded by `bound`, normalised and deduplicated.
pub fn enumerate_minimal_box(g: &Digraph, n: usize, bound: i64) -> Vec<Chain> {
    let mut out = Vec::new();
    for ps in strata(g, n, None, None) {
        let m = ps.len();
        let rows = constraint_rows(g, n, &ps);
        let search = BoxSearch::new(vec![-bound; m], vec![bound; m], rows);
        let paths = to_paths(g, &ps);
        let mut sols: Vec<Vec<i64>> = Vec::new();
        search.run(
            |x| {
                if x.iter().any(|&v| v != 0) {
                    sols.push(x.to_vec());
                }
                ControlFlow::Continue(())
            },
            |x, assigned| {
                x[..assigned]
                    .iter()
                    .find(|&&v| v != 0)
                    .is_none_or(|&v| v > 0)
            },
        );
        for x in &sols {
            let below = sols.iter().any(|y| {
                [1i64, -1].iter().any(|&sign| {
                    y.iter().zip(x).all(|(&a, &b)| {
                        let a = a * sign;
                        a == 0 || (a.signum() == b.signum() && a.abs() <= b.abs())
                    }) && y.iter().zip(x).any(|(&a, &b)| a * sign != b)
                })
            });
            if !below {
                out.push(assemble(n, paths.iter(), x));
            }
        }
    }
    out
}

/// All coefficients are ±1.
pub fn unit_coefficients(c: &Chain) -> bool {
    c.terms().all(|(_, k)| k.abs().is_one())
}

/// A single start and end shared by all terms.
pub fn common_endpoints(c: &Chain) -> Option<(Vertex, Vertex)> {
    c.endpoints()
}
