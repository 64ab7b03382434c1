//! Supporting digraphs, distance profiles and ∂-invariant completions.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::chain::{allowed_index_paths, boundary, Chain, ElemPath};
use crate::digraph::{Digraph, Vertex};
use crate::minimal::{chain_leq, BoxSearch};
use crate::omega::block_constraints;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("the terms do not share one start and one end")]
    NoCommonEndpoints,
}

/// The least digraph in which `p` is ∂-invariant: edges of every term plus
/// edges of every term that survives in `∂p`.
pub fn supp(p: &Chain) -> Digraph {
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut add = |q: &ElemPath| {
        for w in q.vertices().windows(2) {
            edges.insert((w[0].clone(), w[1].clone()));
        }
    };
    for q in p.paths() {
        add(q);
    }
    if p.dim() > 0 {
        for q in boundary(p).paths() {
            add(q);
        }
    }
    Digraph::from_sets("Supp", p.vertex_set(), edges)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    pub start: Vertex,
    pub end: Vertex,
    pub n: usize,
    pub d_s: BTreeMap<Vertex, usize>,
    pub d_e: BTreeMap<Vertex, usize>,
}

impl DistanceProfile {
    pub fn s_level(&self, k: usize) -> BTreeSet<Vertex> {
        self.d_s
            .iter()
            .filter(|(_, &d)| d == k)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn e_level(&self, k: usize) -> BTreeSet<Vertex> {
        self.d_e
            .iter()
            .filter(|(_, &d)| d == k)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn s1(&self) -> BTreeSet<Vertex> {
        self.s_level(1)
    }

    pub fn e1(&self) -> BTreeSet<Vertex> {
        self.e_level(1)
    }

    pub fn e2(&self) -> BTreeSet<Vertex> {
        self.e_level(2)
    }

    /// `d_S(S) = 0`, `d_E(E) = 0`, `d_S(E) = d_E(S) = n` and
    /// `d_S + d_E ≤ n` everywhere.
    pub fn invariants_hold(&self) -> bool {
        self.d_s[&self.start] == 0
            && self.d_e[&self.end] == 0
            && self.d_s[&self.end] == self.n
            && self.d_e[&self.start] == self.n
            && self.d_s.iter().all(|(v, &a)| a + self.d_e[v] <= self.n)
    }

    /// Edges of `g` whose endpoints differ by more than 2 in `d_S` or `d_E`.
    pub fn far_edges(&self, g: &Digraph) -> Vec<(Vertex, Vertex)> {
        g.edges()
            .filter(|(a, b)| match (self.d_s.get(*a), self.d_s.get(*b)) {
                (Some(&x), Some(&y)) => {
                    x.abs_diff(y) > 2 || self.d_e[*a].abs_diff(self.d_e[*b]) > 2
                }
                _ => false,
            })
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect()
    }
}

pub fn distance_profile(p: &Chain) -> Result<DistanceProfile, SupportError> {
    let (start, end) = p.endpoints().ok_or(SupportError::NoCommonEndpoints)?;
    let n = p.dim();
    let mut d_s: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut d_e: BTreeMap<Vertex, usize> = BTreeMap::new();
    for q in p.paths() {
        for (i, v) in q.vertices().iter().enumerate() {
            let s = d_s.entry(v.clone()).or_insert(i);
            *s = (*s).min(i);
            let e = d_e.entry(v.clone()).or_insert(n - i);
            *e = (*e).min(n - i);
        }
    }
    Ok(DistanceProfile {
        start,
        end,
        n,
        d_s,
        d_e,
    })
}

/// Edges `u → v` of `g` with both ends on one term `e_I` of `p` whose
/// positions in `I` differ by more than 2.
pub fn per_term_far_edges(p: &Chain, g: &Digraph) -> Vec<(ElemPath, Vertex, Vertex)> {
    let mut out = Vec::new();
    for q in p.paths() {
        for (a, b) in g.edges() {
            if let (Some(i), Some(j)) = (q.position(a), q.position(b)) {
                if i.abs_diff(j) > 2 {
                    out.push((q.clone(), a.clone(), b.clone()));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionReport {
    pub completions: Vec<Chain>,
    pub width_bound: usize,
    /// The bound was reached without finding any completion.
    pub bound_exhausted: bool,
}

pub fn default_width_bound(u: &Chain) -> usize {
    4 * u.width().to_usize().unwrap_or(0)
}

/// Minimal ∂-invariant completions of an allowed chain `u`: the `ũ ∈ Ω`
/// with `u ≤ ũ` such that no `v ∈ Ω` has `u ≤ v < ũ`, found by increasing
/// width up to `width_bound`.
pub fn completions(g: &Digraph, u: &Chain, width_bound: usize) -> CompletionReport {
    let n = u.dim();
    let touched: BTreeSet<(Vertex, Vertex)> = u
        .paths()
        .map(|p| (p.start().clone(), p.end().clone()))
        .collect();
    let paths: Vec<Vec<usize>> = allowed_index_paths(g, n)
        .into_iter()
        .filter(|p| touched.contains(&(g.vertex(p[0]).clone(), g.vertex(p[n]).clone())))
        .collect();
    let elems: Vec<ElemPath> = paths
        .iter()
        .map(|p| ElemPath::new(p.iter().map(|&i| g.vertex(i).clone()).collect()).expect("nonempty"))
        .collect();
    let target: Vec<i64> = elems
        .iter()
        .map(|p| i64::try_from(&u.coeff(p)).expect("small coefficient"))
        .collect();
    let covered = u.paths().all(|p| elems.contains(p));
    let mut found: Vec<Chain> = Vec::new();
    let start = u.width().to_usize().unwrap_or(0);
    if covered && !u.is_zero() {
        let rows: Vec<Vec<(usize, i64)>> = block_constraints(g, n, &paths)
            .into_iter()
            .map(|r| r.into_iter().map(|(c, s)| (c, s as i64)).collect())
            .collect();
        for w in start.max(1)..=width_bound {
            let wi = w as i64;
            let lo: Vec<i64> = target
                .iter()
                .map(|&t| if t > 0 { t } else { -wi })
                .collect();
            let hi: Vec<i64> = target.iter().map(|&t| if t < 0 { t } else { wi }).collect();
            let search = BoxSearch::new(lo, hi, rows.clone());
            let mut level = Vec::new();
            search.run(
                |x| {
                    if x.iter().map(|v| v.abs()).sum::<i64>() == wi {
                        level.push(x.to_vec());
                    }
                    ControlFlow::Continue(())
                },
                |x, k| x[..k].iter().map(|v| v.abs()).sum::<i64>() <= wi,
            );
            for x in level {
                let mut c = Chain::zero(n);
                for (p, &v) in elems.iter().zip(&x) {
                    if v != 0 {
                        c.add_term(p.clone(), BigInt::from(v));
                    }
                }
                let dominated = found
                    .iter()
                    .any(|m| chain_leq(m, &c).unwrap_or(false) && m != &c);
                if !dominated && chain_leq(u, &c).unwrap_or(false) {
                    found.push(c);
                }
            }
        }
    }
    CompletionReport {
        bound_exhausted: found.is_empty(),
        completions: found,
        width_bound,
    }
}
