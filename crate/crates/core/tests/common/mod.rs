#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pathhom::chain::allowed_basis;
use pathhom::{boundary, Chain, Digraph, ElemPath};
use proptest::prelude::*;

/// Rank over the rationals by plain Gaussian elimination.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() / pivot.clone();
                for j in c..cols {
                    let t = m[r][j].clone() * f.clone();
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// dim Ω_n computed as |A_n| minus the rank of ∂ followed by projection
/// onto the non-allowed (n−1)-paths.
pub fn omega_rank(g: &Digraph, n: usize) -> usize {
    let a = allowed_basis(g, n);
    if n == 0 || a.is_empty() {
        return a.len();
    }
    let mut bad: Vec<ElemPath> = Vec::new();
    let images: Vec<Chain> = a
        .iter()
        .map(|p| boundary(&Chain::elementary(p.clone())))
        .collect();
    for im in &images {
        for (q, _) in im.terms() {
            if !q.is_allowed_in(g) && !bad.contains(q) {
                bad.push(q.clone());
            }
        }
    }
    if bad.is_empty() {
        return a.len();
    }
    let rows: Vec<Vec<BigRational>> = images
        .iter()
        .map(|im| {
            bad.iter()
                .map(|q| BigRational::from_integer(im.coeff(q)))
                .collect()
        })
        .collect();
    a.len() - rank(&rows)
}

/// Number of weak components by union-find.
pub fn weak_components(g: &Digraph) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (a, b) in g.edges() {
        let (i, j) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        parent[ri] = rj;
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Digraphs on `1..=max` vertices named `0..n`.
pub fn small_digraph(max: usize) -> impl Strategy<Value = Digraph> {
    (1usize..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.4), n * n).prop_map(move |bits| {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut es = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && bits[a * n + b] {
                        es.push((names[a].as_str(), names[b].as_str()));
                    }
                }
            }
            Digraph::new("g", names.iter().map(String::as_str), es).unwrap()
        })
    })
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn one() -> BigRational {
    BigRational::one()
}

/// Term-for-term sum of signed groups, each given as `(coefficient, compact path)` lists.
pub fn groups(parts: &[&[(i64, &str)]]) -> Chain {
    let mut out: Option<Chain> = None;
    for part in parts {
        for (k, p) in part.iter() {
            let path = pathhom::chain::compact(p);
            let dim = path.len();
            let c = out.get_or_insert_with(|| Chain::zero(dim));
            c.add_term(path, BigInt::from(*k));
        }
    }
    out.expect("at least one term")
}
