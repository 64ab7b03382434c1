//! Integer and rational path homology, and the Künneth check.

use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::digraph::{cartesian_product, Digraph};
use crate::linalg::{rank_z, smith_normal_form, SnfResult};
use crate::omega::{build_complex, OmegaComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Rationals,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("degree {requested} needs the complex built to degree {}, but it stops at {available}", requested + 1)]
    InsufficientDepth { requested: i64, available: usize },
    #[error("cohomology rank mismatch in degree {degree}: quotient complex gives {quotient}, duality gives {dual}")]
    DualityMismatch {
        degree: usize,
        quotient: usize,
        dual: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeHomology {
    pub n: i64,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub reduced: bool,
    pub coeff: Coefficients,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyResult {
    pub fn betti(&self, n: i64) -> usize {
        self.degrees
            .iter()
            .find(|d| d.n == n)
            .map_or(0, |d| d.betti)
    }

    /// Betti numbers for degrees `0..`.
    pub fn bettis(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .filter(|d| d.n >= 0)
            .map(|d| d.betti)
            .collect()
    }

    pub fn torsion(&self, n: i64) -> Vec<BigInt> {
        self.degrees
            .iter()
            .find(|d| d.n == n)
            .map(|d| d.torsion.clone())
            .unwrap_or_default()
    }

    /// Every listed group vanishes.
    pub fn is_trivial(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.betti == 0 && d.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| {
                if d.n.rem_euclid(2) == 0 {
                    d.betti as i64
                } else {
                    -(d.betti as i64)
                }
            })
            .sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "reduced": self.reduced,
            "degrees": self.degrees.iter().map(|d| json!({
                "n": d.n,
                "betti": d.betti,
                "torsion": d.torsion.iter().map(crate::io::bigint_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.reduced { "H~" } else { "H" };
        for d in &self.degrees {
            write!(f, "{tag}_{} = ", d.n)?;
            let mut parts = Vec::new();
            if d.betti > 0 {
                parts.push(match (d.betti, self.coeff) {
                    (1, Coefficients::Integers) => "Z".to_string(),
                    (b, Coefficients::Integers) => format!("Z^{b}"),
                    (1, Coefficients::Rationals) => "Q".to_string(),
                    (b, Coefficients::Rationals) => format!("Q^{b}"),
                });
            }
            for t in &d.torsion {
                parts.push(format!("Z/{t}"));
            }
            if parts.is_empty() {
                parts.push("0".to_string());
            }
            writeln!(f, "{}", parts.join(" + "))?;
        }
        Ok(())
    }
}

/// Chain-group dimensions and boundary ranks of a complex, by degree.
struct Ranks {
    min: i64,
    dims: Vec<usize>,
    /// `snf[k]` is the Smith form of ∂ out of degree `min + k`.
    snf: Vec<SnfResult>,
}

impl Ranks {
    fn of(c: &OmegaComplex, coeff: Coefficients) -> Self {
        let min = if c.reduced() { -1 } else { 0 };
        let mut dims = Vec::new();
        let mut snf = Vec::new();
        if c.reduced() {
            dims.push(1);
            snf.push(SnfResult {
                invariants: Vec::new(),
                rank: 0,
            });
        }
        for n in 0..=c.maxdim() {
            let d = c.space(n).rank();
            dims.push(d);
            let m = c.boundary_matrix(n);
            snf.push(if n == 0 && !c.reduced() || m.is_empty() || d == 0 {
                SnfResult {
                    invariants: Vec::new(),
                    rank: 0,
                }
            } else if coeff == Coefficients::Integers {
                smith_normal_form(m, d)
            } else {
                let rank = rank_z(m, d);
                SnfResult {
                    invariants: vec![BigInt::from(1); rank],
                    rank,
                }
            });
        }
        Ranks { min, dims, snf }
    }

    fn degree(&self, n: i64) -> DegreeHomology {
        let k = (n - self.min) as usize;
        let out_rank = self.snf[k].rank;
        let (in_rank, torsion) = match self.snf.get(k + 1) {
            Some(s) => (s.rank, s.torsion()),
            None => (0, Vec::new()),
        };
        DegreeHomology {
            n,
            betti: self.dims[k] - out_rank - in_rank,
            torsion,
        }
    }
}

/// Homology in every degree the complex determines: up to `maxdim - 1`, or
/// up to `maxdim` when Ω vanishes above it.
pub fn homology(c: &OmegaComplex, coeff: Coefficients) -> HomologyResult {
    let ranks = Ranks::of(c, coeff);
    let top = if c.is_complete() {
        c.maxdim() as i64
    } else {
        c.maxdim() as i64 - 1
    };
    HomologyResult {
        reduced: c.reduced(),
        coeff,
        degrees: (ranks.min..=top).map(|n| ranks.degree(n)).collect(),
    }
}

/// Homology in a single degree.
pub fn homology_degree(
    c: &OmegaComplex,
    n: i64,
    coeff: Coefficients,
) -> Result<DegreeHomology, HomologyError> {
    let available = c.maxdim();
    if n >= available as i64 && !c.is_complete() || n > available as i64 {
        return Err(HomologyError::InsufficientDepth {
            requested: n,
            available,
        });
    }
    let ranks = Ranks::of(c, coeff);
    if n < ranks.min {
        return Ok(DegreeHomology {
            n,
            betti: 0,
            torsion: Vec::new(),
        });
    }
    Ok(ranks.degree(n))
}

/// Builds the complex one degree deeper than `maxdim` and returns degrees
/// up to `maxdim`.
pub fn path_homology(
    g: &Digraph,
    maxdim: usize,
    coeff: Coefficients,
    reduced: bool,
) -> HomologyResult {
    let c = build_complex(g, maxdim + 1, reduced);
    let mut h = homology(&c, coeff);
    h.degrees.retain(|d| d.n <= maxdim as i64);
    h
}

/// Full homology, built to `|V|` so every degree is determined.
pub fn full_homology(g: &Digraph, coeff: Coefficients, reduced: bool) -> HomologyResult {
    path_homology(g, g.vertex_count().saturating_sub(1), coeff, reduced)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethReport {
    pub product: Vec<usize>,
    pub convolution: Vec<usize>,
    pub holds: bool,
}

/// Compares rational Betti numbers of `G ⊡ H` with the convolution of the
/// factors' Betti numbers, degrees `0..=maxdim`.
pub fn kunneth_check(g: &Digraph, h: &Digraph, maxdim: usize) -> KunnethReport {
    let bg = padded(
        path_homology(g, maxdim, Coefficients::Rationals, false),
        maxdim,
    );
    let bh = padded(
        path_homology(h, maxdim, Coefficients::Rationals, false),
        maxdim,
    );
    let gh = cartesian_product(g, h);
    let product = padded(
        path_homology(&gh, maxdim, Coefficients::Rationals, false),
        maxdim,
    );
    let convolution: Vec<usize> = (0..=maxdim)
        .map(|k| (0..=k).map(|i| bg[i] * bh[k - i]).sum())
        .collect();
    KunnethReport {
        holds: product == convolution,
        product,
        convolution,
    }
}

fn padded(h: HomologyResult, maxdim: usize) -> Vec<usize> {
    let mut b = h.bettis();
    b.resize(maxdim + 1, 0);
    b
}

/// Betti numbers up to `maxdim` as a vector (rational coefficients).
pub fn rational_bettis(g: &Digraph, maxdim: usize) -> Vec<usize> {
    padded(
        path_homology(g, maxdim, Coefficients::Rationals, false),
        maxdim,
    )
}
