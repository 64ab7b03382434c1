//! Mayer–Vietoris pairs: the cover conditions, surjectivity of
//! Ω̃(Y1) ⊕ Ω̃(Y2) → Ω̃(X), and exactness of the long homology sequence.
//!
//! All complexes are reduced and handled in coordinates: index `k` of a
//! coordinate complex is degree `k - 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::chain::{allowed_index_paths, ElemPath};
use crate::digraph::{intersection, Digraph};
use crate::homology::{full_homology, Coefficients};
use crate::linalg::{
    independent_subset, nullspace_q, rank_q, smith_normal_form, solve_q, RatMatrix,
};
use crate::omega::{build_complex, OmegaComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvError {
    #[error("Y1 ∪ Y2 is not X")]
    NotACover,
    #[error("allowed path {0} of X lies in neither Y1 nor Y2")]
    PathOutsideCover(ElemPath),
    #[error("Ω̃_{0}(Y1) ⊕ Ω̃_{0}(Y2) → Ω̃_{0}(X) is not onto")]
    NotEpimorphism(usize),
    #[error("long exact sequence fails at {0}")]
    ExactnessFailure(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvDegree {
    pub n: usize,
    pub rank_x: usize,
    pub rank_y1: usize,
    pub rank_y2: usize,
    pub rank_z: usize,
    pub onto_q: bool,
    pub onto_z: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvPairReport {
    pub z: Digraph,
    pub degrees: Vec<MvDegree>,
}

/// Matrix of the inclusion Ω_n(small) → Ω_n(big) in lattice coordinates.
fn inclusion(small: &OmegaComplex, big: &OmegaComplex, n: usize) -> Vec<Vec<BigInt>> {
    let rows = big.space(n).rank();
    let basis = small.basis(n);
    let mut m = vec![vec![BigInt::zero(); basis.len()]; rows];
    for (j, b) in basis.iter().enumerate() {
        let coords = big
            .space(n)
            .coordinates(b)
            .expect("Ω of a subgraph embeds in Ω of the graph");
        for (i, x) in coords.into_iter().enumerate() {
            m[i][j] = x;
        }
    }
    m
}

/// `[J1 | -J2]` at degree `n`.
fn difference_matrix(
    y1: &OmegaComplex,
    y2: &OmegaComplex,
    x: &OmegaComplex,
    n: usize,
) -> Vec<Vec<BigInt>> {
    let j1 = inclusion(y1, x, n);
    let j2 = inclusion(y2, x, n);
    j1.into_iter()
        .zip(j2)
        .map(|(mut a, b)| {
            a.extend(b.into_iter().map(|v| -v));
            a
        })
        .collect()
}

fn covers(x: &Digraph, y1: &Digraph, y2: &Digraph) -> bool {
    let mut vs = y1.vertex_set();
    vs.extend(y2.vertex_set());
    let mut es = y1.edge_set();
    es.extend(y2.edge_set());
    vs == x.vertex_set() && es == x.edge_set()
}

/// Checks that `(Y1, Y2)` is a Mayer–Vietoris pair for `X` in degrees
/// `0..=maxdim`.
pub fn mv_pair_check(
    x: &Digraph,
    y1: &Digraph,
    y2: &Digraph,
    maxdim: usize,
) -> Result<MvPairReport, MvError> {
    if !covers(x, y1, y2) {
        return Err(MvError::NotACover);
    }
    for n in 1..=maxdim {
        for p in allowed_index_paths(x, n) {
            let path = ElemPath::new(p.iter().map(|&i| x.vertex(i).clone()).collect())
                .expect("nonempty path");
            if !path.is_allowed_in(y1) && !path.is_allowed_in(y2) {
                return Err(MvError::PathOutsideCover(path));
            }
        }
    }
    let cx = build_complex(x, maxdim, true);
    let c1 = build_complex(y1, maxdim, true);
    let c2 = build_complex(y2, maxdim, true);
    let z = intersection(y1, y2);
    let cz = build_complex(&z, maxdim, true);
    let mut degrees = Vec::new();
    for n in 0..=maxdim {
        let m = difference_matrix(&c1, &c2, &cx, n);
        let rank_x = cx.space(n).rank();
        let cols = c1.space(n).rank() + c2.space(n).rank();
        let snf = smith_normal_form(&m, cols);
        let onto_q = snf.rank == rank_x;
        let onto_z = onto_q && snf.invariants.iter().all(One::is_one);
        degrees.push(MvDegree {
            n,
            rank_x,
            rank_y1: c1.space(n).rank(),
            rank_y2: c2.space(n).rank(),
            rank_z: cz.space(n).rank(),
            onto_q,
            onto_z,
        });
        if !onto_z {
            return Err(MvError::NotEpimorphism(n));
        }
    }
    Ok(MvPairReport { z, degrees })
}

type QVec = Vec<BigRational>;

fn q(m: &[Vec<BigInt>]) -> RatMatrix {
    crate::linalg::to_rational(m)
}

fn mat_vec(m: &RatMatrix, v: &[BigRational]) -> QVec {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn column(m: &RatMatrix, j: usize) -> QVec {
    m.iter().map(|row| row[j].clone()).collect()
}

/// A reduced complex in coordinates.
struct CoordComplex {
    dims: Vec<usize>,
    /// `d[k]` maps index `k` to index `k - 1`; `d[0]` is empty.
    d: Vec<RatMatrix>,
}

impl CoordComplex {
    fn of(c: &OmegaComplex) -> Self {
        let mut dims = vec![1];
        let mut d = vec![Vec::new()];
        for n in 0..=c.maxdim() {
            dims.push(c.space(n).rank());
            d.push(q(c.boundary_matrix(n)));
        }
        CoordComplex { dims, d }
    }

    fn direct_sum(a: &CoordComplex, b: &CoordComplex) -> Self {
        let dims: Vec<usize> = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
        let mut d = vec![Vec::new()];
        for k in 1..dims.len() {
            let mut m = vec![vec![BigRational::zero(); dims[k]]; dims[k - 1]];
            for i in 0..a.dims[k - 1] {
                for j in 0..a.dims[k] {
                    m[i][j] = a.d[k][i][j].clone();
                }
            }
            for i in 0..b.dims[k - 1] {
                for j in 0..b.dims[k] {
                    m[a.dims[k - 1] + i][a.dims[k] + j] = b.d[k][i][j].clone();
                }
            }
            d.push(m);
        }
        CoordComplex { dims, d }
    }

    fn boundary(&self, k: usize, v: &[BigRational]) -> QVec {
        if k == 0 {
            return Vec::new();
        }
        mat_vec(&self.d[k], v)
    }

    fn cycles(&self, k: usize) -> Vec<QVec> {
        if k == 0 {
            return (0..self.dims[0])
                .map(|i| {
                    (0..self.dims[0])
                        .map(|j| {
                            if i == j {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
        }
        nullspace_q(&self.d[k], self.dims[k])
    }

    fn boundaries(&self, k: usize) -> Vec<QVec> {
        match self.d.get(k + 1) {
            Some(m) => (0..self.dims[k + 1]).map(|j| column(m, j)).collect(),
            None => Vec::new(),
        }
    }

    /// Boundary vectors and homology representatives at index `k`.
    fn homology(&self, k: usize) -> (Vec<QVec>, Vec<QVec>) {
        let b = self.boundaries(k);
        let mut pool = b.clone();
        let base = pool.len();
        pool.extend(self.cycles(k));
        let reps = independent_subset(&pool, self.dims[k])
            .into_iter()
            .filter(|&i| i >= base)
            .map(|i| pool[i].clone())
            .collect();
        (b, reps)
    }
}

/// Rank of the span of `images` modulo `boundaries`.
fn rank_mod(boundaries: &[QVec], images: &[QVec], cols: usize) -> usize {
    let mut all = boundaries.to_vec();
    let base = rank_q(&all, cols);
    all.extend(images.iter().cloned());
    rank_q(&all, cols) - base
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesNode {
    pub label: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub composite_zero: bool,
}

impl LesNode {
    pub fn exact(&self) -> bool {
        self.composite_zero && self.rank_in + self.rank_out == self.dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvLesReport {
    pub pair: MvPairReport,
    pub nodes: Vec<LesNode>,
    /// Reduced Betti numbers of Z, Y1 ⊕ Y2 and X, degrees `-1..=maxdim`.
    pub betti_z: Vec<usize>,
    pub betti_y: Vec<usize>,
    pub betti_x: Vec<usize>,
    /// Reduced Euler characteristics (X, Y1, Y2, Z) from full-depth homology.
    pub euler: [i64; 4],
}

impl MvLesReport {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(LesNode::exact)
    }

    pub fn euler_holds(&self) -> bool {
        let [x, y1, y2, z] = self.euler;
        x == y1 + y2 - z
    }

    pub fn check(&self) -> Result<(), MvError> {
        match self.nodes.iter().find(|n| !n.exact()) {
            Some(n) => Err(MvError::ExactnessFailure(n.label.clone())),
            None => Ok(()),
        }
    }
}

/// Verifies exactness of the reduced Mayer–Vietoris sequence over the
/// rationals at every node of degree `-1..=maxdim`.
pub fn mv_les_verify(
    x: &Digraph,
    y1: &Digraph,
    y2: &Digraph,
    maxdim: usize,
) -> Result<MvLesReport, MvError> {
    let top = maxdim + 2;
    let pair = mv_pair_check(x, y1, y2, top)?;
    let z = pair.z.clone();
    let cx = build_complex(x, top, true);
    let c1 = build_complex(y1, top, true);
    let c2 = build_complex(y2, top, true);
    let cz = build_complex(&z, top, true);
    let kx = CoordComplex::of(&cx);
    let ky = CoordComplex::direct_sum(&CoordComplex::of(&c1), &CoordComplex::of(&c2));
    let kz = CoordComplex::of(&cz);

    // δ = (i1, i2) and d = [J1 | -J2], per index.
    let mut delta = Vec::new();
    let mut diff = Vec::new();
    for k in 0..kx.dims.len() {
        if k == 0 {
            delta.push(vec![vec![BigRational::one()], vec![BigRational::one()]]);
            diff.push(vec![vec![BigRational::one(), -BigRational::one()]]);
            continue;
        }
        let n = k - 1;
        let mut i = q(&inclusion(&cz, &c1, n));
        i.extend(q(&inclusion(&cz, &c2, n)));
        delta.push(i);
        diff.push(q(&difference_matrix(&c1, &c2, &cx, n)));
    }

    // The snake: lift x through d, take the boundary, pull back through δ.
    let connecting = |k: usize, v: &QVec| -> QVec {
        let lift = solve_q(&diff[k], ky.dims[k], v).expect("d is onto");
        let b = ky.boundary(k, &lift);
        solve_q(&delta[k - 1], kz.dims[k - 1], &b).expect("∂ of a lift comes from Z")
    };

    let hx: Vec<_> = (0..kx.dims.len() - 1).map(|k| kx.homology(k)).collect();
    let hy: Vec<_> = (0..ky.dims.len() - 1).map(|k| ky.homology(k)).collect();
    let hz: Vec<_> = (0..kz.dims.len() - 1).map(|k| kz.homology(k)).collect();

    let apply =
        |m: &RatMatrix, vs: &[QVec]| -> Vec<QVec> { vs.iter().map(|v| mat_vec(m, v)).collect() };

    let mut nodes = Vec::new();
    for k in (0..=maxdim + 1).rev() {
        let n = k as i64 - 1;
        // H_n(Y1) ⊕ H_n(Y2): in from δ, out to d.
        let into_y = apply(&delta[k], &hz[k].1);
        let out_y = apply(&diff[k], &hy[k].1);
        let through = apply(&diff[k], &into_y);
        nodes.push(LesNode {
            label: format!("H_{n}(Y1)+H_{n}(Y2)"),
            dim: hy[k].1.len(),
            rank_in: rank_mod(&hy[k].0, &into_y, ky.dims[k]),
            rank_out: rank_mod(&hx[k].0, &out_y, kx.dims[k]),
            composite_zero: rank_mod(&hx[k].0, &through, kx.dims[k]) == 0,
        });
        // H_n(X): in from d, out to ∂'.
        let out_x: Vec<QVec> = if k == 0 {
            Vec::new()
        } else {
            hx[k].1.iter().map(|v| connecting(k, v)).collect()
        };
        let through: Vec<QVec> = if k == 0 {
            Vec::new()
        } else {
            out_y.iter().map(|v| connecting(k, v)).collect()
        };
        nodes.push(LesNode {
            label: format!("H_{n}(X)"),
            dim: hx[k].1.len(),
            rank_in: rank_mod(&hx[k].0, &out_y, kx.dims[k]),
            rank_out: if k == 0 {
                0
            } else {
                rank_mod(&hz[k - 1].0, &out_x, kz.dims[k - 1])
            },
            composite_zero: k == 0 || rank_mod(&hz[k - 1].0, &through, kz.dims[k - 1]) == 0,
        });
        // H_n(Z): in from ∂' out of H_{n+1}(X), out to δ.
        let from_x: Vec<QVec> = hx[k + 1].1.iter().map(|v| connecting(k + 1, v)).collect();
        let out_z = apply(&delta[k], &hz[k].1);
        let through = apply(&delta[k], &from_x);
        nodes.push(LesNode {
            label: format!("H_{n}(Z)"),
            dim: hz[k].1.len(),
            rank_in: rank_mod(&hz[k].0, &from_x, kz.dims[k]),
            rank_out: rank_mod(&hy[k].0, &out_z, ky.dims[k]),
            composite_zero: rank_mod(&hy[k].0, &through, ky.dims[k]) == 0,
        });
    }

    let bettis = |h: &[(Vec<QVec>, Vec<QVec>)]| -> Vec<usize> {
        h[..=maxdim + 1].iter().map(|(_, r)| r.len()).collect()
    };
    let chi = |g: &Digraph| {
        let h = full_homology(g, Coefficients::Rationals, true);
        h.euler_characteristic()
    };
    Ok(MvLesReport {
        betti_z: bettis(&hz),
        betti_y: bettis(&hy),
        betti_x: bettis(&hx),
        euler: [chi(x), chi(y1), chi(y2), chi(&z)],
        pair,
        nodes,
    })
}
