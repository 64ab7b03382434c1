//! The ∂-invariant lattices Ω_n(G) and the path complex.
//!
//! Only interior faces of an allowed path can fail to be allowed, and
//! interior faces keep both endpoints. The constraint matrix defining Ω_n is
//! therefore block diagonal over (start, end) pairs, and each block's
//! kernel is computed separately as a saturated lattice in Hermite form.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::{allowed_index_paths, boundary, delta_component, Chain, Coeff, ElemPath};
use crate::digraph::{Digraph, Vertex};
use crate::linalg::{hermite_coordinates, integer_kernel, IntMatrix};

/// Ω_n restricted to the paths from one start to one end.
#[derive(Debug, Clone)]
pub struct OmegaBlock {
    pub start: Vertex,
    pub end: Vertex,
    pub paths: Vec<ElemPath>,
    /// Row Hermite basis, one row per basis chain, columns indexed by `paths`.
    pub basis: Vec<Vec<BigInt>>,
}

impl OmegaBlock {
    fn chain(&self, row: &[BigInt]) -> Chain {
        let dim = self.paths[0].len();
        let mut c = Chain::zero(dim);
        for (p, k) in self.paths.iter().zip(row) {
            c.add_term(p.clone(), k.clone());
        }
        c
    }
}

/// A lattice basis of Ω_n(G), organised by endpoint blocks.
#[derive(Debug, Clone)]
pub struct OmegaSpace {
    dim: usize,
    blocks: Vec<OmegaBlock>,
    by_endpoints: HashMap<(Vertex, Vertex), usize>,
    offsets: Vec<usize>,
    rank: usize,
    allowed: usize,
}

impl OmegaSpace {
    pub fn compute(g: &Digraph, n: usize) -> Self {
        let mut grouped: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
        let paths = allowed_index_paths(g, n);
        let allowed = paths.len();
        for p in paths {
            grouped.entry((p[0], p[n])).or_default().push(p);
        }
        let mut blocks = Vec::new();
        for ((s, e), ps) in grouped {
            let basis = block_kernel(g, n, &ps);
            if basis.is_empty() {
                continue;
            }
            blocks.push(OmegaBlock {
                start: g.vertex(s).clone(),
                end: g.vertex(e).clone(),
                paths: ps
                    .iter()
                    .map(|p| ElemPath::from_vec(p.iter().map(|&i| g.vertex(i).clone()).collect()))
                    .collect(),
                basis,
            });
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut rank = 0;
        let mut by_endpoints = HashMap::new();
        for (i, b) in blocks.iter().enumerate() {
            offsets.push(rank);
            rank += b.basis.len();
            by_endpoints.insert((b.start.clone(), b.end.clone()), i);
        }
        OmegaSpace {
            dim: n,
            blocks,
            by_endpoints,
            offsets,
            rank,
            allowed,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of allowed regular `n`-paths.
    pub fn allowed_count(&self) -> usize {
        self.allowed
    }

    pub fn blocks(&self) -> &[OmegaBlock] {
        &self.blocks
    }

    pub fn basis(&self) -> Vec<Chain> {
        self.blocks
            .iter()
            .flat_map(|b| b.basis.iter().map(move |row| b.chain(row)))
            .collect()
    }

    /// Integer coordinates of `c` in the basis, `None` when `c ∉ Ω_n`.
    pub fn coordinates(&self, c: &Chain) -> Option<Vec<BigInt>> {
        if c.dim() != self.dim {
            return None;
        }
        let mut out = vec![BigInt::zero(); self.rank];
        for (key, part) in split_by_endpoints(c) {
            let &bi = self.by_endpoints.get(&key)?;
            let block = &self.blocks[bi];
            let index: HashMap<&ElemPath, usize> = block
                .paths
                .iter()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            let mut x = vec![BigInt::zero(); block.paths.len()];
            for (p, k) in part.terms() {
                x[*index.get(p)?] = k.clone();
            }
            let coords = hermite_coordinates(&block.basis, &x)?;
            for (i, v) in coords.into_iter().enumerate() {
                out[self.offsets[bi] + i] = v;
            }
        }
        Some(out)
    }

    /// Rational coordinates of a chain in the rational span of the basis.
    pub fn coordinates_q<R: Coeff>(&self, c: &Chain<R>) -> Option<Vec<BigRational>> {
        if c.dim() != self.dim {
            return None;
        }
        let mut out = vec![BigRational::zero(); self.rank];
        for (key, part) in split_by_endpoints(c) {
            let &bi = self.by_endpoints.get(&key)?;
            let block = &self.blocks[bi];
            let index: HashMap<&ElemPath, usize> = block
                .paths
                .iter()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            let mut x = vec![BigRational::zero(); block.paths.len()];
            for (p, k) in part.terms() {
                x[*index.get(p)?] = k.to_rational();
            }
            for (i, row) in block.basis.iter().enumerate() {
                let pc = row.iter().position(|v| !v.is_zero())?;
                let q = &x[pc] / BigRational::from_integer(row[pc].clone());
                if !q.is_zero() {
                    for (a, b) in x.iter_mut().zip(row) {
                        *a -= &q * BigRational::from_integer(b.clone());
                    }
                }
                out[self.offsets[bi] + i] = q;
            }
            if !x.iter().all(Zero::is_zero) {
                return None;
            }
        }
        Some(out)
    }

    /// The chain with the given integer coordinates.
    pub fn chain_from(&self, coords: &[BigInt]) -> Chain {
        let mut c = Chain::zero(self.dim);
        for (bi, b) in self.blocks.iter().enumerate() {
            for (i, row) in b.basis.iter().enumerate() {
                let k = &coords[self.offsets[bi] + i];
                if !k.is_zero() {
                    c.add_assign_scaled(&b.chain(row), k);
                }
            }
        }
        c
    }

    pub fn chain_from_q(&self, coords: &[BigRational]) -> Chain<BigRational> {
        let mut c = Chain::zero(self.dim);
        for (bi, b) in self.blocks.iter().enumerate() {
            for (i, row) in b.basis.iter().enumerate() {
                let k = &coords[self.offsets[bi] + i];
                if !k.is_zero() {
                    c.add_assign_scaled(&b.chain(row).to_rational(), k);
                }
            }
        }
        c
    }
}

pub fn split_by_endpoints<R: Coeff>(c: &Chain<R>) -> BTreeMap<(Vertex, Vertex), Chain<R>> {
    let mut out: BTreeMap<(Vertex, Vertex), Chain<R>> = BTreeMap::new();
    for (p, k) in c.terms() {
        out.entry((p.start().clone(), p.end().clone()))
            .or_insert_with(|| Chain::zero(c.dim()))
            .add_term(p.clone(), k.clone());
    }
    out
}

/// Non-allowed interior faces as constraint rows over the block's paths.
pub(crate) fn block_constraints(
    g: &Digraph,
    n: usize,
    paths: &[Vec<usize>],
) -> Vec<Vec<(usize, i8)>> {
    let mut rows: BTreeMap<Vec<usize>, Vec<(usize, i8)>> = BTreeMap::new();
    for (col, p) in paths.iter().enumerate() {
        for i in 1..n {
            if g.has_edge_idx(p[i - 1], p[i + 1]) {
                continue;
            }
            let mut face = p.clone();
            face.remove(i);
            rows.entry(face)
                .or_default()
                .push((col, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    rows.into_values().collect()
}

fn block_kernel(g: &Digraph, n: usize, paths: &[Vec<usize>]) -> Vec<Vec<BigInt>> {
    let rows = block_constraints(g, n, paths);
    let mut m: IntMatrix = vec![vec![BigInt::zero(); paths.len()]; rows.len()];
    for (r, entries) in rows.iter().enumerate() {
        for &(c, s) in entries {
            m[r][c] += BigInt::from(s);
        }
    }
    integer_kernel(&m, paths.len())
}

/// A saturated integer basis of Ω_n(G).
pub fn omega_basis(g: &Digraph, n: usize) -> Vec<Chain> {
    OmegaSpace::compute(g, n).basis()
}

/// Is `c` an allowed regular chain of `g` whose boundary is allowed?
pub fn membership<R: Coeff>(g: &Digraph, c: &Chain<R>) -> bool {
    let direct =
        c.is_regular() && c.is_allowed_in(g) && (c.dim() == 0 || boundary(c).is_allowed_in(g));
    debug_assert_eq!(direct, membership_by_faces(g, c));
    direct
}

/// The face criterion: every signed face component `δ_i c` is allowed.
pub fn membership_by_faces<R: Coeff>(g: &Digraph, c: &Chain<R>) -> bool {
    c.is_regular()
        && c.is_allowed_in(g)
        && (c.dim() == 0
            || (0..=c.dim()).all(|i| delta_component(c, i).is_ok_and(|d| d.is_allowed_in(g))))
}

/// The Ω complex of a digraph up to `maxdim`, with boundary matrices in the
/// lattice bases.
#[derive(Debug, Clone)]
pub struct OmegaComplex {
    digraph: Digraph,
    maxdim: usize,
    reduced: bool,
    spaces: Vec<OmegaSpace>,
    /// `boundaries[n]` is the matrix of ∂: Ω_n → Ω_{n-1} (rows: Ω_{n-1}).
    /// `boundaries[0]` is the augmentation row when reduced, else empty.
    boundaries: Vec<IntMatrix>,
}

impl OmegaComplex {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn maxdim(&self) -> usize {
        self.maxdim
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    pub fn space(&self, n: usize) -> &OmegaSpace {
        &self.spaces[n]
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.spaces.iter().map(OmegaSpace::rank).collect()
    }

    pub fn basis(&self, n: usize) -> Vec<Chain> {
        self.spaces[n].basis()
    }

    pub fn boundary_matrix(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }

    /// True when Ω vanishes above `maxdim` for size reasons.
    pub fn is_complete(&self) -> bool {
        self.maxdim + 1 >= self.digraph.vertex_count()
    }
}

/// Builds Ω_0..Ω_maxdim with boundary matrices, verifying ∂∂ = 0.
pub fn build_complex(g: &Digraph, maxdim: usize, reduced: bool) -> OmegaComplex {
    let spaces: Vec<OmegaSpace> = (0..=maxdim).map(|n| OmegaSpace::compute(g, n)).collect();
    let mut boundaries = Vec::with_capacity(maxdim + 1);
    let v = spaces[0].rank();
    boundaries.push(if reduced {
        vec![vec![BigInt::one(); v]]
    } else {
        Vec::new()
    });
    for n in 1..=maxdim {
        let (src, dst) = (&spaces[n], &spaces[n - 1]);
        let mut m = vec![vec![BigInt::zero(); src.rank()]; dst.rank()];
        for (j, b) in src.basis().iter().enumerate() {
            let coords = dst
                .coordinates(&boundary(b))
                .expect("boundary of an Ω basis chain lies in Ω");
            for (i, x) in coords.into_iter().enumerate() {
                m[i][j] = x;
            }
        }
        boundaries.push(m);
    }
    for n in 1..=maxdim {
        let (a, b) = (&boundaries[n - 1], &boundaries[n]);
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let prod = crate::linalg::mat_mul(a, b, spaces[n - 1].rank());
        assert!(
            prod.iter().flatten().all(Zero::is_zero),
            "∂∂ ≠ 0 in degree {n}"
        );
    }
    OmegaComplex {
        digraph: g.clone(),
        maxdim,
        reduced,
        spaces,
        boundaries,
    }
}

/// Default depth: |V| - 1 (at least 0).
pub fn default_maxdim(g: &Digraph) -> usize {
    g.vertex_count().saturating_sub(1)
}
