//! Exact linear algebra over the integers and the rationals.
//!
//! Matrices are dense `Vec<Vec<_>>` in row-major order. The integer routines
//! (Smith form, saturated kernels, Hermite form) work with unimodular row and
//! column operations only; the rational routines use plain Gauss–Jordan
//! elimination with the first nonzero entry as pivot, which keeps every
//! result deterministic.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn zeros<T: Zero + Clone>(rows: usize, cols: usize) -> Vec<Vec<T>> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn identity<T: Zero + One + Clone>(n: usize) -> Vec<Vec<T>> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn mat_mul<T>(a: &[Vec<T>], b: &[Vec<T>], inner: usize) -> Vec<Vec<T>>
where
    T: Zero + Clone + std::ops::Mul<Output = T>,
{
    let cols = b.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<T>> = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].clone() + row[k].clone() * b[k][j].clone();
                }
            }
        }
    }
    out
}

pub fn to_rational(m: &[Vec<BigInt>]) -> RatMatrix {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Result of a Smith normal form computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Positive invariant factors `d_1 | d_2 | ...`.
    pub invariants: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn divisibility_holds(&self) -> bool {
        self.invariants
            .windows(2)
            .all(|w| (&w[1] % &w[0]).is_zero())
            && self.invariants.iter().all(|d| d.is_positive())
    }
}

/// Smith form with the unimodular transforms: `u * m * v = d`.
#[derive(Debug, Clone)]
pub struct SnfDecomposition {
    pub result: SnfResult,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

pub fn smith_normal_form(m: &[Vec<BigInt>], cols: usize) -> SnfResult {
    Snf::run(m, cols, false).result
}

pub fn smith_normal_form_with_transforms(m: &[Vec<BigInt>], cols: usize) -> SnfDecomposition {
    Snf::run(m, cols, true)
}

struct Snf {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    rows: usize,
    cols: usize,
}

impl Snf {
    fn run(m: &[Vec<BigInt>], cols: usize, track: bool) -> SnfDecomposition {
        let rows = m.len();
        let mut s = Snf {
            a: m.to_vec(),
            u: track.then(|| identity(rows)),
            v: track.then(|| identity(cols)),
            rows,
            cols,
        };
        let mut invariants = Vec::new();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = s.min_entry(t) else {
                break;
            };
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);
            loop {
                if !s.clear_column(t) || !s.clear_row(t) {
                    continue;
                }
                // Enforce divisibility of the remaining block by the pivot.
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&s.a[i][j] % &s.a[t][t]).is_zero()));
                match bad {
                    Some(i) => s.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if s.a[t][t].is_negative() {
                s.negate_row(t);
            }
            invariants.push(s.a[t][t].clone());
            t += 1;
        }
        let rank = invariants.len();
        SnfDecomposition {
            result: SnfResult { invariants, rank },
            u: s.u.unwrap_or_default(),
            v: s.v.unwrap_or_default(),
            d: s.a,
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if x.is_one() || (-x).is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Reduces column `t` below the pivot. Returns false when the pivot was
    /// replaced by a smaller remainder and the pass must restart.
    fn clear_column(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.rows {
            if self.a[i][t].is_zero() {
                continue;
            }
            let q = self.a[i][t].div_floor(&self.a[t][t]);
            self.add_row(i, t, &-q);
            if !self.a[i][t].is_zero() {
                clean = false;
            }
        }
        if !clean {
            let i = (t + 1..self.rows)
                .filter(|&i| !self.a[i][t].is_zero())
                .min_by_key(|&i| self.a[i][t].abs())
                .expect("nonzero remainder");
            self.swap_rows(t, i);
        }
        clean
    }

    fn clear_row(&mut self, t: usize) -> bool {
        let mut clean = true;
        for j in t + 1..self.cols {
            if self.a[t][j].is_zero() {
                continue;
            }
            let q = self.a[t][j].div_floor(&self.a[t][t]);
            self.add_col(j, t, &-q);
            if !self.a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            let j = (t + 1..self.cols)
                .filter(|&j| !self.a[t][j].is_zero())
                .min_by_key(|&j| self.a[t][j].abs())
                .expect("nonzero remainder");
            self.swap_cols(t, j);
        }
        clean
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            self.a.swap(i, k);
            if let Some(u) = &mut self.u {
                u.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for row in &mut self.a {
                row.swap(j, k);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(j, k);
                }
            }
        }
    }

    /// row_i += q * row_k
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        let src = self.a[k].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            *x += q * y;
        }
        if let Some(u) = &mut self.u {
            let src = u[k].clone();
            for (x, y) in u[i].iter_mut().zip(&src) {
                *x += q * y;
            }
        }
    }

    /// col_j += q * col_k
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for row in &mut self.a {
            let y = row[k].clone();
            row[j] += q * y;
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                let y = row[k].clone();
                row[j] += q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -x.clone();
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -x.clone();
            }
        }
    }
}

/// Unimodular row echelon reduction of `rows` on the column range
/// `0..upto`. Returns the number of pivot rows; rows below it are zero on
/// that range.
fn integer_row_echelon(rows: &mut [Vec<BigInt>], upto: usize) -> usize {
    let mut p = 0;
    for col in 0..upto {
        if p == rows.len() {
            break;
        }
        loop {
            let best = (p..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].abs());
            let Some(b) = best else { break };
            rows.swap(p, b);
            let mut done = true;
            for i in p + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[p][col]);
                let src = rows[p].clone();
                for (x, y) in rows[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if p < rows.len() && !rows[p][col].is_zero() {
            p += 1;
        }
    }
    p
}

/// The row Hermite normal form of the lattice spanned by `vectors` (all of
/// length `cols`): echelon rows with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(vectors: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vectors.to_vec();
    let r = integer_row_echelon(&mut rows, cols);
    rows.truncate(r);
    let pivots: Vec<usize> = rows
        .iter()
        .map(|row| row.iter().position(|x| !x.is_zero()).expect("pivot row"))
        .collect();
    for i in 0..rows.len() {
        if rows[i][pivots[i]].is_negative() {
            for x in &mut rows[i] {
                *x = -x.clone();
            }
        }
        for k in 0..i {
            let q = rows[k][pivots[i]].div_floor(&rows[i][pivots[i]]);
            if !q.is_zero() {
                let src = rows[i].clone();
                for (x, y) in rows[k].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows
}

/// A saturated integer basis of `{x : m x = 0}` for an `r x cols` matrix,
/// returned in row Hermite normal form.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let r = m.len();
    if r == 0 {
        return identity(cols);
    }
    // Row j of the work matrix is (column j of m | e_j); unimodular row
    // operations keep the right block a change of basis of Z^cols.
    let mut work: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut row: Vec<BigInt> = m.iter().map(|mr| mr[j].clone()).collect();
            row.extend((0..cols).map(|k| {
                if k == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let p = integer_row_echelon(&mut work, r);
    let kernel: Vec<Vec<BigInt>> = work[p..].iter().map(|row| row[r..].to_vec()).collect();
    hermite_rows(&kernel, cols)
}

/// Coordinates of `x` in a row Hermite basis, or `None` when `x` is not in
/// the lattice.
pub fn hermite_coordinates(basis: &[Vec<BigInt>], x: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = x.to_vec();
    let mut coords = Vec::with_capacity(basis.len());
    for row in basis {
        let p = row.iter().position(|v| !v.is_zero())?;
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (a, b) in rest.iter_mut().zip(row) {
                *a -= &q * b;
            }
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Reduced row echelon form over the rationals. Returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..cols {
        if p == m.len() {
            break;
        }
        let Some(i) = (p..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, i);
        let inv = m[p][col].recip();
        for x in &mut m[p] {
            *x *= &inv;
        }
        let src = m[p].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != p && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&src) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(col);
        p += 1;
    }
    pivots
}

pub fn rank_q(m: &[Vec<BigRational>], cols: usize) -> usize {
    let mut work = m.to_vec();
    rref(&mut work, cols).len()
}

pub fn rank_z(m: &[Vec<BigInt>], cols: usize) -> usize {
    rank_q(&to_rational(m), cols)
}

/// A rational solution of `a x = b`, with free variables set to zero.
pub fn solve_q(a: &[Vec<BigRational>], cols: usize, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][cols].clone();
    }
    Some(x)
}

/// A basis of `{x : a x = 0}` over the rationals.
pub fn nullspace_q(a: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut work = a.to_vec();
    let pivots = rref(&mut work, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[i][f].clone();
            }
            v
        })
        .collect()
}

/// Greedy selection of linearly independent vectors, in order.
pub fn independent_subset(vectors: &[Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut echelon = Vec::<(usize, Vec<BigRational>)>::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut r = v.clone();
        for (pc, row) in &echelon {
            if !r[*pc].is_zero() {
                let f = r[*pc].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pc) = (0..cols).find(|&c| !r[c].is_zero()) {
            let inv = r[pc].recip();
            for x in &mut r {
                *x *= &inv;
            }
            echelon.push((pc, r));
            chosen.push(idx);
        }
    }
    chosen
}

pub type SparseVec = BTreeMap<usize, BigRational>;

fn sparse_axpy(target: &mut SparseVec, f: &BigRational, src: &SparseVec) {
    for (k, v) in src {
        let e = target.entry(*k).or_insert_with(BigRational::zero);
        *e += f * v;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Incremental column reduction over the rationals for sparse systems.
///
/// Columns are reduced against earlier ones by their largest nonzero row;
/// each reduced column remembers its combination of original columns, so
/// `solve` can express a target in terms of the inputs.
#[derive(Debug, Clone, Default)]
pub struct SparseReducer {
    pivots: HashMap<usize, usize>,
    reduced: Vec<(SparseVec, SparseVec)>,
    inputs: usize,
}

impl SparseReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_column(&mut self, col: SparseVec) {
        let idx = self.inputs;
        self.inputs += 1;
        let mut comb = SparseVec::from([(idx, BigRational::one())]);
        let v = self.reduce(col, &mut comb);
        if let Some((&low, _)) = v.iter().next_back() {
            self.pivots.insert(low, self.reduced.len());
            self.reduced.push((v, comb));
        }
    }

    fn reduce(&self, mut v: SparseVec, comb: &mut SparseVec) -> SparseVec {
        while let Some((&low, val)) = v.iter().next_back() {
            let Some(&k) = self.pivots.get(&low) else {
                break;
            };
            let (pv, pc) = &self.reduced[k];
            let f = -(val / &pv[&low]);
            sparse_axpy(&mut v, &f, pv);
            sparse_axpy(comb, &f, pc);
        }
        v
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Coefficients `x` over the added columns with `Σ x_j col_j = target`.
    pub fn solve(&self, target: SparseVec) -> Option<SparseVec> {
        let mut comb = SparseVec::new();
        let rest = self.reduce(target, &mut comb);
        if !rest.is_empty() {
            return None;
        }
        Some(comb.into_iter().map(|(k, v)| (k, -v)).collect())
    }
}
