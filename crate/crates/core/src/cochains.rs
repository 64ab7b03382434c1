//! The quotient cochain complex Ω^n = A^n / (J^n ∩ A^n), with
//! J^n = N^n + d N^{n-1}, over the rationals.
//!
//! Forms are stored in coordinates over the allowed regular paths A^n.
//! Non-allowed forms are zero in the quotient, so J^n is represented by the
//! allowed parts of `d e^I` for non-allowed regular `I`. Only the `I` with a
//! single missing edge can have a nonzero allowed part (one insertion
//! repairs at most one gap), so those are the generators enumerated.

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::chain::{allowed_basis, coboundary_d, ElemPath, Form};
use crate::digraph::{Digraph, Vertex};
use crate::homology::{path_homology, Coefficients, HomologyError};
use crate::linalg::{independent_subset, nullspace_q, rank_q, solve_q, RatMatrix};

pub struct QuotientCochains {
    vertices: Vec<Vertex>,
    top: usize,
    allowed: Vec<Vec<ElemPath>>,
    index: Vec<HashMap<ElemPath, usize>>,
    /// Generators of π_A(J^n), as vectors over A^n.
    relations: Vec<Vec<Vec<BigRational>>>,
    /// `d[n]`: columns are π_A(d e^J) for J in A^n, rows index A^{n+1}.
    d: Vec<RatMatrix>,
}

impl QuotientCochains {
    /// Builds degrees `0..=top`.
    pub fn build(g: &Digraph, top: usize) -> Self {
        let vertices = g.vertices().to_vec();
        let allowed: Vec<Vec<ElemPath>> = (0..=top + 1).map(|n| allowed_basis(g, n)).collect();
        let index: Vec<HashMap<ElemPath, usize>> = allowed
            .iter()
            .map(|ps| ps.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
            .collect();
        let mut this = QuotientCochains {
            vertices,
            top,
            allowed,
            index,
            relations: Vec::new(),
            d: Vec::new(),
        };
        for n in 0..=top + 1 {
            let rel = this.relation_generators(g, n);
            this.relations.push(rel);
        }
        for n in 0..=top {
            let rows = this.allowed[n + 1].len();
            let mut m = vec![vec![BigRational::zero(); this.allowed[n].len()]; rows];
            for (j, p) in this.allowed[n].iter().enumerate() {
                let v = this.project(
                    n + 1,
                    &coboundary_d(&this.vertices, &Form::elementary(p.clone())),
                );
                for (i, x) in v.into_iter().enumerate() {
                    m[i][j] = x;
                }
            }
            this.d.push(m);
        }
        this
    }

    fn relation_generators(&self, g: &Digraph, n: usize) -> Vec<Vec<BigRational>> {
        if n == 0 {
            return Vec::new();
        }
        let mut gaps = BTreeSet::new();
        for p in &self.allowed[n] {
            for i in 1..n {
                let f = p.face(i);
                if !f.is_allowed_in(g) {
                    gaps.insert(f);
                }
            }
        }
        gaps.into_iter()
            .map(|i| self.project(n, &coboundary_d(&self.vertices, &Form::elementary(i))))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn allowed(&self, n: usize) -> &[ElemPath] {
        &self.allowed[n]
    }

    /// The allowed part of a form, in A^n coordinates.
    pub fn project(&self, n: usize, w: &Form) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.allowed[n].len()];
        for (p, c) in w.terms() {
            if let Some(&i) = self.index[n].get(p) {
                v[i] += c;
            }
        }
        v
    }

    pub fn form(&self, n: usize, v: &[BigRational]) -> Form {
        let mut w = Form::zero(n);
        for (p, c) in self.allowed[n].iter().zip(v) {
            w.add_term(p.clone(), c.clone());
        }
        w
    }

    /// dim Ω^n.
    pub fn quotient_dim(&self, n: usize) -> usize {
        self.allowed[n].len() - rank_q(&self.relations[n], self.allowed[n].len())
    }

    fn relations_rank(&self, n: usize) -> usize {
        rank_q(&self.relations[n], self.allowed[n].len())
    }

    /// Rank of the induced differential Ω^n → Ω^{n+1}.
    fn induced_rank(&self, n: usize) -> usize {
        let cols = self.allowed[n + 1].len();
        let mut vecs: Vec<Vec<BigRational>> = self.relations[n + 1].clone();
        for j in 0..self.allowed[n].len() {
            vecs.push(self.d[n].iter().map(|row| row[j].clone()).collect());
        }
        rank_q(&vecs, cols) - self.relations_rank(n + 1)
    }

    /// dim H^n of the quotient complex, `n <= top`.
    pub fn cohomology_rank(&self, n: usize) -> usize {
        let out = self.induced_rank(n);
        let inc = if n == 0 { 0 } else { self.induced_rank(n - 1) };
        self.quotient_dim(n) - out - inc
    }

    /// Coboundary space B^n = π_A(d A^{n-1}) + π_A(J^n) as vectors over A^n.
    fn coboundaries(&self, n: usize) -> Vec<Vec<BigRational>> {
        let mut vecs = self.relations[n].clone();
        if n > 0 {
            for j in 0..self.allowed[n - 1].len() {
                vecs.push(self.d[n - 1].iter().map(|row| row[j].clone()).collect());
            }
        }
        vecs
    }

    /// Representative forms of a basis of H^n, `n <= top`.
    pub fn cocycle_representatives(&self, n: usize) -> Vec<Form> {
        let a = self.allowed[n].len();
        let rels = &self.relations[n + 1];
        // Unknowns: x over A^n, y over the relation generators of degree n+1,
        // with d x - Σ y_k r_k = 0.
        let cols = a + rels.len();
        let rows = self.allowed[n + 1].len();
        let mut m = vec![vec![BigRational::zero(); cols]; rows];
        for i in 0..rows {
            for j in 0..a {
                m[i][j] = self.d[n][i][j].clone();
            }
            for (k, r) in rels.iter().enumerate() {
                m[i][a + k] = -r[i].clone();
            }
        }
        let cocycles: Vec<Vec<BigRational>> = nullspace_q(&m, cols)
            .into_iter()
            .map(|v| v[..a].to_vec())
            .collect();
        let mut pool = self.coboundaries(n);
        let base = pool.len();
        pool.extend(cocycles);
        // Pick the cocycles that are independent of everything before them,
        // after the coboundaries have been placed first.
        let chosen = independent_subset(&pool, a);
        chosen
            .into_iter()
            .filter(|&i| i >= base)
            .map(|i| self.form(n, &pool[i]))
            .collect()
    }

    /// A form `x` of degree `n - 1` with `w ≡ d x` modulo J^n, if any.
    pub fn coboundary_witness(&self, n: usize, w: &Form) -> Option<Form> {
        let target = self.project(n, w);
        if n == 0 {
            return target.iter().all(Zero::is_zero).then(|| Form::zero(0));
        }
        let a_prev = self.allowed[n - 1].len();
        let rels = &self.relations[n];
        let cols = a_prev + rels.len();
        let rows = self.allowed[n].len();
        let mut m = vec![vec![BigRational::zero(); cols]; rows];
        for i in 0..rows {
            for j in 0..a_prev {
                m[i][j] = self.d[n - 1][i][j].clone();
            }
            for (k, r) in rels.iter().enumerate() {
                m[i][a_prev + k] = r[i].clone();
            }
        }
        let x = solve_q(&m, cols, &target)?;
        Some(self.form(n - 1, &x[..a_prev]))
    }

    /// Is `w` zero in Ω^n?
    pub fn is_zero_class(&self, n: usize, w: &Form) -> bool {
        let v = self.project(n, w);
        let a = self.allowed[n].len();
        let r = self.relations_rank(n);
        let mut vecs = self.relations[n].clone();
        vecs.push(v);
        rank_q(&vecs, a) == r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    /// Ranks of H^n of the quotient cochain complex.
    pub quotient: Vec<usize>,
    /// Ranks of rational homology, which the quotient ranks must match.
    pub dual: Vec<usize>,
    /// dim Ω^n, to compare with rank Ω_n.
    pub cochain_dims: Vec<usize>,
}

/// Rational cohomology ranks for degrees `0..=maxdim`, computed from the
/// quotient complex and cross-checked against rational homology.
pub fn cohomology(g: &Digraph, maxdim: usize) -> Result<CohomologyReport, HomologyError> {
    let q = QuotientCochains::build(g, maxdim + 1);
    let quotient: Vec<usize> = (0..=maxdim).map(|n| q.cohomology_rank(n)).collect();
    let cochain_dims = (0..=maxdim).map(|n| q.quotient_dim(n)).collect();
    let mut dual = path_homology(g, maxdim, Coefficients::Rationals, false).bettis();
    dual.resize(maxdim + 1, 0);
    if let Some(degree) = (0..=maxdim).find(|&n| quotient[n] != dual[n]) {
        return Err(HomologyError::DualityMismatch {
            degree,
            quotient: quotient[degree],
            dual: dual[degree],
        });
    }
    Ok(CohomologyReport {
        quotient,
        dual,
        cochain_dims,
    })
}
