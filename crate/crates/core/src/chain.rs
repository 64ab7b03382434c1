//! Elementary paths, chains, forms, the boundary operator and its
//! positional components, the dual differential and the pairing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::digraph::{Digraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("paths of lengths {0} and {1} in one chain")]
    MixedDimensions(usize, usize),
    #[error("face index {0} out of range for dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("junction mismatch: {0} does not start where {1} ends")]
    EndpointMismatch(String, String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("empty elementary path")]
    EmptyPath,
}

/// Ring of coefficients used by [`Chain`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Signed + Send + Sync {
    fn to_rational(&self) -> BigRational;
}

impl Coeff for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

impl Coeff for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

/// An ordered, nonempty vertex sequence. Its length is the number of
/// vertices minus one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemPath(Vec<Vertex>);

impl ElemPath {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self, ChainError> {
        if vertices.is_empty() {
            return Err(ChainError::EmptyPath);
        }
        Ok(ElemPath(vertices))
    }

    pub(crate) fn from_vec(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        ElemPath(vertices)
    }

    /// Convenience constructor from string identifiers.
    ///
    /// # Panics
    /// Panics on an empty slice.
    pub fn of(ids: &[&str]) -> Self {
        assert!(!ids.is_empty(), "empty elementary path");
        ElemPath(ids.iter().map(|s| Vertex::new(s)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn start(&self) -> &Vertex {
        &self.0[0]
    }

    pub fn end(&self) -> &Vertex {
        &self.0[self.0.len() - 1]
    }

    /// The position function: index of `v` in the sequence.
    pub fn position(&self, v: &Vertex) -> Option<usize> {
        self.0.iter().position(|w| w == v)
    }

    /// The path with the vertex at position `i` removed.
    pub fn face(&self, i: usize) -> ElemPath {
        let mut v = self.0.clone();
        v.remove(i);
        ElemPath(v)
    }

    /// Positions `a..=b` as a path.
    pub fn slice(&self, a: usize, b: usize) -> ElemPath {
        ElemPath(self.0[a..=b].to_vec())
    }

    /// Strong regularity: all vertices distinct.
    pub fn is_regular(&self) -> bool {
        let set: BTreeSet<&Vertex> = self.0.iter().collect();
        set.len() == self.0.len()
    }

    pub fn is_allowed_in(&self, g: &Digraph) -> bool {
        self.0.iter().all(|v| g.has_vertex(v))
            && self.0.windows(2).all(|w| g.has_edge(&w[0], &w[1]))
    }

    /// Joins two paths sharing the junction vertex.
    pub fn join(&self, other: &ElemPath) -> Option<ElemPath> {
        if self.end() != other.start() {
            return None;
        }
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        Some(ElemPath(v))
    }

    pub fn push(&self, v: Vertex) -> ElemPath {
        let mut w = self.0.clone();
        w.push(v);
        ElemPath(w)
    }

    pub fn insert(&self, pos: usize, v: Vertex) -> ElemPath {
        let mut w = self.0.clone();
        w.insert(pos, v);
        ElemPath(w)
    }
}

impl fmt::Display for ElemPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ElemPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Flags returned by [`classify_path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClass {
    pub allowed: bool,
    pub regular: bool,
}

pub fn classify_path(g: &Digraph, p: &ElemPath) -> Result<PathClass, ChainError> {
    if let Some(v) = p.vertices().iter().find(|v| !g.has_vertex(v)) {
        return Err(ChainError::UnknownVertex(v.to_string()));
    }
    Ok(PathClass {
        allowed: p.vertices().windows(2).all(|w| g.has_edge(&w[0], &w[1])),
        regular: p.is_regular(),
    })
}

/// A finite linear combination of elementary paths of one length, with
/// zero coefficients never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain<R: Coeff = BigInt> {
    dim: usize,
    terms: BTreeMap<ElemPath, R>,
}

/// Rational chains, used for field computations.
pub type QChain = Chain<BigRational>;

/// Dual forms: rational combinations of dual elementary paths.
pub type Form = Chain<BigRational>;

impl<R: Coeff> Chain<R> {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn elementary(path: ElemPath) -> Self {
        let mut c = Self::zero(path.len());
        c.terms.insert(path, R::one());
        c
    }

    pub fn term(coeff: R, path: ElemPath) -> Self {
        let mut c = Self::zero(path.len());
        c.add_term(path, coeff);
        c
    }

    /// Builds a chain, summing repeated paths.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, ChainError>
    where
        I: IntoIterator<Item = (R, ElemPath)>,
    {
        let mut c = Self::zero(dim);
        for (r, p) in terms {
            if p.len() != dim {
                return Err(ChainError::MixedDimensions(dim, p.len()));
            }
            c.add_term(p, r);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ElemPath, &R)> + '_ {
        self.terms.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &ElemPath> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, p: &ElemPath) -> R {
        self.terms.get(p).cloned().unwrap_or_else(R::zero)
    }

    /// Adds `coeff * p`.
    ///
    /// # Panics
    /// Panics when the length of `p` differs from the chain's dimension.
    pub fn add_term(&mut self, p: ElemPath, coeff: R) {
        assert_eq!(
            p.len(),
            self.dim,
            "path length differs from chain dimension"
        );
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Chain<R>, k: &R) {
        for (p, c) in &other.terms {
            self.add_term(p.clone(), c.clone() * k.clone());
        }
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_assign_scaled(self, k);
        out
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&R) -> S) -> Chain<S> {
        let mut out = Chain::zero(self.dim);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    pub fn to_rational(&self) -> QChain {
        self.map_coeffs(Coeff::to_rational)
    }

    /// Restriction to the paths selected by `keep`.
    pub fn filter(&self, keep: impl Fn(&ElemPath) -> bool) -> Self {
        Chain {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn width(&self) -> R {
        self.terms.values().fold(R::zero(), |acc, c| acc + c.abs())
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.terms
            .keys()
            .flat_map(|p| p.vertices().iter().cloned())
            .collect()
    }

    /// The common start and end vertex of all terms, if there is one.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let (s, e) = (first.start().clone(), first.end().clone());
        for p in it {
            if *p.start() != s || *p.end() != e {
                return None;
            }
        }
        Some((s, e))
    }

    /// Sum of the coefficients (the augmentation on 0-chains).
    pub fn augmentation(&self) -> R {
        self.terms
            .values()
            .fold(R::zero(), |acc, c| acc + c.clone())
    }

    /// First nonzero coefficient negative?
    pub fn leading_negative(&self) -> bool {
        self.terms.values().next().is_some_and(|c| c.is_negative())
    }

    /// The representative with a positive first coefficient.
    pub fn canonical_sign(&self) -> Self {
        if self.leading_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_allowed_in(&self, g: &Digraph) -> bool {
        self.terms.keys().all(|p| p.is_allowed_in(g))
    }

    pub fn is_regular(&self) -> bool {
        self.terms.keys().all(ElemPath::is_regular)
    }
}

impl<R: Coeff> Add for &Chain<R> {
    type Output = Chain<R>;
    fn add(self, rhs: &Chain<R>) -> Chain<R> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &R::one());
        out
    }
}

impl<R: Coeff> Sub for &Chain<R> {
    type Output = Chain<R>;
    fn sub(self, rhs: &Chain<R>) -> Chain<R> {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-R::one());
        out
    }
}

impl<R: Coeff> Add for Chain<R> {
    type Output = Chain<R>;
    fn add(self, rhs: Chain<R>) -> Chain<R> {
        &self + &rhs
    }
}

impl<R: Coeff> Sub for Chain<R> {
    type Output = Chain<R>;
    fn sub(self, rhs: Chain<R>) -> Chain<R> {
        &self - &rhs
    }
}

impl<R: Coeff> Neg for &Chain<R> {
    type Output = Chain<R>;
    fn neg(self) -> Chain<R> {
        Chain {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<R: Coeff> Neg for Chain<R> {
    type Output = Chain<R>;
    fn neg(self) -> Chain<R> {
        -&self
    }
}

fn fmt_coeff<R: Coeff>(c: &R) -> String {
    if c.is_negative() {
        format!("{c}")
    } else {
        format!("+{c}")
    }
}

impl<R: Coeff> fmt::Display for Chain<R> {
    /// Chain text: `+1 [0 1 3] -1 [0 2 3]`; the zero chain prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{} {}", fmt_coeff(c), p)?;
        }
        Ok(())
    }
}

impl<R: Coeff> fmt::Debug for Chain<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain(dim={}; {})", self.dim, self)
    }
}

fn sign<R: Coeff>(i: usize) -> R {
    if i.is_multiple_of(2) {
        R::one()
    } else {
        -R::one()
    }
}

/// The boundary in the free module: `Σ_j (-1)^j` times the `j`-th face.
/// A 0-chain has zero boundary (returned as the zero chain of dimension 0).
pub fn boundary<R: Coeff>(c: &Chain<R>) -> Chain<R> {
    if c.dim() == 0 {
        return Chain::zero(0);
    }
    let mut out = Chain::zero(c.dim() - 1);
    for (p, k) in c.terms() {
        for j in 0..=c.dim() {
            out.add_term(p.face(j), sign::<R>(j) * k.clone());
        }
    }
    out
}

/// The signed `i`-th face map `δ_i`, so that `Σ_i δ_i = ∂`.
pub fn delta_component<R: Coeff>(c: &Chain<R>, i: usize) -> Result<Chain<R>, ChainError> {
    if i > c.dim() || c.dim() == 0 {
        return Err(ChainError::IndexOutOfRange(i, c.dim()));
    }
    let mut out = Chain::zero(c.dim() - 1);
    for (p, k) in c.terms() {
        out.add_term(p.face(i), sign::<R>(i) * k.clone());
    }
    Ok(out)
}

/// All allowed regular `n`-paths of `g`, in lexicographic order.
pub fn allowed_basis(g: &Digraph, n: usize) -> Vec<ElemPath> {
    allowed_index_paths(g, n)
        .into_iter()
        .map(|ix| ElemPath::from_vec(ix.into_iter().map(|i| g.vertex(i).clone()).collect()))
        .collect()
}

/// Allowed regular `n`-paths as vertex-index sequences, lexicographic.
pub(crate) fn allowed_index_paths(g: &Digraph, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n >= g.vertex_count() {
        return out;
    }
    let mut used = vec![false; g.vertex_count()];
    let mut stack = Vec::with_capacity(n + 1);
    for s in 0..g.vertex_count() {
        used[s] = true;
        stack.push(s);
        extend_paths(g, n, &mut stack, &mut used, &mut out);
        stack.pop();
        used[s] = false;
    }
    out
}

fn extend_paths(
    g: &Digraph,
    n: usize,
    stack: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    if stack.len() == n + 1 {
        out.push(stack.clone());
        return;
    }
    let last = *stack.last().expect("nonempty");
    for &w in g.successors(last) {
        if !used[w] {
            used[w] = true;
            stack.push(w);
            extend_paths(g, n, stack, used, out);
            stack.pop();
            used[w] = false;
        }
    }
}

/// Bilinear concatenation at the shared junction vertex.
pub fn concatenate<R: Coeff>(u: &Chain<R>, v: &Chain<R>) -> Result<Chain<R>, ChainError> {
    let mut out = Chain::zero(u.dim() + v.dim());
    for (p, a) in u.terms() {
        for (q, b) in v.terms() {
            let joined = p
                .join(q)
                .ok_or_else(|| ChainError::EndpointMismatch(q.to_string(), p.to_string()))?;
            out.add_term(joined, a.clone() * b.clone());
        }
    }
    Ok(out)
}

/// The dual differential on forms over the vertex set `vertices`: insert
/// every vertex at every position with sign `(-1)^position`, dropping
/// insertions that repeat a vertex.
pub fn coboundary_d(vertices: &[Vertex], w: &Form) -> Form {
    let mut out = Form::zero(w.dim() + 1);
    for (p, c) in w.terms() {
        for k in vertices {
            if p.position(k).is_some() {
                continue;
            }
            for pos in 0..=p.vertices().len() {
                out.add_term(
                    p.insert(pos, k.clone()),
                    sign::<BigRational>(pos) * c.clone(),
                );
            }
        }
    }
    out
}

/// The dual pairing `(ω, u)`.
pub fn pair<R: Coeff>(w: &Form, u: &Chain<R>) -> Result<BigRational, ChainError> {
    if w.dim() != u.dim() {
        return Err(ChainError::DimMismatch(w.dim(), u.dim()));
    }
    let mut acc = BigRational::zero();
    // Iterate over the smaller side.
    if w.len() <= u.len() {
        for (p, a) in w.terms() {
            let b = u.coeff(p);
            if !b.is_zero() {
                acc += a * b.to_rational();
            }
        }
    } else {
        for (p, b) in u.terms() {
            let a = w.coeff(p);
            if !a.is_zero() {
                acc += a * b.to_rational();
            }
        }
    }
    Ok(acc)
}

/// Integer chain from `(coefficient, ids)` pairs, for tests and fixtures.
///
/// # Panics
/// Panics when the paths have different lengths or the list is empty.
pub fn int_chain(terms: &[(i64, &[&str])]) -> Chain {
    let dim = terms.first().expect("at least one term").1.len() - 1;
    Chain::from_terms(
        dim,
        terms
            .iter()
            .map(|(c, ids)| (BigInt::from(*c), ElemPath::of(ids))),
    )
    .expect("homogeneous chain")
}

/// An elementary form `e^{ids}`.
pub fn dual(ids: &[&str]) -> Form {
    Form::elementary(ElemPath::of(ids))
}

/// Parses a compact path like `"0137"` or `"sae"` (one character per vertex).
pub fn compact(ids: &str) -> ElemPath {
    ElemPath::from_vec(ids.chars().map(|c| Vertex::new(&c.to_string())).collect())
}

/// `BigInt` from `i64`, used by callers that build chains by hand.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
