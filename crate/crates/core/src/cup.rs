//! The cup product on path cohomology, and the chain homotopy between the
//! diagonal and its transpose.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::chain::{boundary, pair, Chain, ChainError, ElemPath, Form, QChain};
use crate::cochains::QuotientCochains;
use crate::digraph::{cartesian_product, Digraph, Vertex};
use crate::linalg::{independent_subset, SparseReducer, SparseVec};
use crate::minimal::enumerate_minimal;
use crate::omega::{membership, OmegaSpace};
use crate::product::{diagonal, star, transposed_diagonal};
use crate::support::supp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CupError {
    #[error("no solution of ∂v = z for basis element {index} in degree {n}")]
    SolveFailure { n: usize, index: usize },
    #[error("z is not a cycle for basis element {index} in degree {n}")]
    DefectNotCycle { n: usize, index: usize },
    #[error("{0} is outside the span of the chosen basis")]
    OutsideBasis(String),
    #[error("degree {0} was not built")]
    MissingDegree(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Dual concatenation: `e^I ∪ e^J = e^{I∨J}` when the last vertex of `I` is
/// the first of `J`, otherwise zero; irregular concatenations are dropped.
pub fn cup(alpha: &Form, beta: &Form) -> Form {
    let mut out = Form::zero(alpha.dim() + beta.dim());
    for (x, a) in alpha.terms() {
        for (y, b) in beta.terms() {
            if let Some(j) = x.join(y).filter(ElemPath::is_regular) {
                out.add_term(j, a * b);
            }
        }
    }
    out
}

/// `(α ∪ β, u) = Σ_I c_I α(e_{I|0..p}) β(e_{I|p..n})`.
pub fn cup_pairing<R: crate::chain::Coeff>(
    alpha: &Form,
    beta: &Form,
    u: &Chain<R>,
) -> Result<BigRational, ChainError> {
    let (p, n) = (alpha.dim(), u.dim());
    if p + beta.dim() != n {
        return Err(ChainError::DimMismatch(p + beta.dim(), n));
    }
    let mut acc = BigRational::zero();
    for (path, c) in u.terms() {
        let a = alpha.coeff(&path.slice(0, p));
        if a.is_zero() {
            continue;
        }
        acc += c.to_rational() * a * beta.coeff(&path.slice(p, n));
    }
    Ok(acc)
}

/// `(α ⋆ β, Δ̃♯ u)`, which agrees with `(α ∪ β, u)`.
pub fn cup_pairing_via_diagonal<R: crate::chain::Coeff>(
    alpha: &Form,
    beta: &Form,
    u: &Chain<R>,
) -> Result<BigRational, ChainError> {
    pair(&star(alpha, beta), &diagonal(u))
}

/// How the image of one basis element was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveDomain {
    /// Given by a closed formula (degrees 0 and 1).
    Formula,
    /// Solved in `Supp(u) ⊡ Supp(u)` together with the support of `z`.
    Local,
    /// Solved in `G ⊡ G`.
    Full,
}

/// `F` on one degree: the chosen basis of `Ω_n(G)` and the images in
/// `Ω_{n+1}(G ⊡ G)`.
#[derive(Debug, Clone)]
pub struct FDegree {
    pub n: usize,
    pub basis: Vec<Chain>,
    pub images: Vec<QChain>,
    pub domains: Vec<SolveDomain>,
    index: HashMap<ElemPath, usize>,
    reducer: SparseReducer,
}

impl FDegree {
    fn new(n: usize, basis: Vec<Chain>) -> Self {
        let mut index = HashMap::new();
        let mut reducer = SparseReducer::new();
        for b in &basis {
            let col = sparse(&mut index, &b.to_rational());
            reducer.add_column(col);
        }
        FDegree {
            n,
            basis,
            images: Vec::new(),
            domains: Vec::new(),
            index,
            reducer,
        }
    }

    /// Coordinates of `c` over the chosen basis.
    pub fn coordinates(&self, c: &QChain) -> Option<Vec<BigRational>> {
        let mut target = SparseVec::new();
        for (p, k) in c.terms() {
            target.insert(*self.index.get(p)?, k.clone());
        }
        let x = self.reducer.solve(target)?;
        let mut out = vec![BigRational::zero(); self.basis.len()];
        for (j, v) in x {
            out[j] = v;
        }
        Some(out)
    }

    /// `F` extended linearly.
    pub fn apply(&self, c: &QChain) -> Result<QChain, CupError> {
        let coords = self
            .coordinates(c)
            .ok_or_else(|| CupError::OutsideBasis(c.to_string()))?;
        let mut out = QChain::zero(self.n + 1);
        for (k, img) in coords.iter().zip(&self.images) {
            if !k.is_zero() {
                out.add_assign_scaled(img, k);
            }
        }
        Ok(out)
    }
}

fn sparse(index: &mut HashMap<ElemPath, usize>, c: &QChain) -> SparseVec {
    let mut v = SparseVec::new();
    for (p, k) in c.terms() {
        let next = index.len();
        let i = *index.entry(p.clone()).or_insert(next);
        v.insert(i, k.clone());
    }
    v
}

/// A chain homotopy `F: Ω_n(G) → Ω_{n+1}(G ⊡ G)` with
/// `∂F + F∂ = t♯Δ̃♯ − Δ̃♯`, stored per degree on a chosen basis.
#[derive(Debug, Clone)]
pub struct GradedMapF {
    pub digraph: Digraph,
    pub product: Digraph,
    pub degrees: Vec<FDegree>,
}

impl GradedMapF {
    pub fn maxdim(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    pub fn degree(&self, n: usize) -> Result<&FDegree, CupError> {
        self.degrees.get(n).ok_or(CupError::MissingDegree(n))
    }

    /// `F(c)` for a chain of `Ω_n(G)`.
    pub fn apply(&self, c: &QChain) -> Result<QChain, CupError> {
        if c.is_zero() {
            return Ok(QChain::zero(c.dim() + 1));
        }
        self.degree(c.dim())?.apply(c)
    }

    /// Replaces one image, for building deliberately broken maps.
    pub fn with_image(mut self, n: usize, index: usize, image: QChain) -> Self {
        self.degrees[n].images[index] = image;
        self
    }

    /// `F(∂u)`, zero in degree 0.
    fn apply_boundary(&self, u: &QChain) -> Result<QChain, CupError> {
        if u.dim() == 0 {
            return Ok(QChain::zero(1));
        }
        self.apply(&boundary(u))
    }
}

/// `t♯Δ̃♯ u − Δ̃♯ u`.
pub fn diagonal_defect(u: &QChain) -> QChain {
    transposed_diagonal(u) - diagonal(u)
}

fn basis_for(g: &Digraph, n: usize) -> Vec<Chain> {
    match n {
        0 => g
            .vertices()
            .iter()
            .map(|v| Chain::elementary(ElemPath::new(vec![v.clone()]).expect("nonempty")))
            .collect(),
        1 => g
            .edges()
            .map(|(a, b)| {
                Chain::elementary(ElemPath::new(vec![a.clone(), b.clone()]).expect("nonempty"))
            })
            .collect(),
        _ => {
            let minimal = enumerate_minimal(g, n, None, None);
            let mut index = HashMap::new();
            let cols: Vec<SparseVec> = minimal
                .iter()
                .map(|m| sparse(&mut index, &m.to_rational()))
                .collect();
            let dense: Vec<Vec<BigRational>> = cols
                .iter()
                .map(|c| {
                    let mut v = vec![BigRational::zero(); index.len()];
                    for (i, x) in c {
                        v[*i] = x.clone();
                    }
                    v
                })
                .collect();
            independent_subset(&dense, index.len())
                .into_iter()
                .map(|i| minimal[i].clone())
                .collect()
        }
    }
}

fn elem(vs: &[&Vertex]) -> ElemPath {
    ElemPath::new(vs.iter().map(|v| (*v).clone()).collect()).expect("nonempty")
}

/// `F(e_i)` for every vertex: with `a → b` the least edge,
/// `e_a×e_ab − e_b×e_ab + e_ab×e_b − e_ab×e_a`, a cycle of `G ⊡ G`.
fn degree_zero_image(g: &Digraph) -> QChain {
    let Some((a, b)) = g.edges().next() else {
        return QChain::zero(1);
    };
    let p = Vertex::pair;
    let one = BigRational::one();
    let mut c = QChain::zero(1);
    c.add_term(elem(&[&p(a, a), &p(a, b)]), one.clone());
    c.add_term(elem(&[&p(b, a), &p(b, b)]), -one.clone());
    c.add_term(elem(&[&p(a, b), &p(b, b)]), one.clone());
    c.add_term(elem(&[&p(a, a), &p(b, a)]), -one);
    c
}

/// Solves `∂v = z` with `v ∈ Ω_{n+1}(h)`.
fn solve_in(h: &Digraph, n: usize, z: &QChain) -> Option<QChain> {
    let space = OmegaSpace::compute(h, n + 1);
    let basis = space.basis();
    let mut index = HashMap::new();
    let mut reducer = SparseReducer::new();
    for b in &basis {
        reducer.add_column(sparse(&mut index, &boundary(&b.to_rational())));
    }
    let mut target = SparseVec::new();
    for (p, k) in z.terms() {
        target.insert(*index.get(p)?, k.clone());
    }
    let x = reducer.solve(target)?;
    let mut v = QChain::zero(n + 1);
    for (j, k) in x {
        v.add_assign_scaled(&basis[j].to_rational(), &k);
    }
    Some(v)
}

fn solve_basis_element(
    f: &GradedMapF,
    product: &Digraph,
    n: usize,
    index: usize,
    u: &Chain,
) -> Result<(QChain, SolveDomain), CupError> {
    let uq = u.to_rational();
    let z = diagonal_defect(&uq) - f.apply_boundary(&uq)?;
    if !boundary(&z).is_zero() {
        return Err(CupError::DefectNotCycle { n, index });
    }
    let s = supp(u);
    let local = cartesian_product(&s, &s).with_edges(z.paths().flat_map(|p| {
        p.vertices()
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect::<Vec<_>>()
    }));
    if let Some(v) = solve_in(&local, n, &z) {
        return Ok((v, SolveDomain::Local));
    }
    solve_in(product, n, &z)
        .map(|v| (v, SolveDomain::Full))
        .ok_or(CupError::SolveFailure { n, index })
}

/// Builds `F` on degrees `0..=maxdim`.
///
/// Degrees 0 and 1 use closed formulas; higher degrees solve
/// `∂v = t♯Δ̃♯u − Δ̃♯u − F(∂u)` for each minimal basis path `u`, first in the
/// local product of supports and then in `G ⊡ G`.
pub fn build_chain_homotopy(g: &Digraph, maxdim: usize) -> Result<GradedMapF, CupError> {
    let product = cartesian_product(g, g);
    let mut f = GradedMapF {
        digraph: g.clone(),
        product: product.clone(),
        degrees: Vec::new(),
    };
    for n in 0..=maxdim {
        let mut deg = FDegree::new(n, basis_for(g, n));
        if g.edge_count() == 0 {
            deg.images = vec![QChain::zero(n + 1); deg.basis.len()];
            deg.domains = vec![SolveDomain::Formula; deg.basis.len()];
            f.degrees.push(deg);
            continue;
        }
        match n {
            0 => {
                let img = degree_zero_image(g);
                deg.images = vec![img; deg.basis.len()];
                deg.domains = vec![SolveDomain::Formula; deg.basis.len()];
            }
            1 => {
                deg.images = deg
                    .basis
                    .iter()
                    .map(|u| {
                        let u = u.to_rational();
                        crate::product::cross(&u, &u)
                    })
                    .collect();
                deg.domains = vec![SolveDomain::Formula; deg.basis.len()];
            }
            _ => {
                let solved: Vec<Result<(QChain, SolveDomain), CupError>> = deg
                    .basis
                    .par_iter()
                    .enumerate()
                    .map(|(index, u)| solve_basis_element(&f, &product, n, index, u))
                    .collect();
                for r in solved {
                    let (v, domain) = r?;
                    deg.images.push(v);
                    deg.domains.push(domain);
                }
            }
        }
        f.degrees.push(deg);
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyFailure {
    pub n: usize,
    pub index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainHomotopyReport {
    pub checked: Vec<usize>,
    pub failures: Vec<HomotopyFailure>,
}

impl ChainHomotopyReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `∂F(u) + F(∂u) = t♯Δ̃♯u − Δ̃♯u` and `F(u) ∈ Ω_{n+1}(G ⊡ G)` on
/// every basis element of every built degree.
pub fn verify_chain_homotopy(f: &GradedMapF) -> ChainHomotopyReport {
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    for deg in &f.degrees {
        checked.push(deg.basis.len());
        for (index, (u, img)) in deg.basis.iter().zip(&deg.images).enumerate() {
            let fail = |reason: String| HomotopyFailure {
                n: deg.n,
                index,
                reason,
            };
            if img.dim() != deg.n + 1 {
                failures.push(fail("image has the wrong dimension".into()));
                continue;
            }
            if !membership(&f.product, img) {
                failures.push(fail("image is not in Ω of G ⊡ G".into()));
                continue;
            }
            let uq = u.to_rational();
            let lhs = match f.apply_boundary(&uq) {
                Ok(fb) => boundary(img) + fb,
                Err(e) => {
                    failures.push(fail(e.to_string()));
                    continue;
                }
            };
            if lhs != diagonal_defect(&uq) {
                failures.push(fail(format!("∂F + F∂ differs on {u}")));
            }
        }
    }
    ChainHomotopyReport { checked, failures }
}

#[derive(Debug, Clone)]
pub struct SkewPair {
    pub phi: Form,
    pub psi: Form,
    /// `φ ∪ ψ − (−1)^{pq} ψ ∪ φ`.
    pub defect: Form,
    /// `x` with `d x ≡ defect`, when one exists.
    pub witness: Option<Form>,
    /// `d(witness) − defect` vanishes in the quotient.
    pub witness_verified: bool,
    /// `(defect, u) = −(φ ⋆ ψ, F(∂u))` on a basis of `Ω_{p+q}`, when `F`
    /// was supplied.
    pub pairing_identity: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct SkewReport {
    pub p: usize,
    pub q: usize,
    pub pairs: Vec<SkewPair>,
}

impl SkewReport {
    pub fn holds(&self) -> bool {
        self.pairs
            .iter()
            .all(|s| s.witness_verified && s.pairing_identity != Some(false))
    }
}

/// Graded commutativity on representatives of `H^p × H^q`: each defect
/// `φ ∪ ψ − (−1)^{pq} ψ ∪ φ` must be a coboundary, and a witness is found.
pub fn skew_check(
    g: &Digraph,
    p: usize,
    q: usize,
    f: Option<&GradedMapF>,
) -> Result<SkewReport, CupError> {
    let cochains = QuotientCochains::build(g, p + q + 1);
    let vertices = g.vertices().to_vec();
    let reps_p = cochains.cocycle_representatives(p);
    let reps_q = cochains.cocycle_representatives(q);
    let sign = if (p * q) % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    let omega = if f.is_some() {
        OmegaSpace::compute(g, p + q).basis()
    } else {
        Vec::new()
    };
    let mut pairs = Vec::new();
    for phi in &reps_p {
        for psi in &reps_q {
            let mut defect = cup(phi, psi);
            defect.add_assign_scaled(&cup(psi, phi), &-sign.clone());
            let witness = cochains.coboundary_witness(p + q, &defect);
            let witness_verified = witness.as_ref().is_some_and(|x| {
                let mut r = crate::chain::coboundary_d(&vertices, x);
                r.add_assign_scaled(&defect, &-BigRational::one());
                cochains.is_zero_class(p + q, &r)
            });
            let pairing_identity = match f {
                Some(f) => {
                    let st = star(phi, psi);
                    let mut ok = true;
                    for u in &omega {
                        let uq = u.to_rational();
                        let lhs = pair(&defect, &uq)?;
                        let rhs = -pair(&st, &f.apply_boundary(&uq)?)?;
                        ok &= lhs == rhs;
                    }
                    Some(ok)
                }
                None => None,
            };
            pairs.push(SkewPair {
                phi: phi.clone(),
                psi: psi.clone(),
                defect,
                witness,
                witness_verified,
                pairing_identity,
            });
        }
    }
    Ok(SkewReport { p, q, pairs })
}

/// `Σ_v e^v` over a vertex set, the unit for `⋆` pullbacks.
pub fn unit_form(g: &Digraph) -> Form {
    let mut w = Form::zero(0);
    for v in g.vertices() {
        w.add_term(
            ElemPath::new(vec![v.clone()]).expect("nonempty"),
            BigRational::one(),
        );
    }
    w
}

/// Pullback of a form on `X` along the first projection `X ⊡ Y → X`.
pub fn pullback_first(alpha: &Form, y: &Digraph) -> Form {
    star(alpha, &unit_form(y))
}

/// Pullback of a form on `Y` along the second projection `X ⊡ Y → Y`.
pub fn pullback_second(x: &Digraph, beta: &Form) -> Form {
    star(&unit_form(x), beta)
}
