//! Digraph maps, homotopies through line digraphs, and deformation
//! retractions.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::digraph::{
    cartesian_product, line_digraph, Digraph, DigraphError, MapError, Vertex, VertexMap,
};
use crate::homology::{full_homology, Coefficients, HomologyResult};
use crate::io::RawHomotopy;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("{0} is not a sub-digraph of the source")]
    NotSubgraph(String),
    #[error("retraction moves the fixed vertex {0}")]
    RetractFixityError(Vertex),
    #[error("map {0} of the sequence is not a digraph map")]
    NotDigraphMap(usize),
    #[error("witness failed: {0}")]
    WitnessFailure(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

/// `a = b` or `a → b` in `g`.
pub fn edge_or_equal(g: &Digraph, a: &Vertex, b: &Vertex) -> bool {
    a == b || g.has_edge(a, b)
}

/// Source edges whose images are neither equal nor an edge.
pub fn map_violations(m: &VertexMap) -> Vec<(Vertex, Vertex)> {
    m.source()
        .edges()
        .filter(|(a, b)| !edge_or_equal(m.target(), m.apply(a), m.apply(b)))
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect()
}

pub fn check_digraph_map(m: &VertexMap) -> bool {
    map_violations(m).is_empty()
}

/// A homotopy `F: G ⊡ I_n → H`, stored one step `F(·, k)` at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub line: String,
    pub steps: Vec<VertexMap>,
}

impl HomotopyWitness {
    pub fn new(line: &str, steps: Vec<VertexMap>) -> Result<Self, HomotopyError> {
        line_digraph(line)?;
        if steps.len() != line.chars().count() + 1 {
            return Err(HomotopyError::WitnessFailure(format!(
                "line {line:?} needs {} steps, got {}",
                line.chars().count() + 1,
                steps.len()
            )));
        }
        Ok(HomotopyWitness {
            line: line.to_string(),
            steps,
        })
    }

    pub fn from_raw(
        raw: &RawHomotopy,
        source: &Digraph,
        target: &Digraph,
    ) -> Result<Self, HomotopyError> {
        let steps = raw
            .steps
            .iter()
            .map(|m| VertexMap::new(source, target, m.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&raw.line, steps)
    }

    pub fn to_raw(&self) -> RawHomotopy {
        RawHomotopy {
            line: self.line.clone(),
            steps: self.steps.iter().map(|m| m.assignment().clone()).collect(),
        }
    }

    pub fn source(&self) -> &Digraph {
        self.steps[0].source()
    }

    pub fn target(&self) -> &Digraph {
        self.steps[0].target()
    }

    pub fn first(&self) -> &VertexMap {
        &self.steps[0]
    }

    pub fn last(&self) -> &VertexMap {
        self.steps.last().expect("at least one step")
    }

    /// The map `G ⊡ I_n → H` assembled from the steps.
    pub fn total_map(&self) -> Result<VertexMap, HomotopyError> {
        let line = line_digraph(&self.line)?;
        let product = cartesian_product(self.source(), &line);
        let mut assignment = BTreeMap::new();
        for (k, m) in self.steps.iter().enumerate() {
            let t = Vertex::new(&k.to_string());
            for v in self.source().vertices() {
                assignment.insert(Vertex::pair(v, &t), m.apply(v).clone());
            }
        }
        Ok(VertexMap::new(&product, self.target(), assignment)?)
    }
}

/// Checks that the steps form a digraph map on `G ⊡ I_n`, optionally with
/// prescribed ends.
pub fn check_homotopy(w: &HomotopyWitness) -> bool {
    w.total_map()
        .map(|m| check_digraph_map(&m))
        .unwrap_or(false)
}

/// `check_homotopy` plus `F(·,0) = f` and `F(·,n) = g`.
pub fn check_homotopy_between(w: &HomotopyWitness, f: &VertexMap, g: &VertexMap) -> bool {
    w.first().assignment() == f.assignment()
        && w.last().assignment() == g.assignment()
        && check_homotopy(w)
}

/// The inclusion of a sub-digraph.
pub fn inclusion(h: &Digraph, g: &Digraph) -> Result<VertexMap, HomotopyError> {
    if !h.is_subgraph_of(g) {
        return Err(HomotopyError::NotSubgraph(h.name().to_string()));
    }
    Ok(VertexMap::new(
        h,
        g,
        h.vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect(),
    )?)
}

/// Direction of a one-step move: `'+'` when `x →̄ y` for all pairs,
/// `'-'` when `y →̄ x` for all pairs.
fn uniform_direction(g: &Digraph, pairs: &[(Vertex, Vertex)]) -> Option<char> {
    if pairs.iter().all(|(x, y)| edge_or_equal(g, x, y)) {
        Some('+')
    } else if pairs.iter().all(|(x, y)| edge_or_equal(g, y, x)) {
        Some('-')
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RetractionMode {
    OneStep,
    /// `f_0, …, f_n`, each a map `G → G`.
    Sequence(Vec<VertexMap>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionCheck {
    pub holds: bool,
    /// Orientation of each step, as a line digraph spec.
    pub line: Option<String>,
    pub detail: Option<String>,
}

impl RetractionCheck {
    fn fail(detail: String) -> Self {
        RetractionCheck {
            holds: false,
            line: None,
            detail: Some(detail),
        }
    }
}

/// Validates a retraction `r: G → H` onto a sub-digraph and checks it is a
/// deformation retraction by one of the two sufficient criteria.
pub fn check_retraction(
    g: &Digraph,
    h: &Digraph,
    r: &VertexMap,
    mode: &RetractionMode,
) -> Result<RetractionCheck, HomotopyError> {
    if !h.is_subgraph_of(g) {
        return Err(HomotopyError::NotSubgraph(h.name().to_string()));
    }
    if let Some(v) = h.vertices().iter().find(|v| r.apply(v) != *v) {
        return Err(HomotopyError::RetractFixityError(v.clone()));
    }
    let r = r.retarget(h)?;
    if !check_digraph_map(&r) {
        return Err(HomotopyError::NotDigraphMap(0));
    }
    let ir = r.retarget(g)?;
    match mode {
        RetractionMode::OneStep => {
            let pairs: Vec<(Vertex, Vertex)> = g
                .vertices()
                .iter()
                .map(|x| (x.clone(), ir.apply(x).clone()))
                .collect();
            Ok(match uniform_direction(g, &pairs) {
                Some(c) => RetractionCheck {
                    holds: true,
                    line: Some(c.to_string()),
                    detail: None,
                },
                None => RetractionCheck::fail("r(x) and x are not uniformly joined".into()),
            })
        }
        RetractionMode::Sequence(fs) => {
            let Some((first, last)) = fs.first().zip(fs.last()) else {
                return Ok(RetractionCheck::fail("empty sequence".into()));
            };
            if first.assignment() != VertexMap::identity(g).assignment() {
                return Ok(RetractionCheck::fail("f_0 is not the identity".into()));
            }
            if last.assignment() != ir.assignment() {
                return Ok(RetractionCheck::fail("f_n is not i∘r".into()));
            }
            for (k, f) in fs.iter().enumerate() {
                if !check_digraph_map(&f.retarget(g)?) {
                    return Err(HomotopyError::NotDigraphMap(k));
                }
            }
            let mut line = String::new();
            for k in 1..fs.len() {
                let pairs: Vec<(Vertex, Vertex)> = g
                    .vertices()
                    .iter()
                    .map(|x| (fs[k - 1].apply(x).clone(), fs[k].apply(x).clone()))
                    .collect();
                match uniform_direction(g, &pairs) {
                    Some(c) => line.push(c),
                    None => {
                        return Ok(RetractionCheck::fail(format!(
                            "step {k} is not one-directional"
                        )))
                    }
                }
            }
            Ok(RetractionCheck {
                holds: true,
                line: Some(line),
                detail: None,
            })
        }
    }
}

/// A retraction given by the vertices it moves: every other vertex is
/// fixed, and the sub-digraph is the one induced on the image.
pub fn retraction_onto_image(
    g: &Digraph,
    moves: &BTreeMap<Vertex, Vertex>,
) -> Result<(Digraph, VertexMap), HomotopyError> {
    let map = VertexMap::with_default_identity(g, g, moves)?;
    let image: BTreeSet<Vertex> = map.assignment().values().cloned().collect();
    if let Some(v) = image.iter().find(|v| map.apply(v) != *v) {
        return Err(HomotopyError::RetractFixityError(v.clone()));
    }
    let h = g.induced_subgraph(image.iter()).with_name("H");
    let r = map.retarget(&h)?;
    Ok((h, r))
}

/// The homotopy `id_G ≃ i∘r` of a one-step deformation retraction.
pub fn one_step_witness(
    g: &Digraph,
    h: &Digraph,
    r: &VertexMap,
) -> Result<Option<HomotopyWitness>, HomotopyError> {
    let check = check_retraction(g, h, r, &RetractionMode::OneStep)?;
    let Some(line) = check.line.filter(|_| check.holds) else {
        return Ok(None);
    };
    let steps = vec![VertexMap::identity(g), r.retarget(g)?];
    Ok(Some(HomotopyWitness::new(&line, steps)?))
}

/// Chains one-step retractions `r_1, …, r_m` (each `r_k` a map of the
/// previous image onto the next, given on the whole previous image) into a
/// homotopy from `id_G` to the final composite.
pub fn chain_retractions(
    g: &Digraph,
    retractions: &[BTreeMap<Vertex, Vertex>],
) -> Result<HomotopyWitness, HomotopyError> {
    let mut current = VertexMap::identity(g);
    let mut steps = vec![current.clone()];
    let mut line = String::new();
    for r in retractions {
        let next: BTreeMap<Vertex, Vertex> = current
            .assignment()
            .iter()
            .map(|(x, y)| (x.clone(), r.get(y).unwrap_or(y).clone()))
            .collect();
        let next = VertexMap::new(g, g, next)?;
        let pairs: Vec<(Vertex, Vertex)> = g
            .vertices()
            .iter()
            .map(|x| (current.apply(x).clone(), next.apply(x).clone()))
            .collect();
        let c = uniform_direction(g, &pairs)
            .ok_or_else(|| HomotopyError::WitnessFailure("a step is not one-directional".into()))?;
        line.push(c);
        steps.push(next.clone());
        current = next;
    }
    HomotopyWitness::new(&line, steps)
}

/// A one-step deformation retraction found by search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundRetraction {
    pub image: Digraph,
    pub map: VertexMap,
    pub direction: char,
}

/// Searches every proper nonempty vertex subset `W` for a one-step
/// deformation retraction of `g` onto the induced sub-digraph on `W`.
/// Returns `None` when there is none; `Err` when `g` is above `max_vertices`.
pub fn search_one_step_retraction(
    g: &Digraph,
    max_vertices: usize,
) -> Result<Option<FoundRetraction>, DigraphError> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(DigraphError::TooLarge(n, max_vertices));
    }
    if n <= 1 {
        return Ok(None);
    }
    // Larger images first, so the first hit removes as little as possible.
    let mut masks: Vec<u32> = (1..(1u32 << n) - 1).collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    for mask in masks {
        for dir in ['+', '-'] {
            if let Some(images) = assign_images(g, mask, dir) {
                let keep: BTreeSet<Vertex> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| g.vertex(i).clone())
                    .collect();
                let image = g.induced_subgraph(keep.iter());
                let assignment = (0..n)
                    .map(|i| (g.vertex(i).clone(), g.vertex(images[i]).clone()))
                    .collect();
                let map = VertexMap::new(g, &image, assignment).expect("images lie in the subset");
                return Ok(Some(FoundRetraction {
                    image,
                    map,
                    direction: dir,
                }));
            }
        }
    }
    Ok(None)
}

/// Backtracking assignment of `r(x)` for `x ∉ W`, with `x → r(x)` (`'+'`)
/// or `r(x) → x` (`'-'`), keeping `r` a digraph map.
fn assign_images(g: &Digraph, mask: u32, dir: char) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let inside = |i: usize| mask >> i & 1 == 1;
    let mut img: Vec<Option<usize>> = (0..n).map(|i| inside(i).then_some(i)).collect();
    let free: Vec<usize> = (0..n).filter(|&i| !inside(i)).collect();
    let candidates: Vec<Vec<usize>> = free
        .iter()
        .map(|&x| {
            let list = if dir == '+' {
                g.successors(x)
            } else {
                g.predecessors(x)
            };
            list.iter().copied().filter(|&y| inside(y)).collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let ok = |img: &[Option<usize>], x: usize| {
        let fx = img[x].expect("assigned");
        let fine = |a: usize, b: usize| a == b || g.has_edge_idx(a, b);
        g.successors(x)
            .iter()
            .all(|&y| img[y].is_none_or(|fy| fine(fx, fy)))
            && g.predecessors(x)
                .iter()
                .all(|&y| img[y].is_none_or(|fy| fine(fy, fx)))
    };
    fn go(
        k: usize,
        free: &[usize],
        candidates: &[Vec<usize>],
        img: &mut Vec<Option<usize>>,
        ok: &dyn Fn(&[Option<usize>], usize) -> bool,
    ) -> bool {
        if k == free.len() {
            return true;
        }
        let x = free[k];
        for &c in &candidates[k] {
            img[x] = Some(c);
            if ok(img, x) && go(k + 1, free, candidates, img, ok) {
                return true;
            }
        }
        img[x] = None;
        false
    }
    // Edges inside W are fixed; only edges touching free vertices matter.
    go(0, &free, &candidates, &mut img, &ok)
        .then(|| img.into_iter().map(|v| v.expect("assigned")).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub homology_g: HomologyResult,
    pub homology_h: HomologyResult,
    pub homology_equal: bool,
}

/// Verifies `g∘f ≃ id_G` and `f∘g ≃ id_H` from the supplied witnesses
/// (either orientation is accepted), then compares integer homology.
pub fn homotopy_equiv_report(
    f: &VertexMap,
    g: &VertexMap,
    on_g: &HomotopyWitness,
    on_h: &HomotopyWitness,
) -> Result<EquivalenceReport, HomotopyError> {
    let (dg, dh) = (f.source(), f.target());
    if !check_digraph_map(f) {
        return Err(HomotopyError::WitnessFailure(
            "f is not a digraph map".into(),
        ));
    }
    if !check_digraph_map(g) {
        return Err(HomotopyError::WitnessFailure(
            "g is not a digraph map".into(),
        ));
    }
    let gf = f.then(g)?;
    let fg = g.then(f)?;
    let ends = |w: &HomotopyWitness, a: &VertexMap, b: &VertexMap| {
        check_homotopy_between(w, a, b) || check_homotopy_between(w, b, a)
    };
    if !ends(on_g, &gf, &VertexMap::identity(dg)) {
        return Err(HomotopyError::WitnessFailure("g∘f ≃ id_G".into()));
    }
    if !ends(on_h, &fg, &VertexMap::identity(dh)) {
        return Err(HomotopyError::WitnessFailure("f∘g ≃ id_H".into()));
    }
    let homology_g = full_homology(dg, Coefficients::Integers, false);
    let homology_h = full_homology(dh, Coefficients::Integers, false);
    let homology_equal = same_homology(&homology_g, &homology_h);
    Ok(EquivalenceReport {
        homology_g,
        homology_h,
        homology_equal,
    })
}

/// Betti numbers and torsion agree in every degree, reading missing
/// degrees as zero.
fn same_homology(a: &HomologyResult, b: &HomologyResult) -> bool {
    let len = a.degrees.len().max(b.degrees.len());
    let pad = |r: &HomologyResult| {
        let mut v: Vec<(usize, Vec<num_bigint::BigInt>)> = r
            .degrees
            .iter()
            .map(|d| (d.betti, d.torsion.clone()))
            .collect();
        v.resize(len, (0, Vec::new()));
        v
    };
    pad(a) == pad(b)
}

/// Homology of `g` and of the image of a deformation retraction agree.
pub fn retraction_preserves_homology(g: &Digraph, h: &Digraph) -> bool {
    same_homology(
        &full_homology(g, Coefficients::Integers, false),
        &full_homology(h, Coefficients::Integers, false),
    )
}
