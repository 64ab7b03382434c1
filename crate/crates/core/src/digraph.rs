//! Finite simple digraphs with named vertices.
//!
//! Vertex identifiers are whitespace-free strings. They are ordered
//! naturally: two purely decimal identifiers compare as numbers, decimal
//! identifiers sort before everything else, and the remaining pairs compare
//! bytewise. All iteration (vertices, edges, successor lists) follows this
//! order, so every matrix and report built on top is reproducible.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default vertex bound for [`is_isomorphic`].
pub const ISO_VERTEX_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("empty vertex identifier")]
    EmptyIdentifier,
    #[error("vertex identifier {0:?} contains whitespace")]
    WhitespaceIdentifier(String),
    #[error("invalid orientation character {0:?} (expected '+' or '-')")]
    InvalidCharacter(char),
    #[error("graph with {0} vertices exceeds the isomorphism search bound {1}")]
    TooLarge(usize, usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

/// A vertex identifier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex(Arc<str>);

impl Vertex {
    pub fn new(name: &str) -> Self {
        Vertex(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The identifier of the product vertex `(u,v)`.
    pub fn pair(u: &Vertex, v: &Vertex) -> Vertex {
        Vertex::new(&format!("({},{})", u, v))
    }

    fn is_decimal(&self) -> bool {
        !self.0.is_empty() && self.0.bytes().all(|b| b.is_ascii_digit())
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_decimal(), other.is_decimal()) {
            (true, true) => {
                let a = self.0.trim_start_matches('0');
                let b = other.0.trim_start_matches('0');
                a.len()
                    .cmp(&b.len())
                    .then_with(|| a.cmp(b))
                    .then_with(|| self.0.cmp(&other.0))
            }
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<&str> for Vertex {
    fn from(s: &str) -> Self {
        Vertex::new(s)
    }
}

impl From<String> for Vertex {
    fn from(s: String) -> Self {
        Vertex(Arc::from(s))
    }
}

impl From<&Vertex> for Vertex {
    fn from(v: &Vertex) -> Self {
        v.clone()
    }
}

fn check_identifier(id: &str) -> Result<(), DigraphError> {
    if id.is_empty() {
        return Err(DigraphError::EmptyIdentifier);
    }
    if id.chars().any(char::is_whitespace) {
        return Err(DigraphError::WhitespaceIdentifier(id.to_string()));
    }
    Ok(())
}

/// A finite simple digraph.
#[derive(Clone)]
pub struct Digraph {
    name: String,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Digraph {
    /// Builds and validates a digraph. Vertices that only occur in edges are
    /// declared automatically; repeated vertex declarations are harmless.
    pub fn new<V, E, A, B>(name: &str, vertices: V, edges: E) -> Result<Self, DigraphError>
    where
        V: IntoIterator,
        V::Item: Into<Vertex>,
        E: IntoIterator<Item = (A, B)>,
        A: Into<Vertex>,
        B: Into<Vertex>,
    {
        let mut vs = BTreeSet::new();
        for v in vertices {
            let v = v.into();
            check_identifier(v.as_str())?;
            vs.insert(v);
        }
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            check_identifier(a.as_str())?;
            check_identifier(b.as_str())?;
            if a == b {
                return Err(DigraphError::SelfLoop(a.to_string()));
            }
            vs.insert(a.clone());
            vs.insert(b.clone());
            if !es.insert((a.clone(), b.clone())) {
                return Err(DigraphError::DuplicateEdge(a.to_string(), b.to_string()));
            }
        }
        Ok(Self::from_sets(name, vs, es))
    }

    /// Assembles a digraph from already simple vertex and edge sets.
    pub(crate) fn from_sets(
        name: &str,
        vertices: BTreeSet<Vertex>,
        edges: BTreeSet<(Vertex, Vertex)>,
    ) -> Self {
        let vertices: Vec<Vertex> = vertices.into_iter().collect();
        let index: HashMap<Vertex, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut succ = vec![Vec::new(); vertices.len()];
        let mut pred = vec![Vec::new(); vertices.len()];
        let mut edge_count = 0;
        for (a, b) in &edges {
            let (i, j) = (index[a], index[b]);
            if i != j {
                succ[i].push(j);
                pred[j].push(i);
                edge_count += 1;
            }
        }
        for list in succ.iter_mut().chain(pred.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Digraph {
            name: name.to_string(),
            vertices,
            index,
            succ,
            pred,
            edge_count,
        }
    }

    pub fn empty(name: &str) -> Self {
        Self::from_sets(name, BTreeSet::new(), BTreeSet::new())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn has_vertex(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn has_edge(&self, a: &Vertex, b: &Vertex) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge_idx(i, j),
            _ => false,
        }
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (&Vertex, &Vertex)> + '_ {
        self.succ.iter().enumerate().flat_map(move |(i, out)| {
            out.iter()
                .map(move |&j| (&self.vertices[i], &self.vertices[j]))
        })
    }

    pub fn edge_set(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.edges().map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices.iter().cloned().collect()
    }

    /// Structural equality, ignoring the name.
    pub fn same_graph(&self, other: &Digraph) -> bool {
        self.vertices == other.vertices && self.edge_set() == other.edge_set()
    }

    /// True when every vertex and edge of `self` belongs to `other`.
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.vertices.iter().all(|v| other.has_vertex(v))
            && self.edges().all(|(a, b)| other.has_edge(a, b))
    }

    pub fn induced_subgraph<'a, I>(&self, keep: I) -> Digraph
    where
        I: IntoIterator<Item = &'a Vertex>,
    {
        let keep: BTreeSet<Vertex> = keep
            .into_iter()
            .filter(|v| self.has_vertex(v))
            .cloned()
            .collect();
        let edges = self
            .edges()
            .filter(|(a, b)| keep.contains(*a) && keep.contains(*b))
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        Self::from_sets(&self.name, keep, edges)
    }

    pub fn without_vertex(&self, v: &Vertex) -> Digraph {
        let keep: Vec<Vertex> = self.vertices.iter().filter(|w| *w != v).cloned().collect();
        self.induced_subgraph(keep.iter())
    }

    pub fn without_edge(&self, a: &Vertex, b: &Vertex) -> Digraph {
        let mut edges = self.edge_set();
        edges.remove(&(a.clone(), b.clone()));
        Self::from_sets(&self.name, self.vertex_set(), edges)
    }

    /// Adds edges (and their endpoints). Self-loops are ignored.
    pub fn with_edges<I>(&self, extra: I) -> Digraph
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut vs = self.vertex_set();
        let mut es = self.edge_set();
        for (a, b) in extra {
            if a != b {
                vs.insert(a.clone());
                vs.insert(b.clone());
                es.insert((a, b));
            }
        }
        Self::from_sets(&self.name, vs, es)
    }

    /// Weakly connected components, each as a sorted list of vertex indices.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.succ[u].iter().chain(self.pred[u].iter()) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_graph(other)
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("name", &self.name)
            .field("vertices", &self.vertices)
            .field("edges", &self.edge_set())
            .finish()
    }
}

/// Validates raw vertex and edge lists into a [`Digraph`] with an empty name.
pub fn validate_digraph(
    raw_vertices: &[&str],
    raw_edges: &[(&str, &str)],
) -> Result<Digraph, DigraphError> {
    Digraph::new("", raw_vertices.iter().copied(), raw_edges.iter().copied())
}

/// The Cartesian (box) product `G ⊡ H`.
pub fn cartesian_product(g: &Digraph, h: &Digraph) -> Digraph {
    product(g, h, false)
}

/// The strong product `G ⊠ H`: the box product plus diagonal edges.
pub fn strong_product(g: &Digraph, h: &Digraph) -> Digraph {
    product(g, h, true)
}

fn product(g: &Digraph, h: &Digraph, diagonals: bool) -> Digraph {
    let name = format!(
        "{}{}{}",
        g.name(),
        if diagonals { "*" } else { "x" },
        h.name()
    );
    let mut vs = BTreeSet::new();
    for x in g.vertices() {
        for y in h.vertices() {
            vs.insert(Vertex::pair(x, y));
        }
    }
    let mut es = BTreeSet::new();
    for x in g.vertices() {
        for (y, y2) in h.edges() {
            es.insert((Vertex::pair(x, y), Vertex::pair(x, y2)));
        }
    }
    for (x, x2) in g.edges() {
        for y in h.vertices() {
            es.insert((Vertex::pair(x, y), Vertex::pair(x2, y)));
        }
        if diagonals {
            for (y, y2) in h.edges() {
                es.insert((Vertex::pair(x, y), Vertex::pair(x2, y2)));
            }
        }
    }
    Digraph::from_sets(&name, vs, es)
}

/// The line digraph `I_n` for an orientation string: vertices `0..n`, and
/// character `k` is `+` for `k -> k+1` or `-` for `k+1 -> k`.
pub fn line_digraph(spec: &str) -> Result<Digraph, DigraphError> {
    let mut vs = BTreeSet::from([Vertex::new("0")]);
    let mut es = BTreeSet::new();
    for (k, c) in spec.chars().enumerate() {
        let a = Vertex::new(&k.to_string());
        let b = Vertex::new(&(k + 1).to_string());
        vs.insert(b.clone());
        match c {
            '+' => es.insert((a, b)),
            '-' => es.insert((b, a)),
            other => return Err(DigraphError::InvalidCharacter(other)),
        };
    }
    Ok(Digraph::from_sets(&format!("I[{spec}]"), vs, es))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Union,
    Intersection,
}

/// Vertex- and edge-wise union or intersection of two digraphs.
pub fn subgraph_combine(a: &Digraph, b: &Digraph, mode: CombineMode) -> Digraph {
    let (va, vb) = (a.vertex_set(), b.vertex_set());
    let (ea, eb) = (a.edge_set(), b.edge_set());
    let (vs, es, name) = match mode {
        CombineMode::Union => (&va | &vb, &ea | &eb, format!("{}+{}", a.name(), b.name())),
        CombineMode::Intersection => (&va & &vb, &ea & &eb, format!("{}^{}", a.name(), b.name())),
    };
    Digraph::from_sets(&name, vs, es)
}

pub fn union(a: &Digraph, b: &Digraph) -> Digraph {
    subgraph_combine(a, b, CombineMode::Union)
}

pub fn intersection(a: &Digraph, b: &Digraph) -> Digraph {
    subgraph_combine(a, b, CombineMode::Intersection)
}

/// Adds `u -> v` whenever `v != u` is reachable from `u`.
pub fn transitive_closure(g: &Digraph) -> Digraph {
    let n = g.vertex_count();
    let mut es = BTreeSet::new();
    for s in 0..n {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.successors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        for (t, &reached) in seen.iter().enumerate() {
            if reached && t != s {
                es.insert((g.vertex(s).clone(), g.vertex(t).clone()));
            }
        }
    }
    Digraph::from_sets(&format!("closure({})", g.name()), g.vertex_set(), es)
}

/// Searches for an edge-preserving bijection `G -> H` (edges map exactly onto
/// edges) with the default vertex bound.
pub fn is_isomorphic(
    g: &Digraph,
    h: &Digraph,
) -> Result<Option<BTreeMap<Vertex, Vertex>>, DigraphError> {
    is_isomorphic_bounded(g, h, ISO_VERTEX_BOUND)
}

pub fn is_isomorphic_bounded(
    g: &Digraph,
    h: &Digraph,
    bound: usize,
) -> Result<Option<BTreeMap<Vertex, Vertex>>, DigraphError> {
    let n = g.vertex_count();
    if n.max(h.vertex_count()) > bound {
        return Err(DigraphError::TooLarge(n.max(h.vertex_count()), bound));
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let sig = |d: &Digraph, i: usize| (d.successors(i).len(), d.predecessors(i).len());
    let mut gs: Vec<_> = (0..n).map(|i| sig(g, i)).collect();
    let mut hs: Vec<_> = (0..n).map(|i| sig(h, i)).collect();
    let (gsig, hsig) = (gs.clone(), hs.clone());
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return Ok(None);
    }
    // Most constrained vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(gsig[i].0 + gsig[i].1));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if iso_search(g, h, &order, 0, &gsig, &hsig, &mut map, &mut used) {
        Ok(Some(
            (0..n)
                .map(|i| (g.vertex(i).clone(), h.vertex(map[i]).clone()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    g: &Digraph,
    h: &Digraph,
    order: &[usize],
    depth: usize,
    gsig: &[(usize, usize)],
    hsig: &[(usize, usize)],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for cand in 0..h.vertex_count() {
        if used[cand] || hsig[cand] != gsig[u] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| {
            g.has_edge_idx(u, w) == h.has_edge_idx(cand, map[w])
                && g.has_edge_idx(w, u) == h.has_edge_idx(map[w], cand)
        });
        if !consistent {
            continue;
        }
        map[u] = cand;
        used[cand] = true;
        if iso_search(g, h, order, depth + 1, gsig, hsig, map, used) {
            return true;
        }
        used[cand] = false;
        map[u] = usize::MAX;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("source vertex {0} has no image")]
    MissingImage(String),
    #[error("{0} is not a source vertex")]
    UnknownSource(String),
    #[error("image {0} is not a target vertex")]
    UnknownTarget(String),
}

/// A total assignment of source vertices to target vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    source: Digraph,
    target: Digraph,
    assignment: BTreeMap<Vertex, Vertex>,
}

impl VertexMap {
    pub fn new(
        source: &Digraph,
        target: &Digraph,
        assignment: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self, MapError> {
        for (s, t) in &assignment {
            if !source.has_vertex(s) {
                return Err(MapError::UnknownSource(s.to_string()));
            }
            if !target.has_vertex(t) {
                return Err(MapError::UnknownTarget(t.to_string()));
            }
        }
        if let Some(v) = source
            .vertices()
            .iter()
            .find(|v| !assignment.contains_key(*v))
        {
            return Err(MapError::MissingImage(v.to_string()));
        }
        Ok(VertexMap {
            source: source.clone(),
            target: target.clone(),
            assignment,
        })
    }

    /// Builds a map from a partial assignment, sending unlisted vertices to
    /// themselves.
    pub fn with_default_identity(
        source: &Digraph,
        target: &Digraph,
        partial: &BTreeMap<Vertex, Vertex>,
    ) -> Result<Self, MapError> {
        let assignment = source
            .vertices()
            .iter()
            .map(|v| (v.clone(), partial.get(v).unwrap_or(v).clone()))
            .collect();
        Self::new(source, target, assignment)
    }

    pub fn identity(g: &Digraph) -> Self {
        VertexMap {
            source: g.clone(),
            target: g.clone(),
            assignment: g
                .vertices()
                .iter()
                .map(|v| (v.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn constant(source: &Digraph, target: &Digraph, value: &Vertex) -> Result<Self, MapError> {
        Self::new(
            source,
            target,
            source
                .vertices()
                .iter()
                .map(|v| (v.clone(), value.clone()))
                .collect(),
        )
    }

    pub fn source(&self) -> &Digraph {
        &self.source
    }

    pub fn target(&self) -> &Digraph {
        &self.target
    }

    pub fn assignment(&self) -> &BTreeMap<Vertex, Vertex> {
        &self.assignment
    }

    pub fn apply(&self, v: &Vertex) -> &Vertex {
        &self.assignment[v]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> Result<VertexMap, MapError> {
        let assignment = self
            .assignment
            .iter()
            .map(|(s, t)| {
                other
                    .assignment
                    .get(t)
                    .cloned()
                    .map(|u| (s.clone(), u))
                    .ok_or_else(|| MapError::UnknownSource(t.to_string()))
            })
            .collect::<Result<_, _>>()?;
        VertexMap::new(&self.source, &other.target, assignment)
    }

    /// The same assignment viewed with a different target digraph.
    pub fn retarget(&self, target: &Digraph) -> Result<VertexMap, MapError> {
        VertexMap::new(&self.source, target, self.assignment.clone())
    }
}
