//! Seeded random digraphs and the theorem checks run over them, with
//! shrinking of failing inputs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::chain::Chain;
use crate::digraph::{Digraph, Vertex};
use crate::homology::{full_homology, Coefficients};
use crate::io::{chain_to_text, digraph_to_json};
use crate::minimal::{common_endpoints, enumerate_minimal, unit_coefficients};
use crate::structure::structure_decompose;
use crate::support::supp;

/// `n` vertices named `0..n`, each ordered pair an edge with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let vs: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut es = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p) {
                es.push((vs[a].as_str(), vs[b].as_str()));
            }
        }
    }
    Digraph::new("random", vs.iter().map(String::as_str), es).expect("valid by construction")
}

/// The `index`-th graph of a seeded run: its own stream, so runs are
/// reproducible regardless of scheduling.
pub fn nth_digraph(seed: u64, index: u64, max_vertices: usize, p: f64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = rng.gen_range(1..=max_vertices.max(1));
    random_digraph(&mut rng, n, p).with_name(&format!("random-{seed}-{index}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    UniqueEndpoints,
    UnitCoefficients,
    SingleIp,
    UniqueTwoFaces,
    SupportAcyclic,
    DistanceBound,
    Structure,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::UniqueEndpoints => "unique endpoints",
            Property::UnitCoefficients => "±1 coefficients",
            Property::SingleIp => "|I_P| ≤ 1",
            Property::UniqueTwoFaces => "unique minimal 2-faces",
            Property::SupportAcyclic => "supp acyclic",
            Property::DistanceBound => "d_S/d_E edge bound",
            Property::Structure => "structure decomposition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub property: Property,
    pub path: Chain,
    pub detail: String,
}

/// Which theorem checks to run on each minimal path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checks {
    Structure,
    Acyclic,
    Both,
}

/// Every minimal path of `g` up to `maxdim`, with every requested check.
pub fn check_digraph(g: &Digraph, maxdim: usize, checks: Checks) -> (usize, Vec<Violation>) {
    let mut seen = 0;
    let mut out = Vec::new();
    for n in 1..=maxdim {
        for p in enumerate_minimal(g, n, None, None) {
            seen += 1;
            out.extend(check_path(g, &p, checks));
        }
    }
    (seen, out)
}

fn check_path(g: &Digraph, p: &Chain, checks: Checks) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |property, detail: String| {
        out.push(Violation {
            property,
            path: p.clone(),
            detail,
        })
    };
    if checks != Checks::Acyclic {
        if common_endpoints(p).is_none() {
            push(
                Property::UniqueEndpoints,
                "terms do not share endpoints".into(),
            );
            return out;
        }
        if !unit_coefficients(p) {
            push(Property::UnitCoefficients, "a coefficient is not ±1".into());
        }
        match structure_decompose(g, p) {
            Ok(r) => {
                if r.i_p > 1 {
                    push(Property::SingleIp, format!("|I_P| = {}", r.i_p));
                }
                for (a, b) in &r.repeated_two_faces {
                    push(Property::UniqueTwoFaces, format!("{a} -> {b}"));
                }
                for (a, b) in &r.far_edges {
                    push(Property::DistanceBound, format!("{a} -> {b}"));
                }
                for v in &r.violations {
                    push(Property::Structure, v.clone());
                }
            }
            Err(e) => push(Property::Structure, e.to_string()),
        }
    }
    if checks != Checks::Structure {
        let h = full_homology(&supp(p), Coefficients::Integers, true);
        if !h.is_trivial() {
            push(
                Property::SupportAcyclic,
                h.to_string().trim().replace('\n', "; "),
            );
        }
    }
    out
}

/// Deletes vertices, then edges, while `fails` keeps holding.
pub fn shrink(g: &Digraph, fails: impl Fn(&Digraph) -> bool) -> Digraph {
    let mut cur = g.clone();
    loop {
        let mut progressed = false;
        for v in cur.vertices().to_vec() {
            let smaller = cur.without_vertex(&v);
            if fails(&smaller) {
                cur = smaller;
                progressed = true;
                break;
            }
        }
        if progressed {
            continue;
        }
        let edges: Vec<(Vertex, Vertex)> = cur.edge_set().into_iter().collect();
        for (a, b) in edges {
            let smaller = cur.without_edge(&a, &b);
            if fails(&smaller) {
                cur = smaller;
                progressed = true;
                break;
            }
        }
        if !progressed {
            return cur;
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub index: u64,
    pub original: Digraph,
    pub shrunk: Digraph,
    pub violation: Violation,
}

impl Counterexample {
    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "property": self.violation.property.name(),
            "detail": self.violation.detail,
            "path": chain_to_text(&self.violation.path, false),
            "original": digraph_to_json(&self.original),
            "shrunk": digraph_to_json(&self.shrunk),
        })
    }
}

#[derive(Debug, Clone)]
pub struct FuzzConfig {
    pub seed: u64,
    pub graphs: u64,
    pub max_vertices: usize,
    pub edge_probability: f64,
    pub maxdim: usize,
    pub checks: Checks,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            graphs: 1000,
            max_vertices: 7,
            edge_probability: 0.3,
            maxdim: 3,
            checks: Checks::Both,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    pub paths_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzReport {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.config.seed,
            "graphs": self.config.graphs,
            "max_vertices": self.config.max_vertices,
            "edge_probability": self.config.edge_probability,
            "maxdim": self.config.maxdim,
            "paths_checked": self.paths_checked,
            "counterexamples": self.counterexamples.iter().map(Counterexample::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Runs the checks over `config.graphs` seeded digraphs in parallel; each
/// failing graph is shrunk while the same property keeps failing.
pub fn run(config: &FuzzConfig) -> FuzzReport {
    let results: Vec<(u64, Digraph, usize, Vec<Violation>)> = (0..config.graphs)
        .into_par_iter()
        .map(|i| {
            let g = nth_digraph(config.seed, i, config.max_vertices, config.edge_probability);
            let (seen, v) = check_digraph(&g, config.maxdim, config.checks);
            (i, g, seen, v)
        })
        .collect();
    let paths_checked = results.iter().map(|r| r.2).sum();
    let mut counterexamples = Vec::new();
    for (index, g, _, violations) in results {
        let kinds: BTreeSet<Property> = violations.iter().map(|v| v.property).collect();
        for kind in kinds {
            let first = violations
                .iter()
                .find(|v| v.property == kind)
                .expect("present")
                .clone();
            let shrunk = shrink(&g, |h| {
                check_digraph(h, config.maxdim, config.checks)
                    .1
                    .iter()
                    .any(|v| v.property == kind)
            });
            let violation = check_digraph(&shrunk, config.maxdim, config.checks)
                .1
                .into_iter()
                .find(|v| v.property == kind)
                .unwrap_or(first);
            counterexamples.push(Counterexample {
                index,
                original: g.clone(),
                shrunk,
                violation,
            });
        }
    }
    FuzzReport {
        config: config.clone(),
        paths_checked,
        counterexamples,
    }
}
