//! Checks of the three-family decomposition of `∂P` for minimal `P`,
//! acyclicity certificates for supporting digraphs, and the augment-and-split
//! step that reduces a minimal path to a Mayer–Vietoris pair.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::chain::{boundary, Chain, ElemPath};
use crate::digraph::{intersection, Digraph, Vertex};
use crate::homology::{full_homology, Coefficients, HomologyResult};
use crate::io::chain_to_json;
use crate::mayer_vietoris::{mv_pair_check, MvError, MvPairReport};
use crate::minimal::{
    enumerate_minimal, is_minimal, minimal_decompose, unit_coefficients, MinimalError,
};
use crate::omega::split_by_endpoints;
use crate::support::{distance_profile, per_term_far_edges, supp, DistanceProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error(transparent)]
    Minimal(#[from] MinimalError),
    #[error("input is not a minimal path")]
    NotMinimal,
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("no admissible choice of α in E_1")]
    NoValidChoice,
    #[error(transparent)]
    MayerVietoris(#[from] MvError),
}

/// One member of a family, with its certificates inside `Supp(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub chain: Chain,
    pub minimal: bool,
    /// The only minimal path (up to sign) with these endpoints in `Supp(P)`.
    pub unique: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub start: Vertex,
    pub end: Vertex,
    pub n: usize,
    pub profile: DistanceProfile,
    pub family_a: BTreeMap<Vertex, FamilyMember>,
    pub family_b: BTreeMap<Vertex, FamilyMember>,
    pub family_c: Option<FamilyMember>,
    /// Minimal paths of length `n - 1` from S to E in `Supp(P)`.
    pub i_p: usize,
    pub unit_coefficients: bool,
    /// Endpoint pairs in `Supp(P)` carrying more than one minimal 2-path.
    pub repeated_two_faces: Vec<(Vertex, Vertex)>,
    /// Edges of `Supp(P)` whose ends differ by more than 2 in `d_S` or `d_E`.
    pub far_edges: Vec<(Vertex, Vertex)>,
    /// Same-term position gaps above 2, recorded but not enforced.
    pub per_term_far_edges: Vec<(ElemPath, Vertex, Vertex)>,
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&self) -> Result<(), StructureError> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(StructureError::StructureViolation(v.clone())),
        }
    }

    /// `∂P` reassembled from the three families.
    pub fn families_sum(&self) -> Chain {
        let mut c = Chain::zero(self.n.saturating_sub(1));
        for m in self
            .family_a
            .values()
            .chain(self.family_b.values())
            .chain(self.family_c.iter())
        {
            c = &c + &m.chain;
        }
        c
    }

    pub fn to_json(&self) -> Value {
        let member = |m: &FamilyMember| {
            json!({
                "chain": chain_to_json(&m.chain, false),
                "minimal": m.minimal,
                "unique": m.unique,
            })
        };
        json!({
            "start": self.start.as_str(),
            "end": self.end.as_str(),
            "n": self.n,
            "family_a": self.family_a.iter().map(|(k, m)| (format!("({},{})", self.start, k), member(m))).collect::<serde_json::Map<_, _>>(),
            "family_b": self.family_b.iter().map(|(k, m)| (format!("({},{})", k, self.end), member(m))).collect::<serde_json::Map<_, _>>(),
            "family_c": self.family_c.as_ref().map(member),
            "i_p": self.i_p,
            "unit_coefficients": self.unit_coefficients,
            "repeated_two_faces": self.repeated_two_faces.iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect::<Vec<_>>(),
            "far_edges": self.far_edges.iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect::<Vec<_>>(),
            "per_term_far_edges": self.per_term_far_edges.len(),
            "violations": self.violations,
        })
    }
}

fn member(
    s: &Digraph,
    c: Chain,
    from: &Vertex,
    to: &Vertex,
) -> Result<FamilyMember, StructureError> {
    let minimal = is_minimal(s, &c)?.minimal;
    let others = enumerate_minimal(s, c.dim(), Some(from), Some(to));
    let canon = c.canonical_sign();
    let unique = others.len() == 1 && others[0] == canon;
    Ok(FamilyMember {
        chain: c,
        minimal,
        unique,
    })
}

/// Groups `∂P` by endpoints into the three families and checks every
/// claim of the decomposition. Violations are collected, not repaired.
pub fn structure_decompose(g: &Digraph, p: &Chain) -> Result<StructureReport, StructureError> {
    if !is_minimal(g, p)?.minimal {
        return Err(StructureError::NotMinimal);
    }
    let mut violations = Vec::new();
    let Ok(profile) = distance_profile(p) else {
        return Err(StructureError::StructureViolation(
            "terms of a minimal path do not share endpoints".into(),
        ));
    };
    let (s, e, n) = (profile.start.clone(), profile.end.clone(), p.dim());
    let sp = supp(p);
    let unit = unit_coefficients(p);
    if !unit {
        violations.push("a coefficient is not ±1".to_string());
    }
    let mut family_a = BTreeMap::new();
    let mut family_b = BTreeMap::new();
    let mut family_c = None;
    if n >= 1 {
        for ((a, b), part) in split_by_endpoints(&boundary(p)) {
            if a == s && b == e {
                family_c = Some(member(&sp, part, &a, &b)?);
            } else if a == s {
                family_a.insert(b.clone(), member(&sp, part, &a, &b)?);
            } else if b == e {
                family_b.insert(a.clone(), member(&sp, part, &a, &b)?);
            } else {
                violations.push(format!(
                    "∂P has a term from {a} to {b}, touching neither endpoint"
                ));
            }
        }
    }
    let a_keys: BTreeSet<Vertex> = family_a.keys().cloned().collect();
    let b_keys: BTreeSet<Vertex> = family_b.keys().cloned().collect();
    if n >= 1 && a_keys != profile.e1() {
        violations.push(format!(
            "family A ends {a_keys:?} differ from E_1 {:?}",
            profile.e1()
        ));
    }
    if n >= 1 && b_keys != profile.s1() {
        violations.push(format!(
            "family B starts {b_keys:?} differ from S_1 {:?}",
            profile.s1()
        ));
    }
    for (k, m) in family_a.iter().chain(family_b.iter()) {
        if !m.minimal {
            violations.push(format!("family member at {k} is not minimal: {}", m.chain));
        }
        if !m.unique {
            violations.push(format!(
                "family member at {k} is not unique in Supp(P): {}",
                m.chain
            ));
        }
    }
    let i_p = if n >= 1 {
        enumerate_minimal(&sp, n - 1, Some(&s), Some(&e)).len()
    } else {
        0
    };
    if i_p > 1 {
        violations.push(format!(
            "{i_p} minimal paths from {s} to {e} of length {}",
            n - 1
        ));
    }
    if let Some(c) = &family_c {
        if !c.minimal {
            let pieces = minimal_decompose(&sp, &c.chain)?.len();
            violations.push(format!(
                "the (S,E) part of ∂P splits into {pieces} minimal paths"
            ));
        }
    }
    let mut repeated_two_faces = Vec::new();
    if n >= 2 {
        let mut count: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
        for c in enumerate_minimal(&sp, 2, None, None) {
            if let Some(k) = c.endpoints() {
                *count.entry(k).or_default() += 1;
            }
        }
        repeated_two_faces = count
            .into_iter()
            .filter(|(_, c)| *c > 1)
            .map(|(k, _)| k)
            .collect();
        for (a, b) in &repeated_two_faces {
            violations.push(format!("more than one minimal 2-path from {a} to {b}"));
        }
    }
    if !profile.invariants_hold() {
        violations.push("distance functions violate d_S + d_E ≤ n".to_string());
    }
    let far_edges = profile.far_edges(&sp);
    for (a, b) in &far_edges {
        violations.push(format!("edge {a} -> {b} jumps more than 2 levels"));
    }
    let report = StructureReport {
        start: s,
        end: e,
        n,
        per_term_far_edges: per_term_far_edges(p, &sp),
        profile,
        family_a,
        family_b,
        family_c,
        i_p,
        unit_coefficients: unit,
        repeated_two_faces,
        far_edges,
        violations,
    };
    if report.families_sum() != boundary(p) {
        let mut r = report;
        r.violations.push("families do not sum to ∂P".to_string());
        return Ok(r);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcyclicCertificate {
    pub support: Digraph,
    pub homology: HomologyResult,
    pub acyclic: bool,
}

/// Reduced integer homology of `Supp(P)` in every degree.
pub fn acyclic_certify(g: &Digraph, p: &Chain) -> Result<AcyclicCertificate, StructureError> {
    if !is_minimal(g, p)?.minimal {
        return Err(StructureError::NotMinimal);
    }
    let support = supp(p);
    let homology = full_homology(&support, Coefficients::Integers, true);
    Ok(AcyclicCertificate {
        acyclic: homology.is_trivial(),
        support,
        homology,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitChecks {
    pub p1_minimal: bool,
    pub p2_minimal: bool,
    pub e1_before: usize,
    pub e1_after: usize,
    pub mv: Option<MvPairReport>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentSplit {
    pub alpha: Option<Vertex>,
    pub added: Vec<(Vertex, Vertex)>,
    pub augmented: Digraph,
    pub p1: Chain,
    pub p2: Chain,
    pub y1: Digraph,
    pub y2: Digraph,
    pub z: Digraph,
    pub checks: SplitChecks,
}

/// Terms of `p` whose second-to-last vertex is `alpha`.
fn through_penultimate(p: &Chain, alpha: &Vertex) -> Chain {
    p.filter(|q| !q.is_empty() && &q.vertices()[q.len() - 1] == alpha)
}

/// Splits a minimal path along one `α ∈ E_1`, adding the edges `γ → E`
/// needed to make both pieces ∂-invariant, and checks the resulting
/// Mayer–Vietoris pair.
pub fn augment_split(p: &Chain) -> Result<AugmentSplit, StructureError> {
    let sp = supp(p);
    if !is_minimal(&sp, p)?.minimal {
        return Err(StructureError::NotMinimal);
    }
    let profile = distance_profile(p).map_err(|_| StructureError::NotMinimal)?;
    let n = p.dim();
    let e1 = profile.e1();
    if n < 2 || e1.len() < 2 {
        return Ok(AugmentSplit {
            alpha: None,
            added: Vec::new(),
            augmented: sp.clone(),
            p1: p.clone(),
            p2: Chain::zero(n),
            y1: sp.clone(),
            y2: Digraph::empty("Y2"),
            z: Digraph::empty("Z"),
            checks: SplitChecks {
                p1_minimal: true,
                p2_minimal: true,
                e1_before: e1.len(),
                e1_after: e1.len(),
                mv: None,
            },
        });
    }
    let end = profile.end.clone();
    let e2 = profile.e2();
    for alpha in &e1 {
        let p1 = through_penultimate(p, alpha);
        let p2 = p - &p1;
        let added: Vec<(Vertex, Vertex)> = p1
            .vertex_set()
            .into_iter()
            .filter(|g| e2.contains(g) && !sp.has_edge(g, &end))
            .map(|g| (g, end.clone()))
            .collect();
        let augmented = sp.with_edges(added.iter().cloned());
        let m1 = is_minimal(&augmented, &p1)
            .map(|m| m.minimal)
            .unwrap_or(false);
        let m2 = is_minimal(&augmented, &p2)
            .map(|m| m.minimal)
            .unwrap_or(false);
        let after = p2.vertex_set().intersection(&e1).count();
        if !(m1 && m2 && after < e1.len()) {
            continue;
        }
        let y1 = supp(&p1).with_name("Y1");
        let y2 = supp(&p2).with_name("Y2");
        let z = intersection(&y1, &y2).with_name("Z");
        let Ok(mv) = mv_pair_check(&augmented, &y1, &y2, n) else {
            continue;
        };
        return Ok(AugmentSplit {
            alpha: Some(alpha.clone()),
            added,
            augmented: augmented.with_name("Augmented"),
            p1,
            p2,
            y1,
            y2,
            z,
            checks: SplitChecks {
                p1_minimal: m1,
                p2_minimal: m2,
                e1_before: e1.len(),
                e1_after: after,
                mv: Some(mv),
            },
        });
    }
    Err(StructureError::NoValidChoice)
}

/// For prefix minimal paths `P_{S,k,v}` (the unique minimal path of length
/// `k` from S to `v` in `Supp(P)`), checks that the supports of any two
/// contain S and that their intersection is covered by prefix supports of
/// paths ending inside it.
pub fn prefix_intersections(p: &Chain) -> Result<Vec<(Vertex, Vertex, bool)>, StructureError> {
    let sp = supp(p);
    let profile = distance_profile(p).map_err(|_| StructureError::NotMinimal)?;
    let s = profile.start.clone();
    let mut prefix: BTreeMap<Vertex, Digraph> = BTreeMap::new();
    for (v, &k) in &profile.d_s {
        if k == 0 {
            continue;
        }
        let found = enumerate_minimal(&sp, k, Some(&s), Some(v));
        if let [only] = found.as_slice() {
            prefix.insert(v.clone(), supp(only));
        }
    }
    let mut out = Vec::new();
    let keys: Vec<&Vertex> = prefix.keys().collect();
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            let meet = intersection(&prefix[*a], &prefix[*b]);
            let mut covered_v: BTreeSet<Vertex> = BTreeSet::from([s.clone()]);
            let mut covered_e = BTreeSet::new();
            for (w, sw) in &prefix {
                if meet.has_vertex(w) && sw.is_subgraph_of(&meet) {
                    covered_v.extend(sw.vertex_set());
                    covered_e.extend(sw.edge_set());
                }
            }
            let ok = meet.has_vertex(&s)
                && covered_v == meet.vertex_set()
                && covered_e == meet.edge_set();
            out.push(((*a).clone(), (*b).clone(), ok));
        }
    }
    Ok(out)
}
