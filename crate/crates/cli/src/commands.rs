use std::fmt::Write as _;
use std::fs;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use pathhom::cochains::{cohomology, QuotientCochains};
use pathhom::cup::{
    build_chain_homotopy, cup, cup_pairing, cup_pairing_via_diagonal, skew_check,
    verify_chain_homotopy, CupError,
};
use pathhom::digraph::{cartesian_product, is_isomorphic, strong_product, transitive_closure};
use pathhom::fixtures;
use pathhom::fuzz::{run as fuzz_run, Checks, FuzzConfig};
use pathhom::homology::{full_homology, kunneth_check};
use pathhom::homotopy::{
    check_homotopy, check_homotopy_between, check_retraction, map_violations,
    retraction_onto_image, retraction_preserves_homology, HomotopyError, RetractionMode,
};
use pathhom::io::{chain_to_text, digraph_to_json, digraph_to_text};
use pathhom::mayer_vietoris::{mv_les_verify, mv_pair_check, MvPairReport};
use pathhom::minimal::{enumerate_minimal, is_minimal, minimal_decompose};
use pathhom::omega::default_maxdim;
use pathhom::product::{cross_certified, diagonal_certified, star, ProductError};
use pathhom::structure::{acyclic_certify, augment_split, structure_decompose, StructureError};
use pathhom::support::supp;
use pathhom::{build_complex, path_homology, Coefficients, Digraph, OmegaSpace, VertexMap};

use crate::report::{
    chain_json, chain_text, chains_block, chains_json, digraph_json, digraph_text, form_json,
    form_text, yes, Report,
};
use crate::{input, Cli, CoeffArg, Command, FuzzArgs, ProductKind};

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Homology { graph } => homology(cli, graph),
        Command::Cohomology { graph } => cohomology_cmd(cli, graph),
        Command::Omega { graph } => omega(cli, graph),
        Command::Minimal { graph, start, end } => {
            minimal(cli, graph, start.as_deref(), end.as_deref())
        }
        Command::IsMinimal { graph, chain } => is_minimal_cmd(graph, chain),
        Command::Decompose { graph, chain } => decompose(graph, chain),
        Command::Supp { graph, chain } => supp_cmd(graph, chain),
        Command::Structure { graph, chain } => structure(graph, chain),
        Command::Acyclic { graph, chain } => acyclic(graph, chain),
        Command::AugmentSplit { graph, chain } => split(graph, chain),
        Command::Product { kind, left, right } => product(*kind, left, right),
        Command::Closure { graph } => {
            let g = input::digraph(graph)?;
            Ok(digraph_report(&transitive_closure(&g)))
        }
        Command::Iso { left, right } => iso(left, right),
        Command::Cross { left, right, u, v } => cross_cmd(left, right, u, v),
        Command::Star {
            left,
            right,
            alpha,
            beta,
        } => star_cmd(left, right, alpha, beta),
        Command::Cup {
            graph,
            alpha,
            beta,
            on,
        } => cup_cmd(graph, alpha, beta, on.as_deref()),
        Command::Diagonal {
            graph,
            chain,
            transposed,
        } => diagonal(graph, chain, *transposed),
        Command::ChainHomotopy { graph } => chain_homotopy(cli, graph),
        Command::SkewCheck { graph, p, q, no_f } => skew(graph, *p, *q, *no_f),
        Command::MapCheck {
            source,
            target,
            map,
        } => map_check(source, target, map),
        Command::HomotopyCheck {
            source,
            target,
            homotopy,
            from,
            to,
        } => homotopy_check(source, target, homotopy, from.as_deref(), to.as_deref()),
        Command::RetractCheck {
            graph,
            map,
            onto,
            sequence,
        } => retract_check(graph, map, onto.as_deref(), sequence.as_deref()),
        Command::MvCheck { x, y1, y2 } => mv_check(cli, x, y1, y2),
        Command::MvLes { x, y1, y2 } => mv_les(cli, x, y1, y2),
        Command::Kunneth { left, right } => kunneth(cli, left, right),
        Command::FuzzStructure(args) => fuzz(cli, args, Checks::Structure),
        Command::FuzzAcyclic(args) => fuzz(cli, args, Checks::Acyclic),
        Command::Fixtures { dir } => export_fixtures(dir),
    }
}

fn coefficients(cli: &Cli) -> Coefficients {
    match cli.coeff {
        CoeffArg::Z => Coefficients::Integers,
        CoeffArg::Q => Coefficients::Rationals,
    }
}

fn digraph_report(g: &Digraph) -> Report {
    Report::ok(digraph_text(g), digraph_json(g))
}

fn homology(cli: &Cli, graph: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let coeff = coefficients(cli);
    let h = match cli.maxdim {
        Some(m) => path_homology(&g, m, coeff, cli.reduced),
        None => full_homology(&g, coeff, cli.reduced),
    };
    let json = json!({"digraph": g.name(), "bettis": h.bettis(), "homology": h.to_json()});
    Ok(Report::ok(h.to_string(), json))
}

fn cohomology_cmd(cli: &Cli, graph: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let maxdim = cli.maxdim.unwrap_or_else(|| default_maxdim(&g));
    Ok(match cohomology(&g, maxdim) {
        Ok(r) => {
            let mut human = String::new();
            for (n, k) in r.quotient.iter().enumerate() {
                writeln!(human, "H^{n} = Q^{k}  (dim Ω^{n} = {})", r.cochain_dims[n])?;
            }
            let json = json!({"ranks": r.quotient, "homology_ranks": r.dual, "cochain_dims": r.cochain_dims});
            Report::verdict(true, human, json)
        }
        Err(e) => Report::verdict(false, format!("{e}\n"), json!({"error": e.to_string()})),
    })
}

fn omega(cli: &Cli, graph: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    if let Some(n) = cli.dim {
        let s = OmegaSpace::compute(&g, n);
        let basis = s.basis();
        let human = format!(
            "rank Ω_{n} = {} (allowed paths: {})\n{}",
            s.rank(),
            s.allowed_count(),
            chains_block(&basis)
        );
        let json = json!({"dim": n, "rank": s.rank(), "allowed": s.allowed_count(), "basis": chains_json(&basis)});
        return Ok(Report::ok(human, json));
    }
    let maxdim = cli.maxdim.unwrap_or_else(|| default_maxdim(&g));
    let ranks: Vec<usize> = (0..=maxdim)
        .map(|n| OmegaSpace::compute(&g, n).rank())
        .collect();
    let mut human = String::new();
    for (n, r) in ranks.iter().enumerate() {
        writeln!(human, "rank Ω_{n} = {r}")?;
    }
    let complex = build_complex(&g, maxdim, cli.reduced);
    Ok(Report::ok(
        human,
        json!({"ranks": ranks, "complex_ranks": complex.ranks(), "reduced": cli.reduced}),
    ))
}

fn minimal(cli: &Cli, graph: &str, start: Option<&str>, end: Option<&str>) -> Result<Report> {
    let g = input::digraph(graph)?;
    let n = cli.dim.unwrap_or(2);
    let s = start.map(|v| input::vertex(&g, v)).transpose()?;
    let e = end.map(|v| input::vertex(&g, v)).transpose()?;
    let paths = enumerate_minimal(&g, n, s.as_ref(), e.as_ref());
    let human = format!(
        "{} minimal path(s) of dimension {n}\n{}",
        paths.len(),
        chains_block(&paths)
    );
    Ok(Report::ok(
        human,
        json!({"dim": n, "count": paths.len(), "paths": chains_json(&paths)}),
    ))
}

fn is_minimal_cmd(graph: &str, chain: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let p = input::chain(chain, &g)?;
    let m = is_minimal(&g, &p)?;
    let mut human = format!("minimal: {}\n", yes(m.minimal));
    if let Some(w) = &m.witness {
        writeln!(human, "smaller element: {}", chain_text(w))?;
    }
    let json = json!({"minimal": m.minimal, "witness": m.witness.as_ref().map(chain_json)});
    Ok(Report::verdict(m.minimal, human, json))
}

fn decompose(graph: &str, chain: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let c = input::chain(chain, &g)?;
    let parts = minimal_decompose(&g, &c)?;
    let human = format!(
        "{} minimal summand(s)\n{}",
        parts.len(),
        chains_block(&parts)
    );
    Ok(Report::ok(human, json!({"summands": chains_json(&parts)})))
}

fn supp_cmd(graph: &str, chain: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let p = input::chain(chain, &g)?;
    Ok(digraph_report(&supp(&p)))
}

fn structure(graph: &str, chain: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let p = input::chain(chain, &g)?;
    let r = match structure_decompose(&g, &p) {
        Ok(r) => r,
        Err(e @ StructureError::StructureViolation(_)) => {
            return Ok(Report::verdict(
                false,
                format!("{e}\n"),
                json!({"error": e.to_string()}),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let mut human = format!(
        "S = {}, E = {}, n = {}, |I_P| = {}\n",
        r.start, r.end, r.n, r.i_p
    );
    writeln!(human, "coefficients ±1: {}", yes(r.unit_coefficients))?;
    for (label, fam) in [("A", &r.family_a), ("B", &r.family_b)] {
        for (v, m) in fam {
            writeln!(human, "{label}[{v}]: {}", chain_text(&m.chain))?;
        }
    }
    match &r.family_c {
        Some(m) => writeln!(human, "C: {}", chain_text(&m.chain))?,
        None => writeln!(human, "C: none")?,
    }
    for v in &r.violations {
        writeln!(human, "violation: {v}")?;
    }
    writeln!(human, "holds: {}", yes(r.holds()))?;
    Ok(Report::verdict(r.holds(), human, r.to_json()))
}

fn acyclic(graph: &str, chain: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let p = input::chain(chain, &g)?;
    let c = acyclic_certify(&g, &p)?;
    let human = format!(
        "supp: {} vertices, {} edges\n{}reduced homology vanishes: {}\n",
        c.support.vertex_count(),
        c.support.edge_count(),
        c.homology,
        yes(c.acyclic)
    );
    let json = json!({"support": digraph_json(&c.support), "homology": c.homology.to_json(), "acyclic": c.acyclic});
    Ok(Report::verdict(c.acyclic, human, json))
}

fn split(graph: &str, chain: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let p = input::chain(chain, &g)?;
    let s = match augment_split(&p) {
        Ok(s) => s,
        Err(e @ (StructureError::NoValidChoice | StructureError::MayerVietoris(_))) => {
            return Ok(Report::verdict(
                false,
                format!("{e}\n"),
                json!({"error": e.to_string()}),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let added: Vec<String> = s.added.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
    let holds = s.checks.p1_minimal && s.checks.p2_minimal && s.checks.mv.is_some();
    let mut human = String::new();
    writeln!(
        human,
        "alpha: {}",
        s.alpha
            .as_ref()
            .map_or("none".to_string(), |a| a.to_string())
    )?;
    writeln!(human, "added edges: {}", added.join(", "))?;
    writeln!(human, "P1: {}", chain_text(&s.p1))?;
    writeln!(human, "P2: {}", chain_text(&s.p2))?;
    writeln!(
        human,
        "P1 minimal: {}, P2 minimal: {}",
        yes(s.checks.p1_minimal),
        yes(s.checks.p2_minimal)
    )?;
    writeln!(
        human,
        "|E_1|: {} -> {}",
        s.checks.e1_before, s.checks.e1_after
    )?;
    writeln!(human, "Z vertices: {}", names(&s.z))?;
    writeln!(human, "Mayer–Vietoris pair: {}", yes(s.checks.mv.is_some()))?;
    let json = json!({
        "alpha": s.alpha.as_ref().map(|a| a.to_string()),
        "added": s.added.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
        "augmented": digraph_json(&s.augmented),
        "p1": chain_json(&s.p1),
        "p2": chain_json(&s.p2),
        "y1": digraph_json(&s.y1),
        "y2": digraph_json(&s.y2),
        "z": digraph_json(&s.z),
        "p1_minimal": s.checks.p1_minimal,
        "p2_minimal": s.checks.p2_minimal,
        "e1_before": s.checks.e1_before,
        "e1_after": s.checks.e1_after,
        "mv": s.checks.mv.as_ref().map(mv_pair_json),
    });
    Ok(Report::verdict(holds, human, json))
}

fn names(g: &Digraph) -> String {
    g.vertices()
        .iter()
        .map(|v| v.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn product(kind: ProductKind, left: &str, right: &str) -> Result<Report> {
    let g = input::digraph(left)?;
    let h = input::digraph(right)?;
    Ok(digraph_report(&match kind {
        ProductKind::Cartesian => cartesian_product(&g, &h),
        ProductKind::Strong => strong_product(&g, &h),
    }))
}

fn iso(left: &str, right: &str) -> Result<Report> {
    let g = input::digraph(left)?;
    let h = input::digraph(right)?;
    let found = is_isomorphic(&g, &h)?;
    let mut human = format!("isomorphic: {}\n", yes(found.is_some()));
    if let Some(m) = &found {
        for (a, b) in m {
            writeln!(human, "{a} => {b}")?;
        }
    }
    let json = json!({
        "isomorphic": found.is_some(),
        "bijection": found.as_ref().map(|m| m.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<std::collections::BTreeMap<_, _>>()),
    });
    Ok(Report::verdict(found.is_some(), human, json))
}

fn cross_cmd(left: &str, right: &str, u: &str, v: &str) -> Result<Report> {
    let g = input::digraph(left)?;
    let h = input::digraph(right)?;
    let u = input::chain(u, &g)?;
    let v = input::chain(v, &h)?;
    match cross_certified(&g, &h, &u, &v) {
        Ok(w) => Ok(Report::verdict(
            true,
            format!("{}\n", chain_text(&w)),
            json!({"cross": chain_json(&w)}),
        )),
        Err(e @ ProductError::ProductNotInOmega) => Ok(Report::verdict(
            false,
            format!("{e}\n"),
            json!({"error": e.to_string()}),
        )),
        Err(e) => Err(e.into()),
    }
}

fn star_cmd(left: &str, right: &str, alpha: &str, beta: &str) -> Result<Report> {
    let g = input::digraph(left)?;
    let h = input::digraph(right)?;
    let a = input::form(alpha, &g)?;
    let b = input::form(beta, &h)?;
    let w = star(&a, &b);
    Ok(Report::ok(
        format!("{}\n", form_text(&w)),
        json!({"star": form_json(&w)}),
    ))
}

fn cup_cmd(graph: &str, alpha: &str, beta: &str, on: Option<&str>) -> Result<Report> {
    let g = input::digraph(graph)?;
    let a = input::form(alpha, &g)?;
    let b = input::form(beta, &g)?;
    let w = cup(&a, &b);
    let mut human = format!("{}\n", form_text(&w));
    let mut json = json!({"cup": form_json(&w)});
    let mut holds = true;
    if let Some(u) = on {
        let u = input::chain(u, &g)?;
        let direct = cup_pairing(&a, &b, &u)?;
        let via = cup_pairing_via_diagonal(&a, &b, &u)?;
        holds = direct == via;
        writeln!(human, "(α ∪ β, u) = {direct}\n(α ⋆ β, Δ u) = {via}")?;
        json["pairing"] = json!(direct.to_string());
        json["pairing_via_diagonal"] = json!(via.to_string());
    }
    Ok(Report::verdict(holds, human, json))
}

fn diagonal(graph: &str, chain: &str, transposed: bool) -> Result<Report> {
    let g = input::digraph(graph)?;
    let u = input::chain(chain, &g)?;
    match diagonal_certified(&g, &u, transposed) {
        Ok(d) => Ok(Report::verdict(
            true,
            format!("{}\n", chain_text(&d)),
            json!({"diagonal": chain_json(&d)}),
        )),
        Err(e @ ProductError::ProductNotInOmega) => Ok(Report::verdict(
            false,
            format!("{e}\n"),
            json!({"error": e.to_string()}),
        )),
        Err(e) => Err(e.into()),
    }
}

fn cup_failure(e: CupError) -> Report {
    Report::verdict(false, format!("{e}\n"), json!({"error": e.to_string()}))
}

fn chain_homotopy(cli: &Cli, graph: &str) -> Result<Report> {
    let g = input::digraph(graph)?;
    let maxdim = cli.maxdim.unwrap_or(3);
    let f = match build_chain_homotopy(&g, maxdim) {
        Ok(f) => f,
        Err(e @ (CupError::SolveFailure { .. } | CupError::DefectNotCycle { .. })) => {
            return Ok(cup_failure(e))
        }
        Err(e) => return Err(e.into()),
    };
    let r = verify_chain_homotopy(&f);
    let mut human = format!(
        "degrees built: 0..={}\nbasis elements checked per degree: {:?}\n",
        f.maxdim(),
        r.checked
    );
    for fail in &r.failures {
        writeln!(
            human,
            "failure in degree {} at basis element {}: {}",
            fail.n, fail.index, fail.reason
        )?;
    }
    writeln!(human, "∂F + F∂ = t♯Δ♯ − Δ♯: {}", yes(r.holds()))?;
    let json = json!({
        "maxdim": f.maxdim(),
        "checked": r.checked,
        "failures": r.failures.iter().map(|x| json!({"n": x.n, "index": x.index, "reason": x.reason})).collect::<Vec<_>>(),
    });
    Ok(Report::verdict(r.holds(), human, json))
}

fn skew(graph: &str, p: usize, q: usize, no_f: bool) -> Result<Report> {
    let g = input::digraph(graph)?;
    let f = if no_f {
        None
    } else {
        match build_chain_homotopy(&g, p + q) {
            Ok(f) => Some(f),
            Err(e) => return Ok(cup_failure(e)),
        }
    };
    let r = match skew_check(&g, p, q, f.as_ref()) {
        Ok(r) => r,
        Err(e) => return Ok(cup_failure(e)),
    };
    let cochains = QuotientCochains::build(&g, p + q + 1);
    let ranks = [p, q, p + q].map(|n| cochains.cohomology_rank(n));
    let mut human = format!(
        "rank H^{p} = {}, rank H^{q} = {}, rank H^{} = {}\n",
        ranks[0],
        ranks[1],
        p + q,
        ranks[2]
    );
    for (i, s) in r.pairs.iter().enumerate() {
        writeln!(
            human,
            "pair {i}: defect is a coboundary: {}, pairing identity: {}",
            yes(s.witness_verified),
            s.pairing_identity.map_or("not checked", yes)
        )?;
    }
    writeln!(human, "graded commutativity: {}", yes(r.holds()))?;
    let json = json!({
        "p": p,
        "q": q,
        "ranks": ranks,
        "pairs": r.pairs.iter().map(|s| json!({
            "phi": form_json(&s.phi),
            "psi": form_json(&s.psi),
            "defect": form_json(&s.defect),
            "witness": s.witness.as_ref().map(form_json),
            "witness_verified": s.witness_verified,
            "pairing_identity": s.pairing_identity,
        })).collect::<Vec<_>>(),
    });
    Ok(Report::verdict(r.holds(), human, json))
}

fn map_check(source: &str, target: &str, map: &str) -> Result<Report> {
    let g = input::digraph(source)?;
    let h = input::digraph(target)?;
    let m = input::vertex_map(map, &g, &h)?;
    let bad = map_violations(&m);
    let mut human = format!("digraph map: {}\n", yes(bad.is_empty()));
    for (a, b) in &bad {
        writeln!(human, "edge {a} -> {b} is not sent to an edge or a vertex")?;
    }
    let json = json!({"violations": bad.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>()});
    Ok(Report::verdict(bad.is_empty(), human, json))
}

fn homotopy_check(
    source: &str,
    target: &str,
    homotopy: &str,
    from: Option<&str>,
    to: Option<&str>,
) -> Result<Report> {
    let g = input::digraph(source)?;
    let h = input::digraph(target)?;
    let w = input::homotopy(homotopy, &g, &h)?;
    let mut holds = check_homotopy(&w);
    let mut human = format!("line {}: homotopy {}\n", w.line, yes(holds));
    if let (Some(f), Some(t)) = (from, to) {
        let f = input::vertex_map(f, &g, &h)?;
        let t = input::vertex_map(t, &g, &h)?;
        let between = check_homotopy_between(&w, &f, &t);
        writeln!(human, "connects the given maps: {}", yes(between))?;
        holds &= between;
    } else if from.is_some() || to.is_some() {
        bail!("--from and --to go together");
    }
    Ok(Report::verdict(holds, human, json!({"line": w.line})))
}

fn retract_check(
    graph: &str,
    map: &str,
    onto: Option<&str>,
    sequence: Option<&str>,
) -> Result<Report> {
    let g = input::digraph(graph)?;
    let moves = input::raw_map(map)?;
    let fail = |e: HomotopyError| {
        Report::verdict(false, format!("{e}\n"), json!({"error": e.to_string()}))
    };
    let (h, r) = match onto {
        Some(path) => {
            let h = input::digraph(path)?;
            (h, VertexMap::with_default_identity(&g, &g, &moves)?)
        }
        None => match retraction_onto_image(&g, &moves) {
            Ok((h, r)) => (h, r.retarget(&g)?),
            Err(e @ HomotopyError::RetractFixityError(_)) => return Ok(fail(e)),
            Err(e) => return Err(e.into()),
        },
    };
    let mode = match sequence {
        Some(path) => {
            let raw = input::raw_homotopy(path)?;
            let fs = raw
                .steps
                .iter()
                .map(|s| VertexMap::new(&g, &g, s.clone()))
                .collect::<Result<Vec<_>, _>>()?;
            RetractionMode::Sequence(fs)
        }
        None => RetractionMode::OneStep,
    };
    let c = match check_retraction(&g, &h, &r, &mode) {
        Ok(c) => c,
        Err(e @ (HomotopyError::RetractFixityError(_) | HomotopyError::NotDigraphMap(_))) => {
            return Ok(fail(e))
        }
        Err(e) => return Err(e.into()),
    };
    let same = c.holds && retraction_preserves_homology(&g, &h);
    let mut human = format!("retract onto: {}\n", names(&h));
    writeln!(human, "deformation retraction: {}", yes(c.holds))?;
    if let Some(line) = &c.line {
        writeln!(human, "line: {line}")?;
    }
    if let Some(d) = &c.detail {
        writeln!(human, "detail: {d}")?;
    }
    if c.holds {
        writeln!(human, "homology preserved: {}", yes(same))?;
    }
    let json = json!({
        "image": digraph_json(&h),
        "deformation_retraction": c.holds,
        "line": c.line,
        "detail": c.detail,
        "homology_preserved": same,
    });
    Ok(Report::verdict(c.holds && same, human, json))
}

fn mv_pair_json(r: &MvPairReport) -> Value {
    json!({
        "z": digraph_json(&r.z),
        "degrees": r.degrees.iter().map(|d| json!({
            "n": d.n, "rank_x": d.rank_x, "rank_y1": d.rank_y1, "rank_y2": d.rank_y2, "rank_z": d.rank_z,
            "onto_q": d.onto_q, "onto_z": d.onto_z,
        })).collect::<Vec<_>>(),
    })
}

fn cover(x: &str, y1: &str, y2: &str) -> Result<(Digraph, Digraph, Digraph)> {
    Ok((input::digraph(x)?, input::digraph(y1)?, input::digraph(y2)?))
}

fn mv_check(cli: &Cli, x: &str, y1: &str, y2: &str) -> Result<Report> {
    let (x, y1, y2) = cover(x, y1, y2)?;
    let maxdim = cli.maxdim.unwrap_or_else(|| default_maxdim(&x));
    Ok(match mv_pair_check(&x, &y1, &y2, maxdim) {
        Ok(r) => {
            let mut human = format!("Z vertices: {}\n", names(&r.z));
            for d in &r.degrees {
                writeln!(
                    human,
                    "n = {}: Ω ranks X {} Y1 {} Y2 {} Z {}, onto over Q {} over Z {}",
                    d.n,
                    d.rank_x,
                    d.rank_y1,
                    d.rank_y2,
                    d.rank_z,
                    yes(d.onto_q),
                    yes(d.onto_z)
                )?;
            }
            Report::verdict(true, human, mv_pair_json(&r))
        }
        Err(e) => Report::verdict(false, format!("{e}\n"), json!({"error": e.to_string()})),
    })
}

fn mv_les(cli: &Cli, x: &str, y1: &str, y2: &str) -> Result<Report> {
    let (x, y1, y2) = cover(x, y1, y2)?;
    let maxdim = cli.maxdim.unwrap_or_else(|| default_maxdim(&x).min(3));
    let les = match mv_les_verify(&x, &y1, &y2, maxdim) {
        Ok(l) => l,
        Err(e) => {
            return Ok(Report::verdict(
                false,
                format!("{e}\n"),
                json!({"error": e.to_string()}),
            ))
        }
    };
    let holds = les.check().is_ok() && les.euler_holds();
    let mut human = String::new();
    for node in &les.nodes {
        writeln!(
            human,
            "{}: dim {}, image in {}, image out {}, exact {}",
            node.label,
            node.dim,
            node.rank_in,
            node.rank_out,
            yes(node.exact())
        )?;
    }
    writeln!(
        human,
        "reduced Betti from degree -1: Z {:?}, Y1⊕Y2 {:?}, X {:?}",
        les.betti_z, les.betti_y, les.betti_x
    )?;
    writeln!(
        human,
        "reduced Euler (X, Y1, Y2, Z): {:?}, χ(X) = χ(Y1) + χ(Y2) − χ(Z): {}",
        les.euler,
        yes(les.euler_holds())
    )?;
    writeln!(human, "exact: {}", yes(les.exact()))?;
    let json = json!({
        "pair": mv_pair_json(&les.pair),
        "nodes": les.nodes.iter().map(|n| json!({
            "label": n.label, "dim": n.dim, "rank_in": n.rank_in, "rank_out": n.rank_out,
            "composite_zero": n.composite_zero, "exact": n.exact(),
        })).collect::<Vec<_>>(),
        "betti_z": les.betti_z,
        "betti_y": les.betti_y,
        "betti_x": les.betti_x,
        "euler": les.euler,
        "exact": les.exact(),
        "euler_holds": les.euler_holds(),
    });
    Ok(Report::verdict(holds, human, json))
}

fn kunneth(cli: &Cli, left: &str, right: &str) -> Result<Report> {
    let g = input::digraph(left)?;
    let h = input::digraph(right)?;
    let maxdim = cli.maxdim.unwrap_or(3);
    let r = kunneth_check(&g, &h, maxdim);
    let human = format!(
        "product Betti: {:?}\nconvolution:   {:?}\nKünneth holds: {}\n",
        r.product,
        r.convolution,
        yes(r.holds)
    );
    let json = json!({"product": r.product, "convolution": r.convolution});
    Ok(Report::verdict(r.holds, human, json))
}

fn fuzz(cli: &Cli, args: &FuzzArgs, checks: Checks) -> Result<Report> {
    if !(0.0..=1.0).contains(&args.p) {
        bail!("edge probability {} is outside [0, 1]", args.p);
    }
    let cfg = FuzzConfig {
        seed: cli.seed,
        graphs: args.graphs,
        max_vertices: args.max_vertices,
        edge_probability: args.p,
        maxdim: cli.maxdim.unwrap_or(3),
        checks,
    };
    let report = fuzz_run(&cfg);
    let mut human = format!(
        "seed {}: {} digraphs, {} minimal paths checked, {} counterexample(s)\n",
        cfg.seed,
        cfg.graphs,
        report.paths_checked,
        report.counterexamples.len()
    );
    for c in &report.counterexamples {
        writeln!(
            human,
            "graph {} fails {}: {}\n  path {}\n  shrunk digraph:\n{}",
            c.index,
            c.violation.property.name(),
            c.violation.detail,
            chain_to_text(&c.violation.path, false),
            digraph_to_text(&c.shrunk)
        )?;
    }
    Ok(Report::verdict(report.clean(), human, report.to_json()))
}

fn export_fixtures(dir: &std::path::Path) -> Result<Report> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut written = Vec::new();
    let mut write = |name: String, content: String| -> Result<()> {
        let path = dir.join(&name);
        fs::write(&path, content).with_context(|| format!("cannot write {}", path.display()))?;
        written.push(name);
        Ok(())
    };
    for f in fixtures::all() {
        write(format!("{}.dg", f.name), digraph_to_text(&f.digraph))?;
        if let Some(p) = &f.path {
            write(
                format!("{}_P.chain", f.name),
                format!("{}\n", chain_to_text(p, false)),
            )?;
        }
    }
    for name in ["xcube", "LEN4"] {
        let g = fixtures::digraph(name);
        write(
            format!("{name}.json"),
            format!("{}\n", serde_json::to_string_pretty(&digraph_to_json(&g))?),
        )?;
    }
    write(
        "GENERATION.txt".into(),
        fixtures::GENERATION_NOTE.to_string(),
    )?;
    let human = written.iter().map(|n| format!("{n}\n")).collect();
    Ok(Report::ok(
        human,
        json!({"dir": dir.display().to_string(), "files": written}),
    ))
}
