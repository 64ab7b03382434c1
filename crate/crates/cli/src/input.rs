//! Resolving command-line operands: a file path, a built-in fixture name,
//! or (for chains and forms) inline chain text.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use pathhom::chain::Form;
use pathhom::fixtures;
use pathhom::homotopy::HomotopyWitness;
use pathhom::io::{
    load_chain, load_digraph, load_form, load_homotopy, load_vertex_map, parse_chain_text,
    parse_vertex_map, RawHomotopy,
};
use pathhom::{Chain, Digraph, Vertex, VertexMap};

pub fn digraph(arg: &str) -> Result<Digraph> {
    let path = Path::new(arg);
    if path.exists() {
        return load_digraph(path).with_context(|| format!("loading digraph {arg}"));
    }
    if let Some(f) = fixtures::get(arg) {
        return Ok(f.digraph);
    }
    bail!("cannot read {arg}: no such file or built-in fixture")
}

fn inline(arg: &str) -> bool {
    arg.contains('[')
}

fn check_vertices<R: pathhom::chain::Coeff>(c: &Chain<R>, g: &Digraph) -> Result<()> {
    if let Some(v) = c.vertex_set().into_iter().find(|v| !g.has_vertex(v)) {
        bail!("unknown vertex {v}");
    }
    Ok(())
}

pub fn chain(arg: &str, g: &Digraph) -> Result<Chain> {
    let path = Path::new(arg);
    if path.exists() {
        return load_chain(path, g).with_context(|| format!("loading chain {arg}"));
    }
    let c = if inline(arg) {
        parse_chain_text(arg)?.to_chain()?
    } else {
        fixtures::get(arg)
            .and_then(|f| f.path)
            .ok_or_else(|| anyhow!("cannot read {arg}: no such file or fixture path"))?
    };
    check_vertices(&c, g)?;
    Ok(c)
}

pub fn form(arg: &str, g: &Digraph) -> Result<Form> {
    let path = Path::new(arg);
    if path.exists() {
        return load_form(path, g).with_context(|| format!("loading form {arg}"));
    }
    if !inline(arg) {
        bail!("cannot read {arg}: no such file");
    }
    let w = parse_chain_text(arg)?.to_form()?;
    check_vertices(&w, g)?;
    Ok(w)
}

pub fn vertex_map(arg: &str, source: &Digraph, target: &Digraph) -> Result<VertexMap> {
    load_vertex_map(Path::new(arg), source, target)
        .with_context(|| format!("loading vertex map {arg}"))
}

pub fn raw_map(arg: &str) -> Result<BTreeMap<Vertex, Vertex>> {
    let src = std::fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?;
    Ok(parse_vertex_map(&src)?)
}

pub fn raw_homotopy(arg: &str) -> Result<RawHomotopy> {
    load_homotopy(Path::new(arg)).with_context(|| format!("loading homotopy {arg}"))
}

pub fn homotopy(arg: &str, source: &Digraph, target: &Digraph) -> Result<HomotopyWitness> {
    Ok(HomotopyWitness::from_raw(
        &raw_homotopy(arg)?,
        source,
        target,
    )?)
}

pub fn vertex(g: &Digraph, name: &str) -> Result<Vertex> {
    let v = Vertex::new(name);
    if !g.has_vertex(&v) {
        bail!("unknown vertex {name}");
    }
    Ok(v)
}
