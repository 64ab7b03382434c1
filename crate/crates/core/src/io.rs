//! Text and JSON formats for digraphs, chains, forms, vertex maps and
//! homotopy witnesses.
//!
//! Digraph text:
//!
//! ```text
//! # comment
//! digraph T
//! vertex lonely
//! s -> a
//! a -> e
//! ```
//!
//! Chain text is a sequence of `coefficient [v0 v1 ... vn]` items, optionally
//! preceded by `form` and/or `dim=<n>`: `+1 [0 1 3 7] -1 [0 2 3 7]`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::chain::{Chain, ChainError, Coeff, ElemPath, Form};
use crate::digraph::{Digraph, DigraphError, MapError, Vertex, VertexMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("non-integer coefficient {0} in an integer chain")]
    NotInteger(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the digraph text format.
pub fn parse_digraph_text(src: &str) -> Result<Digraph, FormatError> {
    let mut name: Option<String> = None;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (no, raw) in src.lines().enumerate() {
        let line = no + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            ["digraph", n] => {
                if name.replace(n.to_string()).is_some() {
                    return Err(parse_err(line, "second digraph header"));
                }
            }
            ["vertex", v] => vertices.push(v.to_string()),
            [u, "->", v] => edges.push((u.to_string(), v.to_string())),
            _ => return Err(parse_err(line, format!("unrecognised line {text:?}"))),
        }
    }
    Ok(Digraph::new(&name.unwrap_or_default(), vertices, edges)?)
}

pub fn digraph_to_text(g: &Digraph) -> String {
    let mut out = String::new();
    if !g.name().is_empty() {
        out.push_str(&format!("digraph {}\n", g.name()));
    }
    for (i, v) in g.vertices().iter().enumerate() {
        if g.successors(i).is_empty() && g.predecessors(i).is_empty() {
            out.push_str(&format!("vertex {v}\n"));
        }
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} -> {b}\n"));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct DigraphJson {
    #[serde(default)]
    name: String,
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

pub fn parse_digraph_json(src: &str) -> Result<Digraph, FormatError> {
    let raw: DigraphJson =
        serde_json::from_str(src).map_err(|e| FormatError::Json(e.to_string()))?;
    Ok(Digraph::new(&raw.name, raw.vertices, raw.edges)?)
}

pub fn digraph_to_json(g: &Digraph) -> Value {
    json!({
        "name": g.name(),
        "vertices": g.vertices().iter().map(Vertex::as_str).collect::<Vec<_>>(),
        "edges": g.edges().map(|(a, b)| [a.as_str(), b.as_str()]).collect::<Vec<_>>(),
    })
}

fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn is_json_path(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Loads a digraph, choosing the format by extension (`.json` or text).
pub fn load_digraph(path: &Path) -> Result<Digraph, FormatError> {
    let src = read_file(path)?;
    if is_json_path(path) {
        parse_digraph_json(&src)
    } else {
        parse_digraph_text(&src)
    }
}

/// A chain file before it is typed as an integer chain or a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawChain {
    pub form: bool,
    pub dim: Option<usize>,
    pub terms: Vec<(BigRational, Vec<String>)>,
}

fn parse_coefficient(tok: &str) -> Option<BigRational> {
    let t = tok.strip_prefix('+').unwrap_or(tok);
    if t.is_empty() {
        return None;
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) || den.sign() == num_bigint::Sign::Minus {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Parses the chain text format.
pub fn parse_chain_text(src: &str) -> Result<RawChain, FormatError> {
    let mut toks: Vec<(usize, String)> = Vec::new();
    for (no, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let spaced = text.replace('[', " [ ").replace(']', " ] ");
        toks.extend(spaced.split_whitespace().map(|t| (no + 1, t.to_string())));
    }
    let mut out = RawChain {
        form: false,
        dim: None,
        terms: Vec::new(),
    };
    let mut i = 0;
    if toks.get(i).is_some_and(|(_, t)| t == "form") {
        out.form = true;
        i += 1;
    }
    if let Some((line, t)) = toks.get(i) {
        if let Some(d) = t.strip_prefix("dim=") {
            out.dim = Some(
                d.parse()
                    .map_err(|_| parse_err(*line, format!("bad dimension {d:?}")))?,
            );
            i += 1;
        }
    }
    while i < toks.len() {
        let (line, tok) = &toks[i];
        let (coeff, next) = if tok == "[" {
            (BigRational::one(), i)
        } else {
            let c = parse_coefficient(tok)
                .ok_or_else(|| parse_err(*line, format!("bad coefficient {tok:?}")))?;
            (c, i + 1)
        };
        if toks.get(next).map(|(_, t)| t.as_str()) != Some("[") {
            return Err(parse_err(*line, "expected '[' after coefficient"));
        }
        let mut j = next + 1;
        let mut ids = Vec::new();
        loop {
            match toks.get(j) {
                None => return Err(parse_err(*line, "unterminated path")),
                Some((_, t)) if t == "]" => break,
                Some((l, t)) if t == "[" => return Err(parse_err(*l, "nested '['")),
                Some((_, t)) => ids.push(t.clone()),
            }
            j += 1;
        }
        if ids.is_empty() {
            return Err(parse_err(*line, "empty path"));
        }
        out.terms.push((coeff, ids));
        i = j + 1;
    }
    Ok(out)
}

#[derive(Deserialize)]
struct ChainJson {
    dim: Option<usize>,
    #[serde(default)]
    form: bool,
    #[serde(default)]
    terms: Vec<TermJson>,
}

#[derive(Deserialize)]
struct TermJson {
    c: Value,
    path: Vec<String>,
}

/// Parses the chain JSON format.
pub fn parse_chain_json(src: &str) -> Result<RawChain, FormatError> {
    let raw: ChainJson = serde_json::from_str(src).map_err(|e| FormatError::Json(e.to_string()))?;
    let mut terms = Vec::new();
    for t in raw.terms {
        let c = match &t.c {
            Value::Number(n) => n
                .as_i64()
                .map(|x| BigRational::from_integer(x.into()))
                .ok_or_else(|| FormatError::Json(format!("coefficient {n} is not an integer")))?,
            Value::String(s) => parse_coefficient(s)
                .ok_or_else(|| FormatError::Json(format!("bad coefficient {s:?}")))?,
            other => return Err(FormatError::Json(format!("bad coefficient {other}"))),
        };
        if t.path.is_empty() {
            return Err(FormatError::Chain(ChainError::EmptyPath));
        }
        terms.push((c, t.path));
    }
    Ok(RawChain {
        form: raw.form,
        dim: raw.dim,
        terms,
    })
}

impl RawChain {
    fn typed<R: Coeff>(
        &self,
        conv: impl Fn(&BigRational) -> Result<R, FormatError>,
    ) -> Result<Chain<R>, FormatError> {
        let dim = match (self.dim, self.terms.first()) {
            (Some(d), _) => d,
            (None, Some((_, ids))) => ids.len() - 1,
            (None, None) => 0,
        };
        let mut c = Chain::zero(dim);
        for (k, ids) in &self.terms {
            if ids.len() != dim + 1 {
                return Err(ChainError::MixedDimensions(dim, ids.len() - 1).into());
            }
            for id in ids {
                if id.is_empty() || id.chars().any(char::is_whitespace) {
                    return Err(DigraphError::EmptyIdentifier.into());
                }
            }
            let p = ElemPath::new(ids.iter().map(|s| Vertex::new(s)).collect())?;
            c.add_term(p, conv(k)?);
        }
        Ok(c)
    }

    pub fn to_chain(&self) -> Result<Chain, FormatError> {
        self.typed(|k| {
            if k.is_integer() {
                Ok(k.to_integer())
            } else {
                Err(FormatError::NotInteger(k.to_string()))
            }
        })
    }

    pub fn to_form(&self) -> Result<Form, FormatError> {
        self.typed(|k| Ok(k.clone()))
    }
}

fn check_vertices<R: Coeff>(c: &Chain<R>, g: &Digraph) -> Result<(), FormatError> {
    for v in c.vertex_set() {
        if !g.has_vertex(&v) {
            return Err(ChainError::UnknownVertex(v.to_string()).into());
        }
    }
    Ok(())
}

fn load_raw_chain(path: &Path) -> Result<RawChain, FormatError> {
    let src = read_file(path)?;
    if is_json_path(path) {
        parse_chain_json(&src)
    } else {
        parse_chain_text(&src)
    }
}

/// Loads an integer chain and checks its vertices against `g`.
pub fn load_chain(path: &Path, g: &Digraph) -> Result<Chain, FormatError> {
    let c = load_raw_chain(path)?.to_chain()?;
    check_vertices(&c, g)?;
    Ok(c)
}

pub fn load_form(path: &Path, g: &Digraph) -> Result<Form, FormatError> {
    let c = load_raw_chain(path)?.to_form()?;
    check_vertices(&c, g)?;
    Ok(c)
}

/// Chain text that round-trips, including the dimension of a zero chain.
pub fn chain_to_text<R: Coeff>(c: &Chain<R>, form: bool) -> String {
    let mut parts = Vec::new();
    if form {
        parts.push("form".to_string());
    }
    if c.is_zero() {
        parts.push(format!("dim={}", c.dim()));
    } else {
        parts.push(c.to_string());
    }
    parts.join(" ")
}

pub(crate) fn bigint_json(k: &BigInt) -> Value {
    match k.to_i64() {
        Some(x) => json!(x),
        None => json!(k.to_string()),
    }
}

fn coeff_json<R: Coeff>(k: &R) -> Value {
    let q = k.to_rational();
    if q.is_integer() {
        bigint_json(&q.to_integer())
    } else {
        json!(q.to_string())
    }
}

pub fn chain_to_json<R: Coeff>(c: &Chain<R>, form: bool) -> Value {
    let mut v = json!({
        "dim": c.dim(),
        "terms": c.terms().map(|(p, k)| json!({
            "c": coeff_json(k),
            "path": p.vertices().iter().map(Vertex::as_str).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    if form {
        v["form"] = json!(true);
    }
    v
}

fn parse_map_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<BTreeMap<Vertex, Vertex>, FormatError> {
    let mut out = BTreeMap::new();
    for (line, text) in lines {
        let toks: Vec<&str> = text.split_whitespace().collect();
        match toks.as_slice() {
            [a, "=>", b] => {
                if out.insert(Vertex::new(a), Vertex::new(b)).is_some() {
                    return Err(parse_err(line, format!("vertex {a} mapped twice")));
                }
            }
            _ => {
                return Err(parse_err(
                    line,
                    format!("expected '<src> => <dst>', got {text:?}"),
                ))
            }
        }
    }
    Ok(out)
}

fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a vertex map file (`<src> => <dst>` per line).
pub fn parse_vertex_map(src: &str) -> Result<BTreeMap<Vertex, Vertex>, FormatError> {
    parse_map_lines(content_lines(src))
}

pub fn vertex_map_to_text(m: &BTreeMap<Vertex, Vertex>) -> String {
    m.iter().map(|(a, b)| format!("{a} => {b}\n")).collect()
}

pub fn load_vertex_map(
    path: &Path,
    source: &Digraph,
    target: &Digraph,
) -> Result<VertexMap, FormatError> {
    let m = parse_vertex_map(&read_file(path)?)?;
    Ok(VertexMap::new(source, target, m)?)
}

/// A homotopy file: an orientation string and one map per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawHomotopy {
    pub line: String,
    pub steps: Vec<BTreeMap<Vertex, Vertex>>,
}

/// Parses a homotopy file:
///
/// ```text
/// line --+
/// step 0
/// 0 => 0
/// step 1
/// 0 => 1
/// ```
pub fn parse_homotopy(src: &str) -> Result<RawHomotopy, FormatError> {
    let lines: Vec<(usize, &str)> = content_lines(src).collect();
    let Some(&(l0, first)) = lines.first() else {
        return Err(parse_err(1, "missing 'line' header"));
    };
    let toks: Vec<&str> = first.split_whitespace().collect();
    let spec = match toks.as_slice() {
        ["line"] => String::new(),
        ["line", s] => s.to_string(),
        _ => return Err(parse_err(l0, "expected 'line <orientation>'")),
    };
    if let Some(c) = spec.chars().find(|c| *c != '+' && *c != '-') {
        return Err(parse_err(
            l0,
            format!("invalid orientation character {c:?}"),
        ));
    }
    let n = spec.chars().count();
    let mut steps: Vec<Option<BTreeMap<Vertex, Vertex>>> = vec![None; n + 1];
    let mut i = 1;
    while i < lines.len() {
        let (l, text) = lines[i];
        let toks: Vec<&str> = text.split_whitespace().collect();
        let k = match toks.as_slice() {
            ["step", k] => k
                .parse::<usize>()
                .ok()
                .filter(|&k| k <= n)
                .ok_or_else(|| parse_err(l, format!("bad step index {k:?}")))?,
            _ => return Err(parse_err(l, "expected 'step <k>'")),
        };
        let mut j = i + 1;
        while j < lines.len() && !lines[j].1.starts_with("step") {
            j += 1;
        }
        let map = parse_map_lines(lines[i + 1..j].iter().copied())?;
        if steps[k].replace(map).is_some() {
            return Err(parse_err(l, format!("step {k} given twice")));
        }
        i = j;
    }
    let steps = steps
        .into_iter()
        .enumerate()
        .map(|(k, s)| s.ok_or_else(|| parse_err(l0, format!("step {k} missing"))))
        .collect::<Result<_, _>>()?;
    Ok(RawHomotopy { line: spec, steps })
}

pub fn homotopy_to_text(h: &RawHomotopy) -> String {
    let mut out = format!("line {}\n", h.line).trim_end().to_string();
    out.push('\n');
    for (k, m) in h.steps.iter().enumerate() {
        out.push_str(&format!("step {k}\n"));
        out.push_str(&vertex_map_to_text(m));
    }
    out
}

pub fn load_homotopy(path: &Path) -> Result<RawHomotopy, FormatError> {
    parse_homotopy(&read_file(path)?)
}
