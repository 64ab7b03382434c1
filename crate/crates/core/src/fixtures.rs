//! The built-in example corpus: small named digraphs, most of them the
//! supporting digraph of a named minimal path.

use crate::chain::Chain;
use crate::digraph::{Digraph, Vertex};
use crate::io::parse_chain_text;
use crate::support::supp;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub digraph: Digraph,
    /// The defining minimal path, when the digraph is its support.
    pub path: Option<Chain>,
}

/// Chain text for the minimal paths whose supports define a fixture.
const PATHS: &[(&str, &str)] = &[
    ("T", "[s a e]"),
    ("Q", "[s a e] -1 [s b e]"),
    ("simplex", "[0 1 2 3]"),
    ("SabcdeE", "[S a c E] -1 [S a e E] [S d e E] [S b d E] -1 [S b c E]"),
    ("ex0134", "[0 1 3 4] -1 [0 2 3 4]"),
    ("ex0135", "[0 1 3 5] -1 [0 2 3 5] [0 2 4 5]"),
    ("ex0136", "[0 1 3 6] -1 [0 1 4 6] -1 [0 2 3 6] [0 2 5 6]"),
    ("ex012345", "[0 1 3 5] -1 [0 1 4 5] [0 2 4 5] -1 [0 2 3 5]"),
    ("EXfSfE1", "[0 1 3 6] -1 [0 1 5 6] [0 4 5 6] [0 2 4 6] -1 [0 2 3 6]"),
    ("cube", "[0 1 3 7] -1 [0 2 3 7] [0 2 6 7] -1 [0 4 6 7] [0 4 5 7] -1 [0 1 5 7]"),
    ("firstnc", "[0 1 3 7] -1 [0 2 3 7] [0 2 6 7] -1 [0 1 5 7] [0 4 5 7]"),
    ("xcube", "[0 2 5 8] -1 [0 1 5 8] -1 [0 2 6 8] [0 3 6 8] -1 [0 3 7 8] [0 4 7 8]"),
    (
        "more1",
        "[S 0 5 E] -1 [S 1 5 E] [S 1 7 E] -1 [S 3 7 E] [S 3 9 E] -1 [S 4 9 E] [S 4 8 E] -1 [S 2 8 E] [S 2 6 E] -1 [S 0 6 E]",
    ),
    (
        "more2",
        "[S 0 6 E] -1 [S 1 6 E] [S 1 7 E] -1 [S 2 7 E] [S 2 8 E] -1 [S 3 8 E] [S 3 9 E] -1 [S 4 9 E] [S 4 10 E] -1 [S 5 10 E]",
    ),
    (
        "LEN4",
        "[S 1 5 9 E] -1 [S 1 6 9 E] [S 2 6 9 E] [S 1 6 10 E] -1 [S 2 6 10 E] [S 2 7 10 E] -1 [S 3 7 10 E] \
         -1 [S 2 7 11 E] [S 3 7 11 E] [S 2 8 11 E] -1 [S 4 8 11 E]",
    ),
];

/// The length-4 chain with its last two signs as first written down. Its
/// support carries `2 → 11` and the chain splits off `e_{S48(11)E} − e_{S28(11)E}`.
pub const LEN4_AS_WRITTEN: &str =
    "[S 1 5 9 E] -1 [S 1 6 9 E] [S 2 6 9 E] [S 1 6 10 E] -1 [S 2 6 10 E] [S 2 7 10 E] \
     -1 [S 3 7 10 E] -1 [S 2 7 11 E] [S 3 7 11 E] -1 [S 2 8 11 E] [S 4 8 11 E]";

/// Fixtures given by their edge lists.
const GRAPHS: &[(&str, &[(&str, &str)])] = &[
    (
        "G1",
        &[("0", "1"), ("1", "3"), ("0", "2"), ("2", "3"), ("0", "3")],
    ),
    (
        "G2",
        &[
            ("0", "1"),
            ("0", "2"),
            ("0", "3"),
            ("1", "4"),
            ("2", "4"),
            ("3", "4"),
        ],
    ),
    ("C3", &[("0", "1"), ("1", "2"), ("2", "0")]),
    ("C4", &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")]),
    (
        "simplex",
        &[
            ("0", "1"),
            ("0", "2"),
            ("0", "3"),
            ("1", "2"),
            ("1", "3"),
            ("2", "3"),
        ],
    ),
];

/// Parses one of the chain texts above.
///
/// # Panics
/// Panics on a malformed built-in chain.
pub fn path_from_text(text: &str) -> Chain {
    parse_chain_text(text)
        .and_then(|raw| raw.to_chain())
        .expect("built-in chain parses")
}

fn from_edges(name: &'static str, edges: &[(&str, &str)]) -> Fixture {
    let g = Digraph::new(name, Vec::<&str>::new(), edges.iter().copied())
        .expect("built-in digraph is valid");
    Fixture {
        name,
        digraph: g,
        path: PATHS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| path_from_text(t)),
    }
}

fn from_path(name: &'static str, text: &str) -> Fixture {
    let p = path_from_text(text);
    Fixture {
        name,
        digraph: supp(&p).with_name(name),
        path: Some(p),
    }
}

/// Every fixture, edge-list ones first.
pub fn all() -> Vec<Fixture> {
    GRAPHS
        .iter()
        .map(|(n, e)| from_edges(n, e))
        .chain(
            PATHS
                .iter()
                .filter(|(n, _)| !GRAPHS.iter().any(|(m, _)| m == n))
                .map(|(n, t)| from_path(n, t)),
        )
        .collect()
}

pub fn get(name: &str) -> Option<Fixture> {
    if let Some((n, e)) = GRAPHS.iter().find(|(n, _)| *n == name) {
        return Some(from_edges(n, e));
    }
    PATHS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, t)| from_path(n, t))
}

/// The fixtures with a defining minimal path.
pub fn minimal_paths() -> Vec<Fixture> {
    all().into_iter().filter(|f| f.path.is_some()).collect()
}

/// # Panics
/// Panics when `name` is not a fixture.
pub fn digraph(name: &str) -> Digraph {
    get(name)
        .unwrap_or_else(|| panic!("unknown fixture {name}"))
        .digraph
}

/// # Panics
/// Panics when `name` has no defining path.
pub fn path(name: &str) -> Chain {
    get(name)
        .and_then(|f| f.path)
        .unwrap_or_else(|| panic!("fixture {name} has no path"))
}

/// A single vertex.
pub fn point() -> Digraph {
    Digraph::new("point", ["0"], Vec::<(&str, &str)>::new()).expect("valid")
}

/// `0 → 1`.
pub fn interval() -> Digraph {
    Digraph::new("I1", Vec::<&str>::new(), [("0", "1")]).expect("valid")
}

/// Vertex names `0..n` as vertices.
pub fn numbered(n: usize) -> Vec<Vertex> {
    (0..n).map(|i| Vertex::new(&i.to_string())).collect()
}

/// A note written next to the exported corpus.
pub const GENERATION_NOTE: &str = "\
Generated by `pathhom fixtures <dir>` from the built-in corpus.
Each `<name>_P.chain` holds a minimal path; `<name>.dg` is its supporting
digraph, computed as the supp closure of that chain: the edges of every term
together with the edges of every term surviving in its boundary.
G1, G2, C3, C4 and simplex are given by their edge lists; simplex carries
the path 0123, whose support drops the edge 0 -> 3.
LEN4 uses the signs +[S 2 8 11 E] -[S 4 8 11 E] on its last two terms.
";
