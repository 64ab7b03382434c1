use std::collections::BTreeSet;

use pathhom::digraph::{
    cartesian_product, intersection, is_isomorphic, line_digraph, strong_product, subgraph_combine,
    transitive_closure, union, validate_digraph, CombineMode, DigraphError,
};
use pathhom::fixtures::{self, interval, point};
use pathhom::homology::{full_homology, Coefficients};
use pathhom::{Digraph, Vertex};
use proptest::prelude::*;

fn edges_of(g: &Digraph) -> BTreeSet<(String, String)> {
    g.edges()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn pairs(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    list.iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

#[test]
fn validation() {
    let t = validate_digraph(&["s", "a", "e"], &[("s", "a"), ("a", "e"), ("s", "e")]).unwrap();
    assert!(t.same_graph(&fixtures::digraph("T")));
    assert_eq!(
        validate_digraph(&["0"], &[("0", "0")]).unwrap_err(),
        DigraphError::SelfLoop("0".into())
    );
    let empty = validate_digraph(&[], &[]).unwrap();
    assert_eq!((empty.vertex_count(), empty.edge_count()), (0, 0));
}

#[test]
fn vertex_order_is_numeric_first() {
    let g = Digraph::new("g", ["10", "9", "b", "2", "a"], Vec::<(&str, &str)>::new()).unwrap();
    let names: Vec<&str> = g.vertices().iter().map(Vertex::as_str).collect();
    assert_eq!(names, ["2", "9", "10", "a", "b"]);
}

#[test]
fn product_counts() {
    let i1 = interval();
    let sq = cartesian_product(&i1, &i1);
    assert_eq!((sq.vertex_count(), sq.edge_count()), (4, 4));
    let st = strong_product(&i1, &i1);
    assert_eq!((st.vertex_count(), st.edge_count()), (4, 5));
    assert!(st.has_edge(&"(0,0)".into(), &"(1,1)".into()));

    let c3 = fixtures::digraph("C3");
    let box_c3 = cartesian_product(&c3, &c3);
    assert_eq!((box_c3.vertex_count(), box_c3.edge_count()), (9, 18));
    let strong_c3 = strong_product(&c3, &c3);
    assert_eq!((strong_c3.vertex_count(), strong_c3.edge_count()), (9, 27));

    let empty = Digraph::empty("empty");
    assert!(strong_product(&c3, &empty).is_empty());
    assert!(cartesian_product(&empty, &c3).is_empty());
}

#[test]
fn cube_is_interval_cubed() {
    let i1 = interval();
    let cube3 = cartesian_product(&cartesian_product(&i1, &i1), &i1);
    let cube = fixtures::digraph("cube");
    assert!(is_isomorphic(&cube, &cube3).unwrap().is_some());
    assert!(is_isomorphic(&cube, &fixtures::digraph("xcube"))
        .unwrap()
        .is_none());
    let w = is_isomorphic(&cube, &cube).unwrap().unwrap();
    assert!(w.iter().all(|(a, b)| a == b));
}

#[test]
fn isomorphism_witness_maps_edges_onto_edges() {
    let c4 = fixtures::digraph("C4");
    let renamed = Digraph::new(
        "r",
        Vec::<&str>::new(),
        [("x", "y"), ("y", "z"), ("z", "w"), ("w", "x")],
    )
    .unwrap();
    let w = is_isomorphic(&c4, &renamed).unwrap().unwrap();
    for (a, b) in c4.edges() {
        assert!(renamed.has_edge(&w[a], &w[b]));
    }
    let path = Digraph::new(
        "p",
        Vec::<&str>::new(),
        [("x", "y"), ("y", "z"), ("z", "w"), ("x", "w")],
    )
    .unwrap();
    assert!(is_isomorphic(&c4, &path).unwrap().is_none());
}

#[test]
fn product_vertex_names_nest() {
    let i1 = interval();
    let g = cartesian_product(&cartesian_product(&i1, &i1), &point());
    assert!(g.has_vertex(&"((0,1),0)".into()));
    assert_eq!(
        Vertex::pair(&"a".into(), &"(1,2)".into()).as_str(),
        "(a,(1,2))"
    );
}

#[test]
fn line_digraphs() {
    assert!(line_digraph("+").unwrap().same_graph(&interval()));
    let l = line_digraph("--+").unwrap();
    assert_eq!(edges_of(&l), pairs(&[("1", "0"), ("2", "1"), ("2", "3")]));
    let l = line_digraph("-+-").unwrap();
    assert_eq!(edges_of(&l), pairs(&[("1", "0"), ("1", "2"), ("3", "2")]));
    let p = line_digraph("").unwrap();
    assert_eq!((p.vertex_count(), p.edge_count()), (1, 0));
    assert!(line_digraph("+x").is_err());
}

#[test]
fn closures() {
    let c3 = transitive_closure(&fixtures::digraph("C3"));
    assert_eq!(c3.edge_count(), 6);
    let chain = Digraph::new("p", Vec::<&str>::new(), [("0", "1"), ("1", "2")]).unwrap();
    assert!(transitive_closure(&chain).has_edge(&"0".into(), &"2".into()));
    let closed = transitive_closure(&fixtures::digraph("xcube"));
    assert!(full_homology(&closed, Coefficients::Integers, true).is_trivial());
}

#[test]
fn combine() {
    let g = fixtures::digraph("xcube");
    assert!(intersection(&g, &g).same_graph(&g));
    assert!(union(&g, &g).same_graph(&g));
    let a = fixtures::digraph("T");
    let b = fixtures::digraph("Q");
    let u = subgraph_combine(&a, &b, CombineMode::Union);
    assert_eq!(u.vertex_count(), 4);
    assert_eq!(u.edge_count(), 5);
    let i = subgraph_combine(&a, &b, CombineMode::Intersection);
    assert_eq!(edges_of(&i), pairs(&[("a", "e"), ("s", "a")]));
}

fn small_digraph() -> impl Strategy<Value = Digraph> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let mut es = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if a != b && bits[a * n + b] {
                        es.push((names[a].as_str(), names[b].as_str()));
                    }
                }
            }
            Digraph::new("g", names.iter().map(String::as_str), es).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_count_formulas(g in small_digraph(), h in small_digraph()) {
        let (vg, eg, vh, eh) = (g.vertex_count(), g.edge_count(), h.vertex_count(), h.edge_count());
        prop_assert_eq!(cartesian_product(&g, &h).edge_count(), vg * eh + eg * vh);
        prop_assert_eq!(strong_product(&g, &h).edge_count(), vg * eh + eg * vh + eg * eh);
    }

    #[test]
    fn closure_is_idempotent(g in small_digraph()) {
        let once = transitive_closure(&g);
        prop_assert!(transitive_closure(&once).same_graph(&once));
    }

    #[test]
    fn combine_laws(a in small_digraph(), b in small_digraph(), c in small_digraph()) {
        prop_assert!(union(&a, &b).same_graph(&union(&b, &a)));
        prop_assert!(intersection(&a, &b).same_graph(&intersection(&b, &a)));
        prop_assert!(union(&union(&a, &b), &c).same_graph(&union(&a, &union(&b, &c))));
        prop_assert!(intersection(&intersection(&a, &b), &c).same_graph(&intersection(&a, &intersection(&b, &c))));
        prop_assert!(union(&a, &a).same_graph(&a));
    }

    #[test]
    fn box_product_is_associative(a in small_digraph(), b in small_digraph(), c in small_digraph()) {
        prop_assume!(a.vertex_count() * b.vertex_count() * c.vertex_count() <= 12);
        let left = cartesian_product(&cartesian_product(&a, &b), &c);
        let right = cartesian_product(&a, &cartesian_product(&b, &c));
        prop_assert!(is_isomorphic(&left, &right).unwrap().is_some());
    }
}
