mod common;

use num_rational::BigRational;
use num_traits::Zero;
use pathhom::chain::allowed_basis;
use pathhom::fixtures;
use pathhom::homology::rational_bettis;
use pathhom::mayer_vietoris::{mv_les_verify, mv_pair_check, MvError};
use pathhom::omega::{membership, omega_basis};
use pathhom::structure::augment_split;
use pathhom::support::supp;
use pathhom::{Chain, Digraph, ElemPath, Vertex};
use proptest::prelude::*;

fn c(terms: &[(i64, &str)]) -> Chain {
    common::groups(&[terms])
}

fn coords(basis: &[ElemPath], x: &Chain) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); basis.len()];
    for (p, k) in x.terms() {
        let i = basis
            .iter()
            .position(|q| q == p)
            .expect("term in the allowed basis");
        row[i] = BigRational::from_integer(k.clone());
    }
    row
}

fn euler(reduced_bettis: &[usize]) -> i64 {
    // Index 0 is degree -1.
    reduced_bettis
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
        .sum()
}

#[test]
fn exotic_cube_gains_two_dimensions() {
    let p = fixtures::path("xcube");
    let s = supp(&p);
    let aug = s.with_edges([(Vertex::new("2"), Vertex::new("8"))]);
    let small = omega_basis(&s, 2);
    let big = omega_basis(&aug, 2);
    assert_eq!(big.len(), small.len() + 2);

    let extra = [c(&[(1, "018"), (-1, "028")]), c(&[(1, "258")])];
    for x in &extra {
        assert!(membership(&aug, x), "{x}");
        assert!(!membership(&s, x), "{x}");
    }
    let allowed = allowed_basis(&aug, 2);
    let big_rows: Vec<Vec<BigRational>> = big.iter().map(|b| coords(&allowed, b)).collect();
    let mut split_rows: Vec<Vec<BigRational>> = small.iter().map(|b| coords(&allowed, b)).collect();
    split_rows.extend(extra.iter().map(|x| coords(&allowed, x)));
    assert_eq!(common::rank(&split_rows), big.len());
    let mut both = big_rows.clone();
    both.extend(split_rows);
    assert_eq!(common::rank(&both), big.len());
}

#[test]
fn exotic_cube_split_is_a_mayer_vietoris_pair() {
    let s = augment_split(&fixtures::path("xcube")).unwrap();
    let pair = mv_pair_check(&s.augmented, &s.y1, &s.y2, 3).unwrap();
    assert!(pair.degrees.iter().all(|d| d.onto_q && d.onto_z));
    assert!(pair.z.same_graph(&s.z));
    let les = mv_les_verify(&s.augmented, &s.y1, &s.y2, 3).unwrap();
    assert!(les.exact());
    assert!(les.check().is_ok());
    assert!(les.euler_holds());
    // Y1, Y2 and Z are acyclic, so X is too.
    for b in [&les.betti_x, &les.betti_y, &les.betti_z] {
        assert!(b.iter().all(|&k| k == 0), "{b:?}");
    }
}

#[test]
fn appendix_split_is_a_mayer_vietoris_pair() {
    let s = augment_split(&fixtures::path("LEN4")).unwrap();
    let pair = mv_pair_check(&s.augmented, &s.y1, &s.y2, 4).unwrap();
    assert!(pair.degrees.iter().all(|d| d.onto_z));
    let les = mv_les_verify(&s.augmented, &s.y1, &s.y2, 4).unwrap();
    assert!(les.exact() && les.euler_holds());
    assert!(les.betti_x.iter().all(|&k| k == 0));
}

#[test]
fn trivial_cover() {
    let t = fixtures::digraph("T");
    let les = mv_les_verify(&t, &t, &t, 2).unwrap();
    assert!(les.exact() && les.euler_holds());
    assert!(les.pair.z.same_graph(&t));
}

#[test]
fn disjoint_cover() {
    let x = Digraph::new("x", Vec::<&str>::new(), [("a", "b"), ("c", "d")]).unwrap();
    let y1 = x.induced_subgraph(&[Vertex::new("a"), Vertex::new("b")]);
    let y2 = x.induced_subgraph(&[Vertex::new("c"), Vertex::new("d")]);
    let les = mv_les_verify(&x, &y1, &y2, 1).unwrap();
    assert!(les.pair.z.is_empty());
    assert!(les.exact());
    assert_eq!(les.betti_z[0], 1);
    assert_eq!(les.betti_x[1], 1);
    assert_eq!(les.euler, [1, 0, 0, -1]);
    assert!(les.euler_holds());
}

#[test]
fn bad_covers_are_rejected() {
    let t = fixtures::digraph("T");
    let y1 = Digraph::new("y1", Vec::<&str>::new(), [("s", "a")]).unwrap();
    let y2 = Digraph::new("y2", Vec::<&str>::new(), [("a", "e"), ("s", "e")]).unwrap();
    assert!(matches!(
        mv_pair_check(&t, &y1, &y2, 2),
        Err(MvError::PathOutsideCover(_))
    ));
    let partial = Digraph::new("p", Vec::<&str>::new(), [("a", "e")]).unwrap();
    assert_eq!(
        mv_pair_check(&t, &y1, &partial, 2).unwrap_err(),
        MvError::NotACover
    );
}

#[test]
fn euler_matches_independent_bettis() {
    let s = augment_split(&fixtures::path("xcube")).unwrap();
    let les = mv_les_verify(&s.augmented, &s.y1, &s.y2, 3).unwrap();
    let chi = |g: &Digraph| {
        let b = rational_bettis(g, g.vertex_count());
        let mut reduced = vec![usize::from(g.is_empty())];
        reduced.extend(
            b.iter()
                .enumerate()
                .map(|(n, &k)| if n == 0 && k > 0 { k - 1 } else { k }),
        );
        euler(&reduced)
    };
    assert_eq!(
        les.euler,
        [chi(&s.augmented), chi(&s.y1), chi(&s.y2), chi(&s.z)]
    );
}

fn cover_strategy() -> impl Strategy<Value = (Digraph, Digraph, Digraph)> {
    common::small_digraph(5).prop_flat_map(|x| {
        let edges: Vec<(Vertex, Vertex)> = x.edges().map(|(a, b)| (a.clone(), b.clone())).collect();
        let n = edges.len();
        (Just(x), proptest::collection::vec(0u8..3, n)).prop_map(move |(x, sides)| {
            let mut e1 = Vec::new();
            let mut e2 = Vec::new();
            for (e, side) in edges.iter().zip(sides) {
                if side != 1 {
                    e1.push(e.clone());
                }
                if side != 0 {
                    e2.push(e.clone());
                }
            }
            let vs: Vec<Vertex> = x.vertices().to_vec();
            let y1 = Digraph::new("y1", vs.clone(), e1).unwrap();
            let y2 = Digraph::new("y2", vs, e2).unwrap();
            (x, y1, y2)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn pairs_give_exact_sequences((x, y1, y2) in cover_strategy()) {
        if mv_pair_check(&x, &y1, &y2, 4).is_ok() {
            let les = mv_les_verify(&x, &y1, &y2, 2).unwrap();
            prop_assert!(les.exact(), "{:?}", les.nodes);
            prop_assert!(les.euler_holds());
        }
    }
}
