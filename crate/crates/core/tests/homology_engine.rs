mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use pathhom::cochains::{cohomology, QuotientCochains};
use pathhom::digraph::cartesian_product;
use pathhom::fixtures::{self, interval, point};
use pathhom::homology::{
    full_homology, homology, homology_degree, kunneth_check, rational_bettis, HomologyError,
};
use pathhom::linalg::{mat_mul, smith_normal_form, smith_normal_form_with_transforms};
use pathhom::{build_complex, path_homology, Coefficients, Digraph};
use proptest::prelude::*;

fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: d_1⋯d_k is the gcd of
/// all k×k minors.
fn invariants_by_minors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![1i64];
    for k in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

#[test]
fn snf_examples() {
    assert_eq!(
        smith_normal_form(&big(&[&[2, 0], &[0, 3]]), 2).invariants,
        ints(&[1, 6])
    );
    let z = smith_normal_form(&big(&[&[0, 0], &[0, 0]]), 2);
    assert!(z.invariants.is_empty() && z.rank == 0);
    let id = smith_normal_form(&big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3);
    assert_eq!(id.invariants, ints(&[1, 1, 1]));
    let d = smith_normal_form_with_transforms(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
    assert_eq!(d.result.invariants, ints(&[2, 6, 12]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn snf_matches_determinantal_divisors(rows in 1usize..=4, cols in 1usize..=4, entries in proptest::collection::vec(-6i64..=6, 16)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| entries[r * 4 + c]).collect()).collect();
        let b: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let d = smith_normal_form_with_transforms(&b, cols);
        prop_assert!(d.result.divisibility_holds());
        prop_assert_eq!(d.result.rank, d.result.invariants.len());
        prop_assert_eq!(d.result.invariants.clone(), ints(&invariants_by_minors(&m)));
        let umv = mat_mul(&mat_mul(&d.u, &b, rows), &d.v, cols);
        prop_assert_eq!(umv, d.d.clone());
        for (i, row) in d.d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j || i >= d.result.rank {
                    prop_assert!(x.is_zero());
                } else {
                    prop_assert_eq!(x.abs(), d.result.invariants[i].clone());
                }
            }
        }
    }
}

#[test]
fn baselines() {
    for name in ["C3", "C4"] {
        let h = path_homology(&fixtures::digraph(name), 2, Coefficients::Integers, false);
        assert_eq!(h.bettis()[..2], [1, 1], "{name}");
        assert!(h.degrees.iter().all(|d| d.torsion.is_empty()));
        assert_eq!(h.betti(2), 0);
    }
    for name in ["T", "Q", "cube", "simplex"] {
        let h = full_homology(&fixtures::digraph(name), Coefficients::Integers, true);
        assert!(h.is_trivial(), "{name}: {h}");
    }
    let h = full_homology(&point(), Coefficients::Integers, false);
    assert_eq!(h.bettis(), vec![1]);
    let x = fixtures::get("xcube").unwrap();
    assert!(full_homology(&x.digraph, Coefficients::Integers, true).is_trivial());
}

#[test]
fn depth_is_checked() {
    let c = build_complex(&fixtures::digraph("cube"), 2, false);
    assert!(homology_degree(&c, 1, Coefficients::Integers).is_ok());
    assert!(matches!(
        homology_degree(&c, 2, Coefficients::Integers),
        Err(HomologyError::InsufficientDepth { .. })
    ));
    let full = build_complex(&fixtures::digraph("T"), 2, false);
    assert!(homology_degree(&full, 2, Coefficients::Integers).is_ok());
}

#[test]
fn report_json_shape() {
    let h = path_homology(&fixtures::digraph("C3"), 1, Coefficients::Integers, true);
    let j = h.to_json();
    assert_eq!(j["reduced"], true);
    let degrees = j["degrees"].as_array().unwrap();
    assert!(degrees
        .iter()
        .any(|d| d["n"] == 1 && d["betti"] == 1 && d["torsion"].as_array().unwrap().is_empty()));
}

#[test]
fn rational_and_integer_bettis_agree_on_fixtures() {
    for f in fixtures::all() {
        let g = &f.digraph;
        let z = path_homology(g, 3, Coefficients::Integers, false);
        let q = path_homology(g, 3, Coefficients::Rationals, false);
        assert_eq!(z.bettis(), q.bettis(), "{}", f.name);
        assert!(q.degrees.iter().all(|d| d.torsion.is_empty()));
    }
}

#[test]
fn h0_counts_weak_components() {
    for i in 0..200 {
        let g = pathhom::fuzz::nth_digraph(7, i, 7, 0.2);
        let h = path_homology(&g, 0, Coefficients::Integers, false);
        assert_eq!(h.betti(0), common::weak_components(&g), "{}", g.name());
    }
}

#[test]
fn cohomology_routes_agree() {
    let c3 = fixtures::digraph("C3");
    assert_eq!(cohomology(&c3, 1).unwrap().quotient, vec![1, 1]);
    assert_eq!(
        cohomology(&fixtures::digraph("T"), 2).unwrap().quotient,
        vec![1, 0, 0]
    );
    let c3c3 = cartesian_product(&c3, &c3);
    assert_eq!(cohomology(&c3c3, 2).unwrap().quotient, vec![1, 2, 1]);
    for f in fixtures::all() {
        let r = cohomology(&f.digraph, 3).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        assert_eq!(r.quotient, r.dual, "{}", f.name);
        let ranks = build_complex(&f.digraph, 3, false).ranks();
        assert_eq!(r.cochain_dims, ranks, "{}", f.name);
    }
}

#[test]
fn quotient_cocycles_pair_with_homology() {
    let c3 = fixtures::digraph("C3");
    let q = QuotientCochains::build(&c3, 2);
    let reps = q.cocycle_representatives(1);
    assert_eq!(reps.len(), 1);
    let cycle = pathhom::chain::int_chain(&[(1, &["0", "1"]), (1, &["1", "2"]), (1, &["2", "0"])]);
    assert!(!pathhom::chain::pair(&reps[0], &cycle).unwrap().is_zero());
}

#[test]
fn kunneth_on_small_factors() {
    let factors: Vec<Digraph> = vec![
        point(),
        interval(),
        fixtures::digraph("T"),
        fixtures::digraph("C3"),
    ];
    for g in &factors {
        for h in &factors {
            let bg = rational_bettis(g, 3);
            let bh = rational_bettis(h, 3);
            let conv: Vec<usize> = (0..=3)
                .map(|k| (0..=k).map(|i| bg[i] * bh[k - i]).sum())
                .collect();
            let direct = rational_bettis(&cartesian_product(g, h), 3);
            assert_eq!(direct, conv, "{} ⊡ {}", g.name(), h.name());
            assert!(kunneth_check(g, h, 3).holds);
        }
    }
    let c3 = fixtures::digraph("C3");
    assert_eq!(
        rational_bettis(&cartesian_product(&c3, &c3), 2),
        vec![1, 2, 1]
    );
    assert_eq!(
        rational_bettis(&cartesian_product(&fixtures::digraph("T"), &c3), 2),
        vec![1, 1, 0]
    );
}

#[test]
fn homology_of_complex_matches_path_homology() {
    let g = fixtures::digraph("C4");
    let c = build_complex(&g, 3, false);
    let a = homology(&c, Coefficients::Integers);
    let b = path_homology(&g, 2, Coefficients::Integers, false);
    assert_eq!(a.bettis()[..3], b.bettis()[..3]);
}
