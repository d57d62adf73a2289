use std::collections::BTreeMap;

use kempe_core::exactfield::{FieldSpec, Scalar};
use kempe_core::graphalg::{
    enumerate_noncrossing, enumerate_spanning, plucker_step, straighten, straighten_by_solve, GraphMonomial,
    GraphPolynomial, Permutation, ValenceVector,
};
use kempe_core::invring::bracket_expand;
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;

fn raw_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2..=max_n).prop_flat_map(move |n| {
        let edge = (1..=n, 1..=n).prop_filter("loop", |(a, b)| a != b);
        (Just(n), prop::collection::vec(edge, 1..=max_edges))
    })
}

fn polynomial_expansion(p: &GraphPolynomial) -> BTreeMap<u128, Scalar> {
    let mut acc: BTreeMap<u128, Scalar> = BTreeMap::new();
    for (g, c) in p.terms() {
        for (k, e) in bracket_expand(g).unwrap().terms {
            let term = c * &p.field().from_i128(e);
            let sum = match acc.remove(&k) {
                Some(old) => &old + &term,
                None => term,
            };
            if !sum.is_zero() {
                acc.insert(k, sum);
            }
        }
    }
    acc
}

fn monomial_expansion(g: &GraphMonomial) -> BTreeMap<u128, Scalar> {
    polynomial_expansion(&GraphPolynomial::from_monomial(g, Q))
}

/// Random homogeneous polynomial: a random multigraph plus a few other graphs
/// of the same valence, with small signed coefficients.
fn random_polynomial() -> impl Strategy<Value = GraphPolynomial> {
    (raw_graph(8, 6), any::<u64>(), prop::collection::vec(-3i64..=3, 1..=4)).prop_map(|((n, edges), pick, coeffs)| {
        let base = GraphMonomial::normalize(n, &edges).unwrap();
        let v = base.valence();
        let pool = enumerate_spanning(n, &v, 100_000).graphs;
        let mut p = GraphPolynomial::zero(n, Q);
        p.add_term(&base, &Q.from_i64(coeffs[0])).unwrap();
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            let g = &pool[(pick as usize).wrapping_mul(k * 7919 + 1) % pool.len()];
            p.add_term(g, &Q.from_i64(*c)).unwrap();
        }
        p
    })
}

fn degree_bounded(p: &GraphPolynomial) -> bool {
    p.valence().map(|v| v.0.iter().all(|&d| d <= 3)).unwrap_or(true)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn flipping_an_edge_twice_is_identity((n, edges) in raw_graph(8, 6), idx in any::<prop::sample::Index>()) {
        let g = GraphMonomial::normalize(n, &edges).unwrap();
        let i = idx.index(edges.len());
        let mut flipped = edges.clone();
        flipped[i] = (edges[i].1, edges[i].0);
        let once = GraphMonomial::normalize(n, &flipped).unwrap();
        prop_assert_eq!(&once, &g.negated());
        flipped[i] = edges[i];
        prop_assert_eq!(GraphMonomial::normalize(n, &flipped).unwrap(), g);
    }

    #[test]
    fn relabeling_commutes_with_expansion((n, edges) in raw_graph(6, 5), seed in any::<u64>()) {
        let g = GraphMonomial::normalize(n, &edges).unwrap();
        let mut images: Vec<usize> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (s >> 33) as usize % (i + 1));
        }
        let sigma = Permutation::from_images(images).unwrap();
        let moved = bracket_expand(&g.apply_permutation(&sigma).unwrap()).unwrap();
        let mut expected = BTreeMap::new();
        for (key, c) in bracket_expand(&g).unwrap().terms {
            let mut k = 0u128;
            for i in 1..=n {
                let e = (key >> (8 * (i - 1))) & 0xff;
                k |= e << (8 * (sigma.apply(i) - 1));
            }
            expected.insert(k, c);
        }
        prop_assert_eq!(moved.terms, expected);
    }

    #[test]
    fn plucker_step_preserves_expansion(
        n in 4usize..=8,
        quad in prop::sample::subsequence((1..=8usize).collect::<Vec<_>>(), 4),
        (_, extra) in raw_graph(8, 3),
    ) {
        let [a, b, c, d] = [quad[0], quad[1], quad[2], quad[3]];
        prop_assume!(d <= n);
        let mut edges = vec![(a, c), (d, b)];
        edges.extend(extra.into_iter().filter(|(x, y)| *x <= n && *y <= n));
        let g = GraphMonomial::normalize(n, &edges).unwrap();
        let crossings = g.crossings();
        prop_assert!(!crossings.is_empty());
        for pair in crossings {
            let p = plucker_step(&g, pair, Q).unwrap();
            prop_assert_eq!(polynomial_expansion(&p), monomial_expansion(&g));
        }
    }

    #[test]
    fn straightening_matches_linear_solve(p in random_polynomial().prop_filter("degree", degree_bounded)) {
        let s = straighten(&p).unwrap();
        prop_assert!(s.terms().keys().all(|g| g.is_noncrossing()));
        prop_assert_eq!(&s, &straighten_by_solve(&p).unwrap());
        prop_assert_eq!(polynomial_expansion(&s), polynomial_expansion(&p));
    }
}

#[test]
fn noncrossing_counts_are_catalan() {
    let catalan = [1usize, 2, 5, 14, 42, 132];
    for (k, &c) in catalan.iter().enumerate() {
        let n = 2 * (k + 1);
        assert_eq!(enumerate_noncrossing(n, &ValenceVector::uniform(n, 1)).len(), c, "n = {n}");
    }
}

#[test]
fn oracle_examples() {
    let crossing = GraphPolynomial::parse("n=4; 1-3 2-4", Q).unwrap();
    assert_eq!(straighten_by_solve(&crossing).unwrap().to_string(), "+1·[1-2 3-4] +1·[1-4 2-3]");
    let flat = GraphPolynomial::parse("n=6; +2·[1-2 3-4 5-6]", Q).unwrap();
    assert_eq!(straighten_by_solve(&flat).unwrap(), flat);
    let signed = GraphPolynomial::parse("n=4; [1-2 3-4] - [1-3 2-4] + [1-4 2-3]", Q).unwrap();
    assert!(straighten_by_solve(&signed).unwrap().is_zero());
}

#[test]
fn double_edge_sign_flip() {
    let p = GraphPolynomial::parse("n=2; 1-2 2-1", Q).unwrap();
    assert_eq!(straighten(&p).unwrap().to_string(), "−1·[1-2 1-2]");
}
