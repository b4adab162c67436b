use edgestat::census::census;
use edgestat::distribution::max_edges;
use edgestat::moments::{closed_form_moments, distribution_moments};
use edgestat::search::{symmetrization_step, EvalConfig};
use edgestat::{exact_distribution, naive_distribution, parse_graph6, write_graph6, Graph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut it = bits.into_iter();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn graph6_round_trip(g in graph(70)) {
        let s = write_graph6(&g);
        prop_assert!(s.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn gray_code_equals_naive(g in graph(10), k in 1usize..=10) {
        prop_assume!(k <= g.n());
        prop_assert_eq!(exact_distribution(&g, k).unwrap(), naive_distribution(&g, k).unwrap());
    }

    #[test]
    fn complement_mirrors_counts(g in graph(10), k in 1usize..=10) {
        prop_assume!(k <= g.n());
        let a = exact_distribution(&g, k).unwrap();
        let b = exact_distribution(&g.complement(), k).unwrap();
        let top = max_edges(k);
        for l in 0..=top {
            prop_assert_eq!(a.count(l), b.count(top - l));
        }
    }

    #[test]
    fn closed_forms_match_distribution(g in graph(9), k in 1usize..=9) {
        prop_assume!(k <= g.n());
        let d = exact_distribution(&g, k).unwrap();
        prop_assert_eq!(closed_form_moments(&g, k).unwrap(), distribution_moments(&d));
    }

    #[test]
    fn census_low_shapes_match_degrees(g in graph(14)) {
        let c = census(&g);
        let m = g.m() as u128;
        let cherries: u128 = g.degrees().iter().map(|&d| (d * d.saturating_sub(1) / 2) as u128).sum();
        prop_assert_eq!(c.get(edgestat::Shape::K2), m);
        prop_assert_eq!(c.get(edgestat::Shape::Cherry), cherries);
        prop_assert_eq!(c.get(edgestat::Shape::TwoK2), m * m.saturating_sub(1) / 2 - cherries);
    }

    #[test]
    fn symmetrization_creates_twin_pair(g in graph(8), k in 1usize..=8, l in 0usize..28) {
        prop_assume!(g.n() >= 2 && k <= g.n() && l <= max_edges(k));
        let s = symmetrization_step(&g, k, l, &EvalConfig::default()).unwrap();
        prop_assert_eq!(s.graph.n(), g.n());
        prop_assert_ne!(s.plus, s.minus);
        prop_assert!(!s.graph.has_edge(s.plus, s.minus));
        for x in (0..g.n()).filter(|&x| x != s.plus && x != s.minus) {
            prop_assert_eq!(s.graph.has_edge(s.plus, x), s.graph.has_edge(s.minus, x));
            // edges away from v- are untouched
            for y in (0..g.n()).filter(|&y| y != s.minus && y != x) {
                prop_assert_eq!(s.graph.has_edge(x, y), g.has_edge(x, y));
            }
        }
    }

    #[test]
    fn symm_diff_identity(g in graph(40)) {
        prop_assert_eq!(g.symm_diff_sum(), g.symm_diff_sum_identity());
    }
}
