//! Property tests for the algebraic invariants that hold across modules.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use weylpath::weyl::{multiply, rewrite};
use weylpath::{
    enumerate_all_decompositions, enumerate_principal, stirling_count, stirling_recurrence,
    Edge, LabeledDigraph, Permutation, VertexMultiset, WeylElement, WeylMonomial,
};

fn multiset_strategy() -> impl Strategy<Value = VertexMultiset> {
    prop::collection::vec(1u32..=6, 0..8).prop_map(VertexMultiset::from_elements)
}

fn graph_strategy(n_max: u32, m_max: usize) -> impl Strategy<Value = LabeledDigraph> {
    (1..=n_max).prop_flat_map(move |n| {
        prop::collection::vec((1..=n, 1..=n), 0..=m_max).prop_map(move |pairs| {
            LabeledDigraph::blockless(
                n,
                pairs.into_iter().map(|(t, h)| Edge::new(t, h)).collect(),
            )
            .expect("vertices in range")
        })
    })
}

fn blocked_graph_strategy(n_max: u32, m_max: usize) -> impl Strategy<Value = LabeledDigraph> {
    (1..=n_max, 1..=m_max).prop_flat_map(move |(n, m)| {
        (
            prop::collection::vec((1..=n, 1..=n), m),
            prop::collection::vec(prop::bool::ANY, m),
        )
            .prop_map(move |(pairs, cuts)| {
                let edges: Vec<Edge> = pairs.into_iter().map(|(t, h)| Edge::new(t, h)).collect();
                // Cuts decide block boundaries; the first edge always opens one.
                let mut sizes = Vec::new();
                for (k, cut) in cuts.iter().enumerate() {
                    if k == 0 || *cut {
                        sizes.push(1);
                    } else {
                        *sizes.last_mut().unwrap() += 1;
                    }
                }
                LabeledDigraph::with_block_sizes(n, edges, &sizes).expect("cover by construction")
            })
    })
}

fn permutation_strategy(m: usize) -> impl Strategy<Value = Permutation> {
    // Argsort of random keys; ties break by position, still a bijection.
    prop::collection::vec(any::<u64>(), m).prop_map(|keys| {
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by_key(|&i| keys[i]);
        Permutation::from_images(idx.into_iter().map(|i| i as u32 + 1).collect())
            .expect("argsort is a bijection")
    })
}

fn graph_with_two_perms() -> impl Strategy<Value = (LabeledDigraph, Permutation, Permutation)> {
    graph_strategy(4, 6).prop_flat_map(|g| {
        let m = g.edge_count();
        (Just(g), permutation_strategy(m), permutation_strategy(m))
    })
}

fn monomial_strategy(n: usize, max_exp: u32) -> impl Strategy<Value = WeylMonomial> {
    (
        prop::collection::vec(0..=max_exp, n),
        prop::collection::vec(0..=max_exp, n),
    )
        .prop_map(|(alpha, beta)| WeylMonomial::new(alpha, beta).expect("equal lengths"))
}

fn element_strategy(n: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((monomial_strategy(n, 2), -3i64..=3), 0..4).prop_map(move |terms| {
        let mut e = WeylElement::zero(n);
        for (m, c) in terms {
            e.add_term(m, BigInt::from(c));
        }
        e
    })
}

proptest! {
    #[test]
    fn merge_commutative_associative(a in multiset_strategy(), b in multiset_strategy(), c in multiset_strategy()) {
        prop_assert_eq!(a.merge(&b), b.merge(&a));
        prop_assert_eq!(a.merge(&b).merge(&c), a.merge(&b.merge(&c)));
    }

    #[test]
    fn difference_inverts_merge(a in multiset_strategy(), x in multiset_strategy()) {
        prop_assert_eq!(a.merge(&x).difference(&x), a);
    }

    #[test]
    fn degree_multisets_have_edge_count_size(g in graph_strategy(5, 10)) {
        let m = g.edge_count() as u64;
        prop_assert_eq!(g.out_multiset().len(), m);
        prop_assert_eq!(g.in_multiset().len(), m);
    }

    #[test]
    fn label_permutation_is_right_action((g, sigma, tau) in graph_with_two_perms()) {
        let lhs = g.permute_labels(&sigma).unwrap().permute_labels(&tau).unwrap();
        let rhs = g.permute_labels(&sigma.compose(&tau).unwrap()).unwrap();
        prop_assert_eq!(lhs.edges(), rhs.edges());
        // Round trip through the inverse.
        let back = g.permute_labels(&sigma).unwrap().permute_labels(&sigma.inverse()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sink_identity_and_stirling_laws(g in blocked_graph_strategy(4, 6)) {
        let all = enumerate_principal(&g);
        // The full out-multiset is realized as sources exactly once.
        prop_assert_eq!(stirling_count(&g, &g.out_multiset()), 1u32.into());
        for d in &all {
            let i = d.sources(&g);
            let j = d.sinks(&g);
            prop_assert_eq!(g.sinks_for_sources(&i), Some(j));
        }
        // Monotonicity: a realizable source set stays realizable after
        // adding any available vertex.
        let v_out = g.out_multiset();
        for d in all.iter().take(8) {
            let i = d.sources(&g);
            for (v, _) in v_out.iter_counts() {
                let bigger = i.merge(&VertexMultiset::singleton(v));
                if v_out.contains(&bigger) && bigger != i {
                    prop_assert!(
                        stirling_count(&g, &bigger) > 0u32.into(),
                        "monotonicity failed adding {} to {}", v, i
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_equals_enumeration(g in blocked_graph_strategy(4, 7)) {
        for i in g.out_multiset().sub_multisets() {
            prop_assert_eq!(stirling_recurrence(&g, &i), stirling_count(&g, &i));
        }
    }

    #[test]
    fn principal_decompositions_are_the_increasing_ones(g in graph_strategy(3, 5)) {
        for i in g.out_multiset().sub_multisets() {
            let all = enumerate_all_decompositions(&g, &i).unwrap();
            let increasing: Vec<_> = all.iter().filter(|d| d.is_principal()).cloned().collect();
            let principal: Vec<_> = enumerate_principal(&g)
                .into_iter()
                .filter(|d| d.sources(&g) == i)
                .collect();
            prop_assert_eq!(increasing, principal);
        }
    }

    #[test]
    fn multiply_is_associative(
        a in element_strategy(3),
        b in element_strategy(3),
        c in element_strategy(3),
    ) {
        let lhs = multiply(&multiply(&a, &b).unwrap(), &c).unwrap();
        let rhs = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_form_matches_one_swap_rewriting(
        a in monomial_strategy(2, 3),
        b in monomial_strategy(2, 3),
    ) {
        let ea = WeylElement::from_monomial(a);
        let eb = WeylElement::from_monomial(b);
        prop_assert_eq!(
            multiply(&ea, &eb).unwrap(),
            rewrite::product(&ea, &eb).unwrap()
        );
    }

    #[test]
    fn element_parse_print_round_trip(e in element_strategy(4)) {
        let printed = e.to_string();
        let parsed = WeylElement::parse(&printed, 4).unwrap();
        prop_assert_eq!(parsed, e);
    }

    #[test]
    fn zero_length_products_expand_equally(
        ws in prop::collection::vec(
            (prop::collection::vec(1u32..=3, 1..=2), prop::collection::vec(1u32..=3, 1..=2))
                .prop_filter("length zero", |(xs, ds)| xs.len() == ds.len())
                .prop_map(|(xs, ds)| WeylMonomial::from_indices(3, &xs, &ds).unwrap()),
            1..=4
        )
    ) {
        let by_product = weylpath::normal_order_product(&ws).unwrap();
        let by_graph = weylpath::graph_expand(&ws).unwrap();
        prop_assert_eq!(by_product, by_graph);
    }
}

#[test]
fn stirling_count_rejects_oversized_sources_quietly() {
    let g = LabeledDigraph::blockless(2, vec![Edge::new(1, 2), Edge::new(2, 1)]).unwrap();
    let i = VertexMultiset::from_elements([1, 1, 1]);
    assert!(stirling_count(&g, &i).is_zero());
    assert!(stirling_recurrence(&g, &i).is_zero());
}
