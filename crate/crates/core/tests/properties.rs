use std::collections::BTreeSet;

use hrl_core::bounds::{cycle_threshold, fg_q, mc_threshold, ComponentBound, ComponentParams};
use hrl_core::generators::{complete, random_hypergraph, Seed};
use hrl_core::harness::{
    format_coloring, format_hypergraph, format_partition, parse_coloring, parse_hypergraph, parse_partition,
};
use hrl_core::hypergraph::components;
use hrl_core::monochromatic::{mc, mc_r_exact, mc_r_localsearch, SearchBudget};
use hrl_core::{Color, Coloring, Hypergraph, Partition, Rational, Scalar, Vertex};
use proptest::prelude::*;

/// Random `k`-uniform hypergraphs on `n` vertices.
fn instance(k: usize, n: usize, max_edges: usize) -> impl Strategy<Value = Hypergraph> {
    proptest::collection::btree_set(proptest::sample::subsequence((0..n as Vertex).collect::<Vec<_>>(), k), 0..=max_edges)
        .prop_map(move |edges: BTreeSet<Vec<Vertex>>| Hypergraph::new(k, n, edges).unwrap())
}

fn colored(k: usize, n: usize, max_edges: usize, r: Color) -> impl Strategy<Value = (Hypergraph, Coloring)> {
    instance(k, n, max_edges).prop_flat_map(move |h| {
        let m = h.edge_count();
        proptest::collection::vec(1..=r, m).prop_map(move |c| (h.clone(), Coloring::new(r, c).unwrap()))
    })
}

/// Component orders of color `c` by repeated flooding over edges.
fn flood_orders(h: &Hypergraph, coloring: &Coloring, c: Color) -> Vec<usize> {
    let mut label = vec![usize::MAX; h.n()];
    let mut next = 0;
    let edges: Vec<&[Vertex]> = h.edges().enumerate().filter(|(i, _)| coloring.color(*i) == c).map(|(_, e)| e).collect();
    for &e in &edges {
        if label[e[0] as usize] != usize::MAX {
            continue;
        }
        label[e[0] as usize] = next;
        let mut changed = true;
        while changed {
            changed = false;
            for f in &edges {
                if f.iter().any(|&v| label[v as usize] == next) && f.iter().any(|&v| label[v as usize] != next) {
                    f.iter().for_each(|&v| label[v as usize] = next);
                    changed = true;
                }
            }
        }
        next += 1;
    }
    let mut orders: Vec<usize> = (0..next).map(|l| label.iter().filter(|&&x| x == l).count()).collect();
    orders.sort_unstable();
    orders
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn construction_ignores_input_order(h in instance(3, 8, 20), seed in any::<u64>()) {
        let mut edges: Vec<Vec<Vertex>> = h.edges().map(|e| e.to_vec()).collect();
        let mut s = seed;
        for e in edges.iter_mut() {
            e.rotate_left((s % 3) as usize);
            s = s.rotate_left(7) ^ 0x9e37;
        }
        edges.reverse();
        prop_assert_eq!(Hypergraph::new(3, 8, &edges).unwrap(), h);
    }

    #[test]
    fn components_match_flooding((h, c) in colored(3, 9, 16, 3)) {
        for color in 1..=3 {
            let dec = components(&h, &c, color).unwrap();
            let mut orders: Vec<usize> = dec.components.iter().map(Vec::len).collect();
            orders.sort_unstable();
            prop_assert_eq!(&orders, &flood_orders(&h, &c, color));
            let union: BTreeSet<Vertex> = dec.components.iter().flatten().copied().collect();
            prop_assert_eq!(union.len(), orders.iter().sum::<usize>());
            prop_assert_eq!(union.into_iter().collect::<Vec<_>>(), dec.covered.clone());
        }
    }

    #[test]
    fn adding_an_edge_never_lowers_mc((h, c) in colored(3, 8, 12, 2), extra in proptest::sample::subsequence((0..8 as Vertex).collect::<Vec<_>>(), 3), color in 1..=2u32) {
        prop_assume!(!h.contains_edge(&extra));
        let before = mc(&h, &c).unwrap().value;
        let mut edges: Vec<Vec<Vertex>> = h.edges().map(|e| e.to_vec()).collect();
        edges.push(extra.clone());
        let bigger = Hypergraph::new(3, 8, &edges).unwrap();
        let colors: Vec<Color> = bigger
            .edges()
            .map(|e| if e == extra.as_slice() { color } else { c.color(h.edge_index(e).unwrap()) })
            .collect();
        let after = mc(&bigger, &Coloring::new(2, colors).unwrap()).unwrap().value;
        prop_assert!(after >= before);
    }

    #[test]
    fn mc_ignores_color_names((h, c) in colored(3, 8, 14, 3), perm in Just(vec![1u32, 2, 3]).prop_shuffle()) {
        let renamed = c.permuted(&perm).unwrap();
        prop_assert_eq!(mc(&h, &c).unwrap().value, mc(&h, &renamed).unwrap().value);
    }

    #[test]
    fn exact_below_every_coloring_and_search((h, c) in colored(3, 7, 9, 2), seed in any::<u64>()) {
        let exact = mc_r_exact(&h, 2, &SearchBudget::default()).unwrap();
        let sharded = mc_r_exact(&h, 2, &SearchBudget { shards: 4, ..SearchBudget::default() }).unwrap();
        prop_assert_eq!(exact.value, sharded.value);
        prop_assert_eq!(&exact.coloring, &sharded.coloring);
        prop_assert!(exact.value <= mc(&h, &c).unwrap().value);
        let local = mc_r_localsearch(&h, 2, 2, Seed(seed)).unwrap();
        prop_assert!(local.value >= exact.value);
        prop_assert_eq!(mc(&h, local.coloring.as_ref().unwrap()).unwrap().value, local.value);
    }

    #[test]
    fn text_formats_round_trip((h, c) in colored(4, 10, 25, 5), sizes in proptest::collection::vec(1usize..5, 1..4)) {
        prop_assert_eq!(parse_hypergraph(&format_hypergraph(&h), "h").unwrap(), h);
        prop_assert_eq!(parse_coloring(&format_coloring(&c), "c").unwrap(), c);
        let mut next = 0;
        let parts: Vec<Vec<Vertex>> = sizes
            .iter()
            .map(|&s| {
                next += s;
                (next - s..next).map(|v| v as Vertex).collect()
            })
            .collect();
        let part = Partition::new(next, parts).unwrap();
        prop_assert_eq!(parse_partition(&format_partition(&part), "p", Some(part.n())).unwrap(), part);
    }

    #[test]
    fn fg_q_is_least((k, r) in (2usize..6, 1u64..5000)) {
        let q = fg_q(k, r);
        let reach = |q: u64| (0..k as u32).map(|i| (q as u128).pow(i)).sum::<u128>();
        prop_assert!(r as u128 <= reach(q));
        prop_assert!(q == 1 || (r as u128) > reach(q - 1));
    }

    #[test]
    fn thresholds_grow_with_n((k, n, r) in (3usize..7, 7u64..500, 2u64..40)) {
        for bound in [ComponentBound::KColorsComplete, ComponentBound::KPlusOneComplete, ComponentBound::AffineQ] {
            let at = |n: u64| mc_threshold::<Rational>(bound, &ComponentParams { k, n, r: Some(r), eps: None }).unwrap().value;
            prop_assert!(at(n) <= at(n + 1));
        }
    }

    #[test]
    fn cycle_threshold_scalars_agree((k, n, num) in (2usize..8, 1u64..10_000, 0i64..1000)) {
        let exact = cycle_threshold(k, n, Rational::from_ratio(num, 1000)).unwrap();
        let real = cycle_threshold(k, n, num as f64 / 1000.0).unwrap();
        prop_assert_eq!(exact.degenerate, real.degenerate);
        prop_assert!((exact.value.as_f64() - real.value).abs() <= 1e-9 * n as f64);
    }
}

#[test]
fn generators_repeat_under_a_seed() {
    for s in 0..5 {
        let a = random_hypergraph(3, 25, 0.2, Seed(s)).unwrap();
        assert_eq!(a, random_hypergraph(3, 25, 0.2, Seed(s)).unwrap());
        assert_eq!(format_hypergraph(&a), format_hypergraph(&random_hypergraph(3, 25, 0.2, Seed(s)).unwrap()));
    }
    assert_ne!(random_hypergraph(3, 25, 0.2, Seed(1)).unwrap(), random_hypergraph(3, 25, 0.2, Seed(2)).unwrap());
}

#[test]
fn exact_k3_8_four_colors() {
    let h = complete(3, 8).unwrap();
    let res = mc_r_exact(&h, 4, &SearchBudget::default()).unwrap();
    assert_eq!(res.value, 6);
    assert_eq!(mc(&h, res.coloring.as_ref().unwrap()).unwrap().value, 6);
}

#[test]
fn local_search_reaches_six_on_k3_8() {
    let h = complete(3, 8).unwrap();
    let hits = (0..100).filter(|&s| mc_r_localsearch(&h, 4, 30, Seed(s)).unwrap().value <= 6).count();
    assert!(hits >= 90, "{hits}/100 runs reached 6");
}
