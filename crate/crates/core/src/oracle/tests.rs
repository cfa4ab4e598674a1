use super::fixtures::*;
use super::*;
use crate::connectivity::block_cut_tree;
use proptest::prelude::*;

fn inc(g: &BidirectedGraph, name: &str, sign: char) -> Incidence {
    let v = g.names().iter().position(|n| n == name).unwrap() as VertexId;
    Incidence::new(v, Sign::from_char(sign).unwrap())
}

fn vid(g: &DirectedGraph, name: &str) -> VertexId {
    g.names().iter().position(|n| n == name).unwrap() as VertexId
}

#[test]
fn bubble_cycle_snarls() {
    let g = bubble_cycle();
    assert!(is_snarl_bruteforce(&g, inc(&g, "s", '+'), inc(&g, "t", '-')));
    assert!(!is_snarl_bruteforce(&g, inc(&g, "s", '+'), inc(&g, "a", '+')));
    let expected: BTreeSet<_> = [
        ordered_pair(inc(&g, "s", '+'), inc(&g, "t", '-')),
        ordered_pair(inc(&g, "a", '+'), inc(&g, "b", '+')),
        ordered_pair(inc(&g, "a", '-'), inc(&g, "b", '-')),
    ]
    .into();
    assert_eq!(all_snarls_bruteforce(&g).unwrap(), expected);
}

#[test]
fn single_edge_and_empty() {
    let g = BidirectedGraph::from_edges(2, [(0, Sign::Plus, 1, Sign::Minus)]);
    let expected: BTreeSet<_> = [ordered_pair(Incidence::plus(0), Incidence::minus(1))].into();
    assert_eq!(all_snarls_bruteforce(&g).unwrap(), expected);
    assert!(all_snarls_bruteforce(&BidirectedGraph::new(0)).unwrap().is_empty());
}

#[test]
fn same_vertex_is_never_a_snarl() {
    let g = bubble_cycle();
    assert!(!is_snarl_bruteforce(&g, inc(&g, "s", '+'), inc(&g, "s", '-')));
}

#[test]
fn refuses_large_inputs() {
    let g = BidirectedGraph::new(ORACLE_LIMIT + 1);
    assert!(matches!(all_snarls_bruteforce(&g), Err(Error::OracleTooLarge { .. })));
    let d = DirectedGraph::new(ORACLE_LIMIT + 1);
    assert!(matches!(all_superbubbles_bruteforce(&d), Err(Error::OracleTooLarge { .. })));
}

#[test]
fn dag_in_cycle_superbubbles() {
    let g = dag_in_cycle();
    let (s, t, u, w) = (vid(&g, "s"), vid(&g, "t"), vid(&g, "u"), vid(&g, "w"));
    assert!(is_superbubble_bruteforce(&g, s, t));
    assert!(!is_superbubble_bruteforce(&g, s, s));
    // the return side splits into a trivial bubble and a small one around w
    assert!(is_superbubble_bruteforce(&g, t, u));
    assert!(is_superbubble_bruteforce(&g, u, s));
    assert!(!is_superbubble_bruteforce(&g, u, w));
    let expected: BTreeSet<_> = [(s, t), (t, u), (u, s)].into();
    assert_eq!(all_superbubbles_bruteforce(&g).unwrap(), expected);
}

#[test]
fn shared_arc_cycles_feedback() {
    let g = shared_arc_cycles();
    let arc = |a: &str, b: &str| {
        let (a, b) = (vid(&g, a), vid(&g, b));
        g.arcs().iter().position(|&x| x == (a, b)).unwrap() as EdgeId
    };
    let expected: BTreeSet<_> = [arc("a", "b"), arc("b", "c")].into();
    assert_eq!(feedback_arcs_bruteforce(&g), Some(expected));
    assert_eq!(feedback_arcs_bruteforce(&DirectedGraph::from_arcs(3, [(0, 1), (1, 2)])), None);
    let two = DirectedGraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)]);
    assert_eq!(feedback_arcs_bruteforce(&two), Some(BTreeSet::new()));
}

#[test]
fn separation_pairs_of_small_graphs() {
    let square = UndirectedMultigraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
    assert_eq!(separation_pairs_bruteforce(&square), [(0, 2), (1, 3)].into());
    let k4 = UndirectedMultigraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert!(separation_pairs_bruteforce(&k4).is_empty());
    let g = double_k4();
    let (b, d) = (1, 3);
    assert_eq!(g.name(b), "b");
    assert_eq!(g.name(d), "d");
    assert_eq!(separation_pairs_bruteforce(&g.underlying()), [(b, d)].into());
}

#[test]
fn generator_is_deterministic() {
    let spec = GeneratorSpec::new(Shape::Biconnected, 5..=5, 1);
    let a = generate_undirected(&spec).unwrap();
    let b = generate_undirected(&spec).unwrap();
    assert_eq!(a.edges(), b.edges());
    assert!(is_biconnected(&a));
}

#[test]
fn dag_shape_is_acyclic() {
    for seed in 0..50 {
        let g = generate_directed(&GeneratorSpec::new(Shape::Dag, 2..=10, seed).extra_edges(0..=10)).unwrap();
        assert_eq!(feedback_arcs_bruteforce(&g), None);
    }
}

#[test]
fn chain_of_blocks_has_requested_blocks() {
    for seed in 0..20 {
        let g = generate_undirected(&GeneratorSpec::new(Shape::ChainOfBlocks(3), 7..=15, seed)).unwrap();
        let bct = block_cut_tree(&g);
        assert_eq!(bct.blocks.len(), 3);
        assert!(is_connected(&g));
    }
    assert!(generate_undirected(&GeneratorSpec::new(Shape::ChainOfBlocks(3), 6..=6, 0)).is_err());
}

fn small_bidirected() -> impl Strategy<Value = BidirectedGraph> {
    (1usize..=5).prop_flat_map(|n| {
        let inc = (0..n as VertexId, any::<bool>());
        proptest::collection::vec((inc.clone(), inc), 0..=7).prop_map(move |es| {
            let sign = |b: bool| if b { Sign::Plus } else { Sign::Minus };
            BidirectedGraph::from_edges(n, es.into_iter().map(|((u, a), (v, b))| (u, sign(a), v, sign(b))))
        })
    })
}

fn small_directed() -> impl Strategy<Value = DirectedGraph> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec((0..n as VertexId, 0..n as VertexId), 0..=10)
            .prop_map(move |arcs| DirectedGraph::from_arcs(n, arcs))
    })
}

proptest! {
    #[test]
    fn snarl_test_is_symmetric(g in small_bidirected(), p in 0usize..10, q in 0usize..10) {
        let n = g.vertex_count();
        let at = |k: usize| Incidence::new((k / 2 % n) as VertexId, if k % 2 == 0 { Sign::Plus } else { Sign::Minus });
        let (a, b) = (at(p), at(q));
        prop_assert_eq!(is_snarl_bruteforce(&g, a, b), is_snarl_bruteforce(&g, b, a));
    }

    #[test]
    fn table_matches_pairwise_test(g in small_bidirected()) {
        let all = all_snarls_bruteforce(&g).unwrap();
        let n = g.vertex_count() as VertexId;
        for u in 0..n {
            for v in u + 1..n {
                for du in Sign::BOTH {
                    for dv in Sign::BOTH {
                        let (a, b) = (Incidence::new(u, du), Incidence::new(v, dv));
                        prop_assert_eq!(all.contains(&ordered_pair(a, b)), is_snarl_bruteforce(&g, a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn superbubble_definitions_agree(g in small_directed()) {
        let n = g.vertex_count() as VertexId;
        for s in 0..n {
            for t in 0..n {
                prop_assert_eq!(is_superbubble_bruteforce(&g, s, t), is_superbubble_by_paths(&g, s, t), "pair {} {}", s, t);
            }
        }
    }

    #[test]
    fn superbubbles_have_no_back_arc(g in small_directed()) {
        for (s, t) in all_superbubbles_bruteforce(&g).unwrap() {
            prop_assert!(!g.has_arc(t, s));
        }
    }
}
