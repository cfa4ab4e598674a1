use super::*;
use crate::oracle::{self, fixtures, GeneratorSpec, Shape};
use proptest::prelude::*;

fn inc(g: &BidirectedGraph, name: &str, sign: char) -> Incidence {
    let v = g.names().iter().position(|n| n == name).unwrap() as VertexId;
    Incidence::new(v, Sign::from_char(sign).unwrap())
}

fn pair(g: &BidirectedGraph, a: (&str, char), b: (&str, char)) -> (Incidence, Incidence) {
    ordered_pair(inc(g, a.0, a.1), inc(g, b.0, b.1))
}

#[test]
fn bubble_cycle_representation() {
    let g = fixtures::bubble_cycle();
    let rep = find_snarls(&g);
    assert_eq!(rep.tip_sets, vec![vec![inc(&g, "s", '+'), inc(&g, "t", '-')]]);
    let expected = vec![pair(&g, ("a", '+'), ("b", '+')), pair(&g, ("a", '-'), ("b", '-'))];
    let mut got = rep.pairs.clone();
    got.sort();
    let mut want = expected;
    want.sort();
    assert_eq!(got, want);
    assert_eq!(rep.enumerate_pairs(), oracle::all_snarls_bruteforce(&g).unwrap());
}

#[test]
fn parallel_quad_keeps_only_the_wide_side() {
    let g = fixtures::parallel_quad();
    let all = find_snarls(&g).enumerate_pairs();
    assert!(all.contains(&pair(&g, ("u", '+'), ("v", '-'))));
    assert!(!all.contains(&pair(&g, ("u", '-'), ("v", '+'))));
    assert_eq!(all, oracle::all_snarls_bruteforce(&g).unwrap());
}

#[test]
fn double_k4_pairs_across_rigid_nodes() {
    let g = fixtures::double_k4();
    let all = find_snarls(&g).enumerate_pairs();
    assert!(all.contains(&pair(&g, ("b", '+'), ("d", '-'))));
    assert!(all.contains(&pair(&g, ("b", '-'), ("d", '+'))));
    assert_eq!(all, oracle::all_snarls_bruteforce(&g).unwrap());
}

#[test]
fn counts_on_both_sides_of_a_tree_edge() {
    let g = fixtures::double_k4();
    let tree = build_spqr(&g.underlying()).unwrap();
    let counts = incidence_counts(g.edges(), &tree);
    let b = inc(&g, "b", '+').vertex;
    assert_eq!(tree.tree_edges.len(), 1);
    let mut sides = [counts.child_side(&tree, 0, b), counts.parent_side(&tree, 0, b)];
    sides.sort();
    assert_eq!(sides, [[0, 2], [2, 0]]);
    let d = inc(&g, "d", '+').vertex;
    let (c, p) = (counts.child_side(&tree, 0, d), counts.parent_side(&tree, 0, d));
    assert_eq!([c[0] + p[0], c[1] + p[1]], counts.total(d));
}

#[test]
fn dangling_triangle_at_a_cutvertex() {
    let mut g = fixtures::bubble_cycle();
    let a = inc(&g, "a", '+').vertex;
    let p = g.add_vertex("p");
    let q = g.add_vertex("q");
    g.add_edge(Incidence::minus(a), Incidence::plus(p));
    g.add_edge(Incidence::minus(p), Incidence::plus(q));
    g.add_edge(Incidence::minus(q), Incidence::plus(a));
    let bct = block_cut_tree(&g.underlying());
    let square = bct.block_of_edge(0).unwrap();
    assert!(has_dangling(&g, &bct, square, a));
    let s = inc(&g, "s", '+').vertex;
    assert!(!has_dangling(&g, &bct, square, s));
}

#[test]
fn enumerate_expands_tip_sets() {
    let (a, b, c) = (Incidence::plus(0), Incidence::minus(1), Incidence::plus(2));
    let rep = SnarlRepresentation { tip_sets: vec![vec![a, b, c]], pairs: vec![] };
    assert_eq!(rep.enumerate_pairs(), [(a, b), (a, c), (b, c)].into());
    assert_eq!(rep.snarl_count(), 3);
    assert!(SnarlRepresentation::default().enumerate_pairs().is_empty());
}

#[test]
fn chain_splits_into_two_tip_sets() {
    // x+ g-, g+ y-: g is split and each side is a lone edge
    let g = BidirectedGraph::from_edges(3, [(0, Sign::Plus, 1, Sign::Minus), (1, Sign::Plus, 2, Sign::Minus)]);
    let rep = find_snarls(&g);
    assert_eq!(rep.tip_sets.len(), 2);
    assert!(rep.pairs.is_empty());
    assert_eq!(rep.enumerate_pairs(), oracle::all_snarls_bruteforce(&g).unwrap());
}

#[test]
fn loops_and_isolated_vertices() {
    let g = BidirectedGraph::from_edges(
        4,
        [(0, Sign::Plus, 1, Sign::Minus), (1, Sign::Plus, 1, Sign::Minus), (1, Sign::Plus, 2, Sign::Minus), (0, Sign::Minus, 0, Sign::Minus)],
    );
    assert_eq!(find_snarls(&g).enumerate_pairs(), oracle::all_snarls_bruteforce(&g).unwrap());
    assert!(find_snarls(&BidirectedGraph::new(3)).enumerate_pairs().is_empty());
}

fn check(g: &BidirectedGraph) -> Result<(), TestCaseError> {
    let rep = find_snarls(g);
    prop_assert_eq!(rep.enumerate_pairs(), oracle::all_snarls_bruteforce(g).unwrap());
    prop_assert!(rep.tip_count() <= 2 * g.vertex_count());
    prop_assert!(rep.pairs.len() <= 4 * (g.vertex_count() + g.edge_count()));
    Ok(())
}

fn arbitrary(max_n: u32, max_m: usize) -> impl Strategy<Value = BidirectedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let end = (0..n, any::<bool>());
        prop::collection::vec((end.clone(), end), 0..=max_m).prop_map(move |es| {
            let s = |b: bool| if b { Sign::Plus } else { Sign::Minus };
            BidirectedGraph::from_edges(n as usize, es.into_iter().map(|((u, a), (v, b))| (u, s(a), v, s(b))))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn matches_oracle_on_small_graphs(g in arbitrary(6, 9)) {
        check(&g)?;
    }

    #[test]
    fn matches_oracle_on_blocks(seed in any::<u64>(), n in 3usize..=9, extra in 0usize..=5, bias in 0.2f64..0.8) {
        let spec = GeneratorSpec::new(Shape::Biconnected, n..=n, seed).extra_edges(extra..=extra).plus_bias(bias);
        check(&oracle::generate_bidirected(&spec).unwrap())?;
    }

    #[test]
    fn matches_oracle_on_block_chains(seed in any::<u64>(), blocks in 1usize..=3, loops in any::<bool>()) {
        let spec = GeneratorSpec::new(Shape::ChainOfBlocks(blocks), 2 * blocks + 1..=9, seed).extra_edges(0..=3).loops(loops);
        check(&oracle::generate_bidirected(&spec).unwrap())?;
    }
}
