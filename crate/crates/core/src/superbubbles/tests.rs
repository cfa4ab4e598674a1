use super::*;
use crate::oracle::{self, fixtures, GeneratorSpec, Shape};
use proptest::prelude::*;

fn named(g: &DirectedGraph, found: &[(VertexId, VertexId)]) -> Vec<(String, String)> {
    found.iter().map(|&(s, t)| (g.name(s).to_string(), g.name(t).to_string())).collect()
}

fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut v: Vec<_> = list.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
    v.sort();
    v
}

#[test]
fn dag_in_cycle_pin() {
    let g = fixtures::dag_in_cycle();
    let mut got = named(&g, &find_superbubbles(&g));
    got.sort();
    assert_eq!(got, pairs(&[("s", "t"), ("t", "u"), ("u", "s")]));
}

#[test]
fn diamond() {
    let g = DirectedGraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]);
    assert_eq!(find_superbubbles(&g), [(0, 3)]);
}

#[test]
fn single_arc_is_trivial() {
    let g = DirectedGraph::from_arcs(2, [(0, 1)]);
    assert_eq!(find_superbubbles(&g), [(0, 1)]);
    let g = DirectedGraph::from_arcs(2, [(0, 1), (1, 0)]);
    assert!(find_superbubbles(&g).is_empty());
}

#[test]
fn loops_block_their_vertex() {
    let g = DirectedGraph::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 1)]);
    assert!(find_superbubbles(&g).is_empty());
    let g = DirectedGraph::from_arcs(3, [(0, 1), (1, 2), (2, 2)]);
    assert_eq!(find_superbubbles(&g), [(0, 1)]);
}

#[test]
fn chained_bubbles() {
    // two diamonds glued at vertex 3, then a tail arc
    let g = DirectedGraph::from_arcs(8, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 7)]);
    assert_eq!(find_superbubbles(&g), [(0, 3), (3, 6), (6, 7)]);
}

#[test]
fn nested_bubble_inside_block() {
    // 0 -> {1, 2} -> 3 sits on one branch of 4 -> {0, 5} -> 6
    let g = DirectedGraph::from_arcs(7, [(4, 0), (0, 1), (0, 2), (1, 3), (2, 3), (3, 6), (4, 5), (5, 6)]);
    let got = find_superbubbles(&g);
    assert_eq!(got, oracle::all_superbubbles_bruteforce(&g).unwrap().into_iter().collect::<Vec<_>>());
    assert!(got.contains(&(0, 3)) && got.contains(&(4, 6)));
}

#[test]
fn rigid_side_with_cycle_outside() {
    let g = fixtures::shared_arc_cycles();
    let got = find_superbubbles(&g);
    assert_eq!(got, oracle::all_superbubbles_bruteforce(&g).unwrap().into_iter().collect::<Vec<_>>());
}

fn check(g: &DirectedGraph) -> Result<(), TestCaseError> {
    let got: std::collections::BTreeSet<_> = find_superbubbles(g).into_iter().collect();
    let want = oracle::all_superbubbles_bruteforce(g).map_err(|e| TestCaseError::fail(format!("{e}")))?;
    prop_assert_eq!(got, want, "arcs {:?}", g.arcs());
    Ok(())
}

/// Orients an undirected graph mostly along a random vertex order.
fn mostly_forward(h: &UndirectedMultigraph, seed: u64, back: f64) -> DirectedGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = h.vertex_count();
    let mut rank: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(&mut rank[..], &mut rng);
    let mut g = DirectedGraph::new(n);
    for &[u, v] in h.edges() {
        let (a, b) = if rank[u as usize] < rank[v as usize] { (u, v) } else { (v, u) };
        if rng.random_bool(back) {
            g.add_arc(b, a);
        } else {
            g.add_arc(a, b);
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn matches_oracle_on_arbitrary_graphs(n in 1u32..=7, arcs in proptest::collection::vec((0u32..7, 0u32..7), 0..14)) {
        let g = DirectedGraph::from_arcs(n as usize, arcs.into_iter().map(|(u, v)| (u % n, v % n)));
        check(&g)?;
    }

    #[test]
    fn matches_oracle_on_dags(seed in any::<u64>(), n in 2usize..=9, extra in 0usize..=6) {
        let spec = GeneratorSpec::new(Shape::Dag, n..=n, seed).extra_edges(extra..=extra);
        check(&oracle::generate_directed(&spec).unwrap())?;
    }

    #[test]
    fn matches_oracle_on_near_dags(seed in any::<u64>(), n in 3usize..=9, extra in 0usize..=5, back in 0.0f64..0.3) {
        let spec = GeneratorSpec::new(Shape::Biconnected, n..=n, seed).extra_edges(extra..=extra);
        let h = oracle::generate_undirected(&spec).unwrap();
        check(&mostly_forward(&h, seed ^ 0x5eed, back))?;
    }

    #[test]
    fn matches_oracle_on_block_chains(seed in any::<u64>(), blocks in 1usize..=3, n in 4usize..=9, back in 0.0f64..0.3) {
        let spec = GeneratorSpec::new(Shape::ChainOfBlocks(blocks), n..=n, seed).extra_edges(0..=3);
        let Ok(h) = oracle::generate_undirected(&spec) else { return Ok(()) };
        check(&mostly_forward(&h, seed, back))?;
    }
}
