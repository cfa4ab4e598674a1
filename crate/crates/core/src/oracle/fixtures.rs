//! Small named graphs used across tests and examples.

use crate::graph::{BidirectedGraph, DirectedGraph, Incidence, Sign, VertexId};

fn named(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn bidirected(names: &[&str], edges: &[(&str, char, &str, char)]) -> BidirectedGraph {
    let mut g = BidirectedGraph::with_names(named(names));
    let id = |n: &str| names.iter().position(|x| *x == n).unwrap() as VertexId;
    for &(u, du, v, dv) in edges {
        let a = Incidence::new(id(u), Sign::from_char(du).unwrap());
        let b = Incidence::new(id(v), Sign::from_char(dv).unwrap());
        g.add_edge(a, b);
    }
    g
}

fn directed(names: &[&str], arcs: &[(&str, &str)]) -> DirectedGraph {
    let mut g = DirectedGraph::with_names(named(names));
    let id = |n: &str| names.iter().position(|x| *x == n).unwrap() as VertexId;
    for &(u, v) in arcs {
        g.add_arc(id(u), id(v));
    }
    g
}

/// Two parallel paths `s -> a -> t` and `s -> b -> t`.
pub fn bubble_cycle() -> BidirectedGraph {
    bidirected(
        &["s", "a", "b", "t"],
        &[("s", '+', "a", '-'), ("s", '+', "b", '-'), ("a", '+', "t", '-'), ("b", '+', "t", '-')],
    )
}

/// Three parallel paths `u -> xi -> v` plus a return path through `y`.
pub fn parallel_quad() -> BidirectedGraph {
    let mut edges = Vec::new();
    for x in ["x1", "x2", "x3"] {
        edges.push(("u", '+', x, '-'));
        edges.push((x, '+', "v", '-'));
    }
    edges.push(("u", '-', "y", '-'));
    edges.push(("y", '+', "v", '+'));
    bidirected(&["u", "v", "x1", "x2", "x3", "y"], &edges)
}

/// Two copies of K4 minus an edge glued on the pair `{b, d}`.
pub fn double_k4() -> BidirectedGraph {
    bidirected(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("b", '+', "a", '-'),
            ("b", '+', "c", '-'),
            ("a", '+', "d", '-'),
            ("c", '+', "d", '-'),
            ("a", '-', "c", '-'),
            ("b", '-', "e", '+'),
            ("b", '-', "f", '+'),
            ("e", '-', "d", '+'),
            ("f", '-', "d", '+'),
            ("e", '+', "f", '+'),
        ],
    )
}

/// A DAG from `s` to `t` closed into cycles through `u` and `w`.
pub fn dag_in_cycle() -> DirectedGraph {
    directed(
        &["s", "a", "b", "t", "u", "w"],
        &[
            ("s", "a"),
            ("s", "b"),
            ("a", "b"),
            ("a", "t"),
            ("b", "t"),
            ("t", "u"),
            ("u", "s"),
            ("u", "w"),
            ("w", "s"),
        ],
    )
}

/// Cycles `a b c` and `a b c d` sharing the arcs `a -> b -> c`.
pub fn shared_arc_cycles() -> DirectedGraph {
    directed(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "a")])
}
