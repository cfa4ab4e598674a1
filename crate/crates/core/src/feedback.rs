//! Arcs that lie on every cycle of a directed graph, in linear time.
//!
//! After reducing to the single non-trivial strongly connected component, a
//! DFS tree is taken. Only tree arcs covered by every back arc, plus a lone
//! back arc, can lie on every cycle; those tree arcs form a path `P`. Removing
//! `P` leaves a graph `D`; if `D` is acyclic, reachability between path
//! vertices inside `D` decides which gaps of `P` can be bypassed.

use crate::graph::{DirectedGraph, EdgeId, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeedbackArcs {
    Acyclic,
    /// Arcs contained in every cycle, sorted; empty when two cycles share no
    /// arc.
    Hitters(Vec<EdgeId>),
}

pub fn feedback_arcs(g: &DirectedGraph) -> FeedbackArcs {
    feedback_arcs_multi(g.vertex_count(), g.arcs())
}

/// Same as [`feedback_arcs`] for an arc list that may contain parallel arcs
/// and self-loops. Arc ids are positions in `arcs`.
pub fn feedback_arcs_multi(n: usize, arcs: &[(VertexId, VertexId)]) -> FeedbackArcs {
    let loops: Vec<usize> = (0..arcs.len()).filter(|&a| arcs[a].0 == arcs[a].1).collect();
    if loops.len() >= 2 {
        return FeedbackArcs::Hitters(Vec::new());
    }
    // a parallel copy bypasses its twin, so neither can be on every cycle
    let mut seen = std::collections::HashMap::with_capacity(arcs.len());
    let mut doubled = vec![false; arcs.len()];
    let mut simple: Vec<usize> = Vec::with_capacity(arcs.len());
    for (a, &(u, v)) in arcs.iter().enumerate() {
        if u == v {
            continue;
        }
        match seen.get(&(u, v)) {
            Some(&first) => {
                doubled[first] = true;
                doubled[a] = true;
            }
            None => {
                seen.insert((u, v), a);
                simple.push(a);
            }
        }
    }
    let simple_arcs: Vec<(VertexId, VertexId)> = simple.iter().map(|&a| arcs[a]).collect();
    let inner = simple_hitters(n, &simple_arcs);
    match (loops.first(), inner) {
        (None, None) => FeedbackArcs::Acyclic,
        (Some(&l), None) => FeedbackArcs::Hitters(vec![l as EdgeId]),
        (Some(_), Some(_)) => FeedbackArcs::Hitters(Vec::new()),
        (None, Some(h)) => {
            let mut out: Vec<EdgeId> = h.into_iter().map(|i| simple[i]).filter(|&a| !doubled[a]).map(|a| a as EdgeId).collect();
            out.sort_unstable();
            FeedbackArcs::Hitters(out)
        }
    }
}

struct Csr {
    start: Vec<usize>,
    arcs: Vec<usize>,
}

impl Csr {
    fn new(n: usize, arcs: &[(VertexId, VertexId)], reverse: bool, keep: impl Fn(usize) -> bool) -> Csr {
        let mut start = vec![0usize; n + 1];
        let tail = |a: usize| if reverse { arcs[a].1 } else { arcs[a].0 } as usize;
        for a in (0..arcs.len()).filter(|&a| keep(a)) {
            start[tail(a) + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut list = vec![0usize; start[n]];
        for a in (0..arcs.len()).filter(|&a| keep(a)) {
            list[fill[tail(a)]] = a;
            fill[tail(a)] += 1;
        }
        Csr { start, arcs: list }
    }

    fn of(&self, v: usize) -> &[usize] {
        &self.arcs[self.start[v]..self.start[v + 1]]
    }
}

/// Strongly connected component id per vertex (Kosaraju, iterative).
fn scc(n: usize, arcs: &[(VertexId, VertexId)]) -> (Vec<usize>, usize) {
    let fwd = Csr::new(n, arcs, false, |_| true);
    let rev = Csr::new(n, arcs, true, |_| true);
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            if let Some(&a) = fwd.of(v).get(*pos) {
                *pos += 1;
                let w = arcs[a].1 as usize;
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &a in rev.of(v) {
                let w = arcs[a].0 as usize;
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Hitter positions for a loop-free simple arc list, `None` when acyclic.
fn simple_hitters(n: usize, arcs: &[(VertexId, VertexId)]) -> Option<Vec<usize>> {
    let (comp, count) = scc(n, arcs);
    let mut size = vec![0usize; count];
    for &c in &comp {
        size[c] += 1;
    }
    let mut big = (0..count).filter(|&c| size[c] >= 2);
    let target = big.next()?;
    if big.next().is_some() {
        return Some(Vec::new());
    }
    let inside = |a: usize| comp[arcs[a].0 as usize] == target && comp[arcs[a].1 as usize] == target;
    let out = Csr::new(n, arcs, false, inside);
    let root = comp.iter().position(|&c| c == target).unwrap();

    // DFS: tree arcs, back arcs, and per-vertex back-arc tail/head counts
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; n];
    let mut parent_arc = vec![usize::MAX; n];
    let mut is_tree = vec![false; arcs.len()];
    let mut back = Vec::new();
    let mut cover = vec![0i64; n];
    let mut post = Vec::with_capacity(size[target]);
    color[root] = GREY;
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
        if let Some(&a) = out.of(v).get(*pos) {
            *pos += 1;
            let w = arcs[a].1 as usize;
            match color[w] {
                WHITE => {
                    color[w] = GREY;
                    parent_arc[w] = a;
                    is_tree[a] = true;
                    stack.push((w, 0));
                }
                GREY => {
                    back.push(a);
                    cover[v] += 1;
                    cover[w] -= 1;
                }
                _ => {}
            }
        } else {
            color[v] = BLACK;
            post.push(v);
            stack.pop();
        }
    }
    for &v in &post {
        if v != root {
            let p = arcs[parent_arc[v]].0 as usize;
            cover[p] += cover[v];
        }
    }
    let total = back.len() as i64;
    // path vertices in root-to-leaf order: covered children, sorted by depth
    let mut chain: Vec<usize> = post.iter().rev().copied().filter(|&c| c != root && cover[c] == total).collect();
    let mut lone_back = if back.len() == 1 { vec![back[0]] } else { Vec::new() };
    if chain.is_empty() {
        return Some(lone_back);
    }
    // reverse postorder lists ancestors first along one root path
    let w0 = arcs[parent_arc[chain[0]]].0 as usize;
    chain.insert(0, w0);
    let k = chain.len() - 1;
    let mut pos_on_path = vec![usize::MAX; n];
    for (i, &w) in chain.iter().enumerate() {
        pos_on_path[w] = i;
    }
    let path_arc: Vec<usize> = chain[1..].iter().map(|&c| parent_arc[c]).collect();
    let mut on_path = vec![false; arcs.len()];
    for &a in &path_arc {
        on_path[a] = true;
    }

    // topological order of the component minus the path arcs
    let rest = |a: usize| inside(a) && !on_path[a];
    let out_rest = Csr::new(n, arcs, false, rest);
    let in_rest = Csr::new(n, arcs, true, rest);
    let mut indeg = vec![0usize; n];
    for a in (0..arcs.len()).filter(|&a| rest(a)) {
        indeg[arcs[a].1 as usize] += 1;
    }
    let mut topo: Vec<usize> = (0..n).filter(|&v| comp[v] == target && indeg[v] == 0).collect();
    let mut head = 0;
    while head < topo.len() {
        let v = topo[head];
        head += 1;
        for &a in out_rest.of(v) {
            let w = arcs[a].1 as usize;
            indeg[w] -= 1;
            if indeg[w] == 0 {
                topo.push(w);
            }
        }
    }
    if topo.len() < size[target] {
        return Some(lone_back);
    }

    const NO_LOW: usize = usize::MAX;
    let mut desc_min = vec![NO_LOW; n];
    let mut desc_max = vec![None::<usize>; n];
    for &v in topo.iter().rev() {
        for &a in out_rest.of(v) {
            let w = arcs[a].1 as usize;
            let here = pos_on_path[w];
            let lo = desc_min[w].min(here);
            let hi = desc_max[w].max((here != usize::MAX).then_some(here));
            desc_min[v] = desc_min[v].min(lo);
            desc_max[v] = desc_max[v].max(hi);
        }
    }
    let mut anc_max = vec![None::<usize>; n];
    for &v in &topo {
        for &a in in_rest.of(v) {
            let u = arcs[a].0 as usize;
            let here = (pos_on_path[u] != usize::MAX).then_some(pos_on_path[u]);
            anc_max[v] = anc_max[v].max(anc_max[u]).max(here);
        }
    }

    // gap i is the path arc from position i - 1 to i
    let p_min = (0..=k).find(|&p| desc_min[chain[p]] < p);
    let m_max = (0..=k).rev().find(|&q| anc_max[chain[q]].is_some_and(|a| a > q));
    let mut reach_right = None::<usize>;
    let mut hitters = std::mem::take(&mut lone_back);
    for i in 1..=k {
        reach_right = reach_right.max(desc_max[chain[i - 1]]);
        let jumps_over = reach_right.is_some_and(|r| r >= i);
        let cycle_left = p_min.is_some_and(|p| i > p);
        let cycle_right = m_max.is_some_and(|m| i <= m);
        if !(jumps_over || cycle_left || cycle_right) {
            hitters.push(path_arc[i - 1]);
        }
    }
    Some(hitters)
}
