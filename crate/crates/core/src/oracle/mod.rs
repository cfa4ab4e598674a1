//! Slow reference implementations that follow the definitions literally.
//! Every function here is meant for small graphs only.

pub mod fixtures;
mod generate;
mod spqr_ref;

use std::collections::{BTreeSet, VecDeque};

use crate::error::Error;
use crate::graph::{BidirectedGraph, DirectedGraph, EdgeId, Incidence, Sign, UndirectedMultigraph, VertexId};

pub use generate::{generate_bidirected, generate_directed, generate_undirected, GeneratorSpec, Shape};
pub use spqr_ref::spqr_reference;

/// Largest vertex count the exhaustive enumerations accept.
pub const ORACLE_LIMIT: usize = 12;

fn refuse(n: usize) -> Result<(), Error> {
    if n > ORACLE_LIMIT {
        Err(Error::OracleTooLarge { vertices: n, limit: ORACLE_LIMIT })
    } else {
        Ok(())
    }
}

/// Unordered incidence pair with the smaller incidence first.
pub fn ordered_pair(a: Incidence, b: Incidence) -> (Incidence, Incidence) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Splits `a` and `b` and returns the component of `a.vertex` over the
/// original vertices when it contains `b.vertex` and neither split copy.
fn separable_component(g: &BidirectedGraph, a: Incidence, b: Incidence) -> Option<Vec<bool>> {
    if a.vertex == b.vertex {
        return None;
    }
    let n = g.vertex_count();
    let (copy_a, copy_b) = (n, n + 1);
    let node = |i: Incidence| {
        if i.vertex == a.vertex && i.sign != a.sign {
            copy_a
        } else if i.vertex == b.vertex && i.sign != b.sign {
            copy_b
        } else {
            i.vertex as usize
        }
    };
    let mut adj = vec![Vec::new(); n + 2];
    for &[x, y] in g.edges() {
        let (p, q) = (node(x), node(y));
        adj[p].push(q);
        adj[q].push(p);
    }
    let mut seen = vec![false; n + 2];
    seen[a.vertex as usize] = true;
    let mut queue = VecDeque::from([a.vertex as usize]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if seen[b.vertex as usize] && !seen[copy_a] && !seen[copy_b] {
        seen.truncate(n);
        Some(seen)
    } else {
        None
    }
}

/// Whether `{a, b}` is a snarl: separable, and no incidence inside the snarl
/// component splits it into two separable halves.
pub fn is_snarl_bruteforce(g: &BidirectedGraph, a: Incidence, b: Incidence) -> bool {
    let Some(component) = separable_component(g, a, b) else {
        return false;
    };
    for z in 0..g.vertex_count() as VertexId {
        if !component[z as usize] || z == a.vertex || z == b.vertex {
            continue;
        }
        for sign in Sign::BOTH {
            let zi = Incidence::new(z, sign);
            if separable_component(g, a, zi).is_some() && separable_component(g, zi.flipped(), b).is_some() {
                return false;
            }
        }
    }
    true
}

/// Every snarl of `g` as ordered pairs (see [`ordered_pair`]).
pub fn all_snarls_bruteforce(g: &BidirectedGraph) -> Result<BTreeSet<(Incidence, Incidence)>, Error> {
    let n = g.vertex_count();
    refuse(n)?;
    let idx = |i: Incidence| 2 * i.vertex as usize + i.sign.index();
    let inc = |k: usize| Incidence::new((k / 2) as VertexId, if k % 2 == 0 { Sign::Plus } else { Sign::Minus });
    // separability table with the snarl component as a bitmask
    let mut sep = vec![vec![None::<u32>; 2 * n]; 2 * n];
    for p in 0..2 * n {
        for q in p + 1..2 * n {
            if let Some(c) = separable_component(g, inc(p), inc(q)) {
                let mask = c.iter().enumerate().fold(0u32, |m, (v, &on)| if on { m | 1 << v } else { m });
                sep[p][q] = Some(mask);
                sep[q][p] = Some(mask);
            }
        }
    }
    let mut out = BTreeSet::new();
    for p in 0..2 * n {
        for q in p + 1..2 * n {
            let Some(mask) = sep[p][q] else { continue };
            let (x, y) = (inc(p), inc(q));
            let violated = (0..n as VertexId).filter(|&z| mask >> z & 1 == 1 && z != x.vertex && z != y.vertex).any(|z| {
                Sign::BOTH.iter().any(|&d| {
                    let zi = Incidence::new(z, d);
                    sep[p][idx(zi)].is_some() && sep[idx(zi.flipped())][q].is_some()
                })
            });
            if !violated {
                out.insert(ordered_pair(x, y));
            }
        }
    }
    Ok(out)
}

/// Breadth-first search that records `blocked` when met but never leaves it.
fn reach_stopping_at(g: &DirectedGraph, from: VertexId, blocked: VertexId, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[from as usize] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == blocked && x != from {
            continue;
        }
        let next: Vec<VertexId> = if forward { g.out_neighbors(x).collect() } else { g.in_neighbors(x).collect() };
        for y in next {
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

fn induced_acyclic(g: &DirectedGraph, inside: &[bool]) -> bool {
    let n = g.vertex_count();
    let mut indeg = vec![0usize; n];
    for &(u, v) in g.arcs() {
        if inside[u as usize] && inside[v as usize] {
            indeg[v as usize] += 1;
        }
    }
    let mut queue: Vec<VertexId> = (0..n as VertexId).filter(|&v| inside[v as usize] && indeg[v as usize] == 0).collect();
    let mut removed = 0;
    while let Some(u) = queue.pop() {
        removed += 1;
        for v in g.out_neighbors(u) {
            if inside[v as usize] {
                indeg[v as usize] -= 1;
                if indeg[v as usize] == 0 {
                    queue.push(v);
                }
            }
        }
    }
    removed == inside.iter().filter(|&&x| x).count()
}

/// Reachability, matching and acyclicity; returns the vertex set of the
/// bubble when all three hold.
fn superbubbloid_onodera(g: &DirectedGraph, s: VertexId, t: VertexId) -> Option<Vec<bool>> {
    if s == t {
        return None;
    }
    let from_s = reach_stopping_at(g, s, t, true);
    if !from_s[t as usize] {
        return None;
    }
    let to_t = reach_stopping_at(g, t, s, false);
    if from_s != to_t || !induced_acyclic(g, &from_s) {
        return None;
    }
    Some(from_s)
}

/// Whether `(s, t)` is a superbubble: a superbubbloid with no interior `t'`
/// such that `(s, t')` is one too.
pub fn is_superbubble_bruteforce(g: &DirectedGraph, s: VertexId, t: VertexId) -> bool {
    let Some(inside) = superbubbloid_onodera(g, s, t) else {
        return false;
    };
    !(0..g.vertex_count() as VertexId)
        .filter(|&u| inside[u as usize] && u != s && u != t)
        .any(|u| superbubbloid_onodera(g, s, u).is_some())
}

pub fn all_superbubbles_bruteforce(g: &DirectedGraph) -> Result<BTreeSet<(VertexId, VertexId)>, Error> {
    let n = g.vertex_count();
    refuse(n)?;
    let mut out = BTreeSet::new();
    for s in 0..n as VertexId {
        for t in 0..n as VertexId {
            if s != t && is_superbubble_bruteforce(g, s, t) {
                out.insert((s, t));
            }
        }
    }
    Ok(out)
}

/// Multi-source search over `g` minus `removed`.
fn reach_avoiding(g: &DirectedGraph, sources: &[VertexId], removed: &[VertexId], forward: bool) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !removed.contains(&s) && !seen[s as usize] {
            seen[s as usize] = true;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        let next: Vec<VertexId> = if forward { g.out_neighbors(x).collect() } else { g.in_neighbors(x).collect() };
        for y in next {
            if !removed.contains(&y) && !seen[y as usize] {
                seen[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Path-based superbubbloid conditions for entrance `s`, exit `t` and vertex
/// set `inside`: everything is reachable from `s` and reaches `t`, paths
/// entering the set pass `s`, paths leaving it pass `t`, every arc of the set
/// closes cycles only through both `s` and `t`, and there is no arc `t -> s`.
pub fn is_superbubbloid_by_paths(g: &DirectedGraph, s: VertexId, t: VertexId, inside: &[bool]) -> bool {
    let n = g.vertex_count() as VertexId;
    if s == t || !inside[s as usize] || !inside[t as usize] {
        return false;
    }
    let members: Vec<VertexId> = (0..n).filter(|&u| inside[u as usize]).collect();
    let outside: Vec<VertexId> = (0..n).filter(|&u| !inside[u as usize]).collect();
    let from_s = reach_avoiding(g, &[s], &[], true);
    let to_t = reach_avoiding(g, &[t], &[], false);
    if members.iter().any(|&u| !from_s[u as usize] || !to_t[u as usize]) {
        return false;
    }
    let entering = reach_avoiding(g, &outside, &[s], true);
    if members.iter().any(|&u| u != s && entering[u as usize]) {
        return false;
    }
    let leaving = reach_avoiding(g, &members.iter().copied().filter(|&u| u != t).collect::<Vec<_>>(), &[t], true);
    if outside.iter().any(|&w| leaving[w as usize]) {
        return false;
    }
    for &(u, v) in g.arcs() {
        if !inside[u as usize] || !inside[v as usize] {
            continue;
        }
        if u == v {
            return false;
        }
        for blocker in [s, t] {
            if blocker != u && blocker != v && reach_avoiding(g, &[v], &[blocker], true)[u as usize] {
                return false;
            }
        }
    }
    !g.has_arc(t, s)
}

fn bubble_candidate(g: &DirectedGraph, s: VertexId, t: VertexId) -> Vec<bool> {
    let from_s = reach_stopping_at(g, s, t, true);
    let to_t = reach_stopping_at(g, t, s, false);
    from_s.iter().zip(&to_t).map(|(&a, &b)| a && b).collect()
}

/// Superbubble test built on [`is_superbubbloid_by_paths`], with minimality
/// taken over alternative entrances `(s', t)` rather than exits.
pub fn is_superbubble_by_paths(g: &DirectedGraph, s: VertexId, t: VertexId) -> bool {
    if s == t {
        return false;
    }
    let inside = bubble_candidate(g, s, t);
    if !is_superbubbloid_by_paths(g, s, t, &inside) {
        return false;
    }
    !(0..g.vertex_count() as VertexId)
        .filter(|&u| inside[u as usize] && u != s && u != t)
        .any(|u| is_superbubbloid_by_paths(g, u, t, &bubble_candidate(g, u, t)))
}

fn components_without(h: &UndirectedMultigraph, removed: &[VertexId]) -> usize {
    let n = h.vertex_count();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for &[u, v] in h.edges() {
        if removed.contains(&u) || removed.contains(&v) {
            continue;
        }
        let (a, b) = (find(&mut uf, u as usize), find(&mut uf, v as usize));
        uf[a] = b;
    }
    (0..n).filter(|&v| !removed.contains(&(v as VertexId)) && find(&mut uf, v) == v).count()
}

pub fn is_connected(h: &UndirectedMultigraph) -> bool {
    components_without(h, &[]) <= 1
}

/// Biconnected in the sense used by SPQR trees: at least one edge, no
/// self-loop, connected, and no vertex whose removal disconnects the rest.
pub fn is_biconnected(h: &UndirectedMultigraph) -> bool {
    let n = h.vertex_count();
    n >= 2
        && h.edge_count() > 0
        && h.edges().iter().all(|[u, v]| u != v)
        && is_connected(h)
        && (0..n as VertexId).all(|v| components_without(h, &[v]) <= 1)
}

/// Vertex pairs whose removal increases the number of connected components.
pub fn separation_pairs_bruteforce(h: &UndirectedMultigraph) -> BTreeSet<(VertexId, VertexId)> {
    let base = components_without(h, &[]);
    let n = h.vertex_count() as VertexId;
    let mut out = BTreeSet::new();
    for u in 0..n {
        for v in u + 1..n {
            if components_without(h, &[u, v]) > base {
                out.insert((u, v));
            }
        }
    }
    out
}

/// Arcs shared by every cycle, or `None` when the graph is acyclic. Cycles
/// are enumerated explicitly.
pub fn feedback_arcs_bruteforce(g: &DirectedGraph) -> Option<BTreeSet<EdgeId>> {
    let n = g.vertex_count() as VertexId;
    let mut common: Option<BTreeSet<EdgeId>> = None;
    // cycles through `start` whose other vertices are larger than `start`
    for start in 0..n {
        let mut path_arcs: Vec<EdgeId> = Vec::new();
        let mut on_path = vec![false; n as usize];
        let mut stack: Vec<(VertexId, usize)> = vec![(start, 0)];
        on_path[start as usize] = true;
        while let Some(&mut (x, ref mut pos)) = stack.last_mut() {
            let out = g.out_arcs(x);
            if *pos == out.len() {
                on_path[x as usize] = false;
                stack.pop();
                path_arcs.pop();
                continue;
            }
            let a = out[*pos];
            *pos += 1;
            let y = g.arc(a).1;
            if y == start {
                let cycle: BTreeSet<EdgeId> = path_arcs.iter().copied().chain([a]).collect();
                common = Some(match common {
                    None => cycle,
                    Some(c) => c.intersection(&cycle).copied().collect(),
                });
            } else if y > start && !on_path[y as usize] {
                on_path[y as usize] = true;
                path_arcs.push(a);
                stack.push((y, 0));
            }
        }
    }
    common
}

#[cfg(test)]
mod tests;
