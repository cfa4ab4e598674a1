use std::collections::HashMap;

use crate::connectivity::UnionFind;
use crate::error::Error;
use crate::graph::{UndirectedMultigraph, VertexId};
use crate::spqr::{NodeKind, RawComponent, RawEdge, SpqrTree};

/// SPQR tree built by repeatedly splitting at separation pairs until every
/// piece is a bundle, a cycle or triconnected, then merging adjacent bundles
/// and adjacent cycles. Cubic or worse; meant for cross-checking.
pub fn spqr_reference(h: &UndirectedMultigraph) -> Result<SpqrTree, Error> {
    if !super::is_biconnected(h) {
        return Err(Error::NotBiconnected("reference builder needs a biconnected graph".into()));
    }
    let m = h.edge_count();
    let mut next_key = m as u32;
    let mut fresh = |ends: [VertexId; 2]| {
        next_key += 1;
        RawEdge { ends, real: None, key: next_key - 1 }
    };
    let initial: Vec<RawEdge> =
        h.edges().iter().enumerate().map(|(i, &ends)| RawEdge { ends, real: Some(i as u32), key: i as u32 }).collect();
    let mut work = vec![initial];
    let mut done: Vec<Vec<RawEdge>> = Vec::new();
    while let Some(comp) = work.pop() {
        if let Some(group) = parallel_group(&comp) {
            if group.len() == comp.len() {
                done.push(comp);
                continue;
            }
            let ends = comp[group[0]].ends;
            let v = fresh(ends);
            let (mut bond, mut rest) = partition(comp, &group);
            bond.push(v);
            rest.push(v);
            done.push(bond);
            work.push(rest);
            continue;
        }
        match find_split(&comp) {
            Some(class) => {
                let (a, b) = class.1;
                let v = fresh([a, b]);
                let (mut side, mut rest) = partition(comp, &class.0);
                side.push(v);
                rest.push(v);
                work.push(side);
                work.push(rest);
            }
            None => done.push(comp),
        }
    }

    let kinds: Vec<NodeKind> = done.iter().map(|c| classify(c)).collect();
    let mut owners: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, c) in done.iter().enumerate() {
        for e in c.iter().filter(|e| e.real.is_none()) {
            owners.entry(e.key).or_default().push(i);
        }
    }
    let mut uf = UnionFind::new(done.len());
    let mut dropped = std::collections::HashSet::new();
    for (&key, holders) in &owners {
        let (a, b) = (holders[0], holders[1]);
        if kinds[a] == kinds[b] && kinds[a] != NodeKind::R {
            uf.union(a, b);
            dropped.insert(key);
        }
    }
    let mut group: HashMap<usize, usize> = HashMap::new();
    let mut comps: Vec<RawComponent> = Vec::new();
    for (i, c) in done.into_iter().enumerate() {
        let root = uf.find(i);
        let slot = *group.entry(root).or_insert_with(|| {
            comps.push(RawComponent { kind: kinds[i], edges: Vec::new() });
            comps.len() - 1
        });
        comps[slot].edges.extend(c.into_iter().filter(|e| e.real.is_some() || !dropped.contains(&e.key)));
    }
    SpqrTree::assemble(h.vertex_count(), m, comps)
}

fn key_of(e: &RawEdge) -> (VertexId, VertexId) {
    let [a, b] = e.ends;
    (a.min(b), a.max(b))
}

fn parallel_group(comp: &[RawEdge]) -> Option<Vec<usize>> {
    let mut by_pair: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    for (i, e) in comp.iter().enumerate() {
        by_pair.entry(key_of(e)).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = by_pair.into_values().filter(|g| g.len() >= 2).collect();
    groups.sort();
    groups.into_iter().next()
}

fn partition(comp: Vec<RawEdge>, chosen: &[usize]) -> (Vec<RawEdge>, Vec<RawEdge>) {
    let mut pick = vec![false; comp.len()];
    for &i in chosen {
        pick[i] = true;
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (i, e) in comp.into_iter().enumerate() {
        if pick[i] {
            a.push(e);
        } else {
            b.push(e);
        }
    }
    (a, b)
}

fn vertices(comp: &[RawEdge]) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = comp.iter().flat_map(|e| e.ends).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// A separation class with at least two edges whose complement also has at
/// least two edges, with the pair it belongs to.
fn find_split(comp: &[RawEdge]) -> Option<(Vec<usize>, (VertexId, VertexId))> {
    let vs = vertices(comp);
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let mut uf = UnionFind::new(comp.len());
            let mut first_at: HashMap<VertexId, usize> = HashMap::new();
            for (k, e) in comp.iter().enumerate() {
                for x in e.ends {
                    if x == a || x == b {
                        continue;
                    }
                    match first_at.get(&x) {
                        Some(&j) => {
                            uf.union(j, k);
                        }
                        None => {
                            first_at.insert(x, k);
                        }
                    }
                }
            }
            let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
            for k in 0..comp.len() {
                classes.entry(uf.find(k)).or_default().push(k);
            }
            let mut classes: Vec<Vec<usize>> = classes.into_values().collect();
            classes.sort();
            if let Some(c) = classes.into_iter().find(|c| c.len() >= 2 && comp.len() - c.len() >= 2) {
                return Some((c, (a, b)));
            }
        }
    }
    None
}

fn classify(comp: &[RawEdge]) -> NodeKind {
    let vs = vertices(comp);
    if vs.len() == 2 {
        return NodeKind::P;
    }
    let mut deg: HashMap<VertexId, usize> = HashMap::new();
    for e in comp {
        for x in e.ends {
            *deg.entry(x).or_default() += 1;
        }
    }
    if deg.values().all(|&d| d == 2) {
        NodeKind::S
    } else {
        NodeKind::R
    }
}
