//! SPQR trees of biconnected multigraphs.
//!
//! Skeletons hold real edges (ids of the input multigraph) and virtual edges
//! (ids of tree edges). Vertex ids are those of the input multigraph.

mod tricomp;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::connectivity::block_cut_tree;
use crate::error::Error;
use crate::graph::{EdgeId, UndirectedMultigraph, VertexId};

pub use tricomp::triconnected_components;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    /// Cycle skeleton.
    S,
    /// Two vertices joined by at least three edges.
    P,
    /// Simple triconnected skeleton.
    R,
}

impl NodeKind {
    pub fn letter(self) -> char {
        match self {
            NodeKind::S => 'S',
            NodeKind::P => 'P',
            NodeKind::R => 'R',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeletonEdgeKind {
    Real(EdgeId),
    Virtual(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub ends: [VertexId; 2],
    pub kind: SkeletonEdgeKind,
}

impl SkeletonEdge {
    pub fn tree_edge(&self) -> Option<u32> {
        match self.kind {
            SkeletonEdgeKind::Virtual(t) => Some(t),
            SkeletonEdgeKind::Real(_) => None,
        }
    }

    pub fn real(&self) -> Option<EdgeId> {
        match self.kind {
            SkeletonEdgeKind::Real(e) => Some(e),
            SkeletonEdgeKind::Virtual(_) => None,
        }
    }

    pub fn has(&self, v: VertexId) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }
}

#[derive(Clone, Debug)]
pub struct SpqrNode {
    pub kind: NodeKind,
    pub edges: Vec<SkeletonEdge>,
    pub parent_edge: Option<u32>,
    pub children: Vec<u32>,
}

/// An edge of the tree. `parent_slot` and `child_slot` index the twin
/// virtual edges in the skeletons of `parent` and `child`.
#[derive(Clone, Copy, Debug)]
pub struct TreeEdge {
    pub parent: u32,
    pub child: u32,
    pub ends: [VertexId; 2],
    pub parent_slot: u32,
    pub child_slot: u32,
}

#[derive(Clone, Debug)]
pub struct SpqrTree {
    pub nodes: Vec<SpqrNode>,
    pub tree_edges: Vec<TreeEdge>,
    pub root: u32,
    /// Nodes in preorder from the root.
    pub preorder: Vec<u32>,
    vertex_count: usize,
    edge_count: usize,
}

/// Skeleton edge of a component before the tree is assembled; virtual edges
/// carry a key shared with their twin.
#[derive(Clone, Copy, Debug)]
pub struct RawEdge {
    pub ends: [VertexId; 2],
    pub real: Option<EdgeId>,
    pub key: u32,
}

#[derive(Clone, Debug)]
pub struct RawComponent {
    pub kind: NodeKind,
    pub edges: Vec<RawEdge>,
}

/// Builds the SPQR tree of a biconnected multigraph in linear time.
///
/// A graph on two vertices yields a single P-node holding all its edges.
pub fn build_spqr(h: &UndirectedMultigraph) -> Result<SpqrTree, Error> {
    check_biconnected(h)?;
    let comps = triconnected_components(h);
    SpqrTree::assemble(h.vertex_count(), h.edge_count(), comps)
}

fn check_biconnected(h: &UndirectedMultigraph) -> Result<(), Error> {
    if h.edge_count() == 0 {
        return Err(Error::NotBiconnected("graph has no edges".into()));
    }
    if h.edges().iter().any(|[u, v]| u == v) {
        return Err(Error::NotBiconnected("graph has a self-loop".into()));
    }
    let bct = block_cut_tree(h);
    if bct.blocks.len() != 1 || bct.blocks[0].vertices.len() != h.vertex_count() {
        return Err(Error::NotBiconnected(format!(
            "{} blocks over {} vertices",
            bct.blocks.len(),
            h.vertex_count()
        )));
    }
    Ok(())
}

impl SpqrTree {
    /// Links components through their shared virtual-edge keys and roots the
    /// tree at the node holding the smallest real edge id.
    pub fn assemble(vertex_count: usize, edge_count: usize, comps: Vec<RawComponent>) -> Result<SpqrTree, Error> {
        let invariant = |m: String| Error::Invariant(m);
        let mut holders: std::collections::HashMap<u32, Vec<(u32, u32)>> = Default::default();
        let mut root = None;
        let mut best_edge = EdgeId::MAX;
        for (c, comp) in comps.iter().enumerate() {
            for (slot, e) in comp.edges.iter().enumerate() {
                match e.real {
                    Some(id) => {
                        if id < best_edge {
                            best_edge = id;
                            root = Some(c as u32);
                        }
                    }
                    None => holders.entry(e.key).or_default().push((c as u32, slot as u32)),
                }
            }
        }
        if holders.values().any(|h| h.len() != 2) {
            return Err(invariant("virtual edge without exactly one twin".into()));
        }
        let root = root.ok_or_else(|| invariant("no real edge in any component".into()))?;
        let mut nodes: Vec<SpqrNode> = comps
            .iter()
            .map(|c| SpqrNode {
                kind: c.kind,
                edges: c
                    .edges
                    .iter()
                    .map(|e| SkeletonEdge {
                        ends: e.ends,
                        kind: match e.real {
                            Some(id) => SkeletonEdgeKind::Real(id),
                            None => SkeletonEdgeKind::Virtual(u32::MAX),
                        },
                    })
                    .collect(),
                parent_edge: None,
                children: Vec::new(),
            })
            .collect();
        let mut tree_edges = Vec::new();
        let mut preorder = Vec::with_capacity(nodes.len());
        let mut visited = vec![false; nodes.len()];
        let mut stack = vec![root];
        visited[root as usize] = true;
        while let Some(c) = stack.pop() {
            preorder.push(c);
            let mut discovered = Vec::new();
            for (slot, e) in comps[c as usize].edges.iter().enumerate() {
                if e.real.is_some() {
                    continue;
                }
                let pair = &holders[&e.key];
                let (other, other_slot) = if pair[0] == (c, slot as u32) { pair[1] } else { pair[0] };
                if visited[other as usize] {
                    continue;
                }
                visited[other as usize] = true;
                let id = tree_edges.len() as u32;
                tree_edges.push(TreeEdge {
                    parent: c,
                    child: other,
                    ends: e.ends,
                    parent_slot: slot as u32,
                    child_slot: other_slot,
                });
                nodes[c as usize].edges[slot].kind = SkeletonEdgeKind::Virtual(id);
                nodes[other as usize].edges[other_slot as usize].kind = SkeletonEdgeKind::Virtual(id);
                nodes[other as usize].parent_edge = Some(id);
                nodes[c as usize].children.push(id);
                discovered.push(other);
            }
            stack.extend(discovered.into_iter().rev());
        }
        if preorder.len() != nodes.len() {
            return Err(invariant("components do not form a tree".into()));
        }
        let tree = SpqrTree { nodes, tree_edges, root, preorder, vertex_count, edge_count };
        tree.validate()?;
        Ok(tree)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Distinct skeleton vertices of `node`, ascending.
    pub fn node_vertices(&self, node: u32) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.nodes[node as usize].edges.iter().flat_map(|e| e.ends).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// For an S-node, its vertices `c_0..c_{k-1}` in cycle order together with
    /// the slot of the skeleton edge joining `c_i` and `c_{i+1}`.
    pub fn cycle_order(&self, node: u32) -> (Vec<VertexId>, Vec<u32>) {
        let edges = &self.nodes[node as usize].edges;
        let k = edges.len();
        let mut incident: std::collections::HashMap<VertexId, [u32; 2]> = Default::default();
        for (slot, e) in edges.iter().enumerate() {
            for x in e.ends {
                let entry = incident.entry(x).or_insert([u32::MAX; 2]);
                if entry[0] == u32::MAX {
                    entry[0] = slot as u32;
                } else {
                    entry[1] = slot as u32;
                }
            }
        }
        let mut order = Vec::with_capacity(k);
        let mut slots = Vec::with_capacity(k);
        let start = edges.iter().flat_map(|e| e.ends).min().expect("non-empty skeleton");
        let mut cur = start;
        let mut prev_slot = u32::MAX;
        for _ in 0..k {
            order.push(cur);
            let [a, b] = incident[&cur];
            let next_slot = if a != prev_slot { a } else { b };
            slots.push(next_slot);
            let e = edges[next_slot as usize];
            cur = if e.ends[0] == cur { e.ends[1] } else { e.ends[0] };
            prev_slot = next_slot;
        }
        (order, slots)
    }

    /// Node and slot of the skeleton edge on the far side of tree edge `t`
    /// as seen from `node`.
    pub fn twin(&self, t: u32, node: u32) -> (u32, u32) {
        let te = self.tree_edges[t as usize];
        if te.parent == node {
            (te.child, te.child_slot)
        } else {
            (te.parent, te.parent_slot)
        }
    }

    /// Real edges represented by skeleton edge `slot` of `node`, ascending.
    pub fn expansion(&self, node: u32, slot: u32) -> Vec<EdgeId> {
        let e = self.nodes[node as usize].edges[slot as usize];
        let t = match e.kind {
            SkeletonEdgeKind::Real(id) => return vec![id],
            SkeletonEdgeKind::Virtual(t) => t,
        };
        let (start, _) = self.twin(t, node);
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(start, t)]);
        while let Some((x, via)) = queue.pop_front() {
            for se in &self.nodes[x as usize].edges {
                match se.kind {
                    SkeletonEdgeKind::Real(id) => out.push(id),
                    SkeletonEdgeKind::Virtual(u) if u != via => queue.push_back((self.twin(u, x).0, u)),
                    SkeletonEdgeKind::Virtual(_) => {}
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertex pairs whose removal disconnects the graph: non-adjacent pairs
    /// of S-node cycles, and virtual-edge endpoints unless one side of the
    /// tree edge is a bundle of real edges only.
    pub fn separation_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        let mut out = BTreeSet::new();
        let ordered = |a: VertexId, b: VertexId| if a < b { (a, b) } else { (b, a) };
        let bare_bundle = |node: u32| {
            let n = &self.nodes[node as usize];
            n.kind == NodeKind::P && n.edges.iter().filter(|e| e.tree_edge().is_some()).count() == 1
        };
        for te in &self.tree_edges {
            if !bare_bundle(te.parent) && !bare_bundle(te.child) {
                out.insert(ordered(te.ends[0], te.ends[1]));
            }
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if node.kind != NodeKind::S {
                continue;
            }
            let (cycle, _) = self.cycle_order(id as u32);
            let k = cycle.len();
            for i in 0..k {
                for j in i + 2..k {
                    if i == 0 && j == k - 1 {
                        continue;
                    }
                    out.insert(ordered(cycle[i], cycle[j]));
                }
            }
        }
        out
    }

    /// Total number of skeleton edges over all nodes.
    pub fn skeleton_size(&self) -> usize {
        self.nodes.iter().map(|n| n.edges.len()).sum()
    }

    /// Structural invariants: every real edge appears once, twins agree on
    /// their endpoints, node kinds match their skeletons and no two adjacent
    /// nodes are both S or both P.
    pub fn validate(&self) -> Result<(), Error> {
        let fail = |m: String| Err(Error::Invariant(m));
        let mut seen = vec![0u32; self.edge_count];
        for (id, node) in self.nodes.iter().enumerate() {
            for e in &node.edges {
                if let SkeletonEdgeKind::Real(r) = e.kind {
                    if r as usize >= self.edge_count {
                        return fail(format!("node {id} holds unknown edge {r}"));
                    }
                    seen[r as usize] += 1;
                }
                if e.ends[0] == e.ends[1] {
                    return fail(format!("node {id} holds a loop"));
                }
            }
            let vs = self.node_vertices(id as u32);
            match node.kind {
                NodeKind::P => {
                    if vs.len() != 2 || (node.edges.len() < 3 && self.nodes.len() > 1) {
                        return fail(format!("P-node {id} malformed"));
                    }
                }
                NodeKind::S => {
                    let mut deg: std::collections::HashMap<VertexId, u32> = Default::default();
                    for e in &node.edges {
                        for x in e.ends {
                            *deg.entry(x).or_default() += 1;
                        }
                    }
                    if node.edges.len() < 3 || vs.len() != node.edges.len() || deg.values().any(|&d| d != 2) {
                        return fail(format!("S-node {id} is not a cycle"));
                    }
                    let (cycle, _) = self.cycle_order(id as u32);
                    let distinct: BTreeSet<_> = cycle.iter().collect();
                    if distinct.len() != cycle.len() {
                        return fail(format!("S-node {id} is not a single cycle"));
                    }
                }
                NodeKind::R => {
                    let mut pairs = BTreeSet::new();
                    for e in &node.edges {
                        let k = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
                        if !pairs.insert(k) {
                            return fail(format!("R-node {id} has parallel edges"));
                        }
                    }
                    if vs.len() < 4 {
                        return fail(format!("R-node {id} too small"));
                    }
                }
            }
        }
        if let Some(e) = seen.iter().position(|&c| c != 1) {
            return fail(format!("real edge {e} appears {} times", seen[e]));
        }
        for (t, te) in self.tree_edges.iter().enumerate() {
            let a = self.nodes[te.parent as usize].edges[te.parent_slot as usize];
            let b = self.nodes[te.child as usize].edges[te.child_slot as usize];
            let same = |x: [VertexId; 2], y: [VertexId; 2]| x == y || x == [y[1], y[0]];
            if a.tree_edge() != Some(t as u32) || b.tree_edge() != Some(t as u32) || !same(a.ends, b.ends) || !same(a.ends, te.ends) {
                return fail(format!("tree edge {t} twins disagree"));
            }
            let (ka, kb) = (self.nodes[te.parent as usize].kind, self.nodes[te.child as usize].kind);
            if ka == kb && ka != NodeKind::R {
                return fail(format!("tree edge {t} joins two {} nodes", ka.letter()));
            }
        }
        Ok(())
    }

    /// Canonical description independent of node numbering and rooting: for
    /// each node its kind, its real edges and the real-edge sets behind each
    /// of its virtual edges.
    pub fn canonical_form(&self) -> Vec<(NodeKind, Vec<EdgeId>, Vec<Vec<EdgeId>>)> {
        let mut out: Vec<_> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, node)| {
                let mut reals: Vec<EdgeId> = node.edges.iter().filter_map(|e| e.real()).collect();
                reals.sort_unstable();
                let mut virtuals: Vec<Vec<EdgeId>> = node
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.tree_edge().is_some())
                    .map(|(slot, _)| self.expansion(id as u32, slot as u32))
                    .collect();
                virtuals.sort();
                (node.kind, reals, virtuals)
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for SpqrTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root {}", self.root)?;
        for &id in &self.preorder {
            let node = &self.nodes[id as usize];
            let parent = node
                .parent_edge
                .map(|t| self.tree_edges[t as usize].parent.to_string())
                .unwrap_or_else(|| "-".into());
            writeln!(f, "node {id} {} parent {parent}", node.kind.letter())?;
            for e in &node.edges {
                match e.kind {
                    SkeletonEdgeKind::Real(r) => writeln!(f, "  real {} {} e{r}", e.ends[0], e.ends[1])?,
                    SkeletonEdgeKind::Virtual(t) => writeln!(f, "  virtual {} {} t{t}", e.ends[0], e.ends[1])?,
                }
            }
        }
        Ok(())
    }
}
