//! Snarl finding over sign-cut graphs, blocks and SPQR trees.
//!
//! The output lists, per sign-cut graph, its tips (every two of them form a
//! snarl) and then every other snarl explicitly.

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;

use crate::connectivity::{
    block_cut_tree, block_sign_masks, mixed_block_counts, BlockCutTree, BlockKind, SignCutGraph,
};
use crate::graph::{BidirectedGraph, Incidence, Sign, UndirectedMultigraph, VertexId};
use crate::oracle::ordered_pair;
use crate::PhaseTimes;
use crate::spqr::{build_spqr, NodeKind, SkeletonEdgeKind, SpqrTree};

/// Tip sets plus explicit pairs. Every two incidences of one tip set form a
/// snarl, and so does every listed pair; nothing else does.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SnarlRepresentation {
    pub tip_sets: Vec<Vec<Incidence>>,
    pub pairs: Vec<(Incidence, Incidence)>,
}

impl SnarlRepresentation {
    /// Every snarl as an ordered pair; quadratic in the tip set sizes.
    pub fn enumerate_pairs(&self) -> BTreeSet<(Incidence, Incidence)> {
        let mut out = BTreeSet::new();
        for t in &self.tip_sets {
            for (i, &a) in t.iter().enumerate() {
                for &b in &t[i + 1..] {
                    out.insert(ordered_pair(a, b));
                }
            }
        }
        out.extend(self.pairs.iter().map(|&(a, b)| ordered_pair(a, b)));
        out
    }

    pub fn tip_count(&self) -> usize {
        self.tip_sets.iter().map(Vec::len).sum()
    }

    /// Number of snarls encoded, without enumerating them.
    pub fn snarl_count(&self) -> u64 {
        let tips: u64 = self.tip_sets.iter().map(|t| (t.len() as u64) * (t.len() as u64).saturating_sub(1) / 2).sum();
        tips + self.pairs.len() as u64
    }
}

/// `+` and `-` incidence counts of a vertex.
pub type SignCounts = [u32; 2];

/// For every tree edge, the sign counts of its two endpoints inside the
/// expansion on the child side; the parent side follows from the totals.
#[derive(Clone, Debug)]
pub struct IncidenceCounts {
    down: Vec<[SignCounts; 2]>,
    totals: Vec<SignCounts>,
}

impl IncidenceCounts {
    fn end_index(tree: &SpqrTree, t: u32, w: VertexId) -> usize {
        let ends = tree.tree_edges[t as usize].ends;
        debug_assert!(ends.contains(&w));
        usize::from(ends[0] != w)
    }

    /// Counts of `w` over the edges below tree edge `t`.
    pub fn child_side(&self, tree: &SpqrTree, t: u32, w: VertexId) -> SignCounts {
        self.down[t as usize][Self::end_index(tree, t, w)]
    }

    /// Counts of `w` over the edges above tree edge `t`.
    pub fn parent_side(&self, tree: &SpqrTree, t: u32, w: VertexId) -> SignCounts {
        let d = self.child_side(tree, t, w);
        let tot = self.totals[w as usize];
        [tot[0] - d[0], tot[1] - d[1]]
    }

    pub fn total(&self, w: VertexId) -> SignCounts {
        self.totals[w as usize]
    }

    /// Counts of `w` over the expansion of skeleton edge `slot` of `node`.
    pub fn of_slot(&self, tree: &SpqrTree, edges: &[[Incidence; 2]], node: u32, slot: u32, w: VertexId) -> SignCounts {
        let se = tree.nodes[node as usize].edges[slot as usize];
        match se.kind {
            SkeletonEdgeKind::Real(e) => {
                let mut c = [0; 2];
                for i in edges[e as usize] {
                    if i.vertex == w {
                        c[i.sign.index()] += 1;
                    }
                }
                c
            }
            SkeletonEdgeKind::Virtual(t) if tree.tree_edges[t as usize].parent == node => self.child_side(tree, t, w),
            SkeletonEdgeKind::Virtual(t) => self.parent_side(tree, t, w),
        }
    }
}

/// Bottom-up sign counts of a block whose edge `i` is `edges[i]`, over its
/// SPQR tree.
pub fn incidence_counts(edges: &[[Incidence; 2]], tree: &SpqrTree) -> IncidenceCounts {
    let mut totals = vec![[0u32; 2]; tree.vertex_count()];
    for e in edges {
        for i in e {
            totals[i.vertex as usize][i.sign.index()] += 1;
        }
    }
    let mut down = vec![[[0u32; 2]; 2]; tree.tree_edges.len()];
    for &node in tree.preorder.iter().rev() {
        let Some(t) = tree.nodes[node as usize].parent_edge else { continue };
        let [a, b] = tree.tree_edges[t as usize].ends;
        let mut acc = [[0u32; 2]; 2];
        for se in &tree.nodes[node as usize].edges {
            match se.kind {
                SkeletonEdgeKind::Real(e) => {
                    for i in edges[e as usize] {
                        if i.vertex == a {
                            acc[0][i.sign.index()] += 1;
                        } else if i.vertex == b {
                            acc[1][i.sign.index()] += 1;
                        }
                    }
                }
                SkeletonEdgeKind::Virtual(c) if c != t => {
                    let ends = tree.tree_edges[c as usize].ends;
                    for (k, w) in ends.into_iter().enumerate() {
                        let side = if w == a { 0 } else if w == b { 1 } else { continue };
                        for s in 0..2 {
                            acc[side][s] += down[c as usize][k][s];
                        }
                    }
                }
                SkeletonEdgeKind::Virtual(_) => {}
            }
        }
        down[t as usize] = acc;
    }
    IncidenceCounts { down, totals }
}

/// Whether some block of `bct` other than `block` has incidences of both
/// signs at `v`.
pub fn has_dangling(g: &BidirectedGraph, bct: &BlockCutTree, block: usize, v: VertexId) -> bool {
    bct.blocks_of(v).iter().any(|&b| {
        b as usize != block && {
            let mut mask = 0u8;
            for &e in &bct.blocks[b as usize].edges {
                for i in g.edge(e) {
                    if i.vertex == v {
                        mask |= 1 << i.sign.index();
                    }
                }
            }
            mask == 3
        }
    })
}

fn mask(c: SignCounts) -> u8 {
    u8::from(c[0] > 0) | u8::from(c[1] > 0) << 1
}

fn single_sign(mask: u8) -> Option<Sign> {
    match mask {
        1 => Some(Sign::Plus),
        2 => Some(Sign::Minus),
        _ => None,
    }
}

fn has_sign(mask: u8, s: Sign) -> bool {
    mask >> s.index() & 1 == 1
}

/// A biconnected block of a sign-cut graph in local vertex ids.
struct BlockInput {
    verts: Vec<VertexId>,
    edges: Vec<[Incidence; 2]>,
    /// Vertices that are tips or have a dangling block; never snarl ends here.
    excluded: Vec<bool>,
    /// Per vertex and sign: the block has exactly one incidence there.
    lone: Vec<[bool; 2]>,
    tree: Option<SpqrTree>,
}

impl BlockInput {
    fn is_lone(&self, i: Incidence) -> bool {
        !self.excluded[i.vertex as usize] && self.lone[i.vertex as usize][i.sign.index()]
    }

    fn find(&self) -> Vec<(Incidence, Incidence)> {
        let tree = self.tree.as_ref().expect("tree built while preparing");
        let counts = incidence_counts(&self.edges, tree);
        let slot_mask = |node: u32, slot: u32, w: VertexId| mask(counts.of_slot(tree, &self.edges, node, slot, w));
        let mut out = Vec::new();

        // S-nodes: pair consecutive good vertices around the cycle
        let mut good: Vec<Vec<VertexId>> = vec![Vec::new(); tree.nodes.len()];
        for node in 0..tree.nodes.len() as u32 {
            if tree.nodes[node as usize].kind != NodeKind::S {
                continue;
            }
            let (cycle, slots) = tree.cycle_order(node);
            let k = cycle.len();
            let mut w: Vec<(VertexId, Sign)> = Vec::new();
            for i in 0..k {
                let v = cycle[i];
                if self.excluded[v as usize] {
                    continue;
                }
                let left = single_sign(slot_mask(node, slots[(i + k - 1) % k], v));
                let right = single_sign(slot_mask(node, slots[i], v));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        w.push((v, r));
                    }
                }
            }
            if w.len() >= 2 {
                for j in 0..w.len() {
                    let (u, du) = w[j];
                    let (v, dv) = w[(j + 1) % w.len()];
                    out.push((Incidence::new(u, du), Incidence::new(v, !dv)));
                }
            }
            good[node as usize] = w.into_iter().map(|(v, _)| v).collect();
        }

        // P-nodes
        for node in 0..tree.nodes.len() as u32 {
            let pn = &tree.nodes[node as usize];
            if pn.kind != NodeKind::P {
                continue;
            }
            let [u, v] = pn.edges[0].ends;
            if self.excluded[u as usize] || self.excluded[v as usize] {
                continue;
            }
            let masks: Vec<(u8, u8)> =
                (0..pn.edges.len() as u32).map(|s| (slot_mask(node, s, u), slot_mask(node, s, v))).collect();
            if masks.iter().any(|&(a, b)| a == 3 || b == 3) {
                continue;
            }
            for du in Sign::BOTH {
                for dv in Sign::BOTH {
                    if masks.iter().any(|&(a, b)| has_sign(a, du) != has_sign(b, dv)) {
                        continue;
                    }
                    let side: Vec<u32> = (0..masks.len() as u32).filter(|&s| has_sign(masks[s as usize].0, du)).collect();
                    if side.is_empty() {
                        continue;
                    }
                    if side.len() == 1 {
                        if let Some(t) = pn.edges[side[0] as usize].tree_edge() {
                            let (beta, _) = tree.twin(t, node);
                            if tree.nodes[beta as usize].kind == NodeKind::S
                                && good[beta as usize].iter().any(|&x| x != u && x != v)
                            {
                                continue;
                            }
                        }
                    }
                    out.push((Incidence::new(u, du), Incidence::new(v, dv)));
                }
            }
        }

        // tree edges between two R-nodes
        for (t, te) in tree.tree_edges.iter().enumerate() {
            let t = t as u32;
            if tree.nodes[te.parent as usize].kind != NodeKind::R || tree.nodes[te.child as usize].kind != NodeKind::R {
                continue;
            }
            let [u, v] = te.ends;
            if self.excluded[u as usize] || self.excluded[v as usize] {
                continue;
            }
            let below = (mask(counts.child_side(tree, t, u)), mask(counts.child_side(tree, t, v)));
            let above = (mask(counts.parent_side(tree, t, u)), mask(counts.parent_side(tree, t, v)));
            if let (Some(bu), Some(bv), Some(au), Some(av)) =
                (single_sign(below.0), single_sign(below.1), single_sign(above.0), single_sign(above.1))
            {
                if bu != au && bv != av {
                    out.push((Incidence::new(u, bu), Incidence::new(v, bv)));
                    out.push((Incidence::new(u, au), Incidence::new(v, av)));
                }
            }
        }

        // single edges whose two ends are the only ones of their sign
        let mut s_nodes_of: Vec<Vec<u32>> = vec![Vec::new(); self.verts.len()];
        let mut s_vertices: Vec<Vec<VertexId>> = vec![Vec::new(); tree.nodes.len()];
        for node in 0..tree.nodes.len() as u32 {
            if tree.nodes[node as usize].kind == NodeKind::S {
                let vs = tree.node_vertices(node);
                for &x in &vs {
                    s_nodes_of[x as usize].push(node);
                }
                s_vertices[node as usize] = vs;
            }
        }
        for &[a, b] in &self.edges {
            if !self.is_lone(a) || !self.is_lone(b) {
                continue;
            }
            out.push((a, b));
            let shared = s_nodes_of[a.vertex as usize]
                .iter()
                .any(|&s| s_vertices[s as usize].binary_search(&b.vertex).is_ok());
            if !shared {
                out.push((a.flipped(), b.flipped()));
            }
        }

        for p in &mut out {
            let map = |i: Incidence| Incidence::new(self.verts[i.vertex as usize], i.sign);
            *p = (map(p.0), map(p.1));
        }
        out
    }
}

/// Snarls of one sign-cut graph: its tips and its explicit pairs, both in
/// local vertex ids.
/// One sign-cut graph with its blocks decomposed, ready for detection.
struct PreparedPart {
    tips: Vec<Incidence>,
    tip_sign: Vec<Option<Sign>>,
    bridge_pairs: Vec<(Incidence, Incidence)>,
    inputs: Vec<BlockInput>,
}

fn prepare_part(f: &BidirectedGraph) -> PreparedPart {
    let n = f.vertex_count();
    let tips = f.tips();
    let mut tip_sign: Vec<Option<Sign>> = vec![None; n];
    for t in &tips {
        tip_sign[t.vertex as usize] = Some(t.sign);
    }
    let bct = block_cut_tree(&f.underlying());
    let masks = block_sign_masks(f, &bct);
    let mixed = mixed_block_counts(&bct, &masks, n);

    let mut bridge_pairs = Vec::new();
    let mut inputs = Vec::new();
    let mut local = vec![u32::MAX; n];
    for (b, block) in bct.blocks.iter().enumerate() {
        for (i, &v) in block.vertices.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let to_local = |i: Incidence| Incidence::new(local[i.vertex as usize], i.sign);
        let edges: Vec<[Incidence; 2]> = block.edges.iter().map(|&e| f.edge(e).map(to_local)).collect();
        let excluded = block
            .vertices
            .iter()
            .zip(&masks[b])
            .map(|(&v, &m)| tip_sign[v as usize].is_some() || mixed[v as usize] > u32::from(m == 3))
            .collect();
        let mut degree = vec![[0u32; 2]; block.vertices.len()];
        for e in &edges {
            for i in e {
                degree[i.vertex as usize][i.sign.index()] += 1;
            }
        }
        let lone = degree.iter().map(|d| d.map(|c| c == 1)).collect();
        let input = BlockInput { verts: block.vertices.clone(), edges, excluded, lone, tree: None };
        if block.kind == BlockKind::MultiBridge {
            bridge_pairs.extend(input.edges.iter().filter(|[x, y]| input.is_lone(*x) && input.is_lone(*y)).map(
                |&[x, y]| {
                    let map = |i: Incidence| Incidence::new(input.verts[i.vertex as usize], i.sign);
                    (map(x), map(y))
                },
            ));
            continue;
        }
        inputs.push(input);
    }
    inputs.par_iter_mut().for_each(|input| {
        let h = UndirectedMultigraph::from_edges(
            input.verts.len(),
            input.edges.iter().map(|[a, b]| (a.vertex, b.vertex)),
        );
        input.tree = Some(build_spqr(&h).expect("blocks of a sign-cut graph are biconnected"));
    });
    PreparedPart { tips, tip_sign, bridge_pairs, inputs }
}

impl PreparedPart {
    fn detect(self) -> (Vec<Incidence>, Vec<(Incidence, Incidence)>) {
        let mut pairs = self.bridge_pairs;
        let found: Vec<Vec<(Incidence, Incidence)>> = self.inputs.par_iter().map(BlockInput::find).collect();
        pairs.extend(found.into_iter().flatten());

        let tip_sign = self.tip_sign;
        let is_tip = |i: Incidence| tip_sign[i.vertex as usize] == Some(i.sign);
        let mut pairs: Vec<_> =
            pairs.into_iter().filter(|&(a, b)| !(is_tip(a) && is_tip(b))).map(|(a, b)| ordered_pair(a, b)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        (self.tips, pairs)
    }
}

/// Replaces every self-loop `{v d1, v d2}` by a path `{v d1, p-}, {p+, v d2}`
/// through a fresh vertex `p`, which changes no snarl among the original
/// vertices. Returns `None` when there are no loops.
fn without_loops(g: &BidirectedGraph) -> Option<BidirectedGraph> {
    if !g.edges().iter().any(|[a, b]| a.vertex == b.vertex) {
        return None;
    }
    let mut h = BidirectedGraph::with_names(g.names().to_vec());
    for &[a, b] in g.edges() {
        if a.vertex == b.vertex {
            let p = h.add_vertex(format!("{}#loop", g.name(a.vertex)));
            h.add_edge(a, Incidence::minus(p));
            h.add_edge(Incidence::plus(p), b);
        } else {
            h.add_edge(a, b);
        }
    }
    Some(h)
}

/// All snarls of `g` as tip sets plus explicit pairs.
///
/// Sign-cut graphs and the blocks inside them are processed in parallel on
/// the current rayon pool; the result does not depend on the thread count.
pub fn find_snarls(g: &BidirectedGraph) -> SnarlRepresentation {
    find_snarls_timed(g).0
}

/// [`find_snarls`] with the time spent building block-cut and SPQR trees
/// reported apart from the detection itself.
pub fn find_snarls_timed(g: &BidirectedGraph) -> (SnarlRepresentation, PhaseTimes) {
    let clock = Instant::now();
    let original = g.vertex_count() as VertexId;
    let g: Cow<BidirectedGraph> = match without_loops(g) {
        Some(h) => Cow::Owned(h),
        None => Cow::Borrowed(g),
    };
    let parts: Vec<SignCutGraph> = crate::connectivity::sign_cut_graphs(&g);
    let prepared: Vec<(&SignCutGraph, PreparedPart)> =
        parts.par_iter().filter(|p| !p.isolated).map(|p| (p, prepare_part(&p.graph))).collect();
    let build = clock.elapsed();

    let clock = Instant::now();
    let results: Vec<_> = prepared
        .into_par_iter()
        .map(|(p, part)| {
            let (tips, pairs) = part.detect();
            let map = |i: Incidence| Incidence::new(p.to_source[i.vertex as usize], i.sign);
            let tips: Vec<Incidence> = tips.into_iter().map(map).filter(|i| i.vertex < original).collect();
            let pairs: Vec<_> = pairs
                .into_iter()
                .map(|(a, b)| ordered_pair(map(a), map(b)))
                .filter(|(a, b)| a.vertex < original && b.vertex < original)
                .collect();
            (tips, pairs)
        })
        .collect();
    let mut rep = SnarlRepresentation::default();
    for (mut tips, pairs) in results {
        if !tips.is_empty() {
            tips.sort_unstable();
            rep.tip_sets.push(tips);
        }
        rep.pairs.extend(pairs);
    }
    rep.pairs.sort_unstable();
    rep.pairs.dedup();
    (rep, PhaseTimes { build, detect: clock.elapsed() })
}

#[cfg(test)]
mod tests;
