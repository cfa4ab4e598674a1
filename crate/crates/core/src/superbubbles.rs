//! Superbubble enumeration over block-cut and SPQR trees.
//!
//! Every arc is tested as a trivial superbubble and every biconnected block as
//! a whole. Inside a block the remaining candidates are the poles of P-nodes
//! and of tree edges next to R-nodes. Each side of every SPQR tree edge is
//! summarized by a [`State`], first bottom-up and then top-down.

use crate::connectivity::{block_cut_tree, Block, BlockKind};
use crate::feedback::{feedback_arcs_multi, FeedbackArcs};
use crate::graph::{DirectedGraph, Incidence, UndirectedMultigraph, VertexId};
use crate::snarls::{incidence_counts, IncidenceCounts};
use crate::spqr::{build_spqr, NodeKind, SkeletonEdgeKind, SpqrTree};
use crate::PhaseTimes;
use rayon::prelude::*;
use std::time::Instant;

const UNSET: u32 = u32::MAX;

/// Summary of the expansion `X` of one side of a tree edge with ends `[a, b]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct State {
    /// No vertex of `X` other than `a` and `b` is an extremity.
    clean: bool,
    /// Whether `X` is acyclic; `None` when `X` is not clean.
    acyclic: Option<bool>,
    /// For a clean acyclic `X`: `a` is its source and `b` its sink.
    forward: bool,
}

impl State {
    fn usable(self) -> bool {
        self.clean && self.acyclic == Some(true)
    }
}

/// Facts about the whole graph. Self-loops are left out of the degrees.
struct Context<'a> {
    g: &'a DirectedGraph,
    looped: Vec<bool>,
    out_degree: Vec<u32>,
    in_degree: Vec<u32>,
    /// Source, sink, cutvertex of the underlying graph, or loop vertex.
    extremity: Vec<bool>,
}

/// All superbubbles `(s, t)` of `g`, sorted.
pub fn find_superbubbles(g: &DirectedGraph) -> Vec<(VertexId, VertexId)> {
    find_superbubbles_timed(g).0
}

/// [`find_superbubbles`] with tree building timed apart from detection.
pub fn find_superbubbles_timed(g: &DirectedGraph) -> (Vec<(VertexId, VertexId)>, PhaseTimes) {
    let clock = Instant::now();
    let n = g.vertex_count();
    let mut looped = vec![false; n];
    let mut out_degree = vec![0u32; n];
    let mut in_degree = vec![0u32; n];
    for &(u, v) in g.arcs() {
        if u == v {
            looped[u as usize] = true;
        } else {
            out_degree[u as usize] += 1;
            in_degree[v as usize] += 1;
        }
    }
    let bct = block_cut_tree(&g.underlying());
    let extremity = (0..n)
        .map(|v| looped[v] || out_degree[v] == 0 || in_degree[v] == 0 || bct.is_cutvertex(v as VertexId))
        .collect();
    let cx = Context { g, looped, out_degree, in_degree, extremity };
    let searches: Vec<BlockSearch> = bct
        .blocks
        .par_iter()
        .filter(|b| b.kind == BlockKind::TwoConnected)
        .map(|b| BlockSearch::new(&cx, b))
        .collect();
    let build = clock.elapsed();

    let clock = Instant::now();

    let mut found: Vec<(VertexId, VertexId)> = g
        .arcs()
        .iter()
        .copied()
        .filter(|&(s, t)| {
            s != t && cx.out_degree[s as usize] == 1 && cx.in_degree[t as usize] == 1 && !g.has_arc(t, s)
        })
        .collect();
    let per_block: Vec<Vec<(VertexId, VertexId)>> = searches.par_iter().map(BlockSearch::find).collect();
    found.extend(per_block.into_iter().flatten());
    found.retain(|&(s, t)| !cx.looped[s as usize] && !cx.looped[t as usize]);
    found.sort_unstable();
    found.dedup();
    (found, PhaseTimes { build, detect: clock.elapsed() })
}

/// One biconnected block with block-local vertex ids.
struct BlockSearch<'a> {
    cx: &'a Context<'a>,
    verts: Vec<VertexId>,
    /// Arc `i` is block edge `i`, which is also real edge `i` of the tree.
    arcs: Vec<(VertexId, VertexId)>,
    tree: SpqrTree,
}

impl<'a> BlockSearch<'a> {
    fn new(cx: &'a Context<'a>, block: &Block) -> Self {
        let local = |v: VertexId| block.vertices.binary_search(&v).expect("block vertex") as VertexId;
        let arcs = block
            .edges
            .iter()
            .map(|&e| {
                let (u, v) = cx.g.arc(e);
                (local(u), local(v))
            })
            .collect::<Vec<_>>();
        let h = UndirectedMultigraph::from_edges(block.vertices.len(), arcs.iter().copied());
        let tree = build_spqr(&h).expect("two-connected block");
        BlockSearch { cx, verts: block.vertices.clone(), arcs, tree }
    }

    fn global(&self, v: VertexId) -> VertexId {
        self.verts[v as usize]
    }

    fn extremity(&self, v: VertexId) -> bool {
        self.cx.extremity[self.global(v) as usize]
    }

    fn find(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<(VertexId, VertexId)> = self.whole_block().into_iter().collect();
        if self.tree.nodes.len() >= 2 {
            let mut phases = Phases::new(self, &self.tree);
            phases.bottom_up();
            phases.top_down();
            out.extend(phases.report());
        }
        out
    }

    /// The block itself as `B_st`: one source, one sink, no inner extremity,
    /// the neighborhoods of `s` and `t` inside, and no cycle.
    fn whole_block(&self) -> Option<(VertexId, VertexId)> {
        let k = self.verts.len();
        let mut outs = vec![0u32; k];
        let mut ins = vec![0u32; k];
        for &(u, v) in &self.arcs {
            outs[u as usize] += 1;
            ins[v as usize] += 1;
        }
        let mut sources = (0..k).filter(|&v| ins[v] == 0);
        let mut sinks = (0..k).filter(|&v| outs[v] == 0);
        let (s, t) = match (sources.next(), sources.next(), sinks.next(), sinks.next()) {
            (Some(s), None, Some(t), None) => (s, t),
            _ => return None,
        };
        let (gs, gt) = (self.global(s as VertexId), self.global(t as VertexId));
        let cx = self.cx;
        let inner_clean = (0..k).all(|v| v == s || v == t || !self.extremity(v as VertexId));
        let confined = outs[s] == cx.out_degree[gs as usize] && ins[t] == cx.in_degree[gt as usize];
        let ok = inner_clean
            && confined
            && !cx.g.has_arc(gt, gs)
            && feedback_arcs_multi(k, &self.arcs) == FeedbackArcs::Acyclic;
        ok.then_some((gs, gt))
    }
}

struct Phases<'b, 'a> {
    block: &'b BlockSearch<'a>,
    tree: &'b SpqrTree,
    incidences: Vec<[Incidence; 2]>,
    counts: IncidenceCounts,
    /// State of the child side of each tree edge.
    down: Vec<State>,
    /// State of the parent side of each tree edge.
    up: Vec<State>,
    /// Scratch, all `UNSET` between uses.
    position: Vec<u32>,
    /// Scratch, all zero between uses.
    out_count: Vec<u32>,
}

impl<'b, 'a> Phases<'b, 'a> {
    fn new(block: &'b BlockSearch<'a>, tree: &'b SpqrTree) -> Self {
        // an arc u -> v counts as an out-incidence (+) at u and an in-incidence (-) at v
        let incidences: Vec<[Incidence; 2]> =
            block.arcs.iter().map(|&(u, v)| [Incidence::plus(u), Incidence::minus(v)]).collect();
        let counts = incidence_counts(&incidences, tree);
        let k = block.verts.len();
        let m = tree.tree_edges.len();
        Phases {
            block,
            tree,
            incidences,
            counts,
            down: vec![State::default(); m],
            up: vec![State::default(); m],
            position: vec![UNSET; k],
            out_count: vec![0; k],
        }
    }

    /// State of the expansion of the skeleton edge of `node` on tree edge `t`.
    fn beyond(&self, node: u32, t: u32) -> State {
        if self.tree.tree_edges[t as usize].parent == node {
            self.down[t as usize]
        } else {
            self.up[t as usize]
        }
    }

    /// The arc a skeleton edge stands for in the directed skeleton, if known.
    fn slot_arc(&self, node: u32, slot: usize) -> Option<(VertexId, VertexId)> {
        match self.tree.nodes[node as usize].edges[slot].kind {
            SkeletonEdgeKind::Real(e) => Some(self.block.arcs[e as usize]),
            SkeletonEdgeKind::Virtual(t) => {
                let st = self.beyond(node, t);
                let [a, b] = self.tree.tree_edges[t as usize].ends;
                st.usable().then_some(if st.forward { (a, b) } else { (b, a) })
            }
        }
    }

    /// Known arcs of the directed skeleton of `node` with their slots,
    /// leaving out `skip`.
    fn skeleton_arcs(&self, node: u32, skip: Option<usize>) -> Vec<(usize, (VertexId, VertexId))> {
        (0..self.tree.nodes[node as usize].edges.len())
            .filter(|&slot| Some(slot) != skip)
            .filter_map(|slot| self.slot_arc(node, slot).map(|a| (slot, a)))
            .collect()
    }

    /// Feedback arcs of a small arc list over block vertices, with arc ids
    /// being positions in `arcs`.
    fn feedback(&mut self, arcs: &[(usize, (VertexId, VertexId))]) -> FeedbackArcs {
        let mut seen = Vec::new();
        let mut compact = Vec::with_capacity(arcs.len());
        for &(_, (u, v)) in arcs {
            for x in [u, v] {
                if self.position[x as usize] == UNSET {
                    self.position[x as usize] = seen.len() as u32;
                    seen.push(x);
                }
            }
            compact.push((self.position[u as usize], self.position[v as usize]));
        }
        for x in &seen {
            self.position[*x as usize] = UNSET;
        }
        feedback_arcs_multi(seen.len(), &compact)
    }

    fn bottom_up(&mut self) {
        let tree = self.tree;
        for &node in tree.preorder.iter().rev() {
            let skel = &tree.nodes[node as usize];
            let Some(p) = skel.parent_edge else { continue };
            let te = tree.tree_edges[p as usize];
            let mut clean =
                skel.edges.iter().flat_map(|e| e.ends).all(|v| te.ends.contains(&v) || !self.block.extremity(v));
            let mut inner_acyclic = true;
            for se in &skel.edges {
                if let SkeletonEdgeKind::Virtual(c) = se.kind {
                    if c != p {
                        clean &= self.down[c as usize].clean;
                        inner_acyclic &= self.down[c as usize].acyclic == Some(true);
                    }
                }
            }
            self.down[p as usize] = if !clean {
                State::default()
            } else if !inner_acyclic {
                State { clean, acyclic: Some(false), forward: false }
            } else {
                let arcs = self.skeleton_arcs(node, Some(te.child_slot as usize));
                let acyclic = self.feedback(&arcs) == FeedbackArcs::Acyclic;
                let forward = arcs.iter().any(|&(_, (u, _))| u == te.ends[0]);
                State { clean, acyclic: Some(acyclic), forward }
            };
        }
    }

    fn top_down(&mut self) {
        let tree = self.tree;
        for &node in &tree.preorder {
            let skel = &tree.nodes[node as usize];
            if skel.children.is_empty() {
                continue;
            }
            let extremes: Vec<VertexId> =
                tree.node_vertices(node).into_iter().filter(|&v| self.block.extremity(v)).collect();
            let mut unclean = Vec::new();
            let mut cyclic_or_unknown = Vec::new();
            for (slot, se) in skel.edges.iter().enumerate() {
                if let SkeletonEdgeKind::Virtual(t) = se.kind {
                    let st = self.beyond(node, t);
                    if !st.clean {
                        unclean.push(slot);
                    }
                    if st.acyclic != Some(true) {
                        cyclic_or_unknown.push(slot);
                    }
                }
            }
            let arcs = self.skeleton_arcs(node, None);
            for &(_, (u, _)) in &arcs {
                self.out_count[u as usize] += 1;
            }
            // with every side acyclic, dropping one virtual arc leaves an
            // acyclic skeleton exactly when that arc lies on every cycle
            let mut on_every_cycle: Option<Vec<bool>> = None;
            if cyclic_or_unknown.is_empty() {
                let mut marks = vec![false; skel.edges.len()];
                match self.feedback(&arcs) {
                    FeedbackArcs::Acyclic => marks.fill(true),
                    FeedbackArcs::Hitters(h) => h.into_iter().for_each(|a| marks[arcs[a as usize].0] = true),
                }
                on_every_cycle = Some(marks);
            }
            let mut lone_cyclic_acyclic = None;
            for (slot, se) in skel.edges.iter().enumerate() {
                let SkeletonEdgeKind::Virtual(t) = se.kind else { continue };
                let te = tree.tree_edges[t as usize];
                if te.parent != node {
                    continue;
                }
                let clean = extremes.iter().all(|v| te.ends.contains(v)) && unclean.iter().all(|&j| j == slot);
                let state = if !clean {
                    State::default()
                } else if cyclic_or_unknown.iter().any(|&j| j != slot) {
                    State { clean, acyclic: Some(false), forward: false }
                } else {
                    let acyclic = match &on_every_cycle {
                        Some(marks) => marks[slot],
                        None => *lone_cyclic_acyclic
                            .get_or_insert_with(|| self.feedback(&arcs) == FeedbackArcs::Acyclic),
                    };
                    let own = self.slot_arc(node, slot).filter(|&(u, _)| u == te.ends[0]).is_some();
                    let forward = self.out_count[te.ends[0] as usize] > u32::from(own);
                    State { clean, acyclic: Some(acyclic), forward }
                };
                self.up[t as usize] = state;
            }
            for &(_, (u, _)) in &arcs {
                self.out_count[u as usize] = 0;
            }
        }
    }

    fn report(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for node in 0..self.tree.nodes.len() as u32 {
            match self.tree.nodes[node as usize].kind {
                NodeKind::P => self.report_bundle(node, &mut out),
                NodeKind::R => self.report_rigid(node, &mut out),
                NodeKind::S => {}
            }
        }
        out
    }

    /// Whether `s` has all its out-arcs and `t` all its in-arcs among the
    /// counted ones, and there is no arc `t -> s`.
    fn closes(&self, s: VertexId, t: VertexId, s_out: u32, t_in: u32) -> bool {
        let (gs, gt) = (self.block.global(s), self.block.global(t));
        let cx = self.block.cx;
        s_out == cx.out_degree[gs as usize] && t_in == cx.in_degree[gt as usize] && !cx.g.has_arc(gt, gs)
    }

    fn report_bundle(&self, node: u32, out: &mut Vec<(VertexId, VertexId)>) {
        let skel = &self.tree.nodes[node as usize];
        let [a, b] = skel.edges[0].ends;
        for (s, t) in [(a, b), (b, a)] {
            let mut s_out = 0;
            let mut t_in = 0;
            let mut used = Vec::new();
            let mut ok = true;
            for slot in 0..skel.edges.len() {
                let so = self.counts.of_slot(self.tree, &self.incidences, node, slot as u32, s)[0];
                let ti = self.counts.of_slot(self.tree, &self.incidences, node, slot as u32, t)[1];
                if (so > 0) != (ti > 0) {
                    ok = false;
                    break;
                }
                if so == 0 {
                    continue;
                }
                if let SkeletonEdgeKind::Virtual(te) = skel.edges[slot].kind {
                    if !self.beyond(node, te).usable() {
                        ok = false;
                        break;
                    }
                }
                s_out += so;
                t_in += ti;
                used.push(slot);
            }
            if !ok || used.is_empty() || !self.closes(s, t, s_out, t_in) {
                continue;
            }
            // a lone cycle side is never minimal
            if let [slot] = used[..] {
                if let SkeletonEdgeKind::Virtual(te) = skel.edges[slot].kind {
                    let (other, _) = self.tree.twin(te, node);
                    if self.tree.nodes[other as usize].kind == NodeKind::S {
                        continue;
                    }
                }
            }
            out.push((self.block.global(s), self.block.global(t)));
        }
    }

    fn report_rigid(&self, node: u32, out: &mut Vec<(VertexId, VertexId)>) {
        for se in &self.tree.nodes[node as usize].edges {
            let SkeletonEdgeKind::Virtual(t) = se.kind else { continue };
            let (other, _) = self.tree.twin(t, node);
            if self.tree.nodes[other as usize].kind == NodeKind::P {
                continue;
            }
            // the side holding this R-node, seen from its neighbor
            let x = self.beyond(other, t);
            if !x.usable() {
                continue;
            }
            let [a, b] = self.tree.tree_edges[t as usize].ends;
            let (s, t_end) = if x.forward { (a, b) } else { (b, a) };
            let side = |w: VertexId| {
                if self.tree.tree_edges[t as usize].child == node {
                    self.counts.child_side(self.tree, t, w)
                } else {
                    self.counts.parent_side(self.tree, t, w)
                }
            };
            if self.closes(s, t_end, side(s)[0], side(t_end)[1]) {
                out.push((self.block.global(s), self.block.global(t_end)));
            }
        }
    }
}

#[cfg(test)]
mod tests;
