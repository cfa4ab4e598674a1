//! Blocks, cutvertices and sign-cut graphs.

use crate::graph::{BidirectedGraph, EdgeId, Incidence, Sign, UndirectedMultigraph, VertexId};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// At least three vertices and no cutvertex.
    TwoConnected,
    /// Exactly two vertices joined by one or more parallel edges.
    MultiBridge,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub kind: BlockKind,
    /// Edge ids of the input multigraph, ascending.
    pub edges: Vec<EdgeId>,
    /// Vertex ids, ascending.
    pub vertices: Vec<VertexId>,
}

/// Block-cut tree of an undirected multigraph. Self-loops belong to no block
/// and are listed in `loops`.
#[derive(Clone, Debug)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    pub cutvertices: Vec<VertexId>,
    pub loops: Vec<EdgeId>,
    block_of_edge: Vec<u32>,
    is_cut: Vec<bool>,
    vertex_blocks: Vec<Vec<u32>>,
}

impl BlockCutTree {
    pub fn block_of_edge(&self, e: EdgeId) -> Option<usize> {
        let b = self.block_of_edge[e as usize];
        (b != NONE).then_some(b as usize)
    }

    pub fn is_cutvertex(&self, v: VertexId) -> bool {
        self.is_cut[v as usize]
    }

    /// Blocks containing `v`.
    pub fn blocks_of(&self, v: VertexId) -> &[u32] {
        &self.vertex_blocks[v as usize]
    }

    /// `(block, cutvertex)` pairs, one per tree edge.
    pub fn tree_edges(&self) -> Vec<(usize, VertexId)> {
        let mut out = Vec::new();
        for &c in &self.cutvertices {
            for &b in &self.vertex_blocks[c as usize] {
                out.push((b as usize, c));
            }
        }
        out
    }
}

/// Biconnected components by an iterative Hopcroft-Tarjan search.
pub fn block_cut_tree(g: &UndirectedMultigraph) -> BlockCutTree {
    let n = g.vertex_count();
    let m = g.edge_count();
    let adj = g.adjacency();
    let mut disc = vec![0u32; n];
    let mut low = vec![0u32; n];
    let mut time = 0u32;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut block_of_edge = vec![NONE; m];
    let mut raw_blocks: Vec<Vec<EdgeId>> = Vec::new();
    // frame: (vertex, edge used to enter it, next adjacency position)
    let mut frames: Vec<(VertexId, EdgeId, usize)> = Vec::new();

    for root in 0..n as VertexId {
        if disc[root as usize] != 0 {
            continue;
        }
        time += 1;
        disc[root as usize] = time;
        low[root as usize] = time;
        frames.push((root, NONE, 0));
        while let Some(&mut (v, pe, ref mut pos)) = frames.last_mut() {
            let list = adj.of(v);
            if *pos < list.len() {
                let (e, w) = list[*pos];
                *pos += 1;
                if e == pe || w == v {
                    continue;
                }
                if disc[w as usize] == 0 {
                    edge_stack.push(e);
                    time += 1;
                    disc[w as usize] = time;
                    low[w as usize] = time;
                    frames.push((w, e, 0));
                } else if disc[w as usize] < disc[v as usize] {
                    edge_stack.push(e);
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(u, _, _)) = frames.last() {
                low[u as usize] = low[u as usize].min(low[v as usize]);
                if low[v as usize] >= disc[u as usize] {
                    let id = raw_blocks.len() as u32;
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block_of_edge[e as usize] = id;
                        block.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    raw_blocks.push(block);
                }
            }
        }
    }

    let mut vertex_blocks: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut mark = vec![NONE; n];
    let mut blocks = Vec::with_capacity(raw_blocks.len());
    for (id, mut edges) in raw_blocks.into_iter().enumerate() {
        edges.sort_unstable();
        let mut vertices = Vec::new();
        for &e in &edges {
            for x in g.edge(e) {
                if mark[x as usize] != id as u32 {
                    mark[x as usize] = id as u32;
                    vertices.push(x);
                    vertex_blocks[x as usize].push(id as u32);
                }
            }
        }
        vertices.sort_unstable();
        let kind = if vertices.len() == 2 { BlockKind::MultiBridge } else { BlockKind::TwoConnected };
        blocks.push(Block { kind, edges, vertices });
    }
    let is_cut: Vec<bool> = vertex_blocks.iter().map(|b| b.len() >= 2).collect();
    let cutvertices = (0..n as VertexId).filter(|&v| is_cut[v as usize]).collect();
    let loops = (0..m as EdgeId).filter(|&e| g.edge(e)[0] == g.edge(e)[1]).collect();
    BlockCutTree { blocks, cutvertices, loops, block_of_edge, is_cut, vertex_blocks }
}

/// Sign masks of each block at its vertices, aligned with `Block::vertices`:
/// bit 0 is set for a `+` incidence inside the block, bit 1 for `-`.
pub(crate) fn block_sign_masks(g: &BidirectedGraph, bct: &BlockCutTree) -> Vec<Vec<u8>> {
    let mut scratch = vec![0u8; g.vertex_count()];
    bct.blocks
        .iter()
        .map(|block| {
            for &e in &block.edges {
                for i in g.edge(e) {
                    scratch[i.vertex as usize] |= 1 << i.sign.index();
                }
            }
            block
                .vertices
                .iter()
                .map(|&v| std::mem::take(&mut scratch[v as usize]))
                .collect()
        })
        .collect()
}

/// Number of blocks in which each vertex has incidences of both signs.
pub(crate) fn mixed_block_counts(bct: &BlockCutTree, masks: &[Vec<u8>], n: usize) -> Vec<u32> {
    let mut mixed = vec![0u32; n];
    for (block, m) in bct.blocks.iter().zip(masks) {
        for (&v, &mask) in block.vertices.iter().zip(m) {
            if mask == 3 {
                mixed[v as usize] += 1;
            }
        }
    }
    mixed
}

/// Cutvertices at which every incident block uses a single sign. A
/// self-loop joining both signs of a vertex disqualifies it.
pub fn sign_consistent_vertices(g: &BidirectedGraph, bct: &BlockCutTree) -> Vec<bool> {
    let masks = block_sign_masks(g, bct);
    let mut mixed = mixed_block_counts(bct, &masks, g.vertex_count());
    for &e in &bct.loops {
        let [a, b] = g.edge(e);
        if a.sign != b.sign {
            mixed[a.vertex as usize] += 1;
        }
    }
    (0..g.vertex_count())
        .map(|v| bct.is_cutvertex(v as VertexId) && mixed[v] == 0)
        .collect()
}

/// A connected component of the graph obtained by splitting every
/// sign-consistent vertex.
#[derive(Clone, Debug)]
pub struct SignCutGraph {
    pub graph: BidirectedGraph,
    /// Source vertex of each local vertex.
    pub to_source: Vec<VertexId>,
    /// Source edge of each local edge.
    pub source_edges: Vec<EdgeId>,
    /// True for components without edges.
    pub isolated: bool,
}

/// Identifies the split copy of each vertex side: sign-consistent vertices
/// get one node per sign, every other vertex a single node.
pub(crate) struct SideNodes {
    base: Vec<u32>,
    split: Vec<bool>,
    pub count: usize,
}

impl SideNodes {
    pub fn new(split: Vec<bool>) -> Self {
        let mut base = Vec::with_capacity(split.len());
        let mut count = 0u32;
        for &s in &split {
            base.push(count);
            count += if s { 2 } else { 1 };
        }
        SideNodes { base, split, count: count as usize }
    }

    pub fn node(&self, i: Incidence) -> usize {
        let v = i.vertex as usize;
        if self.split[v] {
            (self.base[v] + i.sign.index() as u32) as usize
        } else {
            self.base[v] as usize
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }
}

/// Splits all sign-consistent vertices and returns the resulting components,
/// ordered by their smallest side node.
pub fn sign_cut_graphs(g: &BidirectedGraph) -> Vec<SignCutGraph> {
    let bct = block_cut_tree(&g.underlying());
    let consistent = sign_consistent_vertices(g, &bct);
    let sides = SideNodes::new(consistent.clone());
    let mut uf = UnionFind::new(sides.count);
    for &[a, b] in g.edges() {
        uf.union(sides.node(a), sides.node(b));
    }
    let mut comp_of_root = vec![NONE; sides.count];
    let mut comps: Vec<SignCutGraph> = Vec::new();
    let mut local: Vec<u32> = vec![NONE; sides.count];
    for v in 0..g.vertex_count() as VertexId {
        let copies: &[Sign] = if consistent[v as usize] { &Sign::BOTH } else { &[Sign::Plus] };
        for &s in copies {
            let node = sides.node(Incidence::new(v, s));
            let root = uf.find(node);
            if comp_of_root[root] == NONE {
                comp_of_root[root] = comps.len() as u32;
                comps.push(SignCutGraph {
                    graph: BidirectedGraph::new(0),
                    to_source: Vec::new(),
                    source_edges: Vec::new(),
                    isolated: true,
                });
            }
            let c = &mut comps[comp_of_root[root] as usize];
            let name = if consistent[v as usize] {
                format!("{}{}", g.name(v), s.as_char())
            } else {
                g.name(v).to_string()
            };
            local[node] = c.graph.add_vertex(name);
            c.to_source.push(v);
        }
    }
    for (e, &[a, b]) in g.edges().iter().enumerate() {
        let (na, nb) = (sides.node(a), sides.node(b));
        let c = &mut comps[comp_of_root[uf.find(na)] as usize];
        c.graph.add_edge(Incidence::new(local[na], a.sign), Incidence::new(local[nb], b.sign));
        c.source_edges.push(e as EdgeId);
        c.isolated = false;
    }
    comps
}
