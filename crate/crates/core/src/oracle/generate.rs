use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{BidirectedGraph, DirectedGraph, Incidence, Sign, UndirectedMultigraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Random spanning tree plus extra edges.
    Connected,
    /// A cycle grown by ears, plus chords.
    Biconnected,
    /// Arcs only go forward in a hidden vertex order; connected underneath.
    Dag,
    /// The given number of biconnected blocks glued at cutvertices.
    ChainOfBlocks(usize),
}

#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub shape: Shape,
    pub vertices: RangeInclusive<usize>,
    /// Edges added on top of what the shape needs.
    pub extra_edges: RangeInclusive<usize>,
    /// Probability that an edge end is `+` (bidirected output only).
    pub plus_bias: f64,
    /// Whether extra edges may be self-loops.
    pub loops: bool,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(shape: Shape, vertices: RangeInclusive<usize>, seed: u64) -> Self {
        GeneratorSpec { shape, vertices, extra_edges: 0..=2, plus_bias: 0.5, loops: false, seed }
    }

    pub fn extra_edges(mut self, r: RangeInclusive<usize>) -> Self {
        self.extra_edges = r;
        self
    }

    pub fn plus_bias(mut self, p: f64) -> Self {
        self.plus_bias = p;
        self
    }

    pub fn loops(mut self, yes: bool) -> Self {
        self.loops = yes;
        self
    }
}

/// Vertex count and edges in generation order; for `Dag` every edge points
/// forward in the returned order.
struct Skeleton {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

fn infeasible(msg: impl Into<String>) -> Error {
    Error::InfeasibleSpec(msg.into())
}

fn pick(rng: &mut ChaCha8Rng, r: &RangeInclusive<usize>) -> usize {
    if r.start() >= r.end() {
        *r.start()
    } else {
        rng.random_range(r.clone())
    }
}

/// Grows a biconnected block on `verts` (at least three) by ears.
fn grow_block(rng: &mut ChaCha8Rng, verts: &[VertexId], edges: &mut Vec<(VertexId, VertexId)>) {
    edges.extend([(verts[0], verts[1]), (verts[1], verts[2]), (verts[2], verts[0])]);
    let mut used = 3;
    while used < verts.len() {
        let a = verts[rng.random_range(0..used)];
        let mut b = verts[rng.random_range(0..used)];
        while b == a {
            b = verts[rng.random_range(0..used)];
        }
        let len = rng.random_range(1..=(verts.len() - used).min(3));
        let mut prev = a;
        for &x in &verts[used..used + len] {
            edges.push((prev, x));
            prev = x;
        }
        edges.push((prev, b));
        used += len;
    }
}

fn chord(rng: &mut ChaCha8Rng, verts: &[VertexId], loops: bool) -> (VertexId, VertexId) {
    let a = verts[rng.random_range(0..verts.len())];
    let mut b = verts[rng.random_range(0..verts.len())];
    while b == a && !loops && verts.len() > 1 {
        b = verts[rng.random_range(0..verts.len())];
    }
    (a, b)
}

fn skeleton(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<Skeleton, Error> {
    if spec.vertices.is_empty() {
        return Err(infeasible("empty vertex range"));
    }
    let n = pick(rng, &spec.vertices);
    let extra = pick(rng, &spec.extra_edges);
    let all: Vec<VertexId> = (0..n as VertexId).collect();
    let mut edges = Vec::new();
    match spec.shape {
        Shape::Connected | Shape::Dag => {
            for v in 1..n as VertexId {
                edges.push((rng.random_range(0..v), v));
            }
            if n > 0 {
                for _ in 0..extra {
                    let (a, b) = chord(rng, &all, spec.loops && spec.shape == Shape::Connected);
                    if spec.shape == Shape::Dag {
                        if a != b {
                            edges.push((a.min(b), a.max(b)));
                        }
                    } else {
                        edges.push((a, b));
                    }
                }
            }
        }
        Shape::Biconnected => {
            if n < 3 {
                return Err(infeasible("a biconnected shape needs at least 3 vertices"));
            }
            grow_block(rng, &all, &mut edges);
            for _ in 0..extra {
                edges.push(chord(rng, &all, spec.loops));
            }
        }
        Shape::ChainOfBlocks(blocks) => {
            if blocks == 0 || n < 2 * blocks + 1 {
                return Err(infeasible(format!("{blocks} blocks need at least {} vertices", 2 * blocks + 1)));
            }
            // every block gets a shared vertex plus at least two new ones
            let mut sizes = vec![2usize; blocks];
            sizes[0] = 3;
            for _ in 0..n - (2 * blocks + 1) {
                let i = rng.random_range(0..blocks);
                sizes[i] += 1;
            }
            let mut ranges = Vec::with_capacity(blocks);
            let mut next = 0 as VertexId;
            for (i, &size) in sizes.iter().enumerate() {
                let mut verts = Vec::with_capacity(size + 1);
                if i > 0 {
                    let (lo, hi): (VertexId, VertexId) = ranges[rng.random_range(0..i)];
                    verts.push(rng.random_range(lo..hi));
                }
                verts.extend(next..next + size as VertexId);
                ranges.push((next, next + size as VertexId));
                next += size as VertexId;
                grow_block(rng, &verts, &mut edges);
            }
            for _ in 0..extra {
                let (lo, hi) = ranges[rng.random_range(0..blocks)];
                let span: Vec<VertexId> = (lo..hi).collect();
                if span.len() >= 2 {
                    edges.push(chord(rng, &span, false));
                }
            }
        }
    }
    Ok(Skeleton { n, edges })
}

fn relabel(rng: &mut ChaCha8Rng, sk: &mut Skeleton) {
    let mut perm: Vec<VertexId> = (0..sk.n as VertexId).collect();
    perm.shuffle(rng);
    for e in &mut sk.edges {
        *e = (perm[e.0 as usize], perm[e.1 as usize]);
    }
}

/// Deterministic random multigraph; parallel edges are kept.
pub fn generate_undirected(spec: &GeneratorSpec) -> Result<UndirectedMultigraph, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut sk = skeleton(spec, &mut rng)?;
    relabel(&mut rng, &mut sk);
    Ok(UndirectedMultigraph::from_edges(sk.n, sk.edges))
}

/// Deterministic random bidirected graph; edge ends get `+` with
/// probability `plus_bias`. A `Dag` shape yields `{u+, v-}` edges only.
pub fn generate_bidirected(spec: &GeneratorSpec) -> Result<BidirectedGraph, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut sk = skeleton(spec, &mut rng)?;
    relabel(&mut rng, &mut sk);
    let mut g = BidirectedGraph::new(sk.n);
    for &(u, v) in &sk.edges {
        let (du, dv) = if spec.shape == Shape::Dag {
            (Sign::Plus, Sign::Minus)
        } else {
            let s = |r: &mut ChaCha8Rng| if r.random_bool(spec.plus_bias) { Sign::Plus } else { Sign::Minus };
            (s(&mut rng), s(&mut rng))
        };
        g.add_edge(Incidence::new(u, du), Incidence::new(v, dv));
    }
    Ok(g)
}

/// Deterministic random directed graph; edges get a random direction unless
/// the shape is `Dag`.
pub fn generate_directed(spec: &GeneratorSpec) -> Result<DirectedGraph, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut sk = skeleton(spec, &mut rng)?;
    relabel(&mut rng, &mut sk);
    let mut g = DirectedGraph::new(sk.n);
    for &(u, v) in &sk.edges {
        if spec.shape == Shape::Dag || rng.random_bool(0.5) {
            g.add_arc(u, v);
        } else {
            g.add_arc(v, u);
        }
    }
    Ok(g)
}
