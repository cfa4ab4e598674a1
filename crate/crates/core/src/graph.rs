//! Graph representations: bidirected, directed and undirected multigraphs.
//!
//! Vertex and edge identifiers are dense `u32` indices. Names are kept in a
//! side table so algorithms never touch strings.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::Not;

use crate::error::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// 0 for `+`, 1 for `-`; used to index per-sign arrays.
    pub fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Not for Sign {
    type Output = Sign;
    fn not(self) -> Sign {
        self.opposite()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A vertex together with the sign of one of its sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub vertex: VertexId,
    pub sign: Sign,
}

impl Incidence {
    pub fn new(vertex: VertexId, sign: Sign) -> Self {
        Incidence { vertex, sign }
    }

    pub fn plus(vertex: VertexId) -> Self {
        Incidence::new(vertex, Sign::Plus)
    }

    pub fn minus(vertex: VertexId) -> Self {
        Incidence::new(vertex, Sign::Minus)
    }

    pub fn flipped(self) -> Self {
        Incidence::new(self.vertex, !self.sign)
    }
}

fn normalize(a: Incidence, b: Incidence) -> [Incidence; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Bidirected graph: every edge joins two incidences. Identical incidence
/// pairs are collapsed on insertion.
#[derive(Clone, Debug, Default)]
pub struct BidirectedGraph {
    names: Vec<String>,
    edges: Vec<[Incidence; 2]>,
    adj: Vec<[Vec<EdgeId>; 2]>,
    index: HashMap<[Incidence; 2], EdgeId>,
}

impl BidirectedGraph {
    pub fn new(n: usize) -> Self {
        Self::with_names(default_names(n))
    }

    pub fn with_names(names: Vec<String>) -> Self {
        let adj = vec![[Vec::new(), Vec::new()]; names.len()];
        BidirectedGraph { names, edges: Vec::new(), adj, index: HashMap::new() }
    }

    /// Builds a graph on `n` vertices from `(u, d_u, v, d_v)` tuples.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, Sign, VertexId, Sign)>,
    {
        let mut g = Self::new(n);
        for (u, du, v, dv) in edges {
            g.add_edge(Incidence::new(u, du), Incidence::new(v, dv));
        }
        g
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(name.into());
        self.adj.push([Vec::new(), Vec::new()]);
        (self.names.len() - 1) as VertexId
    }

    /// Adds `{a, b}` and returns its id; an existing identical edge is reused.
    pub fn add_edge(&mut self, a: Incidence, b: Incidence) -> EdgeId {
        assert!((a.vertex as usize) < self.names.len() && (b.vertex as usize) < self.names.len());
        let key = normalize(a, b);
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.edges.len() as EdgeId;
        self.edges.push(key);
        self.index.insert(key, id);
        self.adj[key[0].vertex as usize][key[0].sign.index()].push(id);
        self.adj[key[1].vertex as usize][key[1].sign.index()].push(id);
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> [Incidence; 2] {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[[Incidence; 2]] {
        &self.edges
    }

    pub fn has_edge(&self, a: Incidence, b: Incidence) -> bool {
        self.index.contains_key(&normalize(a, b))
    }

    /// Edges attached to the `sign` side of `v`. A self-loop using that side
    /// twice is listed twice.
    pub fn incident(&self, v: VertexId, sign: Sign) -> &[EdgeId] {
        &self.adj[v as usize][sign.index()]
    }

    pub fn sign_degree(&self, v: VertexId, sign: Sign) -> usize {
        self.adj[v as usize][sign.index()].len()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.sign_degree(v, Sign::Plus) + self.sign_degree(v, Sign::Minus)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Vertices whose incidences all carry the same sign, as that incidence.
    /// Isolated vertices are not tips.
    pub fn tips(&self) -> Vec<Incidence> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() as VertexId {
            let p = self.sign_degree(v, Sign::Plus);
            let m = self.sign_degree(v, Sign::Minus);
            if p > 0 && m == 0 {
                out.push(Incidence::plus(v));
            } else if m > 0 && p == 0 {
                out.push(Incidence::minus(v));
            }
        }
        out
    }

    /// Splits `inc.vertex` along its sides: the original vertex keeps every
    /// incidence of sign `inc.sign`, a fresh vertex (returned) receives the
    /// incidences of the opposite sign with their signs unchanged.
    pub fn split(&self, inc: Incidence) -> Result<(BidirectedGraph, VertexId), Error> {
        if inc.vertex as usize >= self.vertex_count() {
            return Err(Error::UnknownVertex(inc.vertex));
        }
        let mut names = self.names.clone();
        names.push(format!("{}'", self.name(inc.vertex)));
        let fresh = (names.len() - 1) as VertexId;
        let mut g = BidirectedGraph::with_names(names);
        let moved = |i: Incidence| {
            if i.vertex == inc.vertex && i.sign != inc.sign {
                Incidence::new(fresh, i.sign)
            } else {
                i
            }
        };
        for &[a, b] in &self.edges {
            g.add_edge(moved(a), moved(b));
        }
        Ok((g, fresh))
    }

    /// Underlying undirected multigraph; edge `i` stems from edge `i`.
    pub fn underlying(&self) -> UndirectedMultigraph {
        let mut u = UndirectedMultigraph::new(self.vertex_count());
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            u.add_edge_with_source(a.vertex, b.vertex, i as EdgeId);
        }
        u
    }

    /// Directed graph with one arc per edge, oriented as in a link
    /// `a + b +`: the `+` side is the tail side. Returns `None` unless every
    /// edge has the shape `{u+, v-}`.
    pub fn underlying_directed(&self) -> Option<DirectedGraph> {
        let mut d = DirectedGraph::with_names(self.names.clone());
        for &[a, b] in &self.edges {
            match (a.sign, b.sign) {
                (Sign::Plus, Sign::Minus) => d.add_arc(a.vertex, b.vertex),
                (Sign::Minus, Sign::Plus) => d.add_arc(b.vertex, a.vertex),
                _ => return None,
            };
        }
        Some(d)
    }

    /// Doubled directed graph. Vertex `w` becomes `2w` (forward copy, named
    /// `w+`) and `2w + 1` (reverse copy, named `w-`). Every edge yields the two
    /// arcs of its two traversal directions.
    pub fn double(&self) -> DirectedGraph {
        let mut names = Vec::with_capacity(2 * self.vertex_count());
        for n in &self.names {
            names.push(format!("{n}+"));
            names.push(format!("{n}-"));
        }
        let mut d = DirectedGraph::with_names(names);
        for &[a, b] in &self.edges {
            d.add_arc(exit_copy(a), enter_copy(b));
            d.add_arc(exit_copy(b), enter_copy(a));
        }
        d
    }
}

/// Copy of `i.vertex` a walk occupies when it leaves through side `i.sign`.
pub fn exit_copy(i: Incidence) -> VertexId {
    2 * i.vertex + i.sign.index() as VertexId
}

/// Copy of `i.vertex` a walk occupies when it enters through side `i.sign`.
pub fn enter_copy(i: Incidence) -> VertexId {
    2 * i.vertex + (!i.sign).index() as VertexId
}

/// Simple directed graph (self-loops allowed, parallel arcs collapsed).
#[derive(Clone, Debug, Default)]
pub struct DirectedGraph {
    names: Vec<String>,
    arcs: Vec<(VertexId, VertexId)>,
    out: Vec<Vec<EdgeId>>,
    inn: Vec<Vec<EdgeId>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl DirectedGraph {
    pub fn new(n: usize) -> Self {
        Self::with_names(default_names(n))
    }

    pub fn with_names(names: Vec<String>) -> Self {
        let n = names.len();
        DirectedGraph {
            names,
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.names.push(name.into());
        self.out.push(Vec::new());
        self.inn.push(Vec::new());
        (self.names.len() - 1) as VertexId
    }

    pub fn add_arc(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        assert!((u as usize) < self.names.len() && (v as usize) < self.names.len());
        if let Some(&id) = self.index.get(&(u, v)) {
            return id;
        }
        let id = self.arcs.len() as EdgeId;
        self.arcs.push((u, v));
        self.index.insert((u, v), id);
        self.out[u as usize].push(id);
        self.inn[v as usize].push(id);
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc(&self, a: EdgeId) -> (VertexId, VertexId) {
        self.arcs[a as usize]
    }

    pub fn arcs(&self) -> &[(VertexId, VertexId)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.index.contains_key(&(u, v))
    }

    pub fn out_arcs(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v as usize]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[EdgeId] {
        &self.inn[v as usize]
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out[v as usize].iter().map(move |&a| self.arcs[a as usize].1)
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.inn[v as usize].iter().map(move |&a| self.arcs[a as usize].0)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn underlying(&self) -> UndirectedMultigraph {
        let mut u = UndirectedMultigraph::new(self.vertex_count());
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            u.add_edge_with_source(a, b, i as EdgeId);
        }
        u
    }

    /// Vertices reachable from `v`, including `v`.
    pub fn reachable_from(&self, v: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([v]);
        seen[v as usize] = true;
        while let Some(x) = queue.pop_front() {
            for y in self.out_neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// Undirected multigraph. Parallel edges and self-loops are kept, and every
/// edge remembers the id of the edge it was derived from.
#[derive(Clone, Debug, Default)]
pub struct UndirectedMultigraph {
    n: usize,
    edges: Vec<[VertexId; 2]>,
    source: Vec<EdgeId>,
}

impl UndirectedMultigraph {
    pub fn new(n: usize) -> Self {
        UndirectedMultigraph { n, edges: Vec::new(), source: Vec::new() }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let id = self.edges.len() as EdgeId;
        self.add_edge_with_source(u, v, id)
    }

    pub fn add_edge_with_source(&mut self, u: VertexId, v: VertexId, source: EdgeId) -> EdgeId {
        assert!((u as usize) < self.n && (v as usize) < self.n);
        self.edges.push([u, v]);
        self.source.push(source);
        (self.edges.len() - 1) as EdgeId
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn source(&self, e: EdgeId) -> EdgeId {
        self.source[e as usize]
    }

    /// Compressed adjacency: for each vertex the `(edge, neighbour)` pairs.
    /// A self-loop contributes a single entry.
    pub fn adjacency(&self) -> Adjacency {
        let mut deg = vec![0u32; self.n + 1];
        for &[u, v] in &self.edges {
            deg[u as usize] += 1;
            if u != v {
                deg[v as usize] += 1;
            }
        }
        let mut start = vec![0u32; self.n + 1];
        for i in 0..self.n {
            start[i + 1] = start[i] + deg[i];
        }
        let mut fill = start.clone();
        let mut entries = vec![(0, 0); start[self.n] as usize];
        for (e, &[u, v]) in self.edges.iter().enumerate() {
            entries[fill[u as usize] as usize] = (e as EdgeId, v);
            fill[u as usize] += 1;
            if u != v {
                entries[fill[v as usize] as usize] = (e as EdgeId, u);
                fill[v as usize] += 1;
            }
        }
        Adjacency { start, entries }
    }
}

#[derive(Clone, Debug)]
pub struct Adjacency {
    start: Vec<u32>,
    entries: Vec<(EdgeId, VertexId)>,
}

impl Adjacency {
    pub fn of(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.entries[self.start[v as usize] as usize..self.start[v as usize + 1] as usize]
    }
}
