//! Linear-time triconnected components (path-search formulation).
//!
//! Edge bookkeeping: creating a virtual edge adds it to the working graph,
//! moving an edge into a component removes it. Degrees and high-point lists
//! follow these two operations only.

use super::{NodeKind, RawComponent, RawEdge};
use crate::graph::{UndirectedMultigraph, VertexId};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeType {
    Unseen,
    Tree,
    Frond,
}

#[derive(Clone, Copy)]
struct Triple {
    h: u32,
    a: u32,
    b: u32,
}

const EOS: Triple = Triple { h: NONE, a: 0, b: 0 };

impl Triple {
    fn is_eos(&self) -> bool {
        self.h == NONE
    }
}

/// Doubly linked lists of frond sources per vertex, stored in one pool.
#[derive(Default)]
struct HighLists {
    head: Vec<u32>,
    tail: Vec<u32>,
    val: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    owner: Vec<u32>,
}

impl HighLists {
    fn new(n: usize) -> Self {
        HighLists { head: vec![NONE; n], tail: vec![NONE; n], ..Default::default() }
    }

    fn alloc(&mut self, v: u32, val: u32) -> u32 {
        self.val.push(val);
        self.next.push(NONE);
        self.prev.push(NONE);
        self.owner.push(v);
        (self.val.len() - 1) as u32
    }

    fn push_back(&mut self, v: u32, val: u32) -> u32 {
        let id = self.alloc(v, val);
        let t = self.tail[v as usize];
        self.prev[id as usize] = t;
        if t == NONE {
            self.head[v as usize] = id;
        } else {
            self.next[t as usize] = id;
        }
        self.tail[v as usize] = id;
        id
    }

    fn push_front(&mut self, v: u32, val: u32) -> u32 {
        let id = self.alloc(v, val);
        let h = self.head[v as usize];
        self.next[id as usize] = h;
        if h == NONE {
            self.tail[v as usize] = id;
        } else {
            self.prev[h as usize] = id;
        }
        self.head[v as usize] = id;
        id
    }

    fn remove(&mut self, id: u32) {
        let v = self.owner[id as usize] as usize;
        let (p, n) = (self.prev[id as usize], self.next[id as usize]);
        if p == NONE {
            self.head[v] = n;
        } else {
            self.next[p as usize] = n;
        }
        if n == NONE {
            self.tail[v] = p;
        } else {
            self.prev[n as usize] = p;
        }
    }

    fn front(&self, v: u32) -> u32 {
        let h = self.head[v as usize];
        if h == NONE {
            0
        } else {
            self.val[h as usize]
        }
    }
}

struct Comp {
    bond: bool,
    edges: Vec<u32>,
}

struct Tricomp {
    n: usize,
    m_real: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    live: Vec<bool>,
    etype: Vec<EdgeType>,
    start: Vec<bool>,
    in_high: Vec<u32>,
    in_adj: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    first_live: Vec<u32>,
    degree: Vec<u32>,
    number: Vec<u32>,
    newnum: Vec<u32>,
    nodeat: Vec<u32>,
    lowpt1: Vec<u32>,
    lowpt2: Vec<u32>,
    nd: Vec<u32>,
    father: Vec<u32>,
    tree_arc: Vec<u32>,
    high: HighLists,
    tstack: Vec<Triple>,
    estack: Vec<u32>,
    comps: Vec<Comp>,
    start_vertex: u32,
}

/// Split components of a biconnected loopless multigraph, with bonds and
/// polygons sharing a virtual edge already merged.
pub fn triconnected_components(h: &UndirectedMultigraph) -> Vec<RawComponent> {
    let n = h.vertex_count();
    let mut tc = Tricomp::new(h);
    if n <= 2 {
        let c = tc.new_comp(true, None);
        for e in 0..tc.m_real as u32 {
            tc.move_edge(e, c);
        }
    } else {
        tc.split_multi_edges();
        tc.dfs1();
        tc.build_acceptable_adjacency();
        tc.path_finder();
        tc.path_search();
        if !tc.estack.is_empty() {
            let c = tc.new_comp(false, None);
            while let Some(e) = tc.estack.pop() {
                tc.move_edge(e, c);
            }
        }
    }
    tc.into_components()
}

impl Tricomp {
    fn new(h: &UndirectedMultigraph) -> Self {
        let n = h.vertex_count();
        let m = h.edge_count();
        let mut tc = Tricomp {
            n,
            m_real: m,
            src: Vec::with_capacity(2 * m),
            tgt: Vec::with_capacity(2 * m),
            live: Vec::with_capacity(2 * m),
            etype: Vec::with_capacity(2 * m),
            start: Vec::with_capacity(2 * m),
            in_high: Vec::with_capacity(2 * m),
            in_adj: Vec::with_capacity(2 * m),
            adj: vec![Vec::new(); n],
            first_live: vec![0; n],
            degree: vec![0; n],
            number: vec![0; n],
            newnum: vec![0; n],
            nodeat: vec![0; n + 1],
            lowpt1: vec![0; n],
            lowpt2: vec![0; n],
            nd: vec![0; n],
            father: vec![NONE; n],
            tree_arc: vec![NONE; n],
            high: HighLists::new(n),
            tstack: Vec::new(),
            estack: Vec::new(),
            comps: Vec::new(),
            start_vertex: 0,
        };
        for &[u, v] in h.edges() {
            tc.add_edge(u, v);
        }
        tc
    }

    fn add_edge(&mut self, u: u32, v: u32) -> u32 {
        self.src.push(u);
        self.tgt.push(v);
        self.live.push(true);
        self.etype.push(EdgeType::Unseen);
        self.start.push(false);
        self.in_high.push(NONE);
        self.in_adj.push((NONE, NONE));
        self.degree[u as usize] += 1;
        self.degree[v as usize] += 1;
        (self.src.len() - 1) as u32
    }

    /// Opens a component; if `ends` is given, a fresh virtual edge with these
    /// endpoints is created, added to the graph and to the component.
    fn new_comp(&mut self, bond: bool, ends: Option<(u32, u32)>) -> (usize, u32) {
        let id = self.comps.len();
        let mut edges = Vec::new();
        let mut ev = NONE;
        if let Some((u, v)) = ends {
            ev = self.add_edge(u, v);
            edges.push(ev);
        }
        self.comps.push(Comp { bond, edges });
        (id, ev)
    }

    fn del_high(&mut self, e: u32) {
        let h = self.in_high[e as usize];
        if h != NONE {
            self.high.remove(h);
            self.in_high[e as usize] = NONE;
        }
    }

    fn set_adj(&mut self, pos: (u32, u32), e: u32) {
        self.adj[pos.0 as usize][pos.1 as usize] = e;
        self.in_adj[e as usize] = pos;
        if e != NONE && pos.1 < self.first_live[pos.0 as usize] {
            self.first_live[pos.0 as usize] = pos.1;
        }
    }

    fn move_edge(&mut self, e: u32, (c, _): (usize, u32)) {
        debug_assert!(self.live[e as usize]);
        self.live[e as usize] = false;
        self.degree[self.src[e as usize] as usize] -= 1;
        self.degree[self.tgt[e as usize] as usize] -= 1;
        self.del_high(e);
        let pos = self.in_adj[e as usize];
        if pos.0 != NONE {
            self.adj[pos.0 as usize][pos.1 as usize] = NONE;
            self.in_adj[e as usize] = (NONE, NONE);
        }
        self.comps[c].edges.push(e);
    }

    fn first_child(&mut self, w: u32) -> u32 {
        let list = &self.adj[w as usize];
        let mut i = self.first_live[w as usize] as usize;
        while i < list.len() && list[i] == NONE {
            i += 1;
        }
        self.first_live[w as usize] = i as u32;
        let e = list[i];
        self.tgt[e as usize]
    }

    fn high_of(&self, v: u32) -> u32 {
        self.high.front(v)
    }

    fn split_multi_edges(&mut self) {
        let m = self.src.len();
        let key = |e: usize, s: &Self| {
            let (a, b) = (s.src[e], s.tgt[e]);
            (a.min(b), a.max(b))
        };
        // two stable counting-sort passes: by larger endpoint, then smaller
        let mut order: Vec<u32> = (0..m as u32).collect();
        for pass in 0..2 {
            let mut count = vec![0usize; self.n + 1];
            for &e in &order {
                let k = key(e as usize, self);
                let k = if pass == 0 { k.1 } else { k.0 };
                count[k as usize + 1] += 1;
            }
            for i in 0..self.n {
                count[i + 1] += count[i];
            }
            let mut sorted = vec![0u32; m];
            for &e in &order {
                let k = key(e as usize, self);
                let k = if pass == 0 { k.1 } else { k.0 };
                sorted[count[k as usize]] = e;
                count[k as usize] += 1;
            }
            order = sorted;
        }
        let mut i = 0;
        while i < m {
            let k = key(order[i] as usize, self);
            let mut j = i + 1;
            while j < m && key(order[j] as usize, self) == k {
                j += 1;
            }
            if j - i >= 2 {
                let c = self.new_comp(true, Some(k));
                for &e in &order[i..j] {
                    self.move_edge(e, c);
                }
            }
            i = j;
        }
    }

    fn dfs1(&mut self) {
        let n = self.n;
        let m = self.src.len();
        let mut deg = vec![0u32; n + 1];
        for e in 0..m {
            if self.live[e] {
                deg[self.src[e] as usize + 1] += 1;
                deg[self.tgt[e] as usize + 1] += 1;
            }
        }
        for i in 0..n {
            deg[i + 1] += deg[i];
        }
        let mut fill = deg.clone();
        let mut inc = vec![(0u32, 0u32); deg[n] as usize];
        for e in 0..m {
            if self.live[e] {
                let (a, b) = (self.src[e], self.tgt[e]);
                inc[fill[a as usize] as usize] = (e as u32, b);
                fill[a as usize] += 1;
                inc[fill[b as usize] as usize] = (e as u32, a);
                fill[b as usize] += 1;
            }
        }
        let s = self.start_vertex;
        let mut count = 1u32;
        self.number[s as usize] = 1;
        self.lowpt1[s as usize] = 1;
        self.lowpt2[s as usize] = 1;
        self.nd[s as usize] = 1;
        let mut stack: Vec<(u32, u32)> = vec![(s, deg[s as usize])];
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            if *pos < deg[v as usize + 1] {
                let (e, w) = inc[*pos as usize];
                *pos += 1;
                if self.etype[e as usize] != EdgeType::Unseen {
                    continue;
                }
                self.src[e as usize] = v;
                self.tgt[e as usize] = w;
                let (vi, wi) = (v as usize, w as usize);
                if self.number[wi] == 0 {
                    self.etype[e as usize] = EdgeType::Tree;
                    self.tree_arc[wi] = e;
                    self.father[wi] = v;
                    count += 1;
                    self.number[wi] = count;
                    self.lowpt1[wi] = count;
                    self.lowpt2[wi] = count;
                    self.nd[wi] = 1;
                    stack.push((w, deg[wi]));
                } else {
                    self.etype[e as usize] = EdgeType::Frond;
                    let nw = self.number[wi];
                    if nw < self.lowpt1[vi] {
                        self.lowpt2[vi] = self.lowpt1[vi];
                        self.lowpt1[vi] = nw;
                    } else if nw > self.lowpt1[vi] && nw < self.lowpt2[vi] {
                        self.lowpt2[vi] = nw;
                    }
                }
                continue;
            }
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                let (vi, pi) = (v as usize, p as usize);
                if self.lowpt1[vi] < self.lowpt1[pi] {
                    self.lowpt2[pi] = self.lowpt1[pi].min(self.lowpt2[vi]);
                    self.lowpt1[pi] = self.lowpt1[vi];
                } else if self.lowpt1[vi] == self.lowpt1[pi] {
                    self.lowpt2[pi] = self.lowpt2[pi].min(self.lowpt2[vi]);
                } else {
                    self.lowpt2[pi] = self.lowpt2[pi].min(self.lowpt1[vi]);
                }
                self.nd[pi] += self.nd[vi];
            }
        }
        debug_assert_eq!(count as usize, n, "input must be connected");
    }

    fn build_acceptable_adjacency(&mut self) {
        let n = self.n;
        let m = self.src.len();
        let max_phi = 3 * n + 3;
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_phi + 1];
        for e in 0..m {
            if !self.live[e] {
                continue;
            }
            let (v, w) = (self.src[e] as usize, self.tgt[e] as usize);
            let phi = match self.etype[e] {
                EdgeType::Frond => 3 * self.number[w] + 1,
                _ => {
                    if self.lowpt2[w] < self.number[v] {
                        3 * self.lowpt1[w]
                    } else {
                        3 * self.lowpt1[w] + 2
                    }
                }
            };
            buckets[phi as usize].push(e as u32);
        }
        for bucket in buckets {
            for e in bucket {
                let v = self.src[e as usize];
                let pos = self.adj[v as usize].len() as u32;
                self.adj[v as usize].push(e);
                self.in_adj[e as usize] = (v, pos);
            }
        }
    }

    fn path_finder(&mut self) {
        let mut numcount = self.n as u32;
        let mut new_path = true;
        let s = self.start_vertex;
        self.newnum[s as usize] = numcount - self.nd[s as usize] + 1;
        let mut stack: Vec<(u32, usize)> = vec![(s, 0)];
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            if *pos < self.adj[v as usize].len() {
                let e = self.adj[v as usize][*pos];
                *pos += 1;
                if new_path {
                    new_path = false;
                    self.start[e as usize] = true;
                }
                let w = self.tgt[e as usize];
                if self.etype[e as usize] == EdgeType::Tree {
                    self.newnum[w as usize] = numcount - self.nd[w as usize] + 1;
                    stack.push((w, 0));
                } else {
                    self.in_high[e as usize] = self.high.push_back(w, self.newnum[v as usize]);
                    new_path = true;
                }
                continue;
            }
            stack.pop();
            if !stack.is_empty() {
                numcount -= 1;
            }
        }
        let mut old2new = vec![0u32; self.n + 1];
        for v in 0..self.n {
            old2new[self.number[v] as usize] = self.newnum[v];
        }
        for v in 0..self.n {
            self.nodeat[self.newnum[v] as usize] = v as u32;
            self.lowpt1[v] = old2new[self.lowpt1[v] as usize];
            self.lowpt2[v] = old2new[self.lowpt2[v] as usize];
        }
    }

    fn top(&self) -> Triple {
        self.tstack.last().copied().unwrap_or(EOS)
    }

    fn estack_top_is(&self, x: u32, y: u32) -> bool {
        self.estack.last().is_some_and(|&e| {
            let (s, t) = (self.src[e as usize], self.tgt[e as usize]);
            (s == x && t == y) || (s == y && t == x)
        })
    }

    fn path_search(&mut self) {
        self.tstack.push(EOS);
        // frame: vertex, adjacency position, tree arcs still to visit,
        // and the edge being descended (NONE when not in a child).
        struct Frame {
            v: u32,
            pos: usize,
            remaining_tree: u32,
            pending: u32,
        }
        let remaining = |tc: &Tricomp, v: u32| {
            tc.adj[v as usize].iter().filter(|&&e| e != NONE && tc.etype[e as usize] == EdgeType::Tree).count() as u32
        };
        let s = self.start_vertex;
        let mut frames = vec![Frame { v: s, pos: 0, remaining_tree: remaining(self, s), pending: NONE }];
        while let Some(frame) = frames.last_mut() {
            let v = frame.v;
            if frame.pending != NONE {
                let e = frame.pending;
                let pos = frame.pos;
                frame.pending = NONE;
                frame.pos += 1;
                self.after_tree_arc(v, e, pos as u32, frame.remaining_tree);
                continue;
            }
            if frame.pos >= self.adj[v as usize].len() {
                frames.pop();
                continue;
            }
            let pos = frame.pos;
            let e = self.adj[v as usize][pos];
            if e == NONE {
                frame.pos += 1;
                continue;
            }
            let w = self.tgt[e as usize];
            let vnum = self.newnum[v as usize];
            let wnum = self.newnum[w as usize];
            if self.etype[e as usize] == EdgeType::Tree {
                if self.start[e as usize] {
                    let lw = self.lowpt1[w as usize];
                    if self.top().a > lw {
                        let mut y = 0;
                        let mut b = 0;
                        while self.top().a > lw {
                            let t = self.tstack.pop().unwrap();
                            y = y.max(t.h);
                            b = t.b;
                        }
                        self.tstack.push(Triple { h: y, a: lw, b });
                    } else {
                        self.tstack.push(Triple { h: wnum + self.nd[w as usize] - 1, a: lw, b: vnum });
                    }
                    self.tstack.push(EOS);
                }
                frame.remaining_tree -= 1;
                frame.pending = e;
                let child_remaining = remaining(self, w);
                frames.push(Frame { v: w, pos: 0, remaining_tree: child_remaining, pending: NONE });
            } else {
                frame.pos += 1;
                if self.start[e as usize] {
                    if self.top().a > wnum {
                        let mut y = 0;
                        let mut b = 0;
                        while self.top().a > wnum {
                            let t = self.tstack.pop().unwrap();
                            y = y.max(t.h);
                            b = t.b;
                        }
                        self.tstack.push(Triple { h: y, a: wnum, b });
                    } else {
                        self.tstack.push(Triple { h: vnum, a: wnum, b: vnum });
                    }
                }
                if w == self.father[v as usize] {
                    // frond parallel to the tree arc into v
                    let (c, ev) = self.new_comp(true, Some((w, v)));
                    self.move_edge(e, (c, ev));
                    let ta = self.tree_arc[v as usize];
                    let slot = self.in_adj[ta as usize];
                    self.move_edge(ta, (c, ev));
                    self.set_adj(slot, ev);
                    self.etype[ev as usize] = EdgeType::Tree;
                    self.tree_arc[v as usize] = ev;
                } else {
                    self.estack.push(e);
                }
            }
        }
    }

    /// Work done at `v` once the subtree below tree arc `e` (stored at
    /// adjacency position `pos`) has been searched.
    fn after_tree_arc(&mut self, v: u32, e: u32, pos: u32, remaining_tree: u32) {
        let vnum = self.newnum[v as usize];
        let mut w = self.tgt[e as usize];
        let mut wnum = self.newnum[w as usize];
        self.estack.push(self.tree_arc[w as usize]);

        // type-2 separation pairs; none at the root
        loop {
            if vnum == 1 {
                break;
            }
            let top = self.top();
            let case_a = !top.is_eos() && top.a == vnum;
            let case_deg = self.degree[w as usize] == 2 && {
                let fc = self.first_child(w);
                self.newnum[fc as usize] > wnum
            };
            if !(case_a || case_deg) {
                break;
            }
            if case_a && self.father[self.nodeat[top.b as usize] as usize] == self.nodeat[top.a as usize] {
                self.tstack.pop();
                continue;
            }
            let mut e_ab = NONE;
            let x;
            let mut ev;
            if case_deg {
                let e1 = self.estack.pop().unwrap();
                let e2 = self.estack.pop().unwrap();
                debug_assert_eq!(self.src[e2 as usize], w);
                x = self.tgt[e2 as usize];
                let c = self.new_comp(false, Some((v, x)));
                ev = c.1;
                self.move_edge(e1, c);
                self.move_edge(e2, c);
                if let Some(&top_e) = self.estack.last() {
                    if self.src[top_e as usize] == x && self.tgt[top_e as usize] == v {
                        e_ab = self.estack.pop().unwrap();
                    }
                }
            } else {
                let t = self.tstack.pop().unwrap();
                let (h, a, b) = (t.h, t.a, t.b);
                x = self.nodeat[b as usize];
                let c = self.new_comp(false, Some((v, x)));
                ev = c.1;
                while let Some(&xy) = self.estack.last() {
                    let xs = self.newnum[self.src[xy as usize] as usize];
                    let xt = self.newnum[self.tgt[xy as usize] as usize];
                    if !(a <= xs && xs <= h && a <= xt && xt <= h) {
                        break;
                    }
                    self.estack.pop();
                    if (xs == a && xt == b) || (xt == a && xs == b) {
                        e_ab = xy;
                    } else {
                        self.move_edge(xy, c);
                    }
                }
            }
            if e_ab != NONE {
                let c2 = self.new_comp(true, Some((v, x)));
                self.move_edge(e_ab, c2);
                self.move_edge(ev, c2);
                ev = c2.1;
            }
            self.estack.push(ev);
            self.set_adj((v, pos), ev);
            self.father[x as usize] = v;
            self.tree_arc[x as usize] = ev;
            self.etype[ev as usize] = EdgeType::Tree;
            w = x;
            wnum = self.newnum[w as usize];
        }

        // type-1 separation pair
        let lw = self.lowpt1[w as usize];
        if self.lowpt2[w as usize] >= vnum
            && lw < vnum
            && (self.father[v as usize] != self.start_vertex || remaining_tree >= 1)
        {
            let l1 = self.nodeat[lw as usize];
            let c = self.new_comp(false, Some((v, l1)));
            let mut ev = c.1;
            let span = wnum..wnum + self.nd[w as usize];
            while let Some(&xy) = self.estack.last() {
                let xs = self.newnum[self.src[xy as usize] as usize];
                let xt = self.newnum[self.tgt[xy as usize] as usize];
                if !(span.contains(&xs) || span.contains(&xt)) {
                    break;
                }
                self.estack.pop();
                self.move_edge(xy, c);
            }
            if self.estack_top_is(v, l1) {
                let eh = self.estack.pop().unwrap();
                let c2 = self.new_comp(true, Some((v, l1)));
                self.move_edge(eh, c2);
                self.move_edge(ev, c2);
                ev = c2.1;
            }
            if l1 != self.father[v as usize] {
                self.estack.push(ev);
                self.set_adj((v, pos), ev);
                self.etype[ev as usize] = EdgeType::Frond;
                if self.high_of(l1) < vnum {
                    self.in_high[ev as usize] = self.high.push_front(l1, vnum);
                }
            } else {
                let c3 = self.new_comp(true, Some((l1, v)));
                self.move_edge(ev, c3);
                let ta = self.tree_arc[v as usize];
                let slot = self.in_adj[ta as usize];
                self.move_edge(ta, c3);
                let nv = c3.1;
                self.set_adj(slot, nv);
                self.etype[nv as usize] = EdgeType::Tree;
                self.tree_arc[v as usize] = nv;
            }
        }

        if self.start[e as usize] {
            while !self.top().is_eos() {
                self.tstack.pop();
            }
            self.tstack.pop();
        }
        let hv = self.high_of(v);
        loop {
            let t = self.top();
            if t.is_eos() || t.a == vnum || t.b == vnum || hv <= t.h {
                break;
            }
            self.tstack.pop();
        }
    }

    fn into_components(self) -> Vec<RawComponent> {
        // each virtual edge lies in exactly two components; merge bonds with
        // bonds and polygons with polygons across shared virtual edges
        let m = self.src.len();
        let kinds: Vec<NodeKind> = self
            .comps
            .iter()
            .map(|c| {
                if c.bond {
                    NodeKind::P
                } else {
                    let mut deg: std::collections::HashMap<u32, u32> = Default::default();
                    for &e in &c.edges {
                        *deg.entry(self.src[e as usize]).or_default() += 1;
                        *deg.entry(self.tgt[e as usize]).or_default() += 1;
                    }
                    if deg.values().all(|&d| d == 2) {
                        NodeKind::S
                    } else {
                        NodeKind::R
                    }
                }
            })
            .collect();
        let mut owners = vec![[NONE; 2]; m];
        for (ci, c) in self.comps.iter().enumerate() {
            for &e in &c.edges {
                let slot = &mut owners[e as usize];
                if slot[0] == NONE {
                    slot[0] = ci as u32;
                } else {
                    debug_assert_eq!(slot[1], NONE);
                    slot[1] = ci as u32;
                }
            }
        }
        let mut uf = crate::connectivity::UnionFind::new(self.comps.len());
        let mut merged_away = vec![false; m];
        for e in self.m_real..m {
            let [a, b] = owners[e];
            if a == NONE || b == NONE {
                continue;
            }
            if kinds[a as usize] == kinds[b as usize] && kinds[a as usize] != NodeKind::R {
                uf.union(a as usize, b as usize);
                merged_away[e] = true;
            }
        }
        let mut group_of = vec![NONE; self.comps.len()];
        let mut out: Vec<RawComponent> = Vec::new();
        for (ci, c) in self.comps.iter().enumerate() {
            let root = uf.find(ci);
            if group_of[root] == NONE {
                group_of[root] = out.len() as u32;
                out.push(RawComponent { kind: kinds[ci], edges: Vec::new() });
            }
            let g = group_of[root] as usize;
            for &e in &c.edges {
                if merged_away[e as usize] {
                    continue;
                }
                let ends: [VertexId; 2] = [self.src[e as usize], self.tgt[e as usize]];
                let real = ((e as usize) < self.m_real).then_some(e);
                out[g].edges.push(RawEdge { ends, real, key: e });
            }
        }
        out.retain(|c| !c.edges.is_empty());
        out
    }
}
