//! Acceptance run: one PASS or FAIL line per criterion, nonzero exit on any
//! failure. Graph corpora are seeded by `BUBBLESCOPE_SEED`.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use bubblescope_bench as bench;
use bubblescope_core::oracle::{self, fixtures, GeneratorSpec, Shape};
use bubblescope_core::spqr::SkeletonEdgeKind;
use bubblescope_core::{
    build_spqr, feedback_arcs, find_snarls, find_superbubbles, BidirectedGraph, DirectedGraph, FeedbackArcs,
    Incidence, NodeKind, SnarlReport, SuperbubbleReport, UndirectedMultigraph,
};
use rayon::prelude::*;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

/// Outcome of one seed: `None` when no graph was generated for it.
type Check = Option<Result<(), String>>;

fn mismatch(bad: bool, describe: impl FnOnce() -> String) -> Check {
    Some(if bad { Err(describe()) } else { Ok(()) })
}

#[derive(Default)]
struct Sweep {
    checked: usize,
    failures: usize,
    first: Vec<String>,
}

impl Sweep {
    fn merge(mut self, other: Sweep) -> Sweep {
        self.checked += other.checked;
        self.failures += other.failures;
        self.first.extend(other.first);
        self.first.truncate(3);
        self
    }

    fn verdict(self, min_graphs: usize) -> Verdict {
        let first = if self.first.is_empty() { String::new() } else { format!("; first: {}", self.first.join(" | ")) };
        verdict(
            self.failures == 0 && self.checked >= min_graphs,
            format!("{} graphs (need {min_graphs}), {} mismatches{first}", self.checked, self.failures),
        )
    }
}

/// Runs `check` on seeds `base..base + count` over the pool.
fn sweep(base: u64, count: u64, check: impl Fn(u64) -> Check + Sync) -> Sweep {
    let checked = AtomicUsize::new(0);
    let failures = AtomicUsize::new(0);
    let mut first: Vec<String> = (base..base + count)
        .into_par_iter()
        .filter_map(|seed| {
            let r = check(seed)?;
            checked.fetch_add(1, Ordering::Relaxed);
            if r.is_err() {
                failures.fetch_add(1, Ordering::Relaxed);
            }
            r.err()
        })
        .collect();
    first.truncate(3);
    Sweep { checked: checked.into_inner(), failures: failures.into_inner(), first }
}

fn shape_for(seed: u64) -> Shape {
    match seed % 4 {
        0 => Shape::Connected,
        1 => Shape::Biconnected,
        2 => Shape::ChainOfBlocks(1 + (seed / 4 % 3) as usize),
        _ => Shape::Dag,
    }
}

/// Small connected bidirected graph: at most 6 vertices and 8 edges.
fn small_bidirected(seed: u64) -> Option<BidirectedGraph> {
    let n = 1 + (seed % 6) as usize;
    let extra = (seed / 6 % (10 - n) as u64) as usize;
    let spec = GeneratorSpec::new(Shape::Connected, n..=n, seed)
        .extra_edges(extra..=extra)
        .plus_bias([0.5, 0.2, 0.8][(seed / 60 % 3) as usize])
        .loops(seed % 7 == 0);
    oracle::generate_bidirected(&spec).ok()
}

/// Random bidirected graph with up to 9 vertices.
fn random_bidirected(seed: u64) -> Option<BidirectedGraph> {
    let n = 3 + (seed % 7) as usize;
    let spec = GeneratorSpec::new(shape_for(seed), n..=n, seed)
        .extra_edges(0..=6)
        .plus_bias([0.5, 0.25, 0.75][(seed / 7 % 3) as usize])
        .loops(seed % 5 == 0);
    oracle::generate_bidirected(&spec).ok()
}

/// Random directed graph with up to 9 vertices: random orientation, DAGs,
/// and nearly acyclic biconnected graphs and block chains.
fn random_directed(seed: u64) -> Option<DirectedGraph> {
    let n = 2 + (seed % 8) as usize;
    let shape = shape_for(seed);
    let spec = GeneratorSpec::new(shape, n..=n, seed).extra_edges(0..=(seed % 7) as usize);
    if seed % 3 != 0 || shape == Shape::Dag {
        return oracle::generate_directed(&spec).ok();
    }
    // orient along a hidden order, flipping a few arcs to close cycles
    let h = oracle::generate_undirected(&spec).ok()?;
    let mut g = DirectedGraph::new(h.vertex_count());
    for (i, &[u, v]) in h.edges().iter().enumerate() {
        let flip = (seed.wrapping_mul(31).wrapping_add(i as u64 * 17)) % 11 == 0;
        let (a, b) = if (u < v) != flip { (u, v) } else { (v, u) };
        g.add_arc(a, b);
    }
    Some(g)
}

fn size_bounds_hold(g: &BidirectedGraph) -> Check {
    let rep = find_snarls(g);
    let (n, m) = (g.vertex_count(), g.edge_count());
    mismatch(rep.tip_count() > 2 * n || rep.pairs.len() > 4 * (n + m), || {
        format!("{} tips, {} pairs on n={n} m={m}", rep.tip_count(), rep.pairs.len())
    })
}

fn snarls_match(g: &BidirectedGraph) -> Check {
    let got = find_snarls(g).enumerate_pairs();
    let want = oracle::all_snarls_bruteforce(g).expect("within oracle limit");
    mismatch(got != want, || format!("edges {:?}", g.edges()))
}

fn snarl_oracle(seed: u64) -> Verdict {
    let small = sweep(seed, 120_000, |s| snarls_match(&small_bidirected(s)?));
    let random = sweep(seed, 12_000, |s| snarls_match(&random_bidirected(s)?));
    let small_ok = small.checked >= 100_000;
    let mut v = small.merge(random).verdict(110_000);
    v.ok &= small_ok;
    v
}

fn superbubble_oracle(seed: u64) -> Verdict {
    sweep(seed, 40_000, |s| {
        let g = random_directed(s)?;
        let got: BTreeSet<_> = find_superbubbles(&g).into_iter().collect();
        let want = oracle::all_superbubbles_bruteforce(&g).expect("within oracle limit");
        mismatch(got != want, || format!("arcs {:?}", g.arcs()))
    })
    .verdict(30_000)
}

fn size_bounds(seed: u64) -> Verdict {
    let small = sweep(seed, 50_000, |s| {
        let g = if s % 2 == 0 { small_bidirected(s)? } else { random_bidirected(s)? };
        size_bounds_hold(&g)
    });
    let large = sweep(0, 3, |k| size_bounds_hold(&bench::chain_bidirected(1_000 * 10usize.pow(k as u32), seed)));
    small.merge(large).verdict(40_000)
}

/// Whether a simple graph on `k` vertices stays connected after removing
/// any one or two vertices.
fn three_connected(k: usize, edges: &[(u32, u32)]) -> bool {
    let h = UndirectedMultigraph::from_edges(k, edges.iter().copied());
    oracle::is_biconnected(&h) && oracle::separation_pairs_bruteforce(&h).is_empty()
}

fn spqr_check(h: &UndirectedMultigraph) -> Check {
    let t = match build_spqr(h) {
        Ok(t) => t,
        Err(e) => return Some(Err(format!("build failed: {e}"))),
    };
    if let Err(e) = t.validate() {
        return Some(Err(format!("{e}")));
    }
    for (id, node) in t.nodes.iter().enumerate() {
        if node.kind != NodeKind::R {
            continue;
        }
        let vs = t.node_vertices(id as u32);
        let local = |v| vs.binary_search(&v).expect("skeleton vertex") as u32;
        let edges: Vec<_> = node.edges.iter().map(|e| (local(e.ends[0]), local(e.ends[1]))).collect();
        if !three_connected(vs.len(), &edges) {
            return Some(Err(format!("R-node {id} is not 3-connected")));
        }
    }
    let real: usize = t
        .nodes
        .iter()
        .flat_map(|n| &n.edges)
        .filter(|e| matches!(e.kind, SkeletonEdgeKind::Real(_)))
        .count();
    if real != h.edge_count() {
        return Some(Err("real edges lost".into()));
    }
    let pairs_differ = t.separation_pairs() != oracle::separation_pairs_bruteforce(h);
    mismatch(pairs_differ, || format!("pairs differ on {:?}", h.edges()))
}

fn spqr_correctness(seed: u64) -> Verdict {
    sweep(seed, 20_000, |s| {
        let n = 3 + (s % 8) as usize;
        let spec = GeneratorSpec::new(Shape::Biconnected, n..=n, s).extra_edges(0..=(s % 9) as usize);
        spqr_check(&oracle::generate_undirected(&spec).ok()?)
    })
    .verdict(15_000)
}

fn feedback_check(g: &DirectedGraph) -> Check {
    let got = match feedback_arcs(g) {
        FeedbackArcs::Acyclic => None,
        FeedbackArcs::Hitters(h) => Some(h.into_iter().collect::<BTreeSet<_>>()),
    };
    mismatch(got != oracle::feedback_arcs_bruteforce(g), || format!("arcs {:?}", g.arcs()))
}

fn feedback(seed: u64) -> Verdict {
    let sweep = sweep(seed, 20_000, |s| {
        let n = 1 + (s % 8) as usize;
        let shape = if s % 2 == 0 { Shape::Connected } else { Shape::Biconnected };
        let spec = GeneratorSpec::new(shape, n.max(3)..=n.max(3), s).extra_edges(0..=(s % 8) as usize);
        feedback_check(&oracle::generate_directed(&spec).ok()?)
    });
    let g = fixtures::shared_arc_cycles();
    let named: BTreeSet<(String, String)> = match feedback_arcs(&g) {
        FeedbackArcs::Hitters(h) => {
            h.iter().map(|&a| (g.name(g.arc(a).0).to_string(), g.name(g.arc(a).1).to_string())).collect()
        }
        FeedbackArcs::Acyclic => BTreeSet::new(),
    };
    let pinned: BTreeSet<(String, String)> = [("a", "b"), ("b", "c")].iter().map(|&(x, y)| (x.into(), y.into())).collect();
    let fixture_ok = named == pinned;
    let mut v = sweep.verdict(15_000);
    v.ok &= fixture_ok;
    v.detail += &format!("; shared-arc cycles give {named:?}");
    v
}

fn linear_scaling(seed: u64) -> Verdict {
    let clock = Instant::now();
    let samples = bench::measure(&bench::DEFAULT_SIZES, seed, 3);
    let elapsed = clock.elapsed();
    let (es, eb) = bench::exponents(&samples);
    let table: Vec<String> = samples
        .iter()
        .map(|s| format!("{}: {:.3}s/{:.3}s", s.edges, s.snarls.as_secs_f64(), s.superbubbles.as_secs_f64()))
        .collect();
    verdict(
        es <= 1.3 && eb <= 1.3 && elapsed < Duration::from_secs(300),
        format!("exponents snarls {es:.3}, superbubbles {eb:.3} (limit 1.3); {}; {:.1}s total", table.join(", "), elapsed.as_secs_f64()),
    )
}

fn texts(b: &BidirectedGraph, d: &DirectedGraph) -> (String, String) {
    let snarls = SnarlReport::from_representation(&find_snarls(b), b.names()).to_text();
    let bubbles = SuperbubbleReport::from_pairs(&find_superbubbles(d), d.names()).to_text();
    (snarls, bubbles)
}

fn determinism(seed: u64) -> Verdict {
    let mut graphs: Vec<(BidirectedGraph, DirectedGraph)> = Vec::new();
    for m in [5_000usize, 20_000, 50_000] {
        for k in 0..4 {
            graphs.push((bench::chain_bidirected(m, seed + k), bench::chain_directed(m, seed + k)));
        }
    }
    let mut s = seed;
    while graphs.len() < 100 {
        if let (Some(b), Some(d)) = (random_bidirected(s), random_directed(s)) {
            graphs.push((b, d));
        }
        s += 1;
    }
    let pool = |t: usize| rayon::ThreadPoolBuilder::new().num_threads(t).build().expect("pool");
    let (one, four) = (pool(1), pool(4));
    let differing = graphs
        .iter()
        .filter(|(b, d)| {
            let a = one.install(|| texts(b, d));
            let c = four.install(|| texts(b, d));
            let again = four.install(|| texts(b, d));
            a != c || c != again
        })
        .count();
    verdict(
        differing == 0 && graphs.len() == 100,
        format!("{} graphs, {differing} differ between 1 and 4 threads", graphs.len()),
    )
}

fn pair(g: &BidirectedGraph, a: &str, b: &str) -> (Incidence, Incidence) {
    let find = |t: &str| {
        let (name, sign) = t.split_at(t.len() - 1);
        let v = g.names().iter().position(|n| n == name).expect("named vertex") as u32;
        if sign == "+" { Incidence::plus(v) } else { Incidence::minus(v) }
    };
    oracle::ordered_pair(find(a), find(b))
}

fn fixture_pins() -> Verdict {
    let mut notes = Vec::new();
    let g = fixtures::bubble_cycle();
    let got = find_snarls(&g).enumerate_pairs();
    let want: BTreeSet<_> = [pair(&g, "s+", "t-"), pair(&g, "a+", "b+"), pair(&g, "a-", "b-")].into();
    let fx1 = got == want;
    notes.push(format!("bubble cycle {}", if fx1 { "ok" } else { "differs" }));

    let g = fixtures::parallel_quad();
    let got = find_snarls(&g).enumerate_pairs();
    let fx2 = got.contains(&pair(&g, "u+", "v-")) && !got.contains(&pair(&g, "u-", "v+"));
    notes.push(format!("parallel quad {}", if fx2 { "ok" } else { "differs" }));

    let g = fixtures::double_k4();
    let got = find_snarls(&g).enumerate_pairs();
    let fx3 = got.contains(&pair(&g, "b+", "d-")) && got.contains(&pair(&g, "b-", "d+"));
    notes.push(format!("double K4 {}", if fx3 { "ok" } else { "differs" }));

    let g = fixtures::dag_in_cycle();
    let got = SuperbubbleReport::from_pairs(&find_superbubbles(&g), g.names());
    let want = SuperbubbleReport::new([("s", "t"), ("t", "u"), ("u", "s")].map(|(a, b)| (a.to_string(), b.to_string())));
    let fx4 = got == want;
    notes.push(format!("DAG in cycle {:?}", got.pairs));

    verdict(fx1 && fx2 && fx3 && fx4, notes.join("; "))
}

fn main() {
    let seed = bench::seed_from_env();
    println!("acceptance run, seed {seed}");
    let criteria: [(&str, &dyn Fn() -> Verdict); 8] = [
        ("1 snarl oracle equivalence", &|| snarl_oracle(seed)),
        ("2 superbubble oracle equivalence", &|| superbubble_oracle(seed)),
        ("3 representation size bounds", &|| size_bounds(seed)),
        ("4 SPQR correctness", &|| spqr_correctness(seed)),
        ("5 feedback arcs", &|| feedback(seed)),
        ("6 linear scaling", &|| linear_scaling(seed)),
        ("7 determinism across thread counts", &|| determinism(seed)),
        ("8 fixture pins", &fixture_pins),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let clock = Instant::now();
        let v = run();
        let mark = if v.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!v.ok);
        println!("{mark} {name}: {} [{:.1}s]", v.detail, clock.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
