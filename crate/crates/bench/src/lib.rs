//! Synthetic pangenome-like inputs and the scaling measurement shared by the
//! `bench` subcommand, the acceptance run and the criterion benches.

use std::time::{Duration, Instant};

use bubblescope_core::{find_snarls, find_superbubbles, BidirectedGraph, DirectedGraph, Incidence, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED_VAR: &str = "BUBBLESCOPE_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_SIZES: [usize; 4] = [100_000, 200_000, 400_000, 800_000];

/// Seed from `BUBBLESCOPE_SEED`, or the default when unset or unparsable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// Arcs of a chain of sites. Each site joins the current anchor to a new one
/// by a single arc or by two to four branches of up to three vertices, at
/// most one of them a direct arc. Sites get occasional chords between
/// branches and arcs closing a cycle back to the entry anchor. Stops once
/// `edges` arcs exist.
fn chain_of_sites(edges: usize, seed: u64) -> (usize, Vec<(VertexId, VertexId)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity(edges + 16);
    let mut n: VertexId = 1;
    let mut anchor: VertexId = 0;
    let fresh = |n: &mut VertexId| {
        *n += 1;
        *n - 1
    };
    while arcs.len() < edges {
        let exit = fresh(&mut n);
        if rng.random_bool(0.2) {
            arcs.push((anchor, exit));
            anchor = exit;
            continue;
        }
        let mut branches: Vec<Vec<VertexId>> = Vec::new();
        for b in 0..rng.random_range(2..=4) {
            let len = rng.random_range(usize::from(b != 1)..=3);
            branches.push((0..len).map(|_| fresh(&mut n)).collect());
        }
        for branch in &branches {
            let mut prev = anchor;
            for &v in branch {
                arcs.push((prev, v));
                prev = v;
            }
            arcs.push((prev, exit));
        }
        if rng.random_bool(0.3) {
            let a = &branches[0];
            let b = &branches[1];
            if !a.is_empty() && !b.is_empty() {
                arcs.push((a[0], b[b.len() - 1]));
            }
        }
        if rng.random_bool(0.05) {
            arcs.push((exit, anchor));
        }
        anchor = exit;
    }
    (n as usize, arcs)
}

/// Directed chain-of-blocks graph with about `edges` arcs.
pub fn chain_directed(edges: usize, seed: u64) -> DirectedGraph {
    let (n, arcs) = chain_of_sites(edges, seed);
    DirectedGraph::from_arcs(n, arcs)
}

/// Bidirected chain-of-blocks graph with about `edges` edges. Arc `u -> v`
/// becomes `{u+, v-}`; a few edges get a flipped end, as inversions do.
pub fn chain_bidirected(edges: usize, seed: u64) -> BidirectedGraph {
    let (n, arcs) = chain_of_sites(edges, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1f1f);
    let mut g = BidirectedGraph::new(n);
    for (u, v) in arcs {
        let b = if rng.random_bool(0.03) { Incidence::plus(v) } else { Incidence::minus(v) };
        g.add_edge(Incidence::plus(u), b);
    }
    g
}

/// Least-squares slope of `log time` against `log size`.
pub fn growth_exponent(points: &[(usize, Duration)]) -> f64 {
    let logs: Vec<(f64, f64)> =
        points.iter().map(|&(n, d)| ((n as f64).ln(), d.as_secs_f64().max(1e-9).ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub edges: usize,
    pub snarls: Duration,
    pub superbubbles: Duration,
}

/// Best of `repeats` runs of a closure.
pub fn best_of<T>(repeats: usize, mut f: impl FnMut() -> T) -> Duration {
    (0..repeats.max(1))
        .map(|_| {
            let clock = Instant::now();
            std::hint::black_box(f());
            clock.elapsed()
        })
        .min()
        .expect("at least one run")
}

/// Times both finders at each size in the current rayon pool.
pub fn measure(sizes: &[usize], seed: u64, repeats: usize) -> Vec<Sample> {
    sizes
        .iter()
        .map(|&edges| {
            let b = chain_bidirected(edges, seed);
            let d = chain_directed(edges, seed);
            Sample {
                edges,
                snarls: best_of(repeats, || find_snarls(&b)),
                superbubbles: best_of(repeats, || find_superbubbles(&d)),
            }
        })
        .collect()
}

/// Growth exponents `(snarls, superbubbles)` of a measurement.
pub fn exponents(samples: &[Sample]) -> (f64, f64) {
    let s: Vec<_> = samples.iter().map(|x| (x.edges, x.snarls)).collect();
    let b: Vec<_> = samples.iter().map(|x| (x.edges, x.superbubbles)).collect();
    (growth_exponent(&s), growth_exponent(&b))
}
