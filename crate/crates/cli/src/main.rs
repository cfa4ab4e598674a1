use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bubblescope_bench as bench;
use bubblescope_core::connectivity::{block_cut_tree, BlockKind};
use bubblescope_core::gfa::NamedIncidence;
use bubblescope_core::{
    build_spqr, find_snarls_timed, find_superbubbles_timed, oracle, BidirectedGraph, DirectedGraph, Error,
    GfaDocument, Incidence, NodeKind, PhaseTimes, SnarlReport, SuperbubbleReport, UndirectedMultigraph,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Snarls and superbubbles of blunt GFA graphs.
#[derive(Parser, Debug)]
#[command(name = "bubblescope", version, about)]
struct Cli {
    /// Worker threads; defaults to the number of CPUs
    #[arg(long, short = 't', global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the snarl representation: tip sets (T lines) and pairs (S lines)
    Snarls {
        #[command(flatten)]
        io: IoArgs,
        /// List every snarl as a pair instead; output can be quadratic in size
        #[arg(long)]
        expand_pairs: bool,
    },
    /// Write all superbubbles, one "<entrance> <exit>" line each
    Superbubbles {
        #[command(flatten)]
        io: IoArgs,
        /// Analyse the doubled directed graph of a bidirected input
        #[arg(long)]
        double: bool,
    },
    /// Compare the fast finders with the brute-force oracle and with any
    /// expected block embedded in `#>` lines
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// What to check; defaults to the first `#>` line, else snarls
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        double: bool,
    },
    /// Time both finders on synthetic chain-of-blocks graphs
    Bench {
        /// Edge counts to measure
        #[arg(long, value_delimiter = ',', default_values_t = bench::DEFAULT_SIZES)]
        sizes: Vec<usize>,
        /// Generator seed; overrides BUBBLESCOPE_SEED
        #[arg(long)]
        seed: Option<u64>,
        /// Runs per size; the fastest counts
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
    /// Print size, decomposition and result counts
    Stats {
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Args, Debug)]
struct IoArgs {
    /// Input GFA; `-` or absent reads stdin
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
    /// Output file; absent writes stdout
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Snarls,
    Superbubbles,
}

/// A failed run and its exit code.
#[derive(Debug)]
enum Failure {
    /// Unreadable or malformed input.
    Input(String),
    /// A result contradicts its own guarantees or the oracle.
    Invariant(String),
    /// Input too large for the oracle.
    Refused(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Invariant(_) => 2,
            Failure::Refused(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Invariant(m) | Failure::Refused(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleTooLarge { .. } => Failure::Refused(e.to_string()),
            Error::Invariant(_) | Error::NotBiconnected(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_input(io: &IoArgs) -> Result<(GfaDocument, Duration), Failure> {
    let clock = Instant::now();
    let mut text = String::new();
    match &io.input {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    let doc = GfaDocument::parse(&text)?;
    Ok((doc, clock.elapsed()))
}

fn write_output(io: &IoArgs, text: &str) -> Result<Duration, Failure> {
    let clock = Instant::now();
    let result = match &io.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| format!("stdout: {e}")),
    };
    result.map_err(Failure::Input)?;
    Ok(clock.elapsed())
}

fn report_timings(io: Duration, t: PhaseTimes) {
    let secs = |d: Duration| d.as_secs_f64();
    eprintln!(
        "timing: io {:.3}s, build {:.3}s, detect {:.3}s (BUILD {:.3}s, I/O+ALGO {:.3}s)",
        secs(io),
        secs(t.build),
        secs(t.detect),
        secs(t.build),
        secs(io + t.detect)
    );
}

fn catch<T>(what: &str, f: impl FnOnce() -> T + std::panic::UnwindSafe) -> Result<T, Failure> {
    std::panic::catch_unwind(f).map_err(|p| {
        let detail = p
            .downcast_ref::<String>()
            .map(String::as_str)
            .or_else(|| p.downcast_ref::<&str>().copied())
            .unwrap_or("panic");
        Failure::Invariant(format!("{what} failed: {detail}"))
    })
}

fn directed_input(doc: &GfaDocument, double: bool) -> Result<DirectedGraph, Failure> {
    if double {
        Ok(doc.to_bidirected().double())
    } else {
        Ok(doc.to_directed()?)
    }
}

fn run_snarls(io: &IoArgs, expand_pairs: bool) -> Outcome {
    let (doc, read) = read_input(io)?;
    let g = doc.to_bidirected();
    let (rep, times) = catch("snarl finding", || find_snarls_timed(&g))?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    if rep.tip_count() > 2 * n || rep.pairs.len() > 4 * (n + m) {
        return Err(Failure::Invariant(format!(
            "representation too large: {} tips and {} pairs for {n} vertices and {m} edges",
            rep.tip_count(),
            rep.pairs.len()
        )));
    }
    let report = SnarlReport::from_representation(&rep, g.names());
    let text = if expand_pairs { pair_lines(&report.enumerate_pairs()) } else { report.to_text() };
    let written = write_output(io, &text)?;
    report_timings(read + written, times);
    Ok(())
}

fn pair_lines(pairs: &BTreeSet<(NamedIncidence, NamedIncidence)>) -> String {
    let mut out = String::new();
    for (a, b) in pairs {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

fn run_superbubbles(io: &IoArgs, double: bool) -> Outcome {
    let (doc, read) = read_input(io)?;
    let g = directed_input(&doc, double)?;
    let (found, times) = catch("superbubble finding", || find_superbubbles_timed(&g))?;
    let text = SuperbubbleReport::from_pairs(&found, g.names()).to_text();
    let written = write_output(io, &text)?;
    report_timings(read + written, times);
    Ok(())
}

/// Lines only in `want` prefixed `-`, lines only in `got` prefixed `+`.
fn diff(want: &BTreeSet<String>, got: &BTreeSet<String>) -> String {
    let mut out = String::new();
    for l in want.difference(got) {
        let _ = writeln!(out, "- {l}");
    }
    for l in got.difference(want) {
        let _ = writeln!(out, "+ {l}");
    }
    out
}

fn lines(text: &str) -> BTreeSet<String> {
    text.lines().map(str::to_string).collect()
}

fn run_verify(io: &IoArgs, mode: Option<Mode>, double: bool) -> Outcome {
    let (doc, _) = read_input(io)?;
    let declared = doc.annotations.first().and_then(|a| Mode::from_str(a.trim(), true).ok());
    let mode = mode.or(declared).unwrap_or(Mode::Snarls);
    let expected: Vec<&str> = doc.annotations.iter().skip(usize::from(declared.is_some())).map(String::as_str).collect();
    let mut problems = String::new();
    let summary = match mode {
        Mode::Snarls => {
            let g = doc.to_bidirected();
            let want = oracle::all_snarls_bruteforce(&g)?;
            let rep = catch("snarl finding", || find_snarls_timed(&g))?.0;
            let report = SnarlReport::from_representation(&rep, g.names());
            let named = |s: &BTreeSet<(Incidence, Incidence)>| -> BTreeSet<String> {
                s.iter().map(|&(a, b)| format!("{}{} {}{}", g.name(a.vertex), a.sign, g.name(b.vertex), b.sign)).collect()
            };
            let got = named(&rep.enumerate_pairs());
            let want = named(&want);
            if got != want {
                let _ = write!(problems, "snarls differ from the oracle:\n{}", diff(&want, &got));
            }
            if !expected.is_empty() {
                let expected = SnarlReport::parse(&expected.join("\n"))?;
                if expected != report {
                    let _ = write!(
                        problems,
                        "report differs from the expected block:\n{}",
                        diff(&lines(&expected.to_text()), &lines(&report.to_text()))
                    );
                }
            }
            format!("{} snarls", got.len())
        }
        Mode::Superbubbles => {
            let g = directed_input(&doc, double)?;
            let want = oracle::all_superbubbles_bruteforce(&g)?;
            let found = catch("superbubble finding", || find_superbubbles_timed(&g))?.0;
            let report = SuperbubbleReport::from_pairs(&found, g.names());
            let want_report = SuperbubbleReport::from_pairs(&want.into_iter().collect::<Vec<_>>(), g.names());
            if report != want_report {
                let _ = write!(
                    problems,
                    "superbubbles differ from the oracle:\n{}",
                    diff(&lines(&want_report.to_text()), &lines(&report.to_text()))
                );
            }
            if !expected.is_empty() {
                let expected = SuperbubbleReport::parse(&expected.join("\n"))?;
                if expected != report {
                    let _ = write!(
                        problems,
                        "report differs from the expected block:\n{}",
                        diff(&lines(&expected.to_text()), &lines(&report.to_text()))
                    );
                }
            }
            format!("{} superbubbles", report.pairs.len())
        }
    };
    if !problems.is_empty() {
        return Err(Failure::Invariant(problems.trim_end().to_string()));
    }
    write_output(io, &format!("ok: {summary} match the oracle\n"))?;
    Ok(())
}

fn run_bench(sizes: &[usize], seed: Option<u64>, repeats: usize) -> Outcome {
    if sizes.len() < 2 {
        return Err(Failure::Input("bench needs at least two sizes".into()));
    }
    let seed = seed.unwrap_or_else(bench::seed_from_env);
    let threads = rayon::current_num_threads();
    let samples = bench::measure(sizes, seed, repeats);
    let mut out = format!("# seed {seed}, {threads} threads, best of {repeats}\n");
    let _ = writeln!(out, "{:>10} {:>12} {:>14}", "edges", "snarls_s", "superbubbles_s");
    for s in &samples {
        let _ = writeln!(out, "{:>10} {:>12.4} {:>14.4}", s.edges, s.snarls.as_secs_f64(), s.superbubbles.as_secs_f64());
    }
    let (es, eb) = bench::exponents(&samples);
    let _ = writeln!(out, "exponent snarls {es:.3} superbubbles {eb:.3}");
    let verdict = if es <= 1.3 && eb <= 1.3 { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "linear-scaling {verdict} (limit 1.3)");
    if threads > 1 {
        let largest = *sizes.iter().max().expect("sizes");
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().map_err(|e| Failure::Input(e.to_string()))?;
        let one = single.install(|| bench::measure(&[largest], seed, repeats))[0];
        let many = samples.iter().find(|s| s.edges == largest).expect("measured");
        let speedup = |a: Duration, b: Duration| a.as_secs_f64() / b.as_secs_f64().max(1e-9);
        let _ = writeln!(
            out,
            "speedup at {largest} edges, {threads} threads vs 1: snarls {:.2}x superbubbles {:.2}x",
            speedup(one.snarls, many.snarls),
            speedup(one.superbubbles, many.superbubbles)
        );
    }
    print!("{out}");
    Ok(())
}

fn run_stats(io: &IoArgs) -> Outcome {
    let (doc, _) = read_input(io)?;
    let g: BidirectedGraph = doc.to_bidirected();
    let mut out = String::new();
    let loops = g.edges().iter().filter(|[a, b]| a.vertex == b.vertex).count();
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    let _ = writeln!(out, "edges {}", g.edge_count());
    let _ = writeln!(out, "self-loops {loops}");
    let h = g.underlying();
    let bct = block_cut_tree(&h);
    let bridges = bct.blocks.iter().filter(|b| b.kind == BlockKind::MultiBridge).count();
    let _ = writeln!(out, "blocks {} (multi-bridges {bridges})", bct.blocks.len());
    let _ = writeln!(out, "cutvertices {}", bct.cutvertices.len());
    let mut kinds = [0usize; 3];
    for block in bct.blocks.iter().filter(|b| b.kind == BlockKind::TwoConnected) {
        let local = |v| block.vertices.binary_search(&v).expect("block vertex") as u32;
        let edges = block.edges.iter().map(|&e| {
            let [a, b] = h.edge(e);
            (local(a), local(b))
        });
        let tree = catch("SPQR build", || build_spqr(&UndirectedMultigraph::from_edges(block.vertices.len(), edges)))??;
        for node in &tree.nodes {
            kinds[match node.kind {
                NodeKind::S => 0,
                NodeKind::P => 1,
                NodeKind::R => 2,
            }] += 1;
        }
    }
    let _ = writeln!(out, "spqr nodes S {} P {} R {}", kinds[0], kinds[1], kinds[2]);
    let (rep, _) = catch("snarl finding", || find_snarls_timed(&g))?;
    let _ = writeln!(out, "tip sets {} (tips {})", rep.tip_sets.len(), rep.tip_count());
    let _ = writeln!(out, "explicit pairs {}", rep.pairs.len());
    let _ = writeln!(out, "snarls {}", rep.snarl_count());
    if let Ok(d) = doc.to_directed() {
        let (found, _) = catch("superbubble finding", || find_superbubbles_timed(&d))?;
        let _ = writeln!(out, "superbubbles {}", found.len());
    }
    write_output(io, &out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(usize::from(t));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = pool.install(|| match &cli.command {
        Command::Snarls { io, expand_pairs } => run_snarls(io, *expand_pairs),
        Command::Superbubbles { io, double } => run_superbubbles(io, *double),
        Command::Verify { io, mode, double } => run_verify(io, *mode, *double),
        Command::Bench { sizes, seed, repeats } => run_bench(sizes, *seed, *repeats),
        Command::Stats { io } => run_stats(io),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
