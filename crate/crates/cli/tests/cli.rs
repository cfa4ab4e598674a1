use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bubblescope"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn run_file(args: &[&str], file: &str) -> Output {
    let path = corpus(file);
    let mut all = args.to_vec();
    all.extend(["-i", path.to_str().unwrap()]);
    run(&all, "")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const DIAMOND: &str = "S\ts\t*\nS\ta\t*\nS\tb\t*\nS\tt\t*\n\
L\ts\t+\ta\t+\t0M\nL\ts\t+\tb\t+\t0M\nL\ta\t+\tt\t+\t0M\nL\tb\t+\tt\t+\t0M\n";

#[test]
fn bubble_cycle_report() {
    let o = run_file(&["snarls"], "fx1_bubble_cycle.gfa");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "T 1 s+ t-\nS a+ b+\nS a- b-\n");
    assert!(stderr(&o).contains("BUILD"));
    assert!(stderr(&o).contains("I/O+ALGO"));
}

#[test]
fn expanded_pairs() {
    let o = run_file(&["snarls", "--expand-pairs"], "fx1_bubble_cycle.gfa");
    assert_eq!(stdout(&o), "a+ b+\na- b-\ns+ t-\n");
}

#[test]
fn empty_input_gives_empty_report() {
    let o = run(&["snarls"], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "");
}

#[test]
fn overlaps_are_rejected() {
    let o = run(&["snarls"], "S\ta\t*\nS\tb\t*\nL\ta\t+\tb\t+\t4M\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bluntify"));
}

#[test]
fn undeclared_segment_is_a_parse_error() {
    let o = run(&["superbubbles"], "S\ta\t*\nL\ta\t+\tq\t+\t*\n");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("'q'"));
}

#[test]
fn dag_in_cycle_superbubbles() {
    let o = run_file(&["superbubbles"], "fx4_dag_in_cycle.gfa");
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "s t"));
}

#[test]
fn diamond_has_one_superbubble() {
    let o = run(&["superbubbles"], DIAMOND);
    assert_eq!(stdout(&o), "s t\n");
}

#[test]
fn bidirected_input_needs_double() {
    let o = run_file(&["superbubbles"], "fx2_parallel_quad.gfa");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--double"));
    let o = run_file(&["superbubbles", "--double"], "fx2_parallel_quad.gfa");
    assert!(o.status.success());
    assert!(stdout(&o).lines().all(|l| l.split(' ').all(|v| v.ends_with('+') || v.ends_with('-'))));
}

#[test]
fn corpus_verifies() {
    for f in std::fs::read_dir(corpus("")).unwrap() {
        let path = f.unwrap().path();
        let o = run(&["verify", "-i", path.to_str().unwrap()], "");
        assert!(o.status.success(), "{}: {}", path.display(), stderr(&o));
        assert!(stdout(&o).starts_with("ok: "));
    }
}

#[test]
fn corrupted_expectation_fails_with_diff() {
    let text = std::fs::read_to_string(corpus("fx1_bubble_cycle.gfa")).unwrap().replace("#> S a- b-", "#> S a- t-");
    let o = run(&["verify"], &text);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("- S a- t-"), "{err}");
    assert!(err.contains("+ S a- b-"), "{err}");
}

#[test]
fn verify_mode_flag_overrides_annotation() {
    let o = run(&["verify", "--mode", "superbubbles"], DIAMOND);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ok: 1 superbubbles match the oracle\n");
}

#[test]
fn oracle_refuses_large_inputs() {
    let mut text = String::new();
    for i in 0..13 {
        text += &format!("S\tv{i}\t*\n");
    }
    for i in 0..12 {
        text += &format!("L\tv{i}\t+\tv{}\t+\t0M\n", i + 1);
    }
    let o = run(&["verify"], &text);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("limit 12"));
}

#[test]
fn thread_count_does_not_change_output() {
    for (cmd, file) in [("snarls", "fx3_double_k4.gfa"), ("superbubbles", "fx4_dag_in_cycle.gfa")] {
        let one = run_file(&["-t", "1", cmd], file);
        let four = run_file(&["--threads", "4", cmd], file);
        assert_eq!(one.stdout, four.stdout);
    }
    assert!(!run(&["-t", "0", "snarls"], "").status.success());
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("bubblescope-cli-{}.txt", std::process::id()));
    let o = run(&["superbubbles", "-o", path.to_str().unwrap()], DIAMOND);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "s t\n");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn stats_lists_counts() {
    let o = run_file(&["stats"], "fx3_double_k4.gfa");
    let out = stdout(&o);
    assert!(out.contains("vertices 6\n"));
    assert!(out.contains("spqr nodes S 0 P 0 R 2\n"));
    assert!(out.contains("snarls 2\n"));
}

#[test]
fn small_bench_runs() {
    let o = run(&["-t", "2", "bench", "--sizes", "2000,4000", "--repeats", "1", "--seed", "7"], "");
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# seed 7, 2 threads"));
    assert!(out.contains("exponent snarls"));
    assert!(out.contains("speedup at 4000 edges"));
}
