use std::fs;
use std::process::{Command, Output};

fn qracoop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qracoop")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn classic_prints_exact_and_percent() {
    let o = qracoop(&["classic", "--weights", "1,2,1", "--quota", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1/6 2/3 1/6\n16.6667% 66.6667% 16.6667%\n");
}

#[test]
fn game2_strategy_point() {
    let o = qracoop(&["game2", "--gamma", "0", "--p1", "3pi/8", "--p2", "pi/8", "--weights", "1,1", "--quota", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("|10>  0.7286"), "{out}");
    assert!(out.contains("|01>  0.0214"), "{out}");
}

#[test]
fn game2_exact_ring_shows_surds() {
    let o = qracoop(&["game2", "--gamma", "pi/2", "--weights", "1,1", "--quota", "2", "--ring", "exact"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("|11>  0.5000  1/2"), "{}", stdout(&o));
}

#[test]
fn game3_ghz_allocation() {
    let o = qracoop(&["game3", "--weights", "1,2,1", "--quota", "2", "--gamma123", "1", "--ring", "exact"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("1       0.0833  1/12"), "{out}");
    assert!(out.contains("2       0.3333  1/3"), "{out}");
}

#[test]
fn prove_j2_orderings() {
    let o = qracoop(&["prove", "j2-orderings"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS 6/6 orderings identical"));
}

#[test]
fn prove_swap_theorem_small() {
    let o = qracoop(&["prove", "swap-theorem", "--max-qubits", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("PASS SWAP(s,t)"), "{out}");
    assert!(out.contains("fails on 2 of 28 kets"), "{out}");
}

#[test]
fn circuit_ghz() {
    let o = qracoop(&["circuit", "H(1); CNOT(1,2); CNOT(2,3)"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "circuit: H(1); CNOT(1,2); CNOT(2,3)\nwidth: 3\n|000>  0.7071+0.0000i  p=0.5000\n|111>  0.7071+0.0000i  p=0.5000\n"
    );
}

#[test]
fn sweep_to_file_matches_stdout() {
    let args = ["sweep", "--weights", "1,2,1", "--quota", "2", "--vary", "p1,p3", "--grid", "5"];
    let direct = qracoop(&args);
    assert!(direct.status.success());
    let path = std::env::temp_dir().join(format!("qracoop-sweep-{}.csv", std::process::id()));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let o = qracoop(&with_out);
    assert!(o.status.success());
    let written = fs::read_to_string(&path).unwrap();
    fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&direct));
    assert_eq!(written.lines().count(), 26);
    assert!(written.starts_with("p1,p3,p_000,"));
}

#[test]
fn warnings_go_to_stderr() {
    let o = qracoop(&["game2", "--gamma", "pi", "--weights", "1,1", "--quota", "1"]);
    assert!(o.status.success());
    assert!(stderr(&o).starts_with("warning: gamma"), "{}", stderr(&o));
    assert!(!stdout(&o).contains("warning"));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 8] = [
        (&["classic", "--weights", "1,1", "--quota", "0"], 1),
        (&["classic", "--weights", "1,x", "--quota", "1"], 2),
        (&["game2", "--weights", "1,1,1", "--quota", "1"], 2),
        (&["game2", "--weights", "1,1", "--quota", "1", "--ring", "symbolic"], 2),
        (&["sweep", "--weights", "1,1", "--quota", "1", "--vary", "q"], 2),
        (&["sweep", "--weights", "1,1", "--quota", "1", "--vary", "p1", "--p3", "0"], 2),
        (&["circuit", "J(1,2"], 2),
        (&["frobnicate"], 2),
    ];
    for (args, code) in cases {
        let o = qracoop(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}
