use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn syncalg(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_syncalg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str], stdin: Option<&str>) -> String {
    let o = syncalg(args, stdin);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn code(args: &[&str], stdin: Option<&str>) -> i32 {
    syncalg(args, stdin).status.code().unwrap()
}

fn generated(dir: &Path, family: &[&str]) -> String {
    let mut args = vec!["generate"];
    args.extend_from_slice(family);
    let path = dir.join(format!("{}.aut", family.join("_")));
    fs::write(&path, ok(&args, None)).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn cerny4_pipeline_gives_length_nine() {
    let aut = ok(&["generate", "cerny", "4"], None);
    let out = ok(&["reset", "-", "--exact"], Some(&aut));
    assert!(out.contains("length = 9\n"), "{out}");
    assert!(out.contains("word = baaabaaab\n"));
}

#[test]
fn quasi3_classifies_as_quasi_simple() {
    let dir = tempfile::tempdir().unwrap();
    let q = generated(dir.path(), &["quasi3"]);
    let out = ok(&["classify", &q], None);
    assert!(out.lines().any(|l| l == "class = quasi-simple"), "{out}");
}

#[test]
fn verify_sweep_exits_zero() {
    let out = ok(
        &["verify", "--suite", "all", "--random", "100", "--states", "6", "--letters", "2", "--seed", "42"],
        None,
    );
    assert_eq!(out.lines().filter(|l| l.starts_with("pass ")).count(), 116);
    assert!(out.ends_with("suite all: 116 instances, 0 failed\n"));
}

#[test]
fn generated_files_round_trip() {
    for family in [
        vec!["cerny", "5"],
        vec!["chain", "4"],
        vec!["tower", "3", "2"],
        vec!["double_cerny"],
        vec!["modcerny1"],
        vec!["modcerny2"],
        vec!["quasi3"],
        vec!["random", "5", "3", "7"],
    ] {
        let mut args = vec!["generate"];
        args.extend_from_slice(&family);
        let text = ok(&args, None);
        assert!(text.starts_with("aut 1\n"));
        let commented = format!("# copy\n{}\n# end\n", text.replace('\n', "  # x\n"));
        assert_eq!(ok(&["analyze", "-"], Some(&commented)), ok(&["analyze", "-"], Some(&text)));
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let m = generated(dir.path(), &["modcerny2"]);
    for args in [
        vec!["analyze", m.as_str()],
        vec!["radical", m.as_str(), "--method", "both"],
        vec!["lattice", m.as_str()],
        vec!["pairs", m.as_str()],
    ] {
        assert_eq!(ok(&args, None), ok(&args, None));
    }
    let v = ["verify", "--suite", "radical", "--random", "20", "--seed", "3"];
    assert_eq!(ok(&v, None), ok(&v, None));
}

#[test]
fn analyze_has_the_full_schema() {
    let aut = ok(&["generate", "modcerny1"], None);
    let out = ok(&["analyze", "-"], Some(&aut));
    let keys: Vec<&str> = out.lines().map(|l| l.split(" = ").next().unwrap()).collect();
    assert_eq!(
        keys,
        [
            "atom_count",
            "class",
            "greedy_reset_length",
            "lattice_height",
            "lattice_size",
            "monoid_size",
            "nilpotency_index",
            "rad_size",
            "semisimple",
            "shortest_radical_length",
            "shortest_reset_length",
            "strongly_connected",
            "syn_size",
        ]
    );
    assert!(out.contains("shortest_radical_length = 4\n"));
}

#[test]
fn radical_methods_agree() {
    let aut = ok(&["generate", "modcerny1"], None);
    let both = ok(&["radical", "-", "--method", "both"], Some(&aut));
    assert!(both.contains("shortest_radical_word = baab\n"), "{both}");
    assert!(both.contains("radical_congruence = {0,1}{2}{3}\n"));
    let oracle = ok(&["radical", "-", "--method", "oracle"], Some(&aut));
    let alg1 = ok(&["radical", "-", "--method", "alg1"], Some(&aut));
    assert_eq!(
        oracle.replace("method = oracle", ""),
        alg1.replace("method = alg1", "")
    );
}

#[test]
fn atoms_and_lattice() {
    let aut = ok(&["generate", "chain", "4"], None);
    assert_eq!(ok(&["atoms", "-"], Some(&aut)), "{0,1}{2}{3}\n");
    let out = ok(&["lattice", "-"], Some(&aut));
    assert!(out.starts_with("lattice_height = 4\nlattice_size = 4\n"), "{out}");
}

#[test]
fn dot_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let chain = generated(dir.path(), &["chain", "3"]);
    let lattice = dir.path().join("lattice.dot");
    ok(&["lattice", &chain, "--dot", lattice.to_str().unwrap()], None);
    assert_eq!(
        fs::read_to_string(&lattice).unwrap(),
        "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n  \
         n0 [label=\"{0}{1}{2}\"];\n  n1 [label=\"{0,1}{2}\"];\n  n2 [label=\"{0,1,2}\"];\n  \
         n0 -> n1;\n  n1 -> n2;\n}\n"
    );
    let q = generated(dir.path(), &["modcerny1"]);
    let pairs = dir.path().join("pairs.dot");
    ok(&["pairs", &q, "--dot", pairs.to_str().unwrap()], None);
    assert_eq!(
        fs::read_to_string(&pairs).unwrap(),
        "digraph pairs {\n  node [shape=box];\n  \
         c0 [label=\"{0,1}\", peripheries=2, style=filled];\n  \
         c1 [label=\"{0,2} {0,3} {1,2} {1,3} {2,3}\"];\n  c1 -> c0;\n}\n"
    );
    let to_stdout = ok(&["pairs", &q, "--dot", "-"], None);
    assert_eq!(to_stdout, fs::read_to_string(&pairs).unwrap());
}

#[test]
fn lifted_reset_word_resets() {
    let dir = tempfile::tempdir().unwrap();
    let m = generated(dir.path(), &["modcerny1"]);
    let sigma = dir.path().join("sigma.part");
    fs::write(&sigma, "partition 1\nstates 4\nblock 0 1\n").unwrap();
    let out = ok(&["reset", &m, "--lift", sigma.to_str().unwrap()], None);
    assert!(out.contains("method = lift-small-class\n"), "{out}");
    assert!(out.contains("bound_applies = true\n"));
    let len: usize = out
        .lines()
        .find_map(|l| l.strip_prefix("length = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(len < 9);

    let t = generated(dir.path(), &["tower", "3", "3"]);
    let blocks = dir.path().join("blocks.part");
    fs::write(&blocks, "partition 1\nstates 9\nblock 0 3 6\nblock 1 4 7\nblock 2 5 8\n").unwrap();
    let out = ok(&["reset", &t, "--lift", blocks.to_str().unwrap()], None);
    assert!(out.contains("method = lift-general\n"), "{out}");
    assert!(out.contains("quotient_length = 4\n"));

    // not a congruence of the tower
    let bad = dir.path().join("bad.part");
    fs::write(&bad, "partition 1\nstates 9\nblock 0 1 2\n").unwrap();
    assert_eq!(code(&["reset", &t, "--lift", bad.to_str().unwrap()], None), 1);
}

#[test]
fn recognizer_export_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let q = generated(dir.path(), &["quasi3"]);
    let sigma = dir.path().join("sigma.part");
    fs::write(&sigma, "partition 1\nstates 3\nblock 1 2\n").unwrap();
    let out = ok(&["recognizer", &q, "--congruence", sigma.to_str().unwrap()], None);
    assert!(out.starts_with("aut 1\n"));
    assert!(out.contains("\ninitial "));
    assert!(out.contains("\nfinal"));
    // the export is itself a valid automaton file
    ok(&["pairs", "-"], Some(&out));
}

#[test]
fn exit_codes() {
    let perm = "aut 1\nstates 2\nletters a\na: 1 0\n";
    assert_eq!(code(&["bogus"], None), 1);
    assert_eq!(code(&["reset", "-"], Some(perm)), 1);
    assert_eq!(code(&["analyze", "/nonexistent/file.aut"], None), 1);
    assert_eq!(code(&["generate", "cerny", "1"], None), 1);
    assert_eq!(code(&["analyze", "-"], Some("aut 1\nstates 2\n")), 2);
    assert_eq!(code(&["analyze", "-"], Some("aut 1\nstates 2\nletters a\na: 0 7\n")), 2);
    assert_eq!(code(&["radical", "-"], Some(perm)), 3);
    assert_eq!(code(&["reset", "-", "--exact"], Some(perm)), 3);
    assert_eq!(code(&["reset", "-", "--greedy"], Some(perm)), 3);
    let cerny5 = ok(&["generate", "cerny", "5"], None);
    assert_eq!(code(&["--max-monoid", "10", "analyze", "-"], Some(&cerny5)), 4);
    assert_eq!(code(&["reset", "-", "--exact", "--max-subsets", "3"], Some(&cerny5)), 4);
    assert_eq!(code(&["lattice", "-", "--max-congruences", "1"], Some(&cerny5)), 4);
    assert_eq!(code(&["lattice", "-", "--max-congruences", "2"], Some(&cerny5)), 0);
    let chain = ok(&["generate", "chain", "5"], None);
    assert_eq!(code(&["lattice", "-", "--max-congruences", "2"], Some(&chain)), 4);
    assert_eq!(code(&["--help"], None), 0);
}

#[test]
fn non_synchronizing_analysis_still_reports() {
    let perm = "aut 1\nstates 2\nletters a\na: 1 0\n";
    let out = ok(&["analyze", "-"], Some(perm));
    assert!(out.contains("class = not-synchronizing\n"));
    assert!(out.contains("rad_size = none\n"));
}
