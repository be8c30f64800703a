use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ecp::graph::serialize_instance;
use ecp::{Graph, Instance};

fn ecp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecp")).args(args).output().unwrap()
}

fn code(output: &Output) -> i32 {
    output.status.code().unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn write_instance(dir: &Path, name: &str, graph: Graph, p: usize) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serialize_instance(&Instance::new(graph, p).unwrap(), &[])).unwrap();
    path
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_reports_and_exits_by_answer() {
    let dir = tempfile::tempdir().unwrap();
    let clique = write_instance(dir.path(), "k10.ecp", Graph::complete(10), 3);
    let out = ecp(&["solve", "--input", arg(&clique)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("algorithm clique\n") && text.contains("answer yes\n"), "{text}");

    let star = write_instance(dir.path(), "star.ecp", Graph::star(3), 2);
    let out = ecp(&["solve", "--input", arg(&star), "--json"]);
    assert_eq!(code(&out), 1);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["answer"], "no");
    assert!(json["certificate"].is_null());
}

#[test]
fn solve_writes_a_verifiable_solution() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write_instance(dir.path(), "grid.ecp", Graph::grid(3, 4), 4);
    let solution = dir.path().join("grid.sol");
    assert_eq!(code(&ecp(&["solve", "--input", arg(&grid), "--output", arg(&solution)])), 0);
    let out = ecp(&["verify", "--input", arg(&grid), "--solution", arg(&solution)]);
    assert_eq!((code(&out), stdout(&out)), (0, "valid\n".to_string()));

    let text = std::fs::read_to_string(&solution).unwrap().replace("a 1 ", "a 1 9");
    std::fs::write(&solution, text).unwrap();
    let out = ecp(&["verify", "--input", arg(&grid), "--solution", arg(&solution)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("invalid"));
}

#[test]
fn verify_checks_no_claims_by_solving() {
    let dir = tempfile::tempdir().unwrap();
    let star = write_instance(dir.path(), "star.ecp", Graph::star(3), 2);
    let path = write_instance(dir.path(), "path.ecp", Graph::path(4), 2);
    let no = dir.path().join("no.sol");
    std::fs::write(&no, "s no\n").unwrap();
    assert_eq!(code(&ecp(&["verify", "--input", arg(&star), "--solution", arg(&no)])), 0);
    assert_eq!(code(&ecp(&["verify", "--input", arg(&path), "--solution", arg(&no)])), 1);
}

#[test]
fn forced_solver_outside_its_precondition_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "p4.ecp", Graph::path(4), 2);
    let out = ecp(&["solve", "--input", arg(&path), "--algo", "cograph"]);
    assert_eq!(code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a cograph"));
}

#[test]
fn exhausted_budget_is_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write_instance(dir.path(), "grid.ecp", Graph::grid(5, 5), 5);
    let out = ecp(&["solve", "--input", arg(&grid), "--algo", "oracle", "--node-limit", "5"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("answer unknown\n"));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(code(&ecp(&["solve"])), 64);
    assert_eq!(code(&ecp(&["frobnicate"])), 64);
    assert_eq!(code(&ecp(&["--help"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ecp");
    std::fs::write(&bad, "p ecp 3 1 1\ne 1 2\n").unwrap();
    let out = ecp(&["solve", "--input", arg(&bad)]);
    assert_eq!(code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
    assert_eq!(code(&ecp(&["solve", "--input", arg(&dir.path().join("missing.ecp"))])), 65);
    let ok = write_instance(dir.path(), "ok.ecp", Graph::path(3), 1);
    assert_eq!(code(&ecp(&["solve", "--input", arg(&ok), "--algo", "magic"])), 64);
}

#[test]
fn analyze_prints_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let clique = write_instance(dir.path(), "k6.ecp", Graph::complete(6), 2);
    let out = ecp(&["analyze", "--input", arg(&clique), "--budget", "vc=2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for line in ["param dclique 0", "param nd 1", "param fes 10", "param vc exceeded", "param cograph yes"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
    assert_eq!(code(&ecp(&["analyze", "--input", arg(&clique), "--budget", "zz=2"])), 64);
}

#[test]
fn generate_writes_parsable_instances() {
    let dir = tempfile::tempdir().unwrap();
    let ubp = dir.path().join("items.ubp");
    std::fs::write(&ubp, "u ubp 2 3 3\n1 2 3\n").unwrap();
    let reduced = dir.path().join("reduced.ecp");
    assert_eq!(code(&ecp(&["generate", "ubp", "--input", arg(&ubp), "--output", arg(&reduced)])), 0);
    let text = std::fs::read_to_string(&reduced).unwrap();
    assert!(text.starts_with("c generator=ubp"), "{text}");
    assert!(text.contains("p ecp 8 "));
    assert_eq!(code(&ecp(&["solve", "--input", arg(&reduced)])), 0);

    let random = dir.path().join("random.ecp");
    let args =
        ["generate", "random", "--kind", "cograph", "--seed", "5", "--n", "12", "--p", "4", "--output", arg(&random)];
    assert_eq!(code(&ecp(&args)), 0);
    let first = std::fs::read_to_string(&random).unwrap();
    assert_eq!(code(&ecp(&args)), 0);
    assert_eq!(first, std::fs::read_to_string(&random).unwrap());
    assert!(first.starts_with("c generator=random kind=cograph seed=5"));

    let bad = ["generate", "random", "--kind", "blob", "--seed", "1", "--n", "4", "--p", "1", "--output", arg(&random)];
    assert_eq!(code(&ecp(&bad)), 64);
}

#[test]
fn bench_keeps_manifest_order_and_records_errors() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(dir.path(), "a.ecp", Graph::cycle(6), 3);
    write_instance(dir.path(), "b.ecp", Graph::star(4), 2);
    write_instance(dir.path(), "c.ecp", Graph::complete(4), 2);
    std::fs::write(dir.path().join("broken.ecp"), "p ecp two\n").unwrap();
    let manifest = dir.path().join("manifest.txt");
    std::fs::write(&manifest, "a.ecp\nbroken.ecp\nb.ecp\nc.ecp\n").unwrap();
    let csv = dir.path().join("out.csv");
    let out = ecp(&["bench", "--manifest", arg(&manifest), "--csv", arg(&csv), "--no-timing"]);
    assert_eq!(code(&out), 0);
    let table = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows[0], "digest,n,m,p,algorithm,answer,nodes,states,millis");
    let answers: Vec<&str> = rows[1..].iter().map(|r| r.split(',').nth(5).unwrap()).collect();
    assert_eq!(answers, ["yes", "error", "no", "yes"]);
    assert!(rows[4].contains(",clique,yes,"));

    std::fs::write(&manifest, "").unwrap();
    assert_eq!(code(&ecp(&["bench", "--manifest", arg(&manifest), "--csv", arg(&csv)])), 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "digest,n,m,p,algorithm,answer,nodes,states,millis\n");
}
