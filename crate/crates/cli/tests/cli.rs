use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn latinsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latinsq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let path_str = path.to_str().unwrap().to_string();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &path_str]);
    let out = latinsq(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path_str
}

#[test]
fn gen_additive_family() {
    let out = latinsq(&["gen", "--additive", "5", "--all-h"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family additive:s=5:h=1,2,3,4 order 5 count 4")
    );
    assert_eq!(lines.next(), Some("s 5"));
    assert_eq!(lines.next(), Some("2 3 4 5 1"));
    assert_eq!(text.matches("s 5\n").count(), 4);
}

#[test]
fn exit_code_matrix() {
    let dir = TempDir::new().unwrap();
    let six = gen_to(dir.path(), "six.txt", &["--multiplicative", "6"]);
    let family6 = gen_to(
        dir.path(),
        "family6.txt",
        &["--multiplicative", "6", "--shift"],
    );
    let three = gen_to(dir.path(), "three.txt", &["--additive", "3", "--all-h"]);
    let nonlatin = dir.path().join("nonlatin.txt");
    fs::write(&nonlatin, "s 3\n1 2 3\n2 3 1\n1 3 2\n").unwrap();
    let nonlatin = nonlatin.to_str().unwrap();
    let garbage = dir.path().join("garbage.txt");
    fs::write(&garbage, "hello\n").unwrap();
    let garbage = garbage.to_str().unwrap();

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["check", &six], 0),
        (vec!["check", nonlatin], 1),
        (vec!["check", garbage], 2),
        (vec!["check", "/nonexistent/file"], 2),
        (vec!["ortho", "--min-degree", &family6], 0),
        (vec!["ortho", "--t", "2", &family6], 1),
        (vec!["ortho", "--t", "3", &family6], 0),
        (vec!["ortho", "--t", "9", &family6], 2),
        (vec!["ortho", "--indices", "1,2", &three], 0),
        (vec!["ortho", "--indices", "1,2", &family6], 1),
        (vec!["ortho", "--indices", "1,7", &family6], 2),
        (vec!["ortho", "--defect", &three], 0),
        (vec!["ortho", "--min-degree", &six], 1),
        (vec!["search", "--mate", &six], 1),
        (vec!["search", "--mate", &three], 2),
        (vec!["search", "--count-all", "4"], 0),
        (vec!["search", "--count-all", "9"], 2),
        (
            vec!["search", "--count-all", "6", "--budget-nodes", "50"],
            3,
        ),
        (vec!["search", "--max-subset", &family6, "--t", "3"], 0),
        (vec!["search", "--exhaustive", "3"], 0),
        (vec!["search"], 2),
        (vec!["probe", &family6], 0),
        (vec!["probe", &six], 2),
        (vec!["table", "6"], 0),
        (vec!["table", "0"], 2),
        (vec!["gen", "--multiplicative", "5"], 1),
        (vec!["gen", "--additive", "4", "--h", "2"], 2),
        (vec!["gen", "--gf", "6"], 2),
        (vec!["gen"], 2),
        (vec!["frobnicate"], 2),
    ];
    for (args, want) in cases {
        let out = latinsq(&args);
        assert_eq!(
            code(&out),
            want,
            "latinsq {}: {}",
            args.join(" "),
            String::from_utf8_lossy(&out.stderr)
        );
        if want == 2 {
            assert!(
                out.stdout.is_empty(),
                "usage errors write nothing to stdout: {args:?}"
            );
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn verdict_outputs() {
    let dir = TempDir::new().unwrap();
    let family6 = gen_to(
        dir.path(),
        "family6.txt",
        &["--multiplicative", "6", "--shift"],
    );
    assert_eq!(
        stdout(&latinsq(&["ortho", "--min-degree", &family6])),
        "3\n"
    );
    let six = gen_to(dir.path(), "six.txt", &["--multiplicative", "6"]);
    let out = stdout(&latinsq(&["search", "--mate", &six]));
    assert!(out.starts_with("proven-absent\n"), "{out}");
    let nonlatin = dir.path().join("bad.txt");
    fs::write(&nonlatin, "s 2\n1 2\n1 2\n").unwrap();
    let out = stdout(&latinsq(&["check", nonlatin.to_str().unwrap()]));
    assert!(out.contains("(1, 1)") && out.contains("(2, 1)"), "{out}");
    let out = stdout(&latinsq(&[
        "--format",
        "structured",
        "check",
        nonlatin.to_str().unwrap(),
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["verdict"]["witness"]["first"]["row0"], 0);
    assert_eq!(v["verdict"]["witness"]["second"]["row"], 2);
}

#[test]
fn structured_files_give_identical_verdicts() {
    let dir = TempDir::new().unwrap();
    for (name, args) in [
        ("a", vec!["--multiplicative", "6", "--shift"]),
        ("b", vec!["--gf", "8"]),
        ("c", vec!["--additive", "7", "--all-h"]),
    ] {
        let text = gen_to(dir.path(), &format!("{name}.txt"), &args);
        let mut structured_args = vec!["--format", "structured"];
        structured_args.extend(args.iter());
        let json = gen_to(dir.path(), &format!("{name}.json"), &structured_args);
        for query in [
            vec!["ortho", "--min-degree"],
            vec!["ortho", "--t", "2"],
            vec!["probe"],
            vec!["check"],
        ] {
            let run = |file: &str| {
                let mut a = vec!["--format", "structured"];
                a.extend(query.iter());
                a.push(file);
                latinsq(&a)
            };
            let (x, y) = (run(&text), run(&json));
            assert_eq!(code(&x), code(&y));
            assert_eq!(x.stdout, y.stdout, "{name} {query:?}");
        }
    }
}

#[test]
fn develop_from_row_file() {
    let dir = TempDir::new().unwrap();
    let rows = dir.path().join("rows.txt");
    fs::write(&rows, "1 3 2\n").unwrap();
    let out = latinsq(&["gen", "--develop", rows.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "s 3\n1 3 2\n2 1 3\n3 2 1\n");
    let out = latinsq(&["gen", "--develop", rows.to_str().unwrap(), "--inflate", "2"]);
    assert_eq!(code(&out), 0);
}

fn table_rows(s: &str) -> Vec<String> {
    let out = latinsq(&["table", s]);
    assert_eq!(code(&out), 0);
    stdout(&out)
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect()
}

#[test]
fn table_rows_for_small_orders() {
    assert_eq!(table_rows("3"), ["I 2 2 additive:s=3:h=1,2"]);
    assert_eq!(
        table_rows("4"),
        [
            "IV 2 none additive:s=4:h=1,3",
            "II 4 3 shift-family:base=multiplicative:s=4",
            "III 3 2 gf-mols:q=4"
        ]
    );
    assert_eq!(table_rows("5"), ["I 4 2 additive:s=5:h=1,2,3,4"]);
    assert_eq!(
        table_rows("6"),
        [
            "IV 2 none additive:s=6:h=1,5",
            "II 6 3 shift-family:base=multiplicative:s=6"
        ]
    );
    assert_eq!(table_rows("7"), ["I 6 2 additive:s=7:h=1,2,3,4,5,6"]);
    assert_eq!(
        table_rows("12"),
        [
            "IV 4 none additive:s=12:h=1,5,7,11",
            "II 12 3 shift-family:base=multiplicative:s=12",
            "IV - - external — ingest via file (published constructions for this order)",
        ]
    );
}

#[test]
fn search_outputs_round_trip() {
    let out = latinsq(&[
        "--format",
        "structured",
        "search",
        "--count-reduced",
        "5",
        "--threads",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "found");
    assert_eq!(v["payload"]["count"], 56);
    assert_eq!(v["replay"]["search"], "enumerate");
    let serial = latinsq(&["--format", "structured", "search", "--count-reduced", "5"]);
    assert_eq!(serial.stdout, out.stdout);
}
