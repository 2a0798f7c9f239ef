use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn spanners(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spanners"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn random_input(dir: &Path) {
    let out = spanners(
        dir,
        &[
            "gen",
            "random",
            "--n",
            "150",
            "--p",
            "0.07",
            "--seed",
            "4",
            "--out",
            "g.el",
            "--source-count",
            "12",
            "--sources",
            "s.txt",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn random_generation_is_deterministic() {
    let dir = TempDir::new().unwrap();
    for name in ["a.el", "b.el"] {
        let out = spanners(
            dir.path(),
            &[
                "gen", "random", "--n", "100", "--p", "0.1", "--seed", "1", "--out", name,
            ],
        );
        assert_eq!(code(&out), 0);
    }
    let a = fs::read(dir.path().join("a.el")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.el")).unwrap());
    assert!(a.starts_with(b"p 100 "));
}

#[test]
fn every_construction_verifies() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    random_input(d);
    let cases: [(&[&str], &str); 5] = [
        (&["build", "hybrid", "--k", "2"], "hybrid:k=2"),
        (
            &["build", "swmult", "--k", "3", "--sources", "s.txt"],
            "swmult:k=3",
        ),
        (
            &[
                "build",
                "swadd",
                "--k",
                "1",
                "--sources",
                "s.txt",
                "--retries",
                "2",
            ],
            "additive:beta=2",
        ),
        (
            &["build", "emulator", "--sources", "s.txt"],
            "emulator:beta=2",
        ),
        (&["build", "sw4", "--sources", "s.txt"], "additive:beta=4"),
    ];
    for (i, (build, spec)) in cases.iter().enumerate() {
        let out_file = format!("h{i}.el");
        let report = format!("r{i}.json");
        let mut args = build.to_vec();
        args.extend([
            "--in", "g.el", "--out", &out_file, "--report", &report, "--seed", "7",
        ]);
        let out = spanners(d, &args);
        assert_eq!(
            code(&out),
            0,
            "{spec}: {}",
            String::from_utf8_lossy(&out.stderr)
        );

        let r = json(d.join(&report));
        assert_eq!(r["seed"], 7);
        let phases: u64 = r["phases"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p["edges"].as_u64().unwrap())
            .sum();
        assert_eq!(phases, r["size"].as_u64().unwrap(), "{spec}");
        assert!(r["bound_ratio"].as_f64().unwrap() > 0.0);
        assert!(r["params"].is_object());

        let verify_report = format!("v{i}.json");
        let mut args = vec![
            "verify",
            "--graph",
            "g.el",
            "--candidate",
            &out_file,
            "--spec",
            spec,
            "--report",
            &verify_report,
        ];
        if build.contains(&"--sources") {
            args.extend(["--sources", "s.txt"]);
        }
        let out = spanners(d, &args);
        assert_eq!(
            code(&out),
            0,
            "{spec}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = json(d.join(&verify_report));
        assert_eq!(v["n_violations"], 0);
        for field in [
            "class",
            "alpha",
            "beta",
            "max_mult",
            "max_add",
            "violations",
            "size",
            "bound_ratio",
        ] {
            assert!(v.get(field).is_some(), "{field}");
        }
    }
}

#[test]
fn rebuilding_with_the_same_seed_is_identical() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    random_input(d);
    for name in ["x.el", "y.el"] {
        let out = spanners(
            d,
            &[
                "build",
                "swmult",
                "--k",
                "2",
                "--source-count",
                "9",
                "--seed",
                "3",
                "--in",
                "g.el",
                "--out",
                name,
            ],
        );
        assert_eq!(code(&out), 0);
    }
    assert_eq!(
        fs::read(d.join("x.el")).unwrap(),
        fs::read(d.join("y.el")).unwrap()
    );
}

#[test]
fn violations_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    random_input(d);
    fs::write(d.join("empty.el"), "p 150 0\n").unwrap();
    let out = spanners(
        d,
        &[
            "verify",
            "--graph",
            "g.el",
            "--candidate",
            "empty.el",
            "--spec",
            "hybrid:k=2",
        ],
    );
    assert_eq!(code(&out), 2);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["n_violations"].as_u64().unwrap() > 0);
    assert!(v["violations"].as_array().unwrap().len() <= 100);
    assert_eq!(v["max_mult"], Value::Null);
}

#[test]
fn lower_bound_audit() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = spanners(
        d,
        &[
            "gen",
            "lb",
            "--r",
            "16",
            "--k",
            "2",
            "--eps",
            "1",
            "--out",
            "lb.el",
            "--sources",
            "s.txt",
            "--meta",
            "m.json",
        ],
    );
    assert_eq!(code(&out), 0);
    let meta = json(d.join("m.json"));
    assert_eq!(
        (meta["n1"].as_u64(), meta["n2"].as_u64()),
        (Some(4), Some(4))
    );
    assert_eq!(meta["level_sizes"], serde_json::json!([16, 16, 16]));
    assert_eq!(
        fs::read_to_string(d.join("s.txt")).unwrap().lines().count(),
        16
    );

    // the first 63 edges: below |E| / k
    let text = fs::read_to_string(d.join("lb.el")).unwrap();
    let edges: Vec<&str> = text.lines().skip(1).take(63).collect();
    fs::write(
        d.join("sparse.el"),
        format!("p 48 63\n{}\n", edges.join("\n")),
    )
    .unwrap();
    let out = spanners(
        d,
        &[
            "audit",
            "lb",
            "--graph",
            "lb.el",
            "--meta",
            "m.json",
            "--candidate",
            "sparse.el",
            "--report",
            "a.json",
        ],
    );
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    let audit = json(d.join("a.json"));
    assert_eq!(audit["dist_g"], 2);
    assert!(audit["dist_h"].is_null() || audit["dist_h"].as_u64().unwrap() >= 6);
    assert!(audit["witness"].is_array());

    let out = spanners(
        d,
        &[
            "audit",
            "lb",
            "--graph",
            "lb.el",
            "--meta",
            "m.json",
            "--candidate",
            "lb.el",
        ],
    );
    assert_eq!(code(&out), 0);
    let audit: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(audit["witness"].is_null());
}

#[test]
fn usage_and_input_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    random_input(d);
    assert_eq!(code(&spanners(d, &["build", "hybrid", "--k", "2"])), 1);
    assert_eq!(code(&spanners(d, &["frobnicate"])), 1);
    assert_eq!(
        code(&spanners(
            d,
            &[
                "verify",
                "--graph",
                "g.el",
                "--candidate",
                "g.el",
                "--spec",
                "nope"
            ]
        )),
        1
    );
    assert_eq!(
        code(&spanners(
            d,
            &[
                "verify",
                "--graph",
                "g.el",
                "--candidate",
                "g.el",
                "--spec",
                "swmult:k=2"
            ]
        )),
        1
    );
    assert_eq!(
        code(&spanners(
            d,
            &[
                "verify",
                "--graph",
                "missing.el",
                "--candidate",
                "g.el",
                "--spec",
                "hybrid:k=2"
            ]
        )),
        1
    );
    assert_eq!(
        code(&spanners(
            d,
            &["build", "swadd", "--k", "1", "--in", "g.el", "--out", "o.el"]
        )),
        1
    );
    fs::write(d.join("bad.el"), "p 3 1\n0 9\n").unwrap();
    let out = spanners(
        d,
        &[
            "build", "hybrid", "--k", "2", "--in", "bad.el", "--out", "o.el",
        ],
    );
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = spanners(
        d,
        &[
            "gen",
            "lb",
            "--r",
            "1000",
            "--k",
            "2",
            "--eps",
            "1",
            "--out",
            "x.el",
            "--max-vertices",
            "100",
        ],
    );
    assert_eq!(code(&out), 1);
    assert_eq!(code(&spanners(d, &["--help"])), 0);
    assert_eq!(code(&spanners(d, &["--version"])), 0);
}

#[test]
fn quick_bench_prints_a_table() {
    let dir = TempDir::new().unwrap();
    let out = spanners(dir.path(), &["bench", "--grid", "quick"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8(out.stdout).unwrap();
    let mut lines = table.lines();
    assert!(lines.next().unwrap().starts_with("construction,n,k,"));
    let rows: Vec<&str> = lines.collect();
    for name in ["hybrid", "swmult", "swadd", "emulator", "sw4"] {
        assert!(rows.iter().any(|r| r.starts_with(name)), "{name}");
    }
    assert!(rows.iter().all(|r| r.split(',').nth(11) == Some("0")));
}
