use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sprout"));
    cmd.env_remove("SUBMOD_SEED").env_remove("RUST_LOG");
    cmd
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn greedy_on_triangle() {
    let out = run(&[
        "run",
        "--instance",
        data("triangle.json").to_str().unwrap(),
        "--algo",
        "greedy",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"], 5.0);
    assert_eq!(v["set"], serde_json::json!([3]));
    assert_eq!(v["algo"], "greedy");
}

#[test]
fn brute_on_triangle() {
    let out = run(&[
        "brute",
        "--instance",
        data("triangle.json").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"], 5.0);
    assert_eq!(v["set"], serde_json::json!([3]));
}

#[test]
fn sprout_within_bound_of_brute() {
    let inst = data("cut10.json");
    let inst = inst.to_str().unwrap();
    let opt = json(&run(&["brute", "--instance", inst]))["value"]
        .as_f64()
        .unwrap();
    let got = json(&run(&["run", "--instance", inst, "--algo", "sprout"]))["value"]
        .as_f64()
        .unwrap();
    // k = 1 uniform matroid, m = 2 knapsacks, ε = 0.25.
    let ratio = sprout::theory::ratio_nonmonotone(1, 2, 0.25);
    assert!(got * ratio >= opt, "{got} * {ratio} < {opt}");
    assert!(got <= opt + 1e-9);
}

#[test]
fn all_algorithms_run() {
    let inst = data("cut10.json");
    for algo in ["sprout", "sproutpp", "greedy", "rp_greedy", "dssgs"] {
        let out = run(&[
            "run",
            "--instance",
            inst.to_str().unwrap(),
            "--algo",
            algo,
            "--preset",
            "empirical",
        ]);
        assert!(
            out.status.success(),
            "{algo}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(json(&out)["algo"], algo);
    }
}

#[test]
fn seed_from_environment() {
    let inst = data("cut10.json");
    let out = bin()
        .args([
            "run",
            "--instance",
            inst.to_str().unwrap(),
            "--algo",
            "sproutpp",
        ])
        .env("SUBMOD_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 11);
}

#[test]
fn gen_er_complete_graph() {
    let out = run(&["gen", "er", "--n", "4", "--p", "1", "--seed", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n 4"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn generated_instances_load() {
    let dir = tempfile::tempdir().unwrap();
    let er = dir.path().join("er.json");
    let mv = dir.path().join("mv.json");
    let csv = dir.path().join("mv.csv");
    assert!(run(&[
        "gen",
        "er",
        "--n",
        "30",
        "--p",
        "0.1",
        "--as-instance",
        "--out",
        er.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "gen",
        "synthetic-movies",
        "--rows",
        "25",
        "--as-instance",
        "--third-knapsack",
        "--out",
        mv.to_str().unwrap()
    ])
    .status
    .success());
    assert!(run(&[
        "gen",
        "synthetic-movies",
        "--rows",
        "25",
        "--out",
        csv.to_str().unwrap()
    ])
    .status
    .success());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 26);
    for inst in [&er, &mv] {
        let out = run(&[
            "run",
            "--instance",
            inst.to_str().unwrap(),
            "--algo",
            "greedy",
        ]);
        assert!(out.status.success());
    }
}

#[test]
fn bench_row_count_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let out = run(&[
        "bench",
        "--config",
        data("maxcut-small.json").to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // 4 sweep points × (4 deterministic algorithms + 3 sproutpp repeats).
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 4 * (4 + 3));
    assert!(text
        .starts_with("sweep_kind,sweep_value,algo,repeat,seed,value,oracle_calls,wall_ms,set\n"));
    // One summary line per (sweep point, algorithm).
    let summary = String::from_utf8(out.stdout).unwrap();
    assert_eq!(summary.lines().count(), 4 * 5);
    for line in summary.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["mean"].is_number() && v["std"].is_number());
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };

    let empty_algos = write(
        "c.json",
        r#"{"instance_spec": {"kind": "maxcut", "n": 20}, "algorithms": [], "repeats": 1, "seed": 0}"#,
    );
    let out = run(&["bench", "--config", empty_algos.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write("bad.json", "{ not json");
    let out = run(&[
        "run",
        "--instance",
        bad.to_str().unwrap(),
        "--algo",
        "greedy",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let out = run(&["run", "--instance", "/nonexistent.json", "--algo", "greedy"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["run", "--algo", "greedy"]);
    assert_eq!(out.status.code(), Some(2));

    // Every element alone already breaks the budget.
    let stuck = write(
        "stuck.json",
        r#"{"n": 2, "objective": {"kind": "modular", "weights": [1, 2]},
            "matroids": [{"kind": "uniform", "cap": 2}],
            "knapsacks": {"costs": [[3, 4]], "budgets": [1]}}"#,
    );
    let out = run(&[
        "run",
        "--instance",
        stuck.to_str().unwrap(),
        "--algo",
        "sprout",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let big = dir.path().join("big.json");
    assert!(run(&[
        "gen",
        "er",
        "--n",
        "40",
        "--as-instance",
        "--out",
        big.to_str().unwrap()
    ])
    .status
    .success());
    let out = run(&["brute", "--instance", big.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn logs_stay_off_stdout() {
    let out = run(&[
        "-vvv",
        "run",
        "--instance",
        data("cut10.json").to_str().unwrap(),
        "--algo",
        "sprout",
    ]);
    assert!(out.status.success());
    assert!(!out.stderr.is_empty());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}
