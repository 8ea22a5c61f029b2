use std::path::Path;
use std::process::{Command, Output};

fn qsha256(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsha256"))
        .args(args)
        .env_remove("QSHA256_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qsha256(args).status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const INVOCATIONS: &[&[&str]] = &[
    &["hash", "--message", "DMU"],
    &["hash", "--message", "A", "--backend", "quantum-ideal", "--shots", "8", "--audit"],
    &["hash", "--message", "A", "--backend", "quantum-noisy", "--shots", "31", "--p", "0.05"],
    &["hash", "--hex", "00ff10", "--feed-forward", "xor"],
    &["circuit", "xor", "--a", "01101010", "--b", "01110100"],
    &["qhash", "delta", "--n", "8", "--d", "5"],
    &["qhash", "fidelity", "--n", "6", "--keys", "1,5,9", "--m1", "3", "--m2", "40"],
    &["qhash", "state", "--n", "4", "--d", "3", "--m", "7"],
    &["anneal", "xor", "--width", "2", "--sweeps", "300", "--runs", "3"],
    &["anneal", "xor", "--width", "2", "--exhaustive"],
    &["mine", "--header", "DMU", "--difficulty", "6", "--per-hash-joules", "0.5"],
    &["energy", "--exact"],
    &["energy", "--classical-source", "110", "--attempts", "10", "--per-hash-joules", "3"],
];

#[test]
fn every_invocation_is_byte_identical_across_runs() {
    for args in INVOCATIONS {
        for fmt in ["text", "jsonl"] {
            let mut full = args.to_vec();
            full.extend(["--format", fmt, "--seed", "17"]);
            let a = qsha256(&full);
            let b = qsha256(&full);
            assert_eq!(a.status.code(), Some(0), "{full:?}: {}", String::from_utf8_lossy(&a.stderr));
            assert!(!a.stdout.is_empty());
            assert_eq!(a.stdout, b.stdout, "{full:?}");
        }
    }
}

#[test]
fn jsonl_lines_parse_and_echo_the_seed() {
    let o = qsha256(&["--format", "jsonl", "--seed", "5", "qhash", "delta", "--n", "6", "--d", "2"]);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["record"], "config");
    assert_eq!(lines[0]["seed"], 5);
    assert!(lines.iter().all(|l| l["record"].is_string()));
}

#[test]
fn seed_comes_from_environment_and_flag_overrides() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qsha256"));
        c.args(["--format", "jsonl", "qhash", "state", "--n", "10", "--d", "4", "--m", "3"]);
        if let Some(f) = flag {
            c.args(["--seed", f]);
        }
        match env {
            Some(e) => c.env("QSHA256_SEED", e),
            None => c.env_remove("QSHA256_SEED"),
        };
        c.output().unwrap().stdout
    };
    assert_eq!(run(Some("9"), None), run(None, Some("9")));
    assert_eq!(run(Some("9"), Some("4")), run(None, Some("4")));
    assert_ne!(run(None, Some("9")), run(None, Some("4")));
}

#[test]
fn hash_digest_in_text_mode() {
    let out = stdout(&qsha256(&["hash", "--message", "A", "--backend", "quantum-ideal"]));
    assert!(out.contains("559aead08264d5795d3909718cdd05abd49572e84fe55590eef31a88a08fdffd"));
    assert!(out.contains("config.shots: 1022"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unsupported = dir.path().join("h.txt");
    std::fs::write(&unsupported, "qubits 2\nh 0\nmeasure 0\n").unwrap();
    let garbage = dir.path().join("g.txt");
    std::fs::write(&garbage, "qubits 2\nfrobnicate\n").unwrap();
    let out_of_range = dir.path().join("r.txt");
    std::fs::write(&out_of_range, "qubits 2\nx 5\n").unwrap();

    assert_eq!(code(&["hash", "--message", "A"]), 0);
    assert_eq!(code(&["nope"]), 2);
    assert_eq!(code(&["hash", "--message", "A", "--backend", "quantum-ideal", "--window", "0"]), 3);
    assert_eq!(code(&["circuit", "run", path(&out_of_range)]), 4);
    assert_eq!(code(&["circuit", "xor", "--a", "1111111111", "--b", "0000000000", "--dense"]), 5);
    assert_eq!(code(&["circuit", "run", path(&unsupported)]), 6);
    assert_eq!(code(&["qhash", "delta", "--n", "2", "--d", "5"]), 8);
    assert_eq!(code(&["energy", "--attempts", "3"]), 9);
    assert_eq!(code(&["circuit", "run", path(&garbage)]), 10);
    assert_eq!(code(&["circuit", "run", "/nonexistent/c.txt"]), 11);
}

#[test]
fn circuit_export_and_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("xor.txt");
    let o = qsha256(&["circuit", "xor", "--a", "01101010", "--b", "01110100", "--out", path(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&file).unwrap();
    let circuit: qsha256::Circuit = text.parse().unwrap();
    assert_eq!(circuit.num_qubits(), 24);

    let run = stdout(&qsha256(&["--format", "jsonl", "circuit", "run", path(&file), "--shots", "100"]));
    assert!(run.contains("\"00011110\":100"), "{run}");
    let dense = stdout(&qsha256(&[
        "--format", "jsonl", "circuit", "run", path(&file), "--shots", "100", "--method", "dense",
    ]));
    assert!(dense.contains("\"00011110\":100"), "{dense}");
}

#[test]
fn anneal_export_then_solve_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("q.txt");
    let o = qsha256(&["anneal", "xor", "--width", "1", "--exhaustive", "--export", path(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&qsha256(&["--format", "jsonl", "anneal", "file", path(&file), "--exhaustive"]));
    for s in ["0000", "0110", "1010", "1101"] {
        assert!(out.contains(s), "{out}");
    }
}

#[test]
fn audit_reads_back_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    let o = qsha256(&[
        "hash", "--message", "DMU", "--backend", "quantum-noisy", "--shots", "63",
        "--trace-out", path(&trace),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 2560);
    let out = stdout(&qsha256(&["--format", "jsonl", "audit", path(&trace)]));
    assert!(out.contains("\"xor_calls\":2560"), "{out}");
}

#[test]
fn energy_report_figures() {
    let out = stdout(&qsha256(&["energy", "--exact", "--format", "jsonl"]));
    assert!(out.contains("3200000000"));
    assert!(out.contains("\"per_miner_energy\""));
    let bad_cfg = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad_cfg.path(), "quantum_kwh_per_year = { value = 25 }\n").unwrap();
    assert_ne!(code(&["energy", "--config", path(bad_cfg.path())]), 0);
}
