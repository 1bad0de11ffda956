use cantor_cli::{parse_value, run, Value, ValueKind};
use cantor_core::sample;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn sampled(kind: ValueKind, rng: &mut StdRng) -> Value {
    match kind {
        ValueKind::Point => Value::Point(sample::point(rng)),
        ValueKind::Cylinder => Value::Cylinder(sample::cylinder(rng)),
        ValueKind::Index => Value::Index(sample::index(rng)),
        ValueKind::Sft => Value::Sft(sample::sft(rng)),
    }
}

#[test]
fn grammar_round_trip() {
    let mut rng = StdRng::seed_from_u64(11);
    for kind in [ValueKind::Point, ValueKind::Cylinder, ValueKind::Index, ValueKind::Sft] {
        for _ in 0..500 {
            let v = sampled(kind, &mut rng);
            let printed = v.to_string();
            let reparsed = parse_value(kind, &printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
            assert_eq!(reparsed, v);
            assert_eq!(reparsed.to_string(), printed);
        }
    }
}

#[test]
fn sweep_command_is_clean() {
    let o = run(["cantor", "sft-sweep", "--max-forbidden-len", "2", "--depth", "5", "--period-bound", "10"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let j: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(j["report"]["systems"], 16);
    assert_eq!(j["report"]["discrepancies"], 0);
}

#[test]
fn tampered_witness_is_rejected() {
    let path = fixture("tampered_sensitivity.json");
    let o = run(["cantor", "witness-sensitivity", "--x", "zero", "--nbhd", "{}", "--check", &path]);
    assert_eq!(o.code, 1);
    let j: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(j["verified"], false);
}

#[test]
fn untampered_witness_is_accepted_on_check() {
    let fresh = run(["cantor", "witness-transitivity", "--u", "{a:1=1,c:3=0}", "--v", "{b:2=1}"]);
    assert_eq!(fresh.code, 0);
    let dir = std::env::temp_dir().join(format!("cantor-check-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w.json");
    std::fs::write(&path, &fresh.stdout).unwrap();
    let o = run([
        "cantor",
        "witness-transitivity",
        "--u",
        "{a:1=1,c:3=0}",
        "--v",
        "{b:2=1}",
        "--check",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, fresh.stdout);
}

#[test]
fn identical_argv_gives_identical_output() {
    let argvs: [&[&str]; 4] = [
        &["cantor", "verify-uns", "--instances", "100", "--hausdorff-samples", "50", "--seed", "3"],
        &["cantor", "remark-demos", "--depth", "4", "--samples", "30"],
        &["cantor", "witness-shared-orbit", "--u", "{a:1=1}", "--v", "{a:1=0,b:2=1}"],
        &["cantor", "sft-check", "--system", "alphabet=2; forbid=01,10"],
    ];
    for argv in argvs {
        let first = run(argv.iter().copied());
        let second = run(argv.iter().copied());
        assert_eq!(first, second, "{argv:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let o = run(["cantor", "--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("witness-sensitivity"));
}

#[test]
fn missing_check_file_is_usage_error() {
    let o = run(["cantor", "witness-periodic", "--u", "{}", "--check", "/nonexistent/w.json"]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
}
