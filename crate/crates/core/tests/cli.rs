use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn geocops(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geocops"))
        .args(args)
        .current_dir(dir)
        .env("GP_LOG", "error")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn repo_configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

const DISK: &str = r#"{
  "schema": "geocops.run/1",
  "space": {"kind": "ball", "dim": 2},
  "k": 1,
  "initial": {"robber": [0.9, 0.0], "cops": [[0.0, 0.0]]},
  "robber": {"kind": "boundary_circler"},
  "cops": {"kind": "radial"},
  "max_steps": 100000,
  "epsilon": 0.01,
  "seed": 1
}"#;

#[test]
fn run_writes_trace_and_metrics() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = repo_configs().join("disk_radial.json");
    let out = tmp.path().join("out");
    let o = geocops(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("outcome\twithin_epsilon"));
    let trace = fs::read_to_string(out.join("trace.json")).unwrap();
    assert!(trace.contains("\"result\": \"within_epsilon\""));
    let csv = fs::read_to_string(out.join("metrics.csv")).unwrap();
    assert!(csv.starts_with("n,sub,tau,"));
}

#[test]
fn zero_cops_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.json", &DISK.replace("\"k\": 1", "\"k\": 0"));
    let o = geocops(&["run", "--config", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unknown_field_is_a_config_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "bad.json", &DISK.replace("\"seed\": 1", "\"seed\": 1, \"speed\": 2"));
    let o = geocops(&["run", "--config", cfg.to_str().unwrap()], tmp.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn over_budget_scripted_move_exits_2_when_strict() {
    let tmp = tempfile::tempdir().unwrap();
    // τ(1) = 1/3 but the scripted robber jumps 1.4
    let body = DISK
        .replace(r#"{"kind": "boundary_circler"}"#, r#"{"kind": "scripted", "moves": [[-0.5, 0.0]]}"#);
    let cfg = write_config(tmp.path(), "jump.json", &body);
    let o = geocops(&["run", "--config", cfg.to_str().unwrap(), "--strict"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    let o = geocops(&["run", "--config", cfg.to_str().unwrap(), "--lenient", "--max-steps", "3"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let trace = fs::read_to_string(tmp.path().join("trace.json")).unwrap();
    assert!(trace.contains("\"clamped\""));
}

#[test]
fn verify_suites() {
    let tmp = tempfile::tempdir().unwrap();
    let o = geocops(&["verify", "technical"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    let o = geocops(&["verify", "nonsense"], tmp.path());
    assert_eq!(o.status.code(), Some(3));
    let o = geocops(&["verify", "delta", "--space", "ball", "--d1", "0.5", "--d2", "0.5", "--d", "0.25"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.5");
    let o = geocops(&["verify", "simplex", "--n", "2", "--samples", "500"], tmp.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0.2041"));
}

#[test]
fn sweep_over_epsilon() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "disk.json", DISK);
    let out = tmp.path().join("sweep");
    let o = geocops(
        &["sweep", "--config", cfg.to_str().unwrap(), "--param", "epsilon=0.1,0.01", "--out", out.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("summary.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    let steps = |eps: &str| -> u64 {
        rows.iter().find(|r| r[0] == format!("epsilon={eps}")).unwrap()[2].parse().unwrap()
    };
    assert!(steps("0.01") > steps("0.1"));
    assert!(out.join("epsilon=0.1").join("trace.json").exists());

    let o = geocops(
        &["sweep", "--config", cfg.to_str().unwrap(), "--param", "epsilon=", "--out", out.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn same_seed_same_bytes_and_replay() {
    let tmp = tempfile::tempdir().unwrap();
    let body = DISK.replace(r#"{"kind": "boundary_circler"}"#, r#"{"kind": "greedy_evader"}"#);
    let cfg = write_config(tmp.path(), "g.json", &body);
    for d in ["a", "b"] {
        let o = geocops(&["run", "--config", cfg.to_str().unwrap(), "--seed", "42", "--out", d], tmp.path());
        assert_eq!(o.status.code(), Some(0));
    }
    let a = fs::read(tmp.path().join("a/trace.json")).unwrap();
    let b = fs::read(tmp.path().join("b/trace.json")).unwrap();
    assert_eq!(a, b);
    let o = geocops(&["replay", "a/trace.json"], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("rerun\tbyte-identical"));
}

#[test]
fn shipped_configs_run() {
    let tmp = tempfile::tempdir().unwrap();
    let mut n = 0;
    for entry in fs::read_dir(repo_configs()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let out = tmp.path().join(path.file_stem().unwrap());
        let o = geocops(
            &["run", "--config", path.to_str().unwrap(), "--max-steps", "200", "--out", out.to_str().unwrap()],
            tmp.path(),
        );
        assert_eq!(o.status.code(), Some(0), "{}: {}", path.display(), String::from_utf8_lossy(&o.stderr));
        assert!(!stdout(&o).contains("\tFAIL"), "{}: {}", path.display(), stdout(&o));
        n += 1;
    }
    assert!(n >= 6);
}

/// Runs every `geocops ...` line of the README's sh blocks from a scratch
/// directory holding a copy of configs/. A trailing `# exit N` sets the
/// expected exit code.
#[test]
fn readme_examples() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let readme = fs::read_to_string(root.join("README.md")).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    fs::create_dir(tmp.path().join("configs")).unwrap();
    for entry in fs::read_dir(repo_configs()).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, tmp.path().join("configs").join(p.file_name().unwrap())).unwrap();
    }
    let mut in_sh = false;
    let mut ran = 0;
    for line in readme.lines() {
        if line.starts_with("```") {
            in_sh = line == "```sh";
            continue;
        }
        let Some(cmd) = line.strip_prefix("geocops ").filter(|_| in_sh) else { continue };
        let (cmd, expect) = match cmd.split_once("# exit ") {
            Some((c, code)) => (c, code.trim().parse::<i32>().unwrap()),
            None => (cmd, 0),
        };
        let args: Vec<&str> = cmd.split_whitespace().collect();
        let o = geocops(&args, tmp.path());
        assert_eq!(o.status.code(), Some(expect), "geocops {cmd}\n{}", String::from_utf8_lossy(&o.stderr));
        ran += 1;
    }
    assert!(ran >= 5, "only {ran} README commands found");
}
