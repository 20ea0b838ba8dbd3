use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polydraw"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env_remove("POLYDRAW_SEED").env_remove("POLYDRAW_FORMAT").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polydraw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn attr(tag: &str, name: &str) -> f64 {
    let start = tag.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
    tag[start..].split('"').next().unwrap().parse().unwrap()
}

#[test]
fn exit_codes_separate_validation_from_computation() {
    assert_eq!(run(&["schlegel", "cube:3", "--marked", "0,1"]).status.code(), Some(3));
    assert_eq!(run(&["construct", "hypercube:3"]).status.code(), Some(3));
    assert_eq!(run(&["realize", "cube:4"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let params = temp("diverge.json", r#"{"delta_rep": 0.01, "delta_visc": 0.0, "length": 0.01, "max_iters": 1000}"#);
    let o = run(&["spring", "cube:3", "--params", params.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("diverged") || err.contains("singular"), "{err}");
}

#[test]
fn seeded_runs_are_byte_identical() {
    for args in [
        &["spring", "klee-minty:3", "--objective", "coord:2", "--seed", "5"][..],
        &["spring", "simplex:2*cube:3", "--objective", "linear:4,-3,0,0,0", "--seed", "2", "--format", "obj"],
        &["pdgraph", "min-c4", "--seed", "3", "--format", "svg"],
        &["tropical", "cyclic:3:2", "--seed", "1"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
    let a = stdout(&["spring", "cube:3", "--seed", "1"]);
    let b = stdout(&["spring", "cube:3", "--seed", "2"]);
    assert_ne!(a, b);
    let via_env = bin().args(["spring", "cube:3"]).env("POLYDRAW_SEED", "1").output().unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), a);
}

#[test]
fn export_round_trips_and_formats() {
    let json = stdout(&["construct", "icosahedron", "--format", "json"]);
    let path = temp("ico.json", &json);
    assert_eq!(stdout(&["export", path.to_str().unwrap(), "--format", "json"]), json);
    let obj = stdout(&["export", path.to_str().unwrap(), "--format", "obj"]);
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 12);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 20);
    let svg = stdout(&["export", path.to_str().unwrap(), "--format", "svg", "--azimuth", "-0.3"]);
    assert_eq!(svg.matches("<line").count(), 30);
}

#[test]
fn svg_line_length_matches_the_scale() {
    let k2 = r#"{"nodes":[{"id":0,"position":[0.0,0.0]},{"id":1,"position":[1.0,0.0]}],
        "edges":[{"source":0,"target":1}],"metadata":{"operation":"k2"}}"#;
    let path = temp("k2.json", k2);
    let svg = stdout(&["export", path.to_str().unwrap(), "--format", "svg"]);
    let root = svg.lines().next().unwrap();
    let line = svg.lines().find(|l| l.contains("<line")).unwrap();
    let len = ((attr(line, "x2") - attr(line, "x1")).powi(2) + (attr(line, "y2") - attr(line, "y1")).powi(2)).sqrt();
    assert!((len - attr(root, "data-scale")).abs() < 1e-3);
    assert_eq!(svg.matches("<line").count(), 1);
}

#[test]
fn raw_records_feed_other_commands() {
    let cube = temp("cube.json", &stdout(&["construct", "cube:3"]));
    let realized = stdout(&["realize", cube.to_str().unwrap(), "--format", "raw"]);
    assert!(realized.contains("\"vertices\""));
    let tutte = stdout(&["tutte", cube.to_str().unwrap()]);
    assert!(tutte.contains("\"operation\": \"tutte\""));
    let matrix = temp("c.csv", "1,0,0\n0,1,0\n0,1/4,1\n");
    let scene = stdout(&["tropical", matrix.to_str().unwrap(), "--view", "last-n"]);
    assert_eq!(scene.matches("\"#e02020\"").count(), 3);
    let metric = temp("two.metric", "2\na\nb\n0 3\n3 0\n");
    assert!(stdout(&["tightspan", metric.to_str().unwrap()]).contains("\"taxon\""));
}

#[test]
fn hidden_artificial_edges() {
    let all = stdout(&["pdgraph", "min-c4"]);
    let hidden = stdout(&["pdgraph", "min-c4", "--hide-artificial"]);
    assert_eq!(all.matches("\"kind\": \"artificial\"").count(), 80);
    assert_eq!(hidden.matches("\"kind\": \"artificial\"").count(), 0);
    assert_eq!(hidden.matches("\"kind\": \"dual\"").count(), 16 + 20);
}
