use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;
use tmdelta::{is_total_matching, parse_graph, Certificate, Element, ElementColoring, Graph};

fn tmdelta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmdelta"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn generated(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let o = tmdelta(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir.path().join(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn load(path: &Path) -> Graph {
    parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn names(v: &Value) -> Vec<Element> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn delta_of_six_cycle() {
    let dir = TempDir::new().unwrap();
    let c6 = generated(&dir, "cycle6.graph", &["cycle", "-n", "6"]);
    let o = tmdelta(&["delta", s(&c6)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "delta: 2"), "{}", stdout(&o));
}

#[test]
fn brute_solve_of_four_path() {
    let dir = TempDir::new().unwrap();
    let p4 = generated(&dir, "p4.graph", &["path", "-n", "4"]);
    let o = tmdelta(&["solve", s(&p4), "--method", "brute"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "weight: 3"), "{}", stdout(&o));
}

#[test]
fn spider_exceeds_seven() {
    let dir = TempDir::new().unwrap();
    let spider = generated(&dir, "spider.graph", &["spider"]);
    let o = tmdelta(&["check", s(&spider), "--bound", "7"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "result: exceeds"), "{out}");
    assert!(out.lines().any(|l| l == "value: 8"), "{out}");

    let o = tmdelta(&["check", s(&spider), "--bound", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "delta: 8"));
}

#[test]
fn spider_with_forced_center() {
    let dir = TempDir::new().unwrap();
    let spider = generated(&dir, "spider.graph", &["spider"]);
    let o = tmdelta(&["delta", s(&spider), "--forced", "v1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "delta: 4"), "{}", stdout(&o));
}

#[test]
fn certificate_json_reverifies() {
    let dir = TempDir::new().unwrap();
    let spider = generated(&dir, "spider.graph", &["spider"]);
    let g = load(&spider);
    let o = tmdelta(&["check", s(&spider), "--bound", "7", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    let c = &v["certificate"];
    assert_eq!(c["value"], 8);
    let vertex_ids = |x: &Value| -> Vec<usize> {
        names(x)
            .into_iter()
            .map(|e| match e {
                Element::Vertex(i) => i,
                Element::Edge(_) => panic!("edge in vertex list"),
            })
            .collect()
    };
    let cert = match c["kind"].as_str().unwrap() {
        "subdeterminant_found" => Certificate::SubdeterminantFound {
            graph: parse_graph(c["core"].as_str().unwrap()).unwrap(),
            witness: serde_json::from_value(c["witness"].clone()).unwrap(),
            value: 8.into(),
        },
        "too_many_high_degree_vertices" => Certificate::TooManyHighDegreeVertices {
            d_set: vertex_ids(&c["vertices"]),
            product: 8.into(),
        },
        other => panic!("unexpected certificate kind {other}"),
    };
    assert!(cert.verify(&g, 7).unwrap());
}

#[test]
fn witness_and_solution_json_reverify() {
    let dir = TempDir::new().unwrap();
    for seed in 0..6 {
        let seed = seed.to_string();
        let path = generated(
            &dir,
            &format!("s{seed}.graph"),
            &[
                "sparse",
                "-n",
                "6",
                "-m",
                "7",
                "--seed",
                &seed,
                "--weights",
                "-5:9",
            ],
        );
        let g = load(&path);

        let o = tmdelta(&["delta", s(&path), "--json"]);
        assert_eq!(code(&o), 0);
        let v = json_of(&o);
        let w: ElementColoring = serde_json::from_value(v["witness"].clone()).unwrap();
        assert_eq!(
            w.determinant(&g).unwrap().magnitude().to_string(),
            v["delta"].to_string()
        );

        let bound = v["delta"].as_u64().unwrap().to_string();
        let o = tmdelta(&["solve", s(&path), "--method", "fpt", "--bound", &bound, "--json"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let sol = json_of(&o);
        let vs: Vec<usize> = names(&sol["vertices"])
            .iter()
            .map(|&x| g.element_index(x))
            .collect();
        let es: Vec<usize> = names(&sol["edges"])
            .iter()
            .map(|&x| g.element_index(x) - g.n())
            .collect();
        assert!(is_total_matching(&g, &vs, &es).unwrap());
        let weight: i64 = vs.iter().map(|&v| g.vertex_weight(v)).sum::<i64>()
            + es.iter().map(|&e| g.edge(e).weight).sum::<i64>();
        assert_eq!(sol["weight"], weight);

        let brute = json_of(&tmdelta(&["solve", s(&path), "--json"]));
        assert_eq!(brute["weight"], sol["weight"]);
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = tmdelta(&["gen", "forest", "-n", "12", "--seed", "9", "--weights", "-3:3"]);
    let b = tmdelta(&["gen", "forest", "-n", "12", "--seed", "9", "--weights", "-3:3"]);
    assert_eq!(a.stdout, b.stdout);
    let path = dir.path().join("f.graph");
    std::fs::write(&path, &a.stdout).unwrap();
    for args in [
        vec!["delta", s(&path), "--json"],
        vec!["delta", s(&path), "--method", "formula"],
        vec!["solve", s(&path), "--bound", "40"],
        vec!["bounds", s(&path), "--json"],
    ] {
        let x = tmdelta(&args);
        let y = tmdelta(&args);
        let z = tmdelta(&[&args[..], &["--workers", "1"]].concat());
        assert_eq!(code(&x), 0, "{args:?}: {}", String::from_utf8_lossy(&x.stderr));
        assert_eq!(x.stdout, y.stdout, "{args:?}");
        assert_eq!(x.stdout, z.stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.graph");
    assert_eq!(code(&tmdelta(&["delta", s(&missing)])), 2);

    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "graph 2 1\ne 1 3 1\n").unwrap();
    assert_eq!(code(&tmdelta(&["delta", s(&bad)])), 2);

    let cycle = generated(&dir, "c5.graph", &["cycle", "-n", "5"]);
    assert_eq!(code(&tmdelta(&["solve", s(&cycle), "--method", "dp"])), 2);
    assert_eq!(code(&tmdelta(&["solve", s(&cycle), "--method", "fpt"])), 2);
    assert_eq!(code(&tmdelta(&["delta", s(&cycle), "--method", "principal"])), 2);
    assert_eq!(code(&tmdelta(&["delta", s(&cycle), "--cap", "0"])), 2);

    let big = generated(&dir, "big.graph", &["sparse", "-n", "10", "-m", "12"]);
    assert_eq!(
        code(&tmdelta(&["delta", s(&big), "--method", "brute", "--cap", "8"])),
        3
    );

    let star = generated(&dir, "star.graph", &["star", "-n", "6"]);
    let o = tmdelta(&["solve", s(&star), "--bound", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("kind: degree_exceeds"), "{}", stdout(&o));
}

#[test]
fn dp_matches_brute_on_paths() {
    let dir = TempDir::new().unwrap();
    let p = generated(
        &dir,
        "p.graph",
        &["path", "-n", "9", "--weights", "-4:6", "--seed", "5"],
    );
    let dp = stdout(&tmdelta(&["solve", s(&p), "--method", "dp"]));
    let brute = stdout(&tmdelta(&["solve", s(&p), "--method", "brute"]));
    let weight = |t: &str| t.lines().find(|l| l.starts_with("weight: ")).unwrap().to_string();
    assert_eq!(weight(&dp), weight(&brute));
}

#[test]
fn bounds_on_spider() {
    let dir = TempDir::new().unwrap();
    let spider = generated(&dir, "spider.graph", &["spider"]);
    let out = stdout(&tmdelta(&["bounds", s(&spider)]));
    for line in [
        "near_pencil_lower: 8",
        "forest: true",
        "degree_lower_square: 16",
        "bipartition_lower: 8",
    ] {
        assert!(out.lines().any(|l| l == line), "{line} missing from\n{out}");
    }
}

#[test]
fn verify_reports_failures() {
    let dir = TempDir::new().unwrap();
    generated(&dir, "a.graph", &["cycle", "-n", "7"]);
    generated(&dir, "b.graph", &["forest", "-n", "6", "--seed", "2"]);
    generated(
        &dir,
        "c.graph",
        &["sparse", "-n", "5", "-m", "6", "--seed", "1", "--weights", "-5:9"],
    );
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let o = tmdelta(&["verify", s(dir.path())]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().any(|l| l == "passed: 3"));

    std::fs::write(dir.path().join("d.graph"), "graph 1 1\n").unwrap();
    let o = tmdelta(&["verify", s(dir.path()), "--json"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    assert_eq!(v["failed"], 1);
    assert!(v["files"]["d.graph"].as_str().unwrap().starts_with("FAIL"));
}
