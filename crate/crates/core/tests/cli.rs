use std::path::PathBuf;
use std::sync::Arc;

use cubical::cli::{run, Outcome};
use cubical::complex::QuotientComplex;
use cubical::isometries::{local_action, Isometry};
use cubical::portraits::{CubicalPortrait, PortraitFile};
use cubical::space::Space;
use cubical::words::{endpoint, Word};
use serde_json::Value;

fn path(rel: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push(rel);
    p.to_string_lossy().into_owned()
}

fn corpus(name: &str) -> String {
    path(&format!("corpus/{name}.json"))
}

fn fixture(name: &str) -> String {
    path(&format!("tests/fixtures/{name}"))
}

fn cubical(args: &[&str]) -> Outcome {
    run(std::iter::once("cubical").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cubical(&full);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn space(name: &str) -> Arc<Space> {
    let text = std::fs::read_to_string(corpus(name)).unwrap();
    Space::new(QuotientComplex::from_json(&text).unwrap()).unwrap()
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("cubical-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

fn write_portrait(name: &str, p: &CubicalPortrait) -> String {
    scratch(name, &serde_json::to_string(&PortraitFile::from_portrait(p)).unwrap())
}

/// `b ↔ b^-1` at every vertex of W2, or only at the root.
fn w2_swap(depth: usize, everywhere: bool) -> CubicalPortrait {
    let w = space("w2");
    let b = w.parse_symbol("b").unwrap();
    let bi = w.parse_symbol("b^-1").unwrap();
    CubicalPortrait::from_fn(&w, &w, Word::empty(), depth, |x, s| {
        let swap = everywhere || x.normal_form.is_empty();
        Some(match s {
            _ if swap && s == b => bi,
            _ if swap && s == bi => b,
            _ => s,
        })
    })
}

#[test]
fn special_torus() {
    let out = cubical(&["special", "--complex", &corpus("t2")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "special: true\n");
}

#[test]
fn special_self_osculating() {
    let out = cubical(&["special", "--complex", &corpus("sosc")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("special: false\n"));
    assert!(out
        .stdout
        .contains("self-osculation: vertex p has parallel outgoing edges e1 and e2"));
}

#[test]
fn normal_forms() {
    for (complex, word, expected) in [
        ("t2", "b a", "a b"),
        ("w2", "b a", "b a"),
        ("t2", "b a b", "a b b"),
    ] {
        let out = cubical(&["nf", "--complex", &corpus(complex), "--word", word]);
        assert_eq!((out.code, out.stdout.as_str()), (0, format!("{expected}\n").as_str()));
    }
}

#[test]
fn reductions() {
    for (complex, word, expected) in [
        ("t2", "a b a^-1 b^-1", "ε"),
        ("w2", "a b b^-1 a^-1", "ε"),
        ("w2", "a b a^-1", "a b a^-1"),
    ] {
        let out = cubical(&["reduce", "--complex", &corpus(complex), "--word", word]);
        assert_eq!(out.stdout, format!("{expected}\n"));
    }
}

#[test]
fn endpoints() {
    let out = cubical(&["endpoint", "--complex", &corpus("t2"), "--word", "a b a^-1"]);
    assert_eq!(out.stdout, "normal form: b\nvertex: o\n");
    let out = cubical(&["endpoint", "--complex", &corpus("w2"), "--word", "a b b^-1"]);
    assert_eq!(out.stdout, "normal form: a\nvertex: o\n");
    let out = cubical(&["endpoint", "--complex", &corpus("digon"), "--word", "x x"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("not an edge path"));
}

#[test]
fn same_endpoints() {
    for (complex, v, w, expected) in [
        ("t2", "a b", "b a", true),
        ("t2", "a b a^-1", "b", true),
        ("w2", "a b", "b a", false),
    ] {
        let out = cubical(&["same-endpoint", "--complex", &corpus(complex), "--word", v, "--other", w]);
        assert_eq!(out.stdout, format!("same endpoint: {expected}\n"));
    }
}

#[test]
fn vertex_types() {
    for (w, t) in [("a b", 2), ("b", 1), ("a a", 3)] {
        let out = cubical(&["type", "--complex", &corpus("t2"), "--v", "a", "--w", w]);
        assert_eq!(out.stdout, format!("type: {t}\n"));
    }
}

#[test]
fn balls() {
    let out = cubical(&["ball", "--complex", &corpus("t2"), "--depth", "1"]);
    assert_eq!(
        out.stdout,
        "vertices: 5\n0\tε\to\t{}\n1\ta\to\t{a^-1}\n1\ta^-1\to\t{a}\n1\tb\to\t{b^-1}\n1\tb^-1\to\t{b}\n"
    );
    let v = json(&["ball", "--complex", &corpus("w2"), "--depth", "2"]);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 17);
    let v = json(&["ball", "--complex", &corpus("cylinder"), "--depth", "0"]);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 1);
}

#[test]
fn automata() {
    let states = |cmd: &str, c: &str| json(&[cmd, "--complex", &corpus(c)])["result"]["states"].as_u64().unwrap();
    assert_eq!(states("automaton-edge", "t2"), 1);
    assert_eq!(states("automaton-edge", "w2"), 1);
    assert_eq!(states("automaton-red", "t2"), 9);
    assert_eq!(states("automaton-red", "w2"), 5);
    let out = cubical(&["automaton-edge", "--complex", &corpus("circle2")]);
    assert_eq!(out.stdout, "state 0: p\n  x -> 1\n  y^-1 -> 1\nstate 1: q\n  x^-1 -> 0\n  y -> 0\n");
    let out = cubical(&["automaton-edge", "--complex", &corpus("t2")]);
    assert_eq!(out.stdout.matches(" -> 0").count(), 4);
    let dot = cubical(&["automaton-red", "--complex", &corpus("w2"), "--format", "dot"]);
    assert!(dot.stdout.starts_with("digraph red {"));
    assert_eq!(dot.stdout.matches("shape=").count(), 5);
}

#[test]
fn enumeration_counts() {
    let counts = |c: &str| -> Vec<u64> {
        json(&["enumerate", "--complex", &corpus(c), "--depth", "2"])["result"]["layers"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l["count"].as_u64().unwrap())
            .collect()
    };
    assert_eq!(counts("t2"), [1, 4, 12]);
    assert_eq!(counts("w2"), [1, 4, 12]);
    let out = cubical(&["enumerate", "--complex", &corpus("t2"), "--depth", "0"]);
    assert_eq!(out.stdout, "length 0: 1\n  ε\n");
}

#[test]
fn tau_candidates() {
    let count = |c: &str, v: &str| {
        json(&["taus", "--complex", &corpus(c), "--v", v])["result"]["candidates"]
            .as_array()
            .unwrap()
            .len()
    };
    assert_eq!(count("t2", ""), 8);
    assert_eq!(count("t2", "a"), 1);
    assert_eq!(count("w2", "a"), 6);
}

#[test]
fn deck_generators() {
    let out = cubical(&["generators", "--complex", &corpus("t2")]);
    assert_eq!(out.stdout, "a\na^-1\nb\nb^-1\n");
    let out = cubical(&["generators", "--complex", &corpus("w2")]);
    assert_eq!(out.stdout, "a\na^-1\nb\nb^-1\n");
    let out = cubical(&["generators", "--complex", &corpus("digon")]);
    assert_eq!(out.stdout, "x y^-1\ny x^-1\n");
}

#[test]
fn salvetti_and_validate() {
    let out = cubical(&["salvetti", "--graph", &path("corpus/graphs/raag3.json")]);
    assert_eq!(out.code, 0);
    let built = scratch("raag3_built.json", &out.stdout);
    let out = cubical(&["validate", "--complex", &built]);
    assert_eq!(out.stdout, "valid: true\nvertices: 1\noriented edges: 6\nsquares: 2\n");
    let out = cubical(&["validate", "--complex", &fixture("open_boundary.json")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("is not closed"));
}

#[test]
fn parse_errors_carry_position() {
    let bad = scratch("bad.json", "{\n  \"vertices\": [\"o\",\n}");
    let out = cubical(&["validate", "--complex", &bad]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3, column"));
}

#[test]
fn labelings() {
    let out = cubical(&["label", "--complex", &corpus("t2")]);
    assert_eq!(out.code, 0);
    let v = json(&["label", "--complex", &corpus("t2")]);
    assert_eq!(v["result"]["symbols"], serde_json::json!(["a", "a^-1", "b", "b^-1"]));
    let out = cubical(&["label", "--complex", &corpus("sosc")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("self-osculation"));
    let out = cubical(&["label", "--complex", &corpus("w2"), "--labeling", &fixture("w2_shared_label.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("property (1)"));
    let out = cubical(&["label", "--complex", &corpus("t2"), "--labeling", &fixture("t2_inv_fixed.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("property (4)"));
    let dot = cubical(&["label", "--complex", &corpus("t2"), "--format", "dot"]);
    assert!(dot.stdout.contains("graph"));
}

#[test]
fn symbol_order_override() {
    let out = cubical(&["nf", "--complex", &corpus("t2"), "--order", "b,b^-1,a,a^-1", "--word", "a b"]);
    assert_eq!(out.stdout, "b a\n");
    let out = cubical(&["nf", "--complex", &corpus("t2"), "--order", "b,a", "--word", "a b"]);
    assert_eq!(out.code, 2);
}

#[test]
fn portrait_validation() {
    let swap = write_portrait("w2_swap.json", &w2_swap(5, true));
    let out = cubical(&["portrait-validate", "--complex", &corpus("w2"), "--portrait", &swap, "--depth", "5"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "valid: true\n"));

    let root_only = write_portrait("w2_root_swap.json", &w2_swap(5, false));
    let out = cubical(&["portrait-validate", "--complex", &corpus("w2"), "--portrait", &root_only, "--depth", "5"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("obstruction: inv at vertex ε letters (b)"), "{}", out.stdout);

    let id = write_portrait("t2_id.json", &CubicalPortrait::identity(&space("t2"), 5));
    let out = cubical(&["portrait-validate", "--complex", &corpus("t2"), "--portrait", &id, "--depth", "5"]);
    assert_eq!(out.code, 0);
}

#[test]
fn portrait_extension() {
    let swap = write_portrait("w2_swap_ext.json", &w2_swap(4, true));
    let v = json(&["portrait-extend", "--complex", &corpus("w2"), "--portrait", &swap, "--depth", "4"]);
    assert_eq!(v["exit"], 0);
    let file: PortraitFile = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(file, PortraitFile::from_portrait(&w2_swap(4, true)));
}

#[test]
fn solving() {
    let v = json(&["solve", "--complex", &corpus("w2"), "--depth", "3"]);
    let file: PortraitFile = serde_json::from_value(v["result"].clone()).unwrap();
    let w = space("w2");
    assert_eq!(file, PortraitFile::from_portrait(&CubicalPortrait::identity(&w, 3)));

    let out = cubical(&["solve", "--complex", &corpus("t2"), "--seed", &fixture("t2_bad_root_seed.json"), "--depth", "3"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("obstruction: comm") || out.stdout.starts_with("obstruction: tree"));

    let v = json(&["solve", "--complex", &corpus("w2"), "--seed", &fixture("w2_swap_seed.json"), "--depth", "4"]);
    let file: PortraitFile = serde_json::from_value(v["result"].clone()).unwrap();
    let p = file.to_portrait(&w, &w).unwrap();
    assert_eq!(p.evaluate(&w.parse_word("b b").unwrap()).unwrap(), w.parse_word("b^-1 b^-1").unwrap());

    let out = cubical(&["solve", "--complex", &corpus("w2"), "--depth", "3", "--search", "random:5"]);
    assert_eq!(out.code, 0);
    let out = cubical(&["solve", "--complex", &corpus("w2"), "--depth", "3", "--search", "sideways"]);
    assert_eq!(out.code, 2);
}

#[test]
fn generator_synthesis_and_peeling() {
    let w = space("w2");
    let v = json(&["make-a", "--complex", &corpus("w2"), "--v", "a", "--tau", "b=b^-1,b^-1=b", "--depth", "4"]);
    assert_eq!(v["exit"], 0);
    let file: PortraitFile = serde_json::from_value(v["result"].clone()).unwrap();
    let g = Isometry::from_portrait(file.to_portrait(&w, &w).unwrap());
    let x = endpoint(&w, &w.parse_word("a").unwrap()).unwrap();
    let tau = local_action(&g, &x).unwrap();
    let b = w.parse_symbol("b").unwrap();
    assert_eq!(tau[b.index()], Some(w.parse_symbol("b^-1").unwrap()));
    assert_eq!(g.apply(&w.parse_word("b a").unwrap()).unwrap(), w.parse_word("b a").unwrap());

    let saved = scratch("w2_a.json", &serde_json::to_string(&file).unwrap());
    let out = cubical(&["peel", "--complex", &corpus("w2"), "--portrait", &saved, "--n", "1", "--depth", "4"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "factors: 1\na\t{a->a, a^-1->a^-1, b->b^-1, b^-1->b}\nresidual fixes ball 2: true\n");

    let out = cubical(&["peel", "--complex", &corpus("w2"), "--portrait", &saved, "--n", "2", "--depth", "4"]);
    assert_eq!(out.code, 1);

    let out = cubical(&["make-a", "--complex", &corpus("t2"), "--v", "", "--tau", "a=a^-1,a^-1=a", "--depth", "5"]);
    assert_eq!(out.code, 0);
    let out = cubical(&["make-a", "--complex", &corpus("t2"), "--v", "a", "--depth", "5"]);
    assert_eq!(out.code, 0);
}

#[test]
fn generating_manifest() {
    let v = json(&["a0", "--complex", &corpus("t2"), "--depth", "3"]);
    let m = &v["result"];
    assert_eq!(m["deck_generators"].as_array().unwrap().len(), 4);
    assert_eq!(m["orbit_reps"].as_array().unwrap().len(), 1);
    assert_eq!(m["red_reps"].as_array().unwrap().len(), 9);
    assert_eq!(m["realized"], 16);
    assert_eq!(m["obstructed"], 0);
    assert_eq!(m["orbit_reps_approximate"], true);
}

#[test]
fn json_envelope_and_errors() {
    let v = json(&["special", "--complex", &corpus("mobius")]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["exit"], 1);
    assert_eq!(v["result"]["special"], false);

    let out = cubical(&["--json", "nf", "--complex", &corpus("t2"), "--word", "a z"]);
    assert_eq!(out.code, 2);
    let err: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(err["error"], "unknown symbol `z`");

    let out = cubical(&["nf", "--complex", &corpus("t2"), "--word", "a a^-1"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("not reduced"));
    assert_eq!(cubical(&["frobnicate"]).code, 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["a0", "--complex", &corpus("w2"), "--depth", "2"];
    let first = cubical(&args);
    assert_eq!(first, cubical(&args));
    let args = ["solve", "--complex", &corpus("t2"), "--depth", "3", "--search", "random:11"];
    assert_eq!(cubical(&args), cubical(&args));
}
