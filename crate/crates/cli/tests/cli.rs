use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellcolor"))
        .args(args)
        .env_remove("CELLCOLOR_SEARCH_BOUND")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn json(p: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn triangular_pipeline_reaches_the_strong_level() {
    let d = TempDir::new().unwrap();
    let (g, c, v) = (path(&d, "g.json"), path(&d, "c.json"), path(&d, "v.json"));
    assert_eq!(code(&run(&["generate", "--spec", "triangular@u=7,0;v=2,1", "--out", &g])), 0);
    assert_eq!(code(&run(&["color", "--scheme", "closed-form", "--in", &g, "--out", &c])), 0);
    let o = run(&["verify", "--level", "L5", "--in", &c, "--out", &v]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&v);
    assert_eq!(doc["report"]["summary"], "L5_setcc");
    assert_eq!(doc["cells"].as_array().unwrap().len(), 42);
}

#[test]
fn square_five_misses_the_axioms() {
    let d = TempDir::new().unwrap();
    let (g, c) = (path(&d, "g.json"), path(&d, "c.json"));
    run(&["generate", "--spec", "square", "--out", &g]);
    run(&["color", "--scheme", "closed-form", "--in", &g, "--out", &c]);
    assert_eq!(code(&run(&["verify", "--level", "L5", "--in", &c, "--out", &path(&d, "v.json")])), 1);
    assert_eq!(code(&run(&["verify", "--level", "L1", "--in", &c, "--out", &path(&d, "w.json")])), 1);
    let doc = json(&path(&d, "v.json"));
    assert_eq!(doc["report"]["levels"]["L1_axioms"]["status"], "fail");
    assert_eq!(doc["report"]["levels"]["L5_setcc"]["status"], "pass");
}

#[test]
fn dot_export_of_k5() {
    let d = TempDir::new().unwrap();
    let (g, dot) = (path(&d, "g.json"), path(&d, "k5.dot"));
    run(&["generate", "--spec", "square", "--out", &g]);
    assert_eq!(code(&run(&["export", "--format", "dot", "--in", &g, "--out", &dot])), 0);
    let text = fs::read_to_string(&dot).unwrap();
    let nodes = text.lines().filter(|l| l.trim_start().starts_with('v') && !l.contains("--")).count();
    let edges = text.lines().filter(|l| l.contains("--")).count();
    assert_eq!((nodes, edges), (5, 10), "{text}");
}

#[test]
fn json_round_trip_is_byte_identical() {
    let d = TempDir::new().unwrap();
    let (g, c, again) = (path(&d, "g.json"), path(&d, "c.json"), path(&d, "again.json"));
    run(&["generate", "--spec", "hexagonal", "--out", &g]);
    run(&["color", "--scheme", "dual", "--in", &g, "--out", &c]);
    assert_eq!(code(&run(&["export", "--format", "json", "--in", &c, "--out", &again])), 0);
    assert_eq!(fs::read(&c).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn svg_export_draws_every_cell() {
    let d = TempDir::new().unwrap();
    let (g, c, svg) = (path(&d, "g.json"), path(&d, "c.json"), path(&d, "t.svg"));
    run(&["generate", "--spec", "trihexagonal", "--out", &g]);
    run(&["color", "--scheme", "line", "--in", &g, "--out", &c]);
    assert_eq!(code(&run(&["export", "--format", "svg", "--in", &c, "--out", &svg])), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert!(text.trim_end().ends_with("</svg>"));
    assert!(text.contains("<polygon"));
}

#[test]
fn carved_inheritance_on_the_octagon_torus_is_rejected() {
    let d = TempDir::new().unwrap();
    let g = path(&d, "g.json");
    run(&["generate", "--spec", "cr4_8_8", "--out", &g]);
    let o = run(&["color", "--scheme", "carved", "--in", &g, "--out", &path(&d, "c.json")]);
    assert_eq!(code(&o), 1);
    assert!(!Path::new(&path(&d, "c.json")).exists());
    let o = run(&["color", "--scheme", "carved", "--unchecked", "--in", &g, "--out", &path(&d, "c.json")]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&run(&["verify", "--level", "etcc", "--in", &path(&d, "c.json"), "--out", &path(&d, "v.json")])), 1);
}

#[test]
fn presets_load_and_verify() {
    let d = TempDir::new().unwrap();
    let (g, c) = (path(&d, "g.json"), path(&d, "c.json"));
    run(&["generate", "--spec", "cr3_4_6_4@u=7,0;v=0,7", "--out", &g]);
    assert_eq!(code(&run(&["color", "--scheme", "carved", "--preset", "strong", "--in", &g, "--out", &c])), 0);
    assert_eq!(code(&run(&["verify", "--level", "L5", "--in", &c, "--out", &path(&d, "v.json")])), 0);
    let o = run(&["color", "--scheme", "carved", "--preset", "nope", "--in", &g, "--out", &c]);
    assert_eq!(code(&o), 2);
}

#[test]
fn search_counts_and_fixed_colors() {
    let d = TempDir::new().unwrap();
    let (g, c, s) = (path(&d, "g.json"), path(&d, "c.json"), path(&d, "s.json"));
    run(&["generate", "--spec", "triangular", "--out", &g]);
    let o = run(&["search", "--level", "setcc", "--mode", "count:10", "--k", "6", "--in", &g, "--out", &s]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&s)["search"]["count"], 1);

    // the closed form, fixed in full, comes back unchanged
    run(&["color", "--scheme", "closed-form", "--in", &g, "--out", &c]);
    let o = run(&["search", "--fix", &c, "--in", &g, "--out", &s, "--k", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&s)["colors"], json(&c)["colors"]);

    let o = run(&["search", "--level", "etcc", "--mode", "exists", "--order", "breadth-first", "--in", &g, "--out", &s]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&s)["search"]["outcome"], "exists");
}

#[test]
fn unsatisfiable_search_exits_one() {
    let d = TempDir::new().unwrap();
    let (g, s) = (path(&d, "g.json"), path(&d, "s.json"));
    run(&["generate", "--spec", "cr4_8_8", "--out", &g]);
    let o = run(&["search", "--level", "etcc", "--mode", "exists", "--k", "4", "--in", &g, "--out", &s]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&s)["search"]["outcome"], "not_exists");
}

#[test]
fn usage_errors_exit_two() {
    let d = TempDir::new().unwrap();
    let g = path(&d, "g.json");
    assert_eq!(code(&run(&["generate", "--spec", "pentagonal", "--out", &g])), 2);
    run(&["generate", "--spec", "triangular", "--out", &g]);
    assert_eq!(code(&run(&["verify", "--level", "L9", "--in", &g, "--out", &path(&d, "v.json")])), 2);
    assert_eq!(code(&run(&["search", "--mode", "count:x", "--in", &g, "--out", &path(&d, "v.json")])), 2);
    assert_eq!(code(&run(&["color", "--scheme", "dual", "--in", &g, "--out", &path(&d, "c.json")])), 2);
    assert_eq!(code(&run(&["verify", "--in", &path(&d, "missing.json")])), 2);
}

#[test]
fn families_lists_every_family() {
    let o = run(&["families"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.lines().count(), 13);
    assert!(out.contains("cr3_3_4_3_4"));
}
