// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use tempfile::TempDir;
use tokswap_cli::format::InstanceFile;
use tokswap_cli::run_with;
use tokswap_core::lollipop::phi;
use tokswap_core::Instance;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn tokswap(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["tokswap"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn load(path: &Path) -> Instance {
    let file: InstanceFile = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    file.to_instance().unwrap()
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", p(&path)]);
    let r = tokswap(&all);
    assert_eq!(r.code, 0, "{}", r.err);
    path
}

const EXAMPLE_F: &str = r#"{"vars": 3, "clauses": [[1, 2], [3], [1], [2, 3], [-1, -2, -3]], "part": [1, 1, 2, 2, 3]}"#;

#[test]
fn solve_lollipop_matches_potential() {
    let dir = TempDir::new().unwrap();
    for seed in 0..8 {
        let inst = gen(&dir, "l.json", &["--family", "lollipop", "--m", "3", "--n", "4", "--seed", &seed.to_string()]);
        let Instance::Ts { graph, config } = load(&inst) else { panic!("expected ts") };
        let expected = phi(&graph, &config).unwrap();
        let r = tokswap(&["--json", "solve", "-i", p(&inst)]);
        assert_eq!(r.code, 0, "{}", r.err);
        let v: Value = serde_json::from_str(&r.out).unwrap();
        assert_eq!(v["algo"], "lollipop");
        assert_eq!(v["length"].as_u64().unwrap() as usize, expected);
        assert_eq!(v["potential"].as_u64().unwrap() as usize, expected);
    }
}

#[test]
fn reduce_example_f() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("f.json");
    fs::write(&src, EXAMPLE_F).unwrap();
    let out = dir.path().join("g.json");
    let r =
        tokswap(&["--json", "reduce", "--from", "sepsat", "--to", "rvm", "-i", p(&src), "-o", p(&out), "--emit-map"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["vertices"], 28);
    assert_eq!(v["certificate"]["bipartite"], true);
    assert_eq!(v["certificate"]["max_degree"], 4);
    assert_eq!(load(&out).graph().n(), 28);

    let witness = dir.path().join("w.txt");
    fs::write(&witness, "1 -2 3\n").unwrap();
    let sol = dir.path().join("s.json");
    let meta = format!("{}.meta", p(&out));
    let r = tokswap(&["map-solution", "--reduction", &meta, "--witness", p(&witness), "-o", p(&sol)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = tokswap(&["verify", "-i", p(&out), "-s", p(&sol)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("ok: 3 steps"), "{}", r.out);

    fs::write(&witness, "-1 -2 -3\n").unwrap();
    let r = tokswap(&["map-solution", "--reduction", &meta, "--witness", p(&witness), "-o", p(&sol)]);
    assert_eq!(r.code, 1, "{}", r.err);
}

#[test]
fn every_reduction_target_maps_and_verifies() {
    let dir = TempDir::new().unwrap();
    let cnf = dir.path().join("f.cnf");
    fs::write(&cnf, "c small\np cnf 3 3\n1 2 -3 0\n-1 3 0\n2 3 0\n").unwrap();
    let witness = dir.path().join("w.txt");
    fs::write(&witness, "v 1 2 3 0\n").unwrap();
    for to in ["rvm", "rvm3", "c2rvm", "c3rvm"] {
        let out = dir.path().join(format!("{to}.json"));
        let r = tokswap(&["reduce", "--from", "3sat", "--to", to, "-i", p(&cnf), "-o", p(&out), "--emit-map"]);
        assert_eq!(r.code, 0, "{to}: {}", r.err);
        let sol = dir.path().join(format!("{to}.sol"));
        let meta = format!("{}.meta", p(&out));
        let r = tokswap(&["map-solution", "--reduction", &meta, "--witness", p(&witness), "-o", p(&sol)]);
        assert_eq!(r.code, 0, "{to}: {}", r.err);
        let r = tokswap(&["verify", "-i", p(&out), "-s", p(&sol)]);
        assert_eq!(r.code, 0, "{to}: {}", r.out);
    }
}

#[test]
fn three_dm_to_ts() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("m.json");
    fs::write(&src, r#"{"n": 2, "triples": [[1, 1, 1], [2, 2, 2], [1, 2, 1]]}"#).unwrap();
    let out = dir.path().join("t.json");
    let r = tokswap(&["reduce", "--from", "3dm", "--to", "ts", "-i", p(&src), "-o", p(&out), "--emit-map"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let witness = dir.path().join("w.txt");
    fs::write(&witness, "1 2").unwrap();
    let sol = dir.path().join("s.json");
    let meta = format!("{}.meta", p(&out));
    let r = tokswap(&["map-solution", "--reduction", &meta, "--witness", p(&witness), "-o", p(&sol)]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = tokswap(&["verify", "-i", p(&out), "-s", p(&sol)]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("ok: 42 steps"), "{}", r.out);

    let r = tokswap(&["reduce", "--from", "3dm", "--to", "rvm", "-i", p(&src), "-o", p(&out)]);
    assert_eq!(r.code, 2);
}

#[test]
fn truncated_solution_is_rejected() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "p.json", &["--family", "path", "--n", "7", "--kind", "rvm", "--seed", "5"]);
    let sol = dir.path().join("s.json");
    assert_eq!(tokswap(&["solve", "-i", p(&inst), "-o", p(&sol)]).code, 0);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&sol).unwrap()).unwrap();
    v["steps"].as_array_mut().unwrap().pop();
    fs::write(&sol, v.to_string()).unwrap();
    let r = tokswap(&["verify", "-i", p(&inst), "-s", p(&sol)]);
    assert_eq!(r.code, 1);
    assert!(r.out.starts_with("violation:"), "{}", r.out);
}

#[test]
fn canonical_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let first = gen(&dir, "a.json", &["--family", "random", "--n", "9", "--seed", "11"]);
    let text = fs::read_to_string(&first).unwrap();
    let file: InstanceFile = serde_json::from_str(&text).unwrap();
    assert_eq!(tokswap_cli::format::to_canonical_json(&file), text);
    let again = gen(&dir, "b.json", &["--family", "random", "--n", "9", "--seed", "11"]);
    assert_eq!(fs::read_to_string(again).unwrap(), text);
}

#[test]
fn auto_solutions_verify() {
    let dir = TempDir::new().unwrap();
    let cases: &[&[&str]] = &[
        &["--family", "lollipop", "--m", "4", "--n", "3"],
        &["--family", "starpath", "--m", "3", "--n", "4"],
        &["--family", "path", "--n", "9", "--kind", "rvm"],
        &["--family", "cycle", "--n", "6"],
        &["--family", "random", "--n", "6", "--kind", "rvm"],
    ];
    for (i, args) in cases.iter().enumerate() {
        for seed in 0..3 {
            let mut a = args.to_vec();
            let s = seed.to_string();
            a.extend_from_slice(&["--seed", &s]);
            let inst = gen(&dir, &format!("{i}.json"), &a);
            let sol = dir.path().join(format!("{i}.sol"));
            let r = tokswap(&["solve", "-i", p(&inst), "-o", p(&sol)]);
            assert_eq!(r.code, 0, "{args:?}: {}", r.err);
            assert_eq!(tokswap(&["verify", "-i", p(&inst), "-s", p(&sol)]).code, 0, "{args:?}");
        }
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let inst = gen(&dir, "p.json", &["--family", "path", "--n", "8", "--kind", "rvm", "--seed", "2"]);
    let r = tokswap(&["--node-cap", "10", "solve", "-i", p(&inst), "--algo", "oracle"]);
    assert_eq!(r.code, 3, "{}", r.err);
    let r = tokswap(&["--json", "--node-cap", "10", "solve", "-i", p(&inst), "--algo", "oracle"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["exit_code"], 3);

    let r = tokswap(&["solve", "-i", p(&inst), "--algo", "lollipop"]);
    assert_eq!(r.code, 2);
    let r = tokswap(&["solve", "-i", p(&dir.path().join("missing.json"))]);
    assert_eq!(r.code, 2);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"kind": "ts", "n": 2, "edges": [[0, 5]], "tokens": [0, 1]}"#).unwrap();
    assert_eq!(tokswap(&["solve", "-i", p(&bad)]).code, 2);
    assert_eq!(tokswap(&["frobnicate"]).code, 2);
    assert_eq!(tokswap(&["--help"]).code, 0);

    let ts = gen(&dir, "t.json", &["--family", "path", "--n", "4"]);
    assert_eq!(tokswap(&["decide2", "-i", p(&ts)]).code, 2);
}

#[test]
fn decide2_and_count2() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("c.json");
    // Reversal of P_4 takes three steps; a half turn of C_4 takes two.
    fs::write(&inst, r#"{"kind": "rvm", "n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]], "tokens": [2, 3, 0, 1]}"#)
        .unwrap();
    let r = tokswap(&["decide2", "-i", p(&inst)]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("yes"));
    let r = tokswap(&["--json", "count2", "-i", p(&inst)]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert!(v["count"].as_u64().unwrap() >= 1);

    fs::write(&inst, r#"{"kind": "rvm", "n": 4, "edges": [[0, 1], [1, 2], [2, 3]], "tokens": [3, 2, 1, 0]}"#).unwrap();
    let r = tokswap(&["decide2", "-i", p(&inst)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out.trim(), "no");

    fs::write(
        &inst,
        r#"{"kind": "crvm", "n": 4, "edges": [[0, 1], [1, 2], [2, 3]], "colors": [2, 1, 1, 1], "goal_colors": [1, 1, 2, 1]}"#,
    )
    .unwrap();
    assert_eq!(tokswap(&["decide2", "-i", p(&inst)]).code, 0);
}

#[test]
fn gen_dot_and_bench() {
    let r = tokswap(&["gen", "--family", "cycle", "--n", "4", "--dot"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("graph G {"));
    assert_eq!(r.out.matches(" -- ").count(), 4);
    let r = tokswap(&["--json", "bench", "--suite", "lollipop", "--max-size", "6", "--samples", "3"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}
