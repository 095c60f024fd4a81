use std::process::{Command, Output};

fn tambara(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tambara")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = tambara(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn structure_maps() {
    assert_eq!(
        stdout(&["norm", "--group", "Q8", "--from", "C2", "--to", "Q8", "t - 2"]),
        "-2[Q8/e] + 3[Q8/I] + 3[Q8/J] + 3[Q8/K] - 2\n"
    );
    assert_eq!(stdout(&["transfer", "--group", "Q8", "--from", "C2", "--to", "Q8", "t - 2"]), "[Q8/e] - 2[Q8/C2]\n");
    assert_eq!(stdout(&["restrict", "--group", "C2", "--from", "C2", "--to", "e", "t - 2"]), "0\n");
    assert_eq!(stdout(&["norm", "--group", "C4", "--from", "C2", "--to", "C4", "2"]), "[C4/C2] + 2\n");
    assert_eq!(stdout(&["conj", "--group", "Q8", "--from", "C2", "--by", "i", "t - 2"]), "[C2/e] - 2\n");
}

#[test]
fn errors_exit_nonzero() {
    let out = tambara(&["norm", "--from", "C2", "--to", "Q8", "t - [Q8/X]"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 4"));
    let out = tambara(&["restrict", "--group", "Q8", "--from", "C2", "--to", "Q8", "t"]);
    assert!(!out.status.success());
    assert!(!tambara(&["fixture", "nope"]).status.success());
    assert!(!tambara(&["check-paper", "--only", "nope"]).status.success());
    assert!(!tambara(&["--group", "Z9", "fixture", "constZ"]).status.success());
}

#[test]
fn ideal_levels() {
    let top = stdout(&["ideal", "--group", "Q8", "--level", "C2", "t - 2", "--show", "Q8"]);
    for name in [
        "tr_{C2}^{Q8}(t - 2)",
        "tr_{I}^{Q8} nm_{C2}^{I}(t - 2)",
        "tr_{J}^{Q8} nm_{C2}^{J}(t - 2) = -[Q8/e] + 3[Q8/C2] - 2[Q8/J]",
        "tr_{K}^{Q8} nm_{C2}^{K}(t - 2)",
        "nm_{C2}^{Q8}(t - 2) = -2[Q8/e] + 3[Q8/I] + 3[Q8/J] + 3[Q8/K] - 2",
    ] {
        assert!(top.contains(name), "{name} missing from\n{top}");
    }
    assert!(top.contains("rank 5") && !top.contains("level I"));

    let c2 = stdout(&["ideal", "--group", "C2", "--level", "e", "2", "--show", "C2", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_str(&c2).unwrap();
    let elements: Vec<&str> = j["levels"][0]["generators"].as_array().unwrap().iter().map(|g| g["element"].as_str().unwrap()).collect();
    assert!(elements.contains(&"2[C2/e]") && elements.contains(&"[C2/e] + 2"), "{elements:?}");

    let zero = stdout(&["ideal", "--group", "C2", "--level", "C2", "t - 2", "--show", "e"]);
    assert!(zero.contains("level e: rank 0"));
}

#[test]
fn quotients() {
    let nz = stdout(&["quotient", "--group", "Q8", "--level", "C2", "t - 2", "--basis", "Q8:1,[Q8/I]-2,[Q8/K]-2"]);
    assert!(nz.contains("Q8: Z ⊕ Z/2 ⊕ Z/2 <1, u_I, u_K>"));
    for line in ["I → Q8: [2; 1; 0]", "J → Q8: [2; 1; 1]", "K → Q8: [2; 0; 1]", "Q8 → J: [1 0 0]", "C2 → e: 1", "e → C2: 2"] {
        assert!(nz.contains(line), "{line} missing from\n{nz}");
    }
    assert_eq!(
        stdout(&["quotient", "--group", "C2", "--level", "C2", "t - 2"]).replace("A/⟨t - 2⟩", "constZ"),
        stdout(&["--group", "C2", "fixture", "constZ"])
    );
    let ex = stdout(&["quotient", "--group", "C2", "--level", "e", "2"]);
    assert!(ex.contains("C2: Z/4") && ex.contains("e: Z/2"));
    let bad = tambara(&["quotient", "--level", "C2", "t - 2", "--basis", "Q8:1,[Q8/I]-2,[Q8/J]-2,[Q8/K]-2"]);
    assert!(!bad.status.success());
}

#[test]
fn latex_and_fixtures() {
    let tex = stdout(&["fixture", "NZ", "--format", "latex"]);
    assert!(tex.starts_with("\\begin{tikzcd}") && tex.contains("\\mathbb{Z}/2"));
    let list = stdout(&["fixture", "--list"]);
    assert!(list.contains("mgw") && list.contains("phiIJK_F2*"));
    assert!(stdout(&["gfp", "NZ", "--normal", "Q8"]).contains("Z/2"));
    let r = stdout(&["restrict-mackey", "NZ", "--to", "I"]);
    assert!(r.contains("I: Z <1>") && !r.contains("⊕"));
}

#[test]
fn json_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nz.json");
    let p = path.to_str().unwrap();
    let out = tambara(&["fixture", "NZ", "--format", "json", "--out", p]);
    assert!(out.status.success() && out.stdout.is_empty());
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&["fixture", p, "--format", "json"]), first);
    assert_eq!(stdout(&["fixture", p]), stdout(&["fixture", "NZ"]));
}

#[test]
fn group_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.json");
    std::fs::write(&path, r#"{"label": "C3", "order": 3, "mult": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&["norm", "--group", p, "--from", "e", "--to", "C3", "2"]), "2[C3/e] + 2\n");
}

#[test]
fn exactness_presets_and_files() {
    assert!(stdout(&["check-exact", "--preset", "main-sequence"]).contains("short exact"));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    let g = dir.path().join("g.json");
    std::fs::write(&f, "[[[2]], [[2]]]").unwrap();
    std::fs::write(&g, "[[[1]], [[1]]]").unwrap();
    let out = tambara(&[
        "--group", "C2", "check-exact", "--source", "constZ", "--middle", "constZ", "--target", "constZ", "--first",
        f.to_str().unwrap(), "--second", g.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("not short exact"));
}

#[test]
fn check_paper() {
    let all = stdout(&["check-paper"]);
    assert!(all.contains("14/14 passed"), "{all}");
    let one = stdout(&["check-paper", "--only", "nz-diagram"]);
    assert_eq!(one.lines().count(), 2);
    assert!(stdout(&["check-paper", "--list"]).contains("fixed-points-c2"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["ideal", "--level", "C2", "t - 2", "--format", "json"][..],
        &["quotient", "--level", "C2", "t - 2", "--format", "json"][..],
        &["gfp", "NZ", "--normal", "C2", "--format", "json"][..],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
    let seq = stdout(&["ideal", "--level", "C2", "t - 2", "--sequential"]);
    assert_eq!(seq, stdout(&["ideal", "--level", "C2", "t - 2"]));
}
