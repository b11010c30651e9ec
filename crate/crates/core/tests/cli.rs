use std::process::{Command, Output};

fn resgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resgame")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_exit_codes() {
    let s = resgame(&["solve", "--dialect", "re", "-k", "3", "-A", "ab", "-B", "a,b,EPS"]);
    assert_eq!(s.status.code(), Some(0));
    assert!(stdout(&s).starts_with("S wins; witness: ab"));

    let d = resgame(&["solve", "--dialect", "re", "-k", "2", "-A", "ab", "-B", "a,b,EPS"]);
    assert_eq!(d.status.code(), Some(1));
    assert!(stdout(&d).starts_with("D wins"));

    let bad = resgame(&["solve", "-k", "2", "-A", "a#"]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("a#"));
}

#[test]
fn solve_limit_is_exit_2() {
    let o = resgame(&[
        "solve",
        "--dialect",
        "gre",
        "-k",
        "5",
        "-s",
        "1",
        "-A",
        "ab,ba",
        "-B",
        "aa,bb",
        "--max-positions",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_reads_a_position_file_and_writes_json() {
    let dir = std::env::temp_dir().join(format!("resgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pos = dir.join("p.json");
    std::fs::write(&pos, r#"{"dialect":"gre","k":2,"s":0,"alphabet":["a","b"],"A":["b",""],"B":["a"]}"#).unwrap();
    let report = dir.join("r.json");
    let o = resgame(&["solve", "--position", pos.to_str().unwrap(), "--json", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["winner"], "S");
    assert_eq!(v["witness"], "!a");
    assert_eq!(v["config"]["position"]["k"], 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn synth_reports_least_separators() {
    let o = resgame(&["synth", "-A", "a"]);
    assert_eq!(stdout(&o).trim(), "minimal: a (size 1, stars 0)");

    let cube = "aaa,aab,aba,abb,baa,bab,bba,bbb";
    let o = resgame(&["synth", "-A", cube, "--b-complement", "4", "--max-size", "11"]);
    assert!(stdout(&o).contains("(size 11, stars 0)"));

    let o = resgame(&["synth", "-A", "ab", "-B", "ab"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn generators() {
    let o = resgame(&["gen", "enc", "-n", "1"]);
    assert_eq!(stdout(&o), "# alphabet: ()\n()\n(())\n");
    let o = resgame(&["gen", "lnk", "-n", "2", "-k", "2"]);
    assert_eq!(stdout(&o), "# alphabet: ab\naaaaabbbb\naaaabbbbb\n");
    let o = resgame(&["gen", "phi", "-n", "0"]);
    assert!(stdout(&o).contains("set₀(x₁, x₂) := L(x₁) ∧ R(x₂) ∧ S(x₁, x₂)"));
}

#[test]
fn identical_invocations_give_identical_output() {
    let args = ["solve", "--dialect", "gre", "-k", "4", "-s", "1", "-A", "EPS,aa", "-B", "a"];
    assert_eq!(resgame(&args).stdout, resgame(&args).stdout);
}
