use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn solitaire(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solitaire"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SAMPLE: &str = "# sample deal\n3 4\n2\n2\n2 3 4\n";

#[test]
fn color_triangle_auto_uses_three_colors() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "tri.txt", "0 1\n1 2\n2 0\n");
    let out = solitaire(&["color", s(&g)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("vizing mode: 3 colors used <= bound 3"));
    let colors: std::collections::BTreeSet<_> = stdout(&out)
        .lines()
        .map(|l| l.split_whitespace().last().unwrap().to_string())
        .collect();
    assert_eq!(colors.len(), 3);
}

#[test]
fn color_c4_auto_is_konig_and_verifies() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "c4.txt", "0 1\n1 2\n2 3\n3 0\n");
    let col = dir.path().join("c4.col");
    let out = solitaire(&["color", s(&g), "--output", s(&col)]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("konig mode: 2 colors used <= bound 2"));
    let out = solitaire(&["verify", s(&g), s(&col), "2"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).starts_with("proper"));
}

#[test]
fn konig_mode_on_odd_cycle_is_rejected() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "c4tri.txt", "0 1\n1 2\n2 3\n3 0\n0 4\n4 1\n");
    let out = solitaire(&["color", s(&g), "--mode", "konig"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not bipartite"));
    assert_eq!(code(&solitaire(&["color", s(&g), "--mode", "vizing"])), 0);
}

#[test]
fn color_parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "bad.txt", "0 1\n1 1\n");
    let out = solitaire(&["color", s(&g)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"));
    assert_eq!(code(&solitaire(&["color", "/no/such/file"])), 2);
    assert_eq!(code(&solitaire(&["color", s(&g), "--mode", "greedy"])), 2);
}

#[test]
fn verify_reports_clashes_and_small_palettes() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "path.txt", "0 1\n1 2\n");
    let clash = file(&dir, "clash.col", "0 1 1\n1 2 1\n");
    let out = solitaire(&["verify", s(&g), s(&clash)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("vertex 1"), "{}", stdout(&out));
    let good = file(&dir, "good.col", "0 1 1\n1 2 3\n");
    assert_eq!(code(&solitaire(&["verify", s(&g), s(&good)])), 0);
    let out = solitaire(&["verify", s(&g), s(&good), "2"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("outside 1..=2"));
    let broken = file(&dir, "broken.col", "0 1\n");
    assert_eq!(code(&solitaire(&["verify", s(&g), s(&broken)])), 2);
}

#[test]
fn play_sample_wins_in_one_move() {
    let dir = TempDir::new().unwrap();
    let game = file(&dir, "t1.txt", SAMPLE);
    let transcript = dir.path().join("t1.json");
    let out = solitaire(&[
        "play",
        s(&game),
        "--demon",
        "konig",
        "--seed",
        "4",
        "--output",
        s(&transcript),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let t: Value = serde_json::from_str(&fs::read_to_string(&transcript).unwrap()).unwrap();
    assert_eq!(t["outcome"], "Won");
    assert_eq!(t["rounds"].as_array().unwrap().len(), 1);
    assert_eq!(
        t["rounds"][0]["player"],
        serde_json::json!({"i": 1, "a": 2, "b": 1})
    );
    assert_eq!(
        t["initial_stacks"],
        serde_json::json!([[2], [2], [2, 3, 4]])
    );
}

#[test]
fn contrary_demon_exhausts_budget() {
    let dir = TempDir::new().unwrap();
    let game = file(&dir, "t1.txt", SAMPLE);
    let out = solitaire(&["play", s(&game), "--demon", "contrary", "--budget", "5"]);
    assert_eq!(code(&out), 1);
    let t: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(t["outcome"], "Budget_Exhausted");
    assert_eq!(t["rounds"].as_array().unwrap().len(), 5);
    assert!(stderr(&out).contains("Budget_Exhausted"));
}

#[test]
fn vizing_strategy_checks_profile() {
    let dir = TempDir::new().unwrap();
    let game = file(&dir, "ones.txt", "3 3\n1\n1\n1 2\n");
    let out = solitaire(&[
        "play",
        s(&game),
        "--demon",
        "vizing",
        "--strategy",
        "vizing",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("singleton"), "{}", stderr(&out));
}

#[test]
fn generated_deals_need_a_seed_and_replay() {
    let out = solitaire(&["play", "5x7", "--strategy", "vizing", "--demon", "vizing"]);
    assert_eq!(code(&out), 2);
    let a = solitaire(&[
        "play",
        "5x7",
        "--seed",
        "11",
        "--strategy",
        "vizing",
        "--demon",
        "vizing",
    ]);
    let b = solitaire(&[
        "play",
        "5x7",
        "--seed",
        "11",
        "--strategy",
        "vizing",
        "--demon",
        "vizing",
    ]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let t: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(t["config"], serde_json::json!({"k": 5, "m": 7}));
}

#[test]
fn bad_game_file_exits_two() {
    let dir = TempDir::new().unwrap();
    let game = file(&dir, "bad.txt", "3 4\n2\n2\n");
    let out = solitaire(&["play", s(&game)]);
    assert_eq!(code(&out), 2);
    let game = file(&dir, "zero.txt", "0 4\n");
    assert_eq!(code(&solitaire(&["play", s(&game)])), 2);
}

#[test]
fn selftest_small_passes_and_lists_suites() {
    let out = solitaire(&["selftest", "small"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.starts_with("selftest small: 7 suites"));
    for suite in [
        "konig-exhaustive",
        "vizing-exhaustive",
        "random-games",
        "contrary-demon",
        "konig-coloring",
        "vizing-coloring",
        "oracle-cross-check",
    ] {
        assert!(
            text.contains(&format!("PASS {suite}: ")),
            "{suite} missing:\n{text}"
        );
    }
}

#[test]
fn injected_failure_flips_exit_code() {
    let out = solitaire(&["selftest", "small", "--inject-failure"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL injected-failure"));
    assert!(stdout(&out).contains("7 of 8 suites passed"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&solitaire(&[])), 2);
    assert_eq!(code(&solitaire(&["play"])), 2);
    assert_eq!(code(&solitaire(&["play", "x.txt", "--demon", "angel"])), 2);
}

#[test]
fn serve_answers_http() {
    use std::io::{Read, Write};
    use std::net::TcpStream;
    use std::time::{Duration, Instant};

    let port = std::net::TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let addr = format!("127.0.0.1:{port}");
    let mut child = Command::new(env!("CARGO_BIN_EXE_solitaire"))
        .args(["serve", "--bind", &addr])
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();
    let deadline = Instant::now() + Duration::from_secs(10);
    let reply = loop {
        if let Ok(mut conn) = TcpStream::connect(&addr) {
            conn.write_all(b"GET /sessions/none HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n")
                .unwrap();
            let mut buf = String::new();
            conn.read_to_string(&mut buf).unwrap();
            break buf;
        }
        assert!(Instant::now() < deadline, "server did not start");
        std::thread::sleep(Duration::from_millis(50));
    };
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(reply.starts_with("HTTP/1.1 404"), "{reply}");
    assert!(reply.contains("UnknownSession"));
}
