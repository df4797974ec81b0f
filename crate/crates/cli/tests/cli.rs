use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const EXAMPLE: &str = "0100 1010 0101 0000 0011 1110 0111 0111 0001 0000 0010 0100 0100 0110 1000";
const EXAMPLE_CODE: [&str; 8] = ["--nc", "4", "--l1", "5", "--l2", "3", "--z", "16"];

fn mlsync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlsync"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn strip(bits: &str) -> String {
    bits.chars().filter(|c| *c == '0' || *c == '1').collect()
}

fn delete(bits: &str, positions: &[usize]) -> String {
    strip(bits)
        .chars()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, c)| c)
        .collect()
}

struct Work {
    dir: tempfile::TempDir,
}

impl Work {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: impl AsRef<[u8]>) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, contents).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn encode(&self, bits: &str, code: &[&str]) -> (PathBuf, Output) {
        let input = self.file("x.txt", bits);
        let msg = self.path("msg.bin");
        let mut args = vec!["encode", path_str(&input)];
        args.extend_from_slice(code);
        args.extend_from_slice(&["--out", path_str(&msg)]);
        let out = mlsync(&args);
        (msg, out)
    }
}

#[test]
fn encode_reports_cost_and_inspect_shows_syndromes() {
    let w = Work::new();
    let (msg, out) = w.encode(EXAMPLE, &EXAMPLE_CODE);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("message bits = 51"), "{text}");
    assert!(text.contains("rate = 0.850"), "{text}");

    let out = mlsync(&["inspect", path_str(&msg)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("M1 = 10 6 3 4 11"), "{text}");
    assert!(text.contains("M2 = 11 20 4"), "{text}");
    assert!(text.contains("M3 = 0xb6d2"), "{text}");
    assert!(text.contains("rate = 0.850"), "{text}");
}

#[test]
fn all_zero_input_has_zero_syndromes() {
    let w = Work::new();
    let (msg, out) = w.encode(&"0".repeat(60), &EXAMPLE_CODE);
    assert!(out.status.success());
    let text = stdout(&mlsync(&["inspect", path_str(&msg)]));
    assert!(text.contains("M1 = 0 0 0 0 0"), "{text}");
    assert!(text.contains("M2 = 0 0 0"), "{text}");
    assert!(text.contains("M3 = 0x0000"), "{text}");
}

#[test]
fn wrong_length_and_bad_params_are_usage_errors() {
    let w = Work::new();
    let (_, out) = w.encode(&"1".repeat(61), &EXAMPLE_CODE);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("61 bits"));

    let (_, out) = w.encode(&"1".repeat(60), &["--nc", "4", "--l1", "5", "--l2", "3", "--z", "6"]);
    assert_eq!(out.status.code(), Some(1));
    // 20 chunks do not fit a Reed-Solomon code over GF(16).
    let (_, out) = w.encode(&"1".repeat(80), &["--nc", "4", "--l1", "5", "--l2", "4", "--z", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = mlsync(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn corrupted_message_is_a_parse_error() {
    let w = Work::new();
    let (msg, _) = w.encode(EXAMPLE, &EXAMPLE_CODE);
    let mut bytes = fs::read(&msg).unwrap();
    bytes[0] ^= 0xff;
    let bad = w.file("bad.bin", &bytes);
    let out = mlsync(&["inspect", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("magic"));
    let y = w.file("y.txt", strip(EXAMPLE));
    let out = mlsync(&["reconstruct", path_str(&y), path_str(&bad), "--out", path_str(&w.path("o"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unchanged_file_reconstructs_to_itself() {
    let w = Work::new();
    let (msg, _) = w.encode(EXAMPLE, &EXAMPLE_CODE);
    let y = w.file("y.txt", EXAMPLE);
    let rec = w.path("rec.txt");
    let out = mlsync(&["reconstruct", path_str(&y), path_str(&msg), "--out", path_str(&rec)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("r6 = 1"));
    assert_eq!(strip(&fs::read_to_string(&rec).unwrap()), strip(EXAMPLE));
}

#[test]
fn random_deletions_are_repaired() {
    let w = Work::new();
    let (msg, _) = w.encode(EXAMPLE, &EXAMPLE_CODE);
    let mut state = 0x1234_5678_u64;
    for round in 0..20 {
        let mut dels: Vec<usize> = Vec::new();
        while dels.len() < 4 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let p = (state >> 33) as usize % 60;
            if !dels.contains(&p) {
                dels.push(p);
            }
        }
        let y = w.file("y.txt", delete(EXAMPLE, &dels));
        let rec = w.path(&format!("rec{round}"));
        let out = mlsync(&["reconstruct", path_str(&y), path_str(&msg), "--out", path_str(&rec)]);
        assert!(out.status.success(), "{dels:?}: {}", stderr(&out));
        assert_eq!(strip(&fs::read_to_string(&rec).unwrap()), strip(EXAMPLE), "{dels:?}");
    }
}

#[test]
fn several_candidates_get_numbered_files() {
    let x = "101101100110011111110001110111100001100001010010011101001011";
    let w = Work::new();
    let (msg, _) = w.encode(x, &["--nc", "4", "--l1", "5", "--l2", "3", "--z", "4"]);
    let y = w.file("y.txt", delete(x, &[10, 11, 26]));
    let rec = w.path("rec");
    let out = mlsync(&["reconstruct", path_str(&y), path_str(&msg), "--out", path_str(&rec)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("r6 = 2"));
    assert!(!rec.exists());
    let first = fs::read_to_string(w.path("rec.1")).unwrap();
    let second = fs::read_to_string(w.path("rec.2")).unwrap();
    assert_ne!(first, second);
    assert!(strip(&first) == x || strip(&second) == x);
}

#[test]
fn tight_limits_report_truncation() {
    let w = Work::new();
    let (msg, _) = w.encode(EXAMPLE, &EXAMPLE_CODE);
    let y = w.file("y.txt", delete(EXAMPLE, &[0, 5, 26, 30]));
    let out = mlsync(&[
        "reconstruct",
        path_str(&y),
        path_str(&msg),
        "--max-tree-nodes",
        "2",
        "--out",
        path_str(&w.path("rec")),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("warning"));
    assert!(stdout(&out).contains("truncated = true"));
}

#[test]
fn raw_files_round_trip() {
    // 64-bit code with random binary parity, byte-aligned input.
    let w = Work::new();
    let x: Vec<u8> = vec![0xde, 0xad, 0xbe, 0xef, 0x01, 0x23, 0x45, 0x67];
    let input = w.file("x.bin", &x);
    let msg = w.path("msg.bin");
    let out = mlsync(&[
        "encode", path_str(&input), "--nc", "4", "--l1", "4", "--l2", "4", "--code", "random", "--z", "16",
        "--seed", "3", "--out", path_str(&msg),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let bits: String = x.iter().map(|b| format!("{b:08b}")).collect();
    let kept = delete(&bits, &[3, 20, 50]);
    let mut packed = vec![0u8; kept.len().div_ceil(8)];
    for (i, c) in kept.chars().enumerate() {
        if c == '1' {
            packed[i / 8] |= 0x80 >> (i % 8);
        }
    }
    let y = w.file("y.bin", &packed);
    let rec = w.path("rec.bin");
    let out = mlsync(&[
        "reconstruct", path_str(&y), path_str(&msg), "--input-format", "raw", "--bits", "61", "--out",
        path_str(&rec),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("k = 3"));
    assert_eq!(fs::read(&rec).unwrap(), x);
}

#[test]
fn simulate_setup3_is_unambiguous_and_repeatable() {
    let w = Work::new();
    let a = w.path("a.csv");
    let b = w.path("b.csv");
    for p in [&a, &b] {
        let out = mlsync(&["simulate", "--setup", "3", "--trials", "10000", "--seed", "1", "--out", path_str(p)]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stderr(&out).contains("trials in"));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    let header: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    let field = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(field("count_r6_gt_1"), "0");
    assert_eq!(field("max_r6"), "1");
    assert_eq!(field("trials"), "10000");
}

#[test]
fn simulate_setup1_ambiguity_rate() {
    let out = mlsync(&["simulate", "--setup", "1", "--trials", "100000", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let count: f64 = text
        .lines()
        .find(|l| l.contains("\"count_r6_gt_1\""))
        .and_then(|l| l.split(':').nth(1))
        .map(|v| v.trim().trim_end_matches(',').parse().unwrap())
        .unwrap();
    let frac = count / 100_000.0;
    assert!((0.001..=0.007).contains(&frac), "fraction {frac}");
}

#[test]
fn simulate_explicit_params_and_unknown_setup() {
    let out = mlsync(&[
        "simulate", "--nc", "3", "--l1", "2", "--l2", "2", "--z", "3", "--k", "2", "--trials", "50",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("setup,"));
    let out = mlsync(&["simulate", "--nc", "3", "--l1", "2", "--l2", "2", "--z", "3", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = mlsync(&["simulate", "--setup", "9"]);
    assert_eq!(out.status.code(), Some(1));
}
