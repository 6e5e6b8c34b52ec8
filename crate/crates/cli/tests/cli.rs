use std::process::{Command, Output};

use serde_json::Value;

fn sievekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sievekit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// CSV cells against the JSON values of the same report.
fn assert_same_content(csv: &str, json: &str) {
    let (header, rows) = csv_rows(csv);
    let Value::Array(objs) = serde_json::from_str::<Value>(json).unwrap() else {
        panic!("json report is not an array");
    };
    assert_eq!(rows.len(), objs.len());
    for (row, obj) in rows.iter().zip(&objs) {
        let keys: Vec<&String> = obj.as_object().unwrap().keys().collect();
        assert_eq!(keys, header.iter().collect::<Vec<_>>());
        for (cell, col) in row.iter().zip(&header) {
            match &obj[col] {
                Value::Null => assert_eq!(cell, ""),
                Value::String(s) => assert_eq!(cell, s),
                Value::Number(n) => assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{col}"),
                Value::Bool(b) => assert_eq!(cell, &b.to_string()),
                other => panic!("unexpected {other}"),
            }
        }
    }
}

#[test]
fn selberg_twin_row_is_valid() {
    let out = sievekit(&[
        "bound",
        "--method",
        "selberg",
        "--problem",
        "twin",
        "--x",
        "1e4",
        "--z",
        "20",
    ]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(rows.len(), 1);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let row = &rows[0];
    assert_eq!(row[col("method")], "selberg");
    assert_eq!(row[col("verdict")], "valid");
    // n (n + 2) for 1 <= n <= x - 3 with no prime factor below 20.
    let oracle = (1..=10_000 - 3u64)
        .filter(|&n| (2..20).filter(|&p| is_prime(p)).all(|p| n % p != 0 && (n + 2) % p != 0))
        .count();
    assert_eq!(row[col("exact")].parse::<usize>().unwrap(), oracle);
    assert!(row[col("bound")].parse::<f64>().unwrap() >= oracle as f64);
}

#[test]
fn sievefun_hits_closed_value_at_two() {
    let out = sievekit(&["sievefun", "--tau-max", "10", "--step", "1e-3"]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["tau", "phi0", "phi1"]);
    let at_two = rows.iter().find(|r| r[0].parse::<f64>().unwrap() == 2.0).unwrap();
    let e_gamma = 1.781_072_417_990_198;
    assert!((at_two[2].parse::<f64>().unwrap() - e_gamma).abs() < 1e-6);
    assert_eq!(at_two[1].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn small_verify_passes() {
    let out = sievekit(&["verify", "--suite", "all", "--budget", "small"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["suite", "check", "passed", "detail"]);
    assert!(!rows.is_empty());
}

#[test]
fn csv_and_json_match() {
    let runs: [&[&str]; 4] = [
        &[
            "bound",
            "--method",
            "rosser",
            "--problem",
            "interval",
            "--x",
            "1e5",
            "--z",
            "10,20",
            "--r",
            "0",
        ],
        &[
            "bound",
            "--method",
            "brun-pure",
            "--problem",
            "twin",
            "--x",
            "1e4",
            "--z",
            "13",
            "--ell",
            "0..3",
        ],
        &["chen", "--N", "10000..10010:2"],
        &["lsieve", "--trials", "50", "--seed", "3"],
    ];
    for args in runs {
        let csv = sievekit(args);
        let mut with_json = vec!["--format", "json"];
        with_json.extend_from_slice(args);
        let json = sievekit(&with_json);
        assert!(csv.status.success() && json.status.success());
        assert_same_content(&stdout(&csv), &stdout(&json));
    }
}

#[test]
fn fifteen_significant_digits() {
    let out = sievekit(&[
        "bound",
        "--method",
        "selberg",
        "--problem",
        "interval",
        "--x",
        "1000",
        "--z",
        "12",
    ]);
    let (_, rows) = csv_rows(&stdout(&out));
    for cell in &rows[0][8..13] {
        let digits = cell
            .trim_start_matches('-')
            .chars()
            .filter(char::is_ascii_digit)
            .collect::<String>();
        assert!(digits.trim_start_matches('0').len() <= 15, "{cell}");
    }
}

#[test]
fn seed_controls_randomized_checks() {
    let a = sievekit(&["lsieve", "--trials", "40", "--seed", "11"]);
    let b = sievekit(&["lsieve", "--trials", "40", "--seed", "11"]);
    let c = sievekit(&["lsieve", "--trials", "40", "--seed", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(
        sievekit(&["lsieve", "--trials", "40"]).stdout,
        sievekit(&["lsieve", "--trials", "40", "--seed", "0"]).stdout
    );
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(
        &path,
        "command = \"bound\"\nmethod = \"linnik\"\nproblem = \"progression\"\nx = 1e4\nk = 4\nl = 3\nz = [5, 10]\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let from_file = sievekit(&["--config", p]);
    let from_flags = sievekit(&[
        "bound",
        "--method",
        "linnik",
        "--problem",
        "progression",
        "--x",
        "1e4",
        "--k",
        "4",
        "--l",
        "3",
        "--z",
        "5,10",
    ]);
    assert!(
        from_file.status.success(),
        "{}",
        String::from_utf8_lossy(&from_file.stderr)
    );
    assert_eq!(from_file.stdout, from_flags.stdout);

    let overridden = sievekit(&["--config", p, "--z", "7"]);
    let (_, rows) = csv_rows(&stdout(&overridden));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][2], "7.0");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sift.json");
    let out = sievekit(&[
        "sift",
        "--problem",
        "interval",
        "--x",
        "100",
        "--z",
        "11",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // 1 and the 21 primes in [11, 100].
    assert_eq!(v[0]["sifted"], 22);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "command = \"bound\"\nx = [\n").unwrap();
    assert_eq!(sievekit(&["--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        sievekit(&["bound", "--method", "selberg", "--problem", "twin", "--z", "10"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sievekit(&["sift", "--problem", "progression", "--x", "100", "--k", "4", "--l", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(sievekit(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(sievekit(&["sievefun", "--step", "0.5"]).status.code(), Some(2));
    assert_eq!(sievekit(&["chen", "--N", "1e8"]).status.code(), Some(3));
    assert_eq!(sievekit(&["lsieve", "--Q", "1000"]).status.code(), Some(3));
}
