use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn alttrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alttrace"))
        .args(args)
        .env_remove("ALTTRACE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn traces_degree_two() {
    let o = alttrace(&["traces", "--p", "3", "--f", "1", "--degree", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# alttrace "));
    assert!(lines[0].contains("p=3 f=1"));
    assert_eq!(lines[1], "t_index,numerator,denominator,is_integer");
    assert_eq!(lines.len(), 2 + 9);
    for row in &lines[2..] {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!((cols[2], cols[3]), ("1", "true"), "{row}");
    }
}

#[test]
fn identity_and_wild_pass() {
    let o = alttrace(&["identity", "--q", "9"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("PASS"));
    let o = alttrace(&["identity", "--q", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["grouped"]["p_f_size"], 4);
    let o = alttrace(&["wild", "--q", "9", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["dimension"], 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(alttrace(&["nonsense"]).status.code(), Some(2));
    assert_eq!(alttrace(&["traces", "--p", "3"]).status.code(), Some(2));
    assert_eq!(alttrace(&["traces", "--p", "9", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(alttrace(&["identity", "--q", "12"]).status.code(), Some(2));
    assert_eq!(alttrace(&["traces", "--p", "3", "--degree", "2", "--budget", "4"]).status.code(), Some(2));
}

#[test]
fn groupstats_csv() {
    let o = alttrace(&["groupstats", "--q", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("# spectrum regime=alt twist=plain\nvalue,probability_num,probability_den\n-1,13,36\n"));
    assert!(text.contains("alt,plain,3,1,1\n"));
    assert!(text.contains("odd-coset,sgn,3,-1,1\n"));
}

#[test]
fn curves_csv() {
    let o = alttrace(&["curves", "--p", "3", "--f", "1", "--degree", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let total: u64 = text
        .lines()
        .skip(2)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 81);
}

#[test]
fn compare_exit_code_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verdict.json");
    let o = alttrace(&["compare", "--p", "3", "--f", "1", "--max-degree", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["report"]["passed"], true);
    assert_eq!(v["report"]["rows"].as_array().unwrap().len(), 5);
    assert!(String::from_utf8(o.stderr).unwrap().contains("verdict: PASS"));

    // An impossible tolerance makes the verdict fail with exit code 1.
    let cfg = dir.path().join("strict.toml");
    fs::write(&cfg, "[thresholds]\ntv_max = 0.0\nmin_field_size = 1\n").unwrap();
    let o = alttrace(&["compare", "--config", cfg.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "p = 5\nf = 1\nmax_degree = 2\n").unwrap();
    let o = alttrace(&["moments", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("p=5 f=1"));
    assert_eq!(text.lines().count(), 1 + 1 + 2);
    let o = alttrace(&["moments", "--config", cfg.to_str().unwrap(), "--max-degree", "3"]);
    assert_eq!(stdout(&o).lines().count(), 1 + 1 + 3);
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_alttrace"))
            .args(["traces", "--p", "3", "--degree", "4"])
            .env("ALTTRACE_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    let cached = read_dir_sorted(dir.path());
    assert_eq!(cached.len(), 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(read_dir_sorted(dir.path()), cached);

    let (name, bytes) = &cached[0];
    let mut tampered = bytes.clone();
    let pos = tampered.iter().position(|&b| b == b'\n').unwrap() + 40;
    tampered[pos] = if tampered[pos] == b'1' { b'2' } else { b'1' };
    fs::write(dir.path().join(name), tampered).unwrap();
    let third = run();
    assert_eq!(third.status.code(), Some(2));
    assert!(String::from_utf8(third.stderr).unwrap().contains("cache"));
}

#[test]
fn all_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = alttrace(&["all", "--p", "3", "--f", "1", "--max-degree", "4", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("overall: PASS"));
    for (name, bytes) in read_dir_sorted(dir.path()) {
        let text = String::from_utf8(bytes).unwrap();
        assert!(
            text.starts_with("# alttrace 0.1.0 ") || text.starts_with("{\n  \"comment\": \"alttrace 0.1.0 "),
            "{name}"
        );
    }
}
