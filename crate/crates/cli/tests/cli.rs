use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use curve_lrc::{recovery_plan, ConstructionConfig};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn lrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrc"))
        .args(args)
        .env_remove("LRC_MAX_Q")
        .env_remove("LRC_MAX_ENUM")
        .env_remove("LRC_MAX_GROUP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn construct_into(name: &str, dir: &Path) -> Output {
    lrc(&[
        "construct",
        config(name).to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ])
}

#[test]
fn construct_prints_row_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = construct_into("hermitian-gf4.toml", dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "[6, 2, \u{2265}4; 1, 2] availability 2");
    let g = fs::read_to_string(dir.path().join("generator.txt")).unwrap();
    assert!(g.starts_with("4 6 2\n"));
    assert_eq!(g.lines().count(), 3);
    assert!(dir.path().join("metadata.toml").exists());
}

#[test]
fn construct_intersecting_example() {
    let dir = tempfile::tempdir().unwrap();
    let o = construct_into("intersecting-gf729.toml", dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o).trim(),
        "[2184, 14, \u{2265}2084; 2, 7] availability 8"
    );
}

#[test]
fn construct_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(construct_into("hermitian-gf9.toml", a.path())
        .status
        .success());
    assert!(construct_into("hermitian-gf9.toml", b.path())
        .status
        .success());
    for f in ["generator.txt", "metadata.toml"] {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn violated_bound_exits_with_hypothesis_code() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(config("hermitian-gf4.toml"))
        .unwrap()
        .replace("t1 = 1", "t1 = 2");
    let path = dir.path().join("bad.toml");
    fs::write(&path, text).unwrap();
    let o = lrc(&[
        "construct",
        path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("t1 = 2 exceeds"), "{}", stderr(&o));
}

#[test]
fn missing_config_exits_with_io_code() {
    let o = lrc(&["mindist", "/nonexistent/config.toml"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn budget_override_exits_with_budget_code() {
    let o = Command::new(env!("CARGO_BIN_EXE_lrc"))
        .args(["mindist", config("hermitian-gf4.toml").to_str().unwrap()])
        .env("LRC_MAX_ENUM", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn mindist_prints_exact_distance() {
    let o = lrc(&["mindist", config("hermitian-gf9.toml").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("exact d = 14"));
}

#[test]
fn verify_passes_on_hermitian_gf9() {
    let o = lrc(&["verify", config("hermitian-gf9.toml").to_str().unwrap()]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(!out.contains("FAIL"), "{out}");
    assert!(
        out.contains("PASS\tdistance\tdesigned 14 \u{2264} exact 14"),
        "{out}"
    );
    assert!(out.contains("PASS\trecovery sets"), "{out}");
}

#[test]
fn verify_reports_corrupted_matrix() {
    let dir = tempfile::tempdir().unwrap();
    assert!(construct_into("hermitian-gf9.toml", dir.path())
        .status
        .success());
    let path = dir.path().join("generator.txt");
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    lines[2] = lines[1].clone();
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    let o = lrc(&[
        "verify",
        config("hermitian-gf9.toml").to_str().unwrap(),
        "--matrix",
        path.to_str().unwrap(),
        "--skip-exact",
    ]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(1), "{out}");
    assert!(
        out.contains("FAIL\tmatrix rank\texpected 6, actual 5"),
        "{out}"
    );
    assert!(out.contains("FAIL\tmatrix entries"), "{out}");
}

#[test]
fn recover_demo_single_erasure_all_sets_agree() {
    let dir = tempfile::tempdir().unwrap();
    assert!(construct_into("intersecting-gf729.toml", dir.path())
        .status
        .success());
    let o = lrc(&[
        "recover-demo",
        dir.path().to_str().unwrap(),
        "--erase",
        "17",
        "--samples",
        "20",
    ]);
    let out = stdout(&o);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(out.contains("coordinate 17: 8/8 sets agree"), "{out}");
    assert!(out.contains("result: success"), "{out}");
}

#[test]
fn recover_demo_with_a_helper_set_erased() {
    let dir = tempfile::tempdir().unwrap();
    assert!(construct_into("intersecting-gf729.toml", dir.path())
        .status
        .success());
    let text = fs::read_to_string(config("intersecting-gf729.toml")).unwrap();
    let (_, code) = ConstructionConfig::from_toml(&text)
        .unwrap()
        .build()
        .unwrap();
    let plan = recovery_plan(&code, 5).unwrap();
    let mut erase = vec![5];
    erase.extend(&plan.sets[0].indices);
    let spec: Vec<String> = erase.iter().map(ToString::to_string).collect();
    let o = lrc(&[
        "recover-demo",
        dir.path().to_str().unwrap(),
        "--erase",
        &spec.join(","),
    ]);
    let out = stdout(&o);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(
        out.contains("coordinate 5 set 0 (subgroup 0): blocked"),
        "{out}"
    );
    assert!(out.contains("coordinate 5: 7/8 sets agree"), "{out}");
    assert!(out.contains("result: success"), "{out}");
}

#[test]
fn recover_demo_without_erasures_is_a_no_op() {
    let dir = tempfile::tempdir().unwrap();
    assert!(construct_into("hermitian-gf4.toml", dir.path())
        .status
        .success());
    let o = lrc(&["recover-demo", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("result: success"));
}

#[test]
fn recover_demo_reports_unrecoverable_patterns() {
    let dir = tempfile::tempdir().unwrap();
    assert!(construct_into("hermitian-gf4.toml", dir.path())
        .status
        .success());
    let o = lrc(&[
        "recover-demo",
        dir.path().to_str().unwrap(),
        "--erase",
        "0,1,2,3,4,5",
    ]);
    assert!(o.status.success());
    assert!(
        stdout(&o).contains("result: failure (unrecoverable"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn report_lists_one_row_per_config() {
    let o = lrc(&[
        "report",
        "--exact",
        config("hermitian-gf4.toml").to_str().unwrap(),
        config("fermat-gf25.toml").to_str().unwrap(),
    ]);
    let out = stdout(&o);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("family\tn\tk"));
    assert!(lines[1].starts_with("maximal-kummer\t6\t2\t4\t4\t"));
    assert!(lines[2].starts_with("fermat\t30\t2\t28\t28\t"));
}
