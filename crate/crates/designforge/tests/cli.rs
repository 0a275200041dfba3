use std::path::{Path, PathBuf};

use designforge::cli::main_with_args;
use designforge::design_file::DesignFile;

fn run(args: &[&str]) -> i32 {
    let mut full = vec!["designforge", "--seed", "11"];
    full.extend_from_slice(args);
    main_with_args(full)
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn read_design(path: &Path) -> DesignFile {
    DesignFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn construct_psl9(dir: &Path) -> PathBuf {
    let out = dir.join("d45.txt");
    let code = run(&[
        "construct",
        "--method",
        "2",
        "--group",
        "psl2",
        "--q",
        "9",
        "--maximal",
        "pgl2:squared",
        "--ord",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    out
}

#[test]
fn construct_reduce_dual_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d45 = construct_psl9(dir.path());
    let design = read_design(&d45);
    assert_eq!((design.structure.v(), design.structure.b()), (45, 15));

    let reduced = dir.path().join("reduced.txt");
    assert_eq!(
        run(&[
            "reduce",
            d45.to_str().unwrap(),
            "--out",
            reduced.to_str().unwrap()
        ]),
        0
    );
    let r = read_design(&reduced).structure.validate_1design().unwrap();
    assert_eq!((r.v, r.k, r.lambda), (15, 3, 3));

    let dual = dir.path().join("dual.txt");
    assert_eq!(
        run(&[
            "dual",
            d45.to_str().unwrap(),
            "--out",
            dual.to_str().unwrap()
        ]),
        0
    );
    let dd = read_design(&dual).structure;
    assert_eq!((dd.v(), dd.b()), (15, 45));

    assert_eq!(run(&["tdesign", d45.to_str().unwrap(), "--t", "1"]), 0);
    assert_eq!(run(&["aut", reduced.to_str().unwrap()]), 0);
}

#[test]
fn json_report_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let code = run(&[
        "--format",
        "json",
        "--report",
        report.to_str().unwrap(),
        "construct",
        "--method",
        "1",
        "--group",
        "a6",
        "--orbit-size",
        "5",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn reports_match_golden_files() {
    let g = golden_dir();
    let g = g.to_str().unwrap();
    assert_eq!(
        run(&["--golden", g, "table1", "--n", "22", "--ord", "3"]),
        0
    );
    assert_eq!(
        run(&[
            "--golden",
            g,
            "construct",
            "--method",
            "2",
            "--group",
            "psl2",
            "--q",
            "9",
            "--maximal",
            "pgl2:squared",
            "--ord",
            "2",
        ]),
        0
    );
}

#[test]
fn golden_mismatch_exits_with_check_failure() {
    let dir = tempfile::tempdir().unwrap();
    let src = std::fs::read_to_string(golden_dir().join("table1-22-3.json")).unwrap();
    std::fs::write(
        dir.path().join("table1-22-3.json"),
        src.replacen("\"seed\": 11", "\"seed\": 12", 1),
    )
    .unwrap();
    let code = run(&[
        "--golden",
        dir.path().to_str().unwrap(),
        "table1",
        "--n",
        "22",
        "--ord",
        "3",
    ]);
    assert_eq!(code, 4);
}

#[test]
fn exit_codes_distinguish_failures() {
    let dir = tempfile::tempdir().unwrap();
    let d45 = construct_psl9(dir.path());
    assert_eq!(
        run(&["reduce", dir.path().join("missing.txt").to_str().unwrap()]),
        2
    );
    assert_eq!(
        run(&[
            "construct",
            "--method",
            "2",
            "--group",
            "psl2",
            "--q",
            "9",
            "--maximal",
            "pgl2:squared",
            "--ord",
            "7",
        ]),
        2
    );
    assert_eq!(
        run(&["--budget-nodes", "1", "aut", d45.to_str().unwrap()]),
        3
    );
    assert_eq!(run(&["--orbit-cap", "0", "table1"]), 2);
    assert_eq!(run(&["no-such-command"]), 2);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "design 3 2\n1 2\n9 1\n").unwrap();
    assert_eq!(run(&["dual", bad.to_str().unwrap()]), 2);
}

#[test]
fn bundled_mathieu_group_stabilizer_checks_pass() {
    assert_eq!(run(&["stab", "--group", "m22", "--ord", "3"]), 0);
}
