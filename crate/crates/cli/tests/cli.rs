use std::fs;
use std::process::{Command, Output};

use mirrorcat::emit::Table;
use mirrorcat::ribbon::fixtures::SHIPPED;

fn mirrorcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fusion_product() {
    let o = mirrorcat(&["fusion", "--sl2", "--r", "2", "--rp", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2⊗3 = 2 ⊕ 4\n");
}

#[test]
fn fusion_from_ring_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3.json");
    fs::write(&path, SHIPPED.iter().find(|(n, _)| *n == "z3").unwrap().1).unwrap();
    let o = mirrorcat(&["fusion", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2⊗2 = 1\n"));
}

#[test]
fn minus_side_character() {
    let o = mirrorcat(&["char", "--p", "2", "--side", "minus", "--r", "2", "--trunc", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("offset -2 coeffs 1,1,1,2,3"), "{}", stdout(&o));
}

#[test]
fn mirror_passes() {
    let o = mirrorcat(&["verify-mirror", "--p", "3", "--rmax", "30"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn shipped_categories_verify() {
    let o = mirrorcat(&["verify-category", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), SHIPPED.len());
}

#[test]
fn invalid_category_fails_verification() {
    // semion F with a trivial braiding violates the hexagon
    let text = SHIPPED.iter().find(|(n, _)| *n == "z2_semion").unwrap().1;
    let mut json: serde_json::Value = serde_json::from_str(text).unwrap();
    json["R"] = serde_json::json!([[1, 1, 0, {"order": 1, "coeffs": ["1/1"]}]]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, json.to_string()).unwrap();
    let o = mirrorcat(&["verify-category", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn corrupted_fixture_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3.json");
    fs::write(&path, "{\"ring\": [").unwrap();
    let o = mirrorcat(&["selftest", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = mirrorcat(&["verify-category", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(mirrorcat(&["char", "--p", "1"]).status.code(), Some(2));
    assert_eq!(mirrorcat(&["tables", "--trunc", "0"]).status.code(), Some(2));
    assert_eq!(mirrorcat(&["fusion", "--sl2", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn injected_fault_fails_selftest() {
    let o = mirrorcat(&["selftest", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().next().unwrap().starts_with("[FAIL]  1"));
}

#[test]
fn machine_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (n, threads) in ["1", "4"].iter().enumerate() {
        let path = dir.path().join(format!("t{n}.json"));
        let o = Command::new(env!("CARGO_BIN_EXE_mirrorcat"))
            .args(["tables", "--p", "3", "--rmax", "6", "--trunc", "6", "--format", "json", "--out"])
            .arg(&path)
            .env("MIRRORCAT_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn tex_and_csv_agree() {
    for args in [
        vec!["tables", "--kind", "wminus", "--p", "3", "--rmax", "7", "--trunc", "5"],
        vec!["char", "--p", "2", "--side", "plus", "--rmax", "4", "--trunc", "5"],
        vec!["fusion", "--sl2", "--rmax", "5"],
        vec!["coset-extract", "--p", "2", "--rmax", "4", "--trunc", "5"],
    ] {
        let run = |format: &str| {
            let mut a = args.clone();
            a.extend(["--format", format]);
            let o = mirrorcat(&a);
            assert_eq!(o.status.code(), Some(0), "{a:?}");
            stdout(&o)
        };
        let csv = run("csv");
        let kinds = {
            // column kinds are fixed by the verb; recover them from the CSV header
            let header = csv.lines().next().unwrap();
            let cols: Vec<&str> = header.split(',').collect();
            cols.iter()
                .map(|c| match *c {
                    "h" | "hU" | "hV" => mirrorcat::emit::CellKind::Rational,
                    "coeffs" | "charV" | "summands" => mirrorcat::emit::CellKind::List,
                    _ => mirrorcat::emit::CellKind::Int,
                })
                .collect::<Vec<_>>()
        };
        let from_csv = Table::from_csv(&csv, &kinds).unwrap();
        let from_tex = Table::from_tex(&run("tex"), &kinds).unwrap();
        assert_eq!(from_csv, from_tex, "{args:?}");
        assert!(!from_csv.rows.is_empty());
    }
}

#[test]
fn table_file_feeds_extraction() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ik.json");
    let o = mirrorcat(&["tables", "--p", "2", "--rmax", "5", "--trunc", "6", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = mirrorcat(&["coset-extract", "--fixture", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("r=2 offset -2 coeffs 1,1,1,2,3,4,6"), "{}", stdout(&o));
}

#[test]
fn bad_thread_count() {
    let o = Command::new(env!("CARGO_BIN_EXE_mirrorcat"))
        .args(["fusion", "--sl2", "--r", "1", "--rp", "1"])
        .env("MIRRORCAT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
