//! End-to-end runs of the `kummer` binary: golden outputs, JSON shapes,
//! exit codes, and byte-level determinism.

use std::process::{Command, Output};

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer")).args(args).output().expect("binary starts")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

#[test]
fn gaps_csv_golden() {
    let out = kummer(&["gaps", "--m", "3", "--lambdas", "4,4,4,4,4", "--place", "inf", "--format", "csv"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "1,2,4,7\n");
}

#[test]
fn gaps_json_shape() {
    let out = kummer(&["gaps", "--m", "8", "--lambdas", "3,7,7", "--place", "1", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    assert_eq!(value["curve"]["m"], 8);
    assert_eq!(value["curve"]["lambdas"], serde_json::json!([3, 7, 7]));
    assert_eq!(value["place"], "1");
    assert_eq!(value["genus"], 7);
    assert_eq!(value["count_matches_genus"], true);
    assert_eq!(value["gaps"].as_array().map(Vec::len), Some(7));
}

#[test]
fn gaps_empty_set() {
    let out = kummer(&["gaps", "--m", "2", "--lambdas", "1", "--place", "1"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "");
    assert!(stderr(&out).contains("genus 0"));
}

#[test]
fn puregaps_record_set() {
    let out = kummer(&["puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2"]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 18);
    assert!(lines.contains(&"2,9"));
    assert!(lines.contains(&"10,1"));
    let expected: Vec<String> = {
        let curve = kummer_gaps::KummerCurve::new(8, vec![3, 7, 7]).unwrap();
        let sel = curve
            .select(vec![kummer_gaps::PlaceRef::Finite(1), kummer_gaps::PlaceRef::Finite(2)])
            .unwrap();
        kummer_gaps::puregaps::full_pure_gap_set(&curve, &sel)
            .unwrap()
            .into_iter()
            .map(|t| format!("{},{}", t[0], t[1]))
            .collect()
    };
    assert_eq!(lines, expected);
}

#[test]
fn puregaps_bottom_only_stays_in_unit_box() {
    let out =
        kummer(&["puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2", "--bottom-only"]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines.len(), 16);
    for line in lines {
        for coord in line.split(',') {
            let v: i64 = coord.parse().unwrap();
            assert!((1..=7).contains(&v), "coordinate {v} escapes [1,7]");
        }
    }
}

#[test]
fn puregaps_vacuous_selection() {
    let out = kummer(&["puregaps", "--m", "3", "--lambdas", "4,4,4,4,4", "--places", "inf,1,2,3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "");
}

#[test]
fn puregaps_oracle_recheck() {
    let out = kummer(&[
        "puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2", "--verify", "oracle",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stderr(&out).contains("exhaustive scan agrees"));
    assert_eq!(stdout(&out).lines().count(), 18);
}

#[test]
fn puregaps_json_schema() {
    let out = kummer(&[
        "puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    assert_eq!(value["curve"]["m"], 8);
    assert_eq!(value["places"], serde_json::json!(["1", "2"]));
    let tuples = value["tuples"].as_array().unwrap();
    assert_eq!(tuples.len(), 18);
    assert_eq!(tuples[8], serde_json::json!([2, 9]));
}

#[test]
fn puregaps_header_and_text() {
    let out = kummer(&[
        "puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2", "--header",
    ]);
    assert_eq!(stdout(&out).lines().next(), Some("Q1,Q2"));
    let out = kummer(&[
        "puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2", "--format", "text",
    ]);
    let body = stdout(&out);
    assert_eq!(body.lines().next(), Some(" 1  1"));
    assert_eq!(body.lines().last(), Some("10  1"));
}

#[test]
fn codes_single_design_golden() {
    let out = kummer(&[
        "codes", "--family", "hq", "--q", "5", "--m", "6", "--construction", "1", "--s", "2",
        "--k", "2",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "124,106,12\n");
}

#[test]
fn codes_f3_note_on_stderr() {
    let out = kummer(&["codes", "--family", "f3", "--q", "8", "--construction", "3", "--s", "1", "--c", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "255,236,12\n");
    assert!(stderr(&out).contains("note:"));
}

#[test]
fn codes_table_csv_matches_library() {
    for table in 1u8..=4 {
        let out = kummer(&["codes", "--table", &table.to_string(), "--format", "csv"]);
        assert_eq!(exit_code(&out), 0);
        let body = stdout(&out);
        let rows = kummer_gaps::codes::table_rows(table).unwrap();
        let lines: Vec<&str> = body.lines().collect();
        assert_eq!(lines.len(), rows.len());
        for (line, row) in lines.iter().zip(&rows) {
            let t = row.t.map(|t| t.to_string()).unwrap_or_default();
            let expected = format!(
                "{},{},{},{},{},{},{},{},{}",
                row.q,
                t,
                row.m,
                row.s,
                row.k,
                row.design.n,
                row.design.k_dim,
                row.design.d_lower,
                row.improvement
            );
            assert_eq!(*line, expected);
        }
    }
}

#[test]
fn codes_table_one_first_row() {
    let out = kummer(&["codes", "--table", "1", "--format", "csv", "--header"]);
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("q,t,m,s,k,n,k_dim,d_lower,quoted_improvement"));
    assert_eq!(lines.next(), Some("8,2,9,2,5,511,445,42,3"));
}

#[test]
fn codes_json_design() {
    let out = kummer(&[
        "codes", "--family", "qt", "--q", "8", "--t", "2", "--m", "9", "--construction", "1",
        "--s", "2", "--k", "5", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid JSON");
    assert_eq!(value["n"], 511);
    assert_eq!(value["k_dim"], 445);
    assert_eq!(value["d_lower"], 42);
    assert_eq!(value["family"]["label"], "q8t2m9");
    assert_eq!(value["family"]["genus"], 28);
    assert_eq!(value["places"], serde_json::json!(["1", "2"]));
}

#[test]
fn exit_codes_are_distinct_per_category() {
    let curve = kummer(&["gaps", "--m", "4", "--lambdas", "2", "--place", "1"]);
    assert_eq!(exit_code(&curve), 3);
    assert!(stderr(&curve).contains("error[E_CURVE]"));

    let place = kummer(&["gaps", "--m", "8", "--lambdas", "3,7,7", "--place", "9"]);
    assert_eq!(exit_code(&place), 4);
    assert!(stderr(&place).contains("error[E_SELECTION]"));

    let token = kummer(&["gaps", "--m", "8", "--lambdas", "3,7,7", "--place", "zzz"]);
    assert_eq!(exit_code(&token), 2);
    assert!(stderr(&token).contains("error[E_USAGE]"));

    let table = kummer(&["codes", "--table", "7"]);
    assert_eq!(exit_code(&table), 5);
    assert!(stderr(&table).contains("error[E_PARAM]"));

    let missing = kummer(&["gaps", "--m", "8"]);
    assert_eq!(exit_code(&missing), 2);

    let window = kummer(&[
        "codes", "--family", "hq", "--q", "5", "--m", "6", "--construction", "1", "--s", "2",
        "--k", "2", "--n", "999",
    ]);
    assert_eq!(exit_code(&window), 5);
    assert!(stderr(&window).contains("error[E_PARAM]"));
}

#[test]
fn length_override_is_honored() {
    let out = kummer(&[
        "codes", "--family", "hq", "--q", "5", "--m", "6", "--construction", "1", "--s", "2",
        "--k", "2", "--n", "120",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out), "120,102,12\n");
}

#[test]
fn verify_passes_and_reports() {
    let out = kummer(&["verify", "--max-m", "4", "--max-r", "3", "--max-s", "2", "--curves", "25"]);
    assert_eq!(exit_code(&out), 0);
    let body = stdout(&out);
    assert!(body.contains("criterion-vs-oracle:"));
    assert!(body.contains("gap-count-vs-genus:"));
    assert!(body.contains("closedform-vs-engine:"));
    assert!(body.ends_with("result: PASS\n"));
}

#[test]
fn verify_inject_fault_fails_with_counterexample() {
    let out = kummer(&["verify", "--max-m", "4", "--max-r", "3", "--curves", "5", "--inject-fault"]);
    assert_eq!(exit_code(&out), 6);
    let body = stdout(&out);
    assert!(body.contains("criterion mismatch:"));
    assert!(body.ends_with("result: FAIL\n"));
    assert!(stderr(&out).contains("error[E_VERIFY]"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2"],
        vec!["puregaps", "--m", "8", "--lambdas", "3,7,7", "--places", "1,2", "--format", "json"],
        vec!["codes", "--table", "2", "--format", "csv"],
        vec!["verify", "--max-m", "4", "--max-r", "3", "--curves", "10"],
    ];
    for args in commands {
        let first = kummer(&args);
        let second = kummer(&args);
        assert_eq!(first.stdout, second.stdout, "stdout differs for {args:?}");
        assert_eq!(exit_code(&first), exit_code(&second));
    }
}
