use std::process::{Command, Output};

fn srg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_srg-krein")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    assert_eq!(srg(&["check", "10", "3", "0", "1"]).status.code(), Some(0));

    let witness = srg(&["check", "28", "9", "0", "4"]);
    assert_eq!(witness.status.code(), Some(1));
    assert!(stdout(&witness).contains("first failure: lemma.q1_333"));

    let bad = srg(&["check", "10", "3", "0", "2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("counting identity violated"));

    assert_eq!(srg(&["check", "10", "3", "0"]).status.code(), Some(2));
    assert_eq!(srg(&["check", "ten", "3", "0", "1"]).status.code(), Some(2));
    assert_eq!(srg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(srg(&["--help"]).status.code(), Some(0));
}

#[test]
fn exploration_mode_bypasses_counting_identity() {
    let o = srg(&["check", "10", "3", "0", "2", "--no-counting-identity", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["conditions"].as_array().unwrap().iter().all(|c| c["id"] != "validation.counting_identity"));
    assert_ne!(o.status.code(), Some(2));
}

#[test]
fn json_report_round_trips_byte_identical() {
    for t in [["10", "3", "0", "1"], ["28", "9", "0", "4"], ["5", "2", "0", "1"], ["10", "3", "0", "2"]] {
        let o = srg(&["check", t[0], t[1], t[2], t[3], "--json"]);
        let text = stdout(&o);
        let report: srg_krein::cli::CheckReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
        let generic: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["params", "discriminant", "spectrum", "conditions", "overall", "first_failure"] {
            assert!(generic.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn json_schema_values() {
    let o = srg(&["check", "28", "9", "0", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["overall"], "infeasible");
    assert_eq!(v["first_failure"], "lemma.q1_333");
    assert_eq!(v["spectrum"]["r"], "1");
    assert_eq!(v["spectrum"]["s_float"], -5.0);
    let lemma = v["conditions"].as_array().unwrap().iter().find(|c| c["id"] == "lemma.q1_333").unwrap();
    assert_eq!(lemma["value_exact"], "-16128");
    assert_eq!(lemma["satisfied"], false);
    assert_eq!(lemma["source"], "paper-lemma");
}

#[test]
fn scan_rows_and_order() {
    let o = srg(&["scan", "--n-max", "13"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p,a,c,d,r_float,s_float,verdict,first_failure"));
    let keys: Vec<(u64, u64, u64, u64)> = lines
        .map(|l| {
            let f: Vec<u64> = l.split(',').take(4).map(|x| x.parse().unwrap()).collect();
            (f[0], f[1], f[2], f[3])
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for prefix in ["5,2,0,1,", "9,4,1,2,", "10,3,0,1,", "13,6,2,3,"] {
        let row = text.lines().find(|l| l.starts_with(prefix)).unwrap();
        assert!(row.ends_with(",feasible-so-far,"), "{row}");
    }

    let empty = srg(&["scan", "--n-max", "4"]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(empty.stdout.is_empty());
}

#[test]
fn scan_witness_row_and_determinism() {
    let one = srg(&["scan", "--n-max", "30", "--threads", "1", "--k-max", "5", "--kl-max", "5"]);
    let many = srg(&["scan", "--n-max", "30", "--threads", "4", "--k-max", "5", "--kl-max", "5"]);
    assert_eq!(one.stdout, many.stdout);
    let text = stdout(&one);
    let row = text.lines().find(|l| l.starts_with("28,9,0,4,")).unwrap();
    assert!(row.contains(",infeasible,"), "{row}");

    let json = srg(&["scan", "--n-max", "30", "--json", "--k-max", "5", "--kl-max", "5"]);
    let rows: Vec<serde_json::Value> =
        stdout(&json).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len() + 1, text.lines().count());
    let witness = rows.iter().find(|r| r["n"] == 28 && r["p"] == 9 && r["a"] == 0 && r["c"] == 4).unwrap();
    assert_eq!(witness["first_failure"], "lemma.q1_333");
}

#[test]
fn scan_filters() {
    let text = stdout(&srg(&["scan", "--n-max", "40", "--a", "0", "--c", "1", "--k-max", "3", "--kl-max", "3"]));
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!((f[2], f[3]), ("0", "1"), "{line}");
    }
    assert!(text.lines().any(|l| l.starts_with("10,3,0,1,")));
}

#[test]
fn krein_command() {
    let o = srg(&["krein", "10", "3", "0", "1", "--jj", "3", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("2/5, 2/9, 1/45"));
    let floats: Vec<f64> = lines.next().unwrap().split(", ").map(|x| x.parse().unwrap()).collect();
    assert!((floats[1] - 2.0 / 9.0).abs() < 1e-15);

    assert_eq!(stdout(&srg(&["krein", "10", "3", "0", "1", "--jj", "2", "1"])).lines().next(), Some("0, 1, 0"));
    assert_eq!(srg(&["krein", "10", "3", "0", "2", "--jj", "2", "1"]).status.code(), Some(2));
    assert_eq!(srg(&["krein", "10", "3", "0", "1", "--jj", "2", "0"]).status.code(), Some(2));
    assert_eq!(srg(&["krein", "10", "3", "0", "1", "--jj", "2", "1", "--uv", "1", "2", "1", "1"]).status.code(), Some(2));
}

#[test]
fn krein_values_with_radicals() {
    // Conference graphs such as C5 have rational q's despite irrational
    // eigenvalues; (7,3;0,2) passes the counting identity and does not.
    let text = stdout(&srg(&["krein", "5", "2", "0", "1", "--uv", "2", "3", "1", "1"]));
    assert_eq!(text.lines().next(), Some("0, 1/5, 1/5"));
    let text = stdout(&srg(&["krein", "7", "3", "0", "2", "--jj", "2", "2"]));
    assert_eq!(text.lines().next(), Some("3/7+3/56*sqrt(8), 3/28+5/112*sqrt(8), 1/4+1/16*sqrt(8)"));
    let v: serde_json::Value =
        serde_json::from_slice(&srg(&["krein", "7", "3", "0", "2", "--jj", "2", "2", "--json"]).stdout).unwrap();
    assert_eq!(v["exact"][0], "3/7+3/56*sqrt(8)");
    assert!((v["float"][0].as_f64().unwrap() - (3.0 / 7.0 + 3.0 / 56.0 * 8f64.sqrt())).abs() < 1e-12);
}

#[test]
fn verify_command() {
    let o = srg(&["verify", "petersen"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("petersen: all checks passed"));

    let o = srg(&["verify", "c5", "--kronecker-k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("kronecker.idempotency(k<=3)"));

    assert_eq!(srg(&["verify", "nosuchgraph"]).status.code(), Some(2));
    assert_eq!(srg(&["verify", "paley-7"]).status.code(), Some(2));

    let capped = Command::new(env!("CARGO_BIN_EXE_srg-krein"))
        .args(["verify", "c5", "--kronecker-k", "3"])
        .env("SRG_KREIN_SIZE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("size cap 100"));
}

#[test]
fn verify_json_and_adjacency_import() {
    let dir = std::env::temp_dir().join(format!("srg-krein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c5.txt");
    std::fs::write(&path, "5\n0 1 0 0 1\n1 0 1 0 0\n0 1 0 1 0\n0 0 1 0 1\n1 0 0 1 0\n").unwrap();
    let o = srg(&["verify", "--adjacency", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["params"]["n"], 5);
    assert!(v[0]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    std::fs::write(&path, "3\n0 1 0\n1 0 1\n0 1 0\n").unwrap();
    assert_eq!(srg(&["verify", "--adjacency", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn abs_power_identity_at_zero() {
    let o = srg(&["abs-power", "13", "6", "2", "3", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["alpha"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["beta"].as_f64().unwrap().abs() < 1e-12);
    assert!(v["gamma"].as_f64().unwrap().abs() < 1e-12);
}
