//! Every shipped fixture file parses and verifies to its recorded status.

use std::path::PathBuf;

use skewcodes_cli::config::Config;
use skewcodes_cli::fixture::FixtureFile;
use skewcodes_cli::report::Report;
use skewcodes_cli::verify::{verify_rows, Status};

fn verify(name: &str) -> Report {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let rows = FixtureFile::load(&p).unwrap().rows;
    let r = Report::new(vec![name.to_string()], verify_rows(&Config::default(), &rows));
    Report::from_json(&r.to_json()).unwrap()
}

fn statuses(r: &Report) -> Vec<(&str, Status)> {
    r.rows.iter().map(|row| (row.id.as_str(), row.status)).collect()
}

fn all_pass(r: &Report, n: usize) {
    assert_eq!(r.summary.total, n);
    assert_eq!(r.summary.pass, n, "{:?}", statuses(r));
}

#[test]
fn table1() {
    let r = verify("table1.toml");
    all_pass(&r, 8);
    for row in &r.rows {
        let a = row.chosen_attempt().unwrap();
        assert_eq!(a.d_exact, Some(true));
        assert_eq!(a.class.as_deref().map(str::to_lowercase), row.expected.class.as_deref().map(str::to_lowercase));
    }
}

#[test]
fn table2() {
    all_pass(&verify("table2.toml"), 9);
}

#[test]
fn table3() {
    let r = verify("table3.toml");
    assert_eq!(r.summary.fail, 0);
    let flagged: Vec<&str> = r.rows.iter().filter(|x| x.status == Status::Flagged).map(|x| x.id.as_str()).collect();
    assert_eq!(flagged, ["table3.row2"]);
    assert!(r.rows[1].notes.iter().any(|n| n.contains("k = 50")));
    // the Example 1 code reaches d = 6 under N = [[1,t^2],[t^2,1]], where N N^T = t I
    let row5 = r.rows.iter().find(|x| x.id == "table3.row5").unwrap();
    let a = row5.chosen_attempt().unwrap();
    assert_eq!((a.gray.as_deref(), a.beta.as_deref()), (Some("1,t^2;t^2,1"), Some("t")));
}

#[test]
fn table4_reproduces_only_without_derivation() {
    let r = verify("table4.toml");
    all_pass(&r, 11);
    for row in &r.rows {
        let a = row.chosen_attempt().unwrap();
        assert_eq!(a.alpha, "0", "{}", row.id);
        assert_eq!((a.reversible, a.complement_closed), (Some(true), Some(true)));
    }
}

#[test]
fn table5_and_examples() {
    let r = verify("table5.toml");
    all_pass(&r, 1);
    assert!(r.rows[0].notes.iter().any(|n| n.contains("GCCGTTGCCGT")));

    let e = verify("examples.toml");
    let s = statuses(&e);
    assert_eq!(
        s,
        [
            ("example.f49", Status::Pass),
            ("example1", Status::Flagged),
            ("example2", Status::Pass),
            ("example3", Status::Pass),
            ("example4", Status::Pass),
        ]
    );
    for row in &e.rows {
        assert!(row.attempts.iter().any(|a| a.factorization == Some(true)), "{}", row.id);
    }
    let ex1 = e.rows[1].attempts.last().unwrap();
    assert_eq!((ex1.k, ex1.d, ex1.d_exact), (Some(17), Some(5), Some(true)));
}
