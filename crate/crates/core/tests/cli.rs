use std::process::{Command, Output};

fn franklin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_franklin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_matches_golden() {
    let o = franklin(&["table", "--n-max", "20", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/table1.txt"));
}

#[test]
fn csv_header_and_rows() {
    let o = franklin(&["table", "--n-max", "5", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,nu,norm_decimal,norm_num,norm_den,argmax_j,below_gamma"));
    assert_eq!(lines.count(), 1 + 2 + 2 + 3);
    assert!(text.contains("3,1,1.84444444,83,45,"));
}

#[test]
fn norm_subcommand() {
    let o = franklin(&["norm", "--n", "19", "--nu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("decimal = 2.14023316"), "{s}");
    assert!(s.contains(": yes"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(franklin(&["norm", "--n", "2", "--nu", "3"]).status.code(), Some(1));
    assert_eq!(franklin(&["table"]).status.code(), Some(1));
    assert_eq!(franklin(&["table", "--n-max", "1"]).status.code(), Some(1));
    assert_eq!(franklin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(franklin(&["--help"]).status.code(), Some(0));
}

#[test]
fn sweep_summary() {
    let o = franklin(&["sweep", "--nu", "1", "--n-max", "12"]);
    let s = stdout(&o);
    assert!(s.starts_with("N,norm_decimal,gap_to_gamma\n3,1.84444444,"));
    let last = s.lines().last().unwrap();
    assert!(last.starts_with("# final gap at N=12: "), "{last}");
    // 30 significant digits: d.ddd…e-k
    let mantissa = last.rsplit(' ').next().unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.replace('.', "").len(), 30);
}

#[test]
fn verify_quick_passes() {
    let o = franklin(&["verify", "--level", "quick"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.lines().all(|l| !l.starts_with("FAIL")));
}
