use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use realseq::bfile;
use realseq::report::ReportDocument;
use realseq_core::sequences::fibonacci_like;
use realseq_core::transforms::sample_recurrence;
use realseq_core::{check_realizable, scale, BigUint, LinearRecurrence, Seq, TimeChange};

fn realseq(args: &[&str], stdin: Option<&str>) -> Output {
    realseq_env(args, stdin, &[])
}

fn realseq_env(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_realseq"));
    cmd.args(args)
        .env_remove("REALIZE_POINT_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    out
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn cycle_file(len: usize) -> String {
    bfile::render(&Seq::periodic(&[1, 1, 1, 1, 6], len).unwrap())
}

#[test]
fn gen_examples() {
    let out = realseq(&["gen", "fiblike", "3", "--terms", "6"], None);
    assert_eq!(code(&out), 0);
    let lucas = bfile::parse(&stdout(&out)).unwrap();
    assert_eq!(lucas.terms(), Seq::from_i64s(&[1, 3, 4, 7, 11, 18]).unwrap().terms());

    let out = realseq(&["gen", "stirling", "2", "4", "--terms", "5"], None);
    let s = bfile::parse(&stdout(&out)).unwrap();
    // S(n + 3, 4) for n = 1..5
    assert_eq!(s.terms(), Seq::from_i64s(&[1, 10, 65, 350, 1701]).unwrap().terms());

    let out = realseq(&["gen", "euler", "--terms", "3"], None);
    let e = bfile::parse(&stdout(&out)).unwrap();
    assert_eq!(e.terms(), Seq::from_i64s(&[1, 5, 61]).unwrap().terms());

    let out = realseq(&["gen", "linrec", "1,1", "1,1", "--terms", "7"], None);
    let f = bfile::parse(&stdout(&out)).unwrap();
    assert_eq!(f.terms(), Seq::from_i64s(&[1, 1, 2, 3, 5, 8, 13]).unwrap().terms());

    let out = realseq(&["gen", "bernoulli-tau", "--terms", "3"], None);
    assert_eq!(bfile::parse(&stdout(&out)).unwrap().terms(), Seq::from_i64s(&[1, 1, 1]).unwrap().terms());
    let out = realseq(&["gen", "bernoulli-beta", "--terms", "3"], None);
    assert_eq!(bfile::parse(&stdout(&out)).unwrap().terms(), Seq::from_i64s(&[12, 120, 252]).unwrap().terms());
}

#[test]
fn gen_usage_errors() {
    assert_eq!(code(&realseq(&["gen", "nonsense", "--terms", "3"], None)), 2);
    assert_eq!(code(&realseq(&["gen", "fiblike", "x", "--terms", "3"], None)), 2);
    assert_eq!(code(&realseq(&["gen", "fiblike", "3"], None)), 2);
    assert_eq!(code(&realseq(&["gen", "stirling", "3", "2", "--terms", "3"], None)), 2);
    assert_eq!(code(&realseq(&["gen", "linrec", "1,0", "1,1", "--terms", "3"], None)), 2);
}

#[test]
fn gen_writes_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lucas.txt");
    let out = realseq(&["gen", "fiblike", "3", "--terms", "10", "--out", path.to_str().unwrap()], None);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(bfile::render(&bfile::parse(&text).unwrap()), text);
}

#[test]
fn check_exit_codes() {
    let lucas = stdout(&realseq(&["gen", "fiblike", "3", "--terms", "50"], None));
    let out = realseq(&["check"], Some(&lucas));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "verdict: consistent-up-to-50\n");

    let fib = stdout(&realseq(&["gen", "fiblike", "1", "--terms", "20"], None));
    let out = realseq(&["check"], Some(&fib));
    assert_eq!(code(&out), 1);
    // D_3 = F_3 - F_1 = 1 is the first index not divisible by n
    assert_eq!(stdout(&out), "verdict: fails-D\nfails (D) at n=3\n");

    assert_eq!(code(&realseq(&["check"], Some("1 1\n3 2\n"))), 2);
    assert_eq!(code(&realseq(&["check"], Some("not a file\n"))), 2);
    assert_eq!(code(&realseq(&["check"], Some(""))), 2);
    assert_eq!(code(&realseq(&["check", "/nonexistent/path"], None)), 2);
    assert_eq!(code(&realseq(&["check", "--terms", "60"], Some(&lucas))), 2);
    assert_eq!(code(&realseq(&["check", "--terms", "0"], Some(&lucas))), 2);
    assert_eq!(code(&realseq(&["check"], Some("1 1\n2 -1\n"))), 2);
}

#[test]
fn check_terms_truncates() {
    let fib = stdout(&realseq(&["gen", "fiblike", "1", "--terms", "20"], None));
    let out = realseq(&["check", "--terms", "2"], Some(&fib));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "verdict: consistent-up-to-2\n");
}

#[test]
fn check_reads_file_argument() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(dir.path(), "cycle.txt", &cycle_file(30));
    assert_eq!(code(&realseq(&["check", &path], None)), 0);
}

#[test]
fn json_reports_round_trip() {
    let fib = stdout(&realseq(&["gen", "fiblike", "1", "--terms", "15"], None));
    for args in [
        vec!["check", "--json"],
        vec!["multiplier", "--json"],
        vec!["local", "--all", "--json"],
        vec!["local", "--prime", "2", "--json"],
    ] {
        let text = stdout(&realseq(&args, Some(&fib)));
        let doc = ReportDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text, "{args:?}");
    }
    let doc = ReportDocument::from_json(&stdout(&realseq(&["check", "--json"], Some(&fib)))).unwrap();
    assert_eq!(doc.horizon, 15);
    assert_eq!(doc.verdict, "fails-D");
    assert_eq!(doc.first_failure.unwrap().n, 3);
    assert_eq!(doc.records[2].dold_value, "1");
}

#[test]
fn pipe_composability() {
    // gen | sample | scale | check against the library
    let fib = realseq(&["gen", "fiblike", "1", "--terms", "900"], None);
    let sampled = realseq(&["sample", "--monomial", "2"], Some(&stdout(&fib)));
    assert_eq!(code(&sampled), 0);
    let direct = sample_recurrence(&LinearRecurrence::fibonacci(), &TimeChange::monomial(2).unwrap(), 30).unwrap();
    let piped = bfile::parse(&stdout(&sampled)).unwrap();
    assert_eq!(piped.terms(), direct.terms());

    let unscaled = realseq(&["check"], Some(&stdout(&sampled)));
    assert_eq!(code(&unscaled), 1);
    assert_eq!(stdout(&unscaled), "verdict: fails-D\nfails (D) at n=5\n");

    let scaled = realseq(&["scale", "--mult", "5"], Some(&stdout(&sampled)));
    let expected = scale(&direct, &BigUint::from(5u8)).unwrap();
    assert_eq!(bfile::parse(&stdout(&scaled)).unwrap().terms(), expected.terms());

    let json = realseq(&["check", "--json"], Some(&stdout(&scaled)));
    assert_eq!(code(&json), 0);
    let lib = check_realizable(&expected, 30).unwrap();
    assert_eq!(stdout(&json), ReportDocument::from(&lib).to_json());
}

#[test]
fn sample_with_table_and_terms() {
    let dir = tempfile::tempdir().unwrap();
    let table = write_file(dir.path(), "h.txt", "1 2\n2 4\n3 6\n4 8\n");
    let src = bfile::render(&Seq::from_i64s(&[10, 20, 30, 40, 50, 60, 70]).unwrap());
    let out = realseq(&["sample", "--table", &table], Some(&src));
    assert_eq!(code(&out), 0);
    assert_eq!(bfile::parse(&stdout(&out)).unwrap().terms(), Seq::from_i64s(&[20, 40, 60]).unwrap().terms());
    assert_eq!(code(&realseq(&["sample", "--table", &table, "--terms", "4"], Some(&src))), 2);
    let out = realseq(&["sample", "--monomial", "2", "--terms", "2"], Some(&src));
    assert_eq!(bfile::parse(&stdout(&out)).unwrap().terms(), Seq::from_i64s(&[10, 40]).unwrap().terms());
    assert_eq!(code(&realseq(&["sample"], Some(&src))), 2);
    assert_eq!(code(&realseq(&["sample", "--monomial", "0"], Some(&src))), 2);
}

#[test]
fn power_on_lucas() {
    let lucas = stdout(&realseq(&["gen", "fiblike", "3", "--terms", "12"], None));
    let out = realseq(&["power", "--poly", "0,1"], Some(&lucas));
    assert_eq!(code(&out), 0);
    let powered = bfile::parse(&stdout(&out)).unwrap();
    let l = fibonacci_like(3, 12).unwrap();
    for n in 1..=12 {
        assert_eq!(powered.term(n).unwrap(), &l.term(n).unwrap().pow(n as u32));
    }
    assert_eq!(code(&realseq(&["check"], Some(&stdout(&out)))), 0);
    assert_eq!(code(&realseq(&["power", "--poly", "a,1"], Some(&lucas))), 2);
}

#[test]
fn scale_rejects_zero() {
    assert_eq!(code(&realseq(&["scale", "--mult", "0"], Some("1 1\n"))), 2);
    assert_eq!(code(&realseq(&["scale", "--mult", "-3"], Some("1 1\n"))), 2);
}

#[test]
fn multiplier_examples() {
    let s = stdout(&realseq(&["gen", "stirling", "2", "4", "--terms", "60"], None));
    let out = realseq(&["multiplier"], Some(&s));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("C_60: 6\nsign_ok: true\n"));

    let ones = bfile::render(&Seq::from_i64s(&[1; 20]).unwrap());
    let out = realseq(&["multiplier"], Some(&ones));
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("C_20: 1\n"));

    let fib = stdout(&realseq(&["gen", "fiblike", "1", "--terms", "3375"], None));
    let cubes = stdout(&realseq(&["sample", "--monomial", "3"], Some(&fib)));
    let out = realseq(&["multiplier", "--json"], Some(&cubes));
    assert_eq!(code(&out), 1);
    let doc = ReportDocument::from_json(&stdout(&out)).unwrap();
    let m = doc.multiplier.unwrap();
    assert!(m.primes.len() >= 4, "{:?}", m.primes);
}

#[test]
fn local_examples() {
    let out = realseq(&["local", "--all"], Some(&cycle_file(10)));
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).ends_with("failing primes: 2 3\n"), "{}", stdout(&out));
    let doc = ReportDocument::from_json(&stdout(&realseq(&["local", "--all", "--json"], Some(&cycle_file(10))))).unwrap();
    let primes: Vec<u64> = doc.local_reports.unwrap().iter().map(|l| l.prime).collect();
    assert_eq!(primes, [2, 3]);

    assert_eq!(code(&realseq(&["local", "--prime", "5"], Some(&cycle_file(10)))), 0);

    let tau = stdout(&realseq(&["gen", "bernoulli-tau", "--terms", "16"], None));
    let out = realseq(&["local", "--prime", "37"], Some(&tau));
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "p=37: fails-D, fails (D) at n=16\n");

    assert_eq!(code(&realseq(&["local"], Some(&cycle_file(5)))), 2);
    assert_eq!(code(&realseq(&["local", "--prime", "4"], Some(&cycle_file(5)))), 2);
    assert_eq!(code(&realseq(&["local", "--prime", "2", "--all"], Some(&cycle_file(5)))), 2);
}

#[test]
fn realize_examples() {
    let out = realseq(&["realize"], Some(&cycle_file(5)));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{\"1\":1,\"5\":1}\n");

    let fib = stdout(&realseq(&["gen", "fiblike", "1", "--terms", "10"], None));
    let out = realseq(&["realize"], Some(&fib));
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());

    let ones = bfile::render(&Seq::from_i64s(&[1; 12]).unwrap());
    assert_eq!(stdout(&realseq(&["realize"], Some(&ones))), "{\"1\":1}\n");
}

#[test]
fn realize_explicit_and_cap() {
    let out = realseq(&["realize", "--explicit"], Some(&cycle_file(5)));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{\"cycle_type\":{\"1\":1,\"5\":1},\"permutation\":[1,3,4,5,6,2]}\n");

    assert_eq!(code(&realseq(&["realize", "--explicit", "5"], Some(&cycle_file(5)))), 2);
    let capped = realseq_env(&["realize", "--explicit"], Some(&cycle_file(5)), &[("REALIZE_POINT_CAP", "5")]);
    assert_eq!(code(&capped), 2);
    let flag_wins = realseq_env(&["realize", "--explicit", "6"], Some(&cycle_file(5)), &[("REALIZE_POINT_CAP", "5")]);
    assert_eq!(code(&flag_wins), 0);
    let bad = realseq_env(&["realize", "--explicit"], Some(&cycle_file(5)), &[("REALIZE_POINT_CAP", "lots")]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn orbits_output() {
    let out = realseq(&["orbits"], Some(&cycle_file(5)));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1 1\n2 0\n3 0\n4 0\n5 1\n");
    let fib = stdout(&realseq(&["gen", "fiblike", "1", "--terms", "3"], None));
    let out = realseq(&["orbits", "--json"], Some(&fib));
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["orbits"], serde_json::json!(["1", "0", "1/3"]));
}

#[test]
fn irregular_examples() {
    let out = realseq(&["irregular", "--upto", "36"], None);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let out = realseq(&["irregular", "--upto", "60"], None);
    assert_eq!(stdout(&out), "37\n59\n");
    assert_eq!(stdout(&realseq(&["irregular", "--upto", "60", "--json"], None)), "[37,59]\n");
    assert_eq!(code(&realseq(&["irregular", "--upto", "4"], None)), 2);
}
