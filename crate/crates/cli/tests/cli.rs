use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn mpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpc")).args(args).output().expect("run mpc")
}

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "specs", &format!("{name}.spec")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn zeros(n: usize) -> String {
    vec!["0"; n].join(",")
}

#[test]
fn encode_zero_message() {
    let o = mpc(&["encode", &spec("mpc_30_14"), &zeros(14)]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("# n=30 k=14 d=12 tau=7"));
    assert_eq!(lines.next(), Some(zeros(30).as_str()));
}

#[test]
fn malformed_token_exits_2() {
    let o = mpc(&["encode", &spec("mpc_30_14"), "zz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn singular_matrix_exits_3() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        "field p=2 m=3\nconstituent rs k=3\nconstituent rs k=2\nmatrix rows=2 cols=2\nrow 1, 1\nrow 1, 1\n"
    )
    .unwrap();
    let o = mpc(&["info", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(mpc(&["info", "/nonexistent/x.spec"]).status.code(), Some(2));
}

#[test]
fn worked_example_decodes_to_zero() {
    let word = "a^2*x + a*x^5 + a^5*x^6 + a^14*x^13;a^5*x^2 + a^7*x^6 + a^8*x^10";
    let o = mpc(&["decode", &spec("mpc_30_14"), "--poly", word]);
    assert!(o.status.success());
    let out = stdout(&o);
    let words: Vec<_> = out.lines().skip(1).collect();
    assert_eq!(words, vec![format!("{} distance=7", zeros(30))]);
}

#[test]
fn encode_then_decode_roundtrip() {
    for name in ["mpc_30_14", "qc_30_8", "qc_30_5", "qc_30_21", "gf8_mpc", "gf8_unit"] {
        let info = stdout(&mpc(&["info", &spec(name)]));
        let k: usize = info
            .lines()
            .next()
            .and_then(|h| h.split_whitespace().find_map(|t| t.strip_prefix("k=")))
            .and_then(|k| k.parse().ok())
            .expect("k in header");
        let msg = (0..k).map(|i| if i % 3 == 0 { "a^2" } else { "1" }).collect::<Vec<_>>().join(",");
        let enc = stdout(&mpc(&["encode", &spec(name), &msg]));
        let cw = enc.lines().nth(1).unwrap().to_string();
        let dec = stdout(&mpc(&["decode", &spec(name), &cw]));
        assert!(dec.lines().any(|l| l == format!("{cw} distance=0")), "{name}: {dec}");
    }
}

#[test]
fn far_word_prints_none() {
    let word = "a,a,a,a,a,a,a,1,0,0,0,0,0,0";
    let o = mpc(&["decode", &spec("gf8_mpc"), word, "--tau", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().nth(1), Some("NONE"));
}

#[test]
fn gs_params_radius() {
    let out = stdout(&mpc(&["gs-params", "15", "10", "4"]));
    assert!(out.lines().any(|l| l.starts_with("tau=3 ")), "{out}");
}

#[test]
fn good_set_probability_half() {
    let out = stdout(&mpc(&["analyze", "good-set-prob", "15", "2", "2", "7", "3"]));
    assert!(out.contains("probability=1/2"), "{out}");
}

#[test]
fn bundled_examples_pass() {
    let o = mpc(&["examples"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().last(), Some("ALL PASS"));
}

#[test]
fn simulate_is_deterministic() {
    let args = ["simulate", &spec("gf8_mpc"), "--weight", "5", "--trials", "20", "--seed", "3"];
    let a = mpc(&args);
    let b = mpc(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}
