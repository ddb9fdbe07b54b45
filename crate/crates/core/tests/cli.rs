use std::io::Write;
use std::process::{Command, Output, Stdio};

fn finspace(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_finspace"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const MODEL: &str = "\
space S { points 2; opens {} {1} {0 1} }
space P { points 1; opens {} {0} }
space I { points 2; opens {} {0 1} }
map m : P -> S { 0->0 }
map c : I -> P { 0->0 1->0 }
context T = builtin(top0)
";

#[test]
fn check_describes_the_model() {
    let o = finspace(&["check", "-"], Some(MODEL));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("space S { points 2; opens {} {1} {0 1} }"));
    assert!(out.contains("map m : P -> S { 0->0 }\n  injective=true surjective=false embedding=true iso=false"));
    assert!(out.contains("context T = builtin(top0)\n  members=S,P"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let o = finspace(&["check", "-"], Some("space B { points 2; opens {} {0} }\n"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 1, column 1"), "{err}");
}

#[test]
fn pushout_of_a_point_along_itself() {
    let o = finspace(&["pushout", "-", "m", "m"], Some(MODEL));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("space P { points 3; opens {} {1} {2} {1 2} {0 1 2} }\n"));
}

#[test]
fn injectivity_of_s_along_a_collapse() {
    let o = finspace(&["inj", "-", "S", "c"], Some(MODEL));
    assert_eq!(stdout(&o), "inj space=S map=c injective=true orthogonal=true\n");
}

#[test]
fn verify_exit_codes() {
    let o = finspace(&["verify", "--suite", "reg-dense-is-epi", "--n-max", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("summary suite=reg-dense-is-epi pass=1 fail=0 skipped=0\n"), "{out}");
    let o = finspace(&["verify", "--suite", "no-such-suite"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = finspace(&["verify"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_records_format_is_line_json() {
    let o = finspace(&["verify", "--suite", "monad-laws-point", "--n-max", "1", "--format", "records"], None);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        assert!(line.starts_with('{') && line.ends_with('}'), "{line}");
    }
}

#[test]
fn budget_errors_exit_three() {
    let o = finspace(&["monad", "-", "S", "--n", "3"], Some(MODEL));
    assert_eq!(o.status.code(), Some(3));
    let o = finspace(&["monad", "-", "S", "--n", "1", "--budget", "1"], Some(MODEL));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn export_dot_of_sierpinski() {
    let o = finspace(&["export-dot", "-", "S"], Some(MODEL));
    let out = stdout(&o);
    assert!(out.starts_with("digraph \"S\" {"));
    assert_eq!(out.matches("->").count(), 1);
    assert!(out.contains("  0 -> 1;\n"));
}

#[test]
fn list_names_every_suite() {
    let out = stdout(&finspace(&["verify", "--list"], None));
    assert_eq!(out.lines().count(), finspace::workbench::SUITES.len());
}
