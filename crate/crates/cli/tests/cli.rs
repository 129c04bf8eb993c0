use std::io::Write;
use std::process::{Command, Stdio};

fn ppc_with_stdin(args: &[&str], stdin: &str) -> (String, String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ppc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("ppc runs");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(stdin.as_bytes())
        .expect("stdin accepts input");
    let out = child.wait_with_output().expect("ppc finishes");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn ppc(args: &[&str]) -> (String, String, i32) {
    ppc_with_stdin(args, "")
}

#[test]
fn normalize_prints_the_elim_trace() {
    let (out, _, code) = ppc(&[
        "normalize",
        "--trace",
        r"(\[x] ^x . (\[y] x ^y . y)) (\[z] ^z . (^c z) ^n)",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "0 (\\[x] ^x . \\[y] x ^y . y) (\\[z] ^z . ^c z ^n)\n\
         1 [] \\[y] (\\[z] ^z . ^c z ^n) ^y . y\n\
         2 [p] \\[y] ^c ^y ^n . y\n\
         status normal steps 2\n"
    );
    let (traced, _, _) = ppc(&[
        "trace",
        r"(\[x] ^x . (\[y] x ^y . y)) (\[z] ^z . (^c z) ^n)",
    ]);
    assert_eq!(traced, out);
}

#[test]
fn normalize_reports_step_limit_and_blocked() {
    let omega = r"(\[x] ^x . x x) (\[x] ^x . x x)";
    let (out, _, code) = ppc(&["normalize", "--max-steps", "3", omega]);
    assert_eq!(code, 0);
    assert!(out.ends_with("status step_limit steps 3\n"), "{out}");
    let (out, _, _) = ppc(&["normalize", r"(\[x] ^c ^x . x) y"]);
    assert_eq!(out, "(\\[x] ^c ^x . x) y\nstatus blocked steps 0\n");
}

#[test]
fn translate_both_directions() {
    let (out, _, code) = ppc(&["translate", "--to", "indexed", r"(\[x] ^y ^x . x) (^y z)"]);
    assert_eq!(
        (out.as_str(), code),
        ("(\\{1} ^2.1 ^1.1 . 1.1) (^1.1 2.1)\n", 0)
    );
    let (out, _, code) = ppc(&["translate", "--to", "named", r"\{2} ^1.2 ^2.1 . 1.1 2.1"]);
    assert_eq!((out.as_str(), code), ("\\[v1,v2] ^v2 ^x1 . v1 x1\n", 0));
    let (out, _, code) = ppc(&[
        "translate",
        "--to",
        "named",
        "--vtable",
        r#"[["y"],["z"]]"#,
        "--mtable",
        r#"[["y"],["z"]]"#,
        r"(\{1} ^2.1 ^1.1 . 1.1) (^1.1 2.1)",
    ]);
    assert_eq!((out.as_str(), code), ("(\\[v1] ^y ^v1 . v1) (^y z)\n", 0));
}

#[test]
fn translation_lookup_failure_is_an_engine_error() {
    let (_, err, code) = ppc(&["translate", "--to", "indexed", "--vtable", "[]", "x"]);
    assert_eq!(code, 3, "{err}");
    let (_, _, code) = ppc(&["translate", "--to", "named", r"\{1} ^1.2 . 1.1"]);
    assert_eq!(code, 3);
}

#[test]
fn equivalences_exit_two_when_false() {
    assert_eq!(
        ppc(&["eq-mod2", r"\{2} ^1.1 ^1.2 . 1.1", r"\{2} ^1.2 ^1.1 . 1.2"]),
        ("true\n".into(), String::new(), 0)
    );
    assert_eq!(
        ppc(&["eq-mod2", r"\{2} ^1.1 ^1.2 . 1.1", r"\{2} ^1.2 ^1.1 . 1.1"]).2,
        2
    );
    assert_eq!(
        ppc(&["alpha-eq", r"\[x] ^x . x", r"\[y] ^y . y"]).0,
        "true\n"
    );
    assert_eq!(ppc(&["alpha-eq", r"\[x] ^x . x", r"\[y] ^y . ^y"]).2, 2);
}

#[test]
fn match_prints_all_three_outcomes() {
    let run = |args: &[&str]| ppc(args).0;
    assert_eq!(
        run(&["match", "--theta", "x,y", "^x ^y", r"^c (\[z] ^z . z)"]),
        "Success {x := ^c, y := \\[z] ^z . z}\n"
    );
    assert_eq!(run(&["match", "--theta", "x", "^c ^x", "^d y"]), "Fail\n");
    assert_eq!(run(&["match", "--theta", "x", "^c ^x", "y"]), "Wait\n");
    assert_eq!(
        run(&["match", "--arity", "1", "^2.1 ^1.1", "^1.1 2.1"]),
        "Success {1.1 := 2.1}\n"
    );
    assert_eq!(run(&["match", "--arity", "2", "^1.1", "^1.1"]), "Fail\n");
    assert_eq!(ppc(&["match", "--theta", "x,x", "^x", "y"]).2, 1);
}

#[test]
fn step_at_a_position() {
    let t = r"(\[x] ^x . x) ((\[y] ^y . y) ^c)";
    assert_eq!(ppc(&["step", "--pos", "a", t]).0, "(\\[x] ^x . x) ^c\n");
    assert_eq!(ppc(&["step", "--pos", "", t]).0, "(\\[y] ^y . y) ^c\n");
    assert_eq!(ppc(&["step", t]).0, "(\\[y] ^y . y) ^c\n");
    assert_eq!(ppc(&["step", "--pos", "f", t]).2, 3);
    assert_eq!(ppc(&["step", "--pos", "q", t]).2, 1);
}

#[test]
fn free_symbols_and_well_formedness() {
    assert_eq!(ppc(&["fv", r"\[x] ^x . x z y"]).0, "y z\n");
    assert_eq!(ppc(&["fm", r"\[x] ^x ^c . x"]).0, "c\n");
    assert_eq!(ppc(&["fv", r"\{1} ^1.1 . 1.1 3.1"]).0, "2.1\n");
    assert_eq!(ppc(&["wf", r"\{2} ^1.1 ^1.2 . 1.2"]).2, 0);
    let (out, _, code) = ppc(&["wf", r"\{1} ^1.1 . 1.2"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("false: "), "{out}");
}

#[test]
fn terms_come_from_stdin_and_json() {
    let (out, _, code) = ppc_with_stdin(&["parse"], "-- elim\n\\[x] ^x . (\\[y] x ^y . y)\n");
    assert_eq!((out.as_str(), code), ("\\[x] ^x . \\[y] x ^y . y\n", 0));
    let (json, _, _) = ppc(&["parse", "--json", r"\{2} ^1.2 ^1.1 . 1.1 (^2.1 4.1)"]);
    let (back, _, code) = ppc_with_stdin(&["parse", "-"], &json);
    assert_eq!(
        (back.as_str(), code),
        ("\\{2} ^1.2 ^1.1 . 1.1 (^2.1 4.1)\n", 0)
    );
}

#[test]
fn usage_and_parse_errors_exit_one() {
    let (_, err, code) = ppc(&["parse", r"\[x] ^x"]);
    assert_eq!(code, 1);
    assert!(err.contains("1:8"), "{err}");
    assert_eq!(ppc(&["parse", r"\[x,x] ^x . x"]).2, 1);
    assert_eq!(ppc(&["parse", "--side", "named", "1.1"]).2, 1);
    assert_eq!(ppc(&["alpha-eq", "1.1", "1.1"]).2, 1);
    assert_eq!(ppc(&["frobnicate"]).2, 1);
    assert_eq!(ppc(&["fuzz", "--suite", "bisim", "--jobs", "0"]).2, 1);
    assert_eq!(ppc(&["--help"]).2, 0);
}

#[test]
fn fuzz_output_is_independent_of_workers() {
    for suite in ["bisim", "lemmas", "confluence"] {
        let args = |jobs: &'static str| {
            ppc(&[
                "fuzz", "--suite", suite, "--seed", "3", "--count", "40", "--jobs", jobs, "--json",
            ])
        };
        let (one, _, code) = args("1");
        assert_eq!(code, 0, "{one}");
        assert_eq!(args("4").0, one);
        assert_eq!(args("1").0, one);
    }
    let (text, _, code) = ppc(&["fuzz", "--suite", "bisim", "--count", "10"]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        "suite bisim seed 0 count 10\nsamples 10 passed 10 violations 0 budget_exceeded 0\n"
    );
}
