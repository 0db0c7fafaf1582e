//! End-to-end tests of the binary: frozen output bytes, exit codes,
//! JSON well-formedness, and determinism.

use std::process::Output;

use cantor_core::Rational;

fn kit(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_cantor-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn expand_text_output() {
    let out = kit(&["expand", "--q", "const:2", "--x", "1/3", "--depth", "6"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "digits: 0,1,0,1,0,1\ntail: 1/3\npartial: 21/64\npartial \u{2248} 0.32812500\n"
    );
}

#[test]
fn expand_json_output() {
    let out = kit(&["expand", "--q", "const:2", "--x", "1/3", "--depth", "6", "--json"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        concat!(
            "{\"schema\":\"cantor-kit/1\",\"q\":\"const:2\",\"x\":\"1/3\",\"depth\":6,",
            "\"digits\":[0,1,0,1,0,1],\"tail\":{\"remainder\":\"1/3\"},\"partial\":\"21/64\"}\n"
        )
    );
}

#[test]
fn expand_rejects_out_of_range_input() {
    let out = kit(&["expand", "--q", "const:2", "--x", "3/2"]);
    assert_eq!(code_of(&out), 1);
    assert_eq!(stdout_of(&out), "");
    assert_eq!(stderr_of(&out), "error: x must lie in [0,1)\n");
}

#[test]
fn trace_json_output() {
    let out = kit(&["trace", "--q", "const:2", "--x", "1/3", "--horizon", "4", "--json"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        concat!(
            "{\"schema\":\"cantor-kit/1\",\"q\":\"const:2\",\"x\":\"1/3\",\"horizon\":4,",
            "\"entries\":[",
            "{\"k\":0,\"value\":\"1/3\",\"integer_component\":\"0\"},",
            "{\"k\":1,\"value\":\"2/3\",\"integer_component\":\"0\"},",
            "{\"k\":2,\"value\":\"1/3\",\"integer_component\":\"0\"},",
            "{\"k\":3,\"value\":\"2/3\",\"integer_component\":\"1\"},",
            "{\"k\":4,\"value\":\"1/3\",\"integer_component\":\"2\"}",
            "],\"collision\":{\"m1\":1,\"m2\":3,\"value\":\"2/3\",\"reconstructed\":\"1/3\"}}\n"
        )
    );
}

#[test]
fn trace_text_output() {
    let out = kit(&["trace", "--q", "const:2", "--x", "1/3", "--horizon", "3"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "k=0 value=1/3 int=0\nk=1 value=2/3 int=0\nk=2 value=1/3 int=0\nk=3 value=2/3 int=1\n\
         collision: m1=1 m2=3 value=2/3\nreconstructed: 1/3\n"
    );
}

#[test]
fn trace_may_find_no_collision() {
    // the orbit of 1/7 under x10 has period 6; three entries stay distinct
    let out = kit(&["trace", "--q", "const:10", "--x", "1/7", "--horizon", "2"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).ends_with("collision: none\n"));
    let out = kit(&["trace", "--q", "const:10", "--x", "1/7", "--horizon", "2", "--json"]);
    let payload: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert!(payload["collision"].is_null());
}

#[test]
fn eval_sums_digit_strings() {
    let out = kit(&["eval", "--q", "rule:succ", "--base", "0,2"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out), "value: 1/3\nvalue \u{2248} 0.33333333\n");

    // explicit marker, ASCII ellipsis, explicit depth
    let out = kit(&["eval", "--q", "rule:succ", "--base", "0,1,...max", "--depth", "4", "--json"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        concat!(
            "{\"schema\":\"cantor-kit/1\",\"q\":\"rule:succ\",\"digits\":[0,1],",
            "\"tail\":\"max\",\"depth\":4,\"value\":\"13/40\"}\n"
        )
    );
}

#[test]
fn eval_rejects_digits_above_their_base() {
    let out = kit(&["eval", "--q", "const:2", "--base", "0,2"]);
    assert_eq!(code_of(&out), 1);
    assert_eq!(
        stderr_of(&out),
        "error: digit 2 at position 2 is out of range for base 2\n"
    );
}

#[test]
fn shift_and_gshift() {
    let out = kit(&["shift", "--q", "const:2", "--x", "3/4", "--n", "1"]);
    assert_eq!(stdout_of(&out), "value: 1/2\nvalue \u{2248} 0.50000000\n");

    let out = kit(&["shift", "--q", "const:2", "--x", "3/4", "--n", "1", "--json"]);
    assert_eq!(
        stdout_of(&out),
        "{\"schema\":\"cantor-kit/1\",\"q\":\"const:2\",\"x\":\"3/4\",\"n\":1,\"value\":\"1/2\"}\n"
    );

    let out = kit(&["gshift", "--q", "cycle:2,3", "--x", "2/3", "--m", "2", "--json"]);
    assert_eq!(
        stdout_of(&out),
        "{\"schema\":\"cantor-kit/1\",\"q\":\"cycle:2,3\",\"x\":\"2/3\",\"m\":2,\"value\":\"1/2\"}\n"
    );

    let out = kit(&["gshift", "--q", "cycle:2,3", "--x", "2/3", "--m", "0"]);
    assert_eq!(code_of(&out), 1);
    assert_eq!(stderr_of(&out), "error: m must be at least 1\n");
}

#[test]
fn verify_reports_every_identity() {
    let out = kit(&["verify", "--q", "cycle:2,3", "--x", "2/3", "--depth", "8"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "generalized-shift-identity: pass (8 comparisons)\n\
         shift-recurrence: pass (7 comparisons)\n\
         digit-recovery: pass (8 comparisons)\n\
         floor-digit: pass (8 comparisons)\n\
         remainder-convergence: pass (9 comparisons)\n\
         collision-round-trip: pass (1 comparison)\n"
    );

    let out = kit(&["verify", "--q", "rule:succ", "--x", "22/45", "--json"]);
    assert_eq!(code_of(&out), 0);
    let payload: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(payload["passed"], serde_json::json!(true));
    assert_eq!(payload["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn cylinder_intervals_and_membership() {
    let out = kit(&["cylinder", "--q", "rule:succ", "--base", "0,2", "--x", "5/12"]);
    assert_eq!(
        stdout_of(&out),
        "lo: 1/3\nhi: 1/2\nwidth: 1/6\ncontains 5/12: true\n"
    );

    let out = kit(&["cylinder", "--q", "const:2", "--base", "", "--json"]);
    assert_eq!(
        stdout_of(&out),
        concat!(
            "{\"schema\":\"cantor-kit/1\",\"q\":\"const:2\",\"base\":[],",
            "\"lo\":\"0\",\"hi\":\"1\",\"width\":\"1\"}\n"
        )
    );

    let out = kit(&["cylinder", "--q", "const:2", "--base", "1", "--x", "1/4", "--json"]);
    let payload: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(payload["contains"], serde_json::json!(false));
}

#[test]
fn dual_representations() {
    let out = kit(&["dual", "--q", "const:10", "--base", "5"]);
    assert_eq!(stdout_of(&out), "digits: 4\ntail: max\nvalue: 1/2\n");

    let out = kit(&["dual", "--q", "rule:succ", "--base", "0,2", "--json"]);
    assert_eq!(
        stdout_of(&out),
        concat!(
            "{\"schema\":\"cantor-kit/1\",\"q\":\"rule:succ\",",
            "\"input\":{\"digits\":[0,2],\"tail\":\"zeros\"},",
            "\"dual\":{\"digits\":[0,1],\"tail\":\"max\"},\"value\":\"1/3\"}\n"
        )
    );

    let out = kit(&["dual", "--q", "const:10", "--base", "0,0"]);
    assert_eq!(code_of(&out), 1);
    assert_eq!(stderr_of(&out), "error: zero has no dual representation\n");
}

#[test]
fn q_spec_can_come_from_a_file() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("q-spec.txt");
    std::fs::write(&path, "cycle:2,3\n").unwrap();
    let file_arg = format!("@{}", path.display());
    let from_file = kit(&["expand", "--q", &file_arg, "--x", "5/6", "--depth", "2"]);
    let direct = kit(&["expand", "--q", "cycle:2,3", "--x", "5/6", "--depth", "2"]);
    assert_eq!(code_of(&from_file), 0);
    assert_eq!(stdout_of(&from_file), stdout_of(&direct));

    let missing = kit(&["expand", "--q", "@/nonexistent/q.txt", "--x", "0", "--depth", "1"]);
    assert_eq!(code_of(&missing), 1);
    assert!(stderr_of(&missing).starts_with("error: cannot read /nonexistent/q.txt"));
}

#[test]
fn usage_errors_exit_two() {
    let out = kit(&["expand", "--q", "const:2"]);
    assert_eq!(code_of(&out), 2);
    let out = kit(&["expand", "--q", "const:2", "--x", "1/3", "--bogus"]);
    assert_eq!(code_of(&out), 2);
    let out = kit(&["frobnicate"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn malformed_inputs_exit_one() {
    let out = kit(&["expand", "--q", "const:1", "--x", "1/3", "--depth", "2"]);
    assert_eq!(code_of(&out), 1);
    assert_eq!(
        stderr_of(&out),
        "error: invalid base-sequence spec: base 1 at byte 6 is below the minimum 2\n"
    );

    let out = kit(&["expand", "--q", "const:2", "--x", "a/b", "--depth", "2"]);
    assert_eq!(code_of(&out), 1);
    assert_eq!(stderr_of(&out), "error: invalid rational: invalid numerator\n");

    let out = kit(&["expand", "--q", "const:2", "--x", "1/0", "--depth", "2"]);
    assert_eq!(code_of(&out), 1);
    assert_eq!(
        stderr_of(&out),
        "error: invalid rational: denominator must be positive, got 0\n"
    );
}

#[test]
fn json_rationals_reparse_to_equal_values() {
    let out = kit(&["trace", "--q", "cycle:3,4", "--x", "7/9", "--horizon", "6", "--json"]);
    let payload: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    for entry in payload["entries"].as_array().unwrap() {
        let text = entry["value"].as_str().unwrap();
        let value: Rational = text.parse().unwrap();
        assert_eq!(value.to_string(), text);
    }
    let collision = &payload["collision"];
    let rebuilt: Rational = collision["reconstructed"].as_str().unwrap().parse().unwrap();
    assert_eq!(rebuilt.to_string(), "7/9");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["expand", "--q", "rule:succ", "--x", "355/452", "--depth", "9"],
        vec!["trace", "--q", "cycle:2,5", "--x", "13/21", "--horizon", "12", "--json"],
        vec!["verify", "--q", "const:3", "--x", "4/7", "--depth", "10", "--json"],
    ] {
        let first = kit(&args);
        let second = kit(&args);
        assert_eq!(stdout_of(&first), stdout_of(&second));
        assert_eq!(code_of(&first), code_of(&second));
    }
}
