use std::process::{Command, Output};

fn nilq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn qcomm_g2_example() {
    let o = nilq(&["qcomm", "--type", "G2", "--word", "2,1,2,1,2,1", "--i", "2", "--j", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[2]_q * E[b4]");
}

#[test]
fn quantize_a1_is_single_generator() {
    let o = nilq(&["quantize", "--type", "A1", "--order", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pieces = v["result"]["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 1);
    let comps = pieces[0]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["basis"], serde_json::json!(["E[1]"]));
}

#[test]
fn appendix_json_rows() {
    let o = nilq(&["appendix", "--format", "json", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r["multiplicity"] == 2));
}

#[test]
fn paper_g2_normalization_gives_unit_scalars() {
    let o = nilq(&["quantize", "--type", "G2", "--order", "2,1", "--normalization", "paper-g2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("q^4*[2]_q * E[b4] + (-q^4 + 1) * E[b2] E[b6]"), "{text}");
    assert_eq!(text.matches("reference scalar 1\n").count(), 4);
}

#[test]
fn output_is_deterministic() {
    let args = ["braiding", "--type", "G2", "--order", "2,1", "--piece", "2", "--format", "json"];
    let a = nilq(&args);
    let b = nilq(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn checks_exit_zero_on_pass() {
    for args in [
        &["coideal-check", "--type", "B2", "--order", "2,1"][..],
        &["schubert", "--type", "G2", "--subset", "2"],
        &["tangent", "--type", "G2", "--order", "2,1"],
        &["shuffle", "--i", "1", "--j", "2", "--type", "A2", "--order", "1,2", "--piece", "2"],
        &["tensor-mult", "--type", "A2", "--lambda", "1,0", "--mu", "0,1"],
        &["pbw", "--type", "G2", "--weight", "3,2"],
    ] {
        let o = nilq(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["qcomm", "--type", "G2", "--i", "0", "--j", "3"],
        &["quantize", "--type", "X9"],
        &["quantize", "--type", "A2", "--order", "1,1"],
        &["quantize", "--type", "A2", "--normalization", "paper-g2"],
        &["roots"],
    ] {
        assert_eq!(nilq(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn simple_commands() {
    let o = nilq(&["enumerate", "--type", "G2", "--word", "2,1,2,1,2,1"]);
    let text = stdout(&o);
    assert!(text.contains("b1 = a2\n") && text.contains("b6 = a1\n"), "{text}");
    let o = nilq(&["factorize", "--type", "A3", "--subset", "1,2"]);
    assert!(stdout(&o).contains("lengths 3 + 3 = 6"));
    let o = nilq(&["roots", "--type", "E8"]);
    assert!(stdout(&o).contains("120 positive roots"));
    let o = nilq(&["pbw", "--type", "A2", "--element", "E[1,2] + -q * E[2,1]"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
