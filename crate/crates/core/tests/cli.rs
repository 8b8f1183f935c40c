use std::io::Write;
use std::process::{Command, Stdio};

use latpair::classification::make_type;
use latpair::json::pair_to_value;
use latpair::tamagawa::elliptic_data;
use serde_json::{json, Value};

fn latpair(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_latpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (out.status.code().unwrap(), v)
}

#[test]
fn nonsplit_multiplicative_over_ramified_quadratic() {
    let input = elliptic_data(1, false).to_json().to_string();
    let (code, v) = latpair(&["tamagawa", &input, "--e", "2", "--f", "1"], None);
    assert_eq!(code, 0);
    assert_eq!(v["c"], json!(2));
    let (_, v) = latpair(&["tamagawa", &input, "--f", "2"], None);
    assert_eq!(v["c"], json!(1));
}

#[test]
fn towers_report_every_level() {
    let input = elliptic_data(3, true).to_json().to_string();
    let (code, v) = latpair(&["tamagawa", &input, "--tower", "1,2,4"], None);
    assert_eq!(code, 0);
    let cs: Vec<i64> = v["levels"].as_array().unwrap().iter().map(|l| l["c"].as_i64().unwrap()).collect();
    assert_eq!(cs, vec![3, 6, 12]);
    assert_eq!(v["stabilized"]["r_inf"], json!(1));
}

#[test]
fn genus2_examples() {
    let (code, v) = latpair(&["genus2", r#"{"p":3,"f":[36,0,76,0,17,0,1]}"#], None);
    assert_eq!(code, 0);
    assert_eq!(v["type"], json!("1.2B:5,1"));
    assert_eq!(v["tamagawa"], json!(5));
    let (code, v) = latpair(&["genus2", "-", "--e", "2", "--f", "4"], Some(r#"{"p": 3, "f": [64, 64, 20, 20, 1, 1]}"#));
    assert_eq!(code, 0);
    assert_eq!(v["type"], json!("4.4:2"));
    assert_eq!(v["toric_dim"], json!(2));
    assert_eq!(v["valuations"], json!([2]));
    assert_eq!(v["extension"]["tamagawa"], json!(16));
}

#[test]
fn classify_and_invariants_from_a_file() {
    let dir = std::env::temp_dir().join(format!("latpair-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    std::fs::write(&path, pair_to_value(&make_type(&"2.2:1,3".parse().unwrap())).to_string()).unwrap();
    let path = path.to_str().unwrap();
    let (code, v) = latpair(&["classify", path], None);
    assert_eq!(code, 0);
    assert_eq!(v, json!({ "type": "2.2:1,3" }));
    let (code, v) = latpair(&["invariants", path], None);
    assert_eq!(code, 0);
    assert_eq!(v["c"], json!(1));
    assert_eq!(v["d"], json!(2));
    assert_eq!(v["r"], json!(0));
    let (_, pretty) = latpair(&["invariants", path, "--pretty"], None);
    assert_eq!(pretty, v);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    let (code, v) = latpair(&["classify", "{\"lambda\":"], None);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
    let (code, _) = latpair(&["classify", r#"{"lambda": [[1]]}"#], None);
    assert_eq!(code, 2);
    let (code, _) = latpair(&["genus2", r#"{"p":5,"f":[5,0,0,1,0,0,1]}"#], None);
    assert_eq!(code, 3);
    let (code, _) = latpair(&["genus2", r#"{"p":2,"f":[1,0,0,0,0,1]}"#], None);
    assert_eq!(code, 3);
    let input = elliptic_data(1, false).to_json().to_string();
    let (code, _) = latpair(&["tamagawa", &input, "--e", "0"], None);
    assert_eq!(code, 2);
}

#[test]
fn verify_is_deterministic() {
    let (code, v) = latpair(&["verify", "--cases", "0"], None);
    assert_eq!(code, 0);
    assert_eq!(v["cases"], json!(0));
    let (code, a) = latpair(&["verify", "--cases", "12", "--seed", "9"], None);
    assert_eq!(code, 0);
    assert_eq!(a["seed"], json!(9));
    assert_eq!(a["passed"], json!(12));
    let (_, b) = latpair(&["verify", "--cases", "12", "--seed", "9"], None);
    assert_eq!(a.to_string(), b.to_string());
}
