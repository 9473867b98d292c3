use std::process::{Command, Output};

use anyhow::Result;
use serde_json::Value;

fn ybl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybl")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Result<Value> {
    Ok(serde_json::from_slice(&o.stdout)?)
}

#[test]
fn symbolic_two_point_verify_passes() -> Result<()> {
    let o = ybl(&["verify", "--N", "2", "--n", "2", "--lambda", "1,1", "--suite", "all", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o)?;
    assert_eq!(v["schema"], "ybl/1");
    assert_eq!(v["status"], "pass");
    let suites: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    let mut sorted = suites.clone();
    sorted.sort();
    assert_eq!(suites, sorted);
    assert_eq!(suites.len(), 11);
    Ok(())
}

#[test]
fn specialized_xi_suite() -> Result<()> {
    let o = ybl(&["verify", "--suite", "xi", "--n", "4", "--lambda", "2,1,1", "--spec-z", "0,1,5,17", "--h", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o)?;
    assert_eq!(v["config"]["z"][3], "17/1");
    assert!(v["suites"][0]["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
    Ok(())
}

#[test]
fn specialized_panel_all_suites() {
    let o = ybl(&["verify", "--lambda", "2,1", "--spec-z", "0,1,5", "--h", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).ends_with("overall: pass\n"));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["verify", "--lambda", "1,1", "--symbolic", "--suite", ""][..],
        &["verify", "--lambda", "1,1", "--symbolic", "--suite", "nope"],
        &["verify", "--lambda", "1,1", "--n", "3", "--symbolic"],
        &["verify", "--lambda", "1,1", "--spec-z", "0", "--h", "1"],
        &["verify", "--lambda", "1,1", "--spec-z", "0,0", "--h", "1"],
        &["emit", "nothing", "--lambda", "1,1", "--symbolic"],
        &["emit", "mu", "minus", "γ_{1,2}", "--lambda", "2", "--symbolic"],
    ] {
        assert_eq!(ybl(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn emit_mu() -> Result<()> {
    let o = ybl(&["emit", "mu", "minus", "γ_{1,1}", "--lambda", "1,1", "--symbolic"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o)?;
    assert_eq!(v["basis"], serde_json::json!(["12", "21"]));
    assert_eq!(v["matrix"], serde_json::json!([["z1", "0/1"], ["h", "z2"]]));
    let plus = json(&ybl(&["emit", "mu", "plus", "e1_1", "--lambda", "1,1", "--symbolic"]))?;
    assert_eq!(plus["matrix"], serde_json::json!([["z1", "h"], ["0/1", "z2"]]));
    Ok(())
}

#[test]
fn emit_wronskian_and_pairings() -> Result<()> {
    let w = json(&ybl(&["emit", "wronskian", "--lambda", "1,1", "--symbolic"]))?;
    assert_eq!(w["relations"][1], "z1 + z2 - e1_1 - e2_1 = 0");
    let p = json(&ybl(&["emit", "pairing", "angle", "1", "1", "--lambda", "1,1", "--symbolic"]))?;
    assert_eq!(p["value"], "2/(z1^2 - 2*z1*z2 + z2^2 - h^2)");
    let p = json(&ybl(&["emit", "pairing", "round", "1", "1", "--lambda", "1,1", "--spec-z", "0,1", "--h", "3", "--q", "1/2,1/3"]))?;
    assert_eq!(p["value"], "0/1");
    Ok(())
}

#[test]
fn emit_text_tables() {
    let o = ybl(&["emit", "bethe-matrix", "1", "1", "--lambda", "1,1", "--symbolic", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "    12       21\n12  q1 + q2  0/1\n21  0/1      q1 + q2\n");
}

#[test]
fn output_is_deterministic() -> Result<()> {
    let dir = std::env::temp_dir().join(format!("ybl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let args = ["verify", "--lambda", "1,1", "--symbolic", "--suite", "all"];
    let mut bodies = Vec::new();
    for k in 0..2 {
        let p = dir.join(format!("run{k}.json"));
        let mut a = args.to_vec();
        let ps = p.to_string_lossy().to_string();
        a.extend(["--out", &ps]);
        assert_eq!(ybl(&a).status.code(), Some(0));
        bodies.push(std::fs::read(&p)?);
    }
    std::fs::remove_dir_all(&dir)?;
    assert_eq!(bodies[0], bodies[1]);
    Ok(())
}
