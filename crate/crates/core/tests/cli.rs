use std::process::Command;

fn cpath(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cpath")).args(args).output().expect("runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn normalize_prints_the_normal_form() {
    let (code, out, _) = cpath(&["normalize", "sigma(rho)"]);
    assert_eq!((code, out.trim()), (0, "rho"));
}

#[test]
fn normalize_json_round_trips() {
    let (code, out, _) = cpath(&["--json", "normalize", "tau(xi[inl](r),xi[inl](sigma(r)))"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let normal = cpath::reason::parse_reason(v["normal"].as_str().unwrap()).unwrap();
    assert_eq!(normal, cpath::reason::parse_reason("xi[inl](rho)").unwrap());
    assert_eq!(v["steps"][0]["name"], "tr");
}

#[test]
fn equal_uses_exit_codes() {
    assert_eq!(cpath(&["equal", "tau(tau(t,r),s)", "tau(t,tau(r,s))"]).0, 0);
    assert_eq!(cpath(&["equal", "r", "s"]).0, 1);
    assert_eq!(cpath(&["equal", "r", "tau("]).0, 2);
}

#[test]
fn random_needs_a_seed() {
    let (code, _, err) = cpath(&["normalize", "r", "--strategy", "random"]);
    assert_eq!(code, 2);
    assert!(err.contains("--seed"));
    assert_eq!(cpath(&["normalize", "sigma(sigma(r))", "--strategy", "random", "--seed", "4"]).1.trim(), "r");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cpath(&["normalize"]).0, 2);
    assert_eq!(cpath(&["confluence", "--rules", "0-99"]).0, 2);
    assert_eq!(cpath(&["demo", "nothing"]).0, 2);
}

#[test]
fn rule37_switch() {
    let e = "tau(sigma(u),tau(u,v))";
    assert_eq!(cpath(&["normalize", e]).1.trim(), "v");
    assert_eq!(cpath(&["--rule37-literal", "normalize", e, "--rules", "37"]).1.trim(), "u");
}

#[test]
fn dot_output() {
    let path = std::env::temp_dir().join(format!("cpath-{}.dot", std::process::id()));
    let (code, _, _) = cpath(&["normalize", "sigma(sigma(r))", "--dot", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(dot.starts_with("digraph"));
}

#[test]
fn demos() {
    let (code, out, _) = cpath(&["--json", "demo", "groupoid"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);

    let (code, out, _) = cpath(&["--json", "demo", "three-paths"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["left"] == rows[0]["left"] && r["right"] == rows[0]["right"]));

    let (code, out, _) = cpath(&["demo", "uip"]);
    assert_eq!(code, 0);
    assert!(out.contains("verified: true"));
}

#[test]
fn parse_pretty_prints() {
    let (code, out, _) = cpath(&["parse", "tau( r , sigma(s) )"]);
    assert_eq!((code, out.trim()), (0, "tau(r,sigma(s))"));
}
