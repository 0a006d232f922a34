use std::io::Write;
use std::process::{Command, Output, Stdio};

fn labconf(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_labconf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn seg(a: &str, b: &str, y: u32) -> String {
    format!(
        r#"{{"a":{a},"b":{b},"y":{{"model":"sites","value":{y}}},"x":{{"model":"interval","value":1}}}}"#
    )
}

#[test]
fn generate_is_deterministic() {
    for kind in ["point", "line", "segment", "path", "scan", "box"] {
        let a = labconf(&["generate", kind, "--seed", "7", "--max-j", "3", "--dim", "2"], "");
        let b = labconf(&["generate", kind, "--seed", "7", "--max-j", "3", "--dim", "2"], "");
        assert_eq!(code(&a), 0, "{kind}");
        assert_eq!(a.stdout, b.stdout, "{kind}");
    }
}

#[test]
fn generate_empty() {
    let o = labconf(&["generate", "segment", "--max-j", "0"], "");
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn generate_bad_flags() {
    assert_eq!(code(&labconf(&["generate", "widget"], "")), 2);
    assert_eq!(code(&labconf(&["generate", "segment", "--base", "moon"], "")), 2);
    assert_eq!(code(&labconf(&["generate", "segment", "--seed", "x"], "")), 2);
}

#[test]
fn generated_output_parses_back() {
    for seed in ["1", "2", "3", "4"] {
        for (kind, base) in [("segment", "sites"), ("segment", "plane"), ("path", "line"), ("scan", "sites")] {
            let g = labconf(&["generate", kind, "--seed", seed, "--base", base], "");
            let out = stdout(&g);
            let back = labconf(&["apply", "normalize", "--base", base], &out);
            assert_eq!(code(&back), 0, "{kind} {seed}: {}", String::from_utf8_lossy(&back.stderr));
            assert_eq!(stdout(&back), out);
        }
    }
}

#[test]
fn apply_phi_midpoint() {
    let o = labconf(&["apply", "phi"], &format!("[{}]", seg("0", "2", 0)));
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["y"]["model"], "product");
    assert_eq!(v[0]["y"]["value"]["coords"][0]["num"], "1");
    assert_eq!(v[0]["y"]["value"]["coords"][0]["den"], "1");
}

#[test]
fn apply_alpha_half() {
    let o = labconf(&["apply", "alpha_eval 1/2"], &format!("[{}]", seg(r#""1/4""#, r#""3/4""#, 0)));
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["x"]["value"]["s"][0]["num"], "1");
    assert_eq!(v[0]["x"]["value"]["s"][0]["den"], "2");
}

#[test]
fn apply_errors() {
    let o = labconf(&["apply", "shrink 1/2 1/4"], "[]");
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("shrink"));

    let pair = format!("[[{}],[{}]]", seg(r#""1/8""#, r#""1/2""#, 0), seg(r#""1/4""#, r#""3/4""#, 0));
    let o = labconf(&["apply", "union"], &pair);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("union"));

    assert_eq!(code(&labconf(&["apply", "phi"], "not json")), 2);
    assert_eq!(code(&labconf(&["apply", "teleport"], "[]")), 2);
    assert_eq!(code(&labconf(&["apply", "q"], "[]")), 2);
}

#[test]
fn apply_chain() {
    let w = format!("[{},{}]", seg(r#""1/4""#, r#""3/4""#, 0), seg(r#""1/8""#, r#""1/2""#, 1));
    let o = labconf(&["apply", "shrink 0 1/2 | alpha_eval 1/4"], &w);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // shrink halves everything: (1/8, 3/8) and (1/16, 1/4); t = 1/4 is inside the first only.
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["y"]["value"], 0);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&labconf(&["verify", "equivalence", "--seed", "1", "--trials", "200"], "")), 0);
    let o = labconf(&["verify", "dold-thom", "--inject-fault", "L1-breakpoint"], "");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("witness"));
    assert_eq!(code(&labconf(&["verify", "nope"], "")), 2);
    assert_eq!(code(&labconf(&["verify", "loop", "--inject-fault", "gremlin"], "")), 2);
}

#[test]
fn verify_all_runs_every_suite() {
    let o = labconf(&["verify", "all", "--trials", "20", "--format", "json"], "");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let props = v["properties"].as_array().unwrap();
    for suite in ["equivalence", "coefficient-system", "loop", "dold-thom"] {
        assert!(props.iter().any(|p| p["suite"] == suite), "{suite} missing");
    }
}

#[test]
fn verify_model_sweep() {
    let o = labconf(&["verify", "loop", "--trials", "10", "--base", "all", "--labels", "all"], "");
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("plane x wedge:3"));
    assert!(text.contains("line x discrete:3"));
}

#[test]
fn render_modes() {
    let w = format!("[{},{}]", seg(r#""1/4""#, r#""3/4""#, 0), seg(r#""1/8""#, r#""1/2""#, 1));
    for mode in ["config", "loop", "homotopy"] {
        let a = labconf(&["render", mode], &w);
        let b = labconf(&["render", mode], &w);
        assert_eq!(code(&a), 0, "{mode}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
        assert!(stdout(&a).starts_with("<svg"));
    }
    let c = stdout(&labconf(&["render", "config"], &w));
    assert_eq!(c.matches("<rect x=").count(), 2);
    assert_eq!(code(&labconf(&["render", "sideways"], &w)), 2);
}

#[test]
fn render_empty_has_axes_only() {
    let o = labconf(&["render", "config"], "[]");
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    assert!(svg.contains("class=\"axis\""));
    assert!(!svg.contains("<rect x="));
    assert!(!svg.contains("<circle"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("labconf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g.json");
    let o = labconf(&["generate", "segment", "--seed", "3", "--out", path.to_str().unwrap()], "");
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let direct = labconf(&["generate", "segment", "--seed", "3"], "");
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(dir).unwrap();
}
