use std::process::Command;

fn krkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_krkit"))
        .args(args)
        .env_remove("KRKIT_BUDGET")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn build_is_deterministic() {
    let (c1, a) = krkit(&["build", "C1:2", "1", "2"]);
    let (c2, b) = krkit(&["build", "C1:2", "1", "2"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.contains("\"schema_version\": 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(krkit(&["check", "simple", "A1:3", "1", "1"]).0, 0);
    assert_eq!(
        krkit(&["check", "variation", "C1:2", "2", "2", "--kind-id", "1-ii"]).0,
        1
    );
    assert_eq!(
        krkit(&["--budget", "5", "check", "simple", "B1:3", "2", "2"]).0,
        2
    );
    assert_eq!(krkit(&["matrix", "--config", "/no/such/file.cfg"]).0, 3);
    assert_eq!(krkit(&["frobnicate"]).0, 4);
    assert_eq!(krkit(&["check", "simple", "Q1:3", "1", "1"]).0, 4);
}

#[test]
fn verdict_json_shape() {
    let (code, out) = krkit(&["check", "tensor", "A1:3", "1,1", "2,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["check"], "tensor");
    assert_eq!(v["verdict"], "pass");
    assert!(v["timings"]["millis"].is_number());
}
