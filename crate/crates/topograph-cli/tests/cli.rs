use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_topograph"))
}

#[test]
fn generated_graph_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join("topograph-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("octahedron.json");

    let gen = bin()
        .args(["gen", "octahedron", "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(gen.status.success());

    let direct = bin().args(["betti", "octahedron"]).output().unwrap();
    let via_file = bin().args(["betti", path.to_str().unwrap()]).output().unwrap();
    assert!(direct.status.success() && via_file.status.success());

    let a: serde_json::Value = serde_json::from_slice(&direct.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&via_file.stdout).unwrap();
    assert_eq!(a["betti"], b["betti"]);
    assert_eq!(a["betti"], serde_json::json!([1, 0, 1]));
}

#[test]
fn monte_carlo_curvature_is_deterministic_in_the_seed() {
    let run = || {
        let out = bin()
            .args(["curvature", "cycle:7", "--measure", "mc", "--samples", "25", "--seed", "11"])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn generator_params_parse_from_colon_syntax() {
    let out = bin().args(["euler", "complete_multipartite:2,2,2"]).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["chi"], serde_json::json!(2));
}

#[test]
fn unknown_generator_exits_with_input_error() {
    let out = bin().args(["betti", "no-such-graph"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_subcommand_rejects_unknown_suite() {
    let out = bin().args(["check", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_suite_check_passes() {
    let out = bin().args(["check", "mertens"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reports"][0]["passed"], serde_json::json!(true));
}
