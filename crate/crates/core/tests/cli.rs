//! End-to-end tests of the command-line interface: schemas, exit codes and
//! byte-determinism of the outputs.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sixcircles"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn triangle_json_report() {
    let out = run(&["triangle", "--sides", "3,4,5", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["semiperimeter"], 6.0);
    for key in [
        "half_angles",
        "betas",
        "couplings",
        "tangent_lengths",
        "vertices",
    ] {
        assert!(doc[key].is_array(), "missing {key}");
    }
    let betas = doc["betas"].as_array().unwrap();
    assert!((betas[2].as_f64().unwrap() - 1.150262).abs() < 1e-5);
}

#[test]
fn triangle_degrees_flag() {
    let out = run(&["triangle", "--sides", "3,4,5", "--degrees"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let alphas = doc["half_angles"].as_array().unwrap();
    assert!((alphas[2].as_f64().unwrap() - 45.0).abs() < 1e-9);
}

#[test]
fn chain_csv_and_report_lines() {
    let out = run(&[
        "chain",
        "--sides",
        "3,4,5",
        "--phi0",
        "0.3",
        "--start-vertex",
        "1",
        "--policy",
        "smaller",
        "--max-steps",
        "100",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let data = stdout(&out);
    let mut lines = data.lines();
    assert_eq!(
        lines.next().unwrap(),
        "step,vertex,radius,u,phi,sign_case,choice,center_x,center_y"
    );
    assert!(data.lines().count() >= 10); // header plus at least 9 circles
    let report = stderr(&out);
    assert!(report.contains("pre_period=2"));
    assert!(report.contains("period=6"));

    // identical invocation, identical bytes
    let again = run(&[
        "chain",
        "--sides",
        "3,4,5",
        "--phi0",
        "0.3",
        "--start-vertex",
        "1",
        "--policy",
        "smaller",
        "--max-steps",
        "100",
        "--format",
        "csv",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn exit_codes() {
    // domain error: impossible triangle
    let out = run(&["triangle", "--sides", "1,1,3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error:"));

    // usage error: unknown flag
    let out = run(&["triangle", "--sides", "3,4,5", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));

    // usage error: missing initial condition
    let out = run(&["chain", "--sides", "3,4,5"]);
    assert_eq!(out.status.code(), Some(2));

    // usage error: malformed sides list
    let out = run(&["triangle", "--sides", "3,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--sides"));

    // help exits zero
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn plmap_float_and_exact() {
    let out = run(&[
        "plmap", "--a", "3.6", "--b", "4.2", "--x0", "0", "--steps", "50",
    ]);
    assert!(out.status.success());
    let data = stdout(&out);
    assert!(data.starts_with("step,x,interval\n"));
    assert_eq!(data.lines().count(), 52);
    let last = data.lines().last().unwrap();
    let x: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!(
        (0.6..=1.0).contains(&x),
        "late iterate {x} should sit in the window"
    );
    // x0 = 0 happens to land exactly on the fixed point after three steps
    let report = stderr(&out);
    assert!(report.contains("pre_period=3"));
    assert!(report.contains("period=1"));

    let out = run(&[
        "plmap", "--a", "1", "--b", "199/100", "--x0", "1/100", "--steps", "5", "--mode", "exact",
    ]);
    assert!(out.status.success());
    let data = stdout(&out);
    assert!(data.contains("1,99/50")); // exact rationals printed as num/den
    let report = stderr(&out);
    assert!(report.contains("pre_period=99"));
    assert!(report.contains("cycle=1,99/100"));
}

#[test]
fn mc_histogram_determinism() {
    let args = [
        "mc",
        "--sides",
        "3,4,5",
        "--runs",
        "200",
        "--seed",
        "7",
        "--max-steps",
        "2000",
    ];
    let a = run(&args);
    assert!(a.status.success());
    let data = stdout(&a);
    assert!(data.starts_with("pre_period,count\n"));
    let total: u64 = data
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    let failures: u64 = stderr(&a)
        .split("failures=")
        .nth(1)
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert_eq!(total + failures, 200);

    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);

    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "4"]);
    let c = run(&threaded);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn ngon_chain_and_divergence() {
    let out = run(&[
        "ngon",
        "--vertices",
        "0,0,2,0,2.5,0.866025,0.5,0.866025",
        "--u0",
        "0.05",
        "--policy",
        "smaller",
        "--max-steps",
        "10000",
        "--divergence-delta",
        "1e-9",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = stderr(&out);
    assert!(report.contains("period=4"), "{report}");
    assert!(report.contains("divergence_rate="));
}

#[test]
fn malfatti_report() {
    let out = run(&["malfatti", "--sides", "1,1,1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let radii = doc["radii"].as_array().unwrap();
    let expected = (3.0f64.sqrt() - 1.0) / 4.0;
    for r in radii {
        assert!((r.as_f64().unwrap() - expected).abs() <= 1e-9);
    }
    for res in doc["pairwise_tangency_residuals"].as_array().unwrap() {
        assert!(res.as_f64().unwrap().abs() <= 1e-9);
    }
}

#[test]
fn saved_scenarios_round_trip() {
    let dir = std::env::temp_dir().join(format!("sixcircles-scen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("saved.json");
    let out = run(&[
        "chain",
        "--sides",
        "3,4,5",
        "--phi0",
        "0.3",
        "--policy",
        "random",
        "--seed",
        "9",
        "--max-steps",
        "50",
        "--save-scenario",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed = sixcircles::scenario::Scenario::from_json(&text).unwrap();
    assert_eq!(
        sixcircles::scenario::Scenario::from_json(&parsed.to_json()).unwrap(),
        parsed
    );
    // the saved scenario drives render directly
    let svg_out = run(&["render", "--scenario", path.to_str().unwrap()]);
    assert!(svg_out.status.success(), "{}", stderr(&svg_out));
    assert!(stdout(&svg_out).starts_with("<svg"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn render_scenario_to_svg() {
    let dir = std::env::temp_dir().join(format!("sixcircles-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let scenario_path = dir.join("scenario.json");
    let svg_path = dir.join("chain.svg");
    std::fs::write(
        &scenario_path,
        r#"{
  "version": 1,
  "shape": { "kind": "triangle", "sides": [3.0, 4.0, 5.0] },
  "initial": { "kind": "phi0", "value": 0.3, "start_vertex": 1 },
  "policy": { "kind": "smaller" },
  "max_steps": 100
}"#,
    )
    .unwrap();

    let out = run(&[
        "render",
        "--scenario",
        scenario_path.to_str().unwrap(),
        "--out",
        svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("<polygon"));
    assert!(svg.matches("<circle").count() >= 9);

    // byte-identical on re-render
    let out2 = run(&["render", "--scenario", scenario_path.to_str().unwrap()]);
    assert_eq!(stdout(&out2), svg);

    // scenario files round-trip through the library parser
    let text = std::fs::read_to_string(&scenario_path).unwrap();
    let parsed = sixcircles::scenario::Scenario::from_json(&text).unwrap();
    let reparsed = sixcircles::scenario::Scenario::from_json(&parsed.to_json()).unwrap();
    assert_eq!(parsed, reparsed);

    std::fs::remove_dir_all(&dir).ok();
}
