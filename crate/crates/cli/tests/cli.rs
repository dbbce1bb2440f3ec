use std::process::{Command, Output};

fn tilecrystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecrystal")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn crystal_f_on_zero() {
    let out = tilecrystal(&["crystal", "--op", "f", "--a", "1", "--datum", "0,0,0", "--word", "1,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1,0,0");
}

#[test]
fn oracle_agrees_with_crossings() {
    for op in ["f", "e", "eps", "f*", "e*", "eps*"] {
        for a in ["1", "2"] {
            let base = ["crystal", "--op", op, "--a", a, "--datum", "1,0,2", "--word", "212"];
            let direct = tilecrystal(&base);
            let mut with_oracle = base.to_vec();
            with_oracle.push("--oracle");
            let oracle = tilecrystal(&with_oracle);
            assert_eq!(stdout(&direct), stdout(&oracle), "{op} {a}");
        }
    }
}

#[test]
fn undefined_e_is_reported() {
    let out = tilecrystal(&["crystal", "--op", "e", "--a", "2", "--datum", "0,0,0", "--word", "121"]);
    assert_eq!(stdout(&out).trim(), "undefined");
}

#[test]
fn string_datum_and_cone() {
    let out = tilecrystal(&["string", "--datum", "0,1,0", "--word", "121"]);
    assert_eq!(stdout(&out).trim(), "0,1,1");
    let out = tilecrystal(&["string", "--cone", "--word", "212"]);
    let cone: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cone["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn words_for_rank_three() {
    let out = tilecrystal(&["words", "--n", "4"]);
    assert_eq!(stdout(&out).lines().count(), 16);
}

#[test]
fn bz_pipeline() {
    let dir = std::env::temp_dir().join(format!("tilecrystal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("z.json");
    let out = tilecrystal(&["bz", "--from-lusztig", "--word", "121", "--datum", "0,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(tilecrystal(&["bz", "--validate", "--input", p]).status.code(), Some(0));
    let fz = tilecrystal(&["bz", "--apply-f", "--a", "1", "--input", p]);
    assert_eq!(fz.status.code(), Some(0));

    let expected = tilecrystal(&["crystal", "--op", "f", "--a", "1", "--datum", "0,1,0", "--word", "121"]);
    let datum = stdout(&expected);
    let direct = tilecrystal(&["bz", "--from-lusztig", "--word", "121", "--datum", datum.trim()]);
    let a: serde_json::Value = serde_json::from_slice(&fz.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&direct.stdout).unwrap();
    assert_eq!(a, b);

    std::fs::write(&path, r#"{"n":3,"values":{"1":0}}"#).unwrap();
    assert_eq!(tilecrystal(&["bz", "--validate", "--input", p]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn potentials_print_polynomials() {
    let out = tilecrystal(&["potential", "--ghkk", "--word", "121", "--a", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().last().unwrap(), "x[3]^-1");
    let out = tilecrystal(&["potential", "--quiver", "--word", "121"]);
    let q: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(q["arrows"].as_array().unwrap().len(), 2);
}

#[test]
fn polar_check_passes() {
    let out = tilecrystal(&["cone", "--polar-check", "--word", "212", "--box", "3", "--depth", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn render_writes_svg() {
    let path = std::env::temp_dir().join(format!("tilecrystal-{}.svg", std::process::id()));
    let p = path.to_str().unwrap();
    let out = tilecrystal(&[
        "render", "--word", "2,1,2,3,2,1", "--svg-out", p, "--highlight", "1,2;1,3", "--crossing", "1,4;2,4",
        "--vertex-labels",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_am_rank_two() {
    let out = tilecrystal(&["verify", "--suite", "am", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().last().unwrap(), "0 counterexamples");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tilecrystal(&["crystal", "--op", "g", "--a", "1", "--datum", "0,0,0", "--word", "121"]).status.code(), Some(2));
    assert_eq!(tilecrystal(&["crystal", "--op", "f", "--a", "1", "--datum", "0,0,0", "--word", "122"]).status.code(), Some(2));
    assert_eq!(tilecrystal(&["crystal", "--op", "f", "--a", "3", "--datum", "0,0,0", "--word", "121"]).status.code(), Some(2));
    assert_eq!(tilecrystal(&["verify", "--suite", "nope"]).status.code(), Some(2));
}
