use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn mult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mult")).args(args).env_remove("KTYPE_MULT_MAX_N").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn spherical_principal_series_row() {
    let rep = fixture("ps_trivial_3.json");
    let o = mult(&["both", "--group", "GL:3", "--rep", &rep, "--ktype", "SO:[0]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# ktype-mult v1 mode=both\n"), "{out}");
    let row = out.lines().nth(2).unwrap();
    let cells: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cells, ["Ind[sgn^0", "x", "sgn^0", "x", "sgn^0]", "SO(3)[0]", "1", "1", "yes"]);
}

#[test]
fn mult_alias_and_formats() {
    let rep = fixture("ps_trivial_3.json");
    let o = mult(&["--format", "csv", "mult", "--group", "GL:3", "--rep", &rep, "--ktype", "O:[0]+"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[1], "rep,ktype,m_oracle,m_geom,equal");
    assert_eq!(lines[2], "Ind[sgn^0 x sgn^0 x sgn^0],O(3)[0]+,1,1,true");

    let o = mult(&["--format", "json", "both", "--group", "GL:3", "--rep", &rep, "--ktype", "O:[2]+"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["rows"][0]["m_geom"], v["rows"][0]["m_oracle"]);
}

#[test]
fn finite_fixture() {
    let o = mult(&["finite", &fixture("s3_s2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o).lines().nth(2).unwrap().to_string();
    assert_eq!(row.split_whitespace().skip(1).collect::<Vec<_>>(), ["1", "1", "yes"]);
}

#[test]
fn toml_virtual_rep_and_geom_only() {
    let rep = fixture("discrete_o2.toml");
    let o =
        mult(&["--format", "csv", "geom", "--group", "GL:2", "--rep", &rep, "--ktype", "O:[3]", "--ktype", "O:[0]-"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[2], "\"Ind[P(0,1)] + -1*Ind[F(2,0)]\",O(2)[3],,1,");
    assert_eq!(lines[3], "\"Ind[P(0,1)] + -1*Ind[F(2,0)]\",O(2)[0]-,,0,");
}

#[test]
fn complex_group() {
    let o = mult(&["oracle", "--group", "C:SU2", "--tau=-2", "--ktype", "SU(2)[4]", "--ktype", "SU(2)[3]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("tau=[-2]  SU(2)[4]  1"), "{out}");
    assert!(out.contains("tau=[-2]  SU(2)[3]  0"), "{out}");
}

#[test]
fn branch_rows() {
    let o = mult(&["--format", "csv", "branch", "--ktype", "O(3)[1]+", "--split", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("O(3)[1]+,O(2)[1],O(1)[]+,1,2"), "{out}");
    assert!(out.contains("O(3)[1]+,O(2)[0]+,O(1)[]-,1,1"), "{out}");
}

#[test]
fn job_file_output_is_independent_of_jobs() {
    let job = fixture("job_gl4.json");
    let a = mult(&["--jobs", "1", "run", &job]);
    let b = mult(&["--jobs", "3", "run", &job]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 2 + 8);
}

#[test]
fn selftest_is_deterministic() {
    let args = |j: &'static str| ["--jobs", j, "selftest", "--max-n", "3", "--trials", "50"];
    let a = mult(&args("1"));
    let b = mult(&args("4"));
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("result: PASS (15/15)\n"));
}

#[test]
fn parse_errors_exit_2_and_name_the_field() {
    let o = mult(&["both", "--group", "GL:3", "--rep", &fixture("s3_s2.json"), "--ktype", "SO:[0]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing field `n`"), "{}", stderr(&o));

    let o = mult(&["both", "--group", "GL:3", "--rep", &fixture("ps_trivial_3.json"), "--ktype", "O:[1]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ktype"), "{}", stderr(&o));

    let o = mult(&["both", "--group", "GL3", "--rep", &fixture("ps_trivial_3.json"), "--ktype", "SO:[0]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("group"), "{}", stderr(&o));

    let o = mult(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rank_cap_from_environment() {
    let rep = fixture("ps_trivial_3.json");
    let o = Command::new(env!("CARGO_BIN_EXE_mult"))
        .args(["both", "--group", "GL:3", "--rep", &rep, "--ktype", "SO:[0]"])
        .env("KTYPE_MULT_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds"), "{}", stderr(&o));
}
