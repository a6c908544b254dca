use std::fs;
use std::path::Path;
use std::process::{Command, Output};

/// Runs the binary with `cmd` split on whitespace, followed by `extra`.
fn lbq_with(cmd: &str, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbq"))
        .args(cmd.split_whitespace())
        .args(extra)
        .output()
        .expect("binary runs")
}

fn lbq(cmd: &str) -> Output {
    lbq_with(cmd, &[])
}

fn code(cmd: &str) -> Option<i32> {
    lbq(cmd).status.code()
}

fn ok_with(cmd: &str, extra: &[&str]) -> String {
    let out = lbq_with(cmd, extra);
    assert!(
        out.status.success(),
        "{cmd} {extra:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn ok(cmd: &str) -> String {
    ok_with(cmd, &[])
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn first_example_table() {
    let text =
        ok("transform --family archimedes --count 13 --k-max 4 --digits 10 --col-digits 0=5");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,T_0,T_1,T_2,T_3,T_4");
    assert_eq!(
        lines[1],
        "1,2.00000,3.1679051916,3.1415812622,3.1415926538,3.1415926536"
    );
    assert_eq!(
        lines[2],
        "2,2.82843,3.1430469467,3.1415924821,3.1415926536,"
    );
    assert_eq!(lines[5], "5,3.13655,3.1415929958,3.1415926536,,");
    assert_eq!(lines.len(), 14);
}

#[test]
fn third_example_table() {
    let text = ok("transform --family zeta2 --count 26 --k-max 7 --digits 5 --rows 5");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(
        lines[1],
        "1,1.00000,1.38462,1.49536,1.54487,1.57198,1.58872,1.59990,1.60782"
    );
    assert_eq!(
        lines[5],
        "5,1.46361,1.54276,1.57412,1.59138,1.60234,1.60990,1.61542,1.62011"
    );
}

#[test]
fn markdown_and_tsv_layouts() {
    let base = "transform --family alt-harmonic --count 4 --k-max 1 --digits 3 --output";
    let md = ok(&format!("{base} markdown"));
    assert!(
        md.starts_with("| n | T_0 | T_1 |\n|---|---|---|\n| 1 | 1.000 | 0.706 |\n"),
        "{md}"
    );
    let tsv = ok(&format!("{base} tsv"));
    assert!(tsv.starts_with("n\tT_0\tT_1\n1\t1.000\t0.706\n"), "{tsv}");
}

#[test]
fn generated_file_reproduces_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.csv");
    ok_with(
        "generate --family alt-harmonic --count 10 --mode rational --out",
        &[path_str(&path)],
    );
    let direct =
        ok("transform --family alt-harmonic --count 10 --mode rational --k-max 3 --digits 30");
    let via_file = ok_with(
        "transform --format csv --mode rational --k-max 3 --digits 30 --input",
        &[path_str(&path)],
    );
    assert_eq!(direct, via_file);
}

#[test]
fn generate_prints_exact_values_and_limit() {
    let text = ok("generate --family geometric --z 1/2 --count 3 --start 0 --mode rational");
    assert_eq!(text, "# limit 2\nn,S\n0,1\n1,3/2\n2,7/4\n");
    let text = ok("generate --family zeta2 --count 3 --digits 5");
    assert!(
        text.ends_with("n,S\n1,1.00000\n2,1.25000\n3,1.36111\n"),
        "{text}"
    );
}

#[test]
fn lines_input_and_breakdown_marker() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("const.txt");
    fs::write(&path, "# constant\n2\n2\n2\n2\n").unwrap();
    let text = ok_with("transform --k-max 1 --digits 2 --input", &[path_str(&path)]);
    assert_eq!(text, "n,T_0,T_1\n0,2.00,BRK\n1,2.00,\n2,2.00,\n3,2.00,\n");
}

#[test]
fn parse_errors_exit_one_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "1.0\nabc\n").unwrap();
    let out = lbq_with("transform --input", &[path_str(&path)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let missing = dir.path().join("missing");
    let out = lbq_with("transform --input", &[path_str(&missing)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code("transform --no-such-flag"), Some(2));
    assert_eq!(code("transform"), Some(2));
    assert_eq!(code("transform --family geometric"), Some(2));
    assert_eq!(code("transform --family zeta2 --digits 0"), Some(2));
    assert_eq!(code("generate --family geometric --z 1"), Some(2));
    // an empty file is an input error, not a usage error
    assert_eq!(code("compare --input /dev/null"), Some(1));
}

#[test]
fn compare_needs_a_limit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.txt");
    fs::write(&path, "1\n0.5\n0.25\n0.125\n").unwrap();
    let p = path_str(&path);
    assert_eq!(lbq_with("compare --input", &[p]).status.code(), Some(2));
    let text = ok_with("compare --limit 0 --k-max 1 --mode rational --input", &[p]);
    assert_eq!(text.lines().next(), Some("n,S_err,lbq_T_1,eps_2"));
    assert!(text.contains("\n0,1.00e0,0,0\n"), "{text}");
}

#[test]
fn epsilon_and_oracle_algorithms() {
    let eps = ok(
        "transform --family geometric --z 1/3 --start 0 --count 5 --k-max 1 \
                  --algorithm epsilon --mode rational --digits 4",
    );
    assert!(eps.starts_with("n,eps_0,eps_2\n0,1.0000,1.5000\n"), "{eps}");
    let base = "transform --family alt-harmonic --count 9 --k-max 2 --mode rational --digits 25";
    assert_eq!(ok(&format!("{base} --algorithm oracle")), ok(base));
}

#[test]
fn bigfloat_mode_runs() {
    let text = ok(
        "transform --family archimedes --count 13 --k-max 4 --mode bigfloat \
                   --precision-bits 200 --digits 20 --rows 1",
    );
    assert!(text.contains("3.14159265358979"), "{text}");
    assert_eq!(
        code("transform --family zeta2 --mode bigfloat --precision-bits 10"),
        Some(2)
    );
}

#[test]
fn classify_reports() {
    let text = ok("classify --family alt-harmonic --count 18");
    assert!(
        text.starts_with("classification: LINEAR\nsign: negative\n"),
        "{text}"
    );
    let text = ok("classify --family zeta2 --count 26");
    assert!(text.starts_with("classification: LOGARITHMIC\n"), "{text}");
    let text = ok("classify --family geometric --z 1/2 --start 0 --count 20 --no-limit");
    assert!(text.contains("(proxy: last element)"), "{text}");
}

#[test]
fn verify_passes_and_is_deterministic() {
    let cmd = "verify --mode rational --k-max 9 --trials 3 --seed 7";
    let a = ok(cmd);
    assert!(a.ends_with("PASS\n"), "{a}");
    assert_eq!(a, ok(cmd));
    let f = ok("verify --k-max 4 --trials 3 --length 12");
    assert!(f.ends_with("PASS\n"), "{f}");
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let text = ok_with(
        "transform --family zeta2 --count 4 --k-max 1 --out",
        &[path_str(&path)],
    );
    assert!(text.is_empty());
    assert!(fs::read_to_string(&path)
        .unwrap()
        .starts_with("n,T_0,T_1\n"));
}
