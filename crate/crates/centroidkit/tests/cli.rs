//! End-to-end checks of the binary: exit codes, pipelines through files
//! on disk, and byte-stable JSON output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_centroidkit")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .current_dir(dir)
        .env_remove("CENTROIDKIT_WINDOW")
        .output()
        .expect("binary runs")
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("centroidkit-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_then_centroid_pipeline() {
    let dir = workdir("pipeline");
    let o = run_in(&dir, &["build", "heisenberg", "1", "-o", "h.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(dir.join("h.json").is_file());

    let o = run_in(&dir, &["centroid", "h.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim 3"), "{}", stdout(&o));

    let o = run_in(&dir, &["build", "classical", "A", "1", "-o", "sl2.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run_in(&dir, &["build", "truncated-poly", "3", "-o", "tp3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run_in(&dir, &["tensor", "sl2.json", "tp3.json", "-o", "cur.json"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run_in(&dir, &["centroid", "cur.json", "--graded"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dim 3"), "{text}");
    assert!(text.contains("graded: total dim 3"), "{text}");

    let o = run_in(&dir, &["derivations", "cur.json"]);
    assert!(stdout(&o).contains("dim 11"), "{}", stdout(&o));
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let dir = workdir("codes");

    // Malformed input is 2.
    assert_eq!(
        run_in(&dir, &["centroid", "missing.json"]).status.code(),
        Some(2)
    );
    std::fs::write(dir.join("garbage.json"), "{nope").unwrap();
    assert_eq!(
        run_in(&dir, &["validate", "garbage.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run_in(&dir, &["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        run_in(&dir, &["verify", "no-such-suite"]).status.code(),
        Some(2)
    );

    // A readable table that breaks the Jacobi identity is a failed check: 1.
    std::fs::write(
        dir.join("broken.json"),
        r#"{"name":"broken","dim":3,"basis":["a","b","c"],
            "brackets":[{"i":0,"j":1,"terms":[{"k":2,"c":"1"}]},
                        {"i":0,"j":2,"terms":[{"k":0,"c":"1"}]},
                        {"i":1,"j":2,"terms":[{"k":2,"c":"1"}]}]}"#,
    )
    .unwrap();
    let o = run_in(&dir, &["validate", "broken.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Jacobi"), "{}", stdout(&o));

    // A rejected cocycle is 1 and leaves a witness, not an output file.
    let o = run_in(&dir, &["build", "oscillator", "-o", "osc.json"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(
        dir.join("bad-cocycle.json"),
        r#"{"dim":4,"coeff_dim":1,"values":[{"i":0,"j":3,"v":["1"]}]}"#,
    )
    .unwrap();
    let o = run_in(
        &dir,
        &["extend", "osc.json", "--cocycle", "bad-cocycle.json", "-o", "never.json"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("triple"), "{}", stdout(&o));
    assert!(!dir.join("never.json").exists());
}

#[test]
fn json_output_is_byte_stable() {
    let dir = workdir("stable");
    let o = run_in(&dir, &["build", "classical", "C", "2", "-o", "sp4.json"]);
    assert_eq!(o.status.code(), Some(0));

    let first = run_in(&dir, &["centroid", "sp4.json", "--output", "json"]);
    let second = run_in(&dir, &["centroid", "sp4.json", "--output", "json"]);
    assert_eq!(first.status.code(), Some(0));
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout);
    assert!(first.stdout.ends_with(b"\n"));

    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed["dim"], 1);

    // The written algebra file is canonical too: rebuilding reproduces it.
    let bytes = std::fs::read(dir.join("sp4.json")).unwrap();
    let o = run_in(&dir, &["build", "classical", "C", "2", "-o", "sp4b.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(bytes, std::fs::read(dir.join("sp4b.json")).unwrap());
}

#[test]
fn loop_subcommands_cover_membership_and_exclusion() {
    let dir = workdir("loop");
    let o = run_in(&dir, &["build", "classical", "A", "1", "-o", "sl2.json"]);
    assert_eq!(o.status.code(), Some(0));

    // Scalar action on loop + centre.
    let o = run_in(
        &dir,
        &["loop", "membership", "sl2.json", "--z", "0:1", "--lambda", "1", "--with-c"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // t^2 multiplication dies against the central pairing.
    let o = run_in(
        &dir,
        &["loop", "membership", "sl2.json", "--z", "2:1", "--with-c"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"), "{}", stdout(&o));

    // Window certificate for the same degree.
    let o = run_in(
        &dir,
        &["loop", "exclude", "sl2.json", "--degree", "2", "--with-c"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("excluded"), "{}", stdout(&o));

    // The environment variable narrows the window.
    let o = Command::new(bin())
        .args(["loop", "exclude", "sl2.json", "--degree", "2", "--with-c"])
        .current_dir(&dir)
        .env("CENTROIDKIT_WINDOW", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("window 3"), "{}", stdout(&o));

    // Centreless loop: certificate must be refused, never a false claim.
    let o = run_in(&dir, &["loop", "exclude", "sl2.json", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no-certificate"), "{}", stdout(&o));
}

#[test]
fn verify_suite_prints_per_check_lines() {
    let dir = workdir("verify");
    let o = run_in(&dir, &["verify", "toralcor"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("suite toralcor:"), "{text}");
    assert!(text.contains("PASS"), "{text}");
    assert!(!text.contains("FAIL "), "{text}");
}
