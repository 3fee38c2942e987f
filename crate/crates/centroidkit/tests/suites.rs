use centroidkit::verify::{run_suite, SUITES};

#[test]
fn every_named_suite_passes() {
    for name in SUITES {
        let rep = run_suite(name).unwrap_or_else(|e| panic!("suite {name} errored: {e}"));
        let failed: Vec<_> = rep.lines.iter().filter(|l| !l.pass).collect();
        assert!(rep.passed, "suite {name} failed: {failed:?}");
        assert!(!rep.lines.is_empty());
        assert!(!rep.statement.is_empty());
    }
}
