mod common;

use w22_core::verify::{run_suites, Suite, VerifyConfig};

#[test]
fn all_suites_pass_at_small_level() {
    let cfg = VerifyConfig {
        charges: common::cc(),
        max_level: 4,
        seed: 7,
    };
    let lines = run_suites(&cfg, &Suite::ALL);
    assert!(!lines.is_empty());
    let failed: Vec<String> = lines
        .iter()
        .filter(|l| !l.passed)
        .map(|l| l.to_string())
        .collect();
    assert!(failed.is_empty(), "{failed:#?}");
    for s in Suite::ALL {
        assert!(
            lines.iter().any(|l| l.suite == s.name()),
            "{} produced no checks",
            s.name()
        );
    }
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(Suite::parse(s.name()).unwrap(), vec![s]);
    }
    assert_eq!(Suite::parse("all").unwrap().len(), Suite::ALL.len());
    assert!(Suite::parse("nonsense").is_none());
}
