use std::collections::BTreeSet;

use cl3_rashba::harness::checks::{check_for, declared};
use cl3_rashba::harness::{run_suite, OutputFormat, Status, SuiteConfig};
use cl3_rashba::Error;

fn small() -> SuiteConfig {
    SuiteConfig {
        samples: 12,
        ..SuiteConfig::default()
    }
}

#[test]
fn report_covers_exactly_the_declared_invariants() {
    let report = run_suite(&small()).unwrap();
    let ids: Vec<_> = report.entries.iter().map(|e| e.test_id.as_str()).collect();
    let unique: BTreeSet<_> = ids.iter().copied().collect();
    assert_eq!(unique.len(), ids.len(), "duplicate test ids");
    let declared: BTreeSet<_> = declared().into_iter().map(|(_, id, _)| id).collect();
    assert_eq!(unique, declared);
    for id in declared {
        assert!(check_for(id).is_some(), "{id}");
    }
    assert!(check_for("no.such.check").is_none());
}

#[test]
fn every_module_contributes() {
    let modules: BTreeSet<_> = declared().into_iter().map(|(m, _, _)| m).collect();
    let want: BTreeSet<_> = [
        "clifford_core",
        "biortho_basis",
        "momenta",
        "spectrum",
        "timereversal",
        "ideal_spinors",
        "susy",
    ]
    .into_iter()
    .collect();
    assert_eq!(modules, want);
}

#[test]
fn default_sweep_passes() {
    let report = run_suite(&SuiteConfig::default()).unwrap();
    let bad: Vec<_> = report
        .entries
        .iter()
        .filter(|e| e.status != Status::Pass)
        .map(|e| format!("{} {:?} {}", e.test_id, e.max_residual, e.detail))
        .collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn same_seed_gives_identical_bytes() {
    for format in [OutputFormat::Csv, OutputFormat::Json] {
        let a = run_suite(&small()).unwrap().render(format).unwrap();
        let b = run_suite(&small()).unwrap().render(format).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn different_seed_changes_samples() {
    let a = run_suite(&small()).unwrap();
    let b = run_suite(&SuiteConfig { seed: 7, ..small() }).unwrap();
    assert_ne!(a.to_csv().unwrap(), b.to_csv().unwrap());
}

#[test]
fn tiny_tolerance_reports_failures() {
    let report = run_suite(&SuiteConfig {
        tolerance: 1e-16,
        ..small()
    })
    .unwrap();
    assert!(!report.all_passed());
    assert!(report.summary.failed > 0);
    assert_eq!(report.summary.errors, 0);
}

#[test]
fn invalid_gamma_is_rejected() {
    let cfg = SuiteConfig {
        gamma_values: vec![1.5],
        ..small()
    };
    assert!(matches!(run_suite(&cfg), Err(Error::GammaOutOfDomain(_))));
}

#[test]
fn zero_samples_is_rejected() {
    let cfg = SuiteConfig { samples: 0, ..small() };
    assert!(matches!(run_suite(&cfg), Err(Error::InvalidConfig(_))));
}
