use besselpoly::verify::{check_ids, run_suite};
use besselpoly::{Status, Suite, VerifyOptions};

#[test]
fn numeric_suite_passes_sorted() {
    let report = run_suite(Suite::Numeric, &VerifyOptions::default()).unwrap();
    assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, check_ids(Suite::Numeric));
}

#[test]
fn discrepancies_report_and_correct() {
    let report = run_suite(Suite::Discrepancies, &VerifyOptions::default()).unwrap();
    assert!(report.passed());
    let status = |id: &str| report.checks.iter().find(|c| c.id == id).unwrap().status;
    for id in
        ["euler.connection_stated", "numeric.euler_integral_stated", "moments.sign_probe", "moments.chi_convention"]
    {
        assert_eq!(status(id), Status::ReportOnly, "{id}");
    }
    for id in ["euler.connection_exact", "numeric.euler_integral_corrected", "moments.sign_consistent"] {
        assert_eq!(status(id), Status::Pass, "{id}");
    }
}

#[test]
fn tight_moment_tolerance_can_fail() {
    let opts = VerifyOptions { rel_tol: 1e-18, ..VerifyOptions::default() };
    let check = besselpoly::verify::run_check("numeric.weight_moments", &opts).unwrap();
    assert_eq!(check.status, Status::Fail);
}
