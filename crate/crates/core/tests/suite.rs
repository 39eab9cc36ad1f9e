mod common;

use bintrans::suite::Status;
use bintrans::{register_builtin_identities, Error, ParamSet};
use common::*;

#[test]
fn registry_contents() {
    let reg = register_builtin_identities();
    assert!(reg.len() >= 34, "only {} identities", reg.len());
    assert!(reg.lookup("dilcher").is_ok());
    assert!(matches!(reg.lookup("nonexistent"), Err(Error::UnknownIdentity(_))));
    for id in [
        "stirling_rep", "unsigned_power_expansion", "nnabla_xn_rule", "harmonic_bt", "inv_harmonic",
        "h2_pair_inv", "h2_pair_k", "h2_pair_k2", "h2_pair_k3", "h3_inv", "h_over_k", "h2_inv",
        "h2_k", "h2_k2", "h_squared", "h_squared_k", "dilcher", "harmonic_kp", "nnabla_inv_n",
        "skew_inv", "skew_k", "skew_over_k", "skew_over_k1", "fib_self", "fib_k", "fib_k2",
        "fib_avg", "lucas_avg", "sigma_truncate", "stirling_avg", "harmonic_lambda",
        "reciprocal_shift", "laguerre_sum", "laguerre_over_k", "laguerre_avg", "vandermonde",
        "vandermonde_k", "vandermonde_avg",
    ] {
        assert!(reg.lookup(id).is_ok(), "{id} missing");
    }
}

#[test]
fn single_verifications() {
    let reg = register_builtin_identities();
    assert!(reg.verify("harmonic_bt", 40, &ParamSet::new()).unwrap().status.is_pass());

    let lambda3 = ParamSet::new().with("lambda", 3);
    let spec = reg.lookup("harmonic_lambda").unwrap();
    assert_eq!(spec.lhs_at(1, &lambda3).unwrap(), q("1/4"));
    assert_eq!(spec.rhs_at(1, &lambda3).unwrap(), q("1/4"));
    assert!(spec.verify(1, &lambda3).status.is_pass());

    let p4 = ParamSet::new().with("p", 4);
    let spec = reg.lookup("stirling_rep").unwrap();
    assert_eq!(spec.lhs_at(2, &p4).unwrap(), q("-14"));
    assert_eq!(spec.rhs_at(2, &p4).unwrap(), q("-14"));
    assert!(spec.verify(10, &p4).status.is_pass());
}

#[test]
fn constraint_violations_are_skipped() {
    let reg = register_builtin_identities();
    let r = reg.verify("harmonic_lambda", 10, &ParamSet::new().with("lambda", -3)).unwrap();
    assert!(matches!(r.status, Status::Skipped(_)));
    let r = reg.verify("stirling_rep", 10, &ParamSet::new()).unwrap();
    assert!(matches!(r.status, Status::Skipped(_)));
}

#[test]
fn sweep_passes_and_is_sorted() {
    let reports = bintrans::verify_all(20);
    let failures: Vec<String> = reports.iter().filter(|r| !r.status.is_pass()).map(|r| r.to_string()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
    let ids: Vec<&str> = reports.iter().map(|r| r.identity_id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn zero_n_max_skips_everything() {
    let reports = bintrans::verify_all(0);
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| matches!(r.status, Status::Skipped(_))));
}

#[test]
fn counterexamples_recheck_from_their_fields() {
    let reg = falsified_registry();
    let spec = reg.lookup("bogus_harmonic").unwrap();
    let report = spec.verify(10, &ParamSet::new());
    let cx = report.counterexample().expect("must fail");
    assert_eq!(cx.n, 3);
    assert_ne!(cx.lhs, cx.rhs);
    assert_eq!(cx.lhs, spec.lhs_at(cx.n, &ParamSet::new()).unwrap());
    assert_eq!(cx.rhs, spec.rhs_at(cx.n, &ParamSet::new()).unwrap());
    assert_eq!(cx.lhs, q("11/6"));
    assert_eq!(cx.rhs, q("11/6") + q("1/9"));
    assert!(spec.verify(2, &ParamSet::new()).status.is_pass());
}

