use super::*;
use crate::scalar::RatFunc;
use crate::uaw::{Engine, ReductionRules, Rule};

fn params(kv: &[(&str, u32)]) -> Params {
    kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[test]
fn unknown_check_is_an_error() {
    assert!(matches!(run_check("nope", &Params::new()), Err(VerifyError::UnknownCheck(_))));
}

#[test]
fn params_are_validated() {
    let e = run_check("filtration_two_gen", &params(&[("i", 99), ("j", 1)]));
    assert!(matches!(e, Err(VerifyError::BadParams { .. })));
    let e = run_check("free_BA", &params(&[("x", 1)]));
    assert!(matches!(e, Err(VerifyError::BadParams { .. })));
}

#[test]
fn registry_names_are_unique() {
    let names = check_names();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(names.len(), sorted.len());
}

#[test]
fn cheap_checks_pass() {
    for name in ["reduction_rules", "free_BA", "free_CA", "free_BAA", "free_BAC", "complement_H10_H12"] {
        let r = run_check(name, &Params::new()).unwrap();
        assert!(r.passed, "{r}");
    }
}

#[test]
fn parametrized_checks_pass() {
    let r = run_check("filtration_mixed", &params(&[("i", 2), ("j", 2), ("k", 1)])).unwrap();
    assert!(r.passed, "{r}");
    let r = run_check("filtration_ad_abc", &params(&[("i", 0), ("j", 2), ("k", 1)])).unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn l4_rank_records_clean_pivots() {
    let r = run_check("L4_rank", &Params::new()).unwrap();
    assert!(r.passed, "{r}");
    let f = PivotFactors::from_pivots(r.pivots.iter());
    assert!(f.clean(), "{:?}", f.offending);
}

#[test]
fn suite_is_deterministic() {
    let a = run_suite(Some("free_*"), 2).to_json();
    let b = run_suite(Some("free_*"), 2).to_json();
    assert_eq!(a["status"], b["status"]);
    assert_eq!(a["results"].as_array().unwrap().len(), b["results"].as_array().unwrap().len());
    for (x, y) in a["results"].as_array().unwrap().iter().zip(b["results"].as_array().unwrap()) {
        assert_eq!(x["check"], y["check"]);
        assert_eq!(x["passed"], y["passed"]);
        assert_eq!(x["witness"], y["witness"]);
    }
}

#[test]
fn perturbed_rules_are_caught() {
    let rules = ReductionRules::standard().perturbed(Rule::CA, 1, &RatFunc::one());
    let engine = Engine::new(rules);
    let r = run_check_with(&engine, "reduction_rules", &Params::new()).unwrap();
    assert!(!r.passed);
    assert!(r.witness.is_some());
}

#[test]
fn i0_is_nonzero() {
    assert!(!i0_series().is_zero());
    assert_eq!(i0_series().coeff(57), RatFunc::q_minus().inv().unwrap());
}
