use metabelian::harness::*;
use serde_json::json;

fn printed_and_variants(eq: Equation, n: usize, c: usize) -> (VerdictReport, Vec<VerdictReport>) {
    let mut rs = equation_reports(eq, n, c);
    let printed = rs.remove(0);
    assert!(printed.variant.is_none());
    (printed, rs)
}

fn variant<'a>(rs: &'a [VerdictReport], label: &str) -> &'a VerdictReport {
    rs.iter().find(|r| r.variant.as_deref() == Some(label)).unwrap()
}

#[test]
fn exact_identities_hold_as_printed() {
    use Equation::*;
    for c in 3..=5 {
        for eq in [
            TauFirstSlot,
            TauLastSlot,
            TauThirdSlot,
            TauSecondSlot,
            TauChain,
            SeqDistinct,
            SeqRepeat,
        ] {
            let (p, _) = printed_and_variants(eq, 4, c);
            assert!(p.passed(), "{} at c={c}: {:?}", eq.id(), p.witness);
        }
    }
}

#[test]
fn middle_slot_identity_needs_rank_five() {
    let (p, _) = printed_and_variants(Equation::TauMiddleSlot, 4, 4);
    assert_eq!(p.status, Status::Skipped);
    for c in 3..=4 {
        let (p, _) = printed_and_variants(Equation::TauMiddleSlot, 5, c);
        assert!(p.passed(), "{:?}", p.witness);
    }
}

#[test]
fn b12_identity_needs_positive_tau_factors() {
    for c in 3..=4 {
        let (p, vs) = printed_and_variants(Equation::B12ViaInner, 4, c);
        assert_eq!(p.status, Status::Fail);
        let w = p.witness.unwrap();
        assert_eq!(w["depth"], json!(c));
        assert!(w["case"]["r"].is_array());
        assert!(variant(&vs, "tau-factors-positive").passed());
    }
    let w = equation_reports(Equation::B12ViaInner, 4, 4)[0]
        .witness
        .clone()
        .unwrap();
    assert_eq!(w["case"], json!({ "r": [0, 0, 0, 1] }));
}

#[test]
fn delta_identities_hold_with_products_reversed() {
    use Equation::*;
    for c in 3..=4 {
        for eq in [DeltaBase, DeltaStep] {
            let (p, vs) = printed_and_variants(eq, 4, c);
            assert_eq!(p.status, Status::Fail, "{}", eq.id());
            assert!(variant(&vs, "reversed-products").passed(), "{}", eq.id());
        }
        let (_, vs) = printed_and_variants(DeltaBase, 4, c);
        assert!(variant(&vs, "rhs-inverted").passed());
    }
}

#[test]
fn general_delta_identity_needs_binomial_multiplicities() {
    let (p, vs) = printed_and_variants(Equation::DeltaGeneral, 4, 3);
    assert_eq!(p.status, Status::Skipped);
    assert!(vs.iter().all(|v| v.status == Status::Skipped));
    let (p, vs) = printed_and_variants(Equation::DeltaGeneral, 4, 4);
    assert_eq!(p.status, Status::Fail);
    assert_eq!(p.witness.unwrap()["case"], json!({ "r": [0, 2, 0, 0] }));
    assert_eq!(variant(&vs, "reversed-products").status, Status::Fail);
    assert!(variant(&vs, "reversed-products-binomial-multiplicities").passed());
}

#[test]
fn delta_images_match_the_closing_formula_only() {
    for c in 3..=4 {
        let (p, vs) = printed_and_variants(Equation::DeltaImages, 4, c);
        assert_eq!(p.status, Status::Fail);
        assert!(variant(&vs, "closing-formula").passed());
    }
}

#[test]
fn single_cases() {
    let r = verify_equation(
        Equation::TauFirstSlot,
        Reading::Printed,
        4,
        &Case::Tuple(vec![1, 0, 0, 0]),
    )
    .unwrap();
    assert!(r.passed());
    let r = verify_equation(Equation::SeqDistinct, Reading::Printed, 4, &Case::Seq(vec![2, 3, 3, 3])).unwrap();
    assert!(r.passed());
    assert_eq!(r.params["c"], json!(4));
    let r = verify_equation(Equation::B12ViaInner, Reading::Printed, 4, &Case::Tuple(vec![0; 4])).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.witness.unwrap()["depth"], json!(3));
    let r = verify_equation(Equation::B12ViaInner, Reading::TauPositive, 4, &Case::Tuple(vec![0; 4])).unwrap();
    assert!(r.passed());
    assert!(verify_equation(Equation::SeqDistinct, Reading::Printed, 4, &Case::Tuple(vec![0; 4])).is_err());
}

#[test]
fn rank_reports() {
    let r = rank_report(4, 3);
    assert!(r.passed(), "{:?}", r.witness);
    assert_eq!(
        r.params["computed"],
        json!({ "gr": 20, "total": 80, "pq": 70, "r": 10 })
    );
    let r = rank_report(3, 2);
    assert!(r.passed());
    assert_eq!(r.params["computed"]["pq"], json!(9));
    let r = rank_report(2, 5);
    assert_eq!(r.params["expected"]["gr"], json!(4));
    assert!(r.passed());
}

#[test]
fn witnesses_for_every_generator() {
    for c in 3..=4 {
        let r = gamma_witnesses(4, c);
        assert!(r.passed(), "{:?}", r.witness);
    }
}

#[test]
fn named_words() {
    let ctx = metabelian::GroupContext::new(4).unwrap();
    let w = tau_word(ctx, &[2, 0, 0, 0]).unwrap();
    assert_eq!(w.to_string(), "[pi14, (([tau1(2,3)^-1, rho4])^-1)^(sigma14)]");
    assert_eq!(w.weight(), 3);
}

#[test]
fn suite_verdict_and_determinism() {
    let opts = SuiteOptions::new(4, 3);
    let a = verify_suite(&opts);
    let b = verify_suite(&opts);
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.ok(), "{:?}", a.failures());
    assert!(a.reports.iter().all(|r| r.millis.is_none()));
    assert!(a
        .reports
        .iter()
        .all(|r| r.status != Status::Fail || r.witness.is_some()));
    let printed_failures = a
        .reports
        .iter()
        .filter(|r| r.variant.is_none() && r.status == Status::Fail)
        .count();
    assert!(printed_failures > 0);
}

#[test]
fn unrescued_failures_are_reported() {
    let mut s = verify_suite(&SuiteOptions::new(4, 3));
    s.reports
        .iter_mut()
        .filter(|r| r.check == "b12-via-inner")
        .for_each(|r| r.status = Status::Fail);
    assert!(!s.ok());
    assert_eq!(s.failures()[0].check, "b12-via-inner");
}
