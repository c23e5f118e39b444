use sigma_forge::catalog::GroupExpr;
use sigma_forge::harness::{
    aggregate_failing, survey, verify_all, Outcome, VerificationReport, CLAIM_IDS,
};
use sigma_forge::{Limits, PrimePartition};

fn exprs(list: &[&str]) -> Vec<GroupExpr> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

fn sigmas(list: &[&str]) -> Vec<PrimePartition> {
    list.iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let groups = exprs(&["S(4)", "D(12)", "SDC(7,3,2)", "Q8"]);
    let ss = sigmas(&["sigma1", "pi:{2,3}", "classes:[{2};{7}];rest=singletons"]);
    let a = survey(&groups, &ss, &Limits::default());
    let b = survey(&groups, &ss, &Limits::default());
    let ja = serde_json::to_string(&a).unwrap();
    assert_eq!(ja, serde_json::to_string(&b).unwrap());
    let back: Vec<VerificationReport> = serde_json::from_str(&ja).unwrap();
    assert_eq!(back, a);
    assert_eq!(a.len(), groups.len() * ss.len());
    for (i, r) in a.iter().enumerate() {
        assert_eq!(r.group, groups[i / ss.len()].to_string());
        assert_eq!(r.sigma, ss[i % ss.len()].to_string());
        let ids: Vec<&str> = r.claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, CLAIM_IDS);
    }
    assert!(!aggregate_failing(&a));
}

#[test]
fn empty_survey_is_empty() {
    assert!(survey(&[], &sigmas(&["sigma1"]), &Limits::default()).is_empty());
}

#[test]
fn oversize_groups_are_skipped_with_reason() {
    let limits = Limits {
        max_lattice_order: 100,
        ..Limits::default()
    };
    let reports = survey(&exprs(&["S(5)", "S(3)"]), &sigmas(&["sigma1"]), &limits);
    assert!(reports[0]
        .claims
        .iter()
        .all(|c| c.outcome == Outcome::Skipped && c.reason.is_some()));
    assert!(reports[1]
        .claims
        .iter()
        .any(|c| c.outcome == Outcome::Verified));
    assert!(!aggregate_failing(&reports));
}

#[test]
fn subject_count_of_theorem_c_matches_sigma_quasinormal_count() {
    use sigma_forge::harness::GroupAnalysis;
    let g = sigma_forge::catalog::build("DP(A(4),SDC(11,5,3))").unwrap();
    let an = GroupAnalysis::new("g", &g, &Limits::default()).unwrap();
    let sigma: PrimePartition = "classes:[{2,5,11}]".parse().unwrap();
    let n = an.sigma_quasinormal(&sigma).len();
    let r = verify_all("g", &g, &sigma, &Limits::default());
    for id in ["C.i", "C.ii", "C.iii", "C.iv", "C.v"] {
        assert_eq!(r.claim(id).unwrap().subjects, n, "{id}");
    }
    assert!(
        n > an
            .lattice()
            .subgroups()
            .iter()
            .filter(|s| s.is_normal(&g))
            .count()
    );
}
