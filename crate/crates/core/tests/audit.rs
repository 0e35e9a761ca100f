mod common;

use common::*;
use polyclone::audit::{audit_claims, Claim};
use polyclone::EnumerationCaps;

#[test]
fn boolean_gap_is_negation() {
    let report = audit_claims(2, 1, &EnumerationCaps::default()).unwrap();
    assert!(report.trusted);
    let v = &report.arities[0].verdict;
    assert_eq!(v.holds, Some(false));
    let gap: Vec<_> = v.gap.iter().map(|t| t.entries().to_vec()).collect();
    assert_eq!(gap, vec![vec![1, 0]]);
}

#[test]
fn ternary_audit_matches_oracles() {
    let report = audit_claims(3, 2, &EnumerationCaps::default()).unwrap();
    assert!(report.trusted);
    for a in &report.arities {
        let pol = pol_oracle(3, a.arity, &central_set(3));
        let polys = closure_oracle(3, a.arity, &r_ops(3), true);
        assert_eq!(a.verdict.pol_count, pol.len());
        assert_eq!(a.verdict.clone_count, polys.len());
        let gap = pol.iter().filter(|t| !polys.contains(*t)).count();
        assert_eq!(a.verdict.gap.len(), gap);
    }
    let d = report.arities[1].decomposition.as_ref().unwrap();
    assert_eq!((d.single_support, d.single_support_literal_verified), (8, 8));
    assert_eq!((d.multi_support, d.multi_support_all_points_mismatched), (998, 998));
    // Every claim is refuted at this scale, and none is left undecided.
    assert!(report.findings.iter().all(|f| f.consistent == Some(false)));
    assert!(report.findings.iter().any(|f| f.claim == Claim::CentralCompleteness));
}

#[test]
fn tiny_cap_leaves_findings_undecided() {
    let report = audit_claims(3, 2, &EnumerationCaps::new(5, std::time::Duration::from_secs(60))).unwrap();
    assert!(!report.trusted);
    assert!(report.findings.iter().all(|f| f.computed.is_none() && f.consistent.is_none()));
}
