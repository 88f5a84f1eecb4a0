use gammamorphic::identities::{grid, parameter_names, run_identity, run_suite, Density, IdentityId, Status};

#[test]
fn small_suite_is_deterministic_and_ordered() {
    let a = run_suite(None, Density::Small);
    let b = run_suite(None, Density::Small);
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.exit_code(), 0, "{}", a.to_text());
    // canonical order: identity by identity, each over its grid in order
    let expected: Vec<_> = IdentityId::ALL
        .iter()
        .flat_map(|&id| grid(id, Density::Small).into_iter().map(move |p| (id, p)))
        .collect();
    assert_eq!(a.reports.len(), expected.len());
    // report params are named by each check, so only the ids are compared
    for (r, (id, _)) in a.reports.iter().zip(&expected) {
        assert_eq!(r.id, *id);
    }
    assert_eq!(a.summary.points, a.reports.len());
    assert_eq!(a.summary.passed + a.summary.failed, a.summary.points);
}

#[test]
fn json_keys() {
    let r = run_suite(Some(&[IdentityId::FeG]), Density::Small);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let first = v.as_array().unwrap()[0].as_object().unwrap();
    let keys: Vec<&str> = first.keys().map(String::as_str).collect();
    let mut want = ["id", "params", "lhs", "rhs", "abs_residual", "rel_residual", "tolerance", "pass", "status", "notes"];
    want.sort_unstable();
    let mut got = keys.clone();
    got.sort_unstable();
    assert_eq!(got, want);
}

#[test]
fn tolerance_override_rejudges() {
    let r = run_suite(Some(&[IdentityId::FeG]), Density::Small);
    let strict = r.clone().with_tolerances(&[(IdentityId::FeG, 1e-300)].into_iter().collect());
    assert!(strict.summary.verified_failures > 0);
    assert_eq!(strict.exit_code(), 1);
    assert!(strict.reports.iter().all(|r| r.notes.contains("tolerance overridden")));
}

#[test]
fn every_identity_has_a_runnable_first_point() {
    for &id in IdentityId::ALL {
        let p = &grid(id, Density::Small)[0];
        for k in p.keys() {
            let base = k.strip_suffix("_im").unwrap_or(k);
            assert!(parameter_names(id).contains(&base), "{id}: {k}");
        }
        let rep = run_identity(id, p).unwrap_or_else(|e| panic!("{id}: {e}"));
        if rep.status == Status::Verified {
            assert!(rep.pass, "{rep}");
        }
    }
}
